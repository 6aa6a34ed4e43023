#ifndef SO3TRACK_SO3_HPP_
#define SO3TRACK_SO3_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace so3track {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// The principal logarithm is undefined at rotation angle pi; inputs with
// theta >= pi - kLogMargin are rejected.
inline constexpr double kLogMargin = 1e-6;

// Switch to series evaluation of the exp/log scalar coefficients below this
// angle to avoid cancellation.
inline constexpr double kSmallAngle = 1e-4;

// Relative attitude reached the theta = pi set where log() is undefined.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

bool is_rotation(const Mat3& R, double tol = 1e-9);
bool is_skew(const Mat3& S, double tol = 1e-9);

// The three rotations with trace -1 (rotation angle exactly pi about a
// coordinate axis), where the geodesic laws are undefined.
const Mat3& singular_E1();
const Mat3& singular_E2();
const Mat3& singular_E3();

Mat3 hat(const Vec3& p);

// Inverse of hat. The symmetric part of S is discarded after averaging;
// throws std::invalid_argument if it exceeds 1e-6 in Frobenius norm.
Vec3 vee(const Mat3& S);

// Rodrigues formula. Exact on SO(3) for any finite p.
Mat3 exp_so3(const Vec3& p);

// Principal logarithm; throws SingularityError for theta >= pi - kLogMargin.
Mat3 log_so3(const Mat3& R);

// arccos((trace(R) - 1)/2), argument clamped to [-1, 1]. Result in [0, pi].
double rotation_angle(const Mat3& R);

// Chordal metric ||R1 - R2||_F.
double dist_frobenius(const Mat3& R1, const Mat3& R2);

// Geodesic metric (1/sqrt(2)) ||log(R1^T R2)||_F; equals the relative
// rotation angle. Throws SingularityError at the theta = pi set.
double dist_geodesic(const Mat3& R1, const Mat3& R2);

// ||log(R1) - log(R2)||_F; requires both absolute angles below pi.
double dist_hyperbolic(const Mat3& R1, const Mat3& R2);

// Nearest rotation in Frobenius norm (orthogonal polar factor).
// Throws std::invalid_argument if det(M) <= 0 or M is rank-deficient.
Mat3 project_to_so3(const Mat3& M);

// Deterministic uniform double in [0, 1) from the generator's raw output.
double uniform01(std::mt19937_64& rng);

// Axis-angle sample: axis uniform on the sphere, angle uniform on
// (0, theta_max]. Requires 0 < theta_max < pi.
Mat3 random_rotation(std::mt19937_64& rng, double theta_max);
Mat3 random_rotation(std::uint64_t seed, double theta_max);

}  // namespace so3track

#endif  // SO3TRACK_SO3_HPP_
