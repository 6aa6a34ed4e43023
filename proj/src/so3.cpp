#include "so3track/so3.hpp"

#include <cmath>

namespace so3track {

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).norm() < tol &&
         std::abs(R.determinant() - 1.0) < tol;
}

bool is_skew(const Mat3& S, double tol) { return (S + S.transpose()).norm() < tol; }

const Mat3& singular_E1() {
  static const Mat3 e = Vec3(-1, -1, 1).asDiagonal();
  return e;
}

const Mat3& singular_E2() {
  static const Mat3 e = Vec3(-1, 1, -1).asDiagonal();
  return e;
}

const Mat3& singular_E3() {
  static const Mat3 e = Vec3(1, -1, -1).asDiagonal();
  return e;
}

Mat3 hat(const Vec3& p) {
  Mat3 S;
  S << 0.0, -p.z(), p.y(),
       p.z(), 0.0, -p.x(),
       -p.y(), p.x(), 0.0;
  return S;
}

Vec3 vee(const Mat3& S) {
  if ((S + S.transpose()).norm() > 1e-6) {
    throw std::invalid_argument("vee: input is not skew-symmetric");
  }
  const Mat3 A = 0.5 * (S - S.transpose());
  return Vec3(A(2, 1), A(0, 2), A(1, 0));
}

Mat3 exp_so3(const Vec3& p) {
  const double theta = p.norm();
  double a;  // sin(theta)/theta
  double b;  // (1 - cos(theta))/theta^2
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  const Mat3 S = hat(p);
  return Mat3::Identity() + a * S + b * S * S;
}

Mat3 log_so3(const Mat3& R) {
  // sin(theta) taken from the skew part and combined with the trace via
  // atan2; well-conditioned at both ends of [0, pi), unlike plain arccos.
  const Mat3 A = R - R.transpose();
  const double s = 0.5 * std::sqrt(A(2, 1) * A(2, 1) + A(0, 2) * A(0, 2) +
                                   A(1, 0) * A(1, 0));
  const double cth = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double theta = std::atan2(s, cth);
  if (theta >= M_PI - kLogMargin) {
    throw SingularityError("log_so3: rotation angle within margin of pi");
  }
  double c;  // theta / (2 sin(theta))
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    c = 0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0;
  } else {
    c = theta / (2.0 * s);
  }
  return c * A;
}

double rotation_angle(const Mat3& R) {
  const double arg = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(arg);
}

double dist_frobenius(const Mat3& R1, const Mat3& R2) { return (R1 - R2).norm(); }

double dist_geodesic(const Mat3& R1, const Mat3& R2) {
  return log_so3(R1.transpose() * R2).norm() / std::sqrt(2.0);
}

double dist_hyperbolic(const Mat3& R1, const Mat3& R2) {
  return (log_so3(R1) - log_so3(R2)).norm();
}

Mat3 project_to_so3(const Mat3& M) {
  if (M.determinant() <= 0.0) {
    throw std::invalid_argument("project_to_so3: determinant not positive");
  }
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) < 1e-12 * svd.singularValues()(0)) {
    throw std::invalid_argument("project_to_so3: rank-deficient input");
  }
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    // det(M) > 0 with full rank makes the polar factor a proper rotation;
    // this branch only guards numerical pathologies.
    R = svd.matrixU() * Vec3(1, 1, -1).asDiagonal() * svd.matrixV().transpose();
  }
  return R;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Mat3 random_rotation(std::mt19937_64& rng, double theta_max) {
  if (!(theta_max > 0.0) || theta_max >= M_PI) {
    throw std::invalid_argument("random_rotation: theta_max must lie in (0, pi)");
  }
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * M_PI * uniform01(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const Vec3 axis(r * std::cos(phi), r * std::sin(phi), z);
  const double theta = theta_max * (1.0 - uniform01(rng));  // (0, theta_max]
  return exp_so3(theta * axis);
}

Mat3 random_rotation(std::uint64_t seed, double theta_max) {
  std::mt19937_64 rng(seed);
  return random_rotation(rng, theta_max);
}

}  // namespace so3track
