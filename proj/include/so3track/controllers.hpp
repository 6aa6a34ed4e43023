#ifndef SO3TRACK_CONTROLLERS_HPP_
#define SO3TRACK_CONTROLLERS_HPP_

#include "so3track/so3.hpp"

namespace so3track {

enum class ControllerTag { asy_geo, ftt_geo, asy_fro, ftt_fro };

struct ControllerKind {
  ControllerTag tag = ControllerTag::asy_geo;
  // Below this error (in the law's own metric) the normalized feedback is
  // replaced by the equilibrium Filippov selection omega_r.
  double eps_switch = 1e-9;
};

struct ControlOutput {
  Vec3 omega1;           // commanded follower body velocity, rad/s
  double error_measure;  // d_R for geodesic laws, d_F for Frobenius laws
  bool regularized;      // error_measure < eps_switch
};

bool is_finite_time(ControllerTag tag);
bool uses_geodesic(ControllerTag tag);

// The four feedback laws. All use only the relative attitude R1^T Rr plus
// the reference velocity feed-forward. Throws SingularityError when the
// relative angle is within margin of pi.
ControlOutput control(const ControllerKind& kind, const Mat3& R1, const Mat3& Rr,
                      const Vec3& omega_r);

}  // namespace so3track

#endif  // SO3TRACK_CONTROLLERS_HPP_
