#include "so3track/controllers.hpp"

#include <cmath>

namespace so3track {

bool is_finite_time(ControllerTag tag) {
  return tag == ControllerTag::ftt_geo || tag == ControllerTag::ftt_fro;
}

bool uses_geodesic(ControllerTag tag) {
  return tag == ControllerTag::asy_geo || tag == ControllerTag::ftt_geo;
}

ControlOutput control(const ControllerKind& kind, const Mat3& R1, const Mat3& Rr,
                      const Vec3& omega_r) {
  const Mat3 Q = R1.transpose() * Rr;
  ControlOutput out;

  if (uses_geodesic(kind.tag)) {
    const Mat3 L = log_so3(Q);  // throws at the theta = pi set
    const double err = L.norm() / std::sqrt(2.0);
    out.error_measure = err;
    out.regularized = err < kind.eps_switch;
    if (kind.tag == ControllerTag::asy_geo) {
      out.omega1 = vee(L) + omega_r;
    } else {
      out.omega1 = out.regularized ? omega_r : Vec3(vee(L) / L.norm() + omega_r);
    }
  } else {
    if (rotation_angle(Q) >= M_PI - kLogMargin) {
      throw SingularityError("control: relative angle within margin of pi");
    }
    const Mat3 A = Q - Q.transpose();
    const double err = (R1 - Rr).norm();
    out.error_measure = err;
    out.regularized = err < kind.eps_switch;
    if (kind.tag == ControllerTag::asy_fro) {
      out.omega1 = vee(A) + omega_r;
    } else {
      out.omega1 = out.regularized ? omega_r : Vec3(vee(A) / err + omega_r);
    }
  }
  return out;
}

}  // namespace so3track
