#ifndef SO3TRACK_INTEGRATOR_HPP_
#define SO3TRACK_INTEGRATOR_HPP_

#include <cstdint>
#include <vector>

#include "so3track/controllers.hpp"
#include "so3track/reference.hpp"
#include "so3track/so3.hpp"

namespace so3track {

enum class IntegratorMethod { lie_euler, lie_rk4 };

struct IntegratorSpec {
  IntegratorMethod method = IntegratorMethod::lie_euler;
  double h = 1e-3;              // step size, s
  int reproject_every = 1000;   // polar reprojection cadence, steps
};

struct SimState {
  double t = 0.0;
  Mat3 Rr = Mat3::Identity();
  Mat3 R1 = Mat3::Identity();
};

// A step produced a non-finite value or the controller hit the singular set;
// carries the simulation time at which it happened.
class StepError : public std::runtime_error {
 public:
  StepError(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

// One exact-exponential step of the closed loop
//   Rr <- Rr exp(h w_r),  R1 <- R1 exp(h w_1).
// For the finite-time laws, a step that would rotate past the target is
// replaced by the exact alignment increment (the discrete realization of the
// Filippov sliding selection); afterwards the eps_switch branch of the
// controller holds the state at the equilibrium.
SimState step(const SimState& state, const ControllerKind& kind,
              const ReferenceKind& ref, const IntegratorSpec& spec);

struct InitSpec {
  bool random = true;
  std::uint64_t seed = 0;
  double theta_max = 3.0;         // relative-error angle cap, rad
  Vec3 Rr_axis_angle = Vec3::Zero();
  Vec3 R1_axis_angle = Vec3::Zero();
};

struct SimConfig {
  ControllerKind controller;
  ReferenceKind reference;
  InitSpec init;
  IntegratorSpec integrator;
  double t_final = 10.0;          // s
  int sample_every = 1;           // record cadence, steps
  double threshold = 1e-6;        // convergence detection, metric units
};

struct TrajectoryRecord {
  double t;
  Mat3 Rr;
  Mat3 R1;
  double theta;        // relative rotation angle, rad
  double d_R;          // NaN when theta is within margin of pi
  double d_F;
  double W;            // Lyapunov value of the active law
  double omega1_norm;  // rad/s
  bool regularized;
};

// Initial attitudes from an InitSpec. Random mode draws the target attitude
// and a relative error of angle in (0, theta_max]; explicit mode validates
// that the relative angle stays below pi - 1e-3.
std::pair<Mat3, Mat3> resolve_init(const InitSpec& init);

std::vector<TrajectoryRecord> simulate(const SimConfig& config);

// Same closed loop from explicit initial attitudes (test harness entry).
std::vector<TrajectoryRecord> simulate(const SimConfig& config, const Mat3& Rr0,
                                       const Mat3& R10);

}  // namespace so3track

#endif  // SO3TRACK_INTEGRATOR_HPP_
