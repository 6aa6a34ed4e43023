#ifndef SO3TRACK_ANALYSIS_HPP_
#define SO3TRACK_ANALYSIS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "so3track/integrator.hpp"

namespace so3track {

// Slack for monotonicity checks between consecutive records; absorbs
// single-step discretization error of the fixed-step integrator.
inline constexpr double kMonotoneTol = 1e-6;

// Samples below this Lyapunov value sit on the floating-point floor and are
// excluded from rate fitting.
inline constexpr double kLyapunovFloor = 1e-14;

struct MonotoneCheck {
  bool monotone;
  double max_increment;
};

struct ConvergenceReport {
  MonotoneCheck theta;
  bool lyapunov_monotone;
  std::optional<double> fitted_rate;       // 1/s; empty if the window is starved
  std::optional<double> convergence_time;  // s; empty if never converged
  std::optional<double> predicted_time;    // s; finite-time laws only
  bool singularity_hit = false;
};

// W = d_R^2 for the geodesic laws. Throws SingularityError near theta = pi.
double lyapunov_geodesic(const Mat3& Rr, const Mat3& R1);

// W = 3 - trace(Rr^T R1) = d_F^2 / 2; defined everywhere, range [0, 4].
double lyapunov_frobenius(const Mat3& Rr, const Mat3& R1);

// Least-squares slope of ln W against t over [t_begin, t_end]. Throws
// std::invalid_argument with fewer than 10 usable samples.
double fit_exponential_rate(std::span<const TrajectoryRecord> records,
                            double t_begin, double t_end);

// First record time from which the active error metric stays below threshold
// through the end of the horizon.
std::optional<double> detect_convergence_time(
    std::span<const TrajectoryRecord> records, double threshold,
    const ControllerKind& kind);

MonotoneCheck check_theta_monotone(std::span<const TrajectoryRecord> records);

// Closed-form convergence time of the finite-time laws from the initial
// relative angle (geodesic: sqrt(2)*theta0; Frobenius: the quadrature of
// theta' = -sqrt(2) cos(theta/2)).
std::optional<double> predicted_convergence_time(const ControllerKind& kind,
                                                 double theta0);

ConvergenceReport analyze(std::span<const TrajectoryRecord> records,
                          const ControllerKind& kind, double threshold,
                          double fit_t_begin = 0.1, double fit_t_end = 5.0);

// Flat key-value serialization consumed by the CLI report files.
std::string format_report(const ConvergenceReport& report);

}  // namespace so3track

#endif  // SO3TRACK_ANALYSIS_HPP_
