#include "so3track/analysis.hpp"

#include <cmath>

#include "so3track/io.hpp"

namespace so3track {

namespace {

double error_metric(const TrajectoryRecord& rec, const ControllerKind& kind) {
  return uses_geodesic(kind.tag) ? rec.d_R : rec.d_F;
}

}  // namespace

double lyapunov_geodesic(const Mat3& Rr, const Mat3& R1) {
  const double d = dist_geodesic(Rr, R1);
  return d * d;
}

double lyapunov_frobenius(const Mat3& Rr, const Mat3& R1) {
  return 3.0 - (Rr.transpose() * R1).trace();
}

double fit_exponential_rate(std::span<const TrajectoryRecord> records,
                            double t_begin, double t_end) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  long n = 0;
  for (const auto& rec : records) {
    if (rec.t < t_begin || rec.t > t_end || !(rec.W > kLyapunovFloor)) continue;
    const double y = std::log(rec.W);
    st += rec.t;
    sy += y;
    stt += rec.t * rec.t;
    sty += rec.t * y;
    ++n;
  }
  if (n < 10) {
    throw std::invalid_argument("fit_exponential_rate: fewer than 10 usable samples");
  }
  const double denom = n * stt - st * st;
  return (n * sty - st * sy) / denom;
}

std::optional<double> detect_convergence_time(
    std::span<const TrajectoryRecord> records, double threshold,
    const ControllerKind& kind) {
  if (!(threshold > 10.0 * kind.eps_switch)) {
    throw std::invalid_argument(
        "detect_convergence_time: threshold must exceed 10x eps_switch");
  }
  if (records.empty()) return std::nullopt;
  // Last index at or above threshold; convergence starts just after it.
  std::ptrdiff_t last_above = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(records.size()) - 1; i >= 0; --i) {
    const double e = error_metric(records[static_cast<size_t>(i)], kind);
    if (!(e < threshold)) {
      last_above = i;
      break;
    }
  }
  if (last_above < 0) return records.front().t;
  const size_t first_below = static_cast<size_t>(last_above) + 1;
  if (first_below >= records.size()) return std::nullopt;
  return records[first_below].t;
}

MonotoneCheck check_theta_monotone(std::span<const TrajectoryRecord> records) {
  MonotoneCheck check{true, 0.0};
  for (size_t i = 1; i < records.size(); ++i) {
    const double inc = records[i].theta - records[i - 1].theta;
    check.max_increment = std::max(check.max_increment, inc);
  }
  check.monotone = check.max_increment <= kMonotoneTol;
  return check;
}

std::optional<double> predicted_convergence_time(const ControllerKind& kind,
                                                 double theta0) {
  switch (kind.tag) {
    case ControllerTag::ftt_geo:
      // theta' = -1/sqrt(2)
      return std::sqrt(2.0) * theta0;
    case ControllerTag::ftt_fro:
      // theta' = -sqrt(2) cos(theta/2)
      return std::sqrt(2.0) * std::log(std::tan(theta0 / 4.0 + M_PI / 4.0));
    default:
      return std::nullopt;
  }
}

ConvergenceReport analyze(std::span<const TrajectoryRecord> records,
                          const ControllerKind& kind, double threshold,
                          double fit_t_begin, double fit_t_end) {
  ConvergenceReport report;
  report.theta = check_theta_monotone(records);

  double max_w_inc = 0.0;
  for (size_t i = 1; i < records.size(); ++i) {
    max_w_inc = std::max(max_w_inc, records[i].W - records[i - 1].W);
  }
  report.lyapunov_monotone = max_w_inc <= kMonotoneTol;

  try {
    report.fitted_rate = fit_exponential_rate(records, fit_t_begin, fit_t_end);
  } catch (const std::invalid_argument&) {
    report.fitted_rate = std::nullopt;
  }
  report.convergence_time = detect_convergence_time(records, threshold, kind);
  report.predicted_time =
      records.empty() ? std::nullopt
                      : predicted_convergence_time(kind, records.front().theta);
  return report;
}

std::string format_report(const ConvergenceReport& report) {
  std::string out;
  const auto bool_str = [](bool b) { return b ? "true" : "false"; };
  const auto opt_str = [](const std::optional<double>& v, const char* missing) {
    return v ? format_double(*v) : std::string(missing);
  };
  out += "theta_monotone = " + std::string(bool_str(report.theta.monotone)) + "\n";
  out += "max_theta_increment = " + format_double(report.theta.max_increment) + "\n";
  out += "lyapunov_monotone = " + std::string(bool_str(report.lyapunov_monotone)) + "\n";
  out += "fitted_rate = " + opt_str(report.fitted_rate, "none") + "\n";
  out += "convergence_time = " + opt_str(report.convergence_time, "none") + "\n";
  out += "predicted_time = " + opt_str(report.predicted_time, "n/a") + "\n";
  out += "singularity_hit = " + std::string(bool_str(report.singularity_hit)) + "\n";
  return out;
}

}  // namespace so3track
