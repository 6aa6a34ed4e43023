#include <cmath>

#include <doctest.h>

#include "so3track/analysis.hpp"
#include "test_helpers.hpp"

using namespace so3track;

namespace {

std::vector<TrajectoryRecord> synthetic_w(double rate, double t_final, double dt) {
  std::vector<TrajectoryRecord> records;
  for (double t = 0.0; t <= t_final + 1e-12; t += dt) {
    TrajectoryRecord rec{};
    rec.t = t;
    rec.Rr = Mat3::Identity();
    rec.R1 = Mat3::Identity();
    rec.W = std::exp(rate * t);
    rec.theta = std::sqrt(rec.W);
    rec.d_R = rec.theta;
    rec.d_F = rec.theta;
    records.push_back(rec);
  }
  return records;
}

SimConfig make_config(ControllerTag tag, double t_final) {
  SimConfig config;
  config.controller.tag = tag;
  config.reference.tag = ReferenceTag::paper_sim;
  config.t_final = t_final;
  return config;
}

// Explicit init with relative angle theta0 about a fixed skewed axis.
void set_relative_init(SimConfig& config, double theta0) {
  config.init.random = false;
  config.init.Rr_axis_angle = Vec3(0.4, -0.2, 0.5);
  const Mat3 Rr0 = exp_so3(config.init.Rr_axis_angle);
  const Mat3 Q0 = exp_so3(theta0 * Vec3(2.0 / 3, -1.0 / 3, 2.0 / 3));
  config.init.R1_axis_angle = vee(log_so3(Mat3(Rr0 * Q0.transpose())));
}

}  // namespace

TEST_CASE("lyapunov functions") {
  const Mat3 I = Mat3::Identity();
  CHECK(lyapunov_geodesic(I, I) == 0.0);
  CHECK(lyapunov_geodesic(exp_so3(Vec3(1.2, 0, 0)), I) ==
        doctest::Approx(1.44).epsilon(1e-12));

  CHECK(lyapunov_frobenius(I, I) == 0.0);
  CHECK(lyapunov_frobenius(I, singular_E3()) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(lyapunov_frobenius(I, exp_so3(Vec3(M_PI / 2, 0, 0))) ==
        doctest::Approx(2.0).epsilon(1e-12));

  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Mat3 R1 = random_rotation(rng, 3.0);
    const Mat3 R2 = random_rotation(rng, 3.0);
    if (rotation_angle(R1.transpose() * R2) >= M_PI - 1e-3) continue;
    const double d = dist_geodesic(R1, R2);
    CHECK(lyapunov_geodesic(R1, R2) == doctest::Approx(d * d).epsilon(1e-9));
    const double df = dist_frobenius(R1, R2);
    CHECK(lyapunov_frobenius(R1, R2) == doctest::Approx(0.5 * df * df).epsilon(1e-9));
  }
}

TEST_CASE("rate fit on exact log-linear data") {
  const auto records = synthetic_w(-2.0, 5.0, 0.01);
  CHECK(fit_exponential_rate(records, 0.1, 5.0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_exponential_rate(records, 4.99, 5.0), std::invalid_argument);
}

TEST_CASE("rate fit on an asy_geo run") {
  SimConfig config = make_config(ControllerTag::asy_geo, 5.0);
  config.init.seed = 13;
  const auto records = simulate(config);
  CHECK(fit_exponential_rate(records, 0.1, 5.0) == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("asy_fro eventual rate is at least -1 in ln W") {
  SimConfig config = make_config(ControllerTag::asy_fro, 5.0);
  set_relative_init(config, 0.1);
  const auto records = simulate(config);
  CHECK(fit_exponential_rate(records, 0.1, 5.0) <= -1.0);
}

TEST_CASE("convergence detector") {
  const ControllerKind kind{ControllerTag::ftt_geo};

  auto records = synthetic_w(-2.0, 5.0, 0.01);
  // theta = e^{-t}: crosses 1e-2 at t = ln(100).
  const auto t = detect_convergence_time(records, 1e-2, kind);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(std::log(100.0)).epsilon(0.01));

  CHECK_FALSE(detect_convergence_time(records, 1e-6, kind).has_value());

  // Equilibrium from the start.
  for (auto& rec : records) {
    rec.d_R = 0.0;
    rec.theta = 0.0;
  }
  CHECK(detect_convergence_time(records, 1e-2, kind) == 0.0);

  CHECK_THROWS_AS(detect_convergence_time(records, 1e-9, kind), std::invalid_argument);
}

TEST_CASE("theta monotonicity detector sanity") {
  auto records = synthetic_w(-2.0, 2.0, 0.01);
  auto check = check_theta_monotone(records);
  CHECK(check.monotone);

  records[100].theta = records[99].theta + 1e-3;
  check = check_theta_monotone(records);
  CHECK_FALSE(check.monotone);
  CHECK(check.max_increment >= 1e-3);
}

TEST_CASE("ftt_geo: linear decay of d_R and detected time") {
  SimConfig config = make_config(ControllerTag::ftt_geo, 3.0);
  set_relative_init(config, 1.0);
  const auto records = simulate(config);
  const double d0 = records.front().d_R;
  CHECK(d0 == doctest::Approx(1.0).epsilon(1e-9));

  // sqrt(W) = d_R decreases with slope 1/sqrt(2) until convergence.
  for (const auto& rec : records) {
    const double expected = d0 - rec.t / std::sqrt(2.0);
    if (expected < 2e-3) break;
    CHECK(std::abs(rec.d_R - expected) < 1e-3);
  }

  const auto t = detect_convergence_time(records, 1e-6, config.controller);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(std::sqrt(2.0) * d0).epsilon(0.02));
  CHECK(*t == doctest::Approx(*predicted_convergence_time(config.controller, d0))
                  .epsilon(0.02));
}

TEST_CASE("asy_geo: detected time matches the exponential closed form") {
  SimConfig config = make_config(ControllerTag::asy_geo, 16.0);
  set_relative_init(config, 1.0);
  config.sample_every = 10;
  const auto records = simulate(config);
  const auto t = detect_convergence_time(records, 1e-6, config.controller);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(std::log(records.front().d_R / 1e-6)).epsilon(0.02));
  CHECK(*t > 1.0);  // never "instantaneous"
}

TEST_CASE("ftt_fro: Lyapunov decay identity on records") {
  SimConfig config = make_config(ControllerTag::ftt_fro, 2.0);
  config.reference.tag = ReferenceTag::zero;
  set_relative_init(config, 2.0);
  config.integrator.h = 1e-4;
  const auto records = simulate(config);
  // Central difference of W against -sqrt(2) (1 + cos theta) sqrt(W).
  for (size_t i = 1; i + 1 < records.size(); i += 500) {
    if (records[i].W < 1e-6) break;
    const double dw = (records[i + 1].W - records[i - 1].W) / (2.0 * config.integrator.h);
    const double expected =
        -std::sqrt(2.0) * (1.0 + std::cos(records[i].theta)) * std::sqrt(records[i].W);
    CHECK(dw == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("ftt_fro: predicted time matches a dense run") {
  SimConfig config = make_config(ControllerTag::ftt_fro, 8.0);
  config.reference.tag = ReferenceTag::paper_sim;
  set_relative_init(config, 2.5);
  config.integrator.h = 1e-4;
  config.sample_every = 10;
  const auto records = simulate(config);
  const auto t = detect_convergence_time(records, 1e-6, config.controller);
  REQUIRE(t.has_value());
  const auto predicted = predicted_convergence_time(config.controller, 2.5);
  REQUIRE(predicted.has_value());
  CHECK(*t == doctest::Approx(*predicted).epsilon(0.02));
}

TEST_CASE("feed-forward offset leaves the error angle invariant") {
  // The omega_r terms cancel in theta-dot; adding a constant offset to both
  // the target motion and the feed-forward must reproduce the same error
  // angle sequence up to integrator commutator noise.
  for (ControllerTag tag : {ControllerTag::asy_geo, ControllerTag::ftt_geo,
                            ControllerTag::asy_fro, ControllerTag::ftt_fro}) {
    SimConfig config = make_config(tag, 1.0);
    config.reference.tag = ReferenceTag::constant;
    config.reference.amplitude = Vec3(0.2, -0.1, 0.15);
    set_relative_init(config, 1.2);
    config.sample_every = 50;
    const auto base = simulate(config);

    config.reference.amplitude += Vec3(0.4, 0.3, -0.2);
    const auto offset = simulate(config);

    REQUIRE(base.size() == offset.size());
    double worst = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
      worst = std::max(worst, std::abs(base[i].theta - offset[i].theta));
    }
    MESSAGE("tag ", static_cast<int>(tag), " worst theta difference: ", worst);
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("analyze assembles a report") {
  SimConfig config = make_config(ControllerTag::ftt_geo, 3.0);
  set_relative_init(config, 1.0);
  const auto records = simulate(config);
  const auto report = analyze(records, config.controller, 1e-6);
  CHECK(report.theta.monotone);
  CHECK(report.lyapunov_monotone);
  CHECK(report.convergence_time.has_value());
  CHECK(report.predicted_time.has_value());
  CHECK_FALSE(report.singularity_hit);

  const std::string text = format_report(report);
  CHECK(text.find("theta_monotone = true") != std::string::npos);
  CHECK(text.find("convergence_time = ") != std::string::npos);
  CHECK(text.find("singularity_hit = false") != std::string::npos);
}
