#include <cmath>

#include <doctest.h>

#include "so3track/controllers.hpp"
#include "test_helpers.hpp"

using namespace so3track;
using so3track::testing::random_unit_axis;

namespace {

const ControllerKind kAsyGeo{ControllerTag::asy_geo};
const ControllerKind kFttGeo{ControllerTag::ftt_geo};
const ControllerKind kAsyFro{ControllerTag::asy_fro};
const ControllerKind kFttFro{ControllerTag::ftt_fro};

}  // namespace

TEST_CASE("equilibrium passes the feed-forward through") {
  const Mat3 R = exp_so3(Vec3(0.4, -0.1, 0.9));
  const Vec3 wr(0.1, 0.2, 0.3);
  for (const auto& kind : {kAsyGeo, kFttGeo, kAsyFro, kFttFro}) {
    const ControlOutput out = control(kind, R, R, wr);
    CHECK((out.omega1 - wr).norm() < 1e-15);
    CHECK(out.error_measure < 1e-9);
    CHECK(out.regularized);
  }
}

TEST_CASE("asy_fro quarter-turn example") {
  const Mat3 Rr = exp_so3(Vec3(M_PI / 2, 0, 0));
  const ControlOutput out = control(kAsyFro, Mat3::Identity(), Rr, Vec3::Zero());
  CHECK((out.omega1 - Vec3(2.0, 0, 0)).norm() < 1e-14);
  CHECK(out.error_measure ==
        doctest::Approx(2.0 * std::sqrt(2.0) * std::sin(M_PI / 4)).epsilon(1e-12));
}

TEST_CASE("ftt_fro quarter-turn example") {
  const Mat3 Rr = exp_so3(Vec3(M_PI / 2, 0, 0));
  const ControlOutput out = control(kFttFro, Mat3::Identity(), Rr, Vec3::Zero());
  CHECK((out.omega1 - Vec3(1.0, 0, 0)).norm() < 1e-14);
  CHECK_FALSE(out.regularized);
}

TEST_CASE("geodesic laws on an axis-angle error") {
  const double theta0 = 0.8;
  const Mat3 Rr = exp_so3(Vec3(theta0, 0, 0));

  const ControlOutput asy = control(kAsyGeo, Mat3::Identity(), Rr, Vec3::Zero());
  CHECK((asy.omega1 - Vec3(theta0, 0, 0)).norm() < 1e-14);
  CHECK(asy.error_measure == doctest::Approx(theta0).epsilon(1e-12));

  // Normalized feedback magnitude is 1/sqrt(2) independent of theta0.
  const ControlOutput ftt = control(kFttGeo, Mat3::Identity(), Rr, Vec3::Zero());
  CHECK((ftt.omega1 - Vec3(1.0 / std::sqrt(2.0), 0, 0)).norm() < 1e-14);
}

TEST_CASE("singular relative attitude is surfaced, never clamped") {
  const Mat3 R1 = Mat3::Identity();
  const Mat3 Rr = singular_E2();
  for (const auto& kind : {kAsyGeo, kFttGeo, kAsyFro, kFttFro}) {
    CHECK_THROWS_AS(control(kind, R1, Rr, Vec3::Zero()), SingularityError);
  }
}

TEST_CASE("property: left-invariance (relative information only)") {
  std::mt19937_64 rng(21);
  const Vec3 wr(0.3, -0.1, 0.2);
  for (int i = 0; i < 200; ++i) {
    // Relative angle capped at 3.0, the regime every run operates in.
    const Mat3 R1 = random_rotation(rng, 3.0);
    const Mat3 Rr = R1 * random_rotation(rng, 3.0);
    const Mat3 Q = random_rotation(rng, 3.0);
    for (const auto& kind : {kAsyGeo, kFttGeo, kAsyFro, kFttFro}) {
      const ControlOutput a = control(kind, R1, Rr, wr);
      const ControlOutput b = control(kind, Q * R1, Q * Rr, wr);
      CHECK((a.omega1 - b.omega1).norm() < 1e-12);
      CHECK(a.error_measure == doctest::Approx(b.error_measure).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: normalized feedback magnitudes") {
  std::mt19937_64 rng(22);
  const Vec3 wr(0.05, 0.1, -0.2);
  for (int i = 0; i < 500; ++i) {
    const Mat3 R1 = random_rotation(rng, 3.0);
    const Mat3 Rr = random_rotation(rng, 3.0);
    const double theta = rotation_angle(R1.transpose() * Rr);
    if (theta >= M_PI - 1e-3 || theta < 1e-6) continue;

    const Vec3 fb_geo = control(kFttGeo, R1, Rr, wr).omega1 - wr;
    CHECK(fb_geo.norm() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    // Closed form sqrt(2) cos(theta/2), brute-force check via matrix norms.
    const Vec3 fb_fro = control(kFttFro, R1, Rr, wr).omega1 - wr;
    CHECK(fb_fro.norm() ==
          doctest::Approx(std::sqrt(2.0) * std::cos(theta / 2)).epsilon(1e-9));
    const Mat3 Q = R1.transpose() * Rr;
    const double brute = vee(Mat3(Q - Q.transpose())).norm() / (R1 - Rr).norm();
    CHECK(fb_fro.norm() == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("property: asy_geo and asy_fro feedback are parallel") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const Mat3 R1 = random_rotation(rng, 3.0);
    const Mat3 Rr = random_rotation(rng, 3.0);
    const double theta = rotation_angle(R1.transpose() * Rr);
    if (theta >= M_PI - 1e-3) continue;
    const Vec3 a = control(kAsyGeo, R1, Rr, Vec3::Zero()).omega1;
    const Vec3 b = control(kAsyFro, R1, Rr, Vec3::Zero()).omega1;
    CHECK(a.cross(b).norm() < 1e-9);
    CHECK(a.dot(b) >= 0.0);
  }
}

TEST_CASE("property: finite output across the admissible angle range") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    const double theta = (M_PI - 1e-3) * uniform01(rng);
    const Mat3 Rr = exp_so3(theta * random_unit_axis(rng));
    for (const auto& kind : {kAsyGeo, kFttGeo, kAsyFro, kFttFro}) {
      const ControlOutput out = control(kind, Mat3::Identity(), Rr, Vec3(1, 2, 3));
      CHECK(out.omega1.allFinite());
    }
  }
}
