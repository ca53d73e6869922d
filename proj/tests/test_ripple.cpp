#include <doctest.h>

#include "rpn/disc.hpp"
#include "rpn/ripple.hpp"

#include <algorithm>
#include <random>

using namespace rpn;

namespace {

DiscSpec make_spec(int arms, int rings) {
  DiscSpec s;
  s.arms = arms;
  s.rings = rings;
  s.radius = 100.0;
  return s;
}

ActivationField make_field(int arms, int rings) {
  ActivationField f;
  f.spec = make_spec(arms, rings);
  f.a = Eigen::MatrixXd::Zero(arms, rings);
  return f;
}

// Literal time-stepped reference: record edge and total activity, then shift
// every arm one ring outward.
Eigen::VectorXd brute_ripple(Eigen::MatrixXd a) {
  const Eigen::Index rings = a.cols();
  Eigen::VectorXd samples = Eigen::VectorXd::Zero(rings);
  for (Eigen::Index t = 0; t < rings; ++t) {
    samples(t) = a.col(rings - 1).sum();
    for (Eigen::Index n = rings - 1; n > 0; --n) a.col(n) = a.col(n - 1);
    a.col(0).setZero();
  }
  return samples;
}

}  // namespace

TEST_CASE("edge-ring activity exits immediately") {
  auto field = make_field(30, 10);
  field.a.col(9).setOnes();
  const auto tp = ripple(field);
  CHECK(tp.samples(0) == 30.0);
  CHECK(tp.samples.tail(9).isZero(0.0));
  CHECK(tp.t_tp == 0);
  CHECK(tp.scale_lag == 0);
  CHECK(tp.inh0 == 30.0);
}

TEST_CASE("a centre quantum travels rings-1 ticks") {
  auto field = make_field(5, 10);
  field.a(0, 0) = 1.0;
  const auto tp = ripple(field);
  CHECK(tp.samples(9) == 1.0);
  CHECK(tp.samples.head(9).isZero(0.0));
  CHECK(tp.samples.sum() == 1.0);
  CHECK(tp.t_tp == 9);
  CHECK(tp.scale_lag == 9);
}

TEST_CASE("fully active disc matches the closed form") {
  auto field = make_field(30, 10);
  field.a.setOnes();
  const auto tp = ripple(field);
  for (int t = 0; t < 10; ++t) {
    CHECK(tp.samples(t) == 30.0);
    CHECK(tp.inh_trace(t) == doctest::Approx(30.0 * (10 - t)).epsilon(1e-12));
  }
  CHECK(tp.inh0 == 300.0);
}

TEST_CASE("engine agrees with the brute-force time-stepped simulation") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    auto field = make_field(13, 17);
    for (int arm = 0; arm < 13; ++arm)
      for (int ring = 0; ring < 17; ++ring)
        field.a(arm, ring) = rng() % 3 == 0 ? 0.0 : dist(rng);
    const auto tp = ripple(field);
    const Eigen::VectorXd expect = brute_ripple(field.a);
    CHECK((tp.samples - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("conservation and monotone inhibitory trace") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  auto field = make_field(20, 40);
  for (int arm = 0; arm < 20; ++arm)
    for (int ring = 0; ring < 40; ++ring) field.a(arm, ring) = dist(rng);
  const auto tp = ripple(field);
  CHECK(tp.samples.sum() == doctest::Approx(tp.inh0).epsilon(1e-9));
  for (int t = 1; t < 40; ++t) CHECK(tp.inh_trace(t) <= tp.inh_trace(t - 1));
}

TEST_CASE("arm permutation leaves the TP bit-identical") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  auto field = make_field(17, 23);
  for (int arm = 0; arm < 17; ++arm)
    for (int ring = 0; ring < 23; ++ring) field.a(arm, ring) = dist(rng);
  const auto tp = ripple(field);

  std::vector<int> perm(17);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto shuffled = field;
  for (int arm = 0; arm < 17; ++arm) shuffled.a.row(arm) = field.a.row(perm[static_cast<std::size_t>(arm)]);
  const auto tp2 = ripple(shuffled);
  CHECK(tp.samples == tp2.samples);
  CHECK(tp.inh_trace == tp2.inh_trace);
}

TEST_CASE("radial inward shift delays the TP by the same number of ticks") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const int rings = 24, k = 5;
  auto field = make_field(6, rings);
  for (int arm = 0; arm < 6; ++arm)
    for (int ring = k; ring < rings; ++ring) field.a(arm, ring) = dist(rng);

  auto shifted = make_field(6, rings);
  for (int arm = 0; arm < 6; ++arm)
    for (int ring = k; ring < rings; ++ring) shifted.a(arm, ring - k) = field.a(arm, ring);

  const auto tp = ripple(field);
  const auto tp2 = ripple(shifted);
  for (int t = 0; t + k < rings; ++t) CHECK(tp2.samples(t + k) == tp.samples(t));
}

TEST_CASE("empty field is flagged") {
  const auto tp = ripple(make_field(4, 6));
  CHECK(tp.empty);
  CHECK(tp.inh0 == 0.0);
  CHECK(tp.scale_lag == -1);
}

TEST_CASE("projection sums absolute pixel values per preimage") {
  const auto spec = make_spec(30, 10);
  DiscSpec spec_small = spec;
  spec_small.radius = 10.0;
  const auto layout = build_disc(spec_small);
  const auto map = map_pixels(layout, 21, 21);

  SUBCASE("all-zero frame gives an empty field") {
    const Frame frame = Frame::Zero(21, 21);
    const auto field = project(frame, map, spec_small);
    CHECK(field.a.isZero(0.0));
  }
  SUBCASE("single bright centre pixel hits one innermost neuron") {
    Frame frame = Frame::Zero(21, 21);
    frame(10, 10) = 1.0;
    const auto field = project(frame, map, spec_small);
    CHECK(field.a.sum() == 1.0);
    int nz_ring = -1;
    for (int arm = 0; arm < 30; ++arm)
      for (int ring = 0; ring < 10; ++ring)
        if (field.a(arm, ring) != 0.0) nz_ring = ring;
    CHECK(nz_ring == 0);
  }
  SUBCASE("negative filtered values count by magnitude, threshold zeroes") {
    Frame frame = Frame::Constant(21, 21, -0.5);
    const auto field = project(frame, map, spec_small, 0.0);
    CHECK((field.a.array() >= 0.0).all());
    const auto gated = project(frame, map, spec_small, 1e9);
    CHECK(gated.a.isZero(0.0));
  }
  SUBCASE("nonzero neuron count equals brute-force grouping") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Frame frame(21, 21);
    for (int y = 0; y < 21; ++y)
      for (int x = 0; x < 21; ++x) frame(y, x) = dist(rng);
    const double threshold = 0.4;
    const auto field = project(frame, map, spec_small, threshold);

    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(30, 10);
    for (int y = 0; y < 21; ++y)
      for (int x = 0; x < 21; ++x) {
        const auto idx = map.at(x, y);
        if (idx >= 0) expect(idx / 10, idx % 10) += std::abs(frame(y, x));
      }
    int count = 0, expect_count = 0;
    for (int arm = 0; arm < 30; ++arm)
      for (int ring = 0; ring < 10; ++ring) {
        if (field.a(arm, ring) != 0.0) ++count;
        if (expect(arm, ring) >= threshold) ++expect_count;
      }
    CHECK(count == expect_count);
  }
}

TEST_CASE("asynchronous shutter") {
  auto full = make_field(30, 10);
  full.a.setOnes();
  auto empty = make_field(30, 10);

  SUBCASE("second frame waits for the first ripple to finish") {
    const auto result = run_gate({{0, full}, {1, full}});
    REQUIRE(result.admitted.size() == 2);
    CHECK(result.admitted[0].tick == 0);
    CHECK(result.admitted[1].tick == 10);
    CHECK(result.dropped == 0);
  }
  SUBCASE("latest pending frame wins") {
    const auto result = run_gate({{0, full}, {1, full}, {2, full}});
    REQUIRE(result.admitted.size() == 2);
    CHECK(result.admitted[1].event_index == 2);
    CHECK(result.admitted[1].tick == 10);
    CHECK(result.dropped == 1);
  }
  SUBCASE("empty frame never closes the shutter") {
    const auto result = run_gate({{0, empty}, {1, full}});
    REQUIRE(result.admitted.size() == 2);
    CHECK(result.admitted[1].tick == 1);
    CHECK(result.dropped == 0);
  }
}

TEST_CASE("TP export formats") {
  auto field = make_field(3, 4);
  field.a(1, 2) = 2.5;
  const auto tp = ripple(field);
  CHECK(tp.to_csv().rfind("t,tp_sum,inh\n", 0) == 0);
  CHECK(tp.to_json().find("\"inh0\"") != std::string::npos);
}
