#include <doctest.h>

#include "rpn/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace rpn;

namespace {

// Extended-precision cosine reference.
long double cosine_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  long double dot = 0, na = 0, nb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a(i)) * b(i);
    na += static_cast<long double>(a(i)) * a(i);
    nb += static_cast<long double>(b(i)) * b(i);
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Rank oracle: stable sort, average tied blocks, then plain Pearson.
std::vector<long double> ranks_oracle(const Eigen::VectorXd& v) {
  const auto n = static_cast<std::size_t>(v.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return v(static_cast<Eigen::Index>(i)) < v(static_cast<Eigen::Index>(j)); });
  std::vector<long double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n &&
           v(static_cast<Eigen::Index>(order[j + 1])) == v(static_cast<Eigen::Index>(order[i])))
      ++j;
    long double sum = 0;
    for (std::size_t k = i; k <= j; ++k) sum += static_cast<long double>(k) + 1;
    const long double avg = sum / static_cast<long double>(j - i + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

long double spearman_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const auto ra = ranks_oracle(a);
  const auto rb = ranks_oracle(b);
  const auto n = ra.size();
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<long double>(n);
  mb /= static_cast<long double>(n);
  long double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

}  // namespace

TEST_CASE("cosine basics") {
  Eigen::VectorXd a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(cosine_similarity(a, Eigen::VectorXd::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(cosine_similarity(a, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("cosine matches extended-precision evaluation on random pairs") {
  std::mt19937 rng(17);
  std::normal_distribution<double> dist;
  Eigen::VectorXd a(200), b(200);
  for (int i = 0; i < 200; ++i) {
    a(i) = dist(rng);
    b(i) = dist(rng);
  }
  CHECK(std::abs(cosine_similarity(a, b) - static_cast<double>(cosine_oracle(a, b))) < 1e-12);
}

TEST_CASE("spearman basics") {
  Eigen::VectorXd inc(5);
  inc << 1, 2, 3, 4, 5;
  CHECK(spearman_rank(inc, inc) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spearman_rank(inc, inc.reverse()) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(spearman_rank(inc, Eigen::VectorXd::Constant(5, 2.0)), std::invalid_argument);
  CHECK_THROWS_AS(spearman_rank(inc, Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST_CASE("spearman handles ties via average ranks") {
  Eigen::VectorXd a(10), b(10);
  a << 3, 1, 4, 1, 5, 9, 2, 6, 5, 3;
  b << 2, 7, 1, 8, 2, 8, 1, 8, 2, 8;
  CHECK(spearman_rank(a, b) ==
        doctest::Approx(static_cast<double>(spearman_oracle(a, b))).epsilon(1e-12));
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  Eigen::VectorXd a(60), b(60);
  for (int i = 0; i < 60; ++i) {
    a(i) = std::round(dist(rng));  // coarse values force ties
    b(i) = dist(rng);
  }
  const double base = spearman_rank(a, b);
  const Eigen::VectorXd warped = (a.array() * 2.0).exp();
  CHECK(spearman_rank(warped, b) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("metrics are symmetric and cosine is scale-invariant") {
  std::mt19937 rng(29);
  std::normal_distribution<double> dist;
  Eigen::VectorXd a(50), b(50);
  for (int i = 0; i < 50; ++i) {
    a(i) = dist(rng);
    b(i) = dist(rng);
  }
  CHECK(cosine_similarity(a, b) == doctest::Approx(cosine_similarity(b, a)).epsilon(1e-15));
  CHECK(spearman_rank(a, b) == doctest::Approx(spearman_rank(b, a)).epsilon(1e-12));
  CHECK(cosine_similarity(a, (4.2 * a).eval()) == doctest::Approx(1.0).epsilon(1e-12));
}
