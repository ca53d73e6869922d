#include "rpn/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rpn {
namespace {

Eigen::VectorXd fractional_ranks(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return v(i) < v(j); });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v(order[static_cast<std::size_t>(j + 1)]) == v(order[static_cast<std::size_t>(i)])) ++j;
    const double avg = (i + j) / 2.0 + 1.0;  // ranks are 1-based
    for (Eigen::Index k = i; k <= j; ++k) ranks(order[static_cast<std::size_t>(k)]) = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (denom == 0.0) throw std::invalid_argument("spearman: constant input");
  return da.dot(db) / denom;
}

}  // namespace

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("cosine: vectors must have equal nonzero length");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("cosine: undefined for zero vectors");
  return a.dot(b) / (na * nb);
}

double spearman_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: vectors must have equal length >= 2");
  return pearson(fractional_ranks(a), fractional_ranks(b));
}

SimilarityReport compare(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return {cosine_similarity(a, b), spearman_rank(a, b)};
}

}  // namespace rpn
