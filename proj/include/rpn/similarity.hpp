#pragma once

#include <Eigen/Dense>

namespace rpn {

struct SimilarityReport {
  double cosine = 0.0;
  double spearman = 0.0;
};

/// dot(a, b) / (|a| |b|). Throws on zero vectors or length mismatch.
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Spearman's rank correlation with average ranks for ties.
/// Throws on constant inputs, length mismatch, or length < 2.
double spearman_rank(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

SimilarityReport compare(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace rpn
