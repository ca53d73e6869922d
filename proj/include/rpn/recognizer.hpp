#pragma once

#include "rpn/bank.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rpn {

struct Template {
  std::string label;
  TPBundle bundle;
};

/// Result of matching one streamed bundle against a store.
struct MatchState {
  struct Decision {
    std::string label;
    double confidence = 0.0;  // cosine over the consumed prefix
    int decided_at_tick = 0;  // samples consumed before the decision
  };
  std::vector<std::string> alive;            // candidates left when matching ended
  std::vector<double> prefix_distance;       // parallel to alive
  std::optional<Decision> decided;
};

/// Labeled TP bundles standing in for the downstream associative memory.
/// Matching consumes a probe bundle coarse-first and prunes candidates whose
/// running prefix distance exceeds a threshold, so most templates are
/// eliminated long before the fine TPs arrive.
class TemplateStore {
 public:
  explicit TemplateStore(BankSpec bank) : bank_(std::move(bank)) { bank_.validate(); }

  void enroll(const std::string& label, TPBundle bundle);

  MatchState match_stream(const TPBundle& probe,
                          double prune_threshold = std::numeric_limits<double>::infinity()) const;

  std::size_t size() const { return templates_.size(); }
  const BankSpec& bank() const { return bank_; }
  const std::vector<Template>& templates() const { return templates_; }

  std::string to_json() const;
  static TemplateStore from_json(const std::string& text);

  void save(const std::string& path) const;
  static TemplateStore load(const std::string& path);

 private:
  BankSpec bank_;
  std::vector<Template> templates_;
};

/// Concatenation of a bundle's entries in stream (coarse-first) order.
Eigen::VectorXd flatten_stream(const TPBundle& bundle, const std::vector<std::size_t>& order);

}  // namespace rpn
