#pragma once

#include "rpn/bank.hpp"
#include "rpn/disc.hpp"
#include "rpn/filters.hpp"
#include "rpn/normalize.hpp"
#include "rpn/ripple.hpp"
#include "rpn/transforms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rpn {

/// Single-disc pipeline parameters: DoG high-pass, projection threshold and
/// normalization settings.
struct PipelineConfig {
  DiscSpec disc;
  double dog_sigma1 = 1.0;
  double dog_sigma2 = 1.6;
  double threshold = 0.0;
  double alpha = kDefaultLowpassAlpha;
  int n_canon = 0;  // 0 = use disc.rings
};

struct PipelineResult {
  RawTemporalPattern raw;
  NormalizedTP normalized;
};

/// DoG -> project -> ripple -> normalize. Throws on an empty pattern.
PipelineResult run_pipeline(const Frame& frame, const PipelineConfig& cfg,
                            const DiscLayout& layout, const PixelMap& map);

enum class SweepTransform { Rotation, Scale, Shift };
enum class MetricSource { Raw, Normalized };

struct SweepConfig {
  std::string corpus_dir;
  PipelineConfig pipeline;
  SweepTransform transform = SweepTransform::Rotation;
  std::vector<double> steps;  // radians, scale factors, or fraction-of-width shifts
  MetricSource metrics_on = MetricSource::Normalized;
  Interpolation interp = Interpolation::Bilinear;
  unsigned seed = 0;  // corpus processing order only

  void validate() const;
};

struct SweepRow {
  std::string image_id;
  double value = 0.0;
  double cosine = 0.0;
  double spearman = 0.0;
};

struct SweepAggregate {
  double value = 0.0;
  double cosine_mean = 0.0;
  double cosine_var = 0.0;
  double spearman_mean = 0.0;
  double spearman_var = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepAggregate> aggregates;
  long failures = 0;

  std::string to_csv(SweepTransform transform) const;
  std::string to_svg(const std::string& title) const;
};

SweepResult sweep(const SweepConfig& cfg);

/// Aggregate (mean, variance) per step value from raw rows.
std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows);

/// Thread cap from RPN_THREADS (>= 1; hardware concurrency by default).
int max_threads();

const char* transform_name(SweepTransform t);

}  // namespace rpn
