#pragma once

#include "rpn/disc.hpp"
#include "rpn/filters.hpp"
#include "rpn/normalize.hpp"
#include "rpn/ripple.hpp"

#include <string>
#include <vector>

namespace rpn {

/// Parallel heterogeneous disc bank: one radial Gabor channel per
/// orientation, one disc per density (rings per arm). Densities are listed
/// coarse-last and every disc keeps the base spec's arm count and radius.
struct BankSpec {
  std::vector<GaborSpec> orientations;
  std::vector<int> densities;
  DiscSpec base;
  double threshold = 0.0;
  double alpha = kDefaultLowpassAlpha;

  void validate() const;
};

/// The i x j TP array from one frame: entry (i, j) is orientation i run
/// through the disc with densities[j] rings. completion_tick is each disc's
/// ripple duration; coarse discs finish no later than fine ones.
struct TPBundle {
  int n_orientations = 0;
  int n_densities = 0;
  std::vector<NormalizedTP> entries;       // index i * n_densities + j
  std::vector<int> completion_tick;        // same indexing

  const NormalizedTP& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n_densities + j];
  }

  /// Entries in the order their discs complete: coarse densities first,
  /// then by orientation index. This is the streaming order the
  /// recognizer consumes.
  std::vector<std::size_t> stream_order() const;

  std::string to_json(const BankSpec& bank) const;
};

TPBundle run_bank(const Frame& frame, const BankSpec& bank);

/// Default radial bank orientations: 0, 45 and 90 degrees.
std::vector<GaborSpec> default_radial_orientations();

}  // namespace rpn
