#include "rpn/bank.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace rpn {

void BankSpec::validate() const {
  if (orientations.empty()) throw std::invalid_argument("BankSpec: need at least one orientation");
  for (const auto& o : orientations) o.validate();
  if (densities.empty()) throw std::invalid_argument("BankSpec: need at least one density");
  for (std::size_t j = 0; j < densities.size(); ++j) {
    if (densities[j] < 1) throw std::invalid_argument("BankSpec: densities must be >= 1");
    if (j > 0 && densities[j] >= densities[j - 1])
      throw std::invalid_argument("BankSpec: densities must be strictly decreasing (coarse last)");
  }
  base.validate();
}

std::vector<GaborSpec> default_radial_orientations() {
  std::vector<GaborSpec> specs(3);
  specs[0].orientation = 0.0;
  specs[1].orientation = std::numbers::pi / 4.0;
  specs[2].orientation = std::numbers::pi / 2.0;
  for (auto& s : specs) s.mode = GaborMode::Radial;
  return specs;
}

std::vector<std::size_t> TPBundle::stream_order() const {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    // coarse discs complete first; orientation index breaks ties
    const int ja = static_cast<int>(a) % n_densities;
    const int jb = static_cast<int>(b) % n_densities;
    if (completion_tick[a] != completion_tick[b])
      return completion_tick[a] < completion_tick[b];
    if (ja != jb) return ja > jb;  // densities are listed coarse-last
    return a < b;
  });
  return order;
}

TPBundle run_bank(const Frame& frame, const BankSpec& bank) {
  bank.validate();

  // One disc + pixel map per density, full image projected onto each.
  struct Disc {
    DiscLayout layout;
    PixelMap map;
  };
  std::vector<Disc> discs;
  discs.reserve(bank.densities.size());
  for (int rings : bank.densities) {
    DiscSpec spec = bank.base;
    spec.rings = rings;
    DiscLayout layout = build_disc(spec);
    PixelMap map = map_pixels(layout, frame_width(frame), frame_height(frame));
    discs.push_back({std::move(layout), std::move(map)});
  }

  TPBundle bundle;
  bundle.n_orientations = static_cast<int>(bank.orientations.size());
  bundle.n_densities = static_cast<int>(bank.densities.size());
  bundle.entries.reserve(bundle.n_orientations * bundle.n_densities);
  bundle.completion_tick.reserve(bundle.n_orientations * bundle.n_densities);

  const int n_canon = bank.base.rings;
  for (const auto& orient : bank.orientations) {
    const Frame channel = gabor_filter(frame, orient);
    for (std::size_t j = 0; j < discs.size(); ++j) {
      const ActivationField field =
          project(channel, discs[j].map, discs[j].layout.spec, bank.threshold);
      bundle.completion_tick.push_back(active_ticks(field));
      const RawTemporalPattern tp = ripple(field);
      if (tp.empty) {
        // A silent channel still occupies its bundle slot.
        NormalizedTP zero;
        zero.samples = Eigen::VectorXd::Zero(n_canon);
        bundle.entries.push_back(std::move(zero));
      } else {
        bundle.entries.push_back(normalize(tp, n_canon, bank.alpha));
      }
    }
  }
  return bundle;
}

std::string TPBundle::to_json(const BankSpec& bank) const {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < n_orientations; ++i)
    for (int j = 0; j < n_densities; ++j) {
      const NormalizedTP& tp = at(i, j);
      nlohmann::json rec;
      rec["orientation_deg"] = bank.orientations[static_cast<std::size_t>(i)].orientation * 180.0 / std::numbers::pi;
      rec["rings"] = bank.densities[static_cast<std::size_t>(j)];
      rec["completion_tick"] = completion_tick[static_cast<std::size_t>(i) * n_densities + j];
      rec["samples"] = std::vector<double>(tp.samples.begin(), tp.samples.end());
      rec["M"] = tp.warp;
      rec["amp_divisor"] = tp.amp_divisor;
      rec["inh0"] = tp.inh0;
      arr.push_back(std::move(rec));
    }
  return arr.dump(2);
}

}  // namespace rpn
