#include "rpn/normalize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rpn {

Eigen::VectorXd lowpass(const Eigen::VectorXd& samples, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("lowpass: alpha must be in (0, 1]");
  Eigen::VectorXd y(samples.size());
  double prev = 0.0;
  for (Eigen::Index t = 0; t < samples.size(); ++t) {
    prev = alpha * samples(t) + (1.0 - alpha) * prev;
    y(t) = prev;
  }
  return y;
}

NormalizedTP normalize(const RawTemporalPattern& tp, int n_canon, double alpha) {
  if (n_canon < 1) throw std::invalid_argument("normalize: n_canon must be >= 1");
  if (tp.empty || tp.inh0 <= 0.0)
    throw std::invalid_argument("normalize: empty pattern (inh0 = 0)");
  const int rings = static_cast<int>(tp.samples.size());
  if (tp.scale_lag >= rings)
    throw std::invalid_argument("normalize: degenerate window (L = rings)");

  // Active window [t_tp, rings-1], linearly resampled onto n_canon points.
  // Smoothing runs on the canonical axis so the filter's time constant is the
  // same for every source scale; smoothing before the warp would shift small
  // images' patterns by a scale-dependent lag and break their overlap.
  const int window = rings - tp.scale_lag;
  Eigen::VectorXd resampled(n_canon);
  for (int k = 0; k < n_canon; ++k) {
    const double pos = (n_canon == 1)
                           ? tp.t_tp
                           : tp.t_tp + static_cast<double>(k) * (window - 1) / (n_canon - 1);
    const int lo = static_cast<int>(std::floor(pos));
    const int hi = std::min(lo + 1, rings - 1);
    const double frac = pos - lo;
    resampled(k) = (1.0 - frac) * tp.samples(lo) + frac * tp.samples(hi);
  }
  NormalizedTP out;
  out.amp_divisor = std::sqrt(tp.inh0);
  out.samples = lowpass(resampled, alpha) / out.amp_divisor;
  out.warp = static_cast<double>(rings) / window;
  out.inh0 = tp.inh0;
  out.scale_lag = tp.scale_lag;
  out.t_tp = tp.t_tp;
  return out;
}

std::string NormalizedTP::to_json() const {
  nlohmann::json j;
  j["normalized"] = true;
  j["samples"] = std::vector<double>(samples.begin(), samples.end());
  j["M"] = warp;
  j["amp_divisor"] = amp_divisor;
  j["inh0"] = inh0;
  j["L"] = scale_lag;
  j["t_tp"] = t_tp;
  return j.dump(2);
}

std::string NormalizedTP::to_csv() const {
  std::ostringstream out;
  out << "t,tp_norm\n";
  out.precision(17);
  for (int t = 0; t < samples.size(); ++t) out << t << "," << samples(t) << "\n";
  return out.str();
}

}  // namespace rpn
