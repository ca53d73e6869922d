#include "rpn/ripple.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace rpn {
namespace {

// Per-ring totals, each summed in ascending value order so the result is
// bit-identical under any permutation of the arm axis.
Eigen::VectorXd ring_sums(const Eigen::MatrixXd& a) {
  const Eigen::Index rings = a.cols();
  Eigen::VectorXd sums(rings);
  std::vector<double> col(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index n = 0; n < rings; ++n) {
    for (Eigen::Index arm = 0; arm < a.rows(); ++arm)
      col[static_cast<std::size_t>(arm)] = a(arm, n);
    std::sort(col.begin(), col.end());
    double acc = 0.0;
    for (double v : col) acc += v;
    sums(n) = acc;
  }
  return sums;
}

}  // namespace

void ActivationField::validate() const {
  spec.validate();
  if (a.rows() != spec.arms || a.cols() != spec.rings)
    throw std::invalid_argument("ActivationField: dimensions do not match spec");
  if (!a.allFinite() || (a.array() < 0.0).any())
    throw std::invalid_argument("ActivationField: entries must be finite and non-negative");
}

ActivationField project(const Frame& frame, const PixelMap& map, const DiscSpec& spec,
                        double threshold) {
  if (frame_width(frame) != map.width || frame_height(frame) != map.height)
    throw std::invalid_argument("project: frame dimensions do not match pixel map");
  if (map.arms != spec.arms || map.rings != spec.rings)
    throw std::invalid_argument("project: pixel map does not match disc spec");

  ActivationField field;
  field.spec = spec;
  field.a = Eigen::MatrixXd::Zero(spec.arms, spec.rings);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) {
      const std::int32_t idx = map.at(x, y);
      if (idx < 0) continue;
      field.a(idx / spec.rings, idx % spec.rings) += std::abs(frame(y, x));
    }
  if (threshold > 0.0)
    field.a = (field.a.array() < threshold).select(0.0, field.a);
  return field;
}

RawTemporalPattern ripple(const ActivationField& field) {
  field.validate();
  const int rings = field.spec.rings;
  const Eigen::VectorXd sums = ring_sums(field.a);

  RawTemporalPattern tp;
  tp.samples.resize(rings);
  tp.inh_trace.resize(rings);
  // Ring i (0-based) reaches the edge at tick rings-1-i; the trace at tick t
  // is the total still on the disc, i.e. rings 0..rings-1-t.
  double prefix = 0.0;
  for (int i = 0; i < rings; ++i) {
    tp.samples(rings - 1 - i) = sums(i);
    prefix += sums(i);
    tp.inh_trace(rings - 1 - i) = prefix;
  }
  tp.inh0 = tp.inh_trace(0);
  tp.empty = (tp.inh0 == 0.0);
  tp.t_inh = 0;
  tp.t_tp = 0;
  tp.scale_lag = -1;
  if (!tp.empty) {
    int t = 0;
    while (t < rings && tp.samples(t) == 0.0) ++t;
    tp.t_tp = t;
    tp.scale_lag = tp.t_tp - tp.t_inh;
  }
  return tp;
}

int active_ticks(const ActivationField& field) {
  const Eigen::VectorXd sums = ring_sums(field.a);
  for (int i = 0; i < sums.size(); ++i)
    if (sums(i) != 0.0) return field.spec.rings - i;
  return 0;
}

GateResult run_gate(const std::vector<GateEvent>& events) {
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].tick < events[i - 1].tick)
      throw std::invalid_argument("run_gate: events must be ordered by tick");

  GateResult result;
  long busy_until = std::numeric_limits<long>::min();  // shutter open before first frame
  bool has_pending = false;
  std::size_t pending = 0;

  auto admit = [&](std::size_t index, long tick) {
    result.admitted.push_back({tick, index});
    busy_until = tick + active_ticks(events[index].field);
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    // Drain any pending frame whose wait ends before this arrival.
    while (has_pending && busy_until <= events[i].tick) {
      has_pending = false;
      admit(pending, busy_until);
    }
    if (!has_pending && busy_until <= events[i].tick) {
      admit(i, events[i].tick);
    } else {
      if (has_pending) ++result.dropped;  // latest wins
      pending = i;
      has_pending = true;
    }
  }
  while (has_pending) {
    has_pending = false;
    admit(pending, busy_until);
    // nothing left to queue behind it
  }
  return result;
}

std::string RawTemporalPattern::to_json() const {
  nlohmann::json j;
  j["samples"] = std::vector<double>(samples.begin(), samples.end());
  j["inh_trace"] = std::vector<double>(inh_trace.begin(), inh_trace.end());
  j["inh0"] = inh0;
  j["t_inh"] = t_inh;
  j["t_tp"] = t_tp;
  j["L"] = scale_lag;
  j["empty"] = empty;
  return j.dump(2);
}

std::string RawTemporalPattern::to_csv() const {
  std::ostringstream out;
  out << "t,tp_sum,inh\n";
  out.precision(17);
  for (int t = 0; t < samples.size(); ++t)
    out << t << "," << samples(t) << "," << inh_trace(t) << "\n";
  return out.str();
}

}  // namespace rpn
