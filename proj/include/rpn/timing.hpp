#pragma once

#include <cstdint>
#include <stdexcept>

namespace rpn {

/// Analytic recognition-latency bound parameters, integer nanoseconds.
struct TimingParams {
  std::int64_t t_project_ns = 240;
  std::int64_t t_ripple_ns = 1;
  std::int64_t t_pcn_ns = 10;
  std::int64_t tp_length = 500;

  void validate() const {
    if (t_project_ns < 0 || t_ripple_ns < 0 || t_pcn_ns < 0)
      throw std::invalid_argument("TimingParams: durations must be >= 0");
    if (tp_length < 1) throw std::invalid_argument("TimingParams: tp_length must be >= 1");
  }
};

/// Recognition-time bound. Worst case charges both the ripple and the
/// per-sample recognition cost; the overlapped bound drops the ripple term
/// because recognition proceeds while the TP is still being generated.
inline std::int64_t t_recognize_ns(const TimingParams& p, bool worst_case) {
  p.validate();
  std::int64_t t = p.t_project_ns + p.t_pcn_ns * p.tp_length;
  if (worst_case) t += p.t_ripple_ns * p.tp_length;
  return t;
}

}  // namespace rpn
