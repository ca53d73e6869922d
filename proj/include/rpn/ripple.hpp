#pragma once

#include "rpn/disc.hpp"
#include "rpn/frame.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rpn {

/// Initial per-neuron activation, arms x rings; ring 0 is innermost.
struct ActivationField {
  DiscSpec spec;
  Eigen::MatrixXd a;

  void validate() const;
};

/// Output of one ripple: the summing-neuron time series and the inhibitory
/// trace, both of length rings. `t_tp` is the tick of the first nonzero
/// summing output, `t_inh` the first tick with disc activity, and
/// scale_lag = t_tp - t_inh drives downstream time normalization.
struct RawTemporalPattern {
  Eigen::VectorXd samples;
  Eigen::VectorXd inh_trace;
  double inh0 = 0.0;
  int t_inh = 0;
  int t_tp = 0;
  int scale_lag = 0;  // L
  bool empty = false;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Sum of absolute frame values over each neuron's pixel preimage, zeroed
/// below `threshold`.
ActivationField project(const Frame& frame, const PixelMap& map, const DiscSpec& spec,
                        double threshold = 0.0);

/// Run the outward wave. Activity initially at ring n (1-based) exits the
/// edge at tick rings - n; samples are recorded before each shift.
RawTemporalPattern ripple(const ActivationField& field);

/// Number of ticks the disc stays active for this field (0 for empty fields);
/// the asynchronous shutter holds new frames for this long.
int active_ticks(const ActivationField& field);

/// Asynchronous shutter over a timestamped frame queue: a frame is admitted
/// only when no activity remains on the disc. One pending slot, latest wins.
struct GateEvent {
  long tick = 0;
  ActivationField field;
};

struct GateResult {
  struct Admission {
    long tick = 0;          // tick at which the frame hit the disc
    std::size_t event_index = 0;
  };
  std::vector<Admission> admitted;
  long dropped = 0;
};

GateResult run_gate(const std::vector<GateEvent>& events);

}  // namespace rpn
