#pragma once

#include "rpn/ripple.hpp"

#include <Eigen/Dense>
#include <string>

namespace rpn {

/// A temporal pattern rescaled in time and amplitude so that the same object
/// at different image scales yields comparable vectors.
struct NormalizedTP {
  Eigen::VectorXd samples;   // canonical length, independent of source scale
  double warp = 1.0;         // rings / (rings - L)
  double amp_divisor = 1.0;  // sqrt(inh0)
  double inh0 = 0.0;
  int scale_lag = 0;
  int t_tp = 0;

  std::string to_json() const;
  std::string to_csv() const;
};

/// First-order exponential smoothing y(t) = alpha x(t) + (1 - alpha) y(t-1),
/// y(-1) = 0. alpha = 1 is the identity.
Eigen::VectorXd lowpass(const Eigen::VectorXd& samples, double alpha);

/// Default smoothing constant for the normalization path.
inline constexpr double kDefaultLowpassAlpha = 0.3;

/// Smooth, resample the active window [t_tp, rings-1] onto n_canon points,
/// and divide by sqrt(inh0). Refuses empty patterns.
NormalizedTP normalize(const RawTemporalPattern& tp, int n_canon,
                       double alpha = kDefaultLowpassAlpha);

}  // namespace rpn
