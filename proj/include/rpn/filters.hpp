#pragma once

#include "rpn/frame.hpp"

#include <vector>

namespace rpn {

enum class GaborMode { Cartesian, Radial };

/// One channel of the orientation filter bank. In Radial mode the preferred
/// orientation at each pixel is `orientation` plus the angle of the radius
/// through that pixel, so the channel responds to features by their
/// orientation relative to the disc centre.
struct GaborSpec {
  double orientation = 0.0;  // radians
  double wavelength = 8.0;   // pixels
  double sigma = 3.0;        // pixels
  double aspect = 0.5;
  double phase = 0.0;
  GaborMode mode = GaborMode::Radial;

  void validate() const;
};

/// Difference-of-Gaussians high-pass: G(sigma1) * frame - G(sigma2) * frame.
/// Kernels truncated at 3 sigma, reflective borders. Requires sigma1 < sigma2.
Frame dog_highpass(const Frame& frame, double sigma1, double sigma2);

/// Separable Gaussian blur with a normalized, 3-sigma-truncated kernel and
/// reflective borders.
Frame gaussian_blur(const Frame& frame, double sigma);

/// Half-wave-rectified Gabor response maps, one per spec.
std::vector<Frame> gabor_bank(const Frame& frame, const std::vector<GaborSpec>& specs);

Frame gabor_filter(const Frame& frame, const GaborSpec& spec);

}  // namespace rpn
