#pragma once

#include "rpn/frame.hpp"

namespace rpn {

enum class Interpolation { Nearest, Bilinear };

/// Rotate about the frame centre by `radians` (counter-clockwise in image
/// coordinates). Samples falling outside the source are 0.
Frame rotate_frame(const Frame& frame, double radians,
                   Interpolation interp = Interpolation::Bilinear);

/// Rescale about the frame centre by `factor`, keeping the frame size.
Frame scale_frame(const Frame& frame, double factor,
                  Interpolation interp = Interpolation::Bilinear);

/// Translate by whole pixels; vacated pixels are 0.
Frame shift_frame(const Frame& frame, int dx, int dy);

}  // namespace rpn
