#include "rpn/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace rpn {
namespace {

double sample(const Frame& f, double x, double y, Interpolation interp) {
  const int w = frame_width(f), h = frame_height(f);
  if (interp == Interpolation::Nearest) {
    const int xi = static_cast<int>(std::lround(x));
    const int yi = static_cast<int>(std::lround(y));
    if (xi < 0 || yi < 0 || xi >= w || yi >= h) return 0.0;
    return f(yi, xi);
  }
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0, fy = y - y0;
  double acc = 0.0;
  for (int dy = 0; dy <= 1; ++dy)
    for (int dx = 0; dx <= 1; ++dx) {
      const int xi = x0 + dx, yi = y0 + dy;
      if (xi < 0 || yi < 0 || xi >= w || yi >= h) continue;
      const double wgt = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy);
      acc += wgt * f(yi, xi);
    }
  return acc;
}

// Inverse-map every destination pixel through `to_source`.
template <typename Fn>
Frame warp(const Frame& f, Interpolation interp, Fn to_source) {
  const int w = frame_width(f), h = frame_height(f);
  Frame out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto [sx, sy] = to_source(static_cast<double>(x), static_cast<double>(y));
      out(y, x) = sample(f, sx, sy, interp);
    }
  return out;
}

}  // namespace

Frame rotate_frame(const Frame& frame, double radians, Interpolation interp) {
  const double cx = (frame_width(frame) - 1) / 2.0;
  const double cy = (frame_height(frame) - 1) / 2.0;
  const double c = std::cos(radians), s = std::sin(radians);
  return warp(frame, interp, [&](double x, double y) {
    const double dx = x - cx, dy = y - cy;
    return std::pair{cx + c * dx + s * dy, cy - s * dx + c * dy};
  });
}

Frame scale_frame(const Frame& frame, double factor, Interpolation interp) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_frame: factor must be > 0");
  const double cx = (frame_width(frame) - 1) / 2.0;
  const double cy = (frame_height(frame) - 1) / 2.0;
  return warp(frame, interp, [&](double x, double y) {
    return std::pair{cx + (x - cx) / factor, cy + (y - cy) / factor};
  });
}

Frame shift_frame(const Frame& frame, int dx, int dy) {
  const int w = frame_width(frame), h = frame_height(frame);
  Frame out = Frame::Zero(h, w);
  for (int y = 0; y < h; ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= h) continue;
    for (int x = 0; x < w; ++x) {
      const int sx = x - dx;
      if (sx < 0 || sx >= w) continue;
      out(y, x) = frame(sy, sx);
    }
  }
  return out;
}

}  // namespace rpn
