#include "rpn/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rpn {
namespace {

// Reflect index i into [0, n) (mirror without repeating the edge sample's
// neighbour twice, i.e. -1 -> 1, n -> n - 2).
inline int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i = std::abs(i) % period;
  return i < n ? i : period - i;
}

Eigen::VectorXd gaussian_kernel(double sigma) {
  const int half = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  Eigen::VectorXd k(2 * half + 1);
  for (int i = -half; i <= half; ++i)
    k(i + half) = std::exp(-(i * i) / (2.0 * sigma * sigma));
  k /= k.sum();
  return k;
}

Frame convolve_rows(const Frame& f, const Eigen::VectorXd& k) {
  const int h = frame_height(f), w = frame_width(f);
  const int half = static_cast<int>(k.size()) / 2;
  Frame out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -half; i <= half; ++i) acc += k(i + half) * f(y, reflect(x + i, w));
      out(y, x) = acc;
    }
  return out;
}

Frame convolve_cols(const Frame& f, const Eigen::VectorXd& k) {
  const int h = frame_height(f), w = frame_width(f);
  const int half = static_cast<int>(k.size()) / 2;
  Frame out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -half; i <= half; ++i) acc += k(i + half) * f(reflect(y + i, h), x);
      out(y, x) = acc;
    }
  return out;
}

// Zero-mean Gabor kernel value at offset (dx, dy) for preferred angle `ang`.
inline double gabor_value(double dx, double dy, double ang, const GaborSpec& s) {
  const double c = std::cos(ang), sn = std::sin(ang);
  const double xr = dx * c + dy * sn;
  const double yr = -dx * sn + dy * c;
  const double env = std::exp(-(xr * xr + s.aspect * s.aspect * yr * yr) / (2.0 * s.sigma * s.sigma));
  return env * std::cos(2.0 * std::numbers::pi * xr / s.wavelength + s.phase);
}

}  // namespace

void GaborSpec::validate() const {
  if (!(wavelength > 0.0)) throw std::invalid_argument("GaborSpec.wavelength must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("GaborSpec.sigma must be > 0");
  if (!(aspect > 0.0)) throw std::invalid_argument("GaborSpec.aspect must be > 0");
}

Frame gaussian_blur(const Frame& frame, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be > 0");
  const Eigen::VectorXd k = gaussian_kernel(sigma);
  return convolve_cols(convolve_rows(frame, k), k);
}

Frame dog_highpass(const Frame& frame, double sigma1, double sigma2) {
  if (!(sigma1 > 0.0) || !(sigma1 < sigma2))
    throw std::invalid_argument("dog_highpass: require 0 < sigma1 < sigma2");
  return gaussian_blur(frame, sigma1) - gaussian_blur(frame, sigma2);
}

Frame gabor_filter(const Frame& frame, const GaborSpec& spec) {
  spec.validate();
  const int h = frame_height(frame), w = frame_width(frame);
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  const int half = std::max(1, static_cast<int>(std::ceil(3.0 * spec.sigma)));

  Frame out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double ang = spec.orientation;
      if (spec.mode == GaborMode::Radial) ang += std::atan2(y - cy, x - cx);
      // Zero-mean correction keeps flat regions silent.
      double acc = 0.0, ksum = 0.0, fsum = 0.0;
      for (int dy = -half; dy <= half; ++dy)
        for (int dx = -half; dx <= half; ++dx) {
          const double kv = gabor_value(dx, dy, ang, spec);
          const double fv = frame(reflect(y + dy, h), reflect(x + dx, w));
          acc += kv * fv;
          ksum += kv;
          fsum += fv;
        }
      const int taps = (2 * half + 1) * (2 * half + 1);
      const double resp = acc - ksum * fsum / taps;
      out(y, x) = std::max(0.0, resp);  // half-wave rectification
    }
  }
  return out;
}

std::vector<Frame> gabor_bank(const Frame& frame, const std::vector<GaborSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("gabor_bank: need at least one spec");
  std::vector<Frame> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(gabor_filter(frame, s));
  return out;
}

}  // namespace rpn
