#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rpn {

enum class DiscGeometry { Spoke, Spiral };

/// Parameters of a neuron disc: `arms` radial arms, `rings` neurons per arm,
/// spanning a circle of `radius` pixels.
struct DiscSpec {
  int arms = 30;
  int rings = 10;
  double radius = 100.0;
  DiscGeometry geometry = DiscGeometry::Spoke;
  double twist_gain = 0.0;  // spiral twist adaptation gain, 0 for spokes

  void validate() const;
};

/// Polar positions of every disc neuron, indexed (arm, ring).
/// Matrices are arms x rings; ring index 0 is the innermost neuron.
struct DiscLayout {
  DiscSpec spec;
  Eigen::MatrixXd r;      // radius of neuron (arm, ring)
  Eigen::MatrixXd theta;  // angle of neuron (arm, ring)
  double uniformity_score = 0.0;  // CV of nearest-neighbour distances

  Eigen::Vector2d cartesian(int arm, int ring) const {
    const double rad = r(arm, ring);
    const double ang = theta(arm, ring);
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  std::string to_json() const;
};

/// Assignment of frame pixels to disc neurons. Pixels outside the disc get -1.
struct PixelMap {
  int width = 0;
  int height = 0;
  double cx = 0.0;
  double cy = 0.0;
  int arms = 0;
  int rings = 0;
  // Flattened neuron index arm * rings + ring, or -1; row-major over pixels.
  std::vector<std::int32_t> assignment;

  std::int32_t at(int x, int y) const { return assignment[static_cast<std::size_t>(y) * width + x]; }
};

DiscLayout build_disc(const DiscSpec& spec);

PixelMap map_pixels(const DiscLayout& layout, int width, int height);

/// CV of nearest-neighbour distances over all neurons of a layout.
double layout_uniformity(const DiscLayout& layout);

}  // namespace rpn
