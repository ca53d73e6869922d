#include "rpn/disc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace rpn {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform grid over the disc bounding box for nearest-neighbour queries.
class PointGrid {
 public:
  PointGrid(const std::vector<Eigen::Vector2d>& pts, double cell)
      : pts_(pts), cell_(cell) {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (const auto& p : pts) {
      lo = std::min({lo, p.x(), p.y()});
      hi = std::max({hi, p.x(), p.y()});
    }
    origin_ = lo;
    nx_ = std::max(1, static_cast<int>(std::ceil((hi - lo) / cell_)) + 1);
    cells_.resize(static_cast<std::size_t>(nx_) * nx_);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      cells_[cell_index(pts[static_cast<std::size_t>(i)])].push_back(i);
    }
  }

  // Nearest point to q, excluding index `exclude` (-1 for none).
  // Ties resolved toward the lowest point index.
  int nearest(const Eigen::Vector2d& q, int exclude, double* best_d2_out = nullptr) const {
    const int cx = clamp_cell(static_cast<int>((q.x() - origin_) / cell_));
    const int cy = clamp_cell(static_cast<int>((q.y() - origin_) / cell_));
    double best_d2 = std::numeric_limits<double>::max();
    int best = -1;
    for (int ring = 0; ring < 2 * nx_; ++ring) {
      // Stop once the closest possible point in this ring cannot beat best.
      const double ring_lb = (ring - 1) * cell_;
      if (best >= 0 && ring_lb > 0 && ring_lb * ring_lb > best_d2) break;
      bool any_cell = false;
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const int gx = cx + dx;
          const int gy = cy + dy;
          if (gx < 0 || gy < 0 || gx >= nx_ || gy >= nx_) continue;
          any_cell = true;
          for (int idx : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) {
            if (idx == exclude) continue;
            const Eigen::Vector2d d = pts_[static_cast<std::size_t>(idx)] - q;
            const double d2 = d.x() * d.x() + d.y() * d.y();
            if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
              best_d2 = d2;
              best = idx;
            }
          }
        }
      }
      if (!any_cell && ring > 0 && best >= 0) break;
    }
    if (best_d2_out) *best_d2_out = best_d2;
    return best;
  }

 private:
  int cell_index(const Eigen::Vector2d& p) const {
    const int gx = clamp_cell(static_cast<int>((p.x() - origin_) / cell_));
    const int gy = clamp_cell(static_cast<int>((p.y() - origin_) / cell_));
    return gy * nx_ + gx;
  }
  int clamp_cell(int c) const { return std::clamp(c, 0, nx_ - 1); }

  const std::vector<Eigen::Vector2d>& pts_;
  double cell_;
  double origin_;
  int nx_;
  std::vector<std::vector<int>> cells_;
};

std::vector<Eigen::Vector2d> flatten_positions(const DiscLayout& layout) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(layout.spec.arms) * layout.spec.rings);
  for (int arm = 0; arm < layout.spec.arms; ++arm)
    for (int ring = 0; ring < layout.spec.rings; ++ring)
      pts.push_back(layout.cartesian(arm, ring));
  return pts;
}

// Nearest-neighbour spacing at a given ring during spiral construction.
// Rings are rotationally symmetric, so arm 0 is representative.
double ring_spacing(const Eigen::VectorXd& radii, const Eigen::VectorXd& offsets,
                    int ring, int arms) {
  const double slot = kTwoPi / arms;
  double best = std::numeric_limits<double>::max();
  if (arms >= 2) {
    best = 2.0 * radii(ring) * std::sin(std::numbers::pi / arms);
  }
  if (ring > 0) {
    const double r0 = radii(ring);
    const double r1 = radii(ring - 1);
    double delta = std::fmod(offsets(ring) - offsets(ring - 1), slot);
    if (delta < 0) delta += slot;
    for (double ang : {delta, delta - slot}) {
      const double d2 = r0 * r0 + r1 * r1 - 2.0 * r0 * r1 * std::cos(ang);
      best = std::min(best, std::sqrt(std::max(0.0, d2)));
    }
  }
  return best;
}

}  // namespace

void DiscSpec::validate() const {
  if (arms < 1) throw std::invalid_argument("DiscSpec.arms must be >= 1");
  if (rings < 1) throw std::invalid_argument("DiscSpec.rings must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("DiscSpec.radius must be > 0");
  if (twist_gain < 0.0) throw std::invalid_argument("DiscSpec.twist_gain must be >= 0");
  if (geometry == DiscGeometry::Spoke && twist_gain != 0.0)
    throw std::invalid_argument("DiscSpec.twist_gain must be 0 for Spoke geometry");
}

DiscLayout build_disc(const DiscSpec& spec) {
  spec.validate();
  const int arms = spec.arms;
  const int rings = spec.rings;

  // Spokes space rings evenly along the radius; the time-warp step of the
  // normalizer depends on that linear radius-to-ring relation. Spiral arms
  // instead place rings at uniform area density (r grows with sqrt(n)), which
  // is what lets the twist equalize neighbour spacing across the disc.
  Eigen::VectorXd radii(rings);
  for (int n = 0; n < rings; ++n)
    radii(n) = spec.geometry == DiscGeometry::Spiral
                   ? spec.radius * std::sqrt(static_cast<double>(n + 1) / rings)
                   : spec.radius * (n + 1) / rings;

  // Cumulative angular offset per ring. Spoke: all zero. Spiral: the twist
  // step adapts so measured neighbour spacing approaches the radial spacing.
  Eigen::VectorXd offsets = Eigen::VectorXd::Zero(rings);
  if (spec.geometry == DiscGeometry::Spiral) {
    const double target = spec.radius / rings;
    double step = 0.0;
    for (int n = 0; n + 1 < rings; ++n) {
      const double spacing = ring_spacing(radii, offsets, n, arms);
      step += spec.twist_gain * (target - spacing) / spec.radius;
      offsets(n + 1) = offsets(n) + step;
    }
  }

  DiscLayout layout;
  layout.spec = spec;
  layout.r.resize(arms, rings);
  layout.theta.resize(arms, rings);
  for (int arm = 0; arm < arms; ++arm) {
    const double base = kTwoPi * arm / arms;
    for (int ring = 0; ring < rings; ++ring) {
      layout.r(arm, ring) = radii(ring);
      layout.theta(arm, ring) = base + offsets(ring);
    }
  }
  layout.uniformity_score = layout_uniformity(layout);
  return layout;
}

double layout_uniformity(const DiscLayout& layout) {
  const auto pts = flatten_positions(layout);
  if (pts.size() < 2) return 0.0;
  const double cell =
      layout.spec.radius * std::sqrt(std::numbers::pi / static_cast<double>(pts.size()));
  PointGrid grid(pts, cell);
  Eigen::VectorXd dists(static_cast<Eigen::Index>(pts.size()));
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    double d2 = 0.0;
    grid.nearest(pts[static_cast<std::size_t>(i)], i, &d2);
    dists(i) = std::sqrt(d2);
  }
  const double mean = dists.mean();
  if (mean == 0.0) return 0.0;
  const double var = (dists.array() - mean).square().sum() / dists.size();
  return std::sqrt(var) / mean;
}

PixelMap map_pixels(const DiscLayout& layout, int width, int height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("map_pixels: frame dimensions must be >= 1");
  if (layout.spec.radius > std::min(width, height) / 2.0)
    throw std::invalid_argument("map_pixels: disc radius exceeds frame half-extent");

  PixelMap map;
  map.width = width;
  map.height = height;
  map.cx = (width - 1) / 2.0;
  map.cy = (height - 1) / 2.0;
  map.arms = layout.spec.arms;
  map.rings = layout.spec.rings;
  map.assignment.assign(static_cast<std::size_t>(width) * height, -1);

  const auto pts = flatten_positions(layout);  // index = arm * rings + ring
  const double cell =
      layout.spec.radius * std::sqrt(std::numbers::pi / static_cast<double>(pts.size()));
  PointGrid grid(pts, cell);

  const double rad2 = layout.spec.radius * layout.spec.radius;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Vector2d q(x - map.cx, y - map.cy);
      if (q.squaredNorm() > rad2) continue;
      map.assignment[static_cast<std::size_t>(y) * width + x] =
          grid.nearest(q, -1);
    }
  }
  return map;
}

std::string DiscLayout::to_json() const {
  nlohmann::json j;
  j["spec"] = {
      {"arms", spec.arms},
      {"rings", spec.rings},
      {"radius", spec.radius},
      {"geometry", spec.geometry == DiscGeometry::Spoke ? "spoke" : "spiral"},
      {"twist_gain", spec.twist_gain},
  };
  auto positions = nlohmann::json::array();
  for (int arm = 0; arm < spec.arms; ++arm)
    for (int ring = 0; ring < spec.rings; ++ring)
      positions.push_back({r(arm, ring), theta(arm, ring)});
  j["positions"] = std::move(positions);
  j["uniformity_score"] = uniformity_score;
  return j.dump(2);
}

}  // namespace rpn
