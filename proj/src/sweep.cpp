#include "rpn/sweep.hpp"

#include "rpn/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rpn {

PipelineResult run_pipeline(const Frame& frame, const PipelineConfig& cfg,
                            const DiscLayout& layout, const PixelMap& map) {
  const Frame filtered = dog_highpass(frame, cfg.dog_sigma1, cfg.dog_sigma2);
  const ActivationField field = project(filtered, map, layout.spec, cfg.threshold);
  PipelineResult result;
  result.raw = ripple(field);
  const int n_canon = cfg.n_canon > 0 ? cfg.n_canon : cfg.disc.rings;
  result.normalized = normalize(result.raw, n_canon, cfg.alpha);
  return result;
}

void SweepConfig::validate() const {
  pipeline.disc.validate();
  if (steps.empty()) throw std::invalid_argument("SweepConfig: steps must be non-empty");
  for (double s : steps) {
    if (transform == SweepTransform::Scale && !(s > 0.0))
      throw std::invalid_argument("SweepConfig: scale factors must be > 0");
    if (transform == SweepTransform::Shift && (s < 0.0 || s > 0.5))
      throw std::invalid_argument("SweepConfig: shifts must be in [0, 0.5]");
  }
}

int max_threads() {
  if (const char* env = std::getenv("RPN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const char* transform_name(SweepTransform t) {
  switch (t) {
    case SweepTransform::Rotation: return "rotation";
    case SweepTransform::Scale: return "scale";
    case SweepTransform::Shift: return "shift";
  }
  return "?";
}

namespace {

Frame apply_transform(const Frame& f, SweepTransform t, double value, Interpolation interp) {
  switch (t) {
    case SweepTransform::Rotation:
      return rotate_frame(f, value, interp);
    case SweepTransform::Scale:
      return scale_frame(f, value, interp);
    case SweepTransform::Shift: {
      const int dx = static_cast<int>(std::lround(value * frame_width(f)));
      return shift_frame(f, dx, 0);
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd metric_vector(const PipelineResult& r, MetricSource src) {
  return src == MetricSource::Raw ? r.raw.samples : r.normalized.samples;
}

}  // namespace

std::vector<SweepAggregate> aggregate_rows(const std::vector<SweepRow>& rows) {
  std::vector<double> values;
  for (const auto& r : rows)
    if (std::find(values.begin(), values.end(), r.value) == values.end()) values.push_back(r.value);

  std::vector<SweepAggregate> aggs;
  for (double v : values) {
    SweepAggregate a;
    a.value = v;
    long n = 0;
    for (const auto& r : rows) {
      if (r.value != v) continue;
      a.cosine_mean += r.cosine;
      a.spearman_mean += r.spearman;
      ++n;
    }
    if (n == 0) continue;
    a.cosine_mean /= static_cast<double>(n);
    a.spearman_mean /= static_cast<double>(n);
    for (const auto& r : rows) {
      if (r.value != v) continue;
      a.cosine_var += (r.cosine - a.cosine_mean) * (r.cosine - a.cosine_mean);
      a.spearman_var += (r.spearman - a.spearman_mean) * (r.spearman - a.spearman_mean);
    }
    a.cosine_var /= static_cast<double>(n);
    a.spearman_var /= static_cast<double>(n);
    aggs.push_back(a);
  }
  return aggs;
}

SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(cfg.corpus_dir))
    if (entry.path().extension() == ".pgm") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("sweep: no .pgm images in " + cfg.corpus_dir);

  // Processing order is shuffled by seed; results are assembled by file
  // index so output stays deterministic.
  std::vector<std::size_t> order(files.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937 rng(cfg.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const DiscLayout layout = build_disc(cfg.pipeline.disc);
  // All corpus frames share one geometry; build the pixel map from the first.
  const Frame first = read_pgm(files.front().string());
  const PixelMap map = map_pixels(layout, frame_width(first), frame_height(first));

  std::vector<std::vector<SweepRow>> per_image(files.size());
  std::atomic<long> failures{0};
  std::atomic<std::size_t> cursor{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t slot = cursor.fetch_add(1);
      if (slot >= order.size()) return;
      const std::size_t i = order[slot];
      const std::string id = files[i].stem().string();
      try {
        const Frame frame = read_pgm(files[i].string());
        if (frame_width(frame) != map.width || frame_height(frame) != map.height)
          throw std::runtime_error("frame size differs from corpus geometry");
        const PipelineResult base = run_pipeline(frame, cfg.pipeline, layout, map);
        const Eigen::VectorXd ref = metric_vector(base, cfg.metrics_on);
        for (double step : cfg.steps) {
          try {
            const Frame moved = apply_transform(frame, cfg.transform, step, cfg.interp);
            const PipelineResult res = run_pipeline(moved, cfg.pipeline, layout, map);
            const Eigen::VectorXd cur = metric_vector(res, cfg.metrics_on);
            per_image[i].push_back(
                {id, step, cosine_similarity(ref, cur), spearman_rank(ref, cur)});
          } catch (const std::exception&) {
            ++failures;
          }
        }
      } catch (const std::exception&) {
        ++failures;
      }
    }
  };

  const int n_threads = std::min<int>(max_threads(), static_cast<int>(files.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult result;
  for (auto& rows : per_image)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  result.aggregates = aggregate_rows(result.rows);
  result.failures = failures.load();
  return result;
}

std::string SweepResult::to_csv(SweepTransform transform) const {
  std::ostringstream out;
  out.precision(17);
  out << "image_id,transform,value,cosine,spearman\n";
  for (const auto& r : rows)
    out << r.image_id << "," << transform_name(transform) << "," << r.value << "," << r.cosine
        << "," << r.spearman << "\n";
  return out.str();
}

std::string SweepResult::to_svg(const std::string& title) const {
  const int w = 640, h = 400, margin = 50;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  if (!aggregates.empty()) {
    double lo = aggregates.front().value, hi = lo;
    for (const auto& a : aggregates) {
      lo = std::min(lo, a.value);
      hi = std::max(hi, a.value);
    }
    if (hi == lo) hi = lo + 1.0;
    auto px = [&](double v) { return margin + (v - lo) / (hi - lo) * (w - 2 * margin); };
    auto py = [&](double m) { return h - margin - (m + 1.0) / 2.0 * (h - 2 * margin); };
    auto polyline = [&](const char* color, auto metric) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (const auto& a : aggregates) out << px(a.value) << "," << py(metric(a)) << " ";
      out << "\"/>\n";
    };
    polyline("steelblue", [](const SweepAggregate& a) { return a.cosine_mean; });
    polyline("firebrick", [](const SweepAggregate& a) { return a.spearman_mean; });
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << w - margin << "\" y=\"" << h - margin + 30
        << "\" text-anchor=\"end\" fill=\"steelblue\">cosine</text>\n";
    out << "<text x=\"" << w - margin << "\" y=\"" << h - margin + 15
        << "\" text-anchor=\"end\" fill=\"firebrick\">spearman</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rpn
