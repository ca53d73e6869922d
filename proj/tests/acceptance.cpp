// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check pins its own tolerance; no criterion depends on the
// outcome of another.

#include "rpn/recognizer.hpp"
#include "rpn/render.hpp"
#include "rpn/similarity.hpp"
#include "rpn/sweep.hpp"
#include "rpn/timing.hpp"
#include "rpn/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rpn;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %-34s %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ActivationField random_field(std::mt19937& rng, int max_dim = 256) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_real_distribution<double> amp(0.0, 10.0);
  ActivationField field;
  field.spec.arms = dim(rng);
  field.spec.rings = dim(rng);
  field.spec.radius = 100.0;
  field.a.resize(field.spec.arms, field.spec.rings);
  for (int i = 0; i < field.spec.arms; ++i)
    for (int j = 0; j < field.spec.rings; ++j) field.a(i, j) = amp(rng);
  return field;
}

// ---- criterion 1: conservation --------------------------------------------

void check_conservation() {
  std::mt19937 rng(101);
  const auto t0 = Clock::now();
  double worst_rel = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto field = random_field(rng);
    const auto tp = ripple(field);
    const double rel = std::abs(tp.samples.sum() - tp.inh0) / tp.inh0;
    worst_rel = std::max(worst_rel, rel);
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "worst relative error " << worst_rel << ", " << elapsed << " s";
  report(1, "activity conservation", worst_rel <= 1e-9 && elapsed < 5.0, detail.str());
}

// ---- criterion 2: arm-permutation invariance ------------------------------

void check_arm_permutation() {
  std::mt19937 rng(202);
  int exact = 0;
  for (int k = 0; k < 200; ++k) {
    const auto field = random_field(rng, 64);
    ActivationField permuted = field;
    std::vector<int> perm(static_cast<std::size_t>(field.spec.arms));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < field.spec.arms; ++i) permuted.a.row(perm[static_cast<std::size_t>(i)]) = field.a.row(i);
    const auto a = ripple(field);
    const auto b = ripple(permuted);
    if (a.samples == b.samples && a.inh_trace == b.inh_trace && a.inh0 == b.inh0) ++exact;
  }
  std::ostringstream detail;
  detail << exact << "/200 bit-identical";
  report(2, "arm-permutation invariance", exact == 200, detail.str());
}

// ---- criterion 3: rotation periodicity ------------------------------------

void check_rotation_periodicity() {
  const auto t0 = Clock::now();
  PipelineConfig cfg;
  cfg.disc.arms = 200;
  cfg.disc.rings = 200;
  cfg.disc.radius = 100.0;
  const auto layout = build_disc(cfg.disc);
  const auto map = map_pixels(layout, 200, 200);

  const auto corpus = generate_corpus(200);
  std::vector<const CorpusImage*> subset;
  for (std::size_t i = 0; i < corpus.size() && subset.size() < 16; i += 4)
    subset.push_back(&corpus[i]);

  const double period = 2.0 * std::numbers::pi / 200.0;
  const int per_period = 8;
  std::vector<double> curve(2 * per_period + 1, 0.0);
  int used = 0;
  for (const auto* img : subset) {
    PipelineResult base;
    try {
      base = run_pipeline(img->frame, cfg, layout, map);
    } catch (const std::exception&) {
      continue;
    }
    ++used;
    for (int k = 0; k <= 2 * per_period; ++k) {
      const double angle = period * k / per_period;
      const Frame rotated = rotate_frame(img->frame, angle);
      const auto res = run_pipeline(rotated, cfg, layout, map);
      curve[static_cast<std::size_t>(k)] +=
          cosine_similarity(base.normalized.samples, res.normalized.samples);
    }
  }
  for (auto& v : curve) v /= used;

  double mad = 0.0;
  for (int k = 0; k < per_period; ++k)
    mad += std::abs(curve[static_cast<std::size_t>(k)] -
                    curve[static_cast<std::size_t>(k + per_period)]);
  mad /= per_period;
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "period MAD " << mad << " over " << used << " images, " << elapsed << " s";
  report(3, "rotation periodicity", mad < 0.05 && elapsed < 600.0, detail.str());
}

// ---- criterion 4: shift sensitivity ---------------------------------------

void check_shift_sensitivity() {
  PipelineConfig cfg;
  cfg.disc.arms = 200;
  cfg.disc.rings = 200;
  cfg.disc.radius = 100.0;
  const auto layout = build_disc(cfg.disc);
  const auto map = map_pixels(layout, 200, 200);

  const auto corpus = generate_corpus(200);
  double cos_sum = 0.0, rho_sum = 0.0;
  int used = 0;
  for (const auto& img : corpus) {
    try {
      const auto base = run_pipeline(img.frame, cfg, layout, map);
      const Frame shifted = shift_frame(img.frame, 20, 0);  // 10% of width
      const auto moved = run_pipeline(shifted, cfg, layout, map);
      // Raw-pattern comparison: translation breaks the polar alignment the
      // normalizer relies on, so the published drop refers to the raw TPs.
      cos_sum += cosine_similarity(base.raw.samples, moved.raw.samples);
      rho_sum += spearman_rank(base.raw.samples, moved.raw.samples);
      ++used;
    } catch (const std::exception&) {
      continue;
    }
  }
  const double cos_drop = 1.0 - cos_sum / used;
  const double rho_drop = 1.0 - rho_sum / used;
  const bool ok = std::abs(cos_drop - 0.17) <= 0.10 && std::abs(rho_drop - 0.25) <= 0.10;
  std::ostringstream detail;
  detail << "cosine drop " << cos_drop << " (0.17 +/- 0.10), rank drop " << rho_drop
         << " (0.25 +/- 0.10), " << used << " images";
  report(4, "shift sensitivity", ok, detail.str());
}

// ---- criterion 5: synthetic scale invariance ------------------------------

void check_scale_invariance() {
  std::mt19937 rng(505);
  std::uniform_real_distribution<double> amp(0.5, 3.0);
  std::uniform_int_distribution<int> nbumps(1, 4);
  std::uniform_real_distribution<double> pos(0.15, 0.85);
  std::uniform_real_distribution<double> width(0.12, 0.25);

  const int rings = 200;
  const int arms = 16;
  int passed = 0;
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    // Smooth radial envelope on the inner half of the disc.
    Eigen::VectorXd env = Eigen::VectorXd::Zero(rings / 2);
    const int bumps = nbumps(rng);
    for (int b = 0; b < bumps; ++b) {
      const double a = amp(rng), p = pos(rng), w = width(rng);
      for (int n = 0; n < rings / 2; ++n) {
        const double x = (static_cast<double>(n) / (rings / 2) - p) / w;
        if (std::abs(x) < 1.0) env(n) += a * std::cos(x * std::numbers::pi / 2.0) *
                                         std::cos(x * std::numbers::pi / 2.0);
      }
    }
    if (env.maxCoeff() <= 0.0) env(rings / 4) = 1.0;

    ActivationField base, dilated;
    base.spec = {arms, rings, 100.0};
    dilated.spec = base.spec;
    base.a = Eigen::MatrixXd::Zero(arms, rings);
    dilated.a = Eigen::MatrixXd::Zero(arms, rings);
    for (int n = 0; n < rings / 2; ++n) {
      base.a.col(n).setConstant(env(n));
      // 2x radial dilation with area-consistent amplitude (4x).
      dilated.a.col(2 * n + 1).setConstant(4.0 * env(n));
    }
    const auto na = normalize(ripple(base), rings, 0.01);
    const auto nb = normalize(ripple(dilated), rings, 0.01);
    const double peak = na.samples.cwiseAbs().maxCoeff();
    const double dev = (na.samples - nb.samples).cwiseAbs().maxCoeff() / peak;
    worst = std::max(worst, dev);
    if (dev <= 0.05) ++passed;
  }
  std::ostringstream detail;
  detail << passed << "/100 within 5% of peak, worst " << worst * 100.0 << "%";
  report(5, "scale invariance (synthetic)", passed == 100, detail.str());
}

// ---- criterion 6: timing model --------------------------------------------

void check_timing() {
  const TimingParams p{240, 1, 10, 500};
  const auto worst = t_recognize_ns(p, true);
  const auto overlapped = t_recognize_ns(p, false);
  std::ostringstream detail;
  detail << "worst " << worst << " ns, overlapped " << overlapped << " ns";
  report(6, "timing model", worst == 5740 && overlapped == 5240, detail.str());
}

// ---- criterion 7: square / octagon recognition ----------------------------

void check_square_octagon() {
  const int size = 200;
  DiscSpec disc{size / 4, size / 4, size / 2.0};
  BankSpec bank;
  bank.orientations = default_radial_orientations();
  bank.densities = {disc.rings, disc.rings / 2, disc.rings / 4};
  bank.base = disc;

  const auto bundle_for = [&](const Frame& f) {
    return run_bank(dog_highpass(f, 1.0, 1.6), bank);
  };
  const Frame square = render_square_outline(size, 55.0, 6.0);
  const Frame octagon = render_octagon_outline(size, 60.0, 6.0);
  const Frame corner_cut = render_corner_cut_square(size, 60.0, 6.0, 35.0);

  TemplateStore store(bank);
  store.enroll("square", bundle_for(square));
  store.enroll("octagon", bundle_for(octagon));

  const auto s = store.match_stream(bundle_for(square));
  const auto c = store.match_stream(bundle_for(corner_cut));
  const bool ok = s.decided && s.decided->label == "square" && c.decided &&
                  c.decided->label == "octagon";
  std::ostringstream detail;
  detail << "square -> " << (s.decided ? s.decided->label : "?") << ", corner-cut -> "
         << (c.decided ? c.decided->label : "?");
  report(7, "corner-cut square -> octagon", ok, detail.str());
}

// ---- criterion 8: metric oracles ------------------------------------------

double cosine_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  long double dot = 0, na = 0, nb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a(i)) * b(i);
    na += static_cast<long double>(a(i)) * a(i);
    nb += static_cast<long double>(b(i)) * b(i);
  }
  return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

Eigen::VectorXd rank_oracle(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index p, Eigen::Index q) { return v(p) < v(q); });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v(idx[static_cast<std::size_t>(j + 1)]) == v(idx[static_cast<std::size_t>(i)])) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks(idx[static_cast<std::size_t>(k)]) = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ra = rank_oracle(a), rb = rank_oracle(b);
  const Eigen::VectorXd ca = ra.array() - ra.mean();
  const Eigen::VectorXd cb = rb.array() - rb.mean();
  return ca.dot(cb) / (ca.norm() * cb.norm());
}

void check_metric_oracles() {
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> len(2, 400);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> tie(0, 3);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = len(rng);
    Eigen::VectorXd a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a(i) = val(rng);
      b(i) = val(rng);
    }
    if (tie(rng) == 0 && n > 3) {
      a(1) = a(0);
      b(2) = b(1);
    }
    worst = std::max(worst, std::abs(cosine_similarity(a, b) - cosine_oracle(a, b)));
    try {
      worst = std::max(worst, std::abs(spearman_rank(a, b) - spearman_oracle(a, b)));
    } catch (const std::exception&) {
      // constant input after tie injection; skip
    }
  }
  std::ostringstream detail;
  detail << "worst deviation " << worst;
  report(8, "metric oracles", worst <= 1e-12, detail.str());
}

// ---- criterion 9: exhaustive-match equivalence ----------------------------

void check_exhaustive_equivalence() {
  BankSpec bank;
  bank.orientations = default_radial_orientations();
  bank.densities = {24, 12};
  bank.base = {24, 24, 32.0};

  const std::string labels = "ABCDEFGHJKLMNPQRSTUV";  // 20 templates
  TemplateStore store(bank);
  std::vector<TPBundle> bundles;
  std::vector<std::string> names;
  for (char c : labels) {
    auto bundle = run_bank(render_text(std::string(1, c), 65, 40.0), bank);
    names.emplace_back(1, c);
    store.enroll(names.back(), bundle);
    bundles.push_back(std::move(bundle));
  }

  int agree = 0, total = 0;
  for (char c : labels) {
    for (int k = 0; k < 5; ++k) {
      const double angle = (k - 2) * 0.06;
      const Frame probe_frame = rotate_frame(render_text(std::string(1, c), 65, 40.0), angle);
      TPBundle probe;
      try {
        probe = run_bank(probe_frame, bank);
      } catch (const std::exception&) {
        continue;
      }
      ++total;
      const auto state = store.match_stream(probe);  // pruning disabled
      // Flatten probe and templates in the same stream order so segment
      // pairing matches what the streaming matcher consumes.
      const auto order = probe.stream_order();
      const Eigen::VectorXd flat = flatten_stream(probe, order);
      std::size_t best = 0;
      double best_cos = -2.0;
      for (std::size_t i = 0; i < bundles.size(); ++i) {
        const Eigen::VectorXd ref = flatten_stream(bundles[i], order);
        const double cs = flat.dot(ref) / (flat.norm() * ref.norm());
        if (cs > best_cos) {
          best_cos = cs;
          best = i;
        }
      }
      if (state.decided && state.decided->label == names[best]) ++agree;
    }
  }
  std::ostringstream detail;
  detail << agree << "/" << total << " decisions match the global argmax";
  report(9, "exhaustive-match equivalence", total == 100 && agree == total, detail.str());
}

// ---- criterion 10: bundle shape and ordering ------------------------------

void check_bundle_shape() {
  BankSpec bank;
  bank.orientations = default_radial_orientations();
  bank.densities = {40, 20, 10};
  bank.base = {40, 40, 50.0};

  bool ok = true;
  int probes = 0;
  for (const char* text : {"A", "K", "3", "8", "Z"}) {
    const auto bundle = run_bank(render_text(text, 101, 70.0), bank);
    ++probes;
    if (bundle.entries.size() != 9 || bundle.n_orientations != 3 || bundle.n_densities != 3)
      ok = false;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 1; j < 3; ++j)
        if (bundle.completion_tick[static_cast<std::size_t>(i) * 3 + j] >
            bundle.completion_tick[static_cast<std::size_t>(i) * 3 + j - 1])
          ok = false;
  }
  std::ostringstream detail;
  detail << probes << " probes, 3x3 bundles, coarse completes first";
  report(10, "bundle shape and ordering", ok, detail.str());
}

}  // namespace

int main() {
  check_conservation();
  check_arm_permutation();
  check_rotation_periodicity();
  check_shift_sensitivity();
  check_scale_invariance();
  check_timing();
  check_square_octagon();
  check_metric_oracles();
  check_exhaustive_equivalence();
  check_bundle_shape();
  std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
              10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
