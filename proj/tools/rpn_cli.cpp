// rpn: command-line harness for the ripple-pond pipeline.
//
// Subcommands: disc build, run, sweep, bank run, enroll, match, timing,
// demo connect-dots, corpus generate. See README.md for examples.

#include "rpn/bank.hpp"
#include "rpn/recognizer.hpp"
#include "rpn/render.hpp"
#include "rpn/similarity.hpp"
#include "rpn/sweep.hpp"
#include "rpn/timing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

struct DiscOptions {
  int arms = 200;
  int rings = 200;
  double radius = 0.0;  // 0 = min(frame)/2
  std::string geometry = "spiral";
  double twist_gain = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--arms", arms, "arms (Phi)");
    app->add_option("--rings", rings, "rings per arm (N)");
    app->add_option("--radius", radius, "disc radius in pixels (0 = half frame)");
    app->add_option("--geometry", geometry, "spoke|spiral")
        ->check(CLI::IsMember({"spoke", "spiral"}));
    app->add_option("--twist-gain", twist_gain, "spiral twist adaptation gain");
  }

  rpn::DiscSpec spec(double default_radius) const {
    rpn::DiscSpec s;
    s.arms = arms;
    s.rings = rings;
    s.radius = radius > 0.0 ? radius : default_radius;
    s.geometry = geometry == "spoke" ? rpn::DiscGeometry::Spoke : rpn::DiscGeometry::Spiral;
    s.twist_gain = s.geometry == rpn::DiscGeometry::Spoke ? 0.0 : twist_gain;
    return s;
  }
};

struct PipelineOptions {
  DiscOptions disc;
  double dog_sigma1 = 1.0;
  double dog_sigma2 = 1.6;
  double threshold = 0.0;
  double alpha = rpn::kDefaultLowpassAlpha;
  std::string config_path;

  void attach(CLI::App* app) {
    disc.attach(app);
    app->add_option("--dog-sigma1", dog_sigma1, "DoG inner sigma");
    app->add_option("--dog-sigma2", dog_sigma2, "DoG outer sigma");
    app->add_option("--threshold", threshold, "projection threshold");
    app->add_option("--alpha", alpha, "low-pass smoothing constant");
    app->add_option("--config", config_path, "JSON config file (flags override)");
  }

  // Config file supplies defaults; explicitly passed flags win because the
  // config is read first and flags were already parsed into the fields.
  rpn::PipelineConfig build(const CLI::App* app, double default_radius) const {
    PipelineOptions merged = *this;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config " + config_path);
      nlohmann::json j;
      in >> j;
      auto set_if_default = [&](const char* flag, auto& field, const char* key) {
        if (j.contains(key) && app->count(flag) == 0) field = j.at(key);
      };
      set_if_default("--arms", merged.disc.arms, "arms");
      set_if_default("--rings", merged.disc.rings, "rings");
      set_if_default("--radius", merged.disc.radius, "radius");
      set_if_default("--geometry", merged.disc.geometry, "geometry");
      set_if_default("--twist-gain", merged.disc.twist_gain, "twist_gain");
      set_if_default("--dog-sigma1", merged.dog_sigma1, "dog_sigma1");
      set_if_default("--dog-sigma2", merged.dog_sigma2, "dog_sigma2");
      set_if_default("--threshold", merged.threshold, "threshold");
      set_if_default("--alpha", merged.alpha, "alpha");
    }
    rpn::PipelineConfig cfg;
    cfg.disc = merged.disc.spec(default_radius);
    cfg.dog_sigma1 = merged.dog_sigma1;
    cfg.dog_sigma2 = merged.dog_sigma2;
    cfg.threshold = merged.threshold;
    cfg.alpha = merged.alpha;
    return cfg;
  }
};

rpn::BankSpec make_bank(const rpn::DiscSpec& base, double threshold, double alpha) {
  rpn::BankSpec bank;
  bank.orientations = rpn::default_radial_orientations();
  bank.densities = {base.rings, std::max(1, base.rings / 2), std::max(1, base.rings / 4)};
  bank.base = base;
  bank.threshold = threshold;
  bank.alpha = alpha;
  return bank;
}

rpn::TPBundle bundle_for(const rpn::Frame& frame, const rpn::PipelineConfig& cfg,
                         const rpn::BankSpec& bank) {
  return rpn::run_bank(rpn::dog_highpass(frame, cfg.dog_sigma1, cfg.dog_sigma2), bank);
}

int cmd_demo_connect_dots(const std::string& out_dir, const PipelineOptions& opts,
                          const CLI::App* app) {
  const int size = 200;
  rpn::PipelineConfig cfg = opts.build(app, size / 2.0);
  const rpn::BankSpec bank = make_bank(cfg.disc, cfg.threshold, cfg.alpha);

  const rpn::Frame square = rpn::render_square_outline(size, 55.0, 6.0);
  const rpn::Frame octagon = rpn::render_octagon_outline(size, 60.0, 6.0);
  const rpn::Frame dashed = rpn::render_dashed_square(size, 55.0, 6.0, 4);
  const rpn::Frame corner_cut = rpn::render_corner_cut_square(size, 60.0, 6.0, 35.0);

  fs::create_directories(out_dir);
  rpn::write_pgm(square, (fs::path(out_dir) / "square.pgm").string());
  rpn::write_pgm(octagon, (fs::path(out_dir) / "octagon.pgm").string());
  rpn::write_pgm(dashed, (fs::path(out_dir) / "dashed_square.pgm").string());
  rpn::write_pgm(corner_cut, (fs::path(out_dir) / "corner_cut_square.pgm").string());

  rpn::TemplateStore store(bank);
  store.enroll("square", bundle_for(square, cfg, bank));
  store.enroll("octagon", bundle_for(octagon, cfg, bank));

  std::ostringstream report;
  report << "connect-the-dots demo\n";
  report << "enrolled templates: square, octagon\n\n";
  bool ok = true;
  const std::pair<const char*, const rpn::Frame*> probes[] = {
      {"intact square", &square},
      {"dashed square", &dashed},
      {"corner-cut square", &corner_cut}};
  const char* expected[] = {"square", "square", "octagon"};
  for (int i = 0; i < 3; ++i) {
    const auto state = store.match_stream(bundle_for(*probes[i].second, cfg, bank));
    report << probes[i].first << " -> " << state.decided->label
           << " (confidence " << state.decided->confidence
           << ", decided after " << state.decided->decided_at_tick << " samples)\n";
    if (state.decided->label != expected[i]) ok = false;
  }
  report << "\nexpected: square, square, octagon -> " << (ok ? "MATCH" : "MISMATCH") << "\n";
  write_file(fs::path(out_dir) / "report.txt", report.str());
  std::cout << report.str();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ripple-pond image-to-temporal-pattern simulator and benchmark harness"};
  app.require_subcommand(1);

  // disc build
  auto* disc_cmd = app.add_subcommand("disc", "disc geometry tools")->require_subcommand(1);
  auto* disc_build = disc_cmd->add_subcommand("build", "build a disc layout and export JSON");
  DiscOptions disc_opts;
  disc_opts.attach(disc_build);
  std::string disc_out = "layout.json";
  disc_build->add_option("--out", disc_out, "output JSON path");

  // run
  auto* run_cmd = app.add_subcommand("run", "run the single-disc pipeline on one image");
  PipelineOptions run_opts;
  run_opts.attach(run_cmd);
  std::string run_image, run_out = "out";
  run_cmd->add_option("--image", run_image, "input PGM (P5)")->required();
  run_cmd->add_option("--out-dir", run_out, "output directory");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "similarity sweep over a corpus");
  PipelineOptions sweep_opts;
  sweep_opts.attach(sweep_cmd);
  std::string sweep_corpus, sweep_transform = "rotation", sweep_metrics = "normalized";
  std::string sweep_interp = "bilinear", sweep_out = "out";
  std::vector<double> sweep_steps;
  unsigned sweep_seed = 0;
  sweep_cmd->add_option("--corpus", sweep_corpus, "corpus directory of PGM images")->required();
  sweep_cmd->add_option("--transform", sweep_transform, "rotation|scale|shift")
      ->check(CLI::IsMember({"rotation", "scale", "shift"}));
  sweep_cmd->add_option("--steps", sweep_steps, "transform values")->required()->expected(-1);
  sweep_cmd->add_option("--metrics", sweep_metrics, "raw|normalized")
      ->check(CLI::IsMember({"raw", "normalized"}));
  sweep_cmd->add_option("--interp", sweep_interp, "nearest|bilinear")
      ->check(CLI::IsMember({"nearest", "bilinear"}));
  sweep_cmd->add_option("--seed", sweep_seed, "corpus shuffling seed");
  sweep_cmd->add_option("--out-dir", sweep_out, "output directory");

  // bank run
  auto* bank_cmd = app.add_subcommand("bank", "parallel disc bank")->require_subcommand(1);
  auto* bank_run = bank_cmd->add_subcommand("run", "run the orientation x density bank");
  PipelineOptions bank_opts;
  bank_opts.attach(bank_run);
  std::string bank_image, bank_out = "out";
  bank_run->add_option("--image", bank_image, "input PGM (P5)")->required();
  bank_run->add_option("--out-dir", bank_out, "output directory");

  // enroll
  auto* enroll_cmd = app.add_subcommand("enroll", "enroll a labeled template into a store");
  PipelineOptions enroll_opts;
  enroll_opts.attach(enroll_cmd);
  std::string enroll_store, enroll_label, enroll_image;
  enroll_cmd->add_option("--store", enroll_store, "store JSON file")->required();
  enroll_cmd->add_option("--label", enroll_label, "template label")->required();
  enroll_cmd->add_option("--image", enroll_image, "input PGM (P5)")->required();

  // match
  auto* match_cmd = app.add_subcommand("match", "match an image against a store");
  std::string match_store, match_image;
  double match_prune = std::numeric_limits<double>::infinity();
  PipelineOptions match_opts;
  match_opts.attach(match_cmd);
  match_cmd->add_option("--store", match_store, "store JSON file")->required();
  match_cmd->add_option("--image", match_image, "input PGM (P5)")->required();
  match_cmd->add_option("--prune-threshold", match_prune, "prefix-distance prune threshold");

  // timing
  auto* timing_cmd = app.add_subcommand("timing", "analytic recognition-latency bounds");
  rpn::TimingParams timing_params;
  timing_cmd->add_option("--t-project", timing_params.t_project_ns, "projection time (ns)");
  timing_cmd->add_option("--t-ripple", timing_params.t_ripple_ns, "per-ring ripple time (ns)");
  timing_cmd->add_option("--t-pcn", timing_params.t_pcn_ns, "per-sample recognition time (ns)");
  timing_cmd->add_option("-n,--tp-length", timing_params.tp_length, "TP length (N)");

  // demo connect-dots
  auto* demo_cmd = app.add_subcommand("demo", "demos")->require_subcommand(1);
  auto* demo_dots = demo_cmd->add_subcommand("connect-dots", "square vs octagon recognition demo");
  PipelineOptions demo_opts;
  demo_opts.attach(demo_dots);
  std::string demo_out = "out/connect-dots";
  demo_dots->add_option("--out-dir", demo_out, "output directory");

  // corpus generate
  auto* corpus_cmd = app.add_subcommand("corpus", "test corpus tools")->require_subcommand(1);
  auto* corpus_gen = corpus_cmd->add_subcommand("generate", "render the synthetic test corpus");
  std::string corpus_out = "corpus";
  int corpus_size = 200;
  corpus_gen->add_option("--out-dir", corpus_out, "output directory");
  corpus_gen->add_option("--size", corpus_size, "image side length in pixels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (disc_build->parsed()) {
      const auto layout = rpn::build_disc(disc_opts.spec(100.0));
      write_file(disc_out, layout.to_json());
      std::cout << "wrote " << disc_out << " (uniformity " << layout.uniformity_score << ")\n";
    } else if (run_cmd->parsed()) {
      const rpn::Frame frame = rpn::read_pgm(run_image);
      const double r = std::min(rpn::frame_width(frame), rpn::frame_height(frame)) / 2.0;
      const rpn::PipelineConfig cfg = run_opts.build(run_cmd, r);
      const auto layout = rpn::build_disc(cfg.disc);
      const auto map = rpn::map_pixels(layout, rpn::frame_width(frame), rpn::frame_height(frame));
      const auto result = rpn::run_pipeline(frame, cfg, layout, map);
      const fs::path dir(run_out);
      write_file(dir / "raw_tp.json", result.raw.to_json());
      write_file(dir / "raw_tp.csv", result.raw.to_csv());
      write_file(dir / "normalized_tp.json", result.normalized.to_json());
      write_file(dir / "normalized_tp.csv", result.normalized.to_csv());
      std::cout << "inh0=" << result.raw.inh0 << " t_tp=" << result.raw.t_tp
                << " L=" << result.raw.scale_lag << " M=" << result.normalized.warp << "\n";
    } else if (sweep_cmd->parsed()) {
      rpn::SweepConfig cfg;
      cfg.corpus_dir = sweep_corpus;
      cfg.pipeline = sweep_opts.build(sweep_cmd, 0.0);
      if (sweep_opts.disc.radius <= 0.0) {
        // derive the radius from the first corpus frame
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(sweep_corpus))
          if (e.path().extension() == ".pgm") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw std::runtime_error("no .pgm images in " + sweep_corpus);
        const rpn::Frame f = rpn::read_pgm(files.front().string());
        cfg.pipeline.disc.radius =
            std::min(rpn::frame_width(f), rpn::frame_height(f)) / 2.0;
      }
      cfg.transform = sweep_transform == "rotation" ? rpn::SweepTransform::Rotation
                      : sweep_transform == "scale"  ? rpn::SweepTransform::Scale
                                                    : rpn::SweepTransform::Shift;
      cfg.steps = sweep_steps;
      cfg.metrics_on = sweep_metrics == "raw" ? rpn::MetricSource::Raw
                                              : rpn::MetricSource::Normalized;
      cfg.interp = sweep_interp == "nearest" ? rpn::Interpolation::Nearest
                                             : rpn::Interpolation::Bilinear;
      cfg.seed = sweep_seed;
      const auto result = rpn::sweep(cfg);
      const fs::path dir(sweep_out);
      write_file(dir / "sweep.csv", result.to_csv(cfg.transform));
      write_file(dir / "sweep.svg",
                 result.to_svg(std::string("mean similarity vs ") + sweep_transform));
      nlohmann::json aggs = nlohmann::json::array();
      for (const auto& a : result.aggregates)
        aggs.push_back({{"value", a.value},
                        {"cosine_mean", a.cosine_mean},
                        {"cosine_var", a.cosine_var},
                        {"spearman_mean", a.spearman_mean},
                        {"spearman_var", a.spearman_var}});
      write_file(dir / "aggregates.json",
                 nlohmann::json{{"failures", result.failures}, {"aggregates", aggs}}.dump(2));
      std::cout << "sweep complete: " << result.rows.size() << " rows, " << result.failures
                << " failures -> " << sweep_out << "\n";
    } else if (bank_run->parsed()) {
      const rpn::Frame frame = rpn::read_pgm(bank_image);
      const double r = std::min(rpn::frame_width(frame), rpn::frame_height(frame)) / 2.0;
      const rpn::PipelineConfig cfg = bank_opts.build(bank_run, r);
      const rpn::BankSpec bank = make_bank(cfg.disc, cfg.threshold, cfg.alpha);
      const auto bundle = bundle_for(frame, cfg, bank);
      write_file(fs::path(bank_out) / "bundle.json", bundle.to_json(bank));
      std::cout << "wrote " << (fs::path(bank_out) / "bundle.json").string() << " ("
                << bundle.entries.size() << " TPs)\n";
    } else if (enroll_cmd->parsed()) {
      const rpn::Frame frame = rpn::read_pgm(enroll_image);
      const double r = std::min(rpn::frame_width(frame), rpn::frame_height(frame)) / 2.0;
      const rpn::PipelineConfig cfg = enroll_opts.build(enroll_cmd, r);
      const rpn::BankSpec bank = make_bank(cfg.disc, cfg.threshold, cfg.alpha);
      rpn::TemplateStore store = fs::exists(enroll_store)
                                     ? rpn::TemplateStore::load(enroll_store)
                                     : rpn::TemplateStore(bank);
      store.enroll(enroll_label, bundle_for(frame, cfg, store.bank()));
      store.save(enroll_store);
      std::cout << "store now holds " << store.size() << " templates\n";
    } else if (match_cmd->parsed()) {
      const rpn::TemplateStore store = rpn::TemplateStore::load(match_store);
      const rpn::Frame frame = rpn::read_pgm(match_image);
      const double r = std::min(rpn::frame_width(frame), rpn::frame_height(frame)) / 2.0;
      rpn::PipelineConfig cfg = match_opts.build(match_cmd, r);
      const auto state = store.match_stream(bundle_for(frame, cfg, store.bank()), match_prune);
      std::cout << "decision: " << state.decided->label << " (confidence "
                << state.decided->confidence << ", decided after "
                << state.decided->decided_at_tick << " samples; " << state.alive.size()
                << " candidates alive)\n";
    } else if (timing_cmd->parsed()) {
      std::cout << "bound        t_recognize_ns\n";
      std::cout << "worst-case   " << rpn::t_recognize_ns(timing_params, true) << "\n";
      std::cout << "overlapped   " << rpn::t_recognize_ns(timing_params, false) << "\n";
    } else if (demo_dots->parsed()) {
      return cmd_demo_connect_dots(demo_out, demo_opts, demo_dots);
    } else if (corpus_gen->parsed()) {
      fs::create_directories(corpus_out);
      const auto corpus = rpn::generate_corpus(corpus_size);
      for (const auto& img : corpus)
        rpn::write_pgm(img.frame, (fs::path(corpus_out) / (img.id + ".pgm")).string());
      std::cout << "wrote " << corpus.size() << " images to " << corpus_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
