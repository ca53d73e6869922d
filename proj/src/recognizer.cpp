#include "rpn/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rpn {
namespace {

constexpr const char* kSchemaTag = "rpn-store-v1";

nlohmann::json gabor_to_json(const GaborSpec& g) {
  return {{"orientation", g.orientation}, {"wavelength", g.wavelength},
          {"sigma", g.sigma},             {"aspect", g.aspect},
          {"phase", g.phase},             {"mode", g.mode == GaborMode::Radial ? "radial" : "cartesian"}};
}

GaborSpec gabor_from_json(const nlohmann::json& j) {
  GaborSpec g;
  g.orientation = j.at("orientation");
  g.wavelength = j.at("wavelength");
  g.sigma = j.at("sigma");
  g.aspect = j.at("aspect");
  g.phase = j.at("phase");
  g.mode = j.at("mode") == "radial" ? GaborMode::Radial : GaborMode::Cartesian;
  return g;
}

nlohmann::json bank_to_json(const BankSpec& b) {
  nlohmann::json j;
  j["orientations"] = nlohmann::json::array();
  for (const auto& o : b.orientations) j["orientations"].push_back(gabor_to_json(o));
  j["densities"] = b.densities;
  j["base"] = {{"arms", b.base.arms},
               {"rings", b.base.rings},
               {"radius", b.base.radius},
               {"geometry", b.base.geometry == DiscGeometry::Spoke ? "spoke" : "spiral"},
               {"twist_gain", b.base.twist_gain}};
  j["threshold"] = b.threshold;
  j["alpha"] = b.alpha;
  return j;
}

BankSpec bank_from_json(const nlohmann::json& j) {
  BankSpec b;
  for (const auto& o : j.at("orientations")) b.orientations.push_back(gabor_from_json(o));
  b.densities = j.at("densities").get<std::vector<int>>();
  const auto& base = j.at("base");
  b.base.arms = base.at("arms");
  b.base.rings = base.at("rings");
  b.base.radius = base.at("radius");
  b.base.geometry = base.at("geometry") == "spoke" ? DiscGeometry::Spoke : DiscGeometry::Spiral;
  b.base.twist_gain = base.at("twist_gain");
  b.threshold = j.at("threshold");
  b.alpha = j.at("alpha");
  return b;
}

nlohmann::json bundle_to_json(const TPBundle& b) {
  nlohmann::json j;
  j["n_orientations"] = b.n_orientations;
  j["n_densities"] = b.n_densities;
  j["completion_tick"] = b.completion_tick;
  j["entries"] = nlohmann::json::array();
  for (const auto& tp : b.entries) {
    j["entries"].push_back({{"samples", std::vector<double>(tp.samples.begin(), tp.samples.end())},
                            {"M", tp.warp},
                            {"amp_divisor", tp.amp_divisor},
                            {"inh0", tp.inh0},
                            {"L", tp.scale_lag},
                            {"t_tp", tp.t_tp}});
  }
  return j;
}

TPBundle bundle_from_json(const nlohmann::json& j) {
  TPBundle b;
  b.n_orientations = j.at("n_orientations");
  b.n_densities = j.at("n_densities");
  b.completion_tick = j.at("completion_tick").get<std::vector<int>>();
  for (const auto& e : j.at("entries")) {
    NormalizedTP tp;
    const auto samples = e.at("samples").get<std::vector<double>>();
    tp.samples = Eigen::Map<const Eigen::VectorXd>(samples.data(),
                                                   static_cast<Eigen::Index>(samples.size()));
    tp.warp = e.at("M");
    tp.amp_divisor = e.at("amp_divisor");
    tp.inh0 = e.at("inh0");
    tp.scale_lag = e.at("L");
    tp.t_tp = e.at("t_tp");
    b.entries.push_back(std::move(tp));
  }
  return b;
}

}  // namespace

Eigen::VectorXd flatten_stream(const TPBundle& bundle, const std::vector<std::size_t>& order) {
  Eigen::Index total = 0;
  for (std::size_t idx : order) total += bundle.entries[idx].samples.size();
  Eigen::VectorXd flat(total);
  Eigen::Index at = 0;
  for (std::size_t idx : order) {
    const auto& s = bundle.entries[idx].samples;
    flat.segment(at, s.size()) = s;
    at += s.size();
  }
  return flat;
}

void TemplateStore::enroll(const std::string& label, TPBundle bundle) {
  for (const auto& t : templates_)
    if (t.label == label) throw std::invalid_argument("enroll: duplicate label '" + label + "'");
  if (bundle.n_orientations != static_cast<int>(bank_.orientations.size()) ||
      bundle.n_densities != static_cast<int>(bank_.densities.size()))
    throw std::invalid_argument("enroll: bundle shape does not match store bank");
  templates_.push_back({label, std::move(bundle)});
}

MatchState TemplateStore::match_stream(const TPBundle& probe, double prune_threshold) const {
  if (templates_.empty()) throw std::invalid_argument("match_stream: empty store");
  if (!(prune_threshold > 0.0)) throw std::invalid_argument("match_stream: threshold must be > 0");

  const auto order = probe.stream_order();
  const Eigen::VectorXd input = flatten_stream(probe, order);
  std::vector<Eigen::VectorXd> refs;
  refs.reserve(templates_.size());
  for (const auto& t : templates_) refs.push_back(flatten_stream(t.bundle, order));

  struct Candidate {
    std::size_t index;
    double ssd = 0.0;
  };
  std::vector<Candidate> alive;
  for (std::size_t i = 0; i < templates_.size(); ++i) alive.push_back({i, 0.0});

  // Even an instant winner consumes the first coarse TP before deciding.
  const Eigen::Index min_consume =
      order.empty() ? 0 : std::min<Eigen::Index>(input.size(),
                                                 probe.entries[order.front()].samples.size());
  Eigen::Index consumed = 0;
  while (consumed < input.size() && (alive.size() > 1 || consumed < min_consume)) {
    const double x = input(consumed);
    for (auto& c : alive) {
      const double d = x - refs[c.index](consumed);
      c.ssd += d * d;
    }
    ++consumed;
    // Prune candidates whose normalized prefix distance exceeds the
    // threshold, but never empty the set.
    std::vector<Candidate> next;
    double best = std::numeric_limits<double>::max();
    for (const auto& c : alive) best = std::min(best, c.ssd);
    for (const auto& c : alive) {
      const double dist = std::sqrt(c.ssd / static_cast<double>(consumed));
      if (dist <= prune_threshold || c.ssd == best) next.push_back(c);
    }
    alive = std::move(next);
  }

  MatchState state;
  const auto prefix = input.head(consumed);
  const double prefix_norm = prefix.norm();
  double best_cos = -std::numeric_limits<double>::infinity();
  std::size_t best_index = alive.front().index;
  for (const auto& c : alive) {
    state.alive.push_back(templates_[c.index].label);
    state.prefix_distance.push_back(consumed > 0 ? std::sqrt(c.ssd / static_cast<double>(consumed))
                                                 : 0.0);
    const auto ref = refs[c.index].head(consumed);
    const double denom = prefix_norm * ref.norm();
    const double cos = denom > 0.0 ? prefix.dot(ref) / denom : -1.0;
    if (cos > best_cos) {  // ties keep enrollment order
      best_cos = cos;
      best_index = c.index;
    }
  }
  state.decided = MatchState::Decision{templates_[best_index].label, best_cos,
                                       static_cast<int>(consumed)};
  return state;
}

std::string TemplateStore::to_json() const {
  nlohmann::json j;
  j["schema"] = kSchemaTag;
  j["bank_spec"] = bank_to_json(bank_);
  j["templates"] = nlohmann::json::array();
  for (const auto& t : templates_)
    j["templates"].push_back({{"label", t.label}, {"bundle", bundle_to_json(t.bundle)}});
  return j.dump(2);
}

TemplateStore TemplateStore::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema") != kSchemaTag)
    throw std::runtime_error("store: unsupported schema tag");
  TemplateStore store(bank_from_json(j.at("bank_spec")));
  for (const auto& t : j.at("templates"))
    store.enroll(t.at("label"), bundle_from_json(t.at("bundle")));
  return store;
}

void TemplateStore::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("store: cannot open " + path + " for writing");
  out << to_json();
}

TemplateStore TemplateStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("store: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace rpn
