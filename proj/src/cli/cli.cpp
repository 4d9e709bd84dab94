#include "lagsg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lagsg/characteristics.hpp"
#include "lagsg/error.hpp"
#include "lagsg/family.hpp"
#include "lagsg/format.hpp"
#include "lagsg/grid.hpp"
#include "lagsg/ma_core.hpp"
#include "lagsg/metric_field.hpp"
#include "lagsg/sg.hpp"
#include "lagsg/singular.hpp"
#include "lagsg/verify.hpp"

namespace lagsg::cli {

namespace {

using nlohmann::json;

// Bad flags, files or config records.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- config plumbing ----

class Config {
 public:
  Config(json j, std::set<std::string> allowed) : j_(std::move(j)) {
    if (j_.is_null()) j_ = json::object();
    if (!j_.is_object()) throw ConfigError("config must be a JSON object");
    allowed.insert({"generating_function", "gf_file", "output", "format"});
    for (const auto& [k, v] : j_.items())
      if (!allowed.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }
  bool has(const std::string& k) const { return j_.contains(k); }
  const json& at(const std::string& k) const { return j_.at(k); }

  template <class T>
  std::optional<T> get(const std::string& k) const {
    if (!has(k)) return std::nullopt;
    try {
      return j_.at(k).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + k + "': " + e.what());
    }
  }

 private:
  json j_;
};

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + what + " '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(what + " '" + path + "' is not valid JSON: " + e.what());
  }
}

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::string config_inline;
  std::string output;
  std::string format;
  std::string potential;
  std::string chart;
  std::string eps_q;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--config-json", c.config_inline, "inline JSON config");
  sub->add_option("-o,--output", c.output, "output file (default: standard output)");
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("--potential", c.potential, "generating function polynomial");
  sub->add_option("--chart", c.chart, "P, R, S or T");
  sub->add_option("--eps-q", c.eps_q, "positive rational eps*q_g");
}

json load_config_json(const Common& c) {
  if (!c.config_path.empty() && !c.config_inline.empty())
    throw ConfigError("--config and --config-json are mutually exclusive");
  if (!c.config_path.empty()) return read_json_file(c.config_path, "config file");
  if (!c.config_inline.empty()) {
    try {
      return json::parse(c.config_inline);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("--config-json is not valid JSON: ") + e.what());
    }
  }
  return json::object();
}

// Default: the fold example. Config record or file first, then flags per field.
GeneratingFunction load_gf(const Config& cfg, const Common& c) {
  json rec = to_json(fold_example());
  if (cfg.has("generating_function") && cfg.has("gf_file"))
    throw ConfigError("give either 'generating_function' or 'gf_file', not both");
  if (cfg.has("generating_function")) rec = cfg.at("generating_function");
  if (cfg.has("gf_file")) rec = read_json_file(*cfg.get<std::string>("gf_file"), "generating function file");
  if (!rec.is_object()) throw ConfigError("generating function record must be an object");
  if (!c.potential.empty()) rec["potential"] = c.potential;
  if (!c.chart.empty()) rec["chart"] = c.chart;
  if (!c.eps_q.empty()) rec["eps_q"] = c.eps_q;
  try {
    return generating_function_from_json(rec);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generating function record: ") + e.what());
  }
}

std::string resolve_format(const Config& cfg, const Common& c, const std::string& dflt,
                           std::initializer_list<const char*> allowed) {
  std::string f = !c.format.empty() ? c.format : cfg.get<std::string>("format").value_or(dflt);
  for (const char* a : allowed)
    if (f == a) return f;
  throw ConfigError("unsupported format '" + f + "' for this command");
}

// Writes to the configured file, or to `out`.
class Sink {
 public:
  Sink(const Config& cfg, const Common& c, std::ostream& out) : out_(&out) {
    const std::string path = !c.output.empty() ? c.output : cfg.get<std::string>("output").value_or("");
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
      out_ = file_.get();
    }
  }
  std::ostream& os() { return *out_; }

 private:
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

ChartPoint to_point(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 3) throw ConfigError(what + " needs exactly three coordinates");
  return {v[0], v[1], v[2]};
}

// Flag value if given, else config value, else default.
template <class T>
T pick(const CLI::Option* flag, const T& flag_value, const Config& cfg, const std::string& key, const T& dflt) {
  if (flag && flag->count() > 0) return flag_value;
  return cfg.get<T>(key).value_or(dflt);
}

template <class T>
std::optional<T> pick_opt(const CLI::Option* flag, const T& flag_value, const Config& cfg, const std::string& key) {
  if (flag && flag->count() > 0) return flag_value;
  return cfg.get<T>(key);
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(what + " must be positive");
}

Grid1D grid_key(const json& j, const std::string& what) {
  try {
    return grid_from_json(j, what);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

json point_json(const ChartPoint& p) { return json::array({p[0], p[1], p[2]}); }

void dump_json(std::ostream& os, const json& j);
std::string dumps(const json& j);

// ---- subcommands ----

struct Command {
  CLI::App* app = nullptr;
  Common common;
  std::function<int(std::ostream&)> body;
};

void define_classify(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("classify", "signature of the pulled-back metric");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto point = std::make_shared<std::vector<double>>();
  auto tol = std::make_shared<double>(kDefaultZeroTol);
  auto* o_point = sub->add_option("--point", *point, "chart point q1,q2,q3")->delimiter(',');
  auto* o_tol = sub->add_option("--tol", *tol, "zero-eigenvalue tolerance");
  cmd.body = [&cmd, point, tol, o_point, o_tol](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"point", "grid", "tol"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    const double t = pick(o_tol, *tol, cfg, "tol", kDefaultZeroTol);
    require_positive(t, "tol");
    const auto p = pick_opt(o_point, *point, cfg, "point");
    if (p && cfg.has("grid")) throw ConfigError("give either a point or a grid");
    if (p) {
      const std::string fmt = resolve_format(cfg, cmd.common, "json", {"json"});
      const ChartPoint q = to_point(*p, "point");
      const Signature s = classify(gf, q, t);
      Sink sink(cfg, cmd.common, out);
      sink.os() << dumps(json{{"point", point_json(q)},
                        {"eigenvalues", json::array({s.eigenvalues[0], s.eigenvalues[1], s.eigenvalues[2]})},
                        {"signature", {{"positive", s.n_pos}, {"negative", s.n_neg}, {"zero", s.n_zero}}},
                        {"label", label_name(s.label)},
                        {"tol", t}})
                << '\n';
      return kOk;
    }
    if (!cfg.has("grid")) throw ConfigError("classify needs --point or a 'grid' config entry");
    const std::string fmt = resolve_format(cfg, cmd.common, "csv", {"csv"});
    const json& g = cfg.at("grid");
    if (!g.is_object()) throw ConfigError("grid must be an object of three axis grids");
    const auto& vars = gf.variables();
    for (const auto& [k, v] : g.items())
      if (k != vars[0] && k != vars[1] && k != vars[2]) throw ConfigError("grid: unknown axis '" + k + "'");
    std::array<Grid1D, 3> axes;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!g.contains(vars[i])) throw ConfigError("grid: missing axis '" + vars[i] + "'");
      axes[i] = grid_key(g.at(vars[i]), "grid." + vars[i]);
    }
    const MetricField field(gf);
    Sink sink(cfg, cmd.common, out);
    auto& os = sink.os();
    os << vars[0] << ',' << vars[1] << ',' << vars[2] << ",positive,negative,zero,label\n";
    for (std::size_t i = 0; i < axes[0].n; ++i)
      for (std::size_t j = 0; j < axes[1].n; ++j)
        for (std::size_t k = 0; k < axes[2].n; ++k) {
          const ChartPoint q{axes[0].at(i), axes[1].at(j), axes[2].at(k)};
          const Signature s = classify(field.metric(q), t);
          os << format_double(q[0]) << ',' << format_double(q[1]) << ',' << format_double(q[2]) << ',' << s.n_pos
             << ',' << s.n_neg << ',' << s.n_zero << ',' << label_name(s.label) << '\n';
        }
    return kOk;
  };
}

void define_trace(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("trace", "bicharacteristic trace (RK4)");
  cmd.app = sub;
  add_common(sub, cmd.common);
  struct Flags {
    std::vector<double> q, p;
    double step = 1e-3, stop_tol = 0.0;
    std::size_t max_steps = 1000;
  };
  auto f = std::make_shared<Flags>();
  auto* o_q = sub->add_option("--q", f->q, "start point q1,q2,q3")->delimiter(',');
  auto* o_p = sub->add_option("--p", f->p, "start momentum p1,p2,p3")->delimiter(',');
  auto* o_step = sub->add_option("--step", f->step, "RK4 step");
  auto* o_max = sub->add_option("--max-steps", f->max_steps, "step limit");
  auto* o_stop = sub->add_option("--stop-tol", f->stop_tol, "|det h| threshold (0: relative default)");
  cmd.body = [&cmd, f, o_q, o_p, o_step, o_max, o_stop](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common),
                     {"q", "p", "null_complete", "step", "max_steps", "stop_tol", "box_min", "box_max"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "csv", {"csv"});
    TraceOptions opts;
    opts.step = pick(o_step, f->step, cfg, "step", 1e-3);
    require_positive(opts.step, "step");
    opts.max_steps = pick(o_max, f->max_steps, cfg, "max_steps", std::size_t{1000});
    opts.stop_tol = pick(o_stop, f->stop_tol, cfg, "stop_tol", 0.0);
    if (!(opts.stop_tol >= 0.0)) throw ConfigError("stop_tol must be non-negative");
    if (auto b = cfg.get<std::vector<double>>("box_min")) {
      const ChartPoint v = to_point(*b, "box_min");
      opts.box_min = {v[0], v[1], v[2]};
    }
    if (auto b = cfg.get<std::vector<double>>("box_max")) {
      const ChartPoint v = to_point(*b, "box_max");
      opts.box_max = {v[0], v[1], v[2]};
    }
    const auto q = pick_opt(o_q, f->q, cfg, "q");
    if (!q) throw ConfigError("trace needs a start point 'q'");
    BicharState start;
    start.q = to_point(*q, "q");
    const MetricField field(gf);
    const auto p = pick_opt(o_p, f->p, cfg, "p");
    if (p && cfg.has("null_complete")) throw ConfigError("give either 'p' or 'null_complete'");
    if (p) {
      const ChartPoint pv = to_point(*p, "p");
      start.p = {pv[0], pv[1], pv[2]};
    } else if (cfg.has("null_complete")) {
      // {"fixed": [a, b], "free_index": k, "root": 0 | 1}
      const json& nc = cfg.at("null_complete");
      if (!nc.is_object()) throw ConfigError("null_complete must be an object");
      for (const auto& [k, v] : nc.items())
        if (k != "fixed" && k != "free_index" && k != "root") throw ConfigError("null_complete: unknown key '" + k + "'");
      std::vector<double> fixed;
      std::size_t free_index = 2, root = 1;
      try {
        fixed = nc.at("fixed").get<std::vector<double>>();
        if (nc.contains("free_index")) free_index = nc.at("free_index").get<std::size_t>();
        if (nc.contains("root")) root = nc.at("root").get<std::size_t>();
      } catch (const json::exception& e) {
        throw ConfigError(std::string("null_complete: ") + e.what());
      }
      if (fixed.size() != 2 || free_index > 2) throw ConfigError("null_complete needs two fixed components and free_index 0..2");
      const auto roots = null_project(field, start.q, {fixed[0], fixed[1]}, free_index);
      if (roots.empty()) throw DomainError("no real null completion at this point");
      start.p = roots[std::min(root, roots.size() - 1)];
    } else {
      throw ConfigError("trace needs a momentum 'p' or a 'null_complete' entry");
    }
    const Trace tr = trace_bicharacteristic(field, start, opts);
    Sink sink(cfg, cmd.common, out);
    write_trace_csv(sink.os(), tr);
    return kOk;
  };
}

void define_verify(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("verify-paper", "run the end-to-end reproduction checks on the fold example");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto list = std::make_shared<bool>(false);
  auto perturb = std::make_shared<bool>(false);
  auto only = std::make_shared<std::vector<int>>();
  auto* o_list = sub->add_flag("--list", *list, "list the criteria without running them");
  auto* o_perturb = sub->add_flag("--perturb", *perturb, "scale T_ZZ by 1 + 1e-3 (sensitivity hook)");
  auto* o_only = sub->add_option("--only", *only, "run only these criterion ids")->delimiter(',');
  cmd.body = [&cmd, list, perturb, only, o_list, o_perturb, o_only](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"list", "perturb", "only"});
    resolve_format(cfg, cmd.common, "json", {"json"});
    Sink sink(cfg, cmd.common, out);
    if (pick(o_list, *list, cfg, "list", false)) {
      json a = json::array();
      for (const auto& c : verification_criteria()) a.push_back({{"id", c.id}, {"name", c.name}, {"summary", c.summary}});
      sink.os() << dumps(a) << '\n';
      return kOk;
    }
    VerifyOptions opts;
    opts.perturb = pick(o_perturb, *perturb, cfg, "perturb", false);
    const auto ids = pick(o_only, *only, cfg, "only", std::vector<int>{});
    std::vector<CriterionResult> results;
    if (ids.empty()) {
      results = run_verification(opts);
    } else {
      for (int id : ids) {
        if (id < 1 || id > 12) throw ConfigError("criterion ids are 1..12");
        results.push_back(run_criterion(id, opts));
      }
    }
    const json rep = verification_report(results, opts);
    sink.os() << dumps(rep) << '\n';
    return rep.at("passed").get<bool>() ? kOk : kVerificationFailed;
  };
}

void define_residual(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("residual", "Monge-Ampere residual, symbolic or at a point");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto point = std::make_shared<std::vector<double>>();
  auto* o_point = sub->add_option("--point", *point, "chart point")->delimiter(',');
  cmd.body = [&cmd, point, o_point](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"point"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "json", {"json"});
    const Poly r = ma_residual_poly(gf);
    json rep{{"generating_function", to_json(gf)}, {"residual", r.str()}, {"zero", r.is_zero()}};
    if (const auto p = pick_opt(o_point, *point, cfg, "point")) {
      const ChartPoint q = to_point(*p, "point");
      rep["point"] = point_json(q);
      rep["value"] = ma_residual(gf, q);
    }
    Sink sink(cfg, cmd.common, out);
    sink.os() << dumps(rep) << '\n';
    return kOk;
  };
}

void define_singular(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("singular", "singular locus polynomial, or det d(pi) at a point");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto point = std::make_shared<std::vector<double>>();
  auto* o_point = sub->add_option("--point", *point, "chart point")->delimiter(',');
  cmd.body = [&cmd, point, o_point](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"point"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "json", {"json"});
    json rep{{"generating_function", to_json(gf)}, {"locus", singular_locus_poly(gf).str()}};
    if (const auto p = pick_opt(o_point, *point, cfg, "point")) {
      const ChartPoint q = to_point(*p, "point");
      const AmbientPoint a = immersion(gf, q);
      rep["point"] = point_json(q);
      rep["det_dpi"] = dpi_det(gf, q);
      rep["base"] = json::array({a[kX], a[kY], a[kZ]});
    }
    Sink sink(cfg, cmd.common, out);
    sink.os() << dumps(rep) << '\n';
    return kOk;
  };
}

void define_caustic(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("caustic", "sample the caustic over a 2-D grid of chart variables");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto tol = std::make_shared<double>(1e-9);
  auto* o_tol = sub->add_option("--tol", *tol, "acceptance bound on |det d(pi)| at returned roots");
  cmd.body = [&cmd, tol, o_tol](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"free_vars", "first", "second", "tol"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "csv", {"csv"});
    CausticGrid g;
    g.first = {-2, 2, 41};
    g.second = {-2, 2, 41};
    if (auto fv = cfg.get<std::vector<std::size_t>>("free_vars")) {
      if (fv->size() != 2 || (*fv)[0] > 2 || (*fv)[1] > 2 || (*fv)[0] == (*fv)[1])
        throw ConfigError("free_vars must be two distinct chart indices 0..2");
      g.free_vars = {(*fv)[0], (*fv)[1]};
    }
    if (cfg.has("first")) g.first = grid_key(cfg.at("first"), "first");
    if (cfg.has("second")) g.second = grid_key(cfg.at("second"), "second");
    const double t = pick(o_tol, *tol, cfg, "tol", 1e-9);
    require_positive(t, "tol");
    const CausticSweep sw = caustic_sweep(gf, g, t);
    Sink sink(cfg, cmd.common, out);
    write_caustic_csv(sink.os(), gf, sw);
    return kOk;
  };
}

void define_fiber(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("fiber", "chart preimages and geopotential branches over base points");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto base = std::make_shared<std::vector<double>>();
  auto* o_base = sub->add_option("--base", *base, "one base point x,y,z")->delimiter(',');
  cmd.body = [&cmd, base, o_base](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"bases", "seeds", "newton_tol", "max_iterations"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "csv", {"csv"});
    std::vector<Vec3> bases;
    if (o_base->count() > 0) {
      const ChartPoint b = to_point(*base, "base");
      bases.push_back({b[0], b[1], b[2]});
    } else if (auto bs = cfg.get<std::vector<std::vector<double>>>("bases")) {
      for (const auto& b : *bs) {
        const ChartPoint v = to_point(b, "bases entry");
        bases.push_back({v[0], v[1], v[2]});
      }
    } else {
      throw ConfigError("fiber needs --base or a 'bases' list");
    }
    FiberOptions fo;
    if (auto s = cfg.get<std::vector<std::vector<double>>>("seeds"))
      for (const auto& v : *s) fo.seeds.push_back(to_point(v, "seed"));
    fo.newton_tol = cfg.get<double>("newton_tol").value_or(fo.newton_tol);
    require_positive(fo.newton_tol, "newton_tol");
    fo.max_iterations = cfg.get<int>("max_iterations").value_or(fo.max_iterations);
    const ChartEvaluator ev(gf);
    std::vector<BranchPoint> pts;
    for (const auto& b : bases) pts.push_back(fiber_solve(ev, b, fo));
    Sink sink(cfg, cmd.common, out);
    write_fiber_csv(sink.os(), gf, pts);
    return kOk;
  };
}

void define_family(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("family", "build a cubic-truncation solution from coefficient data");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto derive = std::make_shared<bool>(false);
  auto spec_file = std::make_shared<std::string>();
  auto* o_derive = sub->add_flag("--derive", *derive, "print the recursion identities instead");
  auto* o_spec = sub->add_option("--spec", *spec_file, "family spec JSON file");
  cmd.body = [&cmd, derive, spec_file, o_derive, o_spec](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"spec", "spec_file", "derive"});
    resolve_format(cfg, cmd.common, "json", {"json"});
    Sink sink(cfg, cmd.common, out);
    if (pick(o_derive, *derive, cfg, "derive", false)) {
      json ids = json::array();
      for (const auto& id : derive_recursions())
        ids.push_back({{"monomial", {id.ex, id.ey}}, {"identity", id.identity.str() + " = 0"}});
      json mism = json::array();
      for (const auto& m : compare_with_transcribed())
        mism.push_back({{"monomial", {m.ex, m.ey}}, {"derived", m.derived.str()}, {"transcribed", m.transcribed.str()}});
      sink.os() << dumps(json{{"identities", ids}, {"transcription_mismatches", mism}}) << '\n';
      return kOk;
    }
    json spec_json = to_json(fold_family_spec());
    const auto path = pick_opt(o_spec, *spec_file, cfg, "spec_file");
    if (path && cfg.has("spec")) throw ConfigError("give either 'spec' or 'spec_file'");
    if (path) spec_json = read_json_file(*path, "family spec");
    if (cfg.has("spec")) spec_json = cfg.at("spec");
    FamilySpec spec;
    try {
      spec = family_spec_from_json(spec_json);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("family spec: ") + e.what());
    }
    const FamilySolution sol = build_family(spec);
    auto d = [](const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); };
    sink.os() << dumps(json{{"generating_function", to_json(sol.gf)},
                      {"residual_zero", true},
                      {"degrees", {{"T3", d(sol.degrees.T3)}, {"T2", d(sol.degrees.T2)}, {"T1", d(sol.degrees.T1)},
                                   {"T0", d(sol.degrees.T0)}}}})
              << '\n';
    return kOk;
  };
}

void define_wind(CLI::App& root, Command& cmd) {
  auto* sub = root.add_subcommand("wind", "geostrophic and reconstructed wind over a plane section");
  cmd.app = sub;
  add_common(sub, cmd.common);
  auto epsilon = std::make_shared<std::string>("1");
  auto* o_eps = sub->add_option("--epsilon", *epsilon, "Rossby number (positive rational)");
  cmd.body = [&cmd, epsilon, o_eps](std::ostream& out) {
    const Config cfg(load_config_json(cmd.common), {"section", "epsilon", "branch"});
    const GeneratingFunction gf = load_gf(cfg, cmd.common);
    resolve_format(cfg, cmd.common, "csv", {"csv"});
    WindSection sec;
    if (cfg.has("section")) {
      const json& s = cfg.at("section");
      if (!s.is_object()) throw ConfigError("section must be an object");
      for (const auto& [k, v] : s.items()) {
        if (k == "axes") {
          const auto a = cfg.get<json>("section")->at("axes");
          if (!a.is_array() || a.size() != 2) throw ConfigError("section.axes must be two base indices");
          sec.axes = {a[0].get<std::size_t>(), a[1].get<std::size_t>()};
        } else if (k == "first") {
          sec.first = grid_key(v, "section.first");
        } else if (k == "second") {
          sec.second = grid_key(v, "section.second");
        } else if (k == "fixed") {
          if (!v.is_number()) throw ConfigError("section.fixed must be a number");
          sec.fixed = v.get<double>();
        } else {
          throw ConfigError("section: unknown key '" + k + "'");
        }
      }
    }
    Rational eps_r;
    try {
      eps_r = Rational::parse(pick(o_eps, *epsilon, cfg, "epsilon", std::string("1")));
    } catch (const Error& e) {
      throw ConfigError(std::string("epsilon: ") + e.what());
    }
    if (eps_r.sign() <= 0) throw ConfigError("epsilon must be positive");
    BranchRequest br;
    if (cfg.has("branch")) {
      const json& b = cfg.at("branch");
      if (b.is_number_unsigned()) {
        br.index = b.get<std::size_t>();
      } else if (!(b.is_string() && b.get<std::string>() == "convex")) {
        throw ConfigError("branch must be \"convex\" or a fiber index");
      }
    }
    const EpsilonChoice eps = EpsilonChoice::from_eps_q(gf.eps_q(), eps_r);
    std::vector<WindRow> rows;
    try {
      rows = wind_field_sweep(gf, br, sec, eps);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    Sink sink(cfg, cmd.common, out);
    if (!(gf.eps_q() == Rational(1))) sink.os() << "# eps_q != 1: wind identities applied outside their unit normalization\n";
    write_wind_csv(sink.os(), rows);
    return kOk;
  };
}

// JSON with floats in the fixed %.17g pattern; non-finite values become null.
void dump_json(std::ostream& os, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << json(k).dump() << ':';
        dump_json(os, v);
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        dump_json(os, j[i]);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : std::string("null"));
      break;
    }
    default:
      os << j.dump();
  }
}

std::string dumps(const json& j) {
  std::ostringstream os;
  dump_json(os, j);
  return os.str();
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lagsg: Monge-Ampere geometry toolkit for semigeostrophic flow", "lagsg"};
  app.require_subcommand(1, 1);
  std::map<std::string, Command> cmds;
  define_classify(app, cmds["classify"]);
  define_trace(app, cmds["trace"]);
  define_verify(app, cmds["verify-paper"]);
  define_residual(app, cmds["residual"]);
  define_singular(app, cmds["singular"]);
  define_caustic(app, cmds["caustic"]);
  define_fiber(app, cmds["fiber"]);
  define_family(app, cmds["family"]);
  define_wind(app, cmds["wind"]);

  std::vector<std::string> argv_store{"lagsg"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    // --help and friends
    std::ostringstream help;
    const CLI::App* target = &app;
    for (auto& [name, c] : cmds)
      if (c.app->parsed()) target = c.app;
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage_error", e.what(), kConfigError);
    return kConfigError;
  }

  for (auto& [name, c] : cmds) {
    if (!c.app->parsed()) continue;
    try {
      return c.body(out);
    } catch (const ConfigError& e) {
      report_error(err, "config_error", e.what(), kConfigError);
      return kConfigError;
    } catch (const lagsg::ParseError& e) {
      report_error(err, "parse_error", e.what(), kConfigError);
      return kConfigError;
    } catch (const InvalidArgument& e) {
      report_error(err, "config_error", e.what(), kConfigError);
      return kConfigError;
    } catch (const json::exception& e) {
      report_error(err, "config_error", e.what(), kConfigError);
      return kConfigError;
    } catch (const DomainError& e) {
      report_error(err, "domain_error", e.what(), kDomainError);
      return kDomainError;
    } catch (const std::exception& e) {
      report_error(err, "runtime_error", e.what(), kDomainError);
      return kDomainError;
    }
  }
  report_error(err, "usage_error", "no subcommand given", kConfigError);
  return kConfigError;
}

}  // namespace lagsg::cli
