#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "varberg/carleson.hpp"
#include "varberg/checks.hpp"
#include "varberg/cli.hpp"
#include "varberg/kernels.hpp"
#include "varberg/lattice.hpp"
#include "varberg/norm.hpp"
#include "varberg/operators.hpp"
#include "varberg/random.hpp"
#include "varberg/report.hpp"
#include "varberg/scenario.hpp"
#include "varberg/simd.hpp"

namespace varberg {

namespace {

struct Context {
  Scenario sc;
  MeasureTable measures;
  RunOptions opts;
  std::map<std::pair<double, double>, Lattice> lattices;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
};

const Lattice& lattice_for(Context& c, const Field& t) {
  double r = c.sc.lattice_r, rho = c.sc.lattice_rho_max;
  if (auto l = t.get("lattice")) {
    r = l->number_or("r", r);
    rho = l->number_or("rho_max", rho);
  }
  if (c.opts.rho_max) rho = *c.opts.rho_max;
  auto key = std::make_pair(r, rho);
  auto it = c.lattices.find(key);
  if (it != c.lattices.end()) return it->second;
  LatticeOptions lo;
  lo.seed = c.sc.seed;
  Lattice lat;
  try {
    lat = make_lattice(c.sc.n, r, rho, lo);
  } catch (const std::exception& e) {
    t.fail(std::string("lattice: ") + e.what());
  }
  return c.lattices.emplace(key, std::move(lat)).first->second;
}

Thresholds thresholds_of(const Field& t) {
  Thresholds th;
  if (auto f = t.get("thresholds")) {
    th.divergence_factor = f->number_or("divergence_factor", th.divergence_factor);
    th.decay_factor = f->number_or("decay_factor", th.decay_factor);
  }
  return th;
}

ExponentField exponent_of(const Context& c, const Field& t) {
  return t.has("exponent") ? parse_exponent(t.at("exponent"), c.sc.n) : c.sc.p;
}

std::vector<Point> points_of(const Context& c, const Field& t) {
  int n = c.sc.n;
  std::vector<Point> pts;
  if (auto ps = t.get("points")) {
    for (std::size_t i = 0; i < ps->size(); ++i) pts.push_back(ps->at(i).point(n));
    return pts;
  }
  int count = t.integer_or("count", 100);
  double rad = t.number_or("max_modulus", 0.9);
  if (count < 1) t.at("count").fail("count must be positive");
  if (!(rad > 0.0 && rad < 1.0)) t.at("max_modulus").fail("max_modulus must be in (0,1)");
  Rng rng(c.sc.seed);
  for (int i = 0; i < count; ++i) pts.push_back(rng.ball_point(n, rad));
  return pts;
}

std::vector<Point> family_of(const Context& c, const Field& t) {
  Field fam = t.at("family");
  std::vector<Point> out;
  Vec e1(c.sc.n);
  e1[0] = 1.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    Field e = fam.at(i);
    if (e.json().is_number()) {
      double rad = e.number();
      if (!(rad >= 0.0 && rad < 1.0)) e.fail("radius must be in [0,1)");
      out.emplace_back(rad * e1);
    } else {
      out.push_back(e.point(c.sc.n));
    }
  }
  return out;
}

const QuadMeasure& measure_of(Context& c, const Field& t, const std::string& key) {
  Field f = t.at(key);
  return c.measures.get(f.str(), f.path());
}

void add_file(Context& c, const std::string& task, const std::string& suffix, std::string content) {
  c.files.emplace_back(c.sc.name + "-" + task + "-" + suffix, std::move(content));
}

// max |A(z) - B(z)| over the points
template <class A, class B>
Json compare_on(const std::vector<Point>& pts, A&& lhs, B&& rhs) {
  double worst = 0.0, size = 0.0;
  for (const Point& z : pts) {
    cplx a = lhs(z);
    worst = std::max(worst, std::abs(a - rhs(z)));
    size = std::max(size, std::abs(a));
  }
  return Json{{"points", pts.size()}, {"max_error", worst}, {"max_modulus", size}};
}

Json task_lattice(Context& c, const Task& task, const Field& t) {
  double r = t.number_or("r", c.sc.lattice_r);
  double rho = c.opts.rho_max ? *c.opts.rho_max : t.number_or("rho_max", c.sc.lattice_rho_max);
  LatticeOptions lo;
  lo.seed = c.sc.seed;
  auto build = [&](double rm) {
    try {
      return make_lattice(c.sc.n, r, rm, lo);
    } catch (const std::exception& e) {
      t.fail(std::string("lattice: ") + e.what());
    }
  };
  Lattice lat = build(rho);
  SeparationAudit sep = audit_separation(lat, r);
  auto samples = static_cast<std::size_t>(t.integer_or("coverage_samples", 100000));
  CoverageAudit cov = audit_coverage(lat, samples, c.sc.seed);
  Json j = lattice_summary(lat);
  bool sep_ok = sep.min_distance >= 0.5 * r;
  j["min_separation"] = sep.min_distance;
  j["separation_pairs"] = sep.pairs_checked;
  j["separation_ok"] = sep_ok;
  j["coverage"] = Json{{"samples", cov.samples}, {"uncovered", cov.uncovered}, {"worst_distance", cov.worst_distance}};
  bool ok = sep_ok && cov.uncovered == 0 && lat.overlap_bound > 0;
  if (auto rf = t.get("refine_rho_max")) {
    Lattice fine = build(rf->number());
    j["refined"] = lattice_summary(fine);
    bool stable = fine.overlap_bound == lat.overlap_bound;
    j["overlap_stable"] = stable;
    ok = ok && stable;
  }
  j["contract_ok"] = ok;
  if (t.boolean_or("write_centers", true)) add_file(c, task.name, "centers.csv", centers_csv(lat));
  return j;
}

Json task_norm(Context& c, const Task&, const Field& t) {
  HoloFunction f = parse_function(t.at("function"), c.sc);
  ExponentField p = exponent_of(c, t);
  std::string mname = t.at("measure").str();
  const QuadMeasure& mu = measure_of(c, t, "measure");
  NormResult nr = luxemburg_norm(f, p, mu);
  ModularResult mr = modular(f, p, mu);
  Json j{{"measure", mu.provenance().descriptor},
         {"norm", nr.value},
         {"modular", mr.value},
         {"modular_overflow", mr.overflow},
         {"modular_at_norm", nr.modular_at_value},
         {"bracket_steps", nr.bracket_steps},
         {"bisections", nr.bisections},
         {"divergent", nr.divergent}};
  if (!nr.divergent && nr.value > 0.0) j["norm_modular_bound"] = to_json(check_norm_modular_bound(f, p, mu));
  if (t.boolean_or("truncation", false)) {
    auto spec = c.measures.lebesgue_spec(mname, t.at("measure").path());
    if (!spec) t.at("truncation").fail("truncation sensitivity needs a Lebesgue measure");
    double gap = 1.0 - spec->rho_max;
    spec->rho_max = 1.0 - gap * gap;
    NormResult fine = luxemburg_norm(f, p, lebesgue(*spec));
    j["norm_refined"] = fine.value;
    j["refined_rho_max"] = spec->rho_max;
    j["truncation_sensitivity"] = std::abs(fine.value - nr.value) / std::max(nr.value, 1e-300);
  }
  return j;
}

Json task_carleson(Context& c, const Task& task, const Field& t) {
  const QuadMeasure& mu = measure_of(c, t, "measure");
  const Lattice& lat = lattice_for(c, t);
  double beta = t.number_or("beta", 0.0);
  std::string mode = t.str_or("mode", "bounded");
  Thresholds th = thresholds_of(t);
  CarlesonReport rep;
  if (mode == "bounded")
    rep = carleson_constant(mu, lat.r, beta, lat, th);
  else if (mode == "vanishing")
    rep = vanishing_profile(mu, lat.r, beta, lat, th);
  else
    t.at("mode").fail("mode must be 'bounded' or 'vanishing'");
  add_file(c, task.name, "shells.csv", shell_csv(rep.shell_profile));
  Json j = to_json(rep);
  j["overlap_bound"] = lat.overlap_bound;
  return j;
}

Json probe(Context& c, const ProbeOperator& op, const Field& t) {
  ExponentField p = exponent_of(c, t);
  const QuadMeasure& nm = measure_of(c, t, "norm_measure");
  PropertyReport rep = compactness_probe(op, p, nm, family_of(c, t), t.number_or("N", c.sc.n + 1.0), thresholds_of(t));
  return to_json(rep);
}

Json task_toeplitz(Context& c, const Task&, const Field& t) {
  std::string mode = t.str_or("mode", "apply");
  const QuadMeasure& mu = measure_of(c, t, "measure");
  ToeplitzSpec spec{mu, t.number_or("beta", 0.0)};
  if (mode == "probe") return probe(c, spec, t);
  HoloFunction f = parse_function(t.at("function"), c.sc);
  HoloFunction ref = t.has("reference") ? parse_function(t.at("reference"), c.sc) : f;
  std::vector<Point> pts = points_of(c, t);
  if (mode == "apply") {
    ToeplitzImage img(spec, f);
    return compare_on(pts, [&](const Point& z) { return img.at(z); }, [&](const Point& z) { return ref.eval(z); });
  }
  if (mode == "project") {
    bool absolute = t.boolean_or("absolute", false);
    KernelIntegrator ki(f, mu, mu.dim() + 1.0);
    return compare_on(pts, [&](const Point& z) { return ki.at(z, absolute); }, [&](const Point& z) { return ref.eval(z); });
  }
  t.at("mode").fail("mode must be 'apply', 'project' or 'probe'");
}

WcoSpec wco_of(const Context& c, const Field& f, const char* u, const char* phi) {
  WcoSpec s{parse_function(f.at(u), c.sc), parse_map(f.at(phi), c.sc)};
  try {
    validate(s);
  } catch (const std::exception& e) {
    f.fail(e.what());
  }
  return s;
}

Json task_wco(Context& c, const Task& task, const Field& t) {
  std::string mode = t.str_or("mode", "symbol");
  WcoSpec w = wco_of(c, t, "u", "phi");
  if (mode == "probe") return probe(c, w, t);
  if (mode == "symbol") {
    std::vector<Point> grid = boundary_sample_grid(c.sc.n, t.integer_or("angular", 64), c.sc.seed);
    SymbolMode sm = t.boolean_or("compact", false) ? SymbolMode::Compact : SymbolMode::Bounded;
    PropertyReport rep = wco_symbol_sup(w.u, w.phi, exponent_of(c, t), grid, sm, thresholds_of(t));
    add_file(c, task.name, "shells.csv", shell_csv(rep.shell_profile));
    return to_json(rep);
  }
  if (mode == "apply") {
    HoloFunction f = parse_function(t.at("function"), c.sc);
    HoloFunction ref = parse_function(t.at("reference"), c.sc);
    return compare_on(points_of(c, t), [&](const Point& z) { return apply_wco(w, f, z); },
                      [&](const Point& z) { return ref.eval(z); });
  }
  t.at("mode").fail("mode must be 'symbol', 'apply' or 'probe'");
}

Json task_diff(Context& c, const Task& task, const Field& t) {
  std::string mode = t.str_or("mode", "diagnostics");
  ExponentField p = exponent_of(c, t);
  WcoSpec a = wco_of(c, t.at("first"), "u", "phi");
  WcoSpec b = wco_of(c, t.at("second"), "u", "phi");
  std::optional<double> alpha;
  if (t.has("alpha")) alpha = t.at("alpha").number();
  DiffSpec d;
  try {
    d = make_diff(a, b, p, alpha);
  } catch (const std::exception& e) {
    t.fail(e.what());
  }
  if (mode == "probe") return probe(c, d, t);
  if (mode == "apply") {
    HoloFunction f = parse_function(t.at("function"), c.sc);
    HoloFunction ref = parse_function(t.at("reference"), c.sc);
    return compare_on(points_of(c, t), [&](const Point& z) { return apply_diff(d, f, z); },
                      [&](const Point& z) { return ref.eval(z); });
  }
  if (mode != "diagnostics") t.at("mode").fail("mode must be 'diagnostics', 'apply' or 'probe'");
  const QuadMeasure& base = measure_of(c, t, "base");
  const Lattice& lat = lattice_for(c, t);
  DiffDiagnostics dd = diff_diagnostics(d, p, base, lat.r, lat, t.boolean_or("plus", false), thresholds_of(t));
  for (std::size_t i = 0; i < dd.reports.size(); ++i)
    add_file(c, task.name, dd.names[i] + "-shells.csv", shell_csv(dd.reports[i].shell_profile));
  return to_json(dd);
}

Json task_check(Context& c, const Task&, const Field& t) {
  CheckConfig cfg;
  cfg.n = t.integer_or("n", c.sc.n);
  cfg.seed = t.has("seed") ? t.at("seed").u64() : c.sc.seed;
  if (t.has("samples")) cfg.samples = t.at("samples").u64();
  if (t.has("bound")) cfg.asserted_bound = t.at("bound").number();
  if (t.has("exponent")) cfg.p = parse_exponent(t.at("exponent"), cfg.n);
  cfg.radial = t.integer_or("radial", cfg.radial);
  cfg.angular = t.integer_or("angular", cfg.angular);
  if (c.opts.resolution) std::tie(cfg.radial, cfg.angular) = *c.opts.resolution;
  cfg.rho_max = t.number_or("rho_max", cfg.rho_max);
  cfg.kappa = t.number_or("kappa", cfg.kappa);
  std::string name = t.at("check").str();
  const auto& names = property_check_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    t.at("check").fail("unknown property check '" + name + "'");
  return to_json(run_property_check(name, cfg));
}

// dotted path with array indices: "measures.0.zero_measure"
const Json* lookup(const Json& j, const std::string& key) {
  const Json* cur = &j;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (cur->is_object()) {
      auto it = cur->find(part);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      char* end = nullptr;
      unsigned long i = std::strtoul(part.c_str(), &end, 10);
      if (part.empty() || *end != '\0' || i >= cur->size()) return nullptr;
      cur = &(*cur)[i];
    } else {
      return nullptr;
    }
  }
  return cur;
}

bool holds(const Json& actual, const Field& expected) {
  const Json& e = expected.json();
  if (e.is_object()) {
    if (!actual.is_number()) return false;
    double a = actual.get<double>();
    bool ok = true;
    if (e.contains("min")) ok = ok && a >= expected.at("min").number();
    if (e.contains("max")) ok = ok && a <= expected.at("max").number();
    if (e.contains("approx")) {
      double v = expected.at("approx").number();
      double tol = expected.number_or("abs", 0.0) + expected.number_or("rel", 0.0) * std::abs(v);
      ok = ok && std::abs(a - v) <= tol;
    }
    for (auto it = e.begin(); it != e.end(); ++it)
      if (it.key() != "min" && it.key() != "max" && it.key() != "approx" && it.key() != "abs" && it.key() != "rel")
        expected.fail("unknown comparison '" + it.key() + "'");
    return ok;
  }
  if (e.is_number() && actual.is_number()) return actual.get<double>() == e.get<double>();
  return actual == e;
}

Json check_expectations(const Task& task, const Field& t, const Json& result, bool& pass) {
  Json out = Json::array();
  Json defaults = Json::object();
  if (task.kind == "check") defaults["pass"] = true;
  if (task.kind == "lattice") defaults["contract_ok"] = true;
  Json expect = t.has("expect") ? t.at("expect").json() : defaults;
  if (!expect.is_object()) t.at("expect").fail("expected an object of key: expectation");
  Field ef(expect, task.path + ".expect");
  for (auto it = expect.begin(); it != expect.end(); ++it) {
    Field one = ef.at(it.key());
    const Json* actual = lookup(result, it.key());
    if (actual == nullptr) one.fail("result has no field '" + it.key() + "'");
    bool ok = holds(*actual, one);
    pass = pass && ok;
    out.push_back(Json{{"key", it.key()}, {"expected", it.value()}, {"actual", *actual}, {"pass", ok}});
  }
  return out;
}

Json run_task(Context& c, const Task& task) {
  Field t(task.spec, task.path);
  if (task.kind == "lattice") return task_lattice(c, task, t);
  if (task.kind == "norm") return task_norm(c, task, t);
  if (task.kind == "carleson") return task_carleson(c, task, t);
  if (task.kind == "toeplitz") return task_toeplitz(c, task, t);
  if (task.kind == "wco") return task_wco(c, task, t);
  if (task.kind == "diff") return task_diff(c, task, t);
  return task_check(c, task, t);
}

}  // namespace

int run_scenario(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Scenario sc = load_scenario(opts.scenario, opts.seed);
    MeasureOverrides ov;
    if (opts.resolution) {
      ov.radial = opts.resolution->first;
      ov.angular = opts.resolution->second;
    }
    Context c{sc, MeasureTable(c.sc, ov), opts, {}, {}};
    std::vector<const Task*> todo;
    for (const Task& t : c.sc.tasks)
      if (opts.subcommand == "verify" || t.kind == opts.subcommand) todo.push_back(&t);
    if (todo.empty()) throw ScenarioError(opts.scenario + ": no '" + opts.subcommand + "' tasks in scenario");

    Json report;
    report["scenario"] = c.sc.name;
    report["subcommand"] = opts.subcommand;
    report["seed"] = c.sc.seed;
    report["dimension"] = c.sc.n;
    Json o = Json::object();
    if (opts.rho_max) o["rho_max"] = *opts.rho_max;
    if (opts.resolution) o["resolution"] = Json::array({opts.resolution->first, opts.resolution->second});
    report["overrides"] = o;
    Json tasks = Json::array();
    bool all = true;
    for (const Task* task : todo) {
      Json result = run_task(c, *task);
      bool pass = true;
      Json asserts = check_expectations(*task, Field(task->spec, task->path), result, pass);
      all = all && pass;
      out << (pass ? "PASS " : "FAIL ") << task->kind << ' ' << task->name << '\n';
      tasks.push_back(Json{{"name", task->name}, {"kind", task->kind}, {"pass", pass}, {"assertions", asserts},
                           {"result", result}});
    }
    report["tasks"] = tasks;
    report["pass"] = all;

    std::filesystem::path dir(opts.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + opts.out + ": " + ec.message());
    std::string main = (dir / (c.sc.name + "-" + opts.subcommand + ".json")).string();
    write_text(main, dump_json(report));
    for (const auto& [name, text] : c.files) write_text((dir / name).string(), text);
    out << (all ? "all assertions hold" : "assertion failures") << "; report: " << main << '\n';
    return all ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

namespace {

std::optional<std::pair<int, int>> parse_resolution(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) return std::nullopt;
  try {
    std::size_t a = 0, b = 0;
    int r = std::stoi(s.substr(0, x), &a);
    int m = std::stoi(s.substr(x + 1), &b);
    if (a != x || b != s.size() - x - 1 || r < 1 || m < 1) return std::nullopt;
    return std::make_pair(r, m);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Variable exponent Bergman space computations"};
  app.require_subcommand(1);
  RunOptions opts;
  std::uint64_t seed = 0;
  double rho_max = 0.0;
  std::string resolution;
  std::string simd = "auto";
  for (const char* name : {"lattice", "norm", "carleson", "toeplitz", "wco", "diff", "verify"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the scenario's ") +
                                                 (std::string(name) == "verify" ? "tasks and checks" : name + std::string(" tasks")));
    sub->add_option("--scenario", opts.scenario, "scenario JSON file")->required();
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--seed", seed, "override the scenario seed");
    sub->add_option("--rho-max", rho_max, "lattice truncation radius");
    sub->add_option("--resolution", resolution, "Lebesgue resolution as RADIALxANGULAR");
    sub->add_option("--simd", simd, "kernel level: auto, scalar, avx2");
    sub->callback([&opts, name] { opts.subcommand = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  CLI::App* used = app.get_subcommands().front();
  if (used->count("--seed")) opts.seed = seed;
  if (used->count("--rho-max")) {
    if (!(rho_max > 0.0 && rho_max < 1.0)) {
      std::cerr << "error: --rho-max must be in (0,1)\n";
      return 1;
    }
    opts.rho_max = rho_max;
  }
  if (used->count("--resolution")) {
    opts.resolution = parse_resolution(resolution);
    if (!opts.resolution) {
      std::cerr << "error: --resolution expects RADIALxANGULAR, e.g. 400x512\n";
      return 1;
    }
  }
  if (simd == "scalar")
    simd::set_level(simd::Level::Scalar);
  else if (simd == "avx2")
    simd::set_level(simd::Level::Avx2);
  else if (simd != "auto") {
    std::cerr << "error: --simd expects auto, scalar or avx2\n";
    return 1;
  }
  return run_scenario(opts, std::cout, std::cerr);
}

}  // namespace varberg
