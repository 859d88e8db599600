#include "varberg/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "varberg/kernels.hpp"
#include "varberg/operators.hpp"

namespace varberg {

bool Field::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Field Field::at(const std::string& key) const {
  if (!j_->is_object()) fail("expected an object");
  auto it = j_->find(key);
  if (it == j_->end()) fail("missing field '" + key + "'");
  return Field(*it, path_.empty() ? key : path_ + "." + key);
}

std::optional<Field> Field::get(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

Field Field::at(std::size_t i) const {
  if (!j_->is_array()) fail("expected an array");
  if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
  return Field((*j_)[i], path_ + "[" + std::to_string(i) + "]");
}

std::size_t Field::size() const {
  if (!j_->is_array()) fail("expected an array");
  return j_->size();
}

double Field::number() const {
  if (!j_->is_number()) fail("expected a number");
  return j_->get<double>();
}

double Field::number_or(const std::string& key, double fallback) const {
  auto f = get(key);
  return f ? f->number() : fallback;
}

int Field::integer() const {
  if (!j_->is_number_integer()) fail("expected an integer");
  return j_->get<int>();
}

int Field::integer_or(const std::string& key, int fallback) const {
  auto f = get(key);
  return f ? f->integer() : fallback;
}

std::uint64_t Field::u64() const {
  if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<long long>() >= 0))
    fail("expected a nonnegative integer");
  return j_->get<std::uint64_t>();
}

bool Field::boolean() const {
  if (!j_->is_boolean()) fail("expected true or false");
  return j_->get<bool>();
}

bool Field::boolean_or(const std::string& key, bool fallback) const {
  auto f = get(key);
  return f ? f->boolean() : fallback;
}

std::string Field::str() const {
  if (!j_->is_string()) fail("expected a string");
  return j_->get<std::string>();
}

std::string Field::str_or(const std::string& key, const std::string& fallback) const {
  auto f = get(key);
  return f ? f->str() : fallback;
}

cplx Field::complex() const {
  if (j_->is_number()) return j_->get<double>();
  if (j_->is_array() && j_->size() == 2 && (*j_)[0].is_number() && (*j_)[1].is_number())
    return {(*j_)[0].get<double>(), (*j_)[1].get<double>()};
  fail("expected a complex number (number or [re, im])");
}

Vec Field::vec(int n) const {
  if (!j_->is_array() || static_cast<int>(j_->size()) != n)
    fail("expected a list of " + std::to_string(n) + " complex numbers");
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = at(static_cast<std::size_t>(i)).complex();
  return v;
}

Point Field::point(int n) const {
  Vec v = vec(n);
  try {
    return Point(v);
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

std::vector<double> Field::numbers() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
  return out;
}

void Field::fail(const std::string& msg) const {
  throw ScenarioError((path_.empty() ? std::string("scenario") : path_) + ": " + msg);
}

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> k = {"lattice", "norm", "carleson", "toeplitz", "wco", "diff", "check"};
  return k;
}

namespace {

template <class F>
auto guarded(const Field& f, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    f.fail(e.what());
  }
}

ExponentField parse_exponent_raw(const Field& f, int n) {
  if (f.json().is_number()) return ExponentField::constant(n, f.number());
  std::string type = f.at("type").str();
  if (type == "constant") return ExponentField::constant(n, f.at("value").number());
  if (type == "re_linear") return ExponentField::re_linear(f.at("b").vec(n));
  if (type == "radial_power")
    return ExponentField::radial_power(n, f.at("k").number(), f.number_or("coef", 1.0));
  if (type == "radial_step")
    return ExponentField::radial_step(n, f.at("t").number(), f.number_or("coef", 1.0));
  if (type == "sum") {
    Field terms = f.at("terms");
    if (terms.size() == 0) terms.fail("empty sum");
    ExponentField acc = parse_exponent_raw(terms.at(0), n);
    for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + parse_exponent_raw(terms.at(i), n);
    return acc;
  }
  if (type == "scale") return parse_exponent_raw(f.at("of"), n) * f.at("by").number();
  if (type == "conjugate") return parse_exponent(f.at("of"), n).conjugate();
  if (type == "example") return ExponentField::constant(n, n + 3.0) + [&] {
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = 1.0;
    return ExponentField::re_linear(b);
  }();
  f.at("type").fail("unknown exponent type '" + type + "'");
}

}  // namespace

ExponentField parse_exponent(const Field& f, int n) {
  return guarded(f, [&] { return parse_exponent_raw(f, n).validated(); });
}

namespace {

HoloFunction function_ref(const Field& f, const Scenario& sc) {
  std::string name = f.str();
  auto it = sc.functions.find(name);
  if (it == sc.functions.end()) f.fail("unresolved reference: function '" + name + "'");
  return it->second;
}

TestFamily parse_family(const Field& f) {
  std::string s = f.str();
  if (s == "f" || s == "F") return TestFamily::F;
  if (s == "h" || s == "H") return TestFamily::H;
  if (s == "g" || s == "G") return TestFamily::G;
  f.fail("unknown test family '" + s + "' (expected f, h or g)");
}

HoloFunction parse_function_raw(const Field& f, const Scenario& sc) {
  int n = sc.n;
  const Json& j = f.json();
  if (j.is_string()) return function_ref(f, sc);
  if (j.is_number() || j.is_array()) return HoloFunction::constant(n, f.complex());
  std::string type = f.at("type").str();
  if (type == "ref") return function_ref(f.at("name"), sc);
  if (type == "constant") return HoloFunction::constant(n, f.at("value").complex());
  if (type == "monomial") {
    Field a = f.at("alpha");
    if (static_cast<int>(a.size()) != n) a.fail("multi-index needs " + std::to_string(n) + " entries");
    std::vector<int> alpha;
    for (std::size_t i = 0; i < a.size(); ++i) alpha.push_back(a.at(i).integer());
    cplx coef = f.has("coef") ? f.at("coef").complex() : cplx(1.0);
    return HoloFunction::monomial(alpha, coef);
  }
  if (type == "coord" || type == "conj_coord") {
    int i = f.at("index").integer();
    if (i < 0 || i >= n) f.at("index").fail("coordinate index out of range");
    return type == "coord" ? HoloFunction::coord(n, i) : HoloFunction::conj_coord(n, i);
  }
  if (type == "kernel_power") return HoloFunction::kernel_power(f.at("a").point(n), f.at("N").number());
  if (type == "boundary_factor") return HoloFunction::boundary_factor(n, f.at("beta").number());
  if (type == "sum" || type == "product") {
    Field terms = f.at(type == "sum" ? "terms" : "factors");
    if (terms.size() == 0) terms.fail("empty list");
    HoloFunction acc = parse_function(terms.at(0), sc);
    for (std::size_t i = 1; i < terms.size(); ++i)
      acc = type == "sum" ? acc + parse_function(terms.at(i), sc) : acc * parse_function(terms.at(i), sc);
    return acc;
  }
  if (type == "difference") return parse_function(f.at("left"), sc) - parse_function(f.at("right"), sc);
  if (type == "scale") return parse_function(f.at("of"), sc).scale(f.at("by").complex());
  if (type == "compose") return parse_function(f.at("of"), sc).compose(parse_map(f.at("map"), sc));
  if (type == "abs_power") return HoloFunction::abs_power(parse_function(f.at("of"), sc), f.at("q").number());
  if (type == "test_function") {
    KernelSpec spec{f.at("a").point(n), f.number_or("N", n + 1.0), f.number_or("beta", 0.0),
                    f.has("family") ? parse_family(f.at("family")) : TestFamily::F};
    return test_function(spec, sc.p);
  }
  f.at("type").fail("unknown function type '" + type + "'");
}

}  // namespace

HoloFunction parse_function(const Field& f, const Scenario& sc) {
  return guarded(f, [&] { return parse_function_raw(f, sc); });
}

SelfMap parse_map(const Field& f, const Scenario& sc) {
  return guarded(f, [&]() -> SelfMap {
    if (f.json().is_string()) {
      std::string name = f.str();
      auto it = sc.maps.find(name);
      if (it == sc.maps.end()) f.fail("unresolved reference: map '" + name + "'");
      return it->second;
    }
    std::string type = f.str_or("type", "components");
    if (type == "identity") return SelfMap::identity(sc.n);
    if (type == "scalar") return SelfMap::scalar(sc.n, f.at("c").complex());
    if (type != "components") f.at("type").fail("unknown map type '" + type + "'");
    Field comps = f.at("components");
    if (static_cast<int>(comps.size()) != sc.n) comps.fail("a self-map needs " + std::to_string(sc.n) + " components");
    std::vector<HoloFunction> cs;
    for (std::size_t i = 0; i < comps.size(); ++i) cs.push_back(parse_function(comps.at(i), sc));
    return SelfMap::make(cs, sc.seed);
  });
}

Scenario parse_scenario(const std::string& text, const std::string& origin, std::optional<std::uint64_t> seed) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw ScenarioError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                        (pos == std::string::npos ? what : what.substr(pos)));
  }
  Field top(root, "");
  if (!root.is_object()) top.fail("top level must be an object");
  static const std::set<std::string> known = {"name",     "description", "dimension", "seed", "exponent",
                                              "functions", "maps",       "measures",  "lattice", "tasks"};
  for (auto it = root.begin(); it != root.end(); ++it)
    if (!known.count(it.key())) top.fail("unknown field '" + it.key() + "'");

  Scenario sc;
  sc.origin = origin;
  sc.name = top.str_or("name", "scenario");
  if (sc.name.empty() || sc.name.find_first_of("/\\") != std::string::npos) top.at("name").fail("name must be a plain file stem");
  sc.n = top.integer_or("dimension", 1);
  if (sc.n < 1 || sc.n > kMaxDim) top.at("dimension").fail("dimension must be in 1..8");
  sc.seed = top.has("seed") ? top.at("seed").u64() : 1;
  if (seed) sc.seed = *seed;
  sc.p = top.has("exponent") ? parse_exponent(top.at("exponent"), sc.n) : ExponentField::constant(sc.n, 2.0).validated();

  if (auto fs = top.get("functions")) {
    if (!fs->json().is_object()) fs->fail("expected an object of named expressions");
    for (auto it = fs->json().begin(); it != fs->json().end(); ++it) {
      Field f(it.value(), fs->path() + "." + it.key());
      sc.functions[it.key()] = parse_function(f, sc);
    }
  }
  if (auto ms = top.get("maps")) {
    if (!ms->json().is_object()) ms->fail("expected an object of named self-maps");
    for (auto it = ms->json().begin(); it != ms->json().end(); ++it) {
      Field f(it.value(), ms->path() + "." + it.key());
      sc.maps[it.key()] = parse_map(f, sc);
    }
  }
  if (auto ms = top.get("measures")) {
    if (!ms->json().is_object()) ms->fail("expected an object of named measures");
    sc.measures = ms->json();
  }
  if (auto lat = top.get("lattice")) {
    sc.lattice_r = lat->number_or("r", sc.lattice_r);
    sc.lattice_rho_max = lat->number_or("rho_max", sc.lattice_rho_max);
  }
  if (auto ts = top.get("tasks")) {
    for (std::size_t i = 0; i < ts->size(); ++i) {
      Field t = ts->at(i);
      Task task;
      task.kind = t.at("kind").str();
      if (std::find(task_kinds().begin(), task_kinds().end(), task.kind) == task_kinds().end())
        t.at("kind").fail("unknown task kind '" + task.kind + "'");
      task.name = t.str_or("name", task.kind + "-" + std::to_string(i));
      task.spec = t.json();
      task.path = t.path();
      sc.tasks.push_back(std::move(task));
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str(), path, seed);
}

LebesgueSpec MeasureTable::lebesgue_from(const Field& f) const {
  LebesgueSpec s;
  s.n = sc_.n;
  s.radial = ov_.radial.value_or(f.integer_or("radial", s.radial));
  s.angular = ov_.angular.value_or(f.integer_or("angular", s.angular));
  s.rho_max = f.number_or("rho_max", s.rho_max);
  s.kappa = f.number_or("kappa", s.kappa);
  s.grade_until = f.number_or("grade_until", s.grade_until);
  s.seed = sc_.seed;
  return s;
}

std::optional<LebesgueSpec> MeasureTable::lebesgue_spec(const std::string& name, const std::string& where) const {
  if (!sc_.measures.contains(name)) throw ScenarioError(where + ": unresolved reference: measure '" + name + "'");
  Field f(sc_.measures[name], "measures." + name);
  if (f.str_or("type", "") != "lebesgue") return std::nullopt;
  return lebesgue_from(f);
}

const QuadMeasure& MeasureTable::get(const std::string& name, const std::string& where) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  if (!sc_.measures.contains(name)) throw ScenarioError(where + ": unresolved reference: measure '" + name + "'");
  if (std::find(building_.begin(), building_.end(), name) != building_.end())
    throw ScenarioError(where + ": measure '" + name + "' refers to itself");
  building_.push_back(name);
  Field f(sc_.measures[name], "measures." + name);
  QuadMeasure m = guarded(f, [&] { return build(f); });
  building_.pop_back();
  return cache_.emplace(name, std::move(m)).first->second;
}

QuadMeasure MeasureTable::build(const Field& f) {
  std::string type = f.at("type").str();
  int n = sc_.n;
  if (type == "lebesgue") return lebesgue(lebesgue_from(f));
  if (type == "empty") return QuadMeasure::empty(n);
  if (type == "density") {
    const QuadMeasure& base = get(f.at("base").str(), f.path() + ".base");
    Density d;
    d.boundary_power = f.number_or("boundary_power", 0.0);
    if (f.has("modulus_of")) {
      d.modulus_of = parse_function(f.at("modulus_of"), sc_);
      d.modulus_power = f.number_or("modulus_power", 1.0);
    }
    return apply_density(base, d);
  }
  if (type == "point_masses") {
    Field ms = f.at("masses");
    std::vector<std::pair<Vec, double>> pts;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      Field m = ms.at(i);
      pts.emplace_back(m.at("at").point(n).vec(), m.at("mass").number());
    }
    return point_masses(n, pts);
  }
  if (type == "pullback") {
    const QuadMeasure& base = get(f.at("base").str(), f.path() + ".base");
    ExponentField p = f.has("exponent") ? parse_exponent(f.at("exponent"), n) : sc_.p;
    PullbackVariant v = guarded(f.at("variant"), [&] { return parse_variant(f.at("variant").str()); });
    WcoSpec first{parse_function(f.at("u"), sc_), parse_map(f.at("phi"), sc_)};
    if (v == PullbackVariant::Plain || v == PullbackVariant::PlainPlus) return pullback_measure(p, first, v, base);
    WcoSpec second{parse_function(f.at("v"), sc_), parse_map(f.at("psi"), sc_)};
    std::optional<double> alpha;
    if (f.has("alpha")) alpha = f.at("alpha").number();
    DiffSpec d = make_diff(first, second, p, alpha);
    return pullback_measure(p, d, v, base, f.boolean_or("swap", false));
  }
  f.at("type").fail("unknown measure type '" + type + "'");
}

}  // namespace varberg
