#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varberg/exponent.hpp"
#include "varberg/holo.hpp"
#include "varberg/measure.hpp"
#include "varberg/report.hpp"

namespace varberg {

// Malformed or inconsistent scenario input; the message names the field or symbol.
class ScenarioError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A JSON value together with its location for diagnostics.
class Field {
 public:
  Field(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}
  Field(Json&&, std::string) = delete;

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;
  Field at(const std::string& key) const;
  std::optional<Field> get(const std::string& key) const;
  Field at(std::size_t i) const;
  std::size_t size() const;

  double number() const;
  double number_or(const std::string& key, double fallback) const;
  int integer() const;
  int integer_or(const std::string& key, int fallback) const;
  std::uint64_t u64() const;
  bool boolean() const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::string str() const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  cplx complex() const;                // number or [re, im]
  Vec vec(int n) const;                // list of n complex numbers
  Point point(int n) const;
  std::vector<double> numbers() const;

  [[noreturn]] void fail(const std::string& msg) const;

 private:
  const Json* j_;
  std::string path_;
};

struct Task {
  std::string kind;
  std::string name;
  Json spec;
  std::string path;  // "tasks[i]"
};

struct Scenario {
  std::string name;
  std::string origin;  // file name for diagnostics
  int n = 1;
  std::uint64_t seed = 1;
  ExponentField p;
  std::map<std::string, HoloFunction> functions;
  std::map<std::string, SelfMap> maps;
  Json measures = Json::object();
  double lattice_r = 1.0;
  double lattice_rho_max = 1.0 - 1e-4;
  std::vector<Task> tasks;
};

const std::vector<std::string>& task_kinds();

Scenario parse_scenario(const std::string& text, const std::string& origin, std::optional<std::uint64_t> seed = {});
Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed = {});

// Expression objects, resolved against the scenario's named tables.
HoloFunction parse_function(const Field& f, const Scenario& sc);
SelfMap parse_map(const Field& f, const Scenario& sc);
ExponentField parse_exponent(const Field& f, int n);

struct MeasureOverrides {
  std::optional<int> radial;
  std::optional<int> angular;
};

// Builds named measures on first use.
class MeasureTable {
 public:
  MeasureTable(const Scenario& sc, MeasureOverrides ov) : sc_(sc), ov_(ov) {}
  const QuadMeasure& get(const std::string& name, const std::string& where);
  // Lebesgue spec behind a named measure, if it is one.
  std::optional<LebesgueSpec> lebesgue_spec(const std::string& name, const std::string& where) const;

 private:
  QuadMeasure build(const Field& f);
  LebesgueSpec lebesgue_from(const Field& f) const;
  const Scenario& sc_;
  MeasureOverrides ov_;
  std::map<std::string, QuadMeasure> cache_;
  std::vector<std::string> building_;
};

}  // namespace varberg
