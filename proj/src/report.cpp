#include "varberg/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace varberg {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void put_string(std::ostringstream& os, const std::string& s) { os << Json(s).dump(); }

void walk(std::ostringstream& os, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        put_string(os, it.key());
        os << (indent < 0 ? ":" : ": ");
        walk(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        walk(os, v, indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      double x = j.get<double>();
      if (std::isfinite(x))
        os << format_double(x);
      else
        put_string(os, format_double(x));
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  walk(os, j, indent, 0);
  os << '\n';
  return os.str();
}

Json to_json(double x) { return Json(x); }

Json to_json(const Point& z) {
  Json a = Json::array();
  for (int i = 0; i < z.dim(); ++i) a.push_back(Json::array({z[i].real(), z[i].imag()}));
  return a;
}

Json to_json(const ShellEntry& e) {
  return Json{{"shell_index", e.shell},
              {"one_minus_a", e.one_minus_a},
              {"max_ratio", e.max_ratio},
              {"count", e.count},
              {"flag", e.flag}};
}

Json to_json(const Thresholds& t) {
  return Json{{"divergence_factor", t.divergence_factor}, {"decay_factor", t.decay_factor}};
}

namespace {

Json shells_json(const std::vector<ShellEntry>& shells) {
  Json a = Json::array();
  for (const auto& e : shells) a.push_back(to_json(e));
  return a;
}

}  // namespace

Json to_json(const CarlesonReport& r) {
  Json j;
  j["mode"] = r.mode;
  j["measure"] = r.measure;
  j["constant"] = r.constant;
  j["argmax_center"] = to_json(r.argmax_center);
  j["r"] = r.r;
  j["beta"] = r.beta;
  j["rho_max"] = r.rho_max;
  j["centers"] = r.centers;
  j["divergence_flag"] = r.divergence_flag;
  j["sentinel"] = r.sentinel;
  j["compact"] = r.compact;
  j["last_over_first"] = r.last_over_first;
  j["last_over_peak"] = r.last_over_peak;
  j["thresholds"] = to_json(r.thresholds);
  j["shell_profile"] = shells_json(r.shell_profile);
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["name"] = r.name;
  j["samples"] = r.samples;
  j["observed_bound"] = r.observed_bound;
  j["asserted_bound"] = r.asserted_bound ? Json(*r.asserted_bound) : Json(nullptr);
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  j["divergence_flag"] = r.divergence_flag;
  Json m = Json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  j["metrics"] = m;
  j["shell_profile"] = shells_json(r.shell_profile);
  return j;
}

Json to_json(const DiffDiagnostics& d) {
  Json j;
  j["alpha"] = d.alpha;
  j["bounded_consistent"] = d.bounded_consistent;
  Json a = Json::array();
  for (std::size_t i = 0; i < d.reports.size(); ++i) {
    Json e = to_json(d.reports[i]);
    e["name"] = d.names[i];
    e["zero_measure"] = static_cast<bool>(d.zero_measure[i]);
    a.push_back(e);
  }
  j["measures"] = a;
  return j;
}

Json lattice_summary(const Lattice& lat) {
  return Json{{"n", lat.n},
              {"r", lat.r},
              {"rho_max", lat.coverage_radius},
              {"centers", lat.centers.size()},
              {"candidates", lat.candidates},
              {"overlap_bound", lat.overlap_bound},
              {"overlap_probe_radius", lat.overlap_probe_radius},
              {"overlap_probes", lat.overlap_probes}};
}

std::string shell_csv(const std::vector<ShellEntry>& shells) {
  std::ostringstream os;
  os << "shell_index,one_minus_a,max_ratio,flag\n";
  for (const auto& e : shells)
    os << e.shell << ',' << format_double(e.one_minus_a) << ',' << format_double(e.max_ratio) << ','
       << (e.flag ? 1 : 0) << '\n';
  return os.str();
}

std::string centers_csv(const Lattice& lat) {
  std::ostringstream os;
  os << "index";
  for (int i = 1; i <= lat.n; ++i) os << ",re_" << i << ",im_" << i;
  os << '\n';
  for (std::size_t k = 0; k < lat.centers.size(); ++k) {
    os << k;
    for (int i = 0; i < lat.n; ++i)
      os << ',' << format_double(lat.centers[k][i].real()) << ',' << format_double(lat.centers[k][i].imag());
    os << '\n';
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace varberg
