#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "varberg/carleson.hpp"
#include "varberg/lattice.hpp"

namespace varberg {

using Json = nlohmann::ordered_json;

// Doubles print with 17 significant digits; non-finite values become the
// strings "inf", "-inf", "nan".
std::string format_double(double x);
std::string dump_json(const Json& j, int indent = 2);

Json to_json(double x);
Json to_json(const Point& z);
Json to_json(const ShellEntry& e);
Json to_json(const Thresholds& t);
Json to_json(const CarlesonReport& r);
Json to_json(const PropertyReport& r);
Json to_json(const DiffDiagnostics& d);
Json lattice_summary(const Lattice& lat);

// CSV: shell_index,one_minus_a,max_ratio,flag
std::string shell_csv(const std::vector<ShellEntry>& shells);
// CSV: index,re_1,im_1,...,re_n,im_n
std::string centers_csv(const Lattice& lat);

// Throws std::runtime_error when the path cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace varberg
