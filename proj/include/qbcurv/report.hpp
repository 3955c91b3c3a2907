#pragma once

// JSON report helpers. Rationals are "num/den" strings (integers print bare),
// floats are written with 17 significant digits.

#include "scalar.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

namespace qbcurv {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& q) { return to_string(q); }

template <class Range>
Json rational_array(const Range& r) {
  Json a = Json::array();
  for (const auto& q : r) a.push_back(to_string(q));
  return a;
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(k).dump() << (indent > 0 ? ": " : ":");
        write_json(os, v, indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      os << '[' << (flat ? "" : nl);
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',' << (flat ? (indent > 0 ? " " : "") : nl);
        first = false;
        if (!flat) os << pad;
        write_json(os, v, indent, depth + 1);
      }
      os << (flat ? "" : nl) << (flat ? "" : close) << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Serializes with floats in %.17g; everything else as nlohmann would.
inline void write_json(std::ostream& os, const Json& j, int indent = 2) {
  detail::write_json(os, j, indent, 0);
  os << '\n';
}

inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

}  // namespace qbcurv
