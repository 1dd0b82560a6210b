#pragma once

// Report serialization: JSON (nlohmann, insertion-ordered keys), CSV, PGM
// and DOT. Every float goes out with 12 fixed decimals so that identical
// inputs give byte-identical artifacts.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radixion/analysis.hpp"
#include "radixion/carry.hpp"
#include "radixion/encoding.hpp"
#include "radixion/integer.hpp"
#include "radixion/tile.hpp"

namespace radixion {

using Json = nlohmann::ordered_json;

inline std::string fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

/// A float rounded to 12 decimals; non-finite values become strings.
inline Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::abs(x) >= 1e15) return x;
  const double r = std::stod(fixed12(x));
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

namespace detail {

inline std::string trimmed_fixed12(double x) {
  std::string s = fixed12(x);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.push_back('0');
  return s == "-0.0" ? "0.0" : s;
}

inline void write_json(std::string& out, const Json& j, int indent, int level) {
  const auto newline = [&](int l) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * l), ' ');
  };
  if (j.is_object() || j.is_array()) {
    const bool object = j.is_object();
    if (j.empty()) {
      out += object ? "{}" : "[]";
      return;
    }
    out.push_back(object ? '{' : '[');
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out.push_back(',');
      first = false;
      newline(level + 1);
      if (object) {
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
      }
      write_json(out, *it, indent, level + 1);
    }
    newline(level);
    out.push_back(object ? '}' : ']');
  } else if (j.is_number_float()) {
    out += trimmed_fixed12(j.get<double>());
  } else {
    out += j.dump();
  }
}

}  // namespace detail

/// JSON text with every float printed from its 12-decimal form; indent < 0
/// gives one line.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::write_json(out, j, indent, 0);
  return out;
}

template <ExactInteger Int>
Json json_integer(const Int& v) {
  const BigInt b = integer_cast<BigInt>(v);
  if (b >= std::numeric_limits<std::int64_t>::min() && b <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(b);
  return b.str();
}

template <ExactInteger Int>
Json json_element(const FieldElement<Int>& x) {
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(json_integer(c));
  return a;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string weyl_csv_header() { return "lambda,h,filter,count,re_sum,im_sum,normalized\n"; }

inline std::string weyl_csv_row(const WeylRow& r) {
  std::ostringstream os;
  os << r.lambda << ',' << r.h << ',' << to_string(r.filter) << ',' << r.count << ',' << fixed12(r.sum.real()) << ','
     << fixed12(r.sum.imag()) << ',' << fixed12(r.normalized) << '\n';
  return os.str();
}

inline Json weyl_json_row(const WeylRow& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["h"] = r.h;
  j["filter"] = to_string(r.filter);
  j["count"] = r.count;
  j["re_sum"] = json_number(r.sum.real());
  j["im_sum"] = json_number(r.sum.imag());
  j["normalized"] = json_number(r.normalized);
  return j;
}

inline std::string decay_csv_header() { return "lambda,samples,max_log,gamma_emp\n"; }

inline std::string decay_csv_row(const FourierDecayRow& r) {
  std::ostringstream os;
  os << r.lambda << ',' << r.samples << ',' << fixed12(r.max_log) << ',' << fixed12(r.gamma_emp) << '\n';
  return os.str();
}

/// Binary PGM, occupied cells black, top row = largest y.
inline void write_pgm(std::ostream& os, const Raster& r) {
  os << "P5\n# bbox " << fixed12(r.x0) << ' ' << fixed12(r.x1) << ' ' << fixed12(r.y0) << ' ' << fixed12(r.y1) << '\n'
     << "# system " << r.system << '\n'
     << r.width << ' ' << r.height << "\n255\n";
  std::string line(r.width, '\0');
  for (std::size_t row = r.height; row-- > 0;) {
    for (std::size_t col = 0; col < r.width; ++col) line[col] = r.at(col, row) ? '\0' : static_cast<char>(255);
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

inline void write_cloud_csv(std::ostream& os, const TileCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << fixed12(p[k]);
    os << '\n';
  }
}

/// Digraph of the carry automaton; parallel edges are merged with their
/// digit indices joined by commas.
template <ExactInteger Int>
void write_dot(std::ostream& os, const CarryAutomaton<Int>& aut) {
  os << "digraph carry {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < aut.size(); ++s)
    os << "  s" << s << " [label=\"(" << format_element(aut.carry_set().states[s]) << ")\"" << (s == 0 ? ", shape=doublecircle" : "")
       << "];\n";
  for (std::size_t s = 0; s < aut.size(); ++s) {
    std::map<std::size_t, std::string> labels;
    for (std::size_t a = 0; a < aut.digit_count(); ++a) {
      auto& l = labels[aut.transition(s, a)];
      l += (l.empty() ? "" : ",") + std::to_string(a);
    }
    for (const auto& [t, l] : labels) os << "  s" << s << " -> s" << t << " [label=\"" << l << "\"];\n";
  }
  os << "}\n";
}

}  // namespace radixion
