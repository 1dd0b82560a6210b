#pragma once

// Textual encodings shared by the CLI and the report writers:
//   polynomial  "c0,c1,...,cd"        (low to high degree)
//   element     "a0,a1,...,a{d-1}"    (power-basis coordinates)
//   digit set   "b;b;...;b"           (semicolon-separated elements)

#include <string>
#include <string_view>
#include <vector>

#include "radixion/algebra.hpp"
#include "radixion/error.hpp"
#include "radixion/integer.hpp"

namespace radixion {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <ExactInteger Int>
std::vector<Int> parse_integer_list(std::string_view text) {
  std::vector<Int> out;
  for (auto part : split(text, ',')) out.push_back(parse_integer<Int>(part));
  return out;
}

template <ExactInteger Int>
MinimalPolynomial<Int> parse_polynomial(std::string_view text) {
  auto coeffs = parse_integer_list<Int>(text);
  return MinimalPolynomial<Int>(std::move(coeffs));
}

/// Parses "a0,...,a{d-1}"; the arity must equal d.
template <ExactInteger Int>
FieldElement<Int> parse_element(std::string_view text, std::size_t d) {
  auto coords = parse_integer_list<Int>(text);
  if (coords.size() != d)
    throw parse_error("element '" + std::string(text) + "' has " + std::to_string(coords.size()) +
                      " coordinates, expected " + std::to_string(d));
  return FieldElement<Int>(std::move(coords));
}

template <ExactInteger Int>
std::vector<FieldElement<Int>> parse_digits(std::string_view text, std::size_t d) {
  std::vector<FieldElement<Int>> digits;
  for (auto part : split(text, ';')) digits.push_back(parse_element<Int>(part, d));
  return digits;
}

template <ExactInteger Int>
std::string format_integers(std::span<const Int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_string(values[i]);
  }
  return out;
}

template <ExactInteger Int>
std::string format_element(const FieldElement<Int>& x) {
  return format_integers<Int>(x.coords());
}

template <ExactInteger Int>
std::string format_polynomial(const MinimalPolynomial<Int>& m) {
  return format_integers<Int>(std::span<const Int>(m.coefficients()));
}

template <ExactInteger Int>
std::string format_digits(const std::vector<FieldElement<Int>>& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ';';
    out += format_element(digits[i]);
  }
  return out;
}

}  // namespace radixion
