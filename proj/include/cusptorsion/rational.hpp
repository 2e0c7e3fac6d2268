#ifndef CUSPTORSION_RATIONAL_HPP
#define CUSPTORSION_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "cusptorsion/errors.hpp"

namespace cusptorsion {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

/// True iff r is an odd multiple of 1/2.
inline bool is_half_integer(const Rat& r) { return rat_den(r) == 2; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline long double to_long_double(const Rat& r) {
  return rat_num(r).convert_to<long double>() / rat_den(r).convert_to<long double>();
}

inline double to_double(const Int& v) { return v.convert_to<double>(); }

inline long double to_long_double(const Int& v) { return v.convert_to<long double>(); }

/// Parses "p", "-p" or "p/q" with optional surrounding whitespace.
inline Rat parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ValidationError("rational literal with zero denominator: " + text);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("malformed rational literal: " + text);
  }
}

/// Formats as "p" or "p/q".
inline std::string format_rat(const Rat& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) s += "/" + rat_den(r).str();
  return s;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_RATIONAL_HPP
