#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace tgs {

/// Exact arbitrary-precision integer / rational. Every measure, density and
/// bound in this library is one of these; floating point appears only in
/// display columns produced by decimal_string().
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(std::int64_t num, std::int64_t den) { return Rat(Int(num), Int(den)); }
inline Rat make_rat(const Int& num, const Int& den) { return Rat(num, den); }

/// Canonical "p/q" rendering (denominator always present, q > 0, gcd(p,q)=1).
std::string fraction_string(const Rat& r);

/// Parse "p/q" or a bare integer "p".
Rat parse_fraction(const std::string& s);

/// Decimal rendering with `digits` significant digits, round-half-up.
/// Display only — never fed back into arithmetic.
std::string decimal_string(const Rat& r, int digits = 12);

}  // namespace tgs
