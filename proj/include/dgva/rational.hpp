#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace dgva {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Generalized binomial coefficient: m(m-1)...(m-i+1)/i! for any integer m
// and i >= 0.  Always an integer, returned as Rat for direct arithmetic.
Rat binom(long long m, long long i);

// Same falling-factorial formula with a rational top argument.
Rat rat_binom(const Rat& m, long long i);

// (-1)^e for any (possibly negative) exponent.
inline int sign_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

// Render as "p" or "p/q" with q > 1; deterministic.
std::string rat_str(const Rat& r);

// Parse "p", "-p", "p/q" (q >= 1).  Rejects anything else.
std::optional<Rat> rat_parse(std::string_view s);

} // namespace dgva
