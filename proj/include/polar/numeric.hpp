#pragma once

// High-precision floating point for enclosure-level arithmetic (Riesz and
// Gauss potentials, nested-surd nodes, local probes).

#include "polar/exact.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace polar {

// 64 decimal digits, about 212 bits: comfortably past 128-bit targets.
using Float = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<64>>;

inline constexpr int kFloatBits = 212;

Float to_float(const Rational& r);
Float to_float(const SqrtScalar& s);
Float to_float(const Root& r);  // exact value, or the enclosure midpoint
Float to_float(const QuadNumber& q);

// Exact rational value of a float (every finite binary float is rational).
Rational to_rational(const Float& f);

// Simplest rational within 2^-bits of f.
Rational reconstruct_rational(const Float& f, unsigned bits);

Float poly_eval_float(const RatPoly& p, const Float& x);

std::string float_str(const Float& f, int digits = 40);

}  // namespace polar
