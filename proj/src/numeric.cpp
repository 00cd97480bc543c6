#include "polar/numeric.hpp"

#include <mpfr.h>

#include <sstream>

namespace polar {

Float to_float(const Rational& r) {
    Float f;
    mpfr_set_q(f.backend().data(), r.mpq().get_mpq_t(), MPFR_RNDN);
    return f;
}

Float to_float(const SqrtScalar& s) {
    if (s.sign() == 0) return Float(0);
    Float v = to_float(s.coefficient()) * sqrt(to_float(Rational(s.radicand())));
    return s.sign() < 0 ? Float(-v) : v;
}

Float to_float(const Root& r) { return r.exact ? to_float(*r.exact) : to_float(r.midpoint()); }

Float to_float(const QuadNumber& q) {
    return to_float(q.rational_part()) + to_float(q.surd_part()) * sqrt(to_float(Rational(q.radicand())));
}

Rational to_rational(const Float& f) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.backend().data());
    return Rational(q);
}

Rational reconstruct_rational(const Float& f, unsigned bits) {
    Rational center = to_rational(f);
    Rational eps(BigInt(1), BigInt(BigInt(1) << bits));
    return simplest_rational_between(center - eps, center + eps);
}

Float poly_eval_float(const RatPoly& p, const Float& x) {
    Float acc = 0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_float(*it);
    return acc;
}

std::string float_str(const Float& f, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << f;
    return os.str();
}

}  // namespace polar
