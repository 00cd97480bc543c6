#pragma once

// Potential functions h on [-1, 1] and exact / high-precision accumulation
// of weighted sums  sum_i w_i h(t_i).

#include "polar/exact.hpp"
#include "polar/numeric.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace polar {

struct EvenPolynomialPotential {
    RatPoly h;  // must be even
};
struct PolynomialPotential {
    RatPoly h;
};
struct RieszPotential {
    Rational s;  // h(t) = (2 - 2t)^(-s/2)
};
struct GaussPotential {
    Rational c;  // h(t) = exp(c t)
};

using PotentialSpec = std::variant<EvenPolynomialPotential, PolynomialPotential, RieszPotential, GaussPotential>;

class PoleHit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// "t^2", "poly:c0,c1,...", "even:c0,c1,..." (ascending), "riesz:s", "gauss:c"
PotentialSpec parse_potential(const std::string& text);
std::string potential_label(const PotentialSpec& h);
bool potential_is_exact(const PotentialSpec& h);

struct PotentialValue {
    std::optional<SurdSum> exact;  // polynomial potentials at exact points
    Float value;                   // always present
    Float lo, hi;                  // 128-bit enclosure of value

    std::optional<Rational> exact_rational() const;
    std::string str() const;
};

class PotentialSum {
public:
    explicit PotentialSum(PotentialSpec h);

    void add(const SqrtScalar& t, const Rational& weight = Rational(1));
    void add(const Root& t, const Rational& weight = Rational(1));
    void add_float(const Float& t, const Float& weight);
    PotentialValue result() const;

private:
    Float eval_float(const Float& t) const;
    PotentialSpec h_;
    bool exact_ok_;
    SurdSum exact_;
    Float value_ = 0;
};

// Exact value of a polynomial at a surd as a (possibly two-radicand) sum.
SurdSum poly_eval_surdsum(const RatPoly& p, const SqrtScalar& x);

}  // namespace polar
