#pragma once

// Gegenbauer and adjacent Jacobi polynomials, moments of the measure
// d mu_n(t) ~ (1 - t^2)^((n-3)/2) dt, and the three quadrature families used
// in the polarization / energy bounds:
//   PULB   nodes = zeros of (1 + t)^eps P_k^(0,eps),       tau = 2k - 1 + eps
//   PULB2  nodes = zeros of P_{k+1} + b P_{k-1}, b > 0 from a quadratic
//   LEV    Radau/Lobatto rule with node 1 of weight 1/N and a given largest
//          inner node s

#include "polar/exact.hpp"
#include "polar/numeric.hpp"
#include "polar/potential.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

RatPoly gegenbauer(int n, int ell);
RatPoly adjacent_jacobi(int n, int a, int b, int k);
Rational measure_moment(int n, int m);
Rational integrate(const RatPoly& f, int n);
std::vector<Rational> gegenbauer_coefficients(const RatPoly& f, int n);
BigInt dgs_bound(int n, int tau);

// tau = 2k - 1 + eps
struct StrengthSplit {
    int k;
    int eps;
};
StrengthSplit split_strength(int tau);

enum class RuleKind { PULB, PULB2, LEV };

class NegativeWeight : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExactnessFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IrrationalWeight : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureRule {
    RuleKind kind = RuleKind::PULB;
    int dim = 0;
    int strength = 0;  // tau for PULB / LEV, 2k + 2 for PULB2
    int k = 0;
    int eps = 0;
    std::optional<QuadNumber> b;       // PULB2 parameter
    std::optional<SqrtScalar> s;       // LEV largest inner node
    std::optional<long> code_size;     // LEV N
    std::vector<Root> nodes;           // ascending, excluding the LEV node 1
    std::vector<Rational> weights;     // aligned with nodes
    bool weights_approximate = false;  // some weight is a 212-bit float, not exact
    std::optional<Rational> weight_at_one;
    std::vector<int> exactness;        // verified degrees, 0 included
    std::vector<int> non_exact;        // checked degrees where the rule fails
    bool enclosure_fallback = false;   // some node is only an enclosure
    std::vector<Root> dropped_nodes;   // zero-weight nodes removed

    std::string label() const;  // "PULB(7)", "PULB2(4)", "LEV(7,4600)"
    Rational weight_sum() const;  // includes weight_at_one
    // N * rho_i, required to be integers when matched against a code.
    std::vector<Rational> scaled_weights(long N) const;
    bool has_node(const SqrtScalar& t) const;
    int node_index(const SqrtScalar& t) const;  // -1 if absent (exact nodes only)
};

QuadratureRule pulb_rule(int n, int tau);
QuadratureRule pulb2_rule(int n, int k);
QuadratureRule lev_rule_from_s(int n, int tau, const SqrtScalar& s, long N);

// Exact (or enclosure-level) check of sum rho_i P_ell(alpha_i) (+ 1/N) = delta_ell0.
bool rule_exact_on(const QuadratureRule& rule, int ell);

// N * sum rho_i h(alpha_i) for PULB kinds, N^2 * sum rho_i h(alpha_i) for LEV.
PotentialValue bound_value(const QuadratureRule& rule, long N, const PotentialSpec& h);

}  // namespace polar
