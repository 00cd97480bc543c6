#include "polar/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace polar {

namespace {

// Generalized binomial C(x, j) for rational x and integer j >= 0.
Rational binom(const Rational& x, int j) {
    Rational r(1);
    for (int i = 0; i < j; ++i) r = r * (x - Rational(i)) / Rational(i + 1);
    return r;
}

// P_k^(alpha,beta)(t) = sum_s C(k+alpha, k-s) C(k+beta, s) ((t-1)/2)^s ((t+1)/2)^(k-s)
RatPoly jacobi(const Rational& alpha, const Rational& beta, int k) {
    const RatPoly tm = RatPoly({Rational(-1, 2), Rational(1, 2)});
    const RatPoly tp = RatPoly({Rational(1, 2), Rational(1, 2)});
    RatPoly sum;
    for (int s = 0; s <= k; ++s) {
        RatPoly term = RatPoly::constant(binom(Rational(k) + alpha, k - s) * binom(Rational(k) + beta, s));
        for (int i = 0; i < s; ++i) term = term * tm;
        for (int i = 0; i < k - s; ++i) term = term * tp;
        sum = sum + term;
    }
    return sum;
}

struct PolyCache {
    std::shared_mutex mutex;
    std::map<std::tuple<int, int, int, int>, RatPoly> table;
};

PolyCache& poly_cache() {
    static PolyCache cache;
    return cache;
}

template <typename T, typename IsZero, typename Magnitude>
std::vector<T> solve_linear(std::vector<std::vector<T>> a, std::vector<T> rhs, IsZero is_zero, Magnitude better) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r) {
            if (is_zero(a[r][col])) continue;
            if (piv == n || better(a[r][col], a[piv][col])) piv = r;
        }
        if (piv == n) throw std::runtime_error("quadrature moment system is singular");
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            T f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

// Roots of F = A + sqrt(m) B (m square-free, B may be zero): roots of the
// norm A^2 - m B^2 at which A and B have opposite signs.
std::vector<Root> field_poly_roots(const RatPoly& A, const RatPoly& B, const BigInt& m) {
    if (B.is_zero() || m == 1) return isolate_roots(m == 1 ? A + B : A);
    RatPoly norm = A * A - Rational(m) * (B * B);
    std::vector<Root> out;
    for (const Root& r : isolate_roots(norm)) {
        int sa, sb;
        if (r.exact) {
            BigInt field = r.exact->is_rational() ? BigInt(1) : r.exact->radicand();
            QuadNumber x = QuadNumber::from(*r.exact, field);
            sa = poly_eval_quad(A, x).sign();
            sb = poly_eval_quad(B, x).sign();
        } else {
            Float x = to_float(r);
            Float va = poly_eval_float(A, x), vb = poly_eval_float(B, x);
            sa = va > 0 ? 1 : (va < 0 ? -1 : 0);
            sb = vb > 0 ? 1 : (vb < 0 ? -1 : 0);
        }
        if ((sa == 0 && sb == 0) || (sa != 0 && sa == -sb)) out.push_back(r);
    }
    return out;
}

bool all_exact(const std::vector<Root>& nodes) {
    return std::all_of(nodes.begin(), nodes.end(), [](const Root& r) { return r.is_exact(); });
}

// Common radicand of the irrational exact nodes, or nullopt if they differ.
std::optional<BigInt> common_radicand(const std::vector<Root>& nodes) {
    BigInt m = 1;
    for (const auto& r : nodes) {
        if (r.exact->is_rational()) continue;
        if (m == 1) m = r.exact->radicand();
        else if (m != r.exact->radicand()) return std::nullopt;
    }
    return m;
}

bool symmetric(const std::vector<Root>& nodes) {
    for (const auto& r : nodes) {
        SqrtScalar neg = -*r.exact;
        if (std::none_of(nodes.begin(), nodes.end(), [&](const Root& o) { return *o.exact == neg; })) return false;
    }
    return true;
}

// Weights for `nodes` matching the measure moments of degree < #nodes,
// after removing the contribution of a fixed node 1 with weight `at_one`.
// Sets `numeric` when the solve could not be done in exact arithmetic, and
// `approximate` when some weight is not a recognizable rational.
std::vector<Rational> solve_weights(const std::vector<Root>& nodes, int n, const Rational& at_one, bool& numeric,
                                    bool& approximate) {
    const std::size_t count = nodes.size();
    numeric = false;
    approximate = false;
    if (all_exact(nodes) && symmetric(nodes) && at_one.is_zero()) {
        // +-pairs share a weight: even moments in the class squares stay rational.
        std::vector<Rational> squares;
        for (const auto& r : nodes) {
            Rational sq = r.exact->square();
            if (std::find(squares.begin(), squares.end(), sq) == squares.end()) squares.push_back(sq);
        }
        const std::size_t classes = squares.size();
        std::vector<std::vector<Rational>> a(classes, std::vector<Rational>(classes));
        std::vector<Rational> rhs(classes);
        for (std::size_t j = 0; j < classes; ++j) {
            rhs[j] = measure_moment(n, static_cast<int>(2 * j));
            for (std::size_t c = 0; c < classes; ++c) {
                int mult = squares[c].is_zero() ? 1 : 2;
                a[j][c] = Rational(mult) * pow(squares[c], static_cast<unsigned>(j));
            }
        }
        auto w = solve_linear(a, rhs, [](const Rational& x) { return x.is_zero(); },
                              [](const Rational& x, const Rational& y) { return abs(x) > abs(y); });
        std::vector<Rational> out;
        for (const auto& r : nodes) {
            auto it = std::find(squares.begin(), squares.end(), r.exact->square());
            out.push_back(w[static_cast<std::size_t>(it - squares.begin())]);
        }
        return out;
    }
    if (all_exact(nodes)) {
        if (auto m = common_radicand(nodes)) {
            std::vector<std::vector<QuadNumber>> a(count, std::vector<QuadNumber>(count));
            std::vector<QuadNumber> rhs(count);
            for (std::size_t i = 0; i < count; ++i) {
                QuadNumber x = QuadNumber::from(*nodes[i].exact, *m);
                QuadNumber p(Rational(1));
                for (std::size_t j = 0; j < count; ++j) {
                    a[j][i] = p;
                    p = p * x;
                }
            }
            for (std::size_t j = 0; j < count; ++j) rhs[j] = QuadNumber(measure_moment(n, static_cast<int>(j)) - at_one);
            auto w = solve_linear(a, rhs, [](const QuadNumber& x) { return x.is_zero(); },
                                  [](const QuadNumber&, const QuadNumber&) { return false; });
            std::vector<Rational> out;
            for (const auto& x : w) {
                if (!x.is_rational()) throw IrrationalWeight("quadrature weight is irrational: " + x.str());
                out.push_back(x.rational_part());
            }
            return out;
        }
    }
    numeric = true;
    std::vector<std::vector<Float>> a(count, std::vector<Float>(count));
    std::vector<Float> rhs(count);
    for (std::size_t i = 0; i < count; ++i) {
        Float x = to_float(nodes[i]), p = 1;
        for (std::size_t j = 0; j < count; ++j) {
            a[j][i] = p;
            p *= x;
        }
    }
    for (std::size_t j = 0; j < count; ++j) rhs[j] = to_float(measure_moment(n, static_cast<int>(j)) - at_one);
    auto w = solve_linear(a, rhs, [](const Float& x) { return x == 0; },
                          [](const Float& x, const Float& y) { return abs(x) > abs(y); });
    // Nodes carry 128-bit enclosures. A weight is taken as rational when the
    // simplest rational within 2^-118 has a small denominator (an irrational
    // weight would need about 59 bits); otherwise the float value is kept.
    std::vector<Rational> out;
    for (const auto& x : w) {
        Rational r = reconstruct_rational(x, 118);
        if (mpz_sizeinbase(r.den().get_mpz_t(), 2) > 40) {
            r = to_rational(x);
            approximate = true;
        }
        out.push_back(r);
    }
    return out;
}

void sort_nodes(std::vector<Root>& nodes) {
    std::sort(nodes.begin(), nodes.end(), [](const Root& a, const Root& b) { return a.lo < b.lo; });
}

// Residual sum rho_i P_ell(alpha_i) (+ P_ell(1)/N) - delta_ell0.
bool residual_vanishes(const QuadratureRule& rule, int ell) {
    RatPoly p = gegenbauer(rule.dim, ell);
    Rational target = ell == 0 ? Rational(1) : Rational(0);
    if (all_exact(rule.nodes)) {
        SurdSum acc;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            SurdSum v = poly_eval_surdsum(p, *rule.nodes[i].exact);
            for (const auto& [m, c] : v.terms()) acc.add(SqrtScalar::surd(c * rule.weights[i], m));
        }
        if (rule.weight_at_one) acc.add(SqrtScalar(*rule.weight_at_one * p(Rational(1))));
        acc.add(SqrtScalar(-target));
        return acc.is_zero();
    }
    Float acc = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += to_float(rule.weights[i]) * poly_eval_float(p, to_float(rule.nodes[i]));
    if (rule.weight_at_one) acc += to_float(*rule.weight_at_one * p(Rational(1)));
    acc -= to_float(target);
    return abs(acc) < pow(Float(2), -100);
}

void verify_exactness(QuadratureRule& rule, const std::vector<int>& degrees) {
    for (int ell : degrees) {
        if (!residual_vanishes(rule, ell))
            throw ExactnessFailure(rule.label() + " is not exact on degree " + std::to_string(ell));
        rule.exactness.push_back(ell);
    }
}

void assign_weights(QuadratureRule& rule, const Rational& at_one, bool drop_zero) {
    bool numeric = false, approximate = false;
    auto w = solve_weights(rule.nodes, rule.dim, at_one, numeric, approximate);
    rule.weights_approximate = approximate;
    std::vector<Root> kept;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].sign() < 0 || (w[i].is_zero() && !drop_zero))
            throw NegativeWeight(rule.label() + ": weight " + w[i].str() + " at node " + rule.nodes[i].str());
        if (w[i].is_zero()) {
            rule.dropped_nodes.push_back(rule.nodes[i]);
            continue;
        }
        kept.push_back(rule.nodes[i]);
        rule.weights.push_back(w[i]);
    }
    rule.nodes = std::move(kept);
    rule.enclosure_fallback = !all_exact(rule.nodes);
}

std::vector<int> range_degrees(int lo, int hi) {
    std::vector<int> d;
    for (int i = lo; i <= hi; ++i) d.push_back(i);
    return d;
}

}  // namespace

StrengthSplit split_strength(int tau) {
    if (tau < 1) throw std::invalid_argument("strength must be >= 1");
    return {(tau + 1) / 2, (tau + 1) % 2};
}

RatPoly adjacent_jacobi(int n, int a, int b, int k) {
    if (n < 2 || k < 0 || a < 0 || a > 1 || b < 0 || b > 1) throw std::invalid_argument("adjacent_jacobi: bad parameters");
    auto key = std::make_tuple(n, a, b, k);
    auto& cache = poly_cache();
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.table.find(key);
        if (it != cache.table.end()) return it->second;
    }
    Rational base(BigInt(n - 3), BigInt(2));
    Rational alpha = base + Rational(a), beta = base + Rational(b);
    RatPoly p = jacobi(alpha, beta, k);
    Rational at_one = p(Rational(1));
    p = (Rational(1) / at_one) * p;
    std::unique_lock lock(cache.mutex);
    cache.table.emplace(key, p);
    return p;
}

RatPoly gegenbauer(int n, int ell) { return adjacent_jacobi(n, 0, 0, ell); }

Rational measure_moment(int n, int m) {
    if (m < 0) throw std::invalid_argument("measure_moment: m < 0");
    if (m % 2) return Rational(0);
    Rational r(1);
    for (int j = 1; j <= m / 2; ++j) r = r * Rational(2 * j - 1) / Rational(n + 2 * j - 2);
    return r;
}

Rational integrate(const RatPoly& f, int n) {
    Rational s;
    for (int i = 0; i <= f.degree(); ++i) s += f.coefficient(static_cast<unsigned>(i)) * measure_moment(n, i);
    return s;
}

std::vector<Rational> gegenbauer_coefficients(const RatPoly& f, int n) {
    std::vector<Rational> out;
    for (int ell = 0; ell <= f.degree(); ++ell) {
        RatPoly p = gegenbauer(n, ell);
        out.push_back(integrate(f * p, n) / integrate(p * p, n));
    }
    return out;
}

BigInt dgs_bound(int n, int tau) {
    auto [k, eps] = split_strength(tau);
    BigInt a, b;
    mpz_bin_uiui(a.get_mpz_t(), static_cast<unsigned long>(n + k - 2 + eps), static_cast<unsigned long>(n - 1));
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + k - 2), static_cast<unsigned long>(n - 1));
    return a + b;
}

std::string QuadratureRule::label() const {
    switch (kind) {
        case RuleKind::PULB: return "PULB(" + std::to_string(strength) + ")";
        case RuleKind::PULB2: return "PULB2(" + std::to_string(k) + ")";
        case RuleKind::LEV: return "LEV(" + std::to_string(strength) + "," + std::to_string(code_size.value_or(0)) + ")";
    }
    return "?";
}

Rational QuadratureRule::weight_sum() const {
    Rational s = weight_at_one.value_or(Rational(0));
    for (const auto& w : weights) s += w;
    return s;
}

std::vector<Rational> QuadratureRule::scaled_weights(long N) const {
    std::vector<Rational> out;
    for (const auto& w : weights) out.push_back(w * Rational(N));
    return out;
}

int QuadratureRule::node_index(const SqrtScalar& t) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].exact && *nodes[i].exact == t) return static_cast<int>(i);
    return -1;
}

bool QuadratureRule::has_node(const SqrtScalar& t) const { return node_index(t) >= 0; }

QuadratureRule pulb_rule(int n, int tau) {
    if (n < 2) throw std::invalid_argument("pulb_rule: n must be >= 2");
    auto [k, eps] = split_strength(tau);
    QuadratureRule rule;
    rule.kind = RuleKind::PULB;
    rule.dim = n;
    rule.strength = tau;
    rule.k = k;
    rule.eps = eps;
    RatPoly node_poly = adjacent_jacobi(n, 0, eps, k);
    if (eps) node_poly = node_poly * RatPoly({Rational(1), Rational(1)});
    rule.nodes = isolate_roots(node_poly);
    sort_nodes(rule.nodes);
    assign_weights(rule, Rational(0), false);
    verify_exactness(rule, range_degrees(0, tau));
    return rule;
}

QuadratureRule pulb2_rule(int n, int k) {
    if (n <= 2 || k < 1) throw std::invalid_argument("pulb2_rule: need n > 2 and k >= 1");
    QuadratureRule rule;
    rule.kind = RuleKind::PULB2;
    rule.dim = n;
    rule.k = k;
    rule.strength = 2 * k + 2;
    const Rational N(n), K(k);
    Rational c1 = (K + 1) * (K + 1) * (N - 2) * (N + 2 * K - 4) / ((N + K - 2) * (N + K - 3) * (N + 4 * K));
    Rational c0 = K * (K + 1) * (N + 2 * K - 4) / ((N + K - 2) * (N + K - 3) * (N + 2 * K));
    // b = (-c1 + sqrt(c1^2 + 4 c0)) / 2, the positive root of X^2 + c1 X - c0.
    SqrtScalar root = SqrtScalar::from_signed_square(1, c1 * c1 + Rational(4) * c0);
    QuadNumber b = root.is_rational()
                       ? QuadNumber((root.as_rational() - c1) / Rational(2))
                       : QuadNumber(-c1 / Rational(2), root.coefficient() / Rational(2), root.radicand());
    rule.b = b;
    RatPoly upper = gegenbauer(n, k + 1), lower = gegenbauer(n, k - 1);
    RatPoly A = upper + b.rational_part() * lower;
    RatPoly B = b.surd_part() * lower;
    rule.nodes = field_poly_roots(A, B, b.is_rational() ? BigInt(1) : b.radicand());
    sort_nodes(rule.nodes);
    if (static_cast<int>(rule.nodes.size()) != k + 1)
        throw ExactnessFailure("pulb2_rule: expected k + 1 real nodes");
    assign_weights(rule, Rational(0), false);
    std::vector<int> degrees = range_degrees(0, 2 * k - 1);
    degrees.push_back(2 * k + 1);
    degrees.push_back(2 * k + 2);
    verify_exactness(rule, degrees);
    if (!residual_vanishes(rule, 2 * k)) rule.non_exact.push_back(2 * k);
    return rule;
}

QuadratureRule lev_rule_from_s(int n, int tau, const SqrtScalar& s, long N) {
    if (n < 2 || N < 1) throw std::invalid_argument("lev_rule_from_s: bad parameters");
    auto [k, eps] = split_strength(tau);
    QuadratureRule rule;
    rule.kind = RuleKind::LEV;
    rule.dim = n;
    rule.strength = tau;
    rule.k = k;
    rule.eps = eps;
    rule.s = s;
    rule.code_size = N;
    rule.weight_at_one = Rational(BigInt(1), BigInt(N));

    BigInt m = s.is_rational() ? BigInt(1) : s.radicand();
    RatPoly pk = adjacent_jacobi(n, 1, eps, k), pk1 = adjacent_jacobi(n, 1, eps, k - 1);
    QuadNumber xs = QuadNumber::from(s, m);
    QuadNumber at_k = poly_eval_quad(pk, xs), at_k1 = poly_eval_quad(pk1, xs);
    // F(t) = P_k(t) P_{k-1}(s) - P_k(s) P_{k-1}(t) = A(t) + sqrt(m) B(t)
    RatPoly A = at_k1.rational_part() * pk - at_k.rational_part() * pk1;
    RatPoly B = at_k1.surd_part() * pk - at_k.surd_part() * pk1;
    std::vector<Root> nodes = field_poly_roots(A, B, m);
    for (const auto& r : nodes)
        if (r.hi < Rational(-1) || r.lo >= Rational(1))
            throw ExactnessFailure("lev_rule_from_s: node " + r.str() + " outside [-1, 1)");
    if (eps == 1 && std::none_of(nodes.begin(), nodes.end(), [](const Root& r) { return r.exact && *r.exact == SqrtScalar(-1); })) {
        Root minus_one;
        minus_one.exact = SqrtScalar(-1);
        minus_one.lo = minus_one.hi = Rational(-1);
        nodes.push_back(minus_one);
    }
    rule.nodes = std::move(nodes);
    sort_nodes(rule.nodes);
    if (!rule.has_node(s)) throw ExactnessFailure("lev_rule_from_s: s is not a node of the Levenshtein polynomial");
    assign_weights(rule, *rule.weight_at_one, true);
    verify_exactness(rule, range_degrees(0, tau));
    return rule;
}

bool rule_exact_on(const QuadratureRule& rule, int ell) { return residual_vanishes(rule, ell); }

PotentialValue bound_value(const QuadratureRule& rule, long N, const PotentialSpec& h) {
    Rational scale = rule.kind == RuleKind::LEV ? Rational(N) * Rational(N) : Rational(N);
    PotentialSum sum(h);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum.add(rule.nodes[i], scale * rule.weights[i]);
    return sum.result();
}

}  // namespace polar
