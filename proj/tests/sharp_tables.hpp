#pragma once

// Golden data for the sharp codes: polarization rules (nodes with N-scaled
// weights) and energy rules (inner products from a code point with their
// multiplicities). Shared by the unit tests and the acceptance binary.

#include "polar/numeric.hpp"
#include "polar/quadrature.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace golden {

using polar::Float;
using polar::Rational;
using polar::SqrtScalar;

struct Node {
    std::optional<SqrtScalar> exact;  // absent for nested radicals / cosines
    Float value;
    long count = 0;
};

inline Node exact_node(const SqrtScalar& s, long count) { return {s, polar::to_float(s), count}; }
inline Node float_node(const Float& v, long count) { return {std::nullopt, v, count}; }

inline Rational q(long a, long b = 1) { return Rational(polar::BigInt(a), polar::BigInt(b)); }
inline SqrtScalar root_of(long num, long den, long m) { return SqrtScalar::surd(q(num, den), polar::BigInt(m)); }
// +-1/sqrt(m)
inline SqrtScalar inv_sqrt(int sign, long m) { return SqrtScalar::from_signed_square(sign, q(1, m)); }

inline Float pi() { return boost::multiprecision::acos(Float(-1)); }

struct PolarizationRow {
    std::string name;
    int dim = 0;
    long size = 0;
    int tau = 0;
    bool skip_rule = false;  // PULB2 with k = nodes - 1
    int pulb2_k = 0;
    std::vector<Node> nodes;  // ascending
};

struct EnergyRow {
    std::string name;
    int dim = 0;
    long size = 0;
    int tau = 0;
    SqrtScalar s;             // largest inner product below 1
    std::vector<Node> nodes;  // ascending, below 1
};

inline std::vector<Node> symmetric(const std::vector<std::pair<SqrtScalar, long>>& positive, std::optional<long> zero) {
    std::vector<Node> out;
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.push_back(exact_node(-it->first, it->second));
    if (zero) out.push_back(exact_node(q(0), *zero));
    for (const auto& [s, n] : positive) out.push_back(exact_node(s, n));
    return out;
}

inline std::vector<PolarizationRow> polarization_rows() {
    std::vector<PolarizationRow> rows;
    auto add = [&](std::string name, int n, long N, int tau, std::vector<Node> nodes) {
        rows.push_back({std::move(name), n, N, tau, false, 0, std::move(nodes)});
    };
    auto add_skip = [&](std::string name, int n, long N, int tau, int k, std::vector<Node> nodes) {
        rows.push_back({std::move(name), n, N, tau, true, k, std::move(nodes)});
    };
    // Regular polygons: even N at cos((2j-1) pi / N); odd N, seen from the
    // antipode of a vertex, at -1 and -cos(2 j pi / N).
    for (long N : {4L, 6L, 8L, 10L}) {
        std::vector<Node> nodes;
        for (long j = N / 2; j >= 1; --j) {
            Float c = boost::multiprecision::cos((2 * j - 1) * pi() / N);
            nodes.push_back(float_node(c, 2));
        }
        std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.value < b.value; });
        add("polygon-" + std::to_string(N), 2, N, static_cast<int>(N - 1), nodes);
    }
    for (long N : {3L, 5L, 7L}) {
        std::vector<Node> nodes = {exact_node(q(-1), 1)};
        for (long j = 1; j <= N / 2; ++j) nodes.push_back(float_node(-boost::multiprecision::cos(2 * j * pi() / N), 2));
        std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.value < b.value; });
        add("polygon-" + std::to_string(N), 2, N, static_cast<int>(N - 1), nodes);
    }
    for (int n : {2, 3, 4, 5, 6, 7, 8, 21, 22, 23, 24}) {
        for (long N : std::set<long>{2L, static_cast<long>(n)})
            add("design-1-" + std::to_string(n) + "-" + std::to_string(N), n, N, 1, {exact_node(q(0), N)});
        add("simplex-" + std::to_string(n), n, n + 1, 2, {exact_node(q(-1), 1), exact_node(q(1, n), n)});
        add("cross-polytope-" + std::to_string(n), n, 2 * n, 3, symmetric({{inv_sqrt(1, n), n}}, std::nullopt));
    }
    {
        // Icosahedron: +-sqrt(1 +- 2/sqrt5)/sqrt3, three each.
        using boost::multiprecision::sqrt;
        Float r5 = sqrt(Float(5)), r3 = sqrt(Float(3));
        Float a = sqrt(1 + 2 / r5) / r3, b = sqrt(1 - 2 / r5) / r3;
        add_skip("icosahedron", 3, 12, 5, 3, {float_node(-a, 3), float_node(-b, 3), float_node(b, 3), float_node(a, 3)});
    }
    add("clebsch-16", 5, 16, 3, symmetric({{inv_sqrt(1, 5), 8}}, std::nullopt));
    add("schlafli-27", 6, 27, 4, {exact_node(q(-1), 1), exact_node(q(-1, 4), 16), exact_node(q(1, 2), 10)});
    add("gosset-56", 7, 56, 5, symmetric({{inv_sqrt(1, 3), 12}}, 32));
    add_skip("e8-roots-240", 8, 240, 7, 4, symmetric({{root_of(1, 4, 2), 64}, {root_of(1, 2, 2), 14}}, 84));
    add("code-112", 21, 112, 3, symmetric({{inv_sqrt(1, 21), 56}}, std::nullopt));
    add("code-162", 21, 162, 3, symmetric({{inv_sqrt(1, 21), 81}}, std::nullopt));
    add("higman-sims-100", 22, 100, 3, symmetric({{inv_sqrt(1, 22), 50}}, std::nullopt));
    add("mclaughlin-275", 22, 275, 4, {exact_node(q(-1), 1), exact_node(q(-1, 6), 162), exact_node(q(1, 4), 112)});
    add("code-891", 22, 891, 5, symmetric({{inv_sqrt(1, 8), 162}}, 567));
    add("lines-552", 23, 552, 5, symmetric({{root_of(1, 5, 3), 100}}, 352));
    add("code-4600", 23, 4600, 7, symmetric({{root_of(1, 15, 5), 2025}, {root_of(1, 5, 5), 275}}, std::nullopt));
    add_skip("leech-196560", 24, 196560, 11, 6,
             symmetric({{root_of(1, 12, 6), 48600}, {root_of(1, 6, 6), 11178}, {root_of(1, 4, 6), 552}}, 75900));
    return rows;
}

inline std::vector<EnergyRow> energy_rows() {
    std::vector<EnergyRow> rows;
    auto add = [&](std::string name, int n, long N, int tau, SqrtScalar s, std::vector<Node> nodes) {
        rows.push_back({std::move(name), n, N, tau, std::move(s), std::move(nodes)});
    };
    add("polygon-3", 2, 3, 2, q(-1, 2), {exact_node(q(-1, 2), 2)});
    add("polygon-4", 2, 4, 3, q(0), {exact_node(q(-1), 1), exact_node(q(0), 2)});
    add("polygon-6", 2, 6, 5, q(1, 2), {exact_node(q(-1), 1), exact_node(q(-1, 2), 2), exact_node(q(1, 2), 2)});
    add("polygon-8", 2, 8, 7, root_of(1, 2, 2),
        {exact_node(q(-1), 1), exact_node(root_of(-1, 2, 2), 2), exact_node(q(0), 2), exact_node(root_of(1, 2, 2), 2)});
    for (int n : {3, 4, 5, 6, 7, 8, 21, 22, 23, 24}) {
        add("simplex-" + std::to_string(n), n, n + 1, 2, q(-1, n), {exact_node(q(-1, n), n)});
        add("cross-polytope-" + std::to_string(n), n, 2 * n, 3, q(0), {exact_node(q(-1), 1), exact_node(q(0), 2 * n - 2)});
        for (long N : {2L, 3L})
            add("design-1-" + std::to_string(n) + "-" + std::to_string(N), n, N, 1, q(-1, N - 1),
                            {exact_node(q(-1, N - 1), N - 1)});
    }
    add("icosahedron", 3, 12, 5, inv_sqrt(1, 5),
        {exact_node(q(-1), 1), exact_node(inv_sqrt(-1, 5), 5), exact_node(inv_sqrt(1, 5), 5)});
    add("clebsch-16", 5, 16, 3, q(1, 5), {exact_node(q(-3, 5), 5), exact_node(q(1, 5), 10)});
    add("schlafli-27", 6, 27, 4, q(1, 4), {exact_node(q(-1, 2), 10), exact_node(q(1, 4), 16)});
    add("gosset-56", 7, 56, 5, q(1, 3), {exact_node(q(-1), 1), exact_node(q(-1, 3), 27), exact_node(q(1, 3), 27)});
    add("e8-roots-240", 8, 240, 7, q(1, 2),
        {exact_node(q(-1), 1), exact_node(q(-1, 2), 56), exact_node(q(0), 126), exact_node(q(1, 2), 56)});
    add("code-112", 21, 112, 3, q(1, 9), {exact_node(q(-1, 3), 30), exact_node(q(1, 9), 81)});
    add("code-162", 21, 162, 3, q(1, 7), {exact_node(q(-2, 7), 56), exact_node(q(1, 7), 105)});
    add("higman-sims-100", 22, 100, 3, q(1, 11), {exact_node(q(-4, 11), 22), exact_node(q(1, 11), 77)});
    add("mclaughlin-275", 22, 275, 4, q(1, 6), {exact_node(q(-1, 4), 112), exact_node(q(1, 6), 162)});
    add("code-891", 22, 891, 5, q(1, 4),
        {exact_node(q(-1, 2), 42), exact_node(q(-1, 8), 512), exact_node(q(1, 4), 336)});
    add("lines-552", 23, 552, 5, q(1, 5), {exact_node(q(-1), 1), exact_node(q(-1, 5), 275), exact_node(q(1, 5), 275)});
    add("code-4600", 23, 4600, 7, q(1, 3),
        {exact_node(q(-1), 1), exact_node(q(-1, 3), 891), exact_node(q(0), 2816), exact_node(q(1, 3), 891)});
    add("leech-196560", 24, 196560, 11, q(1, 2),
        {exact_node(q(-1), 1), exact_node(q(-1, 2), 4600), exact_node(q(-1, 4), 47104), exact_node(q(0), 93150),
         exact_node(q(1, 4), 47104), exact_node(q(1, 2), 4600)});
    return rows;
}

// Node agreement: exact equality when the expected node is exact. A cosine
// given only in floating point must lie in the certified enclosure, or agree
// to 50 digits with an exact rule node.
inline bool node_matches(const polar::Root& got, const Node& want) {
    if (want.exact) return got.is_exact() && *got.exact == *want.exact;
    if (got.is_exact()) return boost::multiprecision::abs(polar::to_float(*got.exact) - want.value) < Float("1e-50");
    return polar::to_float(got.lo) <= want.value && want.value <= polar::to_float(got.hi);
}

struct RowCheck {
    bool pass = false;
    std::string detail;
};

inline RowCheck check_polarization_row(const PolarizationRow& row) {
    RowCheck out;
    try {
        auto rule = row.skip_rule ? polar::pulb2_rule(row.dim, row.pulb2_k) : polar::pulb_rule(row.dim, row.tau);
        if (rule.nodes.size() != row.nodes.size()) {
            out.detail = rule.label() + " has " + std::to_string(rule.nodes.size()) + " nodes";
            return out;
        }
        auto scaled = rule.scaled_weights(row.size);
        out.pass = true;
        for (std::size_t i = 0; i < row.nodes.size(); ++i) {
            bool ok = node_matches(rule.nodes[i], row.nodes[i]) && scaled[i] == Rational(row.nodes[i].count);
            if (!ok) out.detail += rule.nodes[i].str() + ":" + scaled[i].str() + " ";
            out.pass = out.pass && ok;
        }
        if (out.detail.empty()) out.detail = rule.label();
    } catch (const std::exception& e) {
        out.detail = e.what();
    }
    return out;
}

inline RowCheck check_energy_row(const EnergyRow& row) {
    RowCheck out;
    try {
        auto rule = polar::lev_rule_from_s(row.dim, row.tau, row.s, row.size);
        if (rule.nodes.size() != row.nodes.size()) {
            out.detail = rule.label() + " has " + std::to_string(rule.nodes.size()) + " nodes";
            return out;
        }
        auto scaled = rule.scaled_weights(row.size);
        out.pass = rule.weight_at_one && *rule.weight_at_one == q(1, row.size);
        for (std::size_t i = 0; i < row.nodes.size(); ++i) {
            bool ok = node_matches(rule.nodes[i], row.nodes[i]) && scaled[i] == Rational(row.nodes[i].count);
            if (!ok) out.detail += rule.nodes[i].str() + ":" + scaled[i].str() + " ";
            out.pass = out.pass && ok;
        }
        if (out.detail.empty()) out.detail = rule.label();
    } catch (const std::exception& e) {
        out.detail = e.what();
    }
    return out;
}

}  // namespace golden
