#include "polar/verify.hpp"

#include <algorithm>
#include <numeric>

namespace polar {

// ---------------------------------------------------------------- layer cache

const SphericalCode& LayerCache::e8(int k) {
    auto it = e8_.find(k);
    if (it == e8_.end()) it = e8_.emplace(k, e8_layer(k)).first;
    return it->second;
}

const SphericalCode& LayerCache::leech2() {
    if (!leech2_) leech2_ = leech_layer(2);
    return *leech2_;
}

PointCloud LayerCache::e8_carve(int k, const std::vector<Constraint>& constraints) {
    return PointCloud::from_code(carve(e8(k), constraints));
}

PointCloud LayerCache::leech_carve(int k, const std::vector<Constraint>& constraints) {
    if (k == 2) return PointCloud::from_code(carve(leech2(), constraints));
    return PointCloud::from_code(carve_leech_layer(k, constraints));
}

namespace {

// ---------------------------------------------------------------- anchors

using Ints = std::vector<int>;

Ints repeat(std::initializer_list<std::pair<int, int>> runs) {
    Ints v;
    for (auto [value, count] : runs) v.insert(v.end(), static_cast<std::size_t>(count), value);
    return v;
}

Ints plus(const Ints& a, const Ints& b, int sb = 1) {
    Ints r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
    return r;
}

// E8, doubled coordinates.
const Ints kE8V = repeat({{2, 2}, {0, 6}});
const Ints kE8Y = repeat({{1, 8}});
const Ints kE8W = {2, -2, 0, 0, 0, 0, 0, 0};
const Ints kE8Z = {1, -1, -1, 1, 1, 1, 1, 1};

// Leech, sqrt(8)-scaled coordinates.
const Ints kW = repeat({{5, 1}, {1, 23}});                  // Lambda(3)
const Ints kA = repeat({{4, 2}, {0, 22}});                  // Lambda(2); also v and b
const Ints kE = {1, 5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
const Ints kU3 = {4, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
const Ints kU7 = {1, 1, -3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};

Constraint e8c(const Ints& anchor, long dot) { return {e8_point(anchor), dot}; }
Constraint lc(const Ints& anchor, long dot) { return {leech_point(anchor), dot}; }

RationalVector rv(const Ints& v, long num = 1, long den = 1) {
    RationalVector r;
    for (int x : v) r.emplace_back(BigInt(static_cast<long>(x) * num), BigInt(den));
    return r;
}

RationalVector add(RationalVector a, const RationalVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

RationalVector zero(int dim) { return RationalVector(static_cast<std::size_t>(dim), Rational(0)); }

AssembledCode single(const std::string& label, PointCloud pts, bool sym = false) {
    CodeBuilder b(label);
    b.add(label, std::move(pts));
    if (sym) b.symmetrize();
    return b.build();
}

// ---------------------------------------------------------------- SNF helpers

struct SpanInput {
    std::vector<Ints> anchors;
    std::vector<PointCloud> clouds;
};

SpanAccumulator accumulate(int dim, const SpanInput& in) {
    SpanAccumulator acc(dim);
    for (const auto& a : in.anchors) acc.add(a);
    for (const auto& c : in.clouds)
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.den() != 1) throw std::invalid_argument("span: generators must be lattice points");
            acc.add(std::span<const long>(c.point(i), static_cast<std::size_t>(c.dim())));
        }
    return acc;
}

SnfComputation span_index(int dim, Ambient amb, const SpanInput& in) {
    return {index_from_span(accumulate(dim, in), amb), true, {}};
}

SharpExpectation sharp(std::string label, int tau, std::vector<Rational> cos, std::vector<long> mult) {
    return {std::move(label), tau, std::move(cos), std::move(mult)};
}

Rational q(long a, long b = 1) { return Rational(BigInt(a), BigInt(b)); }

// ---------------------------------------------------------------- E8 rows

PairRecipe e8_240_2160() {
    PairRecipe r;
    r.id = "e8-240-2160";
    r.group = "e8";
    r.c_name = "C240";
    r.d_name = "C2160";
    r.dim = 8;
    r.size_c = 240;
    r.size_d = 2160;
    r.tau_c = r.tau_d = 7;
    r.rule_c = r.rule_d = {RuleKind::PULB2, 4};
    r.c_split = {14, 64, 84, 64, 14};
    r.d_split = {126, 576, 756, 576, 126};
    r.sharp = {{"C", sharp("C240", 7, {q(-1), q(-1, 2), q(0), q(1, 2)}, {1, 56, 126, 56})}};
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("C240", PointCloud::from_code(L.e8(1)));
        p.d = single("C2160", PointCloud::from_code(L.e8(2)));
        return p;
    };
    return r;
}

PairRecipe e8_56_126() {
    PairRecipe r;
    r.id = "e8-56-126";
    r.group = "e8";
    r.c_name = "C56";
    r.d_name = "C126";
    r.dim = 7;
    r.size_c = 56;
    r.size_d = 126;
    r.tau_c = r.tau_d = 5;
    r.rule_c = r.rule_d = {RuleKind::PULB, 5};
    r.c_split = {12, 32, 12};
    r.d_split = {27, 72, 27};
    r.sharp = {{"C", sharp("C56", 5, {q(-1), q(-1, 3), q(1, 3)}, {1, 27, 27})}};
    r.snf = {
        {"ispan(C56)",
         [](LayerCache& L) { return span_index(8, Ambient::E8, {{}, {L.e8_carve(1, {e8c(kE8V, 4)})}}); }, "", 1},
        {"ispan(v,C126)",
         [](LayerCache& L) { return span_index(8, Ambient::E8, {{kE8V}, {L.e8_carve(1, {e8c(kE8V, 0)})}}); }, "",
         2},
    };
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("C56", L.e8_carve(1, {e8c(kE8V, 4)}));
        p.d = single("C126", L.e8_carve(1, {e8c(kE8V, 0)}));
        return p;
    };
    return r;
}

PointCloud c27(LayerCache& L) { return L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8Y, 4)}); }

PairRecipe e8_27_27() {
    PairRecipe r;
    r.id = "e8-27-27";
    r.group = "e8";
    r.c_name = "C27";
    r.d_name = "-C27";
    r.dim = 6;
    r.size_c = r.size_d = 27;
    r.tau_c = r.tau_d = 4;
    r.rule_c = r.rule_d = {RuleKind::PULB, 4};
    r.c_split = r.d_split = {1, 16, 10};
    r.sharp = {{"C", sharp("C27", 4, {q(-1, 2), q(1, 4)}, {10, 16})}};
    r.build = [](LayerCache& L) {
        PairCodes p;
        PointCloud c = c27(L);
        p.c = single("C27", c);
        p.d = single("-C27", c.transformed(-1, zero(8)));
        return p;
    };
    return r;
}

PairRecipe e8_54_72() {
    PairRecipe r;
    r.id = "e8-54-72";
    r.group = "e8";
    r.c_name = "C54";
    r.d_name = "C72";
    r.dim = 6;
    r.size_c = 54;
    r.size_d = 72;
    r.tau_c = r.tau_d = 5;
    r.rule_c = r.rule_d = {RuleKind::PULB, 5};
    r.c_split = {12, 30, 12};
    r.d_split = {16, 40, 16};
    r.snf = {{"ispan(C72,v,y)",
              [](LayerCache& L) {
                  return span_index(8, Ambient::E8, {{kE8V, kE8Y}, {L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8Y, 0)})}});
              },
              "1, 2^6, 12", 3}};
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("C27", c27(L), true);
        p.d = single("C72", L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8Y, 0)}));
        return p;
    };
    return r;
}

PointCloud e8_c1(LayerCache& L) { return L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8W, 4), e8c(kE8Y, 4)}); }
PointCloud e8_c20(LayerCache& L) { return L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8W, 4), e8c(kE8Y, 0)}); }

PairRecipe e8_12_20() {
    PairRecipe r;
    r.id = "e8-12-20";
    r.group = "e8";
    r.c_name = "C12";
    r.d_name = "C20";
    r.dim = 5;
    r.size_c = 12;
    r.size_d = 20;
    r.tau_c = r.tau_d = 3;
    r.rule_c = r.rule_d = {RuleKind::PULB, 3};
    r.c_split = {6, 6};
    r.d_split = {10, 10};
    const Ints two_y = plus(kE8Y, kE8Y);
    r.snf = {
        {"ispan(v,2y,C20)",
         [two_y](LayerCache& L) { return span_index(8, Ambient::E8, {{kE8V, two_y}, {e8_c20(L)}}); }, "1, 2^5, 4, 12",
         6},
        {"ispan(v,2y,C1)",
         [two_y](LayerCache& L) { return span_index(8, Ambient::E8, {{kE8V, two_y}, {e8_c1(L)}}); }, "", 6},
    };
    // u~ on the sphere of C1, cosets of (2y - v)/6.
    GridSpec g;
    g.label = "C20_minima";
    g.scale2 = kE8Scale2;
    g.witness = [](LayerCache& L) { return e8_c1(L).rational_point(0); };
    g.reps = {rv(plus(two_y, kE8V, -1), 1, 6)};
    g.ranges = {{0, 5}};
    g.closed_form = [](const std::vector<long>& c) { return q(2) + q(c[0] * (c[0] - 4), 6); };
    g.expected = {{0}, {4}};
    r.grids = {g};
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("C1", e8_c1(L), true);
        p.d = single("C20", e8_c20(L));
        return p;
    };
    return r;
}

PairRecipe e8_32_10() {
    PairRecipe r;
    r.id = "e8-32-10";
    r.group = "e8";
    r.c_name = "C32";
    r.d_name = "C10";
    r.dim = 5;
    r.size_c = 32;
    r.size_d = 10;
    r.tau_c = r.tau_d = 3;
    r.rule_c = r.rule_d = {RuleKind::PULB, 3};
    r.c_split = {16, 16};
    r.d_split = {5, 5};
    auto c16 = [](LayerCache& L) { return L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8Y, 4), e8c(kE8Z, 4)}); };
    auto c10 = [](LayerCache& L) { return L.e8_carve(1, {e8c(kE8V, 0), e8c(kE8Y, 4), e8c(kE8Z, 0)}); };
    r.sharp = {{"C16", sharp("C16", 3, {q(-3, 5), q(1, 5)}, {5, 10})}};
    r.snf = {
        {"ispan(v,y,z,C16)",
         [c16](LayerCache& L) { return span_index(8, Ambient::E8, {{kE8V, kE8Y, kE8Z}, {c16(L)}}); }, "1, 2^6, 4", 1},
        {"ispan(v,y,z,C10)",
         [c10](LayerCache& L) { return span_index(8, Ambient::E8, {{kE8V, kE8Y, kE8Z}, {c10(L)}}); }, "1, 2^6, 8", 2},
    };
    r.build = [c16, c10](LayerCache& L) {
        PairCodes p;
        p.c = single("C16", c16(L), true);
        p.d = single("C10", c10(L));
        p.extras["C16"] = single("C16", c16(L));
        return p;
    };
    return r;
}

// ---------------------------------------------------------------- Leech rows

PairRecipe leech_lambda() {
    PairRecipe r;
    r.id = "leech-196560-16773120";
    r.aliases = {"leech-lambda2-lambda3"};
    r.group = "leech";
    r.c_name = "Lambda(2)";
    r.d_name = "Lambda(3)";
    r.dim = 24;
    r.size_c = 196560;
    r.size_d = 16773120;
    r.tau_c = r.tau_d = 11;
    r.rule_c = r.rule_d = {RuleKind::PULB2, 6};
    r.c_split = {552, 11178, 48600, 75900, 48600, 11178, 552};
    r.d_split = {47104, 953856, 4147200, 6476800, 4147200, 953856, 47104};
    r.lambda_pair = true;
    r.sharp = {{"C", sharp("Lambda(2)", 11, {q(-1), q(-1, 2), q(-1, 4), q(0), q(1, 4), q(1, 2)},
                           {1, 4600, 47104, 93150, 47104, 4600})}};
    r.snf = {{"ispan(Lambda(3))",
              [](LayerCache&) {
                  // Stream until the span is the whole Leech lattice.
                  struct Done {};
                  SpanAccumulator acc(24);
                  const BigInt target = ambient_covolume(Ambient::Leech);
                  long seen = 0;
                  try {
                      leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int) {
                          for (std::size_t i = 0; i < batch.size() / 24; ++i) acc.add(batch.subspan(i * 24, 24));
                          seen += static_cast<long>(batch.size() / 24);
                          if (acc.rank() == 24 && acc.covolume() == target) throw Done{};
                      });
                  } catch (const Done&) {
                  }
                  SnfComputation c{index_from_span(acc, Ambient::Leech), true, {}};
                  c.note = "span reached after " + std::to_string(seen) + " points";
                  return c;
              },
              "", 1}};
    r.build = [](LayerCache&) -> PairCodes { throw std::logic_error("streamed pair"); };
    return r;
}

PointCloud k1(LayerCache& L) { return L.leech_carve(2, {lc(kA, 16)}); }
PointCloud k2(LayerCache& L) { return L.leech_carve(2, {lc(kA, 8)}); }

PairRecipe leech_4600_94208() {
    PairRecipe r;
    r.id = "leech-4600-94208";
    r.group = "leech";
    r.c_name = "K1";
    r.d_name = "K2 u -K2";
    r.dim = 23;
    r.size_c = 4600;
    r.size_d = 94208;
    r.tau_c = r.tau_d = 7;
    r.rule_c = r.rule_d = {RuleKind::PULB, 7};
    r.c_split = {275, 2025, 2025, 275};
    r.d_split = {5632, 41472, 41472, 5632};
    r.part_splits = {{"D", "K2", {2816, 20736, 20736, 2816}}};
    r.sharp = {{"C", sharp("K1", 7, {q(-1), q(-1, 3), q(0), q(1, 3)}, {1, 891, 2816, 891})}};
    r.snf = {
        {"ispan(A,K1)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kA}, {k1(L)}}); }, "", 2},
        {"ispan(A,K2)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kA}, {k2(L)}}); }, "", 1},
    };
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("K1", k1(L));
        p.d = single("K2", k2(L), true);
        return p;
    };
    return r;
}

PointCloud a1(LayerCache& L) { return L.leech_carve(2, {lc(kA, 16), lc(kU3, 16)}); }
PointCloud a2(LayerCache& L) { return L.leech_carve(2, {lc(kA, 16), lc(kU3, 8)}); }

PairRecipe leech_1782_8448() {
    PairRecipe r;
    r.id = "leech-1782-8448";
    r.group = "leech";
    r.c_name = "A1 u A3";
    r.d_name = "A2 u A2' u A2''";
    r.dim = 22;
    r.size_c = 1782;
    r.size_d = 8448;
    r.tau_c = r.tau_d = 5;
    r.rule_c = r.rule_d = {RuleKind::PULB, 5};
    r.d_split = {1536, 5376, 1536};
    r.part_splits = {{"D", "A2", {512, 1792, 512}}};
    r.projective_lines = true;
    r.sharp = {{"A1", sharp("A1", 5, {q(-1, 2), q(-1, 8), q(1, 4)}, {42, 512, 336})}};
    r.snf = {
        {"ispan(A,u,A1)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kA, kU3}, {a1(L)}}); },
         "1, 2^9, 4^13, 8", 4},
        {"ispan(A,u,A2)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kA, kU3}, {a2(L)}}); },
         "1, 2^10, 4^12, 24", 6},
    };
    GridSpec g;
    g.label = "A2_minima";
    g.scale2 = kLeechScale2;
    g.witness = [](LayerCache& L) { return a1(L).rational_point(0); };
    g.reps = {rv(kA, 1, 2), rv(plus(kA, kU3), 1, 3)};
    g.ranges = {{0, 1}, {0, 2}};
    g.closed_form = [](const std::vector<long>& c) {
        const long j = c[0], k = c[1];
        return q(4 + 2 * k * j - 2 * j + j * j) + q(4 * k * (k - 2), 3);
    };
    g.expected = {{0, 0}, {0, 2}};
    r.grids = {g};
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("A1", a1(L), true);
        const Ints a_minus_u = plus(kA, kU3, -1);
        PointCloud b1 = L.leech_carve(2, {lc(a_minus_u, 16), lc(kA, 8)});
        PointCloud b2 = L.leech_carve(3, {lc(a_minus_u, 24), lc(kA, 24)});
        const RationalVector half_u = rv(kU3, 1, 2);
        p.d = CodeBuilder("D8448")
                  .add("A2", a2(L))
                  .add("u/2+B1", b1.transformed(1, half_u))
                  .add("u/2-A/2+B2", b2.transformed(1, add(half_u, rv(kA, -1, 2))))
                  .build();
        p.extras["A1"] = single("A1", a1(L));
        p.extras["A2"] = single("A2", a2(L));
        return p;
    };
    return r;
}

PointCloud cal_b(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24)}); }
PointCloud cal_c(LayerCache& L) { return L.leech_carve(2, {lc(kW, 16)}); }

// The explicit generator matrix of ispan(C11178), rows as listed.
std::vector<Ints> m11178_rows() {
    auto unit = [](int pos) {
        Ints v(24, 0);
        v[0] = -4;
        v[static_cast<std::size_t>(pos - 1)] = 4;
        return v;
    };
    auto row = [](std::initializer_list<int> head) {
        Ints v(head);
        v.resize(24, 0);
        return v;
    };
    std::vector<Ints> m;
    m.push_back(row({16}));
    for (int pos = 2; pos <= 7; ++pos) m.push_back(unit(pos));
    m.push_back(row({2, -2, -2, 2, 2, 2, 2, 2}));
    for (int pos = 9; pos <= 11; ++pos) m.push_back(unit(pos));
    m.push_back(row({2, -2, -2, 2, 0, 0, 0, 0, 2, 2, 2, 2}));
    m.push_back(unit(13));
    m.push_back(row({2, -2, 0, 0, -2, 2, 0, 0, 2, 2, 0, 0, 2, 2}));
    m.push_back(row({2, 0, -2, 0, -2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2}));
    m.push_back(row({2, 0, 0, -2, -2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2}));
    m.push_back(unit(17));
    m.push_back(row({2, 0, -2, 0, -2, 0, 0, 2, 2, 2, 0, 0, 0, 0, 0, 0, 2, 2}));
    m.push_back(row({2, 0, 0, -2, -2, 2, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 2, 0, 2}));
    m.push_back(row({2, -2, 0, 0, -2, 0, 2, 0, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 2}));
    m.push_back(row({0, 2, 2, 2, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2}));
    m.push_back(row({0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2}));
    m.push_back(row({0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2}));
    m.push_back(row({1, 1, 1, 1, 3, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    return m;
}

PairRecipe leech_552_22356() {
    PairRecipe r;
    r.id = "leech-552-22356";
    r.group = "leech";
    r.c_name = "B";
    r.d_name = "C u (w - C)";
    r.dim = 23;
    r.size_c = 552;
    r.size_d = 22356;
    r.tau_c = r.tau_d = 5;
    r.rule_c = r.rule_d = {RuleKind::PULB, 5};
    r.c_split = {100, 352, 100};
    r.d_split = {4050, 14256, 4050};
    r.part_splits = {{"D", "C11178", {2025, 7128, 2025}}};
    r.sharp = {{"C", sharp("B", 5, {q(-1), q(-1, 5), q(1, 5)}, {1, 275, 275})}};
    r.snf = {
        {"ispan(B)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{}, {cal_b(L)}}); },
         "1, 2^11, 4^11, 24", 3},
        {"ispan(C11178)",
         [](LayerCache& L) {
             SpanAccumulator acc = accumulate(24, {{}, {cal_c(L)}});
             SnfComputation c{index_from_span(acc, Ambient::Leech), true, {}};
             BigInt before = acc.covolume();
             acc.add(kW);
             c.side_conditions = acc.covolume() == before;
             c.note = "w in span: " + std::string(c.side_conditions ? "yes" : "no");
             return c;
         },
         "", 2},
        {"matrix M",
         [](LayerCache& L) {
             const auto rows = m11178_rows();
             std::vector<LatticePoint> gens;
             IntMatrix mat;
             bool members = true;
             for (const auto& row : rows) {
                 LatticePoint p = leech_point(row);
                 members = members && leech_contains(p);
                 gens.push_back(p);
                 std::vector<BigInt> br;
                 for (int x : row) br.emplace_back(x);
                 mat.push_back(br);
             }
             // w = r2 + r3 - r4 - r5 + r8 + r12 + r24
             const std::vector<std::pair<int, int>> combo{{2, 1}, {3, 1}, {4, -1}, {5, -1}, {8, 1}, {12, 1}, {24, 1}};
             Ints sum(24, 0);
             for (auto [idx, sign] : combo) sum = plus(sum, rows[static_cast<std::size_t>(idx - 1)], sign);
             const bool w_identity = sum == kW;
             // rows lie in ispan(C11178)
             SpanAccumulator acc = accumulate(24, {{}, {cal_c(L)}});
             BigInt before = acc.covolume();
             for (const auto& row : rows) acc.add(row);
             const bool in_span = acc.covolume() == before;
             const BigInt det = abs(Rational(determinant(mat))).num();
             SnfComputation c;
             if (members) c.result = sublattice_index_detail(gens, Ambient::Leech);
             c.side_conditions = members && w_identity && in_span && det == BigInt(1) << 37;
             c.note = std::string("rows in Leech: ") + (members ? "yes" : "no") +
                      "; w identity: " + (w_identity ? "yes" : "no") + "; rows in ispan(C11178): " +
                      (in_span ? "yes" : "no") + "; |det M| = " + det.get_str();
             return c;
         },
         "", 2},
    };
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("B", cal_b(L));
        p.d = single("C11178", cal_c(L), true);
        return p;
    };
    return r;
}

PointCloud c275(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24), lc(kA, 16)}); }
PointCloud c7128(LayerCache& L) { return L.leech_carve(2, {lc(kW, 16), lc(kA, 8)}); }

PairRecipe leech_275_275() {
    PairRecipe r;
    r.id = "leech-275-275";
    r.group = "leech";
    r.c_name = "C275";
    r.d_name = "-C275";
    r.dim = 22;
    r.size_c = r.size_d = 275;
    r.tau_c = r.tau_d = 4;
    r.rule_c = r.rule_d = {RuleKind::PULB, 4};
    r.c_split = r.d_split = {1, 162, 112};
    r.sharp = {{"C", sharp("C275", 4, {q(-1, 4), q(1, 6)}, {112, 162})}};
    r.graphs = {{"C275", q(-1, 4), SrgParameters{275, 112, 30, 56, true}}};
    r.build = [](LayerCache& L) {
        PairCodes p;
        PointCloud c = c275(L);
        p.c = single("C275", c);
        p.d = single("-C275", c.transformed(-1, zero(24)));
        p.extras["C275"] = p.c;
        return p;
    };
    return r;
}

PairRecipe leech_550_14256() {
    PairRecipe r;
    r.id = "leech-550-14256";
    r.group = "leech";
    r.c_name = "C275 u -C275";
    r.d_name = "C7128 u -C7128";
    r.dim = 22;
    r.size_c = 550;
    r.size_d = 14256;
    r.tau_c = r.tau_d = 5;
    r.rule_c = r.rule_d = {RuleKind::PULB, 5};
    r.c_split = {100, 350, 100};
    r.d_split = {2592, 9072, 2592};
    r.part_splits = {{"D", "C7128", {1296, 4536, 1296}}};
    r.snf = {{"ispan(w,b,C7128)",
              [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kW, kA}, {c7128(L)}}); },
              "1, 2^11, 4^11, 40", 5}};
    GridSpec g;
    g.label = "C7128_minima";
    g.scale2 = kLeechScale2;
    g.witness = [](LayerCache& L) { return c275(L).rational_point(0); };
    g.reps = {rv(plus(plus(kW, kW), kA), 1, 5)};
    g.ranges = {{0, 4}};
    g.closed_form = [](const std::vector<long>& c) { return q(4) + q(8 * c[0] * (c[0] - 2), 5); };
    g.expected = {{0}, {2}};
    r.grids = {g};
    r.build = [](LayerCache& L) {
        PairCodes p;
        p.c = single("C275", c275(L), true);
        p.d = single("C7128", c7128(L), true);
        return p;
    };
    return r;
}

PointCloud f1(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24), lc(kE, 24)}); }
PointCloud f2(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24), lc(kE, 16)}); }
PointCloud f4(LayerCache& L) { return L.leech_carve(2, {lc(kW, 16), lc(kE, 24)}); }

PairRecipe leech_200_704() {
    PairRecipe r;
    r.id = "leech-200-704";
    r.aliases = {"leech-100-352"};
    r.group = "leech";
    r.c_name = "F1 u -F1";
    r.d_name = "F2 u (F4 + (w-e)/2)";
    r.dim = 22;
    r.size_c = 200;
    r.size_d = 704;
    r.tau_c = r.tau_d = 3;
    r.rule_c = r.rule_d = {RuleKind::PULB, 3};
    r.c_split = {100, 100};
    r.d_split = {352, 352};
    r.part_splits = {{"D", "F2", {176, 176}}};
    r.sharp = {{"F1", sharp("F1", 3, {q(-4, 11), q(1, 11)}, {22, 77})}};
    r.graphs = {{"F1", q(-4, 11), SrgParameters{100, 22, 0, 6, true}}};
    r.higman_sims_split = true;
    r.snf = {
        {"ispan(w,F1)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kW}, {f1(L)}}); },
         "1, 2^10, 4^12, 24", 6},
        {"ispan(e,F2)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kE}, {f2(L)}}); },
         "1, 2^11, 4^11, 80", 10},
    };
    const Ints w_minus_e = plus(kW, kE, -1);
    const Ints w_plus_e = plus(kW, kE);
    GridSpec ga;
    ga.label = "F1_minima";
    ga.scale2 = kLeechScale2;
    ga.witness = [](LayerCache& L) { return f2(L).rational_point(0); };
    ga.reps = {rv(kW, 1, 3), rv(w_minus_e, 1, 2)};
    ga.ranges = {{0, 2}, {0, 1}};
    ga.closed_form = [](const std::vector<long>& c) {
        const long k = c[0], j = c[1];
        return q(4 - 2 * k) + q(2 * k * (k + j), 3);
    };
    ga.expected = {{0, 0}, {0, 1}, {2, 1}};
    GridSpec gb;
    gb.label = "F2_minima";
    gb.scale2 = kLeechScale2;
    gb.witness = [](LayerCache& L) { return f1(L).rational_point(0); };
    gb.reps = {rv(w_plus_e, 1, 5)};
    gb.ranges = {{0, 4}};
    gb.closed_form = [](const std::vector<long>& c) { return q(4) + q(4 * c[0] * (c[0] - 3), 5); };
    gb.expected = {{0}, {3}};
    GridSpec gc;
    gc.label = "F2_minima_e_half";
    gc.scale2 = kLeechScale2;
    gc.witness = [](LayerCache& L) { return f1(L).rational_point(0); };
    gc.reps = {rv(kE, 1, 2), rv(w_plus_e, 1, 5)};
    gc.ranges = {{1, 1}, {0, 4}};
    gc.closed_form = [](const std::vector<long>& c) { return q(5, 2) + q(2 * c[1] * (2 * c[1] - 1), 5); };
    gc.expected = {};
    r.grids = {ga, gb, gc};
    r.build = [w_minus_e](LayerCache& L) {
        PairCodes p;
        p.c = single("F1", f1(L), true);
        p.d = CodeBuilder("D704").add("F2", f2(L)).add("F4+(w-e)/2", f4(L).transformed(1, rv(w_minus_e, 1, 2))).build();
        p.extras["F1"] = single("F1", f1(L));
        return p;
    };
    return r;
}

PointCloud c162(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24), lc(kA, 8), lc(kU7, 16)}); }
PointCloud c112(LayerCache& L) { return L.leech_carve(2, {lc(kW, 24), lc(kA, 8), lc(kU7, 8)}); }

PairRecipe leech_224_648() {
    PairRecipe r;
    r.id = "leech-224-648";
    r.aliases = {"leech-112-162"};
    r.group = "leech";
    r.c_name = "C112 u -C112";
    r.d_name = "four copies of C162";
    r.dim = 21;
    r.size_c = 224;
    r.size_d = 648;
    r.tau_c = r.tau_d = 3;
    r.rule_c = r.rule_d = {RuleKind::PULB, 3};
    r.c_split = {112, 112};
    r.d_split = {324, 324};
    r.part_splits = {{"D", "C162", {81, 81}}, {"C", "C112", {56, 56}}};
    r.sharp = {{"C112", sharp("C112", 3, {q(-1, 3), q(1, 9)}, {30, 81})},
               {"C162", sharp("C162", 3, {q(-2, 7), q(1, 7)}, {56, 105})}};
    r.graphs = {{"C112", q(-1, 3), SrgParameters{112, 30, 2, 10, true}},
                {"C162", q(-2, 7), SrgParameters{162, 56, 10, 24, true}}};
    r.snf = {
        {"ispan(w,v,u,C112)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kW, kA, kU7}, {c112(L)}}); },
         "1, 2^11, 4^10, 12, 24", 9},
        {"ispan(w,v,u,C162)", [](LayerCache& L) { return span_index(24, Ambient::Leech, {{kW, kA, kU7}, {c162(L)}}); },
         "1, 2^10, 4^12, 24", 6},
    };
    const Ints u_minus_v = plus(kU7, kA, -1);
    GridSpec g;
    g.label = "C112_minima";
    g.scale2 = kLeechScale2;
    g.witness = [](LayerCache& L) { return c162(L).rational_point(0); };
    g.reps = {rv(u_minus_v, 1, 3), rv(kW, 1, 3)};
    g.ranges = {{-1, 1}, {-1, 1}};
    g.closed_form = [](const std::vector<long>& c) {
        const long j = c[0], k = c[1];
        return q(4 - 2 * k) + q(2 * (j * j - j + k * k), 3);
    };
    g.expected = {{0, 0}, {1, 0}, {-1, 1}, {-1, -1}};
    r.grids = {g};
    r.build = [u_minus_v](LayerCache& L) {
        PairCodes p;
        p.c = single("C112", c112(L), true);
        const Ints minus_v = plus(Ints(24, 0), kA, -1);
        const Ints w_minus_v = plus(kW, kA, -1);
        PointCloud second = L.leech_carve(2, {lc(u_minus_v, 24), lc(minus_v, 8), lc(w_minus_v, 16)});
        PointCloud first = c162(L);
        const RationalVector uv3 = rv(u_minus_v, 1, 3);
        const RationalVector w3 = rv(kW, 1, 3);
        p.d = CodeBuilder("D648")
                  .add("C162", first)
                  .add("(u-v)/3+w-C162", first.transformed(-1, add(uv3, rv(kW))))
                  .add("-(u-v)/3+w/3+C162''", second.transformed(1, add(rv(u_minus_v, -1, 3), w3)))
                  .add("2(u-v)/3+2w/3-C162''", second.transformed(-1, add(rv(u_minus_v, 2, 3), rv(kW, 2, 3))))
                  .build();
        p.extras["C112"] = single("C112", c112(L));
        p.extras["C162"] = single("C162", first);
        return p;
    };
    return r;
}

// ---------------------------------------------------------------- other pairs

PairRecipe small_pair(std::string id, int dim, std::vector<Ints> c_rows, std::vector<Ints> d_rows, int tau,
                      bool sym_c = false) {
    PairRecipe r;
    r.id = std::move(id);
    r.group = "other";
    r.c_name = "C";
    r.d_name = "D";
    r.dim = dim;
    r.size_c = static_cast<long>(c_rows.size()) * (sym_c ? 2 : 1);
    r.size_d = static_cast<long>(d_rows.size());
    r.tau_c = r.tau_d = tau;
    r.rule_c = r.rule_d = {RuleKind::PULB, tau};
    auto to_long = [](const std::vector<Ints>& rows) {
        std::vector<std::vector<long>> out;
        for (const auto& row : rows) out.emplace_back(row.begin(), row.end());
        return out;
    };
    r.build = [c = to_long(c_rows), d = to_long(d_rows), sym_c](LayerCache&) {
        PairCodes p;
        p.c = single("C", PointCloud::from_rows(c), sym_c);
        p.d = single("D", PointCloud::from_rows(d));
        return p;
    };
    return r;
}

std::vector<Ints> negated(const std::vector<Ints>& rows) {
    std::vector<Ints> out;
    for (const auto& row : rows) out.push_back(plus(Ints(row.size(), 0), row, -1));
    return out;
}

std::vector<Ints> simplex_rows(int n) {
    std::vector<Ints> rows;
    for (int i = 0; i <= n; ++i) {
        Ints v(static_cast<std::size_t>(n + 1), -1);
        v[static_cast<std::size_t>(i)] = n;
        rows.push_back(v);
    }
    return rows;
}

std::vector<Ints> sign_vectors(int n, bool balanced) {
    std::vector<Ints> rows;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Ints v(static_cast<std::size_t>(n));
        int sum = 0;
        for (int i = 0; i < n; ++i) sum += v[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
        if (!balanced || sum == 0) rows.push_back(v);
    }
    return rows;
}

std::vector<Ints> cross_rows(int n) {
    std::vector<Ints> rows;
    for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) {
            Ints v(static_cast<std::size_t>(n), 0);
            v[static_cast<std::size_t>(i)] = s;
            rows.push_back(v);
        }
    return rows;
}

std::vector<Ints> permutations_of(Ints v) {
    std::sort(v.begin(), v.end());
    std::vector<Ints> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

std::vector<PairRecipe> other_pairs() {
    std::vector<PairRecipe> out;
    // regular polygons inside the A2 plane x + y + z = 0
    {
        std::vector<Ints> tri{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
        out.push_back(small_pair("ngon-3", 2, tri, negated(tri), 2));
        out.push_back(small_pair("ngon-4", 2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                 {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, 3));
        std::vector<Ints> hex = permutations_of({1, -1, 0});
        std::vector<Ints> dual = permutations_of({2, -1, -1});
        for (const auto& v : permutations_of({-2, 1, 1})) dual.push_back(v);
        out.push_back(small_pair("ngon-6", 2, hex, dual, 5));
    }
    for (int n = 3; n <= 8; ++n)
        out.push_back(small_pair("simplex-" + std::to_string(n), n, simplex_rows(n), negated(simplex_rows(n)), 2));
    for (int n = 3; n <= 8; ++n)
        out.push_back(small_pair("cross-cube-" + std::to_string(n), n, cross_rows(n), sign_vectors(n, false), 3));
    for (int n : {3, 5, 7})
        out.push_back(small_pair("symmetrized-simplex-" + std::to_string(n), n, simplex_rows(n),
                                 sign_vectors(n + 1, true), 3, true));
    {
        std::vector<Ints> d4;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        Ints v(4, 0);
                        v[static_cast<std::size_t>(i)] = si;
                        v[static_cast<std::size_t>(j)] = sj;
                        d4.push_back(v);
                    }
        std::vector<Ints> dual = cross_rows(4);
        for (auto& v : dual)
            for (auto& x : v) x *= 2;
        for (const auto& v : sign_vectors(4, false)) dual.push_back(v);
        out.push_back(small_pair("24-cell", 4, d4, dual, 5));
    }
    return out;
}

std::vector<PairRecipe> make_registry() {
    std::vector<PairRecipe> r{e8_240_2160(),     e8_56_126(),       e8_27_27(),        e8_54_72(),
                              e8_12_20(),        e8_32_10(),        leech_lambda(),    leech_4600_94208(),
                              leech_1782_8448(), leech_552_22356(), leech_275_275(),   leech_550_14256(),
                              leech_200_704(),   leech_224_648()};
    for (auto& p : other_pairs()) r.push_back(std::move(p));
    return r;
}

}  // namespace

const std::vector<PairRecipe>& pair_registry() {
    static const std::vector<PairRecipe> registry = make_registry();
    return registry;
}

const PairRecipe& find_recipe(const std::string& id) {
    for (const auto& r : pair_registry()) {
        if (r.id == id) return r;
        if (std::find(r.aliases.begin(), r.aliases.end(), id) != r.aliases.end()) return r;
    }
    throw UnknownPair("unknown pair: " + id);
}

}  // namespace polar
