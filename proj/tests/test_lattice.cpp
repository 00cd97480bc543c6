#include "polar/lattice.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace polar;

namespace {

std::vector<int> repeat(std::initializer_list<std::pair<int, int>> runs) {
    std::vector<int> v;
    for (auto [value, count] : runs) v.insert(v.end(), static_cast<std::size_t>(count), value);
    return v;
}

const std::vector<int> kAnchorA = repeat({{4, 2}, {0, 22}});
const std::vector<int> kAnchorW = repeat({{5, 1}, {1, 23}});
const std::vector<int> kAnchorE = repeat({{1, 1}, {5, 1}, {1, 22}});

// Shape key: sorted absolute coordinates.
std::vector<int> shape_of(std::span<const std::int8_t> p) {
    std::vector<int> s;
    for (auto x : p) s.push_back(std::abs(static_cast<int>(x)));
    std::sort(s.rbegin(), s.rend());
    return s;
}

std::map<std::vector<int>, long> shape_histogram(const SphericalCode& c) {
    std::map<std::vector<int>, long> h;
    for (std::size_t i = 0; i < c.size(); ++i) ++h[shape_of(c.point(i))];
    return h;
}

std::vector<long> counts_of(const std::map<std::vector<int>, long>& h) {
    std::vector<long> v;
    for (const auto& [k, n] : h) v.push_back(n);
    std::sort(v.begin(), v.end());
    return v;
}

const SphericalCode& leech2() {
    static const SphericalCode c = leech_layer(2);
    return c;
}

}  // namespace

TEST(E8, LayerOne) {
    auto c = e8_layer(1);
    EXPECT_EQ(c.size(), 240u);
    EXPECT_EQ(c.scale2(), kE8Scale2);
    EXPECT_EQ(counts_of(shape_histogram(c)), (std::vector<long>{112, 128}));
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_TRUE(e8_contains(c.lattice_point(i)));
        EXPECT_EQ(scaled_dot(c.point(i), c.lattice_point(i).coords), 8);
    }
}

TEST(E8, LayerTwo) {
    auto c = e8_layer(2);
    EXPECT_EQ(c.size(), 2160u);
    EXPECT_EQ(counts_of(shape_histogram(c)), (std::vector<long>{16, 1024, 1120}));
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(e8_contains(c.lattice_point(i)));
}

TEST(E8, Membership) {
    EXPECT_TRUE(e8_contains(e8_point({2, 2, 0, 0, 0, 0, 0, 0})));
    EXPECT_FALSE(e8_contains(e8_point({1, 1, 1, 1, 1, 1, 1, -1})));
    EXPECT_TRUE(e8_contains(e8_point({1, 1, 1, 1, 1, 1, 1, 1})));
    EXPECT_THROW(e8_contains(LatticePoint{{2, 2, 0, 0, 0, 0, 0, 0}, 8}), ScaleMismatch);
}

TEST(E8, BruteForceOracle) {
    // Oracle: all doubled vectors with entries in [-2, 2] and norm 8,
    // filtered by the integer/half-integer rule written out here.
    long count = 0;
    std::vector<int> v(8, -2);
    std::function<void(int, int)> rec = [&](int pos, int norm) {
        if (norm > 8) return;
        if (pos == 8) {
            if (norm != 8) return;
            bool all_even = std::all_of(v.begin(), v.end(), [](int x) { return x % 2 == 0; });
            bool all_odd = std::all_of(v.begin(), v.end(), [](int x) { return x % 2 != 0; });
            int sum = 0;
            for (int x : v) sum += x;
            if ((all_even || all_odd) && sum % 4 == 0) ++count;
            return;
        }
        for (int x = -2; x <= 2; ++x) {
            v[static_cast<std::size_t>(pos)] = x;
            rec(pos + 1, norm + x * x);
        }
    };
    rec(0, 0);
    EXPECT_EQ(count, 240);
}

TEST(Leech, Membership) {
    EXPECT_TRUE(leech_contains(leech_point(kAnchorA)));
    EXPECT_TRUE(leech_contains(leech_point(kAnchorW)));
    EXPECT_FALSE(leech_contains(leech_point(repeat({{1, 1}, {0, 23}}))));
    EXPECT_THROW(leech_contains(LatticePoint{kAnchorA, 4}), ScaleMismatch);
}

TEST(Leech, SecondShell) {
    const auto& c = leech2();
    EXPECT_EQ(c.size(), 196560u);
    EXPECT_EQ(counts_of(shape_histogram(c)), (std::vector<long>{1104, 97152, 98304}));
    auto sc = leech_shape_counts(2);
    EXPECT_EQ(sc, (std::vector<long>{97152, 98304, 1104}));
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_TRUE(leech_contains_raw(c.point(i).data()));
}

TEST(Leech, SecondShellDots) {
    const auto& c = leech2();
    std::mt19937 rng(9);
    std::set<long> dots;
    for (int trial = 0; trial < 40; ++trial) {
        auto x = c.lattice_point(rng() % c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            long d = scaled_dot(c.point(i), x.coords);
            ASSERT_EQ(d % 8, 0);
            dots.insert(d);
        }
    }
    EXPECT_EQ(dots, (std::set<long>{-32, -16, -8, 0, 8, 16, 32}));
}

TEST(Leech, ThirdShellStream) {
    std::map<std::vector<int>, long> shapes;
    std::vector<long> per_index(4, 0);
    long total = 0, bad = 0;
    leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int shape) {
        for (std::size_t p = 0; p < batch.size(); p += 24) {
            auto pt = batch.subspan(p, 24);
            long n2 = 0;
            for (auto x : pt) n2 += x * x;
            if (n2 != 48 || !leech_contains_raw(pt.data())) ++bad;
            ++per_index[static_cast<std::size_t>(shape)];
            ++total;
            if (total % 64 == 0) ++shapes[shape_of(pt)];
        }
    });
    EXPECT_EQ(total, 16773120);
    EXPECT_EQ(bad, 0);
    EXPECT_EQ(per_index, leech_shape_counts(3));
    EXPECT_EQ(per_index, (std::vector<long>{2048L * 2576, 2024L * 4096, 256L * 759 * 16, 24L * 4096}));
    EXPECT_EQ(shapes.size(), 4u);
}

TEST(Carve, NeighborsOfAnchor) {
    auto k1 = carve(leech2(), {{leech_point(kAnchorA), 16}});
    EXPECT_EQ(k1.size(), 4600u);
    RationalVector half;
    for (int x : kAnchorA) half.push_back(Rational(x) / Rational(2));
    EXPECT_EQ(k1.center(), half);
    EXPECT_EQ(center_of_mass(k1), half);
    auto k2 = carve(leech2(), {{leech_point(kAnchorA), 8}});
    EXPECT_EQ(k2.size(), 47104u);
    RationalVector quarter;
    for (int x : kAnchorA) quarter.push_back(Rational(x) / Rational(4));
    EXPECT_EQ(k2.center(), quarter);
}

TEST(Carve, HigmanSimsHundred) {
    auto f1 = carve(leech2(), {{leech_point(kAnchorW), 24}, {leech_point(kAnchorE), 24}});
    EXPECT_EQ(f1.size(), 100u);
    EXPECT_EQ(distinct_radii2(f1).size(), 1u);
}

TEST(Carve, McLaughlinCenter) {
    auto c = carve(leech2(), {{leech_point(kAnchorW), 24}, {leech_point(kAnchorA), 16}});
    EXPECT_EQ(c.size(), 275u);
    RationalVector want;
    for (std::size_t i = 0; i < 24; ++i) want.push_back(Rational(2 * kAnchorW[i] + kAnchorA[i]) / Rational(5));
    EXPECT_EQ(center_of_mass(c), want);
}

TEST(Carve, IdempotentAndOrderFree) {
    Constraint a{leech_point(kAnchorA), 16}, w{leech_point(kAnchorW), 24};
    auto ab = carve(leech2(), {a, w});
    auto ba = carve(leech2(), {w, a});
    EXPECT_EQ(ab.flat(), ba.flat());
    auto again = carve(ab, {a, w});
    EXPECT_EQ(again.flat(), ab.flat());
}

TEST(Carve, EmptyThrows) { EXPECT_THROW(carve(leech2(), {{leech_point(kAnchorA), 24}}), EmptyCode); }

TEST(Carve, StreamMatchesMaterialized) {
    auto a = carve(leech2(), {{leech_point(kAnchorA), 16}, {leech_point(kAnchorW), 24}});
    auto b = carve_leech_layer(2, {{leech_point(kAnchorA), 16}, {leech_point(kAnchorW), 24}});
    EXPECT_EQ(a.flat(), b.flat());
}

TEST(CenterOfMass, AntipodalCodeIsCentered) {
    auto c = e8_layer(1);
    for (const auto& x : center_of_mass(c)) EXPECT_TRUE(x.is_zero());
}

TEST(CodeFile, RoundTrip) {
    auto c = carve(leech2(), {{leech_point(kAnchorW), 24}, {leech_point(kAnchorE), 24}});
    std::stringstream ss;
    write_code(ss, c);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    EXPECT_EQ(header, code_header(c));
    EXPECT_EQ(header.rfind("# dim=24 scale2=8 count=100 center=", 0), 0u);
    auto back = read_code(ss);
    EXPECT_EQ(back.flat(), c.flat());
    EXPECT_EQ(back.center(), c.center());
    EXPECT_EQ(back.radius2(), c.radius2());
}
