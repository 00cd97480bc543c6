#include "polar/snf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polar;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(rows, std::vector<BigInt>(cols));
    for (auto& r : m)
        for (auto& x : r) x = d(rng);
    return m;
}

BigInt gcd_all(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

// Oracle: the j-th determinantal divisor is the gcd of all j x j minors,
// and d_j = D_j / D_{j-1}. Minors by cofactor expansion on 3-row inputs.
std::vector<BigInt> determinantal_diagonal(const IntMatrix& m) {
    const std::size_t cols = m[0].size();
    std::vector<BigInt> minors1, minors2, minors3;
    for (const auto& r : m)
        for (const auto& x : r) minors1.push_back(x);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b)
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t j = i + 1; j < cols; ++j) minors2.push_back(m[a][i] * m[b][j] - m[a][j] * m[b][i]);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i + 1; j < cols; ++j)
            for (std::size_t k = j + 1; k < cols; ++k)
                minors3.push_back(m[0][i] * (m[1][j] * m[2][k] - m[1][k] * m[2][j]) -
                                  m[0][j] * (m[1][i] * m[2][k] - m[1][k] * m[2][i]) +
                                  m[0][k] * (m[1][i] * m[2][j] - m[1][j] * m[2][i]));
    std::vector<BigInt> D = {1, gcd_all(minors1), gcd_all(minors2), gcd_all(minors3)};
    std::vector<BigInt> out;
    for (int j = 1; j <= 3; ++j) {
        if (D[static_cast<std::size_t>(j)] == 0) break;
        out.push_back(D[static_cast<std::size_t>(j)] / D[static_cast<std::size_t>(j - 1)]);
    }
    return out;
}

}  // namespace

TEST(Snf, Identity) {
    auto r = smith_normal_form(identity_matrix(3));
    EXPECT_EQ(r.diagonal, (std::vector<BigInt>{1, 1, 1}));
}

TEST(Snf, ReconstructionAndUnimodular) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 2 + rng() % 4, cols = rows + rng() % 4;
        auto B = random_matrix(rng, rows, cols, 20);
        auto r = smith_normal_form(B);
        EXPECT_EQ(multiply(multiply(r.S, r.D), r.T), B);
        EXPECT_EQ(abs(determinant(r.S)), BigInt(1));
        EXPECT_EQ(abs(determinant(r.T)), BigInt(1));
        for (std::size_t j = 0; j < r.diagonal.size(); ++j) {
            EXPECT_GT(r.diagonal[j], 0);
            if (j + 1 < r.diagonal.size()) EXPECT_EQ(r.diagonal[j + 1] % r.diagonal[j], 0);
        }
    }
}

TEST(Snf, DeterminantalDivisorOracle) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 80; ++trial) {
        auto B = random_matrix(rng, 3, 3 + rng() % 4, trial % 2 ? 6 : 60);
        // Scale a row to force nontrivial invariant factors.
        for (auto& x : B[1]) x *= 2;
        for (auto& x : B[2]) x *= 6;
        EXPECT_EQ(smith_normal_form(B).diagonal, determinantal_diagonal(B));
        EXPECT_EQ(smith_diagonal(B), determinantal_diagonal(B));
    }
}

TEST(Snf, LargeEntriesStayExact) {
    IntMatrix B = {{BigInt("123456789012345678901234567890"), 6}, {4, BigInt("98765432109876543210")}};
    auto r = smith_normal_form(B);
    EXPECT_EQ(multiply(multiply(r.S, r.D), r.T), B);
    EXPECT_EQ(r.diagonal[0] * r.diagonal[1], abs(determinant(B)));
}

TEST(SpanAccumulator, MatchesSmithDiagonal) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 5;
        SpanAccumulator acc(dim);
        IntMatrix cols(dim, std::vector<BigInt>());
        std::uniform_int_distribution<long> d(-9, 9);
        for (int g = 0; g < 9; ++g) {
            std::vector<int> v(dim);
            for (auto& x : v) x = static_cast<int>(d(rng)) * (g % 3 == 0 ? 4 : 2);
            acc.add(v);
            for (int i = 0; i < dim; ++i) cols[static_cast<std::size_t>(i)].push_back(v[static_cast<std::size_t>(i)]);
        }
        EXPECT_EQ(smith_diagonal(acc), smith_diagonal(cols));
        if (acc.rank() == dim) {
            BigInt prod = 1;
            for (const auto& x : smith_diagonal(cols)) prod *= x;
            EXPECT_EQ(acc.covolume(), prod);
        }
    }
}

TEST(SpanAccumulator, OverflowFallsBackToBigIntegers) {
    SpanAccumulator acc(2);
    const long big = 1L << 40;
    std::vector<long> a = {big + 1, big}, b = {big, big - 1};
    acc.add(std::span<const long>(a));
    acc.add(std::span<const long>(b));
    EXPECT_EQ(acc.rank(), 2);
    // det [[2^40+1, 2^40], [2^40, 2^40-1]] = -1
    EXPECT_EQ(acc.covolume(), BigInt(1));
}

TEST(SublatticeIndex, E8LayersSpanE8) {
    for (int k : {1, 2}) {
        auto c = e8_layer(k);
        std::vector<LatticePoint> gens;
        for (std::size_t i = 0; i < c.size(); ++i) gens.push_back(c.lattice_point(i));
        EXPECT_EQ(sublattice_index(gens, Ambient::E8), BigInt(1)) << k;
    }
}

TEST(SublatticeIndex, LeechSecondShellSpansLeech) {
    SpanAccumulator acc(24);
    leech_layer_stream(2, [&](std::span<const std::int8_t> batch, int) {
        for (std::size_t p = 0; p < batch.size(); p += 24) acc.add(batch.subspan(p, 24));
    });
    auto r = index_from_span(acc, Ambient::Leech);
    EXPECT_EQ(r.index, BigInt(1));
    EXPECT_EQ(ambient_covolume(Ambient::Leech), BigInt(1) << 36);
}

TEST(SublatticeIndex, DoubledRootsHaveIndexTwoToTheEight) {
    auto c = e8_layer(1);
    std::vector<LatticePoint> gens;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c.lattice_point(i);
        for (auto& x : p.coords) x *= 2;
        gens.push_back(p);
    }
    EXPECT_EQ(sublattice_index(gens, Ambient::E8), BigInt(256));
}

TEST(SublatticeIndex, Errors) {
    std::vector<LatticePoint> one = {e8_point({2, 2, 0, 0, 0, 0, 0, 0})};
    EXPECT_THROW(sublattice_index(one, Ambient::E8), RankDeficient);
    std::vector<LatticePoint> bad = {e8_point({1, 1, 1, 1, 1, 1, 1, -1})};
    EXPECT_THROW(sublattice_index(bad, Ambient::E8), NotInAmbient);
}

TEST(CosetNormParity, QuadraticInK) {
    // |y|^2 = 2, |rep|^2 = 1/6, y.rep = 1/3 gives 2 + k(k-4)/6.
    RationalVector y = {1, 1, 0};
    RationalVector rep = {Rational(1) / Rational(6), Rational(1) / Rational(6), Rational(1) / Rational(3)};
    std::vector<long> even;
    for (long k = 0; k <= 5; ++k) {
        Rational v = coset_norm_parity(y, rep, k);
        EXPECT_EQ(v, Rational(2) + Rational(k * (k - 4)) / Rational(6));
        if (v.is_integer() && v.num() % 2 == 0) even.push_back(k);
    }
    EXPECT_EQ(even, (std::vector<long>{0, 4}));
    EXPECT_EQ(coset_norm_parity(y, rep, 0), Rational(2));
}

TEST(CompressDiagonal, Format) {
    std::vector<BigInt> d = {1};
    for (int i = 0; i < 11; ++i) d.push_back(2);
    for (int i = 0; i < 11; ++i) d.push_back(4);
    d.push_back(24);
    EXPECT_EQ(compress_diagonal(d), "1, 2^11, 4^11, 24");
    EXPECT_EQ(compress_diagonal({1, 64, 12}), "1, 64, 12");
}
