#include "polar/golay.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace polar;

namespace {

const GolayCode& mog() { return mog_golay(); }

std::vector<int> weight_profile(const GolayCode& g) {
    auto h = g.weight_histogram();
    return {h[0], h[8], h[12], h[16], h[24]};
}

}  // namespace

TEST(Golay, SizeAndDimension) {
    EXPECT_EQ(mog().codewords().size(), 4096u);
    std::vector<Word> gen(mog().generator().begin(), mog().generator().end());
    EXPECT_EQ(gf2_rank(gen), 12);
}

TEST(Golay, WeightDistributionBothBases) {
    std::vector<int> want = {1, 759, 2576, 759, 1};
    EXPECT_EQ(weight_profile(mog()), want);
    auto b12 = build_golay(GolayBasis::B12);
    EXPECT_EQ(weight_profile(b12), want);
    auto h = mog().weight_histogram();
    int total = 0;
    for (int w = 0; w <= 24; ++w) {
        if (w != 0 && w != 8 && w != 12 && w != 16 && w != 24) EXPECT_EQ(h[static_cast<std::size_t>(w)], 0);
        total += h[static_cast<std::size_t>(w)];
    }
    EXPECT_EQ(total, 4096);
}

TEST(Golay, MinimumWeightEight) {
    int m = 24;
    for (auto w : mog().codewords())
        if (w) m = std::min(m, weight(w));
    EXPECT_EQ(m, 8);
}

TEST(Golay, SelfDualAndComplementClosed) {
    const auto& words = mog().codewords();
    for (auto a : mog().generator())
        for (auto b : words) EXPECT_EQ(weight(a & b) % 2, 0);
    for (auto w : words) EXPECT_TRUE(mog().contains(w ^ kAllOnes));
}

TEST(Golay, DistanceRegular) {
    // Weight distribution of c + G is the same for every codeword c.
    std::vector<int> want = {1, 759, 2576, 759, 1};
    std::mt19937 rng(5);
    const auto& words = mog().codewords();
    for (int trial = 0; trial < 20; ++trial) {
        Word c = words[rng() % words.size()];
        std::array<int, 25> h{};
        for (auto w : words) ++h[static_cast<std::size_t>(weight(w ^ c))];
        EXPECT_EQ((std::vector<int>{h[0], h[8], h[12], h[16], h[24]}), want);
    }
}

TEST(Golay, OctadCountAndIntersections) {
    const auto& oct = mog().octads();
    EXPECT_EQ(oct.size(), 759u);
    EXPECT_TRUE(std::is_sorted(oct.begin(), oct.end()));
    for (std::size_t i = 0; i < oct.size(); ++i)
        for (std::size_t j = i + 1; j < oct.size(); ++j) {
            int k = weight(oct[i] & oct[j]);
            EXPECT_TRUE(k == 0 || k == 2 || k == 4) << k;
        }
}

TEST(Steiner, FirstFiveSet) { EXPECT_EQ(steiner_cover_count(mog(), {1, 2, 3, 4, 5}), 1); }

TEST(Steiner, EveryFiveSetCoveredOnce) {
    long sets = 0, total = 0;
    std::vector<int> s(5);
    for (s[0] = 1; s[0] <= 20; ++s[0])
        for (s[1] = s[0] + 1; s[1] <= 21; ++s[1])
            for (s[2] = s[1] + 1; s[2] <= 22; ++s[2])
                for (s[3] = s[2] + 1; s[3] <= 23; ++s[3])
                    for (s[4] = s[3] + 1; s[4] <= 24; ++s[4]) {
                        int c = steiner_cover_count(mog(), s);
                        ASSERT_EQ(c, 1);
                        total += c;
                        ++sets;
                    }
    EXPECT_EQ(sets, 42504);
    // Oracle: each octad contains C(8,5) = 56 five-sets.
    EXPECT_EQ(total, 759L * 56);
}

TEST(Steiner, BadSubset) {
    EXPECT_THROW(steiner_cover_count(mog(), {1, 2, 3, 4}), BadSubset);
    EXPECT_THROW(steiner_cover_count(mog(), {1, 1, 2, 3, 4}), BadSubset);
}

TEST(Patterns, FirstPositionCounts) {
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}}), 253);
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}, {2, true}}), 77);
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}, {2, true}, {3, true}}), 21);
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}, {2, true}, {3, true}, {4, true}}), 5);
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}, {2, false}}), 176);
    EXPECT_EQ(octad_pattern_count(mog(), {{1, true}, {2, true}, {3, false}}), 56);
}

TEST(Patterns, TooManyPositions) {
    EXPECT_THROW(octad_pattern_count(mog(), {{1, true}, {2, true}, {3, true}, {4, true}, {5, true}}), BadPattern);
}

TEST(Patterns, BruteForceOracle) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PatternBit> pat;
        std::set<int> used;
        int n = 1 + static_cast<int>(rng() % 4);
        while (static_cast<int>(pat.size()) < n) {
            int p = 1 + static_cast<int>(rng() % 24);
            if (used.insert(p).second) pat.push_back({p, (rng() & 1U) != 0});
        }
        int want = 0;
        for (auto w : mog().octads()) {
            bool ok = true;
            for (const auto& b : pat) ok = ok && (((w >> (b.position - 1)) & 1U) != 0) == b.bit;
            want += ok;
        }
        EXPECT_EQ(octad_pattern_count(mog(), pat), want);
    }
}

TEST(Sextet, FromFirstTetrad) {
    auto sx = sextet_from_tetrad(mog(), {1, 2, 3, 4});
    EXPECT_EQ(sx.tetrads[0], word_from_positions({1, 2, 3, 4}));
    Word all = 0;
    for (auto t : sx.tetrads) {
        EXPECT_EQ(weight(t), 4);
        EXPECT_EQ(all & t, 0u);
        all |= t;
    }
    EXPECT_EQ(all, kAllOnes);
    int unions = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            EXPECT_TRUE(mog().contains(sx.tetrads[static_cast<std::size_t>(i)] | sx.tetrads[static_cast<std::size_t>(j)]));
            ++unions;
        }
    EXPECT_EQ(unions, 15);
}

TEST(Sextet, TetradInsideOctad) {
    Word octad = mog().octads()[100];
    auto pos = positions_of(octad);
    std::vector<int> first(pos.begin(), pos.begin() + 4);
    Word rest = octad & ~word_from_positions(first);
    auto sx = sextet_from_tetrad(mog(), first);
    EXPECT_NE(std::find(sx.tetrads.begin(), sx.tetrads.end(), rest), sx.tetrads.end());
}

TEST(Sextet, RandomTetradsPartition) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> perm(24);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto sx = sextet_from_tetrad(mog(), {perm[0], perm[1], perm[2], perm[3]});
        Word all = 0;
        for (auto t : sx.tetrads) {
            EXPECT_EQ(all & t, 0u);
            all |= t;
        }
        EXPECT_EQ(all, kAllOnes);
    }
}

TEST(Span, OctadsTenAndZeroOne) {
    std::vector<Word> subset;
    for (auto w : mog().octads())
        if (((w & 1U) != 0) != ((w & 2U) != 0)) subset.push_back(w);
    EXPECT_EQ(subset.size(), 352u);
    EXPECT_TRUE(span_check(mog(), subset));
}

TEST(Span, AllOctads) { EXPECT_TRUE(span_check(mog(), mog().octads())); }

TEST(Span, ZeroWord) { EXPECT_FALSE(span_check(mog(), {0})); }

TEST(Words, StringRoundTrip) {
    for (std::size_t i = 0; i < mog().codewords().size(); i += 97) {
        Word w = mog().codewords()[i];
        auto s = word_string(w);
        EXPECT_EQ(s.size(), 24u);
        EXPECT_EQ(word_from_string(s), w);
    }
    EXPECT_EQ(word_string(word_from_positions({1}))[0], '1');
}
