#include "polar/golay.hpp"

#include <algorithm>
#include <set>

namespace polar {

namespace {

// MOG generator rows, position 1 first.
constexpr std::array<const char*, 12> kMogRows = {
    "111111110000000000000000", "111100001111000000000000", "110011001100110000000000",
    "101010101010101000000000", "100110011001100100000000", "101010011100000011000000",
    "100111001010000010100000", "110010101001000010010000", "011110001000100010001000",
    "000000001100110011001100", "000000001010101010101010", "111111111111111111111111",
};

// Quadratic residues mod 11 pattern; rows of B11 are its cyclic right shifts.
constexpr const char* kResidueRow = "11011100010";

std::array<Word, 12> b12_generator() {
    std::array<Word, 12> rows{};
    for (int r = 0; r < 12; ++r) {
        std::string bits(24, '0');
        bits[static_cast<std::size_t>(r)] = '1';
        for (int c = 0; c < 12; ++c) {
            char b;
            if (r < 11 && c < 11) {
                b = kResidueRow[(c - r + 11) % 11];
            } else if (r == 11 && c == 11) {
                b = '0';
            } else {
                b = '1';
            }
            bits[static_cast<std::size_t>(12 + c)] = b;
        }
        rows[static_cast<std::size_t>(r)] = word_from_string(bits);
    }
    return rows;
}

}  // namespace

Word word_from_positions(const std::vector<int>& positions) {
    Word w = 0;
    for (int p : positions) {
        if (p < 1 || p > kGolayLength) throw std::out_of_range("position outside 1..24");
        w |= Word{1} << (p - 1);
    }
    return w;
}

std::vector<int> positions_of(Word w) {
    std::vector<int> out;
    for (int p = 1; p <= kGolayLength; ++p)
        if (w >> (p - 1) & 1U) out.push_back(p);
    return out;
}

std::string word_string(Word w) {
    std::string s(kGolayLength, '0');
    for (int i = 0; i < kGolayLength; ++i)
        if (w >> i & 1U) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Word word_from_string(const std::string& bits) {
    Word w = 0;
    int i = 0;
    for (char ch : bits) {
        if (ch == ' ') continue;
        if (ch != '0' && ch != '1') throw std::invalid_argument("word_from_string: bad char");
        if (i >= kGolayLength) throw std::invalid_argument("word_from_string: too long");
        if (ch == '1') w |= Word{1} << i;
        ++i;
    }
    if (i != kGolayLength) throw std::invalid_argument("word_from_string: need 24 bits");
    return w;
}

GolayCode GolayCode::build(GolayBasis basis) {
    GolayCode g;
    g.basis_ = basis;
    if (basis == GolayBasis::MOG) {
        for (std::size_t i = 0; i < 12; ++i) g.generator_[i] = word_from_string(kMogRows[i]);
    } else {
        g.generator_ = b12_generator();
    }
    g.codewords_.reserve(4096);
    for (unsigned mask = 0; mask < 4096; ++mask) {
        Word w = 0;
        for (unsigned i = 0; i < 12; ++i)
            if (mask >> i & 1U) w ^= g.generator_[i];
        g.codewords_.push_back(w);
    }
    std::sort(g.codewords_.begin(), g.codewords_.end());
    g.codewords_.erase(std::unique(g.codewords_.begin(), g.codewords_.end()), g.codewords_.end());
    for (Word w : g.codewords_) {
        if (weight(w) == 8) g.octads_.push_back(w);
        if (weight(w) == 12) g.dodecads_.push_back(w);
    }
#ifndef POLAR_GOLAY_NO_TABLE
    g.table_.assign((std::size_t{1} << kGolayLength) / 64, 0);
    for (Word w : g.codewords_) g.table_[w >> 6] |= std::uint64_t{1} << (w & 63U);
#endif
    return g;
}

bool GolayCode::contains(Word w) const {
    if (w > kAllOnes) return false;
    if (!table_.empty()) return (table_[w >> 6] >> (w & 63U)) & 1U;
    return std::binary_search(codewords_.begin(), codewords_.end(), w);
}

std::array<int, kGolayLength + 1> GolayCode::weight_histogram() const {
    std::array<int, kGolayLength + 1> h{};
    for (Word w : codewords_) ++h[static_cast<std::size_t>(weight(w))];
    return h;
}

GolayCode build_golay(GolayBasis basis) { return GolayCode::build(basis); }

const GolayCode& mog_golay() {
    static const GolayCode code = GolayCode::build(GolayBasis::MOG);
    return code;
}

int steiner_cover_count(const GolayCode& g, const std::vector<int>& five_set) {
    std::set<int> distinct(five_set.begin(), five_set.end());
    if (five_set.size() != 5 || distinct.size() != 5) throw BadSubset("steiner_cover_count needs 5 distinct positions");
    Word s = word_from_positions(five_set);
    int count = 0;
    for (Word o : g.octads())
        if ((o & s) == s) ++count;
    return count;
}

int octad_pattern_count(const GolayCode& g, const std::vector<PatternBit>& pattern) {
    std::set<int> distinct;
    Word ones = 0, zeros = 0;
    for (const auto& pb : pattern) {
        distinct.insert(pb.position);
        (pb.bit ? ones : zeros) |= word_from_positions({pb.position});
    }
    if (distinct.size() != pattern.size()) throw BadPattern("pattern repeats a position");
    if (pattern.size() > 4) throw BadPattern("pattern constrains more than 4 positions");
    int count = 0;
    for (Word o : g.octads())
        if ((o & ones) == ones && (o & zeros) == 0) ++count;
    return count;
}

Sextet sextet_from_tetrad(const GolayCode& g, const std::vector<int>& tetrad) {
    std::set<int> distinct(tetrad.begin(), tetrad.end());
    if (tetrad.size() != 4 || distinct.size() != 4) throw BadSubset("sextet_from_tetrad needs 4 distinct positions");
    Word t = word_from_positions(tetrad);
    Sextet out;
    out.tetrads[0] = t;
    std::size_t filled = 1;
    Word covered = t;
    for (int p = 1; p <= kGolayLength && filled < 6; ++p) {
        Word bit = Word{1} << (p - 1);
        if (covered & bit) continue;
        Word five = t | bit;
        for (Word o : g.octads()) {
            if ((o & five) == five) {
                Word other = o & ~t;
                out.tetrads[filled++] = other;
                covered |= other;
                break;
            }
        }
    }
    if (filled != 6 || covered != kAllOnes) throw std::logic_error("sextet construction failed");
    return out;
}

int gf2_rank(const std::vector<Word>& words) {
    std::array<Word, kGolayLength> pivot{};
    int rank = 0;
    for (Word w : words) {
        for (int b = kGolayLength - 1; b >= 0 && w; --b) {
            if (!(w >> b & 1U)) continue;
            if (!pivot[static_cast<std::size_t>(b)]) {
                pivot[static_cast<std::size_t>(b)] = w;
                ++rank;
                w = 0;
                break;
            }
            w ^= pivot[static_cast<std::size_t>(b)];
        }
    }
    return rank;
}

bool span_check(const GolayCode& g, const std::vector<Word>& subset) {
    for (Word w : subset)
        if (!g.contains(w)) throw std::invalid_argument("span_check: word not in code");
    return gf2_rank(subset) == 12;
}

}  // namespace polar
