#pragma once

// Extended binary Golay code: codewords, octads, dodecads, Steiner system
// S(5,8,24), tetrad/sextet structure and GF(2) span checks.
//
// Positions are 1-based (1..24); position p is bit (p - 1) of a Word.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using Word = std::uint32_t;
inline constexpr int kGolayLength = 24;
inline constexpr Word kAllOnes = (Word{1} << kGolayLength) - 1;

enum class GolayBasis { MOG, B12 };

class GolayCode {
public:
    static GolayCode build(GolayBasis basis);

    GolayBasis basis() const { return basis_; }
    const std::array<Word, 12>& generator() const { return generator_; }
    const std::vector<Word>& codewords() const { return codewords_; }  // sorted
    const std::vector<Word>& octads() const { return octads_; }        // sorted
    const std::vector<Word>& dodecads() const { return dodecads_; }    // sorted
    bool contains(Word w) const;

    // Counts of codewords by weight 0..24.
    std::array<int, kGolayLength + 1> weight_histogram() const;

private:
    GolayBasis basis_ = GolayBasis::MOG;
    std::array<Word, 12> generator_{};
    std::vector<Word> codewords_, octads_, dodecads_;
    std::vector<std::uint64_t> table_;  // 2^24-bit membership table (may be empty)
};

class BadSubset : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BadPattern : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

GolayCode build_golay(GolayBasis basis);

// Shared MOG-basis code used by the lattice modules.
const GolayCode& mog_golay();

Word word_from_positions(const std::vector<int>& positions);
std::vector<int> positions_of(Word w);
std::string word_string(Word w);  // 24 chars of 0/1, position 1 first
Word word_from_string(const std::string& bits);
inline int weight(Word w) { return __builtin_popcount(w); }

int steiner_cover_count(const GolayCode& g, const std::vector<int>& five_set);

struct PatternBit {
    int position;  // 1..24
    bool bit;
};

int octad_pattern_count(const GolayCode& g, const std::vector<PatternBit>& pattern);

struct Sextet {
    std::array<Word, 6> tetrads{};  // tetrads[0] is the input tetrad
};

Sextet sextet_from_tetrad(const GolayCode& g, const std::vector<int>& tetrad);

// Dimension of the GF(2) span of a word list.
int gf2_rank(const std::vector<Word>& words);
bool span_check(const GolayCode& g, const std::vector<Word>& subset);

}  // namespace polar
