#pragma once

// Exact spherical-design machinery: centered cosines, inner-product
// distributions, moments, design strength, constancy probes, derived codes
// and potentials.
//
// Cosines are never formed in floating point. A code is turned into integer
// "centered vectors" X = den * (p - center); every cosine is then
// X.Y / sqrt(|X|^2 |Y|^2), an exact SqrtScalar built from an integer dot.

#include "polar/exact.hpp"
#include "polar/lattice.hpp"
#include "polar/potential.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

class ZeroVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IrrationalCosine : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ModeMisuse : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class EmptyFiber : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OffSphere : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Integer direction of a point relative to a center: den * (x - c).
struct Direction {
    std::vector<long> vec;
    long norm2() const;
    Direction operator-() const;
    friend bool operator==(const Direction&, const Direction&) = default;
};

Direction direction(const RationalVector& x, const RationalVector& center);
Direction direction(const LatticePoint& x, const RationalVector& center);

// The code's points as integer vectors about its center, all of one norm.
class CenteredCode {
public:
    explicit CenteredCode(const SphericalCode& code);
    // Arbitrary directions sharing one norm (e.g. unions of translated parts).
    CenteredCode(int dim, std::vector<Direction> dirs);

    int dim() const { return dim_; }
    std::size_t size() const { return count_; }
    long norm2() const { return norm2_; }
    const long* vec(std::size_t i) const { return flat_.data() + i * static_cast<std::size_t>(dim_); }
    Direction direction_of(std::size_t i) const;
    long dot(std::size_t i, const std::vector<long>& v) const;

private:
    int dim_ = 0;
    std::size_t count_ = 0;
    long norm2_ = 0;
    std::vector<long> flat_;
};

struct CosineDistribution {
    std::vector<std::pair<SqrtScalar, long>> entries;  // ascending cosine
    long total = 0;

    long multiplicity(const SqrtScalar& c) const;
    std::vector<SqrtScalar> cosines() const;
    std::string str() const;
};

SqrtScalar cosine(const RationalVector& x, const RationalVector& y, const RationalVector& cx, const RationalVector& cy);
SqrtScalar cosine(const Direction& x, const Direction& y);
SqrtScalar cosine_from_dot(long dot, long norm_x, long norm_y);

// Integer dot histogram of a direction against every code vector.
std::map<long, long> dot_histogram(const Direction& x, const CenteredCode& code);
CosineDistribution distribution_from_dots(const std::map<long, long>& dots, long norm_x, long norm_y);

CosineDistribution ip_distribution(const Direction& x, const CenteredCode& code);
CosineDistribution ip_distribution(const RationalVector& x, const RationalVector& cx, const SphericalCode& code);

// Dimension of the affine hull of the code (rank of its centered vectors).
int affine_dimension(const CenteredCode& code);

// Histogram of X_i . X_j over all ordered pairs (i, j), self pairs included.
std::map<long, std::uint64_t> pair_dot_histogram(const CenteredCode& code);

// Dot histograms of every witness direction against a code, grouped into
// classes of identical histograms. Classes are ordered by first witness.
struct HistogramClass {
    std::map<long, long> dots;
    std::size_t count = 0;  // witnesses sharing this histogram
    std::size_t first = 0;  // smallest witness index in the class
};

std::vector<HistogramClass> cross_dot_classes(const CenteredCode& witnesses, const CenteredCode& code);

enum class MomentMode { Auto, Full, DistanceRegular };

struct MomentOptions {
    MomentMode mode = MomentMode::Auto;
    bool distance_regular_asserted = false;  // required for the shortcut
    int spot_checks = 8;                     // points whose distribution must agree
};

inline constexpr std::size_t kFullPairLimit = 50000;

// M_ell = sum_{x,y in C} P_ell^(n)(x.y), ell = 1..lmax; index 0 holds M_0 = N^2.
struct MomentProfile {
    int dim = 0;
    std::vector<Rational> moments;
    MomentMode used = MomentMode::Full;
};

MomentProfile moment_profile(const SphericalCode& code, int lmax, const MomentOptions& opt = {});
MomentProfile moment_profile(const CenteredCode& code, int gegenbauer_dim, int lmax, const MomentOptions& opt = {});
Rational moment(const SphericalCode& code, int ell, const MomentOptions& opt = {});

struct DesignStrength {
    int strength = 0;
    std::vector<int> extra_zero_moments;  // vanishing moments above strength
    MomentProfile profile;
    bool is_half_step() const;  // tau-and-a-half: M_{tau+2} = M_{tau+3} = 0, M_{tau+1} != 0
};

DesignStrength design_strength(const SphericalCode& code, int lmax, const MomentOptions& opt = {});
DesignStrength design_strength(const CenteredCode& code, int gegenbauer_dim, int lmax, const MomentOptions& opt = {});
DesignStrength strength_from_moments(const MomentProfile& p);

// sum_y P_ell(cos(x, y)) for each probe direction and ell in T.
struct ConstancyReport {
    std::vector<std::map<int, SurdSum>> sums;  // per direction: ell -> exact sum
    bool all_zero = true;                      // every ell != 0 sum vanished
    std::string str() const;
};

ConstancyReport design_constancy_probe(const CenteredCode& code, int gegenbauer_dim, const std::vector<Direction>& dirs,
                                       const std::vector<int>& degrees);
ConstancyReport constancy_from_histograms(const std::vector<std::map<long, long>>& histograms,
                                          const std::vector<Direction>& dirs, long code_norm2, int gegenbauer_dim,
                                          const std::vector<int>& degrees);

// Derived code of C w.r.t. a direction at cosine alpha (given by alpha^2 and
// a sign). The Gram matrix is kept as the multiset of its N^2 entries; a
// dense copy is kept for small fibers.
struct GramView {
    int dim = 0;  // Gegenbauer dimension of the derived code: parent dim - 1
    std::size_t size = 0;
    std::map<Rational, std::uint64_t> entries;
    std::vector<Rational> dense;  // size * size, empty for large fibers

    static constexpr std::size_t kDenseLimit = 2048;
    bool has_dense() const { return !dense.empty(); }
    const Rational& at(std::size_t i, std::size_t j) const { return dense[i * size + j]; }
    // Exact PSD and rank <= dim test on the dense Gram; needs size <= kPsdLimit.
    static constexpr std::size_t kPsdLimit = 400;
    bool psd_with_rank_at_most_dim() const;
};

GramView derived_gram(const CenteredCode& code, int parent_dim, const Direction& x, const Rational& alpha2, int sign = 1);
GramView derived_gram(const SphericalCode& code, const RationalVector& x, const RationalVector& cx, const Rational& alpha2,
                      int sign = 1);
MomentProfile gram_moments(const GramView& g, int lmax);
int derived_design_strength(const GramView& g, int lmax);

PotentialValue potential(const Direction& x, const CenteredCode& code, const PotentialSpec& h);
PotentialValue potential(const RationalVector& x, const RationalVector& cx, const SphericalCode& code,
                         const PotentialSpec& h);
PotentialValue potential_from_distribution(const CosineDistribution& d, const PotentialSpec& h);

}  // namespace polar
