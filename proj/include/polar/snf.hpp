#pragma once

// Smith normal form over Z with unimodular transforms, Hermite-style
// incremental span accumulation, and sublattice indices in E8 / Leech.

#include "polar/exact.hpp"
#include "polar/lattice.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using IntMatrix = std::vector<std::vector<BigInt>>;  // row-major

class RankDeficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInAmbient : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SNFResult {
    IntMatrix S, D, T;             // B = S * D * T
    std::vector<BigInt> diagonal;  // d_1 | d_2 | ... (nonzero entries)
};

SNFResult smith_normal_form(const IntMatrix& B);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(IntMatrix m);  // Bareiss, exact

// Lattice spanned by integer row vectors, kept in echelon form with
// reduced off-diagonal entries. Uses 64-bit arithmetic and switches to big
// integers on overflow.
class SpanAccumulator {
public:
    explicit SpanAccumulator(int dim);
    ~SpanAccumulator();
    SpanAccumulator(SpanAccumulator&&) noexcept;
    SpanAccumulator& operator=(SpanAccumulator&&) noexcept;

    void add(std::span<const long> v);
    void add(std::span<const std::int8_t> v);
    void add(const std::vector<int>& v);

    int dim() const;
    int rank() const;
    IntMatrix basis() const;  // rank x dim
    BigInt covolume() const;  // product of pivots (valid at full rank)

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Invariant factors of the lattice spanned by the columns of B (no transforms).
std::vector<BigInt> smith_diagonal(const IntMatrix& B);
std::vector<BigInt> smith_diagonal(const SpanAccumulator& acc);

struct IndexResult {
    BigInt index;
    std::vector<BigInt> diagonal;  // invariant factors of the generator span
};

BigInt ambient_covolume(Ambient a);  // 2^8 for doubled E8, 2^36 for scaled Leech
IndexResult sublattice_index_detail(const std::vector<LatticePoint>& generators, Ambient ambient);
BigInt sublattice_index(const std::vector<LatticePoint>& generators, Ambient ambient);
IndexResult index_from_span(const SpanAccumulator& acc, Ambient ambient);

// Exact |y - k*rep|^2 divided by scale2 (coordinates given at that scale).
Rational coset_norm_parity(const RationalVector& y, const RationalVector& rep, long k, int scale2 = 1);

// "1, 2^11, 4^11, 24"
std::string compress_diagonal(const std::vector<BigInt>& diagonal);

}  // namespace polar
