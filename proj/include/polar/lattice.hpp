#pragma once

// E8 and Leech lattice shells with integer coordinates, membership tests,
// anchor-constraint carving and code files.
//
// Scale conventions: E8 points use doubled coordinates (scale2 = 4), Leech
// points drop the 1/sqrt(8) factor (scale2 = 8). The actual inner product is
// the scaled one divided by scale2.

#include "polar/exact.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

enum class Ambient { E8, Leech };

inline constexpr int kE8Scale2 = 4;
inline constexpr int kLeechScale2 = 8;

using RationalVector = std::vector<Rational>;

struct LatticePoint {
    std::vector<int> coords;
    int scale2 = 1;

    int dim() const { return static_cast<int>(coords.size()); }
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

class ScaleMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyCode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite point set on a sphere. Points are stored contiguously as int8
// coordinates at a common scale; center and radius2 are in the same scaled
// units (radius2 / scale2 is the actual squared radius).
class SphericalCode {
public:
    SphericalCode() = default;
    SphericalCode(int dim, int scale2, std::vector<std::int8_t> flat, RationalVector center, Rational radius2);
    // Builds from points; center is the center of mass, radius2 is checked.
    static SphericalCode from_points(int dim, int scale2, std::vector<std::int8_t> flat);

    int dim() const { return dim_; }
    int scale2() const { return scale2_; }
    std::size_t size() const { return dim_ ? flat_.size() / static_cast<std::size_t>(dim_) : 0; }
    bool empty() const { return flat_.empty(); }
    std::span<const std::int8_t> point(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    LatticePoint lattice_point(std::size_t i) const;
    const std::vector<std::int8_t>& flat() const { return flat_; }
    const RationalVector& center() const { return center_; }
    const Rational& radius2() const { return radius2_; }
    Rational actual_radius2() const { return radius2_ / Rational(scale2_); }

private:
    int dim_ = 0, scale2_ = 1;
    std::vector<std::int8_t> flat_;
    RationalVector center_;
    Rational radius2_;
};

// --- E8 ---
SphericalCode e8_layer(int k);  // k in {1, 2}
bool e8_contains(const LatticePoint& p);

// --- Leech ---
bool leech_contains(const LatticePoint& x);
bool leech_contains_raw(const std::int8_t* x);  // 24 coords at scale2 = 8

// Shell sizes and shape counts for k in {2, 3}.
std::vector<long> leech_shape_counts(int k);

// Streams a Leech shell in fixed batches (flat int8, 24 per point), in
// shape-major order. The callback receives the batch and the shape index.
using LeechBatchFn = std::function<void(std::span<const std::int8_t> batch, int shape)>;
void leech_layer_stream(int k, const LeechBatchFn& fn, std::size_t batch_points = 1 << 15);
SphericalCode leech_layer(int k);  // materialized; only sensible for k = 2

// --- carving ---
struct Constraint {
    LatticePoint anchor;
    long dot;  // required scaled inner product with the anchor
};

SphericalCode carve(const SphericalCode& layer, const std::vector<Constraint>& constraints);
SphericalCode carve_leech_layer(int k, const std::vector<Constraint>& constraints);

RationalVector center_of_mass(const SphericalCode& c);

// --- small helpers ---
LatticePoint leech_point(std::vector<int> coords);
LatticePoint e8_point(std::vector<int> doubled_coords);
long scaled_dot(std::span<const std::int8_t> a, const std::vector<int>& b);
Rational rational_dot(const RationalVector& a, const RationalVector& b);
RationalVector to_rational(const LatticePoint& p);
RationalVector to_rational(std::span<const std::int8_t> p);

// Distinct squared norms |p - center|^2 (scaled units); a single value
// means the code is on its circumscribed sphere.
std::vector<Rational> distinct_radii2(const SphericalCode& c);

// --- code files ---
void write_code(std::ostream& os, const SphericalCode& c);
SphericalCode read_code(std::istream& is);
std::string code_header(const SphericalCode& c);

}  // namespace polar
