#include "polar/lattice.hpp"

#include "polar/golay.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace polar {

namespace {

void require_scale(int got, int want, const char* what) {
    if (got != want) throw ScaleMismatch(std::string(what) + ": expected scale2=" + std::to_string(want));
}

// Appends one point given as ints.
void push_point(std::vector<std::int8_t>& flat, const int* coords, int dim) {
    for (int i = 0; i < dim; ++i) flat.push_back(static_cast<std::int8_t>(coords[i]));
}

Rational squared_distance(std::span<const std::int8_t> p, const RationalVector& c) {
    Rational s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational d = Rational(static_cast<long>(p[i])) - c[i];
        s += d * d;
    }
    return s;
}

// Shell generators. Each emits points into a batch buffer and flushes
// through the callback when the batch is full or the shape ends.
class BatchSink {
public:
    BatchSink(const LeechBatchFn& fn, std::size_t batch_points) : fn_(fn), cap_(batch_points * 24) {
        buf_.reserve(cap_);
    }
    void set_shape(int s) {
        flush();
        shape_ = s;
    }
    void push(const int* x) {
        push_point(buf_, x, 24);
        if (buf_.size() >= cap_) flush();
    }
    void flush() {
        if (!buf_.empty()) fn_(std::span<const std::int8_t>(buf_), shape_);
        buf_.clear();
    }

private:
    const LeechBatchFn& fn_;
    std::size_t cap_;
    std::vector<std::int8_t> buf_;
    int shape_ = 0;
};

// Signs over the set bits of `support`, even (or odd) number of minus signs.
template <typename F>
void signed_patterns(Word support, int magnitude, bool odd_minus, F&& emit) {
    std::vector<int> pos = positions_of(support);
    unsigned n = static_cast<unsigned>(pos.size());
    int x[24];
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        if ((__builtin_popcount(mask) & 1) != (odd_minus ? 1 : 0)) continue;
        std::fill(x, x + 24, 0);
        for (unsigned i = 0; i < n; ++i) x[pos[i] - 1] = (mask >> i & 1U) ? -magnitude : magnitude;
        emit(x);
    }
}

// (+-1)^24 base vector whose codeword pattern is c: -1 on c, +1 off c.
void odd_base(Word c, int* x) {
    for (int j = 0; j < 24; ++j) x[j] = (c >> j & 1U) ? -1 : 1;
}

void stream_shell2(BatchSink& sink) {
    const GolayCode& g = mog_golay();
    sink.set_shape(0);
    for (Word o : g.octads()) signed_patterns(o, 2, false, [&](const int* x) { sink.push(x); });
    sink.set_shape(1);
    int x[24];
    for (Word c : g.codewords()) {
        for (int i = 0; i < 24; ++i) {
            odd_base(c, x);
            x[i] = (c >> i & 1U) ? 3 : -3;
            sink.push(x);
        }
    }
    sink.set_shape(2);
    for (int i = 0; i < 24; ++i)
        for (int j = i + 1; j < 24; ++j)
            for (int si : {4, -4})
                for (int sj : {4, -4}) {
                    std::fill(x, x + 24, 0);
                    x[i] = si;
                    x[j] = sj;
                    sink.push(x);
                }
    sink.flush();
}

void stream_shell3(BatchSink& sink) {
    const GolayCode& g = mog_golay();
    int x[24];
    sink.set_shape(0);
    for (Word d : g.dodecads()) signed_patterns(d, 2, false, [&](const int* p) { sink.push(p); });
    sink.set_shape(1);
    for (Word c : g.codewords()) {
        for (int i = 0; i < 24; ++i)
            for (int j = i + 1; j < 24; ++j)
                for (int k = j + 1; k < 24; ++k) {
                    odd_base(c, x);
                    for (int p : {i, j, k}) x[p] = (c >> p & 1U) ? 3 : -3;
                    sink.push(x);
                }
    }
    sink.set_shape(2);
    for (Word o : g.octads()) {
        for (int pos = 0; pos < 24; ++pos) {
            if (o >> pos & 1U) continue;
            for (int s4 : {4, -4}) {
                signed_patterns(o, 2, true, [&](const int* p) {
                    std::copy(p, p + 24, x);
                    x[pos] = s4;
                    sink.push(x);
                });
            }
        }
    }
    sink.set_shape(3);
    for (Word c : g.codewords()) {
        for (int i = 0; i < 24; ++i) {
            odd_base(c, x);
            x[i] = (c >> i & 1U) ? -5 : 5;
            sink.push(x);
        }
    }
    sink.flush();
}

}  // namespace

SphericalCode::SphericalCode(int dim, int scale2, std::vector<std::int8_t> flat, RationalVector center,
                             Rational radius2)
    : dim_(dim), scale2_(scale2), flat_(std::move(flat)), center_(std::move(center)), radius2_(std::move(radius2)) {
    if (dim_ <= 0 || flat_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("SphericalCode: coordinate count not a multiple of dim");
    if (center_.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("SphericalCode: center dim");
}

SphericalCode SphericalCode::from_points(int dim, int scale2, std::vector<std::int8_t> flat) {
    if (flat.empty()) throw EmptyCode("empty code");
    SphericalCode tmp(dim, scale2, std::move(flat), RationalVector(static_cast<std::size_t>(dim)), Rational(0));
    RationalVector c = center_of_mass(tmp);
    auto radii = distinct_radii2(SphericalCode(dim, scale2, tmp.flat_, c, Rational(0)));
    if (radii.size() != 1) throw std::domain_error("points are not equidistant from their center of mass");
    return SphericalCode(dim, scale2, std::move(tmp.flat_), std::move(c), radii.front());
}

LatticePoint SphericalCode::lattice_point(std::size_t i) const {
    auto p = point(i);
    return LatticePoint{std::vector<int>(p.begin(), p.end()), scale2_};
}

SphericalCode e8_layer(int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("e8_layer: k must be 1 or 2");
    std::vector<std::int8_t> flat;
    int x[8];
    auto sum_ok = [](const int* p) {
        int s = 0;
        for (int i = 0; i < 8; ++i) s += p[i];
        return ((s % 4) + 4) % 4 == 0;
    };
    if (k == 1) {
        for (unsigned mask = 0; mask < 256; ++mask) {
            for (int i = 0; i < 8; ++i) x[i] = (mask >> i & 1U) ? -1 : 1;
            if (sum_ok(x)) push_point(flat, x, 8);
        }
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                for (int si : {2, -2})
                    for (int sj : {2, -2}) {
                        std::fill(x, x + 8, 0);
                        x[i] = si;
                        x[j] = sj;
                        push_point(flat, x, 8);
                    }
    } else {
        for (int i = 0; i < 8; ++i)
            for (int s : {4, -4}) {
                std::fill(x, x + 8, 0);
                x[i] = s;
                push_point(flat, x, 8);
            }
        for (unsigned support = 0; support < 256; ++support) {
            if (__builtin_popcount(support) != 4) continue;
            for (unsigned signs = 0; signs < 16; ++signs) {
                std::fill(x, x + 8, 0);
                unsigned b = 0;
                for (int i = 0; i < 8; ++i)
                    if (support >> i & 1U) x[i] = (signs >> b++ & 1U) ? -2 : 2;
                push_point(flat, x, 8);
            }
        }
        for (int big = 0; big < 8; ++big)
            for (unsigned mask = 0; mask < 256; ++mask) {
                for (int i = 0; i < 8; ++i) x[i] = (mask >> i & 1U) ? -1 : 1;
                x[big] *= 3;
                if (sum_ok(x)) push_point(flat, x, 8);
            }
    }
    return SphericalCode(8, kE8Scale2, std::move(flat), RationalVector(8), Rational(8 * k));
}

bool e8_contains(const LatticePoint& p) {
    require_scale(p.scale2, kE8Scale2, "e8_contains");
    if (p.dim() != 8) throw std::invalid_argument("e8_contains: dim must be 8");
    int parity = ((p.coords[0] % 2) + 2) % 2;
    int s = 0;
    for (int c : p.coords) {
        if ((((c % 2) + 2) % 2) != parity) return false;
        s += c;
    }
    return ((s % 4) + 4) % 4 == 0;
}

bool leech_contains_raw(const std::int8_t* x) {
    const GolayCode& g = mog_golay();
    int m = x[0] & 1;
    int s = 0;
    Word w = 0;
    for (int i = 0; i < 24; ++i) {
        if ((x[i] & 1) != m) return false;
        int h = (x[i] - m) / 2;
        if (h & 1) w |= Word{1} << i;
        s += x[i];
    }
    if (!g.contains(w)) return false;
    return (((s - 4 * m) % 8) + 8) % 8 == 0;
}

bool leech_contains(const LatticePoint& x) {
    require_scale(x.scale2, kLeechScale2, "leech_contains");
    if (x.dim() != 24) throw std::invalid_argument("leech_contains: dim must be 24");
    std::int8_t raw[24];
    for (int i = 0; i < 24; ++i) {
        int c = x.coords[static_cast<std::size_t>(i)];
        // Parity and mod-8 tests only need c mod 16.
        raw[i] = static_cast<std::int8_t>(((c % 16) + 16) % 16);
    }
    return leech_contains_raw(raw);
}

std::vector<long> leech_shape_counts(int k) {
    if (k == 2) return {97152, 98304, 1104};
    if (k == 3) return {2048L * 2576, 2024L * 4096, 256L * 759 * 16, 24L * 4096};
    throw std::invalid_argument("leech_shape_counts: k must be 2 or 3");
}

void leech_layer_stream(int k, const LeechBatchFn& fn, std::size_t batch_points) {
    BatchSink sink(fn, std::max<std::size_t>(batch_points, 1));
    if (k == 2) {
        stream_shell2(sink);
    } else if (k == 3) {
        stream_shell3(sink);
    } else {
        throw std::invalid_argument("leech_layer: k must be 2 or 3");
    }
}

SphericalCode leech_layer(int k) {
    std::vector<std::int8_t> flat;
    leech_layer_stream(k, [&](std::span<const std::int8_t> b, int) { flat.insert(flat.end(), b.begin(), b.end()); });
    return SphericalCode(24, kLeechScale2, std::move(flat), RationalVector(24), Rational(16 * k));
}

namespace {

bool satisfies(std::span<const std::int8_t> p, const std::vector<Constraint>& cs) {
    for (const auto& c : cs)
        if (scaled_dot(p, c.anchor.coords) != c.dot) return false;
    return true;
}

void check_constraints(int dim, int scale2, const std::vector<Constraint>& cs) {
    for (const auto& c : cs) {
        require_scale(c.anchor.scale2, scale2, "carve");
        if (c.anchor.dim() != dim) throw std::invalid_argument("carve: anchor dimension");
    }
}

}  // namespace

SphericalCode carve(const SphericalCode& layer, const std::vector<Constraint>& constraints) {
    check_constraints(layer.dim(), layer.scale2(), constraints);
    std::vector<std::int8_t> flat;
    for (std::size_t i = 0; i < layer.size(); ++i) {
        auto p = layer.point(i);
        if (satisfies(p, constraints)) flat.insert(flat.end(), p.begin(), p.end());
    }
    if (flat.empty()) throw EmptyCode("carve: no point satisfies the constraints");
    return SphericalCode::from_points(layer.dim(), layer.scale2(), std::move(flat));
}

SphericalCode carve_leech_layer(int k, const std::vector<Constraint>& constraints) {
    check_constraints(24, kLeechScale2, constraints);
    std::vector<std::int8_t> flat;
    leech_layer_stream(k, [&](std::span<const std::int8_t> b, int) {
        for (std::size_t off = 0; off < b.size(); off += 24) {
            auto p = b.subspan(off, 24);
            if (satisfies(p, constraints)) flat.insert(flat.end(), p.begin(), p.end());
        }
    });
    if (flat.empty()) throw EmptyCode("carve: no point satisfies the constraints");
    return SphericalCode::from_points(24, kLeechScale2, std::move(flat));
}

RationalVector center_of_mass(const SphericalCode& c) {
    if (c.empty()) throw EmptyCode("center_of_mass of empty code");
    std::vector<long> sums(static_cast<std::size_t>(c.dim()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) sums[j] += p[j];
    }
    RationalVector out;
    for (long s : sums) out.emplace_back(BigInt(s), BigInt(static_cast<long>(c.size())));
    return out;
}

LatticePoint leech_point(std::vector<int> coords) {
    if (coords.size() != 24) throw std::invalid_argument("leech_point: need 24 coordinates");
    return LatticePoint{std::move(coords), kLeechScale2};
}

LatticePoint e8_point(std::vector<int> doubled_coords) {
    if (doubled_coords.size() != 8) throw std::invalid_argument("e8_point: need 8 coordinates");
    return LatticePoint{std::move(doubled_coords), kE8Scale2};
}

long scaled_dot(std::span<const std::int8_t> a, const std::vector<int>& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
    return s;
}

Rational rational_dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rational_dot: dimension mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RationalVector to_rational(const LatticePoint& p) {
    RationalVector out;
    for (int c : p.coords) out.emplace_back(c);
    return out;
}

RationalVector to_rational(std::span<const std::int8_t> p) {
    RationalVector out;
    for (auto c : p) out.emplace_back(static_cast<int>(c));
    return out;
}

std::vector<Rational> distinct_radii2(const SphericalCode& c) {
    std::set<Rational> seen;
    for (std::size_t i = 0; i < c.size(); ++i) seen.insert(squared_distance(c.point(i), c.center()));
    return {seen.begin(), seen.end()};
}

std::string code_header(const SphericalCode& c) {
    std::ostringstream os;
    os << "# dim=" << c.dim() << " scale2=" << c.scale2() << " count=" << c.size() << " center=";
    for (std::size_t i = 0; i < c.center().size(); ++i) os << (i ? "," : "") << c.center()[i].str();
    os << " radius2=" << c.radius2().str();
    return os.str();
}

void write_code(std::ostream& os, const SphericalCode& c) {
    os << code_header(c) << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << static_cast<int>(p[j]);
        os << '\n';
    }
}

SphericalCode read_code(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0) throw std::runtime_error("code file: missing header");
    std::istringstream hs(header.substr(2));
    std::string field;
    int dim = -1, scale2 = -1;
    long count = -1;
    RationalVector center;
    std::optional<Rational> radius2;
    while (hs >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw std::runtime_error("code file: bad header field " + field);
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "dim") {
            dim = std::stoi(val);
        } else if (key == "scale2") {
            scale2 = std::stoi(val);
        } else if (key == "count") {
            count = std::stol(val);
        } else if (key == "center") {
            std::istringstream cs(val);
            std::string item;
            while (std::getline(cs, item, ',')) center.push_back(Rational::parse(item));
        } else if (key == "radius2") {
            radius2 = Rational::parse(val);
        } else {
            throw std::runtime_error("code file: unknown header key " + key);
        }
    }
    if (dim <= 0 || scale2 <= 0 || count < 0 || !radius2 || center.size() != static_cast<std::size_t>(dim))
        throw std::runtime_error("code file: incomplete header");
    std::vector<std::int8_t> flat;
    flat.reserve(static_cast<std::size_t>(count * dim));
    long v;
    while (is >> v) {
        if (v < -128 || v > 127) throw std::runtime_error("code file: coordinate out of int8 range");
        flat.push_back(static_cast<std::int8_t>(v));
    }
    if (flat.size() != static_cast<std::size_t>(count * dim)) throw std::runtime_error("code file: point count mismatch");
    return SphericalCode(dim, scale2, std::move(flat), std::move(center), *radius2);
}

}  // namespace polar
