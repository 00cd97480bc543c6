#include "polar/design.hpp"

#include "polar/parallel.hpp"
#include "polar/quadrature.hpp"
#include "polar/snf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polar {

namespace {

BigInt lcm_of_denominators(const RationalVector& v) {
    BigInt l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    return l;
}

long checked_long(const BigInt& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("centered coordinate does not fit in 64 bits");
    return v.get_si();
}

Direction direction_from_difference(const RationalVector& diff) {
    BigInt den = lcm_of_denominators(diff);
    Direction d;
    for (const auto& x : diff) d.vec.push_back(checked_long((x * Rational(den)).num()));
    if (d.norm2() == 0) throw ZeroVector("direction: point coincides with its center");
    return d;
}

template <int P>
inline int dot16(const std::int16_t* a, const std::int16_t* b) {
    int s = 0;
    for (int k = 0; k < P; ++k) s += a[k] * b[k];
    return s;
}

template <int P>
void pair_histogram_fast(const std::vector<std::int16_t>& data, std::size_t n, long norm2,
                         std::vector<std::vector<std::uint64_t>>& hist) {
    parallel_interleaved(n, static_cast<unsigned>(hist.size()), [&](unsigned w, std::size_t i) {
        auto& h = hist[w];
        const std::int16_t* a = data.data() + i * P;
        h[static_cast<std::size_t>(2 * norm2)] += 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            int s = dot16<P>(a, data.data() + j * P);
            h[static_cast<std::size_t>(s + norm2)] += 2;
        }
    });
}

// Distance-regular spot check indices.
std::vector<std::size_t> spot_indices(std::size_t n, int count) {
    std::vector<std::size_t> out;
    for (int i = 0; i < count; ++i) {
        std::size_t idx = static_cast<std::size_t>((static_cast<unsigned long long>(n) * static_cast<unsigned>(i)) /
                                                   static_cast<unsigned>(count));
        if (out.empty() || out.back() != idx) out.push_back(idx);
    }
    return out;
}

Rational dot_cosine(long dot, long norm2) { return Rational(BigInt(dot), BigInt(norm2)); }

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("POLAR_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

long Direction::norm2() const {
    long s = 0;
    for (long x : vec) s += x * x;
    return s;
}

Direction Direction::operator-() const {
    Direction d = *this;
    for (auto& x : d.vec) x = -x;
    return d;
}

Direction direction(const RationalVector& x, const RationalVector& center) {
    if (x.size() != center.size()) throw std::invalid_argument("direction: dimension mismatch");
    RationalVector diff;
    for (std::size_t i = 0; i < x.size(); ++i) diff.push_back(x[i] - center[i]);
    return direction_from_difference(diff);
}

Direction direction(const LatticePoint& x, const RationalVector& center) { return direction(to_rational(x), center); }

CenteredCode::CenteredCode(const SphericalCode& code) : dim_(code.dim()), count_(code.size()) {
    if (code.empty()) throw EmptyCode("CenteredCode: empty code");
    BigInt den = lcm_of_denominators(code.center());
    std::vector<long> shift;
    for (const auto& c : code.center()) shift.push_back(checked_long((c * Rational(den)).num()));
    long d = checked_long(den);
    flat_.resize(count_ * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < count_; ++i) {
        auto p = code.point(i);
        long n2 = 0;
        for (int j = 0; j < dim_; ++j) {
            long v = d * p[static_cast<std::size_t>(j)] - shift[static_cast<std::size_t>(j)];
            flat_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)] = v;
            n2 += v * v;
        }
        if (i == 0) norm2_ = n2;
        else if (n2 != norm2_) throw OffSphere("CenteredCode: points are not on one sphere about the center");
    }
    if (norm2_ == 0) throw ZeroVector("CenteredCode: point at the center");
}

CenteredCode::CenteredCode(int dim, std::vector<Direction> dirs) : dim_(dim), count_(dirs.size()) {
    if (dirs.empty()) throw EmptyCode("CenteredCode: no directions");
    flat_.reserve(count_ * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < count_; ++i) {
        if (static_cast<int>(dirs[i].vec.size()) != dim_) throw std::invalid_argument("CenteredCode: direction dimension");
        long n2 = dirs[i].norm2();
        if (i == 0) norm2_ = n2;
        else if (n2 != norm2_) throw OffSphere("CenteredCode: directions of unequal norm");
        flat_.insert(flat_.end(), dirs[i].vec.begin(), dirs[i].vec.end());
    }
    if (norm2_ == 0) throw ZeroVector("CenteredCode: zero direction");
}

Direction CenteredCode::direction_of(std::size_t i) const {
    return Direction{std::vector<long>(vec(i), vec(i) + dim_)};
}

long CenteredCode::dot(std::size_t i, const std::vector<long>& v) const {
    const long* a = vec(i);
    long s = 0;
    for (int j = 0; j < dim_; ++j) s += a[j] * v[static_cast<std::size_t>(j)];
    return s;
}

long CosineDistribution::multiplicity(const SqrtScalar& c) const {
    for (const auto& [v, m] : entries)
        if (v == c) return m;
    return 0;
}

std::vector<SqrtScalar> CosineDistribution::cosines() const {
    std::vector<SqrtScalar> out;
    for (const auto& e : entries) out.push_back(e.first);
    return out;
}

std::string CosineDistribution::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? ", " : "") << entries[i].first.str() << ": " << entries[i].second;
    os << '}';
    return os.str();
}

SqrtScalar cosine_from_dot(long dot, long norm_x, long norm_y) {
    if (norm_x <= 0 || norm_y <= 0) throw ZeroVector("cosine of a zero vector");
    BigInt d(dot);
    Rational sq(BigInt(d * d), BigInt(BigInt(norm_x) * BigInt(norm_y)));
    return SqrtScalar::from_signed_square(dot > 0 ? 1 : (dot < 0 ? -1 : 0), sq);
}

SqrtScalar cosine(const Direction& x, const Direction& y) {
    if (x.vec.size() != y.vec.size()) throw std::invalid_argument("cosine: dimension mismatch");
    long d = 0;
    for (std::size_t i = 0; i < x.vec.size(); ++i) d += x.vec[i] * y.vec[i];
    return cosine_from_dot(d, x.norm2(), y.norm2());
}

SqrtScalar cosine(const RationalVector& x, const RationalVector& y, const RationalVector& cx, const RationalVector& cy) {
    return cosine(direction(x, cx), direction(y, cy));
}

std::map<long, long> dot_histogram(const Direction& x, const CenteredCode& code) {
    if (static_cast<int>(x.vec.size()) != code.dim()) throw std::invalid_argument("dot_histogram: dimension mismatch");
    std::map<long, long> h;
    for (std::size_t i = 0; i < code.size(); ++i) ++h[code.dot(i, x.vec)];
    return h;
}

CosineDistribution distribution_from_dots(const std::map<long, long>& dots, long norm_x, long norm_y) {
    CosineDistribution d;
    for (const auto& [dot, count] : dots) {
        d.entries.emplace_back(cosine_from_dot(dot, norm_x, norm_y), count);
        d.total += count;
    }
    return d;
}

CosineDistribution ip_distribution(const Direction& x, const CenteredCode& code) {
    return distribution_from_dots(dot_histogram(x, code), x.norm2(), code.norm2());
}

CosineDistribution ip_distribution(const RationalVector& x, const RationalVector& cx, const SphericalCode& code) {
    return ip_distribution(direction(x, cx), CenteredCode(code));
}

int affine_dimension(const CenteredCode& code) {
    SpanAccumulator acc(code.dim());
    for (std::size_t i = 0; i < code.size() && acc.rank() < code.dim(); ++i)
        acc.add(std::span<const long>(code.vec(i), static_cast<std::size_t>(code.dim())));
    return acc.rank();
}

std::map<long, std::uint64_t> pair_dot_histogram(const CenteredCode& code) {
    const std::size_t n = code.size();
    const int dim = code.dim();
    const long norm2 = code.norm2();
    long max_abs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < dim; ++j) max_abs = std::max(max_abs, std::labs(code.vec(i)[j]));
    const unsigned workers = worker_count();
    std::map<long, std::uint64_t> out;
    int padded = dim <= 16 ? 16 : (dim <= 32 ? 32 : 0);
    bool fast = padded && max_abs < (1L << 15) && max_abs * max_abs * dim < (1L << 30) && norm2 <= (1L << 22);
    if (fast) {
        std::vector<std::int16_t> data(n * static_cast<std::size_t>(padded), 0);
        for (std::size_t i = 0; i < n; ++i)
            for (int j = 0; j < dim; ++j)
                data[i * static_cast<std::size_t>(padded) + static_cast<std::size_t>(j)] = static_cast<std::int16_t>(code.vec(i)[j]);
        std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(static_cast<std::size_t>(2 * norm2 + 1), 0));
        if (padded == 16) pair_histogram_fast<16>(data, n, norm2, hist);
        else pair_histogram_fast<32>(data, n, norm2, hist);
        for (const auto& h : hist)
            for (std::size_t b = 0; b < h.size(); ++b)
                if (h[b]) out[static_cast<long>(b) - norm2] += h[b];
        return out;
    }
    std::vector<std::map<long, std::uint64_t>> hist(workers);
    parallel_interleaved(n, workers, [&](unsigned w, std::size_t i) {
        auto& h = hist[w];
        h[norm2] += 1;
        const long* a = code.vec(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const long* b = code.vec(j);
            long s = 0;
            for (int k = 0; k < dim; ++k) s += a[k] * b[k];
            h[s] += 2;
        }
    });
    for (const auto& h : hist)
        for (const auto& [k, v] : h) out[k] += v;
    return out;
}

namespace {

std::vector<std::int16_t> pack16(const CenteredCode& code, int padded) {
    std::vector<std::int16_t> data(code.size() * static_cast<std::size_t>(padded), 0);
    for (std::size_t i = 0; i < code.size(); ++i)
        for (int j = 0; j < code.dim(); ++j)
            data[i * static_cast<std::size_t>(padded) + static_cast<std::size_t>(j)] =
                static_cast<std::int16_t>(code.vec(i)[j]);
    return data;
}

long max_abs_coord(const CenteredCode& code) {
    long m = 0;
    for (std::size_t i = 0; i < code.size(); ++i)
        for (int j = 0; j < code.dim(); ++j) m = std::max(m, std::labs(code.vec(i)[j]));
    return m;
}

template <int P>
void cross_fast(const std::vector<std::int16_t>& wit, const std::vector<std::int16_t>& data, std::size_t n_code,
                long bound, std::size_t i, std::vector<long>& dense, std::vector<std::pair<long, long>>& out) {
    const std::int16_t* a = wit.data() + i * P;
    for (std::size_t j = 0; j < n_code; ++j) ++dense[static_cast<std::size_t>(dot16<P>(a, data.data() + j * P) + bound)];
    out.clear();
    for (std::size_t b = 0; b < dense.size(); ++b)
        if (dense[b]) {
            out.emplace_back(static_cast<long>(b) - bound, dense[b]);
            dense[b] = 0;
        }
}

}  // namespace

std::vector<HistogramClass> cross_dot_classes(const CenteredCode& witnesses, const CenteredCode& code) {
    if (witnesses.dim() != code.dim()) throw std::invalid_argument("cross_dot_classes: dimension mismatch");
    const int dim = code.dim();
    const unsigned workers = worker_count();
    long bound = 0;
    while (bound * bound < witnesses.norm2() * code.norm2()) ++bound;
    long max_abs = std::max(max_abs_coord(witnesses), max_abs_coord(code));
    int padded = dim <= 16 ? 16 : (dim <= 32 ? 32 : 0);
    bool fast = padded && max_abs < (1L << 15) && max_abs * max_abs * dim < (1L << 30) && bound <= (1L << 22);

    using Key = std::vector<std::pair<long, long>>;
    struct Slot {
        std::size_t count = 0, first = 0;
    };
    std::vector<std::map<Key, Slot>> local(workers);
    std::vector<std::vector<long>> dense(workers);
    std::vector<Key> scratch(workers);
    std::vector<std::int16_t> wit16, code16;
    if (fast) {
        wit16 = pack16(witnesses, padded);
        code16 = pack16(code, padded);
        for (auto& d : dense) d.assign(static_cast<std::size_t>(2 * bound + 1), 0);
    }
    parallel_interleaved(witnesses.size(), workers, [&](unsigned w, std::size_t i) {
        Key& key = scratch[w];
        if (fast) {
            if (padded == 16) cross_fast<16>(wit16, code16, code.size(), bound, i, dense[w], key);
            else cross_fast<32>(wit16, code16, code.size(), bound, i, dense[w], key);
        } else {
            std::map<long, long> h;
            const long* a = witnesses.vec(i);
            for (std::size_t j = 0; j < code.size(); ++j) {
                const long* b = code.vec(j);
                long s = 0;
                for (int k = 0; k < dim; ++k) s += a[k] * b[k];
                ++h[s];
            }
            key.assign(h.begin(), h.end());
        }
        auto [it, inserted] = local[w].try_emplace(key);
        if (inserted) it->second.first = i;
        ++it->second.count;
    });
    std::map<Key, Slot> merged;
    for (const auto& m : local)
        for (const auto& [k, slot] : m) {
            auto [it, inserted] = merged.try_emplace(k, slot);
            if (!inserted) {
                it->second.count += slot.count;
                it->second.first = std::min(it->second.first, slot.first);
            }
        }
    std::vector<HistogramClass> out;
    for (const auto& [k, slot] : merged) out.push_back({std::map<long, long>(k.begin(), k.end()), slot.count, slot.first});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

MomentProfile moment_profile(const CenteredCode& code, int gegenbauer_dim, int lmax, const MomentOptions& opt) {
    MomentMode mode = opt.mode;
    if (mode == MomentMode::Auto) mode = code.size() <= kFullPairLimit ? MomentMode::Full : MomentMode::DistanceRegular;
    std::vector<RatPoly> polys;
    for (int ell = 0; ell <= lmax; ++ell) polys.push_back(gegenbauer(gegenbauer_dim, ell));
    MomentProfile prof;
    prof.dim = gegenbauer_dim;
    prof.used = mode;
    prof.moments.assign(static_cast<std::size_t>(lmax + 1), Rational(0));
    const long norm2 = code.norm2();
    if (mode == MomentMode::DistanceRegular) {
        if (!opt.distance_regular_asserted)
            throw ModeMisuse("distance-regular moment shortcut used without asserting distance regularity");
        std::map<long, long> reference;
        bool first = true;
        for (std::size_t idx : spot_indices(code.size(), std::max(opt.spot_checks, 1))) {
            auto h = dot_histogram(code.direction_of(idx), code);
            if (first) {
                reference = h;
                first = false;
            } else if (h != reference) {
                throw std::runtime_error("distance-regularity spot check failed at point " + std::to_string(idx));
            }
        }
        const Rational N(static_cast<long>(code.size()));
        for (const auto& [dot, count] : reference) {
            Rational t = dot_cosine(dot, norm2);
            for (int ell = 0; ell <= lmax; ++ell)
                prof.moments[static_cast<std::size_t>(ell)] += N * Rational(count) * polys[static_cast<std::size_t>(ell)](t);
        }
        return prof;
    }
    for (const auto& [dot, count] : pair_dot_histogram(code)) {
        Rational t = dot_cosine(dot, norm2);
        Rational c(BigInt(static_cast<unsigned long>(count)));
        for (int ell = 0; ell <= lmax; ++ell) prof.moments[static_cast<std::size_t>(ell)] += c * polys[static_cast<std::size_t>(ell)](t);
    }
    return prof;
}

MomentProfile moment_profile(const SphericalCode& code, int lmax, const MomentOptions& opt) {
    CenteredCode cc(code);
    return moment_profile(cc, affine_dimension(cc), lmax, opt);
}

Rational moment(const SphericalCode& code, int ell, const MomentOptions& opt) {
    return moment_profile(code, ell, opt).moments[static_cast<std::size_t>(ell)];
}

DesignStrength strength_from_moments(const MomentProfile& p) {
    DesignStrength d;
    d.profile = p;
    const int lmax = static_cast<int>(p.moments.size()) - 1;
    int tau = 0;
    while (tau + 1 <= lmax && p.moments[static_cast<std::size_t>(tau + 1)].is_zero()) ++tau;
    d.strength = tau;
    for (int ell = tau + 2; ell <= lmax; ++ell)
        if (p.moments[static_cast<std::size_t>(ell)].is_zero()) d.extra_zero_moments.push_back(ell);
    return d;
}

bool DesignStrength::is_half_step() const {
    auto has = [&](int ell) {
        return std::find(extra_zero_moments.begin(), extra_zero_moments.end(), ell) != extra_zero_moments.end();
    };
    // Antipodal codes kill every odd moment, so M_{tau+2} alone proves nothing.
    return strength % 2 == 1 && has(strength + 2) && has(strength + 3);
}

DesignStrength design_strength(const CenteredCode& code, int gegenbauer_dim, int lmax, const MomentOptions& opt) {
    return strength_from_moments(moment_profile(code, gegenbauer_dim, lmax, opt));
}

DesignStrength design_strength(const SphericalCode& code, int lmax, const MomentOptions& opt) {
    return strength_from_moments(moment_profile(code, lmax, opt));
}

ConstancyReport constancy_from_histograms(const std::vector<std::map<long, long>>& histograms,
                                          const std::vector<Direction>& dirs, long code_norm2, int gegenbauer_dim,
                                          const std::vector<int>& degrees) {
    ConstancyReport rep;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        std::map<int, SurdSum> sums;
        CosineDistribution dist = distribution_from_dots(histograms[d], dirs[d].norm2(), code_norm2);
        for (int ell : degrees) {
            RatPoly p = gegenbauer(gegenbauer_dim, ell);
            SurdSum acc;
            for (const auto& [c, count] : dist.entries) {
                SurdSum v = poly_eval_surdsum(p, c);
                for (const auto& [m, coef] : v.terms()) acc.add(SqrtScalar::surd(coef * Rational(count), m));
            }
            if (ell != 0 && !acc.is_zero()) rep.all_zero = false;
            sums.emplace(ell, acc);
        }
        rep.sums.push_back(std::move(sums));
    }
    return rep;
}

ConstancyReport design_constancy_probe(const CenteredCode& code, int gegenbauer_dim, const std::vector<Direction>& dirs,
                                       const std::vector<int>& degrees) {
    std::vector<std::map<long, long>> hist;
    for (const auto& d : dirs) hist.push_back(dot_histogram(d, code));
    return constancy_from_histograms(hist, dirs, code.norm2(), gegenbauer_dim, degrees);
}

std::string ConstancyReport::str() const {
    std::ostringstream os;
    for (std::size_t d = 0; d < sums.size(); ++d) {
        os << "direction " << d << ':';
        for (const auto& [ell, s] : sums[d]) os << " P" << ell << '=' << s.str();
        os << '\n';
    }
    return os.str();
}

GramView derived_gram(const CenteredCode& code, int parent_dim, const Direction& x, const Rational& alpha2, int sign) {
    if (alpha2 >= Rational(1) || alpha2.sign() < 0) throw std::invalid_argument("derived_gram: need 0 <= alpha^2 < 1");
    const long nx = x.norm2();
    std::vector<Direction> fiber;
    for (std::size_t i = 0; i < code.size(); ++i) {
        long d = code.dot(i, x.vec);
        Rational c2(BigInt(BigInt(d) * BigInt(d)), BigInt(BigInt(nx) * BigInt(code.norm2())));
        if (c2 != alpha2) continue;
        if (!alpha2.is_zero() && (d > 0 ? 1 : -1) != (sign >= 0 ? 1 : -1)) continue;
        fiber.push_back(code.direction_of(i));
    }
    if (fiber.empty()) throw EmptyFiber("derived_gram: no code point at the requested cosine");
    CenteredCode sub(code.dim(), fiber);
    GramView g;
    g.dim = parent_dim - 1;
    g.size = sub.size();
    const Rational one_minus = Rational(1) - alpha2;
    auto entry = [&](long dot) { return (dot_cosine(dot, sub.norm2()) - alpha2) / one_minus; };
    for (const auto& [dot, count] : pair_dot_histogram(sub)) g.entries[entry(dot)] += count;
    if (g.size <= GramView::kDenseLimit) {
        g.dense.resize(g.size * g.size);
        for (std::size_t i = 0; i < g.size; ++i)
            for (std::size_t j = i; j < g.size; ++j) {
                long d = sub.dot(i, sub.direction_of(j).vec);
                g.dense[i * g.size + j] = g.dense[j * g.size + i] = entry(d);
            }
    }
    return g;
}

GramView derived_gram(const SphericalCode& code, const RationalVector& x, const RationalVector& cx, const Rational& alpha2,
                      int sign) {
    CenteredCode cc(code);
    return derived_gram(cc, affine_dimension(cc), direction(x, cx), alpha2, sign);
}

bool GramView::psd_with_rank_at_most_dim() const {
    if (!has_dense() || size > kPsdLimit) throw std::length_error("psd check needs a small dense Gram");
    std::vector<Rational> a = dense;
    const std::size_t n = size;
    std::vector<bool> done(n, false);
    int rank = 0;
    for (;;) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            int s = a[i * n + i].sign();
            if (s < 0) return false;
            if (s > 0 && piv == n) piv = i;
        }
        if (piv == n) break;
        done[piv] = true;
        ++rank;
        const Rational p = a[piv * n + piv];
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i * n + piv].is_zero()) continue;
            Rational f = a[i * n + piv] / p;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a[i * n + j] -= f * a[piv * n + j];
        }
    }
    // Remaining block must vanish.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!done[i] && !done[j] && !a[i * n + j].is_zero()) return false;
    return rank <= dim;
}

MomentProfile gram_moments(const GramView& g, int lmax) {
    MomentProfile prof;
    prof.dim = g.dim;
    prof.moments.assign(static_cast<std::size_t>(lmax + 1), Rational(0));
    for (int ell = 0; ell <= lmax; ++ell) {
        RatPoly p = gegenbauer(g.dim, ell);
        for (const auto& [t, count] : g.entries)
            prof.moments[static_cast<std::size_t>(ell)] += Rational(BigInt(static_cast<unsigned long>(count))) * p(t);
    }
    return prof;
}

int derived_design_strength(const GramView& g, int lmax) { return strength_from_moments(gram_moments(g, lmax)).strength; }

PotentialValue potential_from_distribution(const CosineDistribution& d, const PotentialSpec& h) {
    PotentialSum sum(h);
    for (const auto& [c, count] : d.entries) sum.add(c, Rational(count));
    return sum.result();
}

PotentialValue potential(const Direction& x, const CenteredCode& code, const PotentialSpec& h) {
    return potential_from_distribution(ip_distribution(x, code), h);
}

PotentialValue potential(const RationalVector& x, const RationalVector& cx, const SphericalCode& code,
                         const PotentialSpec& h) {
    return potential(direction(x, cx), CenteredCode(code), h);
}

}  // namespace polar
