#include "polar/verify.hpp"

#include "polar/numeric.hpp"
#include "polar/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace polar {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long den_of(const RationalVector& v) {
    long d = 1;
    for (const auto& x : v) {
        BigInt den = x.den();
        if (!den.fits_slong_p()) throw std::overflow_error("PointCloud: denominator too large");
        d = lcm_long(d, den.get_si());
    }
    return d;
}

std::string join_longs(const std::vector<long>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ')';
    return os.str();
}

std::string join_tuple(const std::vector<long>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::vector<std::vector<long>> rows_of(const CenteredCode& code) {
    std::vector<std::vector<long>> rows(code.size());
    for (std::size_t i = 0; i < code.size(); ++i) rows[i].assign(code.vec(i), code.vec(i) + code.dim());
    return rows;
}

std::string rule_nodes(const QuadratureRule& r) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < r.nodes.size(); ++i) os << (i ? ", " : "") << r.nodes[i].str();
    os << '}';
    return os.str();
}

std::string rule_weights(const QuadratureRule& r, long n) {
    std::ostringstream os;
    os << '(';
    auto w = r.scaled_weights(n);
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << w[i].str();
    os << ')';
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---------------------------------------------------------------- PointCloud

PointCloud::PointCloud(int dim, long den) : dim_(dim), den_(den) {
    if (den <= 0) throw std::invalid_argument("PointCloud: denominator must be positive");
}

PointCloud PointCloud::from_code(const SphericalCode& code) {
    PointCloud pc(code.dim(), 1);
    pc.flat_.assign(code.flat().begin(), code.flat().end());
    return pc;
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<long>>& rows, long den) {
    if (rows.empty()) throw EmptyCode("PointCloud: no rows");
    PointCloud pc(static_cast<int>(rows.front().size()), den);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != pc.dim_) throw std::invalid_argument("PointCloud: ragged rows");
        pc.flat_.insert(pc.flat_.end(), r.begin(), r.end());
    }
    return pc;
}

RationalVector PointCloud::rational_point(std::size_t i) const {
    RationalVector v;
    for (int j = 0; j < dim_; ++j) v.emplace_back(BigInt(point(i)[j]), BigInt(den_));
    return v;
}

void PointCloud::rescale(long new_den) {
    if (new_den == den_) return;
    long f = new_den / den_;
    for (auto& x : flat_) x *= f;
    den_ = new_den;
}

PointCloud PointCloud::transformed(int sign, const RationalVector& shift) const {
    if (static_cast<int>(shift.size()) != dim_) throw std::invalid_argument("PointCloud: shift dimension");
    PointCloud out = *this;
    out.rescale(lcm_long(den_, den_of(shift)));
    std::vector<long> s;
    for (const auto& x : shift) s.push_back((x * Rational(out.den_)).num().get_si());
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int j = 0; j < dim_; ++j) {
            long& v = out.flat_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)];
            v = sign * v + s[static_cast<std::size_t>(j)];
        }
    return out;
}

void PointCloud::append(const PointCloud& other) {
    if (flat_.empty() && dim_ == 0) {
        *this = other;
        return;
    }
    if (other.dim_ != dim_) throw std::invalid_argument("PointCloud: dimension mismatch");
    long d = lcm_long(den_, other.den_);
    rescale(d);
    PointCloud o = other;
    o.rescale(d);
    flat_.insert(flat_.end(), o.flat_.begin(), o.flat_.end());
}

RationalVector PointCloud::centroid() const {
    if (size() == 0) throw EmptyCode("PointCloud: empty");
    RationalVector c;
    for (int j = 0; j < dim_; ++j) {
        BigInt s = 0;
        for (std::size_t i = 0; i < size(); ++i) s += point(i)[j];
        c.emplace_back(s, BigInt(den_) * BigInt(static_cast<unsigned long>(size())));
    }
    return c;
}

// ---------------------------------------------------------------- codes

CenteredCode AssembledCode::part(const std::string& name) const {
    for (const auto& p : parts)
        if (p.label == name) {
            std::vector<Direction> dirs;
            for (std::size_t i = p.begin; i < p.end; ++i) dirs.push_back(code->direction_of(i));
            return CenteredCode(code->dim(), std::move(dirs));
        }
    throw std::out_of_range("AssembledCode: no part named " + name);
}

CodeBuilder& CodeBuilder::add(std::string part_label, PointCloud points) {
    parts_.emplace_back(std::move(part_label), std::move(points));
    return *this;
}

CodeBuilder& CodeBuilder::symmetrize() {
    symmetrize_ = true;
    return *this;
}

AssembledCode CodeBuilder::build() const {
    if (parts_.empty()) throw EmptyCode("CodeBuilder: no parts");
    PointCloud all;
    AssembledCode out;
    out.label = label_;
    for (const auto& [name, pts] : parts_) {
        std::size_t begin = all.size();
        all.append(pts);
        out.parts.push_back({name, begin, all.size()});
    }
    const int dim = all.dim();
    const long n = static_cast<long>(all.size());
    out.ambient_dim = dim;
    out.center = all.centroid();
    // n * den * (x - center) = n * X - sum X, all integers.
    std::vector<long> sum(static_cast<std::size_t>(dim), 0);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (int j = 0; j < dim; ++j) sum[static_cast<std::size_t>(j)] += all.point(i)[j];
    std::vector<long> flat(all.size() * static_cast<std::size_t>(dim));
    long g = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (int j = 0; j < dim; ++j) {
            long v = n * all.point(i)[j] - sum[static_cast<std::size_t>(j)];
            flat[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] = v;
            g = std::gcd(g, v);
        }
    if (g == 0) throw ZeroVector("CodeBuilder: all points at the center");
    std::vector<Direction> dirs(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        dirs[i].vec.resize(static_cast<std::size_t>(dim));
        for (int j = 0; j < dim; ++j)
            dirs[i].vec[static_cast<std::size_t>(j)] = flat[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] / g;
    }
    if (symmetrize_) {
        std::size_t base = dirs.size();
        for (std::size_t i = 0; i < base; ++i) dirs.push_back(-dirs[i]);
        std::size_t k = out.parts.size();
        for (std::size_t p = 0; p < k; ++p)
            out.parts.push_back({"-" + out.parts[p].label, out.parts[p].begin + base, out.parts[p].end + base});
        out.symmetrized = true;
    }
    out.code = std::make_shared<const CenteredCode>(dim, std::move(dirs));
    return out;
}

bool all_distinct(const CenteredCode& code) {
    auto rows = rows_of(code);
    std::sort(rows.begin(), rows.end());
    return std::adjacent_find(rows.begin(), rows.end()) == rows.end();
}

bool antipodal(const CenteredCode& code) {
    auto rows = rows_of(code);
    std::sort(rows.begin(), rows.end());
    for (const auto& r : rows) {
        std::vector<long> neg(r.size());
        std::transform(r.begin(), r.end(), neg.begin(), [](long x) { return -x; });
        if (!std::binary_search(rows.begin(), rows.end(), neg)) return false;
    }
    return true;
}

int joint_rank(const CenteredCode& a, const CenteredCode& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("joint_rank: dimension mismatch");
    SpanAccumulator acc(a.dim());
    for (std::size_t i = 0; i < a.size() && acc.rank() < a.dim(); ++i)
        acc.add(std::span<const long>(a.vec(i), static_cast<std::size_t>(a.dim())));
    for (std::size_t i = 0; i < b.size() && acc.rank() < b.dim(); ++i)
        acc.add(std::span<const long>(b.vec(i), static_cast<std::size_t>(b.dim())));
    return acc.rank();
}

// ---------------------------------------------------------------- witnesses

WitnessClass classify_witness(const std::map<long, long>& dots, long witness_norm2, long code_norm2, long code_size,
                              const QuadratureRule& rule) {
    WitnessClass wc;
    wc.distribution = distribution_from_dots(dots, witness_norm2, code_norm2);
    wc.multiplicities.assign(rule.nodes.size(), 0);
    wc.nodes_ok = true;
    for (const auto& [cos, count] : wc.distribution.entries) {
        int idx = rule.node_index(cos);
        if (idx < 0) {
            wc.nodes_ok = false;
            continue;
        }
        wc.multiplicities[static_cast<std::size_t>(idx)] += count;
    }
    wc.multiplicities_ok = wc.nodes_ok;
    if (wc.nodes_ok) {
        auto scaled = rule.scaled_weights(code_size);
        for (std::size_t i = 0; i < scaled.size(); ++i)
            if (!scaled[i].is_integer() || scaled[i] != Rational(wc.multiplicities[i])) wc.multiplicities_ok = false;
    }
    return wc;
}

bool attains_pulb(const CenteredCode& code, const QuadratureRule& rule, const Direction& witness) {
    if (rule.dim != affine_dimension(code)) throw std::invalid_argument("attains_pulb: rule dimension differs from the code");
    auto wc = classify_witness(dot_histogram(witness, code), witness.norm2(), code.norm2(),
                               static_cast<long>(code.size()), rule);
    if (!wc.nodes_ok) return false;
    if (!wc.multiplicities_ok)
        throw WitnessFailure("attains_pulb: cosines are nodes but multiplicities differ from N * rho: " +
                             join_longs(wc.multiplicities));
    return true;
}

WitnessCheck check_witnesses(const CenteredCode& witnesses, const CenteredCode& code, const QuadratureRule& rule) {
    WitnessCheck out;
    out.rule_label = rule.label();
    out.witness_count = witnesses.size();
    out.pass = true;
    for (const auto& hc : cross_dot_classes(witnesses, code)) {
        WitnessClass wc = classify_witness(hc.dots, witnesses.norm2(), code.norm2(), static_cast<long>(code.size()), rule);
        wc.witnesses = hc.count;
        wc.first = hc.first;
        if (!(wc.nodes_ok && wc.multiplicities_ok)) {
            out.pass = false;
            if (!out.offending || hc.first < *out.offending) out.offending = hc.first;
        }
        out.classes.push_back(std::move(wc));
    }
    return out;
}

std::string WitnessCheck::split() const {
    if (classes.empty()) return "()";
    for (const auto& c : classes)
        if (c.multiplicities != classes.front().multiplicities || !c.nodes_ok) return "mixed";
    return join_longs(classes.front().multiplicities);
}

bool same_rule(const QuadratureRule& a, const QuadratureRule& b) {
    return a.nodes.size() == b.nodes.size() && std::equal(a.nodes.begin(), a.nodes.end(), b.nodes.begin()) &&
           a.weights == b.weights;
}

// ---------------------------------------------------------------- graphs

std::string SrgParameters::str() const {
    std::ostringstream os;
    os << "srg(" << v << ", " << k << ", " << lambda << ", " << mu << ")";
    if (!regular) os << " irregular";
    return os.str();
}

SrgParameters srg_parameters(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adjacent) {
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adjacent(i, j)) {
                bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
                bits[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
            }
    SrgParameters p;
    p.v = static_cast<long>(n);
    p.regular = true;
    std::vector<long> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t w = 0; w < words; ++w) degree[i] += std::popcount(bits[i * words + w]);
    p.k = n ? degree[0] : 0;
    for (long d : degree)
        if (d != p.k) p.regular = false;
    std::optional<long> lambda, mu;
    for (std::size_t i = 0; i < n && p.regular; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long common = 0;
            for (std::size_t w = 0; w < words; ++w) common += std::popcount(bits[i * words + w] & bits[j * words + w]);
            bool adj = (bits[i * words + j / 64] >> (j % 64)) & 1U;
            auto& slot = adj ? lambda : mu;
            if (!slot) slot = common;
            else if (*slot != common) {
                p.regular = false;
                break;
            }
        }
    p.lambda = lambda.value_or(0);
    p.mu = mu.value_or(0);
    return p;
}

SrgParameters srg_parameters(const CenteredCode& code, long adjacency_dot) {
    const int dim = code.dim();
    return srg_parameters(code.size(), [&](std::size_t i, std::size_t j) {
        const long* a = code.vec(i);
        const long* b = code.vec(j);
        long s = 0;
        for (int k = 0; k < dim; ++k) s += a[k] * b[k];
        return s == adjacency_dot;
    });
}

// ---------------------------------------------------------------- sharp codes

SharpOutcome energy_sharp_check(const CenteredCode& code, const SharpExpectation& expected, int spot_limit) {
    SharpOutcome out;
    out.label = expected.label;
    out.size = static_cast<long>(code.size());
    out.dim = affine_dimension(code);
    out.every_point = code.size() <= static_cast<std::size_t>(spot_limit);
    std::vector<HistogramClass> classes;
    if (out.every_point) {
        classes = cross_dot_classes(code, code);
    } else {
        std::vector<Direction> spots;
        for (int i = 0; i < 8; ++i) spots.push_back(code.direction_of(code.size() * static_cast<std::size_t>(i) / 8));
        classes = cross_dot_classes(CenteredCode(code.dim(), std::move(spots)), code);
    }
    out.distance_regular = classes.size() == 1;
    if (classes.empty()) return out;
    CosineDistribution dist = distribution_from_dots(classes.front().dots, code.norm2(), code.norm2());
    out.distribution = dist.str();

    std::vector<SqrtScalar> inner;
    std::vector<long> mult;
    for (const auto& [c, m] : dist.entries)
        if (c != SqrtScalar(1)) {
            inner.push_back(c);
            mult.push_back(m);
        }
    std::vector<SqrtScalar> want(expected.cosines.begin(), expected.cosines.end());
    out.table_match = inner == want && mult == expected.multiplicities;

    // LEV rule from the largest inner cosine.
    if (!inner.empty()) {
        try {
            QuadratureRule lev = lev_rule_from_s(out.dim, expected.tau, inner.back(), out.size);
            out.lev_label = lev.label();
            bool ok = lev.nodes.size() == inner.size();
            auto w = lev.scaled_weights(out.size);
            for (std::size_t i = 0; ok && i < inner.size(); ++i)
                ok = lev.nodes[i].exact && *lev.nodes[i].exact == inner[i] && w[i] == Rational(mult[i]);
            out.lev_match = ok && rule_exact_on(lev, expected.tau);
        } catch (const std::exception& e) {
            out.lev_label = std::string("error: ") + e.what();
        }
    }
    out.pass = out.distance_regular && out.table_match && out.lev_match;
    return out;
}

// ---------------------------------------------------------------- probes

ProbeOutcome local_min_probe(const Direction& witness, const CenteredCode& code, const QuadratureRule& rule,
                             const PotentialSpec& h, const ProbeOptions& opt) {
    ProbeOutcome out;
    out.potential = potential_label(h);
    if (!(opt.delta >= 0 && opt.delta <= 0.1)) throw std::invalid_argument("local_min_probe: delta must lie in [0, 0.1]");
    auto wc = classify_witness(dot_histogram(witness, code), witness.norm2(), code.norm2(),
                               static_cast<long>(code.size()), rule);
    out.applicable = wc.nodes_ok && wc.multiplicities_ok;
    if (!out.applicable) return out;

    const int dim = code.dim();
    const std::size_t n = code.size();
    const Float xnorm = sqrt(Float(witness.norm2()));
    const Float cnorm = sqrt(Float(code.norm2()));

    PotentialSum base_sum(h);
    for (const auto& [c, m] : wc.distribution.entries) base_sum.add(c, Rational(m));
    const Float base = base_sum.result().value;

    if (opt.delta == 0) {
        out.trials = opt.trials;
        out.min_margin = "0";
        out.pass = true;
        return out;
    }

    std::vector<long> xdot(n);
    for (std::size_t i = 0; i < n; ++i) xdot[i] = code.dot(i, witness.vec);

    std::mt19937_64 rng(opt.seed);
    const Float delta = Float(opt.delta);
    const Float scale = 1 / sqrt(1 + delta * delta);
    Float min_margin = 0;
    bool have_margin = false;
    for (int trial = 0; trial < opt.trials; ++trial) {
        // q: small integer combination of code directions, so it lies in the code's span.
        std::vector<long> q(static_cast<std::size_t>(dim), 0);
        __int128 q2 = 0, qx = 0;
        do {
            std::fill(q.begin(), q.end(), 0);
            for (int t = 0; t < 6; ++t) {
                std::size_t idx = static_cast<std::size_t>(rng() % n);
                long coef = static_cast<long>(rng() % 5) - 2;
                for (int k = 0; k < dim; ++k) q[static_cast<std::size_t>(k)] += coef * code.vec(idx)[k];
            }
            q2 = 0;
            qx = 0;
            for (int k = 0; k < dim; ++k) {
                q2 += static_cast<__int128>(q[static_cast<std::size_t>(k)]) * q[static_cast<std::size_t>(k)];
                qx += static_cast<__int128>(q[static_cast<std::size_t>(k)]) * witness.vec[static_cast<std::size_t>(k)];
            }
            // p = |x|^2 q - (q.x) x is zero when q is parallel to x.
        } while (q2 * witness.norm2() == qx * qx);
        if (q2 > (static_cast<__int128>(1) << 52) || qx > (static_cast<__int128>(1) << 52) ||
            -qx > (static_cast<__int128>(1) << 52))
            throw std::overflow_error("local_min_probe: perturbation too large");
        const long x2 = witness.norm2();
        const long q2l = static_cast<long>(q2);
        const long qxl = static_cast<long>(qx);
        // |p|^2 = |x|^4 |q|^2 - |x|^2 (q.x)^2
        const Float p2 = Float(x2) * Float(x2) * Float(q2l) - Float(x2) * Float(qxl) * Float(qxl);
        const Float pnorm = sqrt(p2);

        // Group points by (x.c, q.c).
        std::map<std::pair<long, long>, long> groups;
        for (std::size_t i = 0; i < n; ++i) ++groups[{xdot[i], code.dot(i, q)}];
        PotentialSum sum(h);
        for (const auto& [key, count] : groups) {
            const auto [a, b] = key;
            // p.c = |x|^2 (q.c) - (q.x)(x.c)
            Float pc = Float(x2) * Float(b) - Float(qxl) * Float(a);
            Float t = (Float(a) / (xnorm * cnorm) + delta * pc / (pnorm * cnorm)) * scale;
            sum.add_float(t, Float(count));
        }
        Float margin = sum.result().value - base;
        if (margin > 0) ++out.increased;
        if (!have_margin || margin < min_margin) min_margin = margin;
        have_margin = true;
        ++out.trials;
    }
    out.min_margin = float_str(min_margin, 30);
    // Positive beyond 2^-128 relative to the potential itself.
    out.pass = out.increased == out.trials && min_margin > abs(base) * pow(Float(2), -128);
    return out;
}

// ---------------------------------------------------------------- 1408 lines

B1408Outcome b1408_check(const CenteredCode& a2, const Rational& radius2) {
    B1408Outcome out;
    const long norm2 = a2.norm2();
    std::set<SqrtScalar> cos_set;
    for (const auto& [dot, count] : pair_dot_histogram(a2)) cos_set.insert(cosine_from_dot(dot, norm2, norm2));
    for (const auto& c : cos_set) out.cosines.push_back(c.str());

    // Pair each direction with its negation.
    auto rows = rows_of(a2);
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a] < rows[b]; });
    std::vector<std::size_t> reps;
    std::vector<char> seen(rows.size(), 0);
    out.antipodal = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (seen[i]) continue;
        std::vector<long> neg(rows[i].size());
        std::transform(rows[i].begin(), rows[i].end(), neg.begin(), [](long x) { return -x; });
        auto it = std::lower_bound(order.begin(), order.end(), neg,
                                   [&](std::size_t a, const std::vector<long>& v) { return rows[a] < v; });
        if (it == order.end() || rows[*it] != neg) {
            out.antipodal = false;
            continue;
        }
        seen[i] = seen[*it] = 1;
        reps.push_back(i);
    }
    out.lines = static_cast<long>(reps.size());

    const int dim = a2.dim();
    const std::size_t m = reps.size();
    std::vector<long> line_dot(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const long* a = a2.vec(reps[i]);
            const long* b = a2.vec(reps[j]);
            long s = 0;
            for (int k = 0; k < dim; ++k) s += a[k] * b[k];
            line_dot[i * m + j] = s;
        }
    // sigma = 2 t^2 - 1 depends only on |dot|.
    std::set<long> abs_dots;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) abs_dots.insert(std::labs(line_dot[i * m + j]));
    std::map<Rational, long> sigma_dot;
    for (long d : abs_dots) {
        Rational t{BigInt(d), BigInt(norm2)};
        sigma_dot[Rational(2) * t * t - Rational(1)] = d;
    }
    for (const auto& [s, d] : sigma_dot) out.sigmas.push_back(s.str());
    std::size_t lines = m;
    for (const auto& [s, d] : sigma_dot) {
        const long want = d;
        LineGraphRule r;
        r.name = "sigma = " + s.str();
        r.srg = srg_parameters(lines, [&line_dot, lines, want](std::size_t i, std::size_t j) {
            return std::labs(line_dot[i * lines + j]) == want;
        });
        r.degree = r.srg.k;
        out.rules.push_back(r);
    }
    // Named rule: representatives z, z' with (z - c).(z' - c) = -1 for one choice of signs.
    LineGraphRule named;
    named.name = "representative inner product -1";
    // |t| * radius2 == 1, i.e. |dot| * radius2 == norm2
    const Rational unit = Rational(BigInt(norm2)) / radius2;
    const long unit_dot = unit.is_integer() ? unit.num().get_si() : -1;
    named.srg = srg_parameters(lines, [&line_dot, lines, unit_dot](std::size_t i, std::size_t j) {
        return std::labs(line_dot[i * lines + j]) == unit_dot;
    });
    named.degree = named.srg.k;
    out.rules.push_back(named);
    for (const auto& r : out.rules)
        if (r.degree == 567) out.rules_with_degree_567.push_back(r.name);
    out.chosen = named.srg;

    const std::vector<std::string> want_cos{"-1", "-1/3", "0", "1/3", "1"};
    const std::vector<std::string> want_sigma{"-1", "-7/9"};
    out.pass = out.cosines == want_cos && out.antipodal && out.lines == 1408 && out.sigmas == want_sigma &&
               out.chosen == SrgParameters{1408, 567, 246, 216, true};
    return out;
}

// ---------------------------------------------------------------- rules

QuadratureRule RuleChoice::make(int dim) const {
    switch (kind) {
        case RuleKind::PULB:
            return pulb_rule(dim, strength);
        case RuleKind::PULB2:
            return pulb2_rule(dim, strength);
        case RuleKind::LEV:
            break;
    }
    throw std::invalid_argument("RuleChoice: LEV rules are not pair rules");
}

std::string RuleChoice::str() const {
    return (kind == RuleKind::PULB2 ? "PULB2(k=" : "PULB(tau=") + std::to_string(strength) + ")";
}

// ---------------------------------------------------------------- reports

const std::string* Clause::fact(const std::string& key) const {
    for (const auto& [k, v] : facts)
        if (k == key) return &v;
    return nullptr;
}

const Clause* VerificationReport::clause(const std::string& id) const {
    for (const auto& c : clauses)
        if (c.id == id) return &c;
    return nullptr;
}

std::string report_json(const VerificationReport& r, bool with_timings) {
    nlohmann::ordered_json j;
    j["version"] = kReportVersion;
    j["pair"] = r.pair;
    j["mode"] = r.mode;
    j["status"] = r.pass ? "pass" : "fail";
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.counts) counts[k] = v;
    j["counts"] = counts;
    nlohmann::ordered_json clauses = nlohmann::ordered_json::array();
    for (const auto& c : r.clauses) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["status"] = c.pass ? "pass" : "fail";
        nlohmann::ordered_json facts = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.facts) facts[k] = v;
        cj["facts"] = facts;
        if (with_timings) cj["seconds"] = c.seconds;
        clauses.push_back(cj);
    }
    j["clauses"] = clauses;
    return j.dump(2);
}

// ---------------------------------------------------------------- ledgers

namespace {

SnfOutcome run_snf(const SnfSpec& spec, LayerCache& cache) {
    SnfOutcome o;
    o.label = spec.label;
    SnfComputation c = spec.compute(cache);
    o.diagonal = compress_diagonal(c.result.diagonal);
    o.expected_diagonal = spec.diagonal;
    o.index = c.result.index;
    o.expected_index = spec.index;
    o.side_conditions = c.side_conditions;
    o.note = c.note;
    o.pass = o.index == o.expected_index && (spec.diagonal.empty() || spec.diagonal == o.diagonal) && c.side_conditions;
    return o;
}

GridOutcome run_grid(const GridSpec& spec, LayerCache& cache) {
    GridOutcome o;
    o.label = spec.label;
    o.expected = spec.expected;
    o.formula_ok = true;
    RationalVector y = spec.witness(cache);
    std::vector<long> coef;
    for (const auto& r : spec.ranges) coef.push_back(r.first);
    for (;;) {
        RationalVector diff = y;
        for (std::size_t i = 0; i < coef.size(); ++i)
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= Rational(coef[i]) * spec.reps[i][k];
        Rational norm = rational_dot(diff, diff) / Rational(spec.scale2);
        if (spec.closed_form && spec.closed_form(coef) != norm) o.formula_ok = false;
        bool even = norm.is_integer() && mpz_even_p(norm.num().get_mpz_t());
        if (even) o.admissible.push_back(coef);
        o.values.push_back(join_tuple(coef) + ": " + norm.str());
        // odometer over the coefficient ranges
        std::size_t i = coef.size();
        bool advanced = false;
        while (i > 0 && !advanced) {
            --i;
            if (coef[i] < spec.ranges[i].second) {
                ++coef[i];
                for (std::size_t k = i + 1; k < coef.size(); ++k) coef[k] = spec.ranges[k].first;
                advanced = true;
            }
        }
        if (!advanced) break;
    }
    std::sort(o.expected.begin(), o.expected.end());
    std::sort(o.admissible.begin(), o.admissible.end());
    o.pass = o.formula_ok && o.admissible == o.expected;
    return o;
}

}  // namespace

std::vector<SnfOutcome> snf_ledger_check(const std::string& id) {
    const PairRecipe& r = find_recipe(id);
    LayerCache cache;
    std::vector<SnfOutcome> out;
    for (const auto& s : r.snf) out.push_back(run_snf(s, cache));
    return out;
}

std::vector<GridOutcome> grid_ledger_check(const std::string& id) {
    const PairRecipe& r = find_recipe(id);
    LayerCache cache;
    std::vector<GridOutcome> out;
    for (const auto& g : r.grids) out.push_back(run_grid(g, cache));
    return out;
}

PairCodes build_pair(const std::string& id) {
    const PairRecipe& r = find_recipe(id);
    if (r.lambda_pair) throw std::invalid_argument("build_pair: the Leech layer pair is streamed, not materialized");
    LayerCache cache;
    return r.build(cache);
}

// ---------------------------------------------------------------- verify_pair

namespace {

struct ClauseTimer {
    Clause& c;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~ClauseTimer() { c.seconds = seconds_since(t0); }
};

Clause& add_clause(VerificationReport& rep, std::string id) {
    rep.clauses.push_back(Clause{std::move(id), false, {}, 0});
    return rep.clauses.back();
}

void fact(Clause& c, std::string key, std::string value) { c.facts.emplace_back(std::move(key), std::move(value)); }
void fact(Clause& c, std::string key, long value) { fact(c, std::move(key), std::to_string(value)); }
void fact(Clause& c, std::string key, bool value) { fact(c, std::move(key), std::string(value ? "true" : "false")); }

std::string strength_str(const DesignStrength& s) {
    std::ostringstream os;
    os << s.strength;
    if (!s.extra_zero_moments.empty()) {
        os << " + {";
        for (std::size_t i = 0; i < s.extra_zero_moments.size(); ++i) os << (i ? ", " : "") << s.extra_zero_moments[i];
        os << "}";
    }
    return os.str();
}

bool strength_supports(const DesignStrength& s, const RuleChoice& rule) {
    if (rule.kind == RuleKind::PULB2) return s.strength >= 2 * rule.strength - 1 && s.is_half_step();
    return s.strength >= rule.strength;
}

bool odd_rule(const RuleChoice& r) { return r.kind == RuleKind::PULB2 || r.strength % 2 == 1; }

void witness_clause(Clause& c, const WitnessCheck& w, const std::vector<long>& expected) {
    fact(c, "rule", w.rule_label);
    fact(c, "witnesses", static_cast<long>(w.witness_count));
    fact(c, "distinct_distributions", static_cast<long>(w.classes.size()));
    fact(c, "split", w.split());
    if (!expected.empty()) fact(c, "expected_split", join_longs(expected));
    if (!w.classes.empty()) fact(c, "distribution", w.classes.front().distribution.str());
    if (w.offending) fact(c, "offending_witness", static_cast<long>(*w.offending));
    c.pass = w.pass && (expected.empty() || w.split() == join_longs(expected));
}

void rule_clause(Clause& c, const QuadratureRule& r, long n) {
    fact(c, "rule", r.label());
    fact(c, "nodes", rule_nodes(r));
    fact(c, "scaled_weights", rule_weights(r, n));
    bool integral = true;
    for (const auto& w : r.scaled_weights(n)) integral = integral && w.is_integer() && w.sign() > 0;
    fact(c, "integral_positive", integral);
    c.pass = integral;
}

void identity_clause(Clause& c, const QuadratureRule& rc, const QuadratureRule& rd, long nc, long nd) {
    bool same = same_rule(rc, rd);
    fact(c, "same_nodes_and_weights", same);
    PotentialSpec gauss = GaussPotential{Rational(1)};
    Float vc = bound_value(rc, nc, gauss).value / Float(nc);
    Float vd = bound_value(rd, nd, gauss).value / Float(nd);
    fact(c, "normalized_bound_C_gauss1", float_str(vc, 30));
    fact(c, "normalized_bound_D_gauss1", float_str(vd, 30));
    c.pass = same;
}

void sharp_clause(Clause& c, const SharpOutcome& s) {
    fact(c, "size", s.size);
    fact(c, "dim", static_cast<long>(s.dim));
    fact(c, "every_point", s.every_point);
    fact(c, "distance_regular", s.distance_regular);
    fact(c, "distribution", s.distribution);
    fact(c, "table_match", s.table_match);
    fact(c, "lev_rule", s.lev_label);
    fact(c, "lev_match", s.lev_match);
    c.pass = s.pass;
}

void snf_clause(Clause& c, const SnfOutcome& s) {
    fact(c, "diagonal", s.diagonal);
    if (!s.expected_diagonal.empty()) fact(c, "expected_diagonal", s.expected_diagonal);
    fact(c, "index", s.index.get_str());
    fact(c, "expected_index", s.expected_index.get_str());
    if (!s.note.empty()) fact(c, "note", s.note);
    fact(c, "side_conditions", s.side_conditions);
    c.pass = s.pass;
}

void grid_clause(Clause& c, const GridOutcome& g) {
    std::string adm, exp;
    for (const auto& t : g.admissible) adm += join_tuple(t);
    for (const auto& t : g.expected) exp += join_tuple(t);
    fact(c, "admissible", adm.empty() ? "none" : adm);
    fact(c, "expected", exp.empty() ? "none" : exp);
    fact(c, "closed_form_matches", g.formula_ok);
    std::string vals;
    for (const auto& v : g.values) vals += (vals.empty() ? "" : "; ") + v;
    fact(c, "values", vals);
    c.pass = g.pass;
}

void probe_clauses(VerificationReport& rep, const Direction& witness, const CenteredCode& code,
                   const QuadratureRule& rule, const ProbeOptions& opt) {
    const std::vector<std::pair<std::string, PotentialSpec>> hs{{"probe.gauss", GaussPotential{Rational(1)}},
                                                                {"probe.riesz", RieszPotential{Rational(2)}}};
    for (const auto& [id, h] : hs) {
        Clause& c = add_clause(rep, id);
        ClauseTimer t{c};
        ProbeOutcome p = local_min_probe(witness, code, rule, h, opt);
        fact(c, "potential", p.potential);
        fact(c, "applicable", p.applicable);
        fact(c, "trials", static_cast<long>(p.trials));
        fact(c, "increased", static_cast<long>(p.increased));
        fact(c, "min_margin", p.min_margin);
        c.pass = p.pass;
    }
}

void finish(VerificationReport& rep) {
    rep.pass = !rep.clauses.empty();
    for (const auto& c : rep.clauses) rep.pass = rep.pass && c.pass;
}

// Halves of the Higman-Sims code cut by each minimum are Hoffman-Singleton graphs.
void higman_sims_clause(VerificationReport& rep, const PairCodes& codes) {
    Clause& c = add_clause(rep, "higman_sims_split");
    ClauseTimer t{c};
    const AssembledCode& f1 = codes.extras.at("F1");
    const CenteredCode& hs = f1.centered();
    const CenteredCode& d = codes.d.centered();
    // adjacency in the Higman-Sims graph: cosine -4/11
    Rational adj = Rational(-4, 11) * Rational(hs.norm2());
    bool all_ok = adj.is_integer();
    const long adj_dot = all_ok ? adj.num().get_si() : 0;
    long checked = 0;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < d.size() && all_ok; ++i) {
        Direction x = d.direction_of(i);
        std::vector<Direction> pos, neg;
        for (std::size_t j = 0; j < hs.size(); ++j) (hs.dot(j, x.vec) > 0 ? pos : neg).push_back(hs.direction_of(j));
        if (pos.size() != 50 || neg.size() != 50) {
            all_ok = false;
            break;
        }
        for (auto* half : {&pos, &neg}) {
            SrgParameters p = srg_parameters(CenteredCode(hs.dim(), *half), adj_dot);
            seen.insert(p.str());
            all_ok = all_ok && p == SrgParameters{50, 7, 0, 1, true};
        }
        ++checked;
    }
    fact(c, "minima_checked", checked);
    std::string s;
    for (const auto& x : seen) s += (s.empty() ? "" : "; ") + x;
    fact(c, "half_graphs", s);
    c.pass = all_ok && checked == static_cast<long>(d.size());
}

std::vector<std::size_t> sample_indices(std::size_t n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::size_t> picked;
    while (picked.size() < static_cast<std::size_t>(count) && picked.size() < n) picked.insert(rng() % n);
    return {picked.begin(), picked.end()};
}

VerificationReport verify_lambda_pair(const PairRecipe& r, const VerifyOptions& opt) {
    VerificationReport rep;
    rep.pair = r.id;
    rep.mode = opt.full ? "full" : "sampled";
    LayerCache cache;
    const SphericalCode& l2 = cache.leech2();
    AssembledCode c = CodeBuilder("Lambda(2)").add("Lambda(2)", PointCloud::from_code(l2)).build();
    const CenteredCode& cc = c.centered();
    const int n = r.dim;
    QuadratureRule rule_c = r.rule_c.make(n);
    QuadratureRule rule_d = r.rule_d.make(n);

    // Sampled witnesses on both sides.
    long l3_count = 0;
    std::vector<std::size_t> l3_pick = sample_indices(static_cast<std::size_t>(r.size_d), opt.samples, opt.seed);
    std::vector<Direction> l3_sample;
    {
        std::size_t next = 0;
        leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int) {
            std::size_t count = batch.size() / 24;
            for (std::size_t i = 0; i < count; ++i) {
                std::size_t idx = static_cast<std::size_t>(l3_count) + i;
                if (next < l3_pick.size() && l3_pick[next] == idx) {
                    l3_sample.push_back(Direction{std::vector<long>(batch.begin() + static_cast<long>(i * 24),
                                                                    batch.begin() + static_cast<long>(i * 24 + 24))});
                    ++next;
                }
            }
            l3_count += static_cast<long>(count);
        });
    }
    std::vector<std::size_t> l2_pick =
        opt.full ? std::vector<std::size_t>{} : sample_indices(cc.size(), opt.samples, opt.seed + 1);
    if (opt.full) {
        l2_pick.resize(cc.size());
        std::iota(l2_pick.begin(), l2_pick.end(), 0);
    }
    std::vector<Direction> l2_sample;
    for (auto i : l2_pick) l2_sample.push_back(cc.direction_of(i));
    CenteredCode l3_witnesses(24, l3_sample);

    {
        Clause& cl = add_clause(rep, "construction");
        ClauseTimer t{cl};
        fact(cl, "size_C", static_cast<long>(cc.size()));
        fact(cl, "size_D", l3_count);
        fact(cl, "expected_C", r.size_c);
        fact(cl, "expected_D", r.size_d);
        bool distinct = all_distinct(cc);
        fact(cl, "distinct_C", distinct);
        fact(cl, "distinct_D", std::string("lattice shell enumeration"));
        int rank_c = affine_dimension(cc);
        int rank_j = joint_rank(cc, l3_witnesses);
        fact(cl, "rank_C", static_cast<long>(rank_c));
        fact(cl, "rank_joint", static_cast<long>(rank_j));
        cl.pass = static_cast<long>(cc.size()) == r.size_c && l3_count == r.size_d && distinct && rank_c == n &&
                  rank_j == n;
    }
    const std::vector<int> degrees{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14};
    {
        Clause& cl = add_clause(rep, "strength.C");
        ClauseTimer t{cl};
        MomentOptions mo;
        mo.mode = MomentMode::DistanceRegular;
        mo.distance_regular_asserted = true;
        DesignStrength s = design_strength(cc, n, r.tau_c + 4, mo);
        fact(cl, "method", std::string("distance-regular moments with spot checks"));
        fact(cl, "strength", strength_str(s));
        fact(cl, "half_step", s.is_half_step());
        fact(cl, "table_tau", static_cast<long>(r.tau_c));
        cl.pass = strength_supports(s, r.rule_c) && s.strength >= r.tau_c;
    }

    // D witnesses (Lambda(3) points) against Lambda(2).
    WitnessCheck d_on_c;
    {
        Clause& cl = add_clause(rep, "witness.D_on_C");
        ClauseTimer t{cl};
        if (!opt.full) {
            d_on_c = check_witnesses(l3_witnesses, cc, rule_c);
        } else {
            d_on_c.rule_label = rule_c.label();
            d_on_c.pass = true;
            std::map<std::map<long, long>, std::pair<std::size_t, std::size_t>> merged;
            std::size_t offset = 0;
            leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int) {
                std::vector<Direction> dirs;
                for (std::size_t i = 0; i < batch.size() / 24; ++i)
                    dirs.push_back(Direction{std::vector<long>(batch.begin() + static_cast<long>(i * 24),
                                                               batch.begin() + static_cast<long>(i * 24 + 24))});
                for (const auto& hc : cross_dot_classes(CenteredCode(24, dirs), cc)) {
                    auto [it, ins] = merged.try_emplace(hc.dots, std::pair<std::size_t, std::size_t>{0, offset + hc.first});
                    it->second.first += hc.count;
                }
                offset += dirs.size();
            });
            d_on_c.witness_count = offset;
            for (const auto& [dots, cf] : merged) {
                WitnessClass wc = classify_witness(dots, 48, cc.norm2(), static_cast<long>(cc.size()), rule_c);
                wc.witnesses = cf.first;
                wc.first = cf.second;
                if (!(wc.nodes_ok && wc.multiplicities_ok)) {
                    d_on_c.pass = false;
                    if (!d_on_c.offending || cf.second < *d_on_c.offending) d_on_c.offending = cf.second;
                }
                d_on_c.classes.push_back(std::move(wc));
            }
        }
        witness_clause(cl, d_on_c, r.c_split);
    }

    // C witnesses (Lambda(2) points) against streamed Lambda(3).
    std::vector<std::map<long, long>> c_hist(l2_sample.size());
    {
        Clause& cl = add_clause(rep, "witness.C_on_D");
        ClauseTimer t{cl};
        const long bound = 48;  // |x.y| <= sqrt(32 * 48) < 40
        const unsigned workers = worker_count();
        std::vector<std::vector<long>> dense(l2_sample.size(), std::vector<long>(2 * bound + 1, 0));
        leech_layer_stream(3, [&](std::span<const std::int8_t> batch, int) {
            const std::size_t count = batch.size() / 24;
            parallel_interleaved(l2_sample.size(), workers, [&](unsigned, std::size_t w) {
                const long* x = l2_sample[w].vec.data();
                int xs[24];
                for (int k = 0; k < 24; ++k) xs[k] = static_cast<int>(x[k]);
                auto& h = dense[w];
                for (std::size_t i = 0; i < count; ++i) {
                    const std::int8_t* p = batch.data() + i * 24;
                    int s = 0;
                    for (int k = 0; k < 24; ++k) s += xs[k] * p[k];
                    ++h[static_cast<std::size_t>(s + bound)];
                }
            });
        });
        WitnessCheck chk;
        chk.rule_label = rule_d.label();
        chk.witness_count = l2_sample.size();
        chk.pass = true;
        std::map<std::map<long, long>, std::pair<std::size_t, std::size_t>> merged;
        for (std::size_t w = 0; w < l2_sample.size(); ++w) {
            for (long b = 0; b <= 2 * bound; ++b)
                if (dense[w][static_cast<std::size_t>(b)]) c_hist[w][b - bound] = dense[w][static_cast<std::size_t>(b)];
            auto [it, ins] = merged.try_emplace(c_hist[w], std::pair<std::size_t, std::size_t>{0, l2_pick[w]});
            ++it->second.first;
        }
        for (const auto& [dots, cf] : merged) {
            WitnessClass wc = classify_witness(dots, cc.norm2(), 48, l3_count, rule_d);
            wc.witnesses = cf.first;
            wc.first = cf.second;
            if (!(wc.nodes_ok && wc.multiplicities_ok)) {
                chk.pass = false;
                if (!chk.offending || cf.second < *chk.offending) chk.offending = cf.second;
            }
            chk.classes.push_back(std::move(wc));
        }
        std::sort(chk.classes.begin(), chk.classes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        witness_clause(cl, chk, r.d_split);
    }
    {
        Clause& cl = add_clause(rep, "strength.D");
        ClauseTimer t{cl};
        // Constancy of sum_y P_ell(x.y) over Lambda(3) from the C witnesses' histograms.
        ConstancyReport cr = constancy_from_histograms(c_hist, l2_sample, 48, n, degrees);
        fact(cl, "method", std::string("constancy probe at the C witnesses"));
        fact(cl, "directions", static_cast<long>(l2_sample.size()));
        fact(cl, "degrees", std::string("1..11, 13, 14"));
        fact(cl, "all_zero", cr.all_zero);
        ConstancyReport twelve = constancy_from_histograms(c_hist, l2_sample, 48, n, {12});
        fact(cl, "degree_12_zero", twelve.all_zero);
        cl.pass = cr.all_zero && !twelve.all_zero;
    }
    {
        Clause& cl = add_clause(rep, "strength.C_probe");
        ClauseTimer t{cl};
        std::vector<std::map<long, long>> hist;
        for (const auto& d : l3_sample) hist.push_back(dot_histogram(d, cc));
        ConstancyReport cr = constancy_from_histograms(hist, l3_sample, cc.norm2(), n, degrees);
        fact(cl, "directions", static_cast<long>(l3_sample.size()));
        fact(cl, "degrees", std::string("1..11, 13, 14"));
        fact(cl, "all_zero", cr.all_zero);
        cl.pass = cr.all_zero;
    }
    {
        Clause& cl = add_clause(rep, "rule.C");
        ClauseTimer t{cl};
        rule_clause(cl, rule_c, static_cast<long>(cc.size()));
    }
    {
        Clause& cl = add_clause(rep, "rule.D");
        ClauseTimer t{cl};
        rule_clause(cl, rule_d, l3_count);
    }
    {
        Clause& cl = add_clause(rep, "rule_identity");
        ClauseTimer t{cl};
        identity_clause(cl, rule_c, rule_d, static_cast<long>(cc.size()), l3_count);
    }
    {
        Clause& cl = add_clause(rep, "minima");
        ClauseTimer t{cl};
        fact(cl, "minima_of_C", l3_count);
        fact(cl, "minima_of_D", static_cast<long>(cc.size()));
        fact(cl, "expected_minima_of_C", r.size_d);
        bool anti_c = antipodal(cc);
        bool anti_d = true;
        for (const auto& d : l3_sample) {
            std::vector<int> neg;
            for (long x : d.vec) neg.push_back(static_cast<int>(-x));
            anti_d = anti_d && leech_contains(leech_point(neg));
        }
        fact(cl, "antipodal_C", anti_c);
        fact(cl, "antipodal_D_sampled", anti_d);
        cl.pass = l3_count == r.size_d && anti_c && anti_d;
    }
    for (const auto& s : r.sharp) {
        Clause& cl = add_clause(rep, "sharp." + s.expected.label);
        ClauseTimer t{cl};
        sharp_clause(cl, energy_sharp_check(cc, s.expected));
    }
    for (const auto& s : r.snf) {
        Clause& cl = add_clause(rep, "snf." + s.label);
        ClauseTimer t{cl};
        snf_clause(cl, run_snf(s, cache));
    }
    if (opt.probes && !l3_sample.empty()) probe_clauses(rep, l3_sample.front(), cc, rule_c, opt.probe);

    rep.counts["size_C"] = static_cast<long>(cc.size());
    rep.counts["size_D"] = l3_count;
    rep.counts["minima_of_C"] = l3_count;
    rep.counts["minima_of_D"] = static_cast<long>(cc.size());
    rep.counts["witnesses_D_on_C"] = static_cast<long>(d_on_c.witness_count);
    rep.counts["witnesses_C_on_D"] = static_cast<long>(l2_sample.size());
    finish(rep);
    return rep;
}

}  // namespace

VerificationReport verify_pair(const std::string& id, const VerifyOptions& opt) {
    const PairRecipe& r = find_recipe(id);
    if (r.lambda_pair) return verify_lambda_pair(r, opt);

    VerificationReport rep;
    rep.pair = r.id;
    rep.mode = "exact";
    LayerCache cache;
    PairCodes codes = r.build(cache);
    const CenteredCode& c = codes.c.centered();
    const CenteredCode& d = codes.d.centered();
    const int n = r.dim;

    {
        Clause& cl = add_clause(rep, "construction");
        ClauseTimer t{cl};
        fact(cl, "size_C", static_cast<long>(c.size()));
        fact(cl, "size_D", static_cast<long>(d.size()));
        fact(cl, "expected_C", r.size_c);
        fact(cl, "expected_D", r.size_d);
        bool distinct = all_distinct(c) && all_distinct(d);
        fact(cl, "distinct", distinct);
        int rc = affine_dimension(c), rd = affine_dimension(d), rj = joint_rank(c, d);
        fact(cl, "rank_C", static_cast<long>(rc));
        fact(cl, "rank_D", static_cast<long>(rd));
        fact(cl, "rank_joint", static_cast<long>(rj));
        fact(cl, "dim", static_cast<long>(n));
        cl.pass = static_cast<long>(c.size()) == r.size_c && static_cast<long>(d.size()) == r.size_d && distinct &&
                  rc == n && rd == n && rj == n;
    }
    const int lmax = std::max(r.tau_c, r.tau_d) + 4;
    MomentOptions full;
    full.mode = MomentMode::Full;
    auto strength = [&](const std::string& id, const CenteredCode& code, int tau, const RuleChoice& rule) {
        Clause& cl = add_clause(rep, id);
        ClauseTimer t{cl};
        DesignStrength s = design_strength(code, n, lmax, full);
        fact(cl, "strength", strength_str(s));
        fact(cl, "half_step", s.is_half_step());
        fact(cl, "table_tau", static_cast<long>(tau));
        fact(cl, "dgs_bound", dgs_bound(n, s.strength).get_str());
        cl.pass = s.strength >= tau && strength_supports(s, rule) &&
                  dgs_bound(n, s.strength) <= BigInt(static_cast<unsigned long>(code.size()));
    };
    strength("strength.C", c, r.tau_c, r.rule_c);
    strength("strength.D", d, r.tau_d, r.rule_d);

    QuadratureRule rule_c = r.rule_c.make(n);
    QuadratureRule rule_d = r.rule_d.make(n);
    {
        Clause& cl = add_clause(rep, "rule.C");
        ClauseTimer t{cl};
        rule_clause(cl, rule_c, static_cast<long>(c.size()));
    }
    {
        Clause& cl = add_clause(rep, "rule.D");
        ClauseTimer t{cl};
        rule_clause(cl, rule_d, static_cast<long>(d.size()));
    }
    {
        Clause& cl = add_clause(rep, "witness.D_on_C");
        ClauseTimer t{cl};
        witness_clause(cl, check_witnesses(d, c, rule_c), r.c_split);
    }
    {
        Clause& cl = add_clause(rep, "witness.C_on_D");
        ClauseTimer t{cl};
        witness_clause(cl, check_witnesses(c, d, rule_d), r.d_split);
    }
    {
        Clause& cl = add_clause(rep, "rule_identity");
        ClauseTimer t{cl};
        identity_clause(cl, rule_c, rule_d, static_cast<long>(c.size()), static_cast<long>(d.size()));
    }
    {
        Clause& cl = add_clause(rep, "minima");
        ClauseTimer t{cl};
        fact(cl, "minima_of_C", static_cast<long>(d.size()));
        fact(cl, "minima_of_D", static_cast<long>(c.size()));
        fact(cl, "expected_minima_of_C", r.size_d);
        bool ok = static_cast<long>(d.size()) == r.size_d && static_cast<long>(c.size()) == r.size_c;
        if (odd_rule(r.rule_c)) {
            bool a = antipodal(d);
            fact(cl, "antipodal_D", a);
            ok = ok && a;
        }
        if (odd_rule(r.rule_d)) {
            bool a = antipodal(c);
            fact(cl, "antipodal_C", a);
            ok = ok && a;
        }
        cl.pass = ok;
    }
    for (const auto& ps : r.part_splits) {
        Clause& cl = add_clause(rep, "part_split." + ps.part);
        ClauseTimer t{cl};
        const AssembledCode& owner = ps.side == "C" ? codes.c : codes.d;
        const CenteredCode& witnesses = ps.side == "C" ? d : c;
        const QuadratureRule& rule = ps.side == "C" ? rule_c : rule_d;
        CenteredCode part = owner.part(ps.part);
        WitnessCheck w = check_witnesses(witnesses, part, rule);
        fact(cl, "part_size", static_cast<long>(part.size()));
        witness_clause(cl, w, ps.multiplicities);
    }
    for (const auto& s : r.sharp) {
        Clause& cl = add_clause(rep, "sharp." + s.expected.label);
        ClauseTimer t{cl};
        const AssembledCode& code = s.code == "C" ? codes.c : (s.code == "D" ? codes.d : codes.extras.at(s.code));
        sharp_clause(cl, energy_sharp_check(code.centered(), s.expected));
    }
    for (const auto& g : r.graphs) {
        Clause& cl = add_clause(rep, "graph." + g.code);
        ClauseTimer t{cl};
        const CenteredCode& code = codes.extras.at(g.code).centered();
        Rational dot = g.adjacency_cosine * Rational(code.norm2());
        SrgParameters p = dot.is_integer() ? srg_parameters(code, dot.num().get_si()) : SrgParameters{};
        fact(cl, "adjacency_cosine", g.adjacency_cosine.str());
        fact(cl, "parameters", p.str());
        fact(cl, "expected", g.expected.str());
        cl.pass = p == g.expected;
    }
    if (r.higman_sims_split) higman_sims_clause(rep, codes);
    if (r.projective_lines) {
        Clause& cl = add_clause(rep, "b1408");
        ClauseTimer t{cl};
        B1408Outcome b = b1408_check(codes.extras.at("A2").centered());
        auto join = [](const std::vector<std::string>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
            return s + "}";
        };
        fact(cl, "cosines", join(b.cosines));
        fact(cl, "lines", b.lines);
        fact(cl, "antipodal", b.antipodal);
        fact(cl, "sigmas", join(b.sigmas));
        fact(cl, "srg", b.chosen.str());
        fact(cl, "rules_with_degree_567", join(b.rules_with_degree_567));
        cl.pass = b.pass;
    }
    for (const auto& s : r.snf) {
        Clause& cl = add_clause(rep, "snf." + s.label);
        ClauseTimer t{cl};
        snf_clause(cl, run_snf(s, cache));
    }
    for (const auto& g : r.grids) {
        Clause& cl = add_clause(rep, "grid." + g.label);
        ClauseTimer t{cl};
        grid_clause(cl, run_grid(g, cache));
    }
    if (opt.probes) probe_clauses(rep, d.direction_of(0), c, rule_c, opt.probe);

    rep.counts["size_C"] = static_cast<long>(c.size());
    rep.counts["size_D"] = static_cast<long>(d.size());
    rep.counts["minima_of_C"] = static_cast<long>(d.size());
    rep.counts["minima_of_D"] = static_cast<long>(c.size());
    finish(rep);
    return rep;
}

}  // namespace polar
