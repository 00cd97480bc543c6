#include "polar/snf.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

namespace polar {

namespace {

struct Overflow {};

// Checked arithmetic: int64 throws Overflow, BigInt never does.
inline long add_c(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long mul_c(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline BigInt add_c(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt mul_c(const BigInt& a, const BigInt& b) { return a * b; }

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// g = a*x + b*y
template <typename I>
void ext_gcd(const I& a, const I& b, I& g, I& x, I& y) {
    I old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        I q = old_r / r;
        I tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
    if (g < 0) {
        g = -g;
        x = -x;
        y = -y;
    }
}

// 64-bit rows stay below 2^28 in magnitude so that every single step
// (products of two entries plus a sum) fits; larger entries trigger a
// switch to big integers before anything is modified.
inline void guard(const std::vector<long>& x) {
    constexpr long kLimit = 1L << 28;
    for (long e : x)
        if (e >= kLimit || e <= -kLimit) throw Overflow{};
}
inline void guard(const std::vector<BigInt>&) {}

template <typename I>
struct Echelon {
    int dim;
    std::vector<std::vector<I>> rows;  // rows[c] has pivot at column c (empty if none)
    int rank = 0;

    explicit Echelon(int d) : dim(d), rows(static_cast<std::size_t>(d)) {}

    std::vector<I>& row(int c) { return rows[static_cast<std::size_t>(c)]; }

    // x -= q * other, for columns >= from
    static void axpy(std::vector<I>& x, const I& q, const std::vector<I>& other, int from) {
        for (std::size_t j = static_cast<std::size_t>(from); j < x.size(); ++j)
            x[j] = add_c(x[j], mul_c(-q, other[j]));
    }

    // Reduce entry (r, c) of basis row r into [0, pivot_c).
    void reduce_entry(int r, int c) {
        auto& x = row(r);
        const auto& piv = row(c);
        I q = floor_div(x[static_cast<std::size_t>(c)], piv[static_cast<std::size_t>(c)]);
        if (q == 0) return;
        guard(x);
        guard(piv);
        axpy(x, q, piv, c);
    }

    // Off-diagonal cleanup around a modified pivot row c.
    void tidy(int c) {
        for (int j = c + 1; j < dim; ++j)
            if (!row(j).empty()) reduce_entry(c, j);
        for (int r = 0; r < c; ++r)
            if (!row(r).empty()) reduce_entry(r, c);
    }

    // On Overflow, rows plus the current v still span the intended lattice.
    void insert(std::vector<I>& v) {
        for (int c = 0; c < dim; ++c) {
            auto cu = static_cast<std::size_t>(c);
            if (v[cu] == 0) continue;
            auto& r = row(c);
            if (r.empty()) {
                if (v[cu] < 0)
                    for (auto& e : v) e = -e;
                r = v;
                std::fill(v.begin(), v.end(), I(0));
                ++rank;
                tidy(c);
                return;
            }
            guard(v);
            guard(r);
            const I a = r[cu], b = v[cu];
            if (b % a == 0) {
                axpy(v, b / a, r, c);
                continue;
            }
            I g, x, y;
            ext_gcd(a, b, g, x, y);
            I ag = a / g, bg = b / g;
            std::vector<I> new_row(static_cast<std::size_t>(dim)), new_v(static_cast<std::size_t>(dim));
            for (std::size_t j = cu; j < static_cast<std::size_t>(dim); ++j) {
                new_row[j] = add_c(mul_c(x, r[j]), mul_c(y, v[j]));
                new_v[j] = add_c(mul_c(ag, v[j]), mul_c(-bg, r[j]));
            }
            r = std::move(new_row);
            v = std::move(new_v);
            tidy(c);
        }
    }
};

BigInt to_big(long v) { return BigInt(v); }
BigInt to_big(const BigInt& v) { return v; }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

struct SpanAccumulator::Impl {
    int dim;
    std::optional<Echelon<long>> small;
    std::optional<Echelon<BigInt>> big;

    explicit Impl(int d) : dim(d), small(Echelon<long>(d)) {}

    void promote() {
        Echelon<BigInt> e(dim);
        for (int c = 0; c < dim; ++c) {
            const auto& r = small->rows[static_cast<std::size_t>(c)];
            if (r.empty()) continue;
            std::vector<BigInt> br;
            for (long x : r) br.emplace_back(x);
            e.rows[static_cast<std::size_t>(c)] = std::move(br);
            ++e.rank;
        }
        big = std::move(e);
        small.reset();
    }

    template <typename V>
    void add_any(const V& v) {
        if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("SpanAccumulator: dimension mismatch");
        std::vector<BigInt> bv;
        if (small) {
            std::vector<long> lv(v.begin(), v.end());
            try {
                small->insert(lv);
                return;
            } catch (const Overflow&) {
                promote();
            }
            for (long x : lv) bv.emplace_back(x);
        } else {
            for (auto x : v) bv.emplace_back(static_cast<long>(x));
        }
        big->insert(bv);
    }
};

SpanAccumulator::SpanAccumulator(int dim) : impl_(std::make_unique<Impl>(dim)) {}
SpanAccumulator::~SpanAccumulator() = default;
SpanAccumulator::SpanAccumulator(SpanAccumulator&&) noexcept = default;
SpanAccumulator& SpanAccumulator::operator=(SpanAccumulator&&) noexcept = default;

void SpanAccumulator::add(std::span<const long> v) { impl_->add_any(v); }
void SpanAccumulator::add(std::span<const std::int8_t> v) { impl_->add_any(v); }
void SpanAccumulator::add(const std::vector<int>& v) { impl_->add_any(v); }
int SpanAccumulator::dim() const { return impl_->dim; }
int SpanAccumulator::rank() const { return impl_->small ? impl_->small->rank : impl_->big->rank; }

IntMatrix SpanAccumulator::basis() const {
    IntMatrix out;
    auto collect = [&](const auto& e) {
        for (const auto& r : e.rows) {
            if (r.empty()) continue;
            std::vector<BigInt> br;
            for (const auto& x : r) br.push_back(to_big(x));
            out.push_back(std::move(br));
        }
    };
    if (impl_->small) collect(*impl_->small);
    else collect(*impl_->big);
    return out;
}

BigInt SpanAccumulator::covolume() const {
    BigInt p = 1;
    for (const auto& r : basis()) {
        auto it = std::find_if(r.begin(), r.end(), [](const BigInt& x) { return x != 0; });
        p *= abs(*it);
    }
    return p;
}

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    if (a[0].size() != k) throw std::invalid_argument("multiply: shape mismatch");
    IntMatrix out(n, std::vector<BigInt>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

BigInt determinant(IntMatrix m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

SNFResult smith_normal_form(const IntMatrix& B) {
    const std::size_t n = B.size();
    const std::size_t k = n ? B[0].size() : 0;
    for (const auto& r : B)
        if (r.size() != k) throw std::invalid_argument("smith_normal_form: ragged matrix");
    IntMatrix A = B, S = identity_matrix(n), T = identity_matrix(k);

    // Elementary operations keep B = S * A * T.
    auto row_addmul = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // row_dst -= q row_src
        for (std::size_t j = 0; j < k; ++j)
            if (A[src][j] != 0) A[dst][j] -= q * A[src][j];
        for (std::size_t i = 0; i < n; ++i)
            if (S[i][dst] != 0) S[i][src] += q * S[i][dst];
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col_dst -= q col_src
        for (std::size_t i = 0; i < n; ++i)
            if (A[i][src] != 0) A[i][dst] -= q * A[i][src];
        for (std::size_t j = 0; j < k; ++j)
            if (T[dst][j] != 0) T[src][j] += q * T[dst][j];
    };

    const std::size_t steps = std::min(n, k);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            std::size_t bi = n, bj = k;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < k; ++j)
                    if (A[i][j] != 0 && (bi == n || mpz_cmpabs(A[i][j].get_mpz_t(), A[bi][bj].get_mpz_t()) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) goto finished;
            if (bi != t) {
                swap_rows(A, t, bi);
                swap_cols(S, t, bi);
            }
            if (bj != t) {
                swap_cols(A, t, bj);
                swap_rows(T, t, bj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (A[i][t] == 0) continue;
                BigInt q = floor_div(A[i][t], A[t][t]);
                row_addmul(i, t, q);
                if (A[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                if (A[t][j] == 0) continue;
                BigInt q = floor_div(A[t][j], A[t][t]);
                col_addmul(j, t, q);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool fixed = false;
            for (std::size_t i = t + 1; i < n && !fixed; ++i)
                for (std::size_t j = t + 1; j < k; ++j)
                    if (A[i][j] != 0 && !mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
                        row_addmul(t, i, BigInt(-1));  // row_t += row_i
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (A[t][t] < 0) {
            for (auto& x : A[t]) x = -x;
            for (std::size_t i = 0; i < n; ++i) S[i][t] = -S[i][t];
        }
    }
finished:
    SNFResult out;
    for (std::size_t t = 0; t < steps; ++t)
        if (A[t][t] != 0) out.diagonal.push_back(A[t][t]);
    out.S = std::move(S);
    out.D = std::move(A);
    out.T = std::move(T);
    return out;
}

std::vector<BigInt> smith_diagonal(const SpanAccumulator& acc) {
    IntMatrix basis = acc.basis();  // rows are generators
    if (basis.empty()) return {};
    // Columns-as-generators convention: transpose.
    IntMatrix cols(basis[0].size(), std::vector<BigInt>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis[i].size(); ++j) cols[j][i] = basis[i][j];
    return smith_normal_form(cols).diagonal;
}

std::vector<BigInt> smith_diagonal(const IntMatrix& B) {
    if (B.empty()) return {};
    SpanAccumulator acc(static_cast<int>(B.size()));
    std::vector<long> col(B.size());
    for (std::size_t j = 0; j < B[0].size(); ++j) {
        bool fits = true;
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (!B[i][j].fits_slong_p()) fits = false;
            else col[i] = B[i][j].get_si();
        }
        if (!fits) return smith_normal_form(B).diagonal;
        acc.add(std::span<const long>(col));
    }
    return smith_diagonal(acc);
}

BigInt ambient_covolume(Ambient a) {
    BigInt one = 1;
    return a == Ambient::E8 ? BigInt(one << 8) : BigInt(one << 36);
}

IndexResult index_from_span(const SpanAccumulator& acc, Ambient ambient) {
    int n = ambient == Ambient::E8 ? 8 : 24;
    if (acc.dim() != n) throw std::invalid_argument("index_from_span: dimension mismatch");
    if (acc.rank() < n) throw RankDeficient("generators span rank " + std::to_string(acc.rank()) + " < " + std::to_string(n));
    IndexResult r;
    r.diagonal = smith_diagonal(acc);
    BigInt prod = 1;
    for (const auto& d : r.diagonal) prod *= d;
    BigInt cov = ambient_covolume(ambient);
    if (!mpz_divisible_p(prod.get_mpz_t(), cov.get_mpz_t())) throw std::logic_error("sublattice covolume not a multiple of the ambient covolume");
    r.index = prod / cov;
    return r;
}

IndexResult sublattice_index_detail(const std::vector<LatticePoint>& generators, Ambient ambient) {
    int n = ambient == Ambient::E8 ? 8 : 24;
    SpanAccumulator acc(n);
    for (const auto& g : generators) {
        bool ok = ambient == Ambient::E8 ? e8_contains(g) : leech_contains(g);
        if (!ok) throw NotInAmbient("generator not in the ambient lattice");
        acc.add(g.coords);
    }
    return index_from_span(acc, ambient);
}

BigInt sublattice_index(const std::vector<LatticePoint>& generators, Ambient ambient) {
    return sublattice_index_detail(generators, ambient).index;
}

Rational coset_norm_parity(const RationalVector& y, const RationalVector& rep, long k, int scale2) {
    if (y.size() != rep.size()) throw std::invalid_argument("coset_norm_parity: dimension mismatch");
    Rational s;
    for (std::size_t i = 0; i < y.size(); ++i) {
        Rational d = y[i] - Rational(k) * rep[i];
        s += d * d;
    }
    return s / Rational(scale2);
}

std::string compress_diagonal(const std::vector<BigInt>& diagonal) {
    std::ostringstream os;
    for (std::size_t i = 0; i < diagonal.size();) {
        std::size_t j = i;
        while (j < diagonal.size() && diagonal[j] == diagonal[i]) ++j;
        if (i) os << ", ";
        os << diagonal[i].get_str();
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

}  // namespace polar
