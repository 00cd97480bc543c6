#pragma once

// Exact scalar kernel: big rationals, single-radical surds, rational
// polynomials and certified real-root isolation.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using BigInt = mpz_class;

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long v) : q_(v) {}  // NOLINT(implicit)
    Rational(int v) : q_(v) {}   // NOLINT(implicit)
    Rational(const BigInt& v) : q_(v) {}  // NOLINT(implicit)
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rational parse(const std::string& text);  // "p", "p/q", "-p/q"

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational& r);
Rational pow(const Rational& r, unsigned e);

// n = s^2 * m with m square-free (n > 0). Returns {s, m}.
std::pair<BigInt, BigInt> squarefree_split(const BigInt& n);

class ParityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnlikeSurdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// sign * d * sqrt(m), d >= 0 rational, m >= 1 square-free.
class SqrtScalar {
public:
    SqrtScalar() = default;
    SqrtScalar(const Rational& r);  // NOLINT(implicit)
    SqrtScalar(int v) : SqrtScalar(Rational(v)) {}  // NOLINT(implicit)

    // sign * sqrt(square), square >= 0.
    static SqrtScalar from_signed_square(int sign, const Rational& square);
    // d * sqrt(m) for arbitrary positive integer m (canonicalized).
    static SqrtScalar surd(const Rational& d, const BigInt& m);

    int sign() const { return sign_; }
    const Rational& coefficient() const { return d_; }  // d >= 0
    const BigInt& radicand() const { return m_; }
    bool is_rational() const { return m_ == 1 || sign_ == 0; }
    Rational as_rational() const;  // throws if irrational
    Rational square() const { return d_ * d_ * Rational(m_); }
    double to_double() const;
    std::string str() const;  // "-sqrt(5)/15", "2/5", "0"

    SqrtScalar operator-() const;
    friend SqrtScalar operator*(const SqrtScalar& a, const SqrtScalar& b);
    friend SqrtScalar operator/(const SqrtScalar& a, const SqrtScalar& b);
    // Only like surds (same radicand) or zero operands may be added.
    friend SqrtScalar operator+(const SqrtScalar& a, const SqrtScalar& b);
    friend SqrtScalar operator-(const SqrtScalar& a, const SqrtScalar& b) { return a + (-b); }

    friend bool operator==(const SqrtScalar& a, const SqrtScalar& b) {
        return a.sign_ == b.sign_ && a.d_ == b.d_ && a.m_ == b.m_;
    }
    friend std::strong_ordering operator<=>(const SqrtScalar& a, const SqrtScalar& b);

private:
    int sign_ = 0;
    Rational d_;
    BigInt m_ = 1;
};

// a + b*sqrt(m): arithmetic in a fixed real quadratic field (m square-free,
// m == 1 means plain rationals). Used where linear solves mix like surds.
class QuadNumber {
public:
    QuadNumber() = default;
    QuadNumber(const Rational& a) : a_(a) {}  // NOLINT(implicit)
    QuadNumber(const Rational& a, const Rational& b, const BigInt& m);
    static QuadNumber from(const SqrtScalar& s, const BigInt& field_m);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const BigInt& radicand() const { return m_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }
    int sign() const;
    double to_double() const;
    std::string str() const;  // "1/6", "-2/9 + 1/9*sqrt(61)"

    QuadNumber operator-() const { return {-a_, -b_, m_}; }
    friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) { return x + (-y); }
    friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator/(const QuadNumber& x, const QuadNumber& y);
    friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.m_ == y.m_);
    }

private:
    Rational a_, b_;
    BigInt m_ = 1;
};

// Exact sum of surds with possibly different radicands. Square roots of
// distinct square-free integers are linearly independent over Q, so the sum
// is zero iff every per-radicand coefficient is zero.
class SurdSum {
public:
    SurdSum() = default;
    void add(const SqrtScalar& s, const Rational& weight = Rational(1));
    void add(const QuadNumber& q, const Rational& weight = Rational(1));
    SurdSum& operator+=(const SurdSum& o);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }
    Rational rational_part() const;
    Rational as_rational() const;  // throws if a surd part remains
    double to_double() const;
    std::string str() const;
    const std::map<BigInt, Rational>& terms() const { return terms_; }  // radicand -> coefficient

private:
    void add_term(const BigInt& m, const Rational& c);
    std::map<BigInt, Rational> terms_;
};

class RatPoly {
public:
    enum class Parity { Zero, Even, Odd, Mixed };

    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> ascending);
    static RatPoly monomial(const Rational& c, unsigned degree);
    static RatPoly linear_root(const Rational& root);  // t - root
    static RatPoly variable() { return monomial(Rational(1), 1); }
    static RatPoly constant(const Rational& c) { return RatPoly({c}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coefficient(unsigned i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    Parity parity() const;

    Rational operator()(const Rational& t) const;  // Horner
    RatPoly derivative() const;
    // p(t) = even(t^2) + t * odd(t^2); returns {even, odd} as polynomials in u = t^2.
    std::pair<RatPoly, RatPoly> parity_split() const;
    RatPoly monic() const;
    std::string str(const std::string& var = "t") const;

    RatPoly operator-() const;
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rational& s, const RatPoly& p);
    friend RatPoly operator+(const RatPoly& a, const Rational& c) { return a + constant(c); }
    friend RatPoly operator-(const RatPoly& a, const Rational& c) { return a - constant(c); }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    // Euclidean division: a = q*b + r.
    static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
    static RatPoly gcd(RatPoly a, RatPoly b);  // monic

private:
    void strip();
    std::vector<Rational> c_;
};

// Exact evaluation of a parity-definite polynomial at a surd, or of any
// polynomial at a rational point.
SqrtScalar poly_eval_surd(const RatPoly& p, const SqrtScalar& x);

// Evaluation in Q(sqrt m) for any polynomial.
QuadNumber poly_eval_quad(const RatPoly& p, const QuadNumber& x);

// Exact test p(x) == 0 for any polynomial and any surd (no parity condition).
bool poly_vanishes_at(const RatPoly& p, const SqrtScalar& x);

// A real root: exact when it is rational or a single surd, otherwise a
// certified isolating interval [lo, hi] with a sign change of the
// square-free part. Exact roots carry a degenerate or tight enclosure too.
struct Root {
    std::optional<SqrtScalar> exact;
    Rational lo, hi;

    bool is_exact() const { return exact.has_value(); }
    std::string str() const;
    double to_double() const;
    Rational midpoint() const { return (lo + hi) / Rational(2); }
};

bool operator==(const Root& a, const Root& b);

inline constexpr unsigned kEnclosureBits = 128;

std::vector<Root> isolate_roots(const RatPoly& p);

// Simplest rational (least denominator) in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// Tight rational enclosure of a surd value (width <= 2^-bits).
std::pair<Rational, Rational> enclose(const SqrtScalar& s, unsigned bits = kEnclosureBits + 8);

}  // namespace polar
