#include "polar/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace polar {

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto to_big = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return BigInt(t);
    };
    if (slash == std::string::npos) {
        if (!is_int(s)) throw std::invalid_argument("bad rational: " + text);
        return Rational(to_big(s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!is_int(a) || !is_int(b)) throw std::invalid_argument("bad rational: " + text);
    BigInt den = to_big(b);
    if (den == 0) throw std::invalid_argument("bad rational (zero denominator): " + text);
    return Rational(to_big(a), den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::str() const { return q_.get_str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, unsigned e) {
    Rational out(1), base = r;
    while (e) {
        if (e & 1U) out *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return out;
}

std::pair<BigInt, BigInt> squarefree_split(const BigInt& n) {
    if (n <= 0) throw std::domain_error("squarefree_split: nonpositive");
    BigInt s = 1, m = 1, r = n;
    for (unsigned long p = 2;; p = (p == 2 ? 3 : p + 2)) {
        BigInt pb = p;
        if (pb * pb * pb > r) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
            r /= pb;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) s *= pb;
        if (e % 2) m *= pb;
    }
    // r now has at most two prime factors, all larger than the cube root bound.
    if (r > 1) {
        if (mpz_perfect_square_p(r.get_mpz_t())) {
            BigInt root;
            mpz_sqrt(root.get_mpz_t(), r.get_mpz_t());
            s *= root;
        } else {
            m *= r;
        }
    }
    return {s, m};
}

// -------------------------------------------------------------- SqrtScalar

SqrtScalar::SqrtScalar(const Rational& r) : sign_(r.sign()), d_(abs(r)), m_(1) {}

SqrtScalar SqrtScalar::from_signed_square(int sign, const Rational& square) {
    if (square.sign() < 0) throw std::domain_error("from_signed_square: negative square");
    SqrtScalar out;
    if (sign == 0 || square.is_zero()) return out;
    BigInt ab = square.num() * square.den();
    auto [s, m] = squarefree_split(ab);
    out.sign_ = sign > 0 ? 1 : -1;
    out.d_ = Rational(s, square.den());
    out.m_ = m;
    return out;
}

SqrtScalar SqrtScalar::surd(const Rational& d, const BigInt& m) {
    if (m <= 0) throw std::domain_error("surd: radicand must be positive");
    SqrtScalar out;
    if (d.is_zero()) return out;
    auto [s, mm] = squarefree_split(m);
    out.sign_ = d.sign();
    out.d_ = abs(d) * Rational(s);
    out.m_ = mm;
    return out;
}

Rational SqrtScalar::as_rational() const {
    if (!is_rational()) throw std::domain_error("SqrtScalar is irrational: " + str());
    return sign_ < 0 ? -d_ : d_;
}

double SqrtScalar::to_double() const { return sign_ * d_.to_double() * std::sqrt(m_.get_d()); }

std::string SqrtScalar::str() const {
    if (sign_ == 0) return "0";
    if (m_ == 1) return (sign_ < 0 ? -d_ : d_).str();
    std::string out = sign_ < 0 ? "-" : "";
    if (d_.num() != 1) out += d_.num().get_str() + "*";
    out += "sqrt(" + m_.get_str() + ")";
    if (d_.den() != 1) out += "/" + d_.den().get_str();
    return out;
}

SqrtScalar SqrtScalar::operator-() const {
    SqrtScalar out = *this;
    out.sign_ = -sign_;
    return out;
}

SqrtScalar operator*(const SqrtScalar& a, const SqrtScalar& b) {
    SqrtScalar out;
    if (a.sign_ == 0 || b.sign_ == 0) return out;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.m_.get_mpz_t(), b.m_.get_mpz_t());
    out.sign_ = a.sign_ * b.sign_;
    out.d_ = a.d_ * b.d_ * Rational(g);
    out.m_ = (a.m_ / g) * (b.m_ / g);
    return out;
}

SqrtScalar operator/(const SqrtScalar& a, const SqrtScalar& b) {
    if (b.sign_ == 0) throw std::domain_error("SqrtScalar: division by zero");
    SqrtScalar inv;
    inv.sign_ = b.sign_;
    inv.d_ = Rational(1) / (b.d_ * Rational(b.m_));
    inv.m_ = b.m_;
    return a * inv;
}

SqrtScalar operator+(const SqrtScalar& a, const SqrtScalar& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.m_ != b.m_) throw UnlikeSurdError("cannot add " + a.str() + " and " + b.str());
    Rational v = (a.sign_ < 0 ? -a.d_ : a.d_) + (b.sign_ < 0 ? -b.d_ : b.d_);
    return SqrtScalar::surd(v, a.m_);
}

std::strong_ordering operator<=>(const SqrtScalar& a, const SqrtScalar& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    if (a.sign_ == 0) return std::strong_ordering::equal;
    auto c = a.square() <=> b.square();
    if (a.sign_ > 0) return c;
    return 0 <=> c;
}

// -------------------------------------------------------------- QuadNumber

QuadNumber::QuadNumber(const Rational& a, const Rational& b, const BigInt& m) : a_(a), b_(b), m_(m) {
    if (m_ <= 0) throw std::domain_error("QuadNumber: radicand must be positive");
    if (m_ == 1) {
        a_ += b_;
        b_ = 0;
    }
}

QuadNumber QuadNumber::from(const SqrtScalar& s, const BigInt& field_m) {
    if (s.is_rational()) return {s.as_rational(), Rational(0), field_m};
    if (s.radicand() != field_m)
        throw UnlikeSurdError("surd " + s.str() + " outside Q(sqrt(" + field_m.get_str() + "))");
    Rational d = s.coefficient();
    return {Rational(0), s.sign() < 0 ? -d : d, field_m};
}

namespace {
BigInt common_field(const QuadNumber& x, const QuadNumber& y) {
    if (x.surd_part().is_zero()) return y.radicand();
    if (y.surd_part().is_zero()) return x.radicand();
    if (x.radicand() != y.radicand()) throw UnlikeSurdError("QuadNumber: different fields");
    return x.radicand();
}
}  // namespace

int QuadNumber::sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational a2 = a_ * a_, b2m = b_ * b_ * Rational(m_);
    return a2 > b2m ? sa : sb;
}

double QuadNumber::to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(m_.get_d()); }

std::string QuadNumber::str() const {
    if (b_.is_zero()) return a_.str();
    std::string surd = (b_.sign() < 0 ? (-b_) : b_).str() + "*sqrt(" + m_.get_str() + ")";
    if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + surd;
    return a_.str() + (b_.sign() < 0 ? " - " : " + ") + surd;
}

QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
    BigInt m = common_field(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, m};
}

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
    BigInt m = common_field(x, y);
    Rational mr(m);
    return {x.a_ * y.a_ + x.b_ * y.b_ * mr, x.a_ * y.b_ + x.b_ * y.a_, m};
}

QuadNumber operator/(const QuadNumber& x, const QuadNumber& y) {
    BigInt m = common_field(x, y);
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(m);
    if (norm.is_zero()) throw std::domain_error("QuadNumber: division by zero");
    QuadNumber conj(y.a_ / norm, -y.b_ / norm, m);
    return x * conj;
}

// ----------------------------------------------------------------- SurdSum

void SurdSum::add_term(const BigInt& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void SurdSum::add(const SqrtScalar& s, const Rational& weight) {
    if (s.sign() == 0) return;
    Rational c = s.coefficient() * weight;
    add_term(s.radicand(), s.sign() < 0 ? -c : c);
}

void SurdSum::add(const QuadNumber& q, const Rational& weight) {
    add_term(BigInt(1), q.rational_part() * weight);
    add_term(q.radicand(), q.surd_part() * weight);
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Rational SurdSum::rational_part() const {
    auto it = terms_.find(BigInt(1));
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational SurdSum::as_rational() const {
    if (!is_rational()) throw std::domain_error("SurdSum is irrational: " + str());
    return rational_part();
}

double SurdSum::to_double() const {
    double v = 0;
    for (const auto& [m, c] : terms_) v += c.to_double() * std::sqrt(m.get_d());
    return v;
}

std::string SurdSum::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += m == 1 ? c.str() : c.str() + "*sqrt(" + m.get_str() + ")";
    }
    return out;
}

// ----------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { strip(); }

RatPoly RatPoly::monomial(const Rational& c, unsigned degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::linear_root(const Rational& root) { return RatPoly({-root, Rational(1)}); }

void RatPoly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatPoly::Parity RatPoly::parity() const {
    if (c_.empty()) return Parity::Zero;
    bool has_even = false, has_odd = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        (i % 2 ? has_odd : has_even) = true;
    }
    if (has_even && has_odd) return Parity::Mixed;
    return has_odd ? Parity::Odd : Parity::Even;
}

Rational RatPoly::operator()(const Rational& t) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RatPoly(std::move(d));
}

std::pair<RatPoly, RatPoly> RatPoly::parity_split() const {
    std::vector<Rational> e, o;
    for (std::size_t i = 0; i < c_.size(); ++i) (i % 2 ? o : e).push_back(c_[i]);
    return {RatPoly(std::move(e)), RatPoly(std::move(o))};
}

RatPoly RatPoly::monic() const {
    if (c_.empty()) return {};
    return (Rational(1) / c_.back()) * *this;
}

std::string RatPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        Rational a = abs(c);
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (a == Rational(1));
        if (!unit || i == 0) os << a.str();
        if (i >= 1) os << (unit ? "" : "*") << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

RatPoly RatPoly::operator-() const {
    RatPoly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coefficient(i) + b.coefficient(i);
    return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(v));
}

RatPoly operator*(const Rational& s, const RatPoly& p) {
    std::vector<Rational> v = p.c_;
    for (auto& c : v) c *= s;
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("RatPoly: division by zero polynomial");
    std::vector<Rational> rem = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {RatPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    Rational lead = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        Rational f = rem[static_cast<std::size_t>(i)] / lead;
        quo[static_cast<std::size_t>(i - db)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// -------------------------------------------------------------- evaluation

SqrtScalar poly_eval_surd(const RatPoly& p, const SqrtScalar& x) {
    if (x.is_rational()) return SqrtScalar(p(x.as_rational()));
    Rational u = x.square();
    auto [even, odd] = p.parity_split();
    switch (p.parity()) {
        case RatPoly::Parity::Zero: return SqrtScalar();
        case RatPoly::Parity::Even: return SqrtScalar(even(u));
        case RatPoly::Parity::Odd: return x * SqrtScalar(odd(u));
        case RatPoly::Parity::Mixed: break;
    }
    throw ParityError("mixed-parity polynomial at irrational point " + x.str());
}

QuadNumber poly_eval_quad(const RatPoly& p, const QuadNumber& x) {
    QuadNumber acc(Rational(0), Rational(0), x.radicand());
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + QuadNumber(*it, Rational(0), x.radicand());
    return acc;
}

bool poly_vanishes_at(const RatPoly& p, const SqrtScalar& x) {
    if (x.is_rational()) return p(x.as_rational()).is_zero();
    Rational u = x.square();
    auto [even, odd] = p.parity_split();
    return even(u).is_zero() && odd(u).is_zero();
}

// ----------------------------------------------------------- root isolation

std::string Root::str() const {
    if (exact) return exact->str();
    std::ostringstream os;
    os.precision(17);
    os << "root~" << midpoint().to_double();
    return os.str();
}

double Root::to_double() const { return exact ? exact->to_double() : midpoint().to_double(); }

bool operator==(const Root& a, const Root& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    if (a.exact || b.exact) return false;
    return a.lo == b.lo && a.hi == b.hi;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_rational_between(hi, lo);
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_rational_between(-hi, -lo);
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.num().get_mpz_t(), lo.den().get_mpz_t());
    Rational flr(fl);
    if (flr == lo) return lo;
    if (flr + Rational(1) <= hi) return flr + Rational(1);
    Rational inner = simplest_rational_between(Rational(1) / (hi - flr), Rational(1) / (lo - flr));
    return flr + Rational(1) / inner;
}

std::pair<Rational, Rational> enclose(const SqrtScalar& s, unsigned bits) {
    if (s.is_rational()) {
        Rational r = s.as_rational();
        return {r, r};
    }
    Rational sq = s.square();
    BigInt scale = BigInt(1) << (2 * bits);
    BigInt val = (sq.num() * scale) / sq.den();
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), val.get_mpz_t());
    Rational denom{BigInt(BigInt(1) << bits)};
    Rational lo = Rational(root) / denom;
    Rational hi = Rational(BigInt(root + 1)) / denom;
    if (s.sign() < 0) return {-hi, -lo};
    return {lo, hi};
}

namespace {

int sign_of(const RatPoly& p, const Rational& x) { return p(x).sign(); }

struct Sturm {
    std::vector<RatPoly> chain;
    explicit Sturm(const RatPoly& q) {
        chain.push_back(q);
        chain.push_back(q.derivative());
        while (!chain.back().is_zero()) {
            auto r = RatPoly::divmod(chain[chain.size() - 2], chain.back()).second;
            if (r.is_zero()) break;
            // Positive rescaling keeps signs; it just tames coefficient growth.
            Rational lead = abs(r.leading());
            chain.push_back((Rational(-1) / lead) * r);
        }
    }
    int variations(const Rational& x) const {
        int v = 0, prev = 0;
        for (const auto& p : chain) {
            int s = sign_of(p, x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
};

Rational cauchy_bound(const RatPoly& q) {
    Rational lead = abs(q.leading()), mx;
    for (int i = 0; i < q.degree(); ++i) mx = std::max(mx, abs(q.coefficient(static_cast<unsigned>(i))) / lead);
    return mx + Rational(1);
}

Root identify(const RatPoly& q, Rational lo, Rational hi, bool exact_hi) {
    Root out;
    if (exact_hi) {
        out.exact = SqrtScalar(hi);
        out.lo = out.hi = hi;
        return out;
    }
    const unsigned bits = kEnclosureBits + 12;
    Rational target = Rational(1) / Rational(BigInt(BigInt(1) << bits));
    // Exactly one simple root lies in (lo, hi) and q(hi) != 0; lo itself may be
    // a root already claimed by the neighbouring interval.
    int shi = sign_of(q, hi);
    while (hi - lo > target) {
        Rational mid = (lo + hi) / Rational(2);
        int sm = sign_of(q, mid);
        if (sm == 0) {
            out.exact = SqrtScalar(mid);
            out.lo = out.hi = mid;
            return out;
        }
        if (sm == shi) hi = mid; else lo = mid;
    }
    out.lo = lo;
    out.hi = hi;
    Rational r = simplest_rational_between(lo, hi);
    if (q(r).is_zero()) {
        out.exact = SqrtScalar(r);
        return out;
    }
    if (lo.sign() > 0 || hi.sign() < 0) {
        Rational a = lo * lo, b = hi * hi;
        Rational u = simplest_rational_between(std::min(a, b), std::max(a, b));
        // A genuine surd root has a small square; a huge reconstruction means
        // the root is not of the form sqrt(rational).
        BigInt size = u.num() * u.den();
        if (mpz_sizeinbase(size.get_mpz_t(), 2) > 2 * kEnclosureBits / 3) return out;
        SqrtScalar s = SqrtScalar::from_signed_square(lo.sign() > 0 ? 1 : -1, u);
        if (!s.is_rational() && poly_vanishes_at(q, s)) out.exact = s;
    }
    return out;
}

}  // namespace

std::vector<Root> isolate_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    if (p.degree() == 0) return {};
    RatPoly q = RatPoly::divmod(p, RatPoly::gcd(p, p.derivative())).first.monic();
    Sturm sturm(q);
    Rational bound = cauchy_bound(q);

    struct Interval {
        Rational a, b;
        int va, vb;
    };
    std::vector<Root> roots;
    std::vector<Interval> stack{{-bound, bound, sturm.variations(-bound), sturm.variations(bound)}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        int count = iv.va - iv.vb;  // roots in (a, b]
        if (count <= 0) continue;
        if (count == 1) {
            roots.push_back(identify(q, iv.a, iv.b, sign_of(q, iv.b) == 0));
            continue;
        }
        Rational mid = (iv.a + iv.b) / Rational(2);
        int vm = sturm.variations(mid);
        stack.push_back({iv.a, mid, iv.va, vm});
        stack.push_back({mid, iv.b, vm, iv.vb});
    }
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.hi < y.hi || (x.hi == y.hi && x.lo < y.lo); });
    return roots;
}

}  // namespace polar
