#include "polar/potential.hpp"

#include <sstream>

namespace polar {

namespace {

RatPoly parse_coefficients(const std::string& csv) {
    std::vector<Rational> c;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) c.push_back(Rational::parse(item));
    return RatPoly(std::move(c));
}

template <class... F>
struct Overloaded : F... {
    using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

}  // namespace

PotentialSpec parse_potential(const std::string& text) {
    if (text == "t^2") return EvenPolynomialPotential{RatPoly::monomial(Rational(1), 2)};
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("potential spec needs kind:value, got " + text);
    std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
    if (kind == "poly") return PolynomialPotential{parse_coefficients(arg)};
    if (kind == "even") {
        RatPoly h = parse_coefficients(arg);
        auto p = h.parity();
        if (p != RatPoly::Parity::Even && p != RatPoly::Parity::Zero)
            throw std::invalid_argument("even potential with odd terms: " + h.str());
        return EvenPolynomialPotential{h};
    }
    if (kind == "riesz") return RieszPotential{Rational::parse(arg)};
    if (kind == "gauss") return GaussPotential{Rational::parse(arg)};
    throw std::invalid_argument("unknown potential kind " + kind);
}

std::string potential_label(const PotentialSpec& h) {
    return std::visit(Overloaded{
                          [](const EvenPolynomialPotential& p) { return "even:" + p.h.str(); },
                          [](const PolynomialPotential& p) { return "poly:" + p.h.str(); },
                          [](const RieszPotential& p) { return "riesz:" + p.s.str(); },
                          [](const GaussPotential& p) { return "gauss:" + p.c.str(); },
                      },
                      h);
}

bool potential_is_exact(const PotentialSpec& h) {
    return std::holds_alternative<EvenPolynomialPotential>(h) || std::holds_alternative<PolynomialPotential>(h);
}

SurdSum poly_eval_surdsum(const RatPoly& p, const SqrtScalar& x) {
    SurdSum out;
    if (x.is_rational()) {
        out.add(SqrtScalar(p(x.as_rational())));
        return out;
    }
    auto [even, odd] = p.parity_split();
    Rational x2 = x.square();
    out.add(SqrtScalar(even(x2)));
    out.add(x * SqrtScalar(odd(x2)));
    return out;
}

std::optional<Rational> PotentialValue::exact_rational() const {
    if (exact && exact->is_rational()) return exact->rational_part();
    return std::nullopt;
}

std::string PotentialValue::str() const {
    if (exact) return exact->str();
    return float_str(value);
}

PotentialSum::PotentialSum(PotentialSpec h) : h_(std::move(h)), exact_ok_(potential_is_exact(h_)) {
    if (auto* e = std::get_if<EvenPolynomialPotential>(&h_)) {
        auto p = e->h.parity();
        if (p != RatPoly::Parity::Even && p != RatPoly::Parity::Zero)
            throw ParityError("even potential has odd terms: " + e->h.str());
    }
}

Float PotentialSum::eval_float(const Float& t) const {
    return std::visit(Overloaded{
                          [&](const EvenPolynomialPotential& p) { return poly_eval_float(p.h, t); },
                          [&](const PolynomialPotential& p) { return poly_eval_float(p.h, t); },
                          [&](const RieszPotential& p) {
                              Float base = 2 - 2 * t;
                              if (base <= 0) throw PoleHit("Riesz potential evaluated at cosine 1");
                              return Float(pow(base, -to_float(p.s) / 2));
                          },
                          [&](const GaussPotential& p) { return Float(exp(to_float(p.c) * t)); },
                      },
                      h_);
}

void PotentialSum::add(const SqrtScalar& t, const Rational& weight) {
    if (std::holds_alternative<RieszPotential>(h_) && t == SqrtScalar(1))
        throw PoleHit("Riesz potential evaluated at cosine 1");
    if (exact_ok_) {
        const RatPoly& p = std::holds_alternative<EvenPolynomialPotential>(h_)
                               ? std::get<EvenPolynomialPotential>(h_).h
                               : std::get<PolynomialPotential>(h_).h;
        SurdSum term = poly_eval_surdsum(p, t);
        for (const auto& [m, c] : term.terms()) exact_.add(SqrtScalar::surd(c * weight, m));
    }
    value_ += to_float(weight) * eval_float(to_float(t));
}

void PotentialSum::add(const Root& t, const Rational& weight) {
    if (t.exact) {
        add(*t.exact, weight);
        return;
    }
    exact_ok_ = false;
    value_ += to_float(weight) * eval_float(to_float(t));
}

void PotentialSum::add_float(const Float& t, const Float& weight) {
    exact_ok_ = false;
    value_ += weight * eval_float(t);
}

PotentialValue PotentialSum::result() const {
    PotentialValue v;
    if (exact_ok_) {
        v.exact = exact_;
        v.value = Float(0);
        for (const auto& [m, c] : exact_.terms()) v.value += to_float(c) * sqrt(to_float(Rational(m)));
    } else {
        v.value = value_;
    }
    Float mag = abs(v.value) > 1 ? Float(abs(v.value)) : Float(1);
    Float eps = mag * pow(Float(2), -128);
    v.lo = v.value - eps;
    v.hi = v.value + eps;
    return v;
}

}  // namespace polar
