#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "polynomial.hpp"

namespace devsurf {

/// Quotient of two monomial polynomials, normalized so the denominator is monic.
/// The denominator may never be the zero polynomial.
class RationalFunction {
public:
    RationalFunction() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}

    RationalFunction(Polynomial num) : RationalFunction(std::move(num), Polynomial::constant(1.0)) {}

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        num_.require_monomial("RationalFunction");
        den_.require_monomial("RationalFunction");
        if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
        const double lead = den_.coeffs().back();
        num_ = scale(num_, 1.0 / lead);
        den_ = scale(den_, 1.0 / lead);
    }

    static RationalFunction constant(double c) { return RationalFunction(Polynomial::constant(c)); }
    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() == 0 && den_.degree() == 0; }
    double constant_value() const {
        if (!is_constant()) throw std::invalid_argument("RationalFunction: not constant");
        return num_.coeffs()[0] / den_.coeffs()[0];
    }

    double eval(double u, double pole_tol = kPoleTolerance) const {
        const double d = den_.eval(u);
        if (std::abs(d) < pole_tol) throw std::domain_error("RationalFunction: pole at sample");
        return num_.eval(u) / d;
    }

    /// Substitute u = h(U).
    RationalFunction compose_poly(const Polynomial& h) const {
        return RationalFunction(compose(num_, h), compose(den_, h));
    }

private:
    Polynomial num_;
    Polynomial den_;
};

inline double rational_eval(const RationalFunction& r, double u, double pole_tol = kPoleTolerance) {
    return r.eval(u, pole_tol);
}

inline RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

inline RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

inline RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num() * b.num(), a.den() * b.den());
}

inline RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num().is_zero()) throw std::invalid_argument("RationalFunction: division by zero function");
    return RationalFunction(a.num() * b.den(), a.den() * b.num());
}

inline RationalFunction operator*(const RationalFunction& a, double s) {
    return RationalFunction(scale(a.num(), s), a.den());
}
inline RationalFunction operator*(double s, const RationalFunction& a) { return a * s; }

/// Coefficientwise comparison of the normalized representations.
inline bool approx_equal(const RationalFunction& a, const RationalFunction& b, double tol) {
    const auto close = [tol](const Polynomial& p, const Polynomial& q) {
        const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
        for (std::size_t i = 0; i < n; ++i) {
            const double pi = i < p.coeffs().size() ? p.coeffs()[i] : 0.0;
            const double qi = i < q.coeffs().size() ? q.coeffs()[i] : 0.0;
            if (std::abs(pi - qi) > tol) return false;
        }
        return true;
    };
    return close(a.num(), b.num()) && close(a.den(), b.den());
}

}  // namespace devsurf
