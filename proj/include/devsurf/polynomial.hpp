#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace devsurf {

// Absolute threshold for trimming leading coefficients of monomial polynomials.
inline constexpr double kTrimTolerance = 1e-12;
// Absolute threshold below which a denominator value counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

inline double binomial(int n, int k) {
    constexpr int kMax = 72;
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t(kMax + 1);
        for (int i = 0; i <= kMax; ++i) {
            t[i].assign(static_cast<std::size_t>(i) + 1, 1.0);
            for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n > kMax) throw std::invalid_argument("binomial: order too large");
    return table[n][k];
}

/// Scalar polynomial in one parameter, held either as ascending monomial
/// coefficients or as Bernstein coefficients of a declared degree.
/// Monomial representations are kept trimmed; Bernstein representations carry
/// exactly degree+1 coefficients.
class Polynomial {
public:
    enum class Basis { monomial, bernstein };

    Polynomial() : coeffs_{0.0}, basis_(Basis::monomial) {}

    static Polynomial monomial(std::vector<double> coeffs) {
        if (coeffs.empty()) coeffs.push_back(0.0);
        for (double c : coeffs)
            if (!std::isfinite(c)) throw std::invalid_argument("Polynomial: non-finite coefficient");
        trim(coeffs);
        Polynomial p;
        p.coeffs_ = std::move(coeffs);
        p.basis_ = Basis::monomial;
        return p;
    }

    static Polynomial bernstein(std::vector<double> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("Polynomial: Bernstein form needs degree+1 coefficients");
        for (double c : coeffs)
            if (!std::isfinite(c)) throw std::invalid_argument("Polynomial: non-finite coefficient");
        Polynomial p;
        p.coeffs_ = std::move(coeffs);
        p.basis_ = Basis::bernstein;
        return p;
    }

    static Polynomial constant(double c) { return monomial({c}); }

    /// The polynomial p(u) = u.
    static Polynomial variable() { return monomial({0.0, 1.0}); }

    Basis basis() const { return basis_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    bool is_monomial() const { return basis_ == Basis::monomial; }

    bool is_zero() const {
        for (double c : coeffs_)
            if (std::abs(c) > kTrimTolerance) return false;
        return true;
    }

    double eval(double u) const {
        if (basis_ == Basis::monomial) {
            double acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * u + coeffs_[i];
            return acc;
        }
        // de Casteljau; affine in each step, so valid outside [0,1] as well
        std::vector<double> w = coeffs_;
        for (std::size_t r = 1; r < coeffs_.size(); ++r)
            for (std::size_t i = 0; i + r < coeffs_.size(); ++i) w[i] += u * (w[i + 1] - w[i]);
        return w[0];
    }

    Polynomial derivative() const {
        require_monomial("derivative");
        if (degree() == 0) return constant(0.0);
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return monomial(std::move(d));
    }

    void require_monomial(const char* who) const {
        if (basis_ != Basis::monomial)
            throw std::invalid_argument(std::string(who) + ": operand must be in monomial basis (convert first)");
    }

private:
    static void trim(std::vector<double>& c) {
        while (c.size() > 1 && std::abs(c.back()) <= kTrimTolerance) c.pop_back();
    }

    std::vector<double> coeffs_;
    Basis basis_;
};

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    p.require_monomial("poly add");
    q.require_monomial("poly add");
    std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
    for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] += q.coeffs()[i];
    return Polynomial::monomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    p.require_monomial("poly sub");
    q.require_monomial("poly sub");
    std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
    for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] -= q.coeffs()[i];
    return Polynomial::monomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.require_monomial("poly mul");
    q.require_monomial("poly mul");
    if (p.is_zero() || q.is_zero()) return Polynomial::constant(0.0);
    std::vector<double> c(p.coeffs().size() + q.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        for (std::size_t j = 0; j < q.coeffs().size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return Polynomial::monomial(std::move(c));
}

inline Polynomial scale(const Polynomial& p, double s) {
    std::vector<double> c = p.coeffs();
    for (double& x : c) x *= s;
    return p.basis() == Polynomial::Basis::monomial ? Polynomial::monomial(std::move(c))
                                                    : Polynomial::bernstein(std::move(c));
}

inline Polynomial operator*(const Polynomial& p, double s) { return scale(p, s); }
inline Polynomial operator*(double s, const Polynomial& p) { return scale(p, s); }

/// p(q(u)) by Horner recursion over polynomial arithmetic.
inline Polynomial compose(const Polynomial& p, const Polynomial& q) {
    p.require_monomial("poly compose");
    q.require_monomial("poly compose");
    Polynomial acc = Polynomial::constant(0.0);
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * q + Polynomial::constant(p.coeffs()[i]);
    return acc;
}

/// Coefficients t_k with p(u) = sum_k t_k (u-a)^k, returned as a monomial-tagged
/// coefficient sequence. Shifting back with taylor_shift(result, -a) restores p.
inline Polynomial taylor_shift(const Polynomial& p, double a) {
    p.require_monomial("taylor_shift");
    std::vector<double> c = p.coeffs();
    const std::size_t n = c.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j-- > k;) c[j] += a * c[j + 1];
    return Polynomial::monomial(std::move(c));
}

namespace detail {

inline std::vector<double> elevate_bernstein_once(const std::vector<double>& b) {
    const std::size_t n = b.size() - 1;
    std::vector<double> out(b.size() + 1);
    out[0] = b[0];
    out[n + 1] = b[n];
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n + 1);
        out[i] = t * b[i - 1] + (1.0 - t) * b[i];
    }
    return out;
}

}  // namespace detail

/// Change of representation. A Bernstein target requires the declared degree to
/// be at least the polynomial's actual degree.
inline Polynomial basis_convert(const Polynomial& p, Polynomial::Basis target, int degree = -1) {
    if (target == Polynomial::Basis::monomial) {
        if (p.basis() == Polynomial::Basis::monomial) return p;
        const int n = p.degree();
        std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
            double acc = 0.0;
            for (int i = 0; i <= j; ++i) {
                const double term = binomial(j, i) * p.coeffs()[static_cast<std::size_t>(i)];
                acc += ((j - i) % 2 == 0) ? term : -term;
            }
            m[static_cast<std::size_t>(j)] = binomial(n, j) * acc;
        }
        return Polynomial::monomial(std::move(m));
    }

    if (degree < 0) throw std::invalid_argument("basis_convert: Bernstein target needs a degree");
    if (p.basis() == Polynomial::Basis::bernstein) {
        if (degree < p.degree())
            throw std::invalid_argument("basis_convert: requested Bernstein degree below actual degree");
        std::vector<double> b = p.coeffs();
        while (static_cast<int>(b.size()) - 1 < degree) b = detail::elevate_bernstein_once(b);
        return Polynomial::bernstein(std::move(b));
    }
    if (degree < p.degree())
        throw std::invalid_argument("basis_convert: requested Bernstein degree below actual degree");
    std::vector<double> b(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int i = 0; i <= degree; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= std::min(i, p.degree()); ++j)
            acc += p.coeffs()[static_cast<std::size_t>(j)] * binomial(i, j) / binomial(degree, j);
        b[static_cast<std::size_t>(i)] = acc;
    }
    return Polynomial::bernstein(std::move(b));
}

/// Product of two Bernstein-form polynomials, of degree deg(p)+deg(q).
inline Polynomial multiply_bernstein(const Polynomial& p, const Polynomial& q) {
    if (p.basis() != Polynomial::Basis::bernstein || q.basis() != Polynomial::Basis::bernstein)
        throw std::invalid_argument("multiply_bernstein: operands must be in Bernstein basis");
    const int a = p.degree(), b = q.degree();
    std::vector<double> out(static_cast<std::size_t>(a + b) + 1, 0.0);
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j)
            out[static_cast<std::size_t>(i + j)] += binomial(a, i) * binomial(b, j) / binomial(a + b, i + j) *
                                                    p.coeffs()[static_cast<std::size_t>(i)] *
                                                    q.coeffs()[static_cast<std::size_t>(j)];
    return Polynomial::bernstein(std::move(out));
}

}  // namespace devsurf
