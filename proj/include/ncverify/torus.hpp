#pragma once

/**
 * @file torus.hpp
 * @brief Finite-support elements of an n-dimensional twisted torus algebra:
 * unitary monomials U^alpha with the cocycle product
 *   U^alpha U^beta = exp(2 pi i sum_{j > k} alpha_j beta_k theta_{jk}) U^{alpha+beta},
 * the normalized trace, even-exponent norms, length-one radial flows, and a
 * clock-and-shift matrix model for n = 2 with rational angle a / b.
 *
 * theta is a real skew-symmetric n x n matrix shared by every element of the
 * same algebra; binary operations require bitwise-identical theta.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncverify/numerics.hpp"

namespace ncverify::torus {

using numerics::DenseMatrix;

using MultiIndex = std::vector<int>;

inline constexpr double kDropThreshold = 1e-15;
inline constexpr double k2Pi = 6.283185307179586476925286766559;

/// Sum of absolute exponents: the length of U^alpha.
inline int one_norm(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += std::abs(v);
    return s;
}

/// Signed exponent sum, the weight under the one-parameter rotation.
inline int signed_sum(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

struct MonoProduct {
    cplx phase;
    MultiIndex gamma;
};

/// U^a U^b = phase * U^{a+b} with phase = exp(2 pi i sum_{j>k} a_j b_k theta_{jk}).
inline MonoProduct mono_product(const MultiIndex& a, const MultiIndex& b, const std::vector<double>& theta, int n) {
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("mono_product: index size mismatch");
    double s = 0.0;
    for (int j = 1; j < n; ++j)
        for (int k = 0; k < j; ++k)
            s += static_cast<double>(a[static_cast<std::size_t>(j)]) * static_cast<double>(b[static_cast<std::size_t>(k)]) *
                 theta[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
    MonoProduct out;
    out.phase = std::polar(1.0, k2Pi * s);
    out.gamma.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.gamma[i] = a[i] + b[i];
    return out;
}

/// Adjoint phase: (U^a)* = exp(2 pi i sum_{j>k} theta_{jk} a_j a_k) U^{-a},
/// forced by unitarity of the generators and the cocycle.
inline cplx adjoint_phase(const MultiIndex& a, const std::vector<double>& theta, int n) {
    double s = 0.0;
    for (int j = 1; j < n; ++j)
        for (int k = 0; k < j; ++k)
            s += theta[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] *
                 static_cast<double>(a[static_cast<std::size_t>(j)]) * static_cast<double>(a[static_cast<std::size_t>(k)]);
    return std::polar(1.0, k2Pi * s);
}

class TorusPolynomial {
  public:
    using Term = std::pair<MultiIndex, cplx>;

    /// theta is row-major n x n and must be skew-symmetric within 1e-14.
    static TorusPolynomial make(int n, std::vector<double> theta, std::vector<Term> terms = {}) {
        if (n < 1) throw std::invalid_argument("TorusPolynomial: n must be >= 1");
        if (theta.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw std::invalid_argument("TorusPolynomial: theta must be n x n");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double s = theta[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] +
                                 theta[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
                if (std::abs(s) > 1e-14)
                    throw std::invalid_argument("TorusPolynomial: theta not skew-symmetric");
            }
        TorusPolynomial p;
        p.n_ = n;
        p.theta_ = std::move(theta);
        for (const Term& t : terms)
            if (static_cast<int>(t.first.size()) != n)
                throw std::invalid_argument("TorusPolynomial: exponent size mismatch");
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        for (Term& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
        }
        std::vector<Term> kept;
        kept.reserve(p.terms_.size());
        for (Term& t : p.terms_)
            if (std::abs(t.second) > kDropThreshold) kept.push_back(std::move(t));
        p.terms_ = std::move(kept);
        return p;
    }

    static TorusPolynomial monomial(int n, std::vector<double> theta, MultiIndex alpha, cplx c = 1.0) {
        return make(n, std::move(theta), {{std::move(alpha), c}});
    }

    int n() const { return n_; }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    cplx coefficient(const MultiIndex& alpha) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                                   [](const Term& t, const MultiIndex& v) { return t.first < v; });
        if (it != terms_.end() && it->first == alpha) return it->second;
        return cplx{};
    }

    int max_length() const {
        int m = 0;
        for (const Term& t : terms_) m = std::max(m, one_norm(t.first));
        return m;
    }

  private:
    TorusPolynomial() = default;

    int n_ = 0;
    std::vector<double> theta_;
    std::vector<Term> terms_;  // sorted by exponent, unique
};

inline void check_same_algebra(const TorusPolynomial& a, const TorusPolynomial& b, const char* where) {
    if (a.n() != b.n() || a.theta() != b.theta())
        throw std::invalid_argument(std::string(where) + ": mismatched torus algebra");
}

inline TorusPolynomial add(const TorusPolynomial& a, const TorusPolynomial& b) {
    check_same_algebra(a, b, "add");
    std::vector<TorusPolynomial::Term> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return TorusPolynomial::make(a.n(), a.theta(), std::move(terms));
}

inline TorusPolynomial subtract(const TorusPolynomial& a, const TorusPolynomial& b) {
    check_same_algebra(a, b, "subtract");
    std::vector<TorusPolynomial::Term> terms = a.terms();
    for (const auto& t : b.terms()) terms.emplace_back(t.first, -t.second);
    return TorusPolynomial::make(a.n(), a.theta(), std::move(terms));
}

inline TorusPolynomial scale(const TorusPolynomial& a, cplx c) {
    std::vector<TorusPolynomial::Term> terms = a.terms();
    for (auto& t : terms) t.second *= c;
    return TorusPolynomial::make(a.n(), a.theta(), std::move(terms));
}

inline TorusPolynomial convolve(const TorusPolynomial& a, const TorusPolynomial& b) {
    check_same_algebra(a, b, "convolve");
    std::vector<TorusPolynomial::Term> terms;
    terms.reserve(a.support_size() * b.support_size());
    for (const auto& [al, xa] : a.terms())
        for (const auto& [be, yb] : b.terms()) {
            MonoProduct mp = mono_product(al, be, a.theta(), a.n());
            terms.emplace_back(std::move(mp.gamma), xa * yb * mp.phase);
        }
    return TorusPolynomial::make(a.n(), a.theta(), std::move(terms));
}

inline TorusPolynomial adjoint(const TorusPolynomial& a) {
    std::vector<TorusPolynomial::Term> terms;
    terms.reserve(a.support_size());
    for (const auto& [al, xa] : a.terms()) {
        MultiIndex neg(al.size());
        for (std::size_t i = 0; i < al.size(); ++i) neg[i] = -al[i];
        terms.emplace_back(std::move(neg), std::conj(xa) * adjoint_phase(al, a.theta(), a.n()));
    }
    return TorusPolynomial::make(a.n(), a.theta(), std::move(terms));
}

/// Normalized trace: the coefficient at the zero exponent.
inline cplx trace(const TorusPolynomial& a) {
    return a.coefficient(MultiIndex(static_cast<std::size_t>(a.n()), 0));
}

/// trace(a * b) without the product: sum_alpha a_alpha b_{-alpha} phase(alpha, -alpha).
inline cplx pairing_trace(const TorusPolynomial& a, const TorusPolynomial& b) {
    check_same_algebra(a, b, "pairing_trace");
    cplx acc{};
    const bool a_smaller = a.support_size() <= b.support_size();
    const TorusPolynomial& u = a_smaller ? a : b;
    const TorusPolynomial& v = a_smaller ? b : a;
    for (const auto& [al, ua] : u.terms()) {
        MultiIndex neg(al.size());
        for (std::size_t i = 0; i < al.size(); ++i) neg[i] = -al[i];
        const cplx vb = v.coefficient(neg);
        if (vb == cplx{}) continue;
        acc += ua * vb * mono_product(al, neg, u.theta(), u.n()).phase;
    }
    return acc;
}

namespace detail {

inline double real_trace_checked(cplx t, const char* where) {
    const double re = t.real(), im = t.imag();
    if (std::abs(im) > 1e-10 * std::max(std::abs(re), 1e-100))
        throw std::runtime_error(std::string(where) + ": trace has non-negligible imaginary part");
    return re;
}

}  // namespace detail

/// Even-exponent trace norm, with the same split-power pairing shortcut as the
/// free-group side.
inline double norm_even(const TorusPolynomial& x, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("norm_even: exponent must be even and >= 2");
    if (x.is_zero()) return 0.0;
    const int m = p / 2;
    double tr;
    if (m == 1) {
        tr = detail::real_trace_checked(pairing_trace(adjoint(x), x), "norm_even");
    } else {
        const TorusPolynomial y = convolve(adjoint(x), x);
        const int a = m / 2, b = m - a;
        TorusPolynomial ya = y;
        for (int k = 1; k < a; ++k) ya = convolve(ya, y);
        TorusPolynomial yb = ya;
        for (int k = a; k < b; ++k) yb = convolve(yb, y);
        tr = detail::real_trace_checked(pairing_trace(ya, yb), "norm_even");
    }
    if (tr < -1e-10) throw std::runtime_error("norm_even: negative moment");
    return std::pow(std::max(tr, 0.0), 1.0 / static_cast<double>(p));
}

namespace detail {

inline TorusPolynomial scale_by_length(const TorusPolynomial& x, const std::function<cplx(int)>& f) {
    std::vector<TorusPolynomial::Term> terms = x.terms();
    for (auto& t : terms) t.second *= f(one_norm(t.first));
    return TorusPolynomial::make(x.n(), x.theta(), std::move(terms));
}

}  // namespace detail

/// Heat flow: coefficients at length k scale by e^{-t k}.
inline TorusPolynomial heat(const TorusPolynomial& x, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat: time must be >= 0");
    return detail::scale_by_length(x, [t](int k) { return cplx(std::exp(-t * k), 0.0); });
}

/// Number-operator generator: coefficients at length k scale by k.
inline TorusPolynomial generator(const TorusPolynomial& x) {
    return detail::scale_by_length(x, [](int k) { return cplx(static_cast<double>(k), 0.0); });
}

/// Rotation by a unimodular z: the coefficient at alpha picks up z^{sum alpha_j}.
inline TorusPolynomial rotate(const TorusPolynomial& x, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw std::invalid_argument("rotate: z must be unimodular");
    const double theta = std::arg(z);
    std::vector<TorusPolynomial::Term> terms = x.terms();
    for (auto& t : terms) t.second *= std::polar(1.0, theta * static_cast<double>(signed_sum(t.first)));
    return TorusPolynomial::make(x.n(), x.theta(), std::move(terms));
}

/// Keeps exponents of length >= d.
inline TorusPolynomial project_tail(const TorusPolynomial& x, int d) {
    return detail::scale_by_length(x, [d](int k) { return cplx(k >= d ? 1.0 : 0.0, 0.0); });
}

/// Keeps exponents of length <= d.
inline TorusPolynomial project_low(const TorusPolynomial& x, int d) {
    return detail::scale_by_length(x, [d](int k) { return cplx(k <= d ? 1.0 : 0.0, 0.0); });
}

/**
 * Clock-and-shift model for n = 2 and theta_12 = a / b: U_1 maps to the clock
 * C = diag(omega^m) and U_2 to the cyclic shift S e_m = e_{m+1 mod b}, with
 * omega = e^{2 pi i a / b}, so C S = omega S C matches the cocycle orientation.
 *
 * The model is b-periodic in each exponent, so it only represents elements
 * faithfully when every exponent satisfies |alpha_j| < b; anything else is
 * rejected. Trace and norm agreement with the abstract side additionally needs
 * the traced word to stay inside the window, which callers must arrange.
 */
inline DenseMatrix weyl_model(int a, int b, const TorusPolynomial& x) {
    if (x.n() != 2) throw std::invalid_argument("weyl_model: n must be 2");
    if (b < 2) throw std::invalid_argument("weyl_model: b must be >= 2");
    if (a == 0 || std::gcd(std::abs(a), b) != 1)
        throw std::invalid_argument("weyl_model: a and b must be nonzero coprime");
    const double target = static_cast<double>(a) / static_cast<double>(b);
    if (std::abs(x.theta()[1] - target) > 1e-12)
        throw std::invalid_argument("weyl_model: theta_12 does not equal a / b");
    for (const auto& [al, c] : x.terms())
        for (int v : al)
            if (std::abs(v) >= b) throw std::invalid_argument("weyl_model: exponent outside the faithful window");

    const std::size_t nb = static_cast<std::size_t>(b);
    DenseMatrix m(nb, nb);
    for (const auto& [al, c] : x.terms()) {
        const int a1 = al[0], a2 = al[1];
        for (int col = 0; col < b; ++col) {
            const int row = ((col + a2) % b + b) % b;
            const long long e = ((static_cast<long long>(a1) * row) % b + b) % b;
            const cplx omega_pow = std::polar(1.0, k2Pi * static_cast<double>(a) * static_cast<double>(e) /
                                                       static_cast<double>(b));
            m.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) += c * omega_pow;
        }
    }
    return m;
}

/// Normalized matrix trace Tr / b.
inline cplx weyl_normalized_trace(const DenseMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("weyl_normalized_trace: matrix not square");
    cplx acc{};
    for (std::size_t i = 0; i < m.rows; ++i) acc += m.at(i, i);
    return acc / static_cast<double>(m.rows);
}

/// Normalized Schatten norm (sum sigma_i^p / b)^{1/p} for even p.
inline double weyl_schatten_norm(const DenseMatrix& m, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("weyl_schatten_norm: exponent must be even and >= 2");
    if (m.rows != m.cols) throw std::invalid_argument("weyl_schatten_norm: matrix not square");
    const std::vector<double> sv = numerics::singular_values(m);
    double acc = 0.0;
    for (double s : sv) acc += std::pow(s, p);
    return std::pow(acc / static_cast<double>(m.rows), 1.0 / static_cast<double>(p));
}

/// Largest singular value.
inline double weyl_op_norm(const DenseMatrix& m) {
    const std::vector<double> sv = numerics::singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

}  // namespace ncverify::torus
