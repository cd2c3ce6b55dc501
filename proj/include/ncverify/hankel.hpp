#pragma once

/**
 * @file hankel.hpp
 * @brief The extremal radial multiplier sequence m(d, r), its Hankel matrix of
 * first differences, the A/B/C block decomposition with closed-form trace norms,
 * and the resulting multiplier and smoothing constants.
 *
 * The sequence equals r^k for k >= d and continues downward through
 * m_k = m_{k+2} + r^{2d-k} (1 - r^2), which makes the difference Hankel matrix
 * finite rank with entries (1 - r^2) r^{d + |i+j-d|}.
 */

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ncverify/numerics.hpp"

namespace ncverify::hankel {

using numerics::DenseMatrix;

class SharpSequence {
  public:
    SharpSequence(int d, double r) : d_(d), r_(r) {
        if (d < 1) throw std::invalid_argument("SharpSequence: d must be >= 1");
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("SharpSequence: r must be in (0,1)");
        // Low part from the downward recurrence, anchored at k = d, d+1.
        low_.assign(static_cast<std::size_t>(d) + 2, 0.0);
        low_[static_cast<std::size_t>(d)] = std::pow(r, d);
        low_[static_cast<std::size_t>(d) + 1] = std::pow(r, d + 1);
        for (int k = d - 1; k >= 0; --k)
            low_[static_cast<std::size_t>(k)] =
                low_[static_cast<std::size_t>(k) + 2] + std::pow(r, 2 * d - k) * (1.0 - r_ * r_);
    }

    int d() const { return d_; }
    double r() const { return r_; }

    double value(std::size_t k) const {
        if (k >= static_cast<std::size_t>(d_)) return std::pow(r_, static_cast<double>(k));
        return low_[k];
    }

  private:
    int d_;
    double r_;
    std::vector<double> low_;
};

/// H[i][j] = m_{i+j} - m_{i+j+2} for 0 <= i, j < N.
inline DenseMatrix hankel_matrix(const SharpSequence& seq, std::size_t n) {
    if (n < static_cast<std::size_t>(seq.d()) + 2)
        throw std::invalid_argument("hankel_matrix: N must be >= d + 2");
    DenseMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h.at(i, j) = seq.value(i + j) - seq.value(i + j + 2);
    return h;
}

/// Trace norm of a real symmetric matrix as the absolute eigenvalue sum.
inline double trace_norm(const DenseMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("trace_norm: matrix not square");
    const double amax = numerics::max_abs(m);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i; j < m.cols; ++j) {
            if (std::abs(m.at(i, j).imag()) > 1e-12 * std::max(amax, 1e-300) ||
                std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * std::max(amax, 1e-300))
                throw std::invalid_argument("trace_norm: matrix not real symmetric within tolerance");
        }
    const std::vector<double> eigs = numerics::hermitian_eigs(m);
    double s = 0.0;
    for (double e : eigs) s += std::abs(e);
    return s;
}

struct AbcNorms {
    double b_trace_norm = 0.0;
    double b_closed_form = 0.0;
    double c_trace_norm = 0.0;
    double c_closed_form = 0.0;
    double a_tilde_trace = 0.0;
    double a_tilde_trace_closed = 0.0;
    double a_tilde_min_eig = 0.0;
};

struct AbcDecomposition {
    DenseMatrix a;        // rows 0..d, cols 0..d
    DenseMatrix b;        // rows 0..d, cols d+1..N-1
    DenseMatrix c;        // rows d+1..N-1, all cols
    DenseMatrix a_tilde;  // A with columns reversed (j <-> d - j)
    AbcNorms norms;
};

/**
 * Splits H into the top-left corner A, its right continuation B, and the lower
 * rows C, so H = (A | B stacked over C) up to placement. The column-reversed
 * corner has the Toeplitz form (1 - r^2) r^d r^{|i-j|}, whose trace gives the
 * dominant term of the multiplier bound; it is also positive semi-definite.
 */
inline AbcDecomposition abc_decomposition(int d, double r, std::size_t n) {
    if (n < static_cast<std::size_t>(d) + 2)
        throw std::invalid_argument("abc_decomposition: N must be > d + 1");
    const SharpSequence seq(d, r);
    const DenseMatrix h = hankel_matrix(seq, n);
    const std::size_t corner = static_cast<std::size_t>(d) + 1;

    AbcDecomposition out;
    out.a = DenseMatrix(corner, corner);
    for (std::size_t i = 0; i < corner; ++i)
        for (std::size_t j = 0; j < corner; ++j) out.a.at(i, j) = h.at(i, j);

    out.b = DenseMatrix(corner, n - corner);
    for (std::size_t i = 0; i < corner; ++i)
        for (std::size_t j = corner; j < n; ++j) out.b.at(i, j - corner) = h.at(i, j);

    out.c = DenseMatrix(n - corner, n);
    for (std::size_t i = corner; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.c.at(i - corner, j) = h.at(i, j);

    out.a_tilde = DenseMatrix(corner, corner);
    for (std::size_t i = 0; i < corner; ++i)
        for (std::size_t j = 0; j < corner; ++j)
            out.a_tilde.at(i, j) = out.a.at(i, static_cast<std::size_t>(d) - j);

    AbcNorms& nm = out.norms;
    nm.b_trace_norm = numerics::nuclear_norm(out.b);
    nm.b_closed_form = std::pow(r, d + 1) * std::sqrt(1.0 - std::pow(r, 2 * (d + 1)));
    nm.c_trace_norm = numerics::nuclear_norm(out.c);
    nm.c_closed_form = std::pow(r, d + 1);
    double tr = 0.0;
    for (std::size_t i = 0; i < corner; ++i) tr += out.a_tilde.at(i, i).real();
    nm.a_tilde_trace = tr;
    nm.a_tilde_trace_closed = static_cast<double>(d + 1) * (1.0 - r * r) * std::pow(r, d);
    nm.a_tilde_min_eig = numerics::min_eigenvalue(out.a_tilde);
    return out;
}

/// Trace-norm bound for the multiplier with symbol m(d, r): (d+1)(1-r^2) r^d + 2 r^{d+1}.
inline double multiplier_bound(int d, double r) {
    if (d < 1) throw std::invalid_argument("multiplier_bound: d must be >= 1");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("multiplier_bound: r must be in (0,1)");
    return static_cast<double>(d + 1) * (1.0 - r * r) * std::pow(r, d) + 2.0 * std::pow(r, d + 1);
}

/// Time integral of the multiplier bound along r = e^{-t}: the closed form
/// (d+1)(1/d - 1/(d+2)) + 2/(d+1), which sits below 4/d.
inline double smoothing_constant(int d) {
    if (d < 1) throw std::invalid_argument("smoothing_constant: d must be >= 1");
    const double dd = static_cast<double>(d);
    return (dd + 1.0) * (1.0 / dd - 1.0 / (dd + 2.0)) + 2.0 / (dd + 1.0);
}

/// Composite Simpson cross-check of the same integral, on [0, 40] with 2^16 panels.
inline double smoothing_constant_quadrature(int d) {
    if (d < 1) throw std::invalid_argument("smoothing_constant_quadrature: d must be >= 1");
    const double dd = static_cast<double>(d);
    auto f = [dd](double t) {
        const double e = std::exp(-t);
        return (dd + 1.0) * (1.0 - e * e) * std::exp(-t * dd) + 2.0 * std::exp(-t * (dd + 1.0));
    };
    const std::size_t panels = std::size_t{1} << 16;
    const double upper = 40.0;
    const double h = upper / static_cast<double>(panels);
    double acc = f(0.0) + f(upper);
    for (std::size_t i = 1; i < panels; ++i)
        acc += f(h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace ncverify::hankel
