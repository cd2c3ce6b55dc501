#pragma once

/**
 * @file numerics.hpp
 * @brief Self-contained dense linear algebra kernels: Hermitian eigendecomposition
 * (cyclic Jacobi), singular values, power iteration, and uniform circle quadrature.
 *
 * Everything works on small dense complex matrices (desk scale, default cap 4096)
 * and is deterministic: no randomized pivoting, seeded power-iteration starts.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncverify {

using cplx = std::complex<double>;

namespace numerics {

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Row-major dense complex matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    bool all_finite() const {
        for (const cplx& v : data) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    }
};

inline DenseMatrix adjoint(const DenseMatrix& m) {
    DenseMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
    return out;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: inner dimensions differ");
    DenseMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            const cplx* brow = &b.data[k * b.cols];
            cplx* orow = &out.data[i * out.cols];
            for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

inline DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("add: shape mismatch");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("subtract: shape mismatch");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

inline DenseMatrix scale(const DenseMatrix& a, cplx c) {
    DenseMatrix out = a;
    for (cplx& v : out.data) v *= c;
    return out;
}

inline double max_abs(const DenseMatrix& m) {
    double v = 0.0;
    for (const cplx& x : m.data) v = std::max(v, std::abs(x));
    return v;
}

inline double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (const cplx& x : m.data) s += std::norm(x);
    return std::sqrt(s);
}

inline void check_finite(const DenseMatrix& m, const char* where) {
    if (!m.all_finite()) throw std::invalid_argument(std::string(where) + ": non-finite matrix entry");
}

struct EigResult {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // columns match values; empty unless requested
};

namespace detail {

// One cyclic Jacobi pass infrastructure for complex Hermitian matrices.
// The rotation zeroing entry (p,q) is the unitary
//   G = [[c, s e^{i phi}], [-s e^{-i phi}, c]],  a_pq = |a_pq| e^{i phi},
// applied as A <- G^H A G.
inline EigResult jacobi_hermitian(DenseMatrix a, bool want_vectors, std::size_t dim_cap) {
    if (a.rows != a.cols) throw std::invalid_argument("hermitian_eigs: matrix not square");
    const std::size_t n = a.rows;
    if (n > dim_cap) throw std::invalid_argument("hermitian_eigs: dimension cap exceeded");
    check_finite(a, "hermitian_eigs");

    const double amax = max_abs(a);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double dev = std::abs(a.at(i, j) - std::conj(a.at(j, i)));
            if (dev > 1e-12 * std::max(amax, 1e-300))
                throw std::invalid_argument("hermitian_eigs: input not Hermitian within tolerance");
        }
    // Kill roundoff asymmetry so the sweep preserves Hermitian structure exactly.
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = cplx(a.at(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }

    DenseMatrix vecs = want_vectors ? DenseMatrix::identity(n) : DenseMatrix();
    const double fro = std::max(frobenius_norm(a), 1e-300);
    const double target = 1e-13 * fro;

    auto off_diag_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a.at(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diag_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double m = std::abs(apq);
                if (m <= 1e-18 * fro) {
                    a.at(p, q) = a.at(q, p) = 0.0;
                    continue;
                }
                const cplx eiph = apq / m;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t j = 0; j < n; ++j) {
                    const cplx rp = a.at(p, j), rq = a.at(q, j);
                    a.at(p, j) = c * rp - s * eiph * rq;
                    a.at(q, j) = s * std::conj(eiph) * rp + c * rq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx cp = a.at(i, p), cq = a.at(i, q);
                    a.at(i, p) = c * cp - s * std::conj(eiph) * cq;
                    a.at(i, q) = s * eiph * cp + c * cq;
                }
                a.at(p, q) = a.at(q, p) = 0.0;
                a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
                a.at(q, q) = cplx(a.at(q, q).real(), 0.0);
                if (want_vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx vp = vecs.at(i, p), vq = vecs.at(i, q);
                        vecs.at(i, p) = c * vp - s * std::conj(eiph) * vq;
                        vecs.at(i, q) = s * eiph * vp + c * vq;
                    }
                }
            }
        }
    }
    if (sweep == kMaxSweeps && off_diag_norm() > target)
        throw std::runtime_error("hermitian_eigs: no convergence after 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.values[i] = a.at(order[i], order[i]).real();
    if (want_vectors) {
        res.vectors = DenseMatrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) res.vectors.at(i, j) = vecs.at(i, order[j]);
    }
    return res;
}

}  // namespace detail

/// Ascending eigenvalues of a Hermitian matrix (cyclic Jacobi).
inline std::vector<double> hermitian_eigs(const DenseMatrix& m, std::size_t dim_cap = kDefaultDimCap) {
    return detail::jacobi_hermitian(m, false, dim_cap).values;
}

inline EigResult hermitian_eigs_with_vectors(const DenseMatrix& m, std::size_t dim_cap = kDefaultDimCap) {
    return detail::jacobi_hermitian(m, true, dim_cap);
}

/// Descending singular values, computed from the smaller of M^H M and M M^H.
inline std::vector<double> singular_values(const DenseMatrix& m, std::size_t dim_cap = kDefaultDimCap) {
    check_finite(m, "singular_values");
    if (m.rows == 0 || m.cols == 0) return {};
    const DenseMatrix g = (m.rows <= m.cols) ? multiply(m, adjoint(m)) : multiply(adjoint(m), m);
    std::vector<double> eigs = hermitian_eigs(g, dim_cap);
    std::vector<double> sv(eigs.size());
    for (std::size_t i = 0; i < eigs.size(); ++i)
        sv[i] = std::sqrt(std::max(0.0, eigs[eigs.size() - 1 - i]));
    return sv;
}

/// Sum of singular values (Schatten-1 norm).
inline double nuclear_norm(const DenseMatrix& m, std::size_t dim_cap = kDefaultDimCap) {
    const std::vector<double> sv = singular_values(m, dim_cap);
    double s = 0.0;
    for (double v : sv) s += v;
    return s;
}

/// Largest singular value via power iteration on M^H M, seeded deterministically.
inline double power_norm(const DenseMatrix& m, int iters, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    check_finite(m, "power_norm");
    if (m.rows == 0 || m.cols == 0) return 0.0;
    if (iters < 1) throw std::invalid_argument("power_norm: iters must be >= 1");

    // splitmix64 start vector; deterministic across platforms
    auto next = [&seed]() {
        seed += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = seed;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto unit = [&]() { return static_cast<double>(next() >> 11) * 0x1p-52 - 1.0; };

    std::vector<cplx> v(m.cols);
    for (cplx& x : v) x = cplx(unit(), unit());
    double nv = 0.0;
    for (const cplx& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    if (nv == 0.0) { v[0] = 1.0; nv = 1.0; }
    for (cplx& x : v) x /= nv;

    std::vector<cplx> w(m.rows);
    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::fill(w.begin(), w.end(), cplx{});
        for (std::size_t i = 0; i < m.rows; ++i) {
            cplx acc{};
            const cplx* row = &m.data[i * m.cols];
            for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * v[j];
            w[i] = acc;
        }
        double nw = 0.0;
        for (const cplx& x : w) nw += std::norm(x);
        sigma = std::sqrt(nw);
        if (sigma == 0.0) return 0.0;
        // v <- M^H w, renormalized
        std::fill(v.begin(), v.end(), cplx{});
        for (std::size_t i = 0; i < m.rows; ++i) {
            const cplx wi = w[i];
            const cplx* row = &m.data[i * m.cols];
            for (std::size_t j = 0; j < m.cols; ++j) v[j] += std::conj(row[j]) * wi;
        }
        double nv2 = 0.0;
        for (const cplx& x : v) nv2 += std::norm(x);
        nv2 = std::sqrt(nv2);
        if (nv2 == 0.0) return sigma;
        for (cplx& x : v) x /= nv2;
    }
    return sigma;
}

/// (1/N) sum_k f(2 pi k / N): the uniform (trapezoidal) rule on the circle,
/// exact for trigonometric polynomials of degree < N/2.
inline cplx circle_quadrature(const std::function<cplx(double)>& f, std::size_t n_points) {
    if (n_points < 8) throw std::invalid_argument("circle_quadrature: need at least 8 points");
    constexpr double two_pi = 6.283185307179586476925286766559;
    cplx acc{};
    for (std::size_t k = 0; k < n_points; ++k) acc += f(two_pi * static_cast<double>(k) / static_cast<double>(n_points));
    return acc / static_cast<double>(n_points);
}

/// Minimum eigenvalue, for PSD checks against the -tol*dim convention.
inline double min_eigenvalue(const DenseMatrix& m, std::size_t dim_cap = kDefaultDimCap) {
    const std::vector<double> e = hermitian_eigs(m, dim_cap);
    return e.empty() ? 0.0 : e.front();
}

}  // namespace numerics
}  // namespace ncverify
