#pragma once

/**
 * @file circle_kernels.hpp
 * @brief The two modulated circle densities behind the averaging identities:
 * a degree-shifted Poisson kernel and a degree-shifted Fejer kernel.
 *
 * Densities are taken against the normalized measure dphi / 2pi, so moments are
 * plain uniform quadrature of z^k times the density.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "ncverify/numerics.hpp"

namespace ncverify::kernels {

class CircleDensity {
  public:
    enum class Kind { shifted_poisson, shifted_fejer };

    /// e^{-t d} e^{-i d phi} (1 - r^2) / (1 - 2 r cos phi + r^2) with r = e^{-t}.
    static CircleDensity shifted_poisson(int d, double t) {
        if (d < 1) throw std::invalid_argument("shifted_poisson: d must be >= 1");
        if (!(t > 0.0)) throw std::invalid_argument("shifted_poisson: t must be > 0");
        return CircleDensity(Kind::shifted_poisson, d, t);
    }

    /// e^{-i d phi} sum_{|i| <= d-1} (d - |i|) e^{i i phi}.
    static CircleDensity shifted_fejer(int d) {
        if (d < 1) throw std::invalid_argument("shifted_fejer: d must be >= 1");
        return CircleDensity(Kind::shifted_fejer, d, 0.0);
    }

    Kind kind() const { return kind_; }
    int d() const { return d_; }
    double t() const { return t_; }

    cplx operator()(double phi) const {
        const double dd = static_cast<double>(d_);
        if (kind_ == Kind::shifted_poisson) {
            const double r = std::exp(-t_);
            const double poisson = (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(phi) + r * r);
            return std::exp(-t_ * dd) * std::polar(poisson, -dd * phi);
        }
        // Direct sum keeps the removable singularity at phi = 0 harmless.
        double fejer = dd;
        for (int i = 1; i <= d_ - 1; ++i)
            fejer += 2.0 * static_cast<double>(d_ - i) * std::cos(static_cast<double>(i) * phi);
        return std::polar(fejer, -dd * phi);
    }

  private:
    CircleDensity(Kind k, int d, double t) : kind_(k), d_(d), t_(t) {}

    Kind kind_;
    int d_;
    double t_;
};

/// k-th moment int z^k f dphi/2pi by uniform quadrature; exact once the rule
/// resolves the integrand, hence the floor on the point count.
inline cplx moment(const CircleDensity& f, long k, std::size_t quad_points) {
    const std::size_t needed = 4 * (static_cast<std::size_t>(f.d()) + static_cast<std::size_t>(std::labs(k)) + 1);
    if (quad_points < needed) throw std::invalid_argument("moment: too few quadrature points");
    return numerics::circle_quadrature(
        [&f, k](double phi) { return std::polar(1.0, static_cast<double>(k) * phi) * f(phi); }, quad_points);
}

/// Total variation int |f| dphi/2pi by uniform quadrature.
inline double total_variation(const CircleDensity& f, std::size_t quad_points) {
    const std::size_t needed = 4 * (static_cast<std::size_t>(f.d()) + 1);
    if (quad_points < needed) throw std::invalid_argument("total_variation: too few quadrature points");
    const cplx v = numerics::circle_quadrature(
        [&f](double phi) { return cplx(std::abs(f(phi)), 0.0); }, quad_points);
    return v.real();
}

}  // namespace ncverify::kernels
