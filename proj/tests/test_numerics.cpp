#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ncverify/numerics.hpp"

using namespace ncverify;
using numerics::DenseMatrix;

namespace {

DenseMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto u = [&eng]() { return static_cast<double>(eng() >> 11) * 0x1p-52 - 1.0; };
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = u();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double re = u();
            const double im = u();
            m.at(i, j) = cplx(re, im);
            m.at(j, i) = cplx(re, -im);
        }
    }
    return m;
}

// Cofactor-expansion determinant, usable up to 6x6; test oracle only.
cplx det_cofactor(const DenseMatrix& m) {
    const std::size_t n = m.rows;
    if (n == 1) return m.at(0, 0);
    cplx acc{};
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        DenseMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor.at(i - 1, cj++) = m.at(i, j);
            }
        }
        acc += sign * m.at(0, k) * det_cofactor(minor);
        sign = -sign;
    }
    return acc;
}

}  // namespace

TEST_CASE("eigenvalues of small known matrices", "[numerics]") {
    DenseMatrix d(3, 3);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = 1.0;
    d.at(2, 2) = 2.0;
    auto e = numerics::hermitian_eigs(d);
    REQUIRE(e.size() == 3);
    CHECK(e[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(e[1] == Catch::Approx(2.0).margin(1e-12));
    CHECK(e[2] == Catch::Approx(3.0).margin(1e-12));

    DenseMatrix s(2, 2);
    s.at(0, 1) = 1.0;
    s.at(1, 0) = 1.0;
    e = numerics::hermitian_eigs(s);
    CHECK(e[0] == Catch::Approx(-1.0).margin(1e-12));
    CHECK(e[1] == Catch::Approx(1.0).margin(1e-12));

    DenseMatrix h(2, 2);
    h.at(0, 0) = 2.0;
    h.at(0, 1) = cplx(0.0, 1.0);
    h.at(1, 0) = cplx(0.0, -1.0);
    h.at(1, 1) = 2.0;
    e = numerics::hermitian_eigs(h);
    CHECK(e[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(e[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("eigen decomposition reconstructs random Hermitian input", "[numerics]") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const DenseMatrix m = random_hermitian(12, seed);
        const auto [vals, vecs] = numerics::hermitian_eigs_with_vectors(m);

        double tr = 0.0;
        for (std::size_t i = 0; i < m.rows; ++i) tr += m.at(i, i).real();
        double sum = 0.0;
        for (double v : vals) sum += v;
        CHECK(sum == Catch::Approx(tr).margin(1e-10));

        // residual || M v - lambda v || per column
        for (std::size_t j = 0; j < m.cols; ++j) {
            double res = 0.0;
            for (std::size_t i = 0; i < m.rows; ++i) {
                cplx acc{};
                for (std::size_t k = 0; k < m.cols; ++k) acc += m.at(i, k) * vecs.at(k, j);
                acc -= vals[j] * vecs.at(i, j);
                res += std::norm(acc);
            }
            CHECK(std::sqrt(res) < 1e-10);
        }

        const cplx det = det_cofactor(random_hermitian(5, seed + 100));
        const auto vals5 = numerics::hermitian_eigs(random_hermitian(5, seed + 100));
        double prod = 1.0;
        for (double v : vals5) prod *= v;
        CHECK(det.imag() == Catch::Approx(0.0).margin(1e-10));
        CHECK(prod == Catch::Approx(det.real()).margin(1e-9 * std::max(1.0, std::abs(det.real()))));
    }
}

TEST_CASE("input validation of the eigensolver", "[numerics]") {
    DenseMatrix bad(2, 2);
    bad.at(0, 1) = 1.0;
    bad.at(1, 0) = 2.0;  // not Hermitian
    CHECK_THROWS_AS(numerics::hermitian_eigs(bad), std::invalid_argument);

    DenseMatrix nan_mat(2, 2);
    nan_mat.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(numerics::hermitian_eigs(nan_mat), std::invalid_argument);

    DenseMatrix rect(2, 3);
    CHECK_THROWS_AS(numerics::hermitian_eigs(rect), std::invalid_argument);
}

TEST_CASE("singular values of structured matrices", "[numerics]") {
    // rank one alpha beta^H has the single singular value |alpha| |beta|
    DenseMatrix m(3, 2);
    const cplx alpha[3] = {cplx(1, 1), cplx(0, 2), cplx(-1, 0)};
    const cplx beta[2] = {cplx(2, 0), cplx(0, -1)};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = alpha[i] * std::conj(beta[j]);
    const auto sv = numerics::singular_values(m);
    REQUIRE(sv.size() == 2);
    const double na = std::sqrt(2.0 + 4.0 + 1.0), nb = std::sqrt(4.0 + 1.0);
    CHECK(sv[0] == Catch::Approx(na * nb).margin(1e-10));
    CHECK(sv[1] == Catch::Approx(0.0).margin(1e-10));

    // rotation matrix is unitary: all singular values 1
    DenseMatrix r(2, 2);
    const double th = 0.7;
    r.at(0, 0) = std::cos(th);
    r.at(0, 1) = -std::sin(th);
    r.at(1, 0) = std::sin(th);
    r.at(1, 1) = std::cos(th);
    const auto sv2 = numerics::singular_values(r);
    CHECK(sv2[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(sv2[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("power iteration matches the top singular value", "[numerics]") {
    std::mt19937_64 eng(77);
    auto u = [&eng]() { return static_cast<double>(eng() >> 11) * 0x1p-52 - 1.0; };
    DenseMatrix m(9, 7);
    for (cplx& v : m.data) v = cplx(u(), u());
    const auto sv = numerics::singular_values(m);
    const double p = numerics::power_norm(m, 400);
    CHECK(p == Catch::Approx(sv[0]).epsilon(1e-9));
    CHECK(p <= sv[0] + 1e-12);  // lower estimate by construction

    // deterministic across calls
    CHECK(numerics::power_norm(m, 50) == numerics::power_norm(m, 50));
}

TEST_CASE("circle quadrature integrates trigonometric polynomials exactly", "[numerics]") {
    const cplx one = numerics::circle_quadrature([](double) { return cplx(1.0, 0.0); }, 8);
    CHECK(one.real() == Catch::Approx(1.0).margin(1e-14));
    CHECK(one.imag() == Catch::Approx(0.0).margin(1e-14));

    const cplx osc = numerics::circle_quadrature([](double phi) { return std::polar(1.0, phi); }, 8);
    CHECK(std::abs(osc) < 1e-14);

    // degree-10 trig polynomial at 32 points: only the constant survives
    const cplx mixed = numerics::circle_quadrature(
        [](double phi) {
            cplx acc(0.25, 0.0);
            for (int k = 1; k <= 10; ++k) acc += std::polar(1.0 / k, k * phi) + std::polar(0.5 / k, -k * phi);
            return acc;
        },
        32);
    CHECK(mixed.real() == Catch::Approx(0.25).margin(1e-13));
    CHECK(mixed.imag() == Catch::Approx(0.0).margin(1e-13));

    CHECK_THROWS_AS(numerics::circle_quadrature([](double) { return cplx{}; }, 4), std::invalid_argument);
}

TEST_CASE("dimension cap rejects oversized eigenproblems", "[numerics]") {
    DenseMatrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i) m.at(i, i) = 1.0;
    CHECK_THROWS_AS(numerics::hermitian_eigs(m, 4), std::invalid_argument);
    CHECK_NOTHROW(numerics::hermitian_eigs(m, 8));
}
