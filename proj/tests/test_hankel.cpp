#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>

#include "ncverify/free_algebra.hpp"
#include "ncverify/hankel.hpp"
#include "ncverify/random_gen.hpp"

using namespace ncverify;
using hankel::SharpSequence;

TEST_CASE("sharp sequence values", "[hankel]") {
    // d = 1, r = 1/2: m_0 = m_2 + r^2 (1 - r^2) = 1/4 + 3/16
    const SharpSequence s1(1, 0.5);
    CHECK(s1.value(0) == Catch::Approx(0.4375).margin(1e-15));
    CHECK(s1.value(1) == Catch::Approx(0.5).margin(1e-15));
    CHECK(s1.value(4) == Catch::Approx(0.0625).margin(1e-15));

    // d = 2, r = 1/2: m_1 = m_3 + r^3 (1 - r^2), m_0 = m_2 + r^4 (1 - r^2)
    const SharpSequence s2(2, 0.5);
    CHECK(s2.value(1) == Catch::Approx(0.21875).margin(1e-15));
    CHECK(s2.value(0) == Catch::Approx(0.296875).margin(1e-15));
    CHECK(s2.value(2) == Catch::Approx(0.25).margin(1e-15));

    // below d the recurrence closes to m_k = r^k - r^{2d - k} (1 - r^... ) only
    // through the finite telescoping; spot check the direct telescope for d = 3
    const double r = 0.7;
    const SharpSequence s3(3, r);
    double expect = std::pow(r, 5); // m_5 = r^5
    expect += std::pow(r, 2.0 * 3 - 3) * (1.0 - r * r); // m_3 = m_5 + r^3 (1 - r^2)
    CHECK(s3.value(3) == Catch::Approx(std::pow(r, 3)).margin(1e-15));
    CHECK(expect == Catch::Approx(std::pow(r, 3)).margin(1e-15));
    CHECK(s3.value(1) == Catch::Approx(s3.value(3) + std::pow(r, 5) * (1 - r * r)).margin(1e-15));
    CHECK(s3.value(0) == Catch::Approx(s3.value(2) + std::pow(r, 6) * (1 - r * r)).margin(1e-15));
}

TEST_CASE("hankel matrix entries close over the reflected profile", "[hankel]") {
    const int d = 1;
    const double r = 0.5;
    const SharpSequence seq(d, r);
    const auto h = hankel::hankel_matrix(seq, 3);
    CHECK(h.at(1, 1).real() == Catch::Approx(0.1875).margin(1e-15));
    CHECK(h.at(0, 1).real() == Catch::Approx(0.375).margin(1e-15));
    CHECK(h.at(0, 0).real() == Catch::Approx(0.1875).margin(1e-15));

    for (int dd : {1, 2, 4})
        for (double rr : {0.3, 0.6, 0.9}) {
            const SharpSequence sq(dd, rr);
            const auto m = hankel::hankel_matrix(sq, static_cast<std::size_t>(dd) + 5);
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t j = 0; j < m.cols; ++j) {
                    const double expo = dd + std::abs(static_cast<double>(i) + static_cast<double>(j) - dd);
                    CHECK(m.at(i, j).real() ==
                          Catch::Approx((1.0 - rr * rr) * std::pow(rr, expo)).margin(1e-14));
                }
        }
}

TEST_CASE("corner decomposition reassembles the matrix", "[hankel]") {
    const int d = 2;
    const double r = 0.6;
    const std::size_t n = 12;
    const auto dec = hankel::abc_decomposition(d, r, n);
    const auto h = hankel::hankel_matrix(SharpSequence(d, r), n);
    const std::size_t head = static_cast<std::size_t>(d) + 1;

    REQUIRE(dec.a.rows == head);
    REQUIRE(dec.a.cols == head);
    REQUIRE(dec.b.rows == head);
    REQUIRE(dec.b.cols == n - head);
    REQUIRE(dec.c.rows == n - head);
    REQUIRE(dec.c.cols == n);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx expect;
            if (i < head && j < head) expect = dec.a.at(i, j);
            else if (i < head) expect = dec.b.at(i, j - head);
            else expect = dec.c.at(i - head, j);
            CHECK(std::abs(h.at(i, j) - expect) < 1e-15);
        }
}

TEST_CASE("flipped head block is Toeplitz positive with closed trace", "[hankel]") {
    for (int d : {1, 2, 3, 5})
        for (double r : {0.2, 0.5, 0.8}) {
            const auto dec = hankel::abc_decomposition(d, r, 60);
            const std::size_t head = static_cast<std::size_t>(d) + 1;
            for (std::size_t i = 0; i < head; ++i)
                for (std::size_t j = 0; j < head; ++j) {
                    const double expo = d + std::abs(static_cast<double>(i) - static_cast<double>(j));
                    CHECK(dec.a_tilde.at(i, j).real() ==
                          Catch::Approx((1.0 - r * r) * std::pow(r, expo)).margin(1e-14));
                }
            CHECK(dec.norms.a_tilde_min_eig >= -1e-10 * static_cast<double>(head));
            CHECK(dec.norms.a_tilde_trace ==
                  Catch::Approx(dec.norms.a_tilde_trace_closed).margin(1e-12));
            CHECK(dec.norms.a_tilde_trace_closed ==
                  Catch::Approx((d + 1) * (1.0 - r * r) * std::pow(r, d)).margin(1e-14));
        }

    const auto dec = hankel::abc_decomposition(1, 0.5, 40);
    CHECK(dec.norms.a_tilde_trace == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("corner blocks are rank one with closed trace norms", "[hankel]") {
    for (int d : {1, 2, 4})
        for (double r : {0.3, 0.5, 0.8}) {
            const auto dec = hankel::abc_decomposition(d, r, 200);
            CHECK(dec.norms.b_trace_norm == Catch::Approx(dec.norms.b_closed_form).margin(1e-9));
            CHECK(dec.norms.c_trace_norm == Catch::Approx(dec.norms.c_closed_form).margin(1e-9));
            const double rd1 = std::pow(r, d + 1);
            CHECK(dec.norms.b_closed_form ==
                  Catch::Approx(rd1 * std::sqrt(1.0 - std::pow(r, 2 * (d + 1)))).margin(1e-14));
            CHECK(dec.norms.c_closed_form == Catch::Approx(rd1).margin(1e-14));
        }

    const auto dec = hankel::abc_decomposition(1, 0.5, 200);
    CHECK(dec.norms.c_closed_form == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("full trace norm stays below the multiplier bound", "[hankel]") {
    CHECK(hankel::multiplier_bound(1, 0.5) == Catch::Approx(1.25).margin(1e-14));
    for (int d : {1, 2, 3, 4, 6, 8})
        for (double r : {0.2, 0.4, 0.6, 0.8, 0.92}) {
            const auto h = hankel::hankel_matrix(SharpSequence(d, r), 200);
            const double tn = hankel::trace_norm(h);
            CHECK(tn <= hankel::multiplier_bound(d, r) + 1e-8);
            CHECK(tn > 0.0);
        }
}

TEST_CASE("smoothing constant is bounded by 4 over d", "[hankel]") {
    CHECK(hankel::smoothing_constant(1) == Catch::Approx(7.0 / 3.0).margin(1e-14));
    CHECK(hankel::smoothing_constant(2) == Catch::Approx(17.0 / 12.0).margin(1e-14));
    for (int d = 1; d <= 8; ++d) {
        const double c = hankel::smoothing_constant(d);
        CHECK(c <= 4.0 / static_cast<double>(d) + 1e-14);
        CHECK(c > 0.0);
        CHECK(std::abs(c - hankel::smoothing_constant_quadrature(d)) <= 1e-6);
    }
}

TEST_CASE("sequence matches the heat profile past the threshold", "[hankel]") {
    // applying the sequence as a radial multiplier equals heat flow on the tail part
    const double t = 0.45;
    const int d = 2;
    const SharpSequence seq(d, std::exp(-t));
    rnd::RandomSource src(77);
    rnd::FreePolySpec spec;
    spec.rank = 2;
    spec.term_count = 10;
    spec.min_len = d;
    spec.max_len = 5;
    const auto x = rnd::random_group_polynomial(src, spec);
    const auto tail = freealg::project_tail(x, d);
    const auto mult = freealg::RadialFunction::from_function(
        [&](std::size_t k) { return seq.value(k); });
    const auto lhs = freealg::apply_radial(tail, mult);
    const auto rhs = freealg::heat(tail, t);
    const auto diff = freealg::subtract(lhs, rhs);
    for (const auto& [w, c] : diff.terms()) {
        (void)w;
        CHECK(std::abs(c) < 1e-14);
    }
}

TEST_CASE("hankel preconditions are enforced", "[hankel]") {
    CHECK_THROWS_AS(SharpSequence(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SharpSequence(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SharpSequence(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SharpSequence(1, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(hankel::hankel_matrix(SharpSequence(3, 0.5), 4), std::invalid_argument);
    CHECK_THROWS_AS(hankel::abc_decomposition(3, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(hankel::smoothing_constant(0), std::invalid_argument);
}
