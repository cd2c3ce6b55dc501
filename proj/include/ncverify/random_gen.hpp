#pragma once

/**
 * @file random_gen.hpp
 * @brief Seeded random polynomials for the three algebras.
 *
 * mt19937_64 plus hand-rolled uniform doubles keep the bit stream identical
 * across platforms; std::uniform_real_distribution is avoided on purpose.
 */

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ncverify/free_algebra.hpp"
#include "ncverify/qfock.hpp"
#include "ncverify/torus.hpp"

namespace ncverify::rnd {

class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

    /// Uniform in [-1, 1).
    double uniform_pm1() { return 2.0 * uniform() - 1.0; }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    cplx coeff() {
        const double re = uniform_pm1();
        const double im = uniform_pm1();
        return cplx(re, im);
    }

  private:
    std::mt19937_64 eng_;
};

struct FreePolySpec {
    int rank = 2;
    int term_count = 8;
    int min_len = 0;
    int max_len = 6;
    bool holomorphic = false;  // positive letters only
};

/// Random reduced word of exactly the given length.
inline words::Word random_word(RandomSource& rng, int rank, int length, bool holomorphic) {
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        if (holomorphic) {
            letters.push_back(rng.uniform_int(1, rank));
            continue;
        }
        // Reject only the inverse of the previous letter so the word stays reduced.
        int l;
        do {
            const int j = rng.uniform_int(1, rank);
            l = rng.uniform_int(0, 1) == 0 ? j : -j;
        } while (!letters.empty() && letters.back() == -l);
        letters.push_back(l);
    }
    return words::Word::reduced(rank, letters);
}

inline freealg::GroupPolynomial random_group_polynomial(RandomSource& rng, const FreePolySpec& spec) {
    if (spec.min_len < 0 || spec.max_len < spec.min_len)
        throw std::invalid_argument("random_group_polynomial: bad length range");
    if (spec.term_count < 1) throw std::invalid_argument("random_group_polynomial: need at least one term");
    std::vector<freealg::GroupPolynomial::Term> terms;
    std::vector<words::Word> seen;
    int attempts = 0;
    while (static_cast<int>(terms.size()) < spec.term_count && attempts < 64 * spec.term_count) {
        ++attempts;
        const int len = rng.uniform_int(spec.min_len, spec.max_len);
        words::Word w = random_word(rng, spec.rank, len, spec.holomorphic);
        bool dup = false;
        for (const words::Word& s : seen)
            if (s == w) { dup = true; break; }
        if (dup) continue;
        seen.push_back(w);
        terms.emplace_back(std::move(w), rng.coeff());
    }
    if (terms.empty()) throw std::runtime_error("random_group_polynomial: no terms generated");
    return freealg::GroupPolynomial::from_terms(spec.rank, std::move(terms));
}

struct HoloPolySpec {
    int dim_h = 2;
    int term_count = 6;
    int min_deg = 0;
    int max_deg = 3;
};

/// Random normal-form field monomial of exactly the given degree.
inline qfock::HoloMonomial random_holo_monomial(RandomSource& rng, int dim_h, int degree) {
    std::vector<qfock::HoloFactor> factors;
    int remaining = degree;
    int prev = 0;
    while (remaining > 0) {
        int j;
        do {
            j = rng.uniform_int(1, dim_h);
        } while (dim_h > 1 && j == prev);
        const int pw = rng.uniform_int(1, remaining);
        factors.push_back({j, pw});
        remaining -= pw;
        prev = j;
    }
    return qfock::HoloMonomial::make(factors);
}

inline qfock::HoloPolynomial random_holo_polynomial(RandomSource& rng, const HoloPolySpec& spec) {
    if (spec.min_deg < 0 || spec.max_deg < spec.min_deg)
        throw std::invalid_argument("random_holo_polynomial: bad degree range");
    if (spec.term_count < 1) throw std::invalid_argument("random_holo_polynomial: need at least one term");
    qfock::HoloPolynomial p(spec.dim_h);
    std::vector<qfock::HoloMonomial> seen;
    int attempts = 0;
    int added = 0;
    while (added < spec.term_count && attempts < 64 * spec.term_count) {
        ++attempts;
        const int deg = rng.uniform_int(spec.min_deg, spec.max_deg);
        qfock::HoloMonomial m = random_holo_monomial(rng, spec.dim_h, deg);
        bool dup = false;
        for (const qfock::HoloMonomial& s : seen)
            if (s == m) { dup = true; break; }
        if (dup) continue;
        seen.push_back(m);
        p.add_term(m, rng.coeff());
        ++added;
    }
    if (p.is_zero()) throw std::runtime_error("random_holo_polynomial: no terms generated");
    return p;
}

struct TorusPolySpec {
    int n = 2;
    std::vector<double> theta;
    int term_count = 8;
    int min_len = 0;
    int max_len = 6;
    bool holomorphic = false;  // nonnegative exponents only
};

/// Random exponent of exactly the given length, components by repeated splitting.
inline torus::MultiIndex random_multi_index(RandomSource& rng, int n, int length, bool holomorphic) {
    torus::MultiIndex alpha(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < length; ++u) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
        alpha[j] += 1;
    }
    if (!holomorphic)
        for (std::size_t j = 0; j < alpha.size(); ++j)
            if (alpha[j] != 0 && rng.uniform_int(0, 1) == 1) alpha[j] = -alpha[j];
    return alpha;
}

inline torus::TorusPolynomial random_torus_polynomial(RandomSource& rng, const TorusPolySpec& spec) {
    if (spec.min_len < 0 || spec.max_len < spec.min_len)
        throw std::invalid_argument("random_torus_polynomial: bad length range");
    if (spec.term_count < 1) throw std::invalid_argument("random_torus_polynomial: need at least one term");
    std::vector<torus::TorusPolynomial::Term> terms;
    std::vector<torus::MultiIndex> seen;
    int attempts = 0;
    while (static_cast<int>(terms.size()) < spec.term_count && attempts < 64 * spec.term_count) {
        ++attempts;
        const int len = rng.uniform_int(spec.min_len, spec.max_len);
        torus::MultiIndex alpha = random_multi_index(rng, spec.n, len, spec.holomorphic);
        bool dup = false;
        for (const torus::MultiIndex& s : seen)
            if (s == alpha) { dup = true; break; }
        if (dup) continue;
        seen.push_back(alpha);
        terms.emplace_back(std::move(alpha), rng.coeff());
    }
    if (terms.empty()) throw std::runtime_error("random_torus_polynomial: no terms generated");
    return torus::TorusPolynomial::make(spec.n, spec.theta, std::move(terms));
}

}  // namespace ncverify::rnd
