#pragma once

/**
 * @file free_algebra.hpp
 * @brief Finite-support elements of the group algebra of a free group, with the
 * canonical trace, even-exponent trace norms, radial Fourier multipliers, and a
 * certified operator-norm lower estimate on a finite ball.
 *
 * Coefficients live on reduced words. All containers are canonically sorted, so
 * every operation is deterministic down to floating-point evaluation order.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncverify/numerics.hpp"
#include "ncverify/words.hpp"

namespace ncverify::freealg {

using words::Word;
using numerics::DenseMatrix;

/// Coefficients with modulus at or below this are dropped after each normalization.
inline constexpr double kDropThreshold = 1e-15;

class GroupPolynomial {
  public:
    using Term = std::pair<Word, cplx>;

    explicit GroupPolynomial(int rank) : rank_(rank) {
        if (rank < 1) throw std::invalid_argument("GroupPolynomial: rank must be >= 1");
    }

    /// Sorts, merges duplicate words, and drops negligible coefficients.
    static GroupPolynomial from_terms(int rank, std::vector<Term> terms) {
        GroupPolynomial p(rank);
        for (const Term& t : terms)
            if (t.first.rank() != rank) throw std::invalid_argument("from_terms: word rank mismatch");
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return words::canonical_compare(a.first, b.first) < 0; });
        for (Term& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
        }
        p.drop_small();
        return p;
    }

    static GroupPolynomial delta(const Word& w, cplx c = 1.0) {
        return from_terms(w.rank(), {{w, c}});
    }

    int rank() const { return rank_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    cplx coefficient(const Word& w) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const Term& t, const Word& v) {
            return words::canonical_compare(t.first, v) < 0;
        });
        if (it != terms_.end() && it->first == w) return it->second;
        return cplx{};
    }

    std::size_t max_word_length() const {
        // canonical order is length-first, so the last term is longest
        return terms_.empty() ? 0 : terms_.back().first.length();
    }

    std::size_t min_word_length() const {
        return terms_.empty() ? 0 : terms_.front().first.length();
    }

  private:
    void drop_small() {
        std::vector<Term> kept;
        kept.reserve(terms_.size());
        for (Term& t : terms_)
            if (std::abs(t.second) > kDropThreshold) kept.push_back(std::move(t));
        terms_ = std::move(kept);
    }

    int rank_;
    std::vector<Term> terms_;  // canonically sorted, unique words
};

inline void check_same_rank(const GroupPolynomial& a, const GroupPolynomial& b, const char* where) {
    if (a.rank() != b.rank()) throw std::invalid_argument(std::string(where) + ": rank mismatch");
}

inline GroupPolynomial add(const GroupPolynomial& a, const GroupPolynomial& b) {
    check_same_rank(a, b, "add");
    std::vector<GroupPolynomial::Term> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return GroupPolynomial::from_terms(a.rank(), std::move(terms));
}

inline GroupPolynomial subtract(const GroupPolynomial& a, const GroupPolynomial& b) {
    check_same_rank(a, b, "subtract");
    std::vector<GroupPolynomial::Term> terms = a.terms();
    for (const auto& t : b.terms()) terms.emplace_back(t.first, -t.second);
    return GroupPolynomial::from_terms(a.rank(), std::move(terms));
}

inline GroupPolynomial scale(const GroupPolynomial& a, cplx c) {
    std::vector<GroupPolynomial::Term> terms = a.terms();
    for (auto& t : terms) t.second *= c;
    return GroupPolynomial::from_terms(a.rank(), std::move(terms));
}

/// Convolution product: (a * b)_w = sum_{g h = w} a_g b_h.
inline GroupPolynomial convolve(const GroupPolynomial& a, const GroupPolynomial& b) {
    check_same_rank(a, b, "convolve");
    std::vector<GroupPolynomial::Term> terms;
    terms.reserve(a.support_size() * b.support_size());
    for (const auto& [g, xg] : a.terms())
        for (const auto& [h, yh] : b.terms()) terms.emplace_back(words::multiply(g, h), xg * yh);
    return GroupPolynomial::from_terms(a.rank(), std::move(terms));
}

/// Adjoint: x*_g = conj(x_{g^{-1}}).
inline GroupPolynomial adjoint(const GroupPolynomial& a) {
    std::vector<GroupPolynomial::Term> terms;
    terms.reserve(a.support_size());
    for (const auto& [g, xg] : a.terms()) terms.emplace_back(words::inverse(g), std::conj(xg));
    return GroupPolynomial::from_terms(a.rank(), std::move(terms));
}

/// Canonical trace: the coefficient at the identity.
inline cplx trace(const GroupPolynomial& a) {
    return a.coefficient(Word::identity(a.rank()));
}

/// trace(a * b) without forming the product: sum_g a_g b_{g^{-1}}.
inline cplx pairing_trace(const GroupPolynomial& a, const GroupPolynomial& b) {
    check_same_rank(a, b, "pairing_trace");
    cplx acc{};
    const bool a_smaller = a.support_size() <= b.support_size();
    const GroupPolynomial& u = a_smaller ? a : b;
    const GroupPolynomial& v = a_smaller ? b : a;
    for (const auto& [g, ug] : u.terms()) acc += ug * v.coefficient(words::inverse(g));
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

/**
 * Trace norm with even exponent p: ( trace((x* x)^{p/2}) )^{1/p}.
 *
 * The highest power is never formed: with y = x* x and m = p/2, the final trace
 * is the pairing trace(y^a * y^{m-a}) with a = floor(m/2), so the largest
 * convolution computed is y^{ceil(m/2)}.
 */
inline double norm_even(const GroupPolynomial& x, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("norm_even: exponent must be even and >= 2");
    if (x.is_zero()) return 0.0;
    const int m = p / 2;
    double tr;
    if (m == 1) {
        tr = detail::real_trace_checked(pairing_trace(adjoint(x), x), "norm_even");
    } else {
        const GroupPolynomial y = convolve(adjoint(x), x);
        const int a = m / 2, b = m - a;
        GroupPolynomial ya = y;
        for (int k = 1; k < a; ++k) ya = convolve(ya, y);
        GroupPolynomial yb = ya;
        for (int k = a; k < b; ++k) yb = convolve(yb, y);
        tr = detail::real_trace_checked(pairing_trace(ya, yb), "norm_even");
    }
    if (tr < -1e-10) throw std::runtime_error("norm_even: negative moment");
    return std::pow(std::max(tr, 0.0), 1.0 / static_cast<double>(p));
}

/// A function of word length only, applied coefficient-wise.
struct RadialFunction {
    std::function<cplx(std::size_t)> eval;

    static RadialFunction from_function(std::function<cplx(std::size_t)> f) {
        if (!f) throw std::invalid_argument("RadialFunction: empty function");
        return RadialFunction{std::move(f)};
    }

    /// Lookup table variant; evaluation at a missing length throws.
    static RadialFunction from_table(std::map<std::size_t, cplx> table) {
        return RadialFunction{[t = std::move(table)](std::size_t k) {
            auto it = t.find(k);
            if (it == t.end()) throw std::out_of_range("RadialFunction: length not in table");
            return it->second;
        }};
    }
};

inline GroupPolynomial apply_radial(const GroupPolynomial& x, const RadialFunction& m) {
    std::vector<GroupPolynomial::Term> terms = x.terms();
    for (auto& t : terms) t.second *= m.eval(t.first.length());
    return GroupPolynomial::from_terms(x.rank(), std::move(terms));
}

/// Heat flow at time t: coefficient at word length k scales by e^{-t k}.
inline GroupPolynomial heat(const GroupPolynomial& x, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat: time must be >= 0");
    return apply_radial(x, RadialFunction::from_function([t](std::size_t k) {
        return cplx(std::exp(-t * static_cast<double>(k)), 0.0);
    }));
}

/// Number-operator generator: coefficient at word length k scales by k.
inline GroupPolynomial generator(const GroupPolynomial& x) {
    return apply_radial(x, RadialFunction::from_function(
        [](std::size_t k) { return cplx(static_cast<double>(k), 0.0); }));
}

/// Inverse heat flow; finite support keeps the growth harmless.
inline GroupPolynomial inverse_heat(const GroupPolynomial& x, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("inverse_heat: time must be >= 0");
    return apply_radial(x, RadialFunction::from_function([t](std::size_t k) {
        return cplx(std::exp(t * static_cast<double>(k)), 0.0);
    }));
}

/// Keeps words of length >= d.
inline GroupPolynomial project_tail(const GroupPolynomial& x, std::size_t d) {
    return apply_radial(x, RadialFunction::from_function(
        [d](std::size_t k) { return cplx(k >= d ? 1.0 : 0.0, 0.0); }));
}

/// Keeps words of length <= d.
inline GroupPolynomial project_low(const GroupPolynomial& x, std::size_t d) {
    return apply_radial(x, RadialFunction::from_function(
        [d](std::size_t k) { return cplx(k <= d ? 1.0 : 0.0, 0.0); }));
}

/**
 * One-parameter rotation: the coefficient at g picks up z^{s(g)} where s(g) is
 * the signed letter count. z must be unimodular within 1e-12. This is a trace
 * preserving *-automorphism, which the tests lean on.
 */
inline GroupPolynomial rotate(const GroupPolynomial& x, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw std::invalid_argument("rotate: z must be unimodular");
    const double theta = std::arg(z);
    std::vector<GroupPolynomial::Term> terms = x.terms();
    for (auto& t : terms) {
        const int s = words::rotation_exponent(t.first);
        t.second *= std::polar(1.0, theta * static_cast<double>(s));
    }
    return GroupPolynomial::from_terms(x.rank(), std::move(terms));
}

/**
 * Lower estimate of the operator norm: the largest singular value of x acting
 * by left convolution on the span of the ball of radius R, computed by power
 * iteration on the (column-space) Gram matrix. Monotone nondecreasing in R.
 *
 * The image ball B(R + max support length) must stay within the enumeration
 * cap even though rows are never materialized; that bound certifies the Gram
 * entries are complete.
 */
inline double op_norm_estimate(const GroupPolynomial& x, int radius, int iters = 150,
                               std::uint64_t ball_cap = words::kDefaultBallCap) {
    if (radius < 0) throw std::invalid_argument("op_norm_estimate: radius must be >= 0");
    if (x.is_zero()) return 0.0;
    const int reach = radius + static_cast<int>(x.max_word_length());
    if (words::ball_size(x.rank(), reach) > ball_cap)
        throw std::invalid_argument("op_norm_estimate: image ball exceeds cap");

    const std::vector<Word> ball = words::enumerate_ball(x.rank(), radius, ball_cap);
    const std::size_t n = ball.size();

    // Column h of the action is x * delta_h, stored sorted for merge dot products.
    std::vector<std::vector<std::pair<Word, cplx>>> columns(n);
    for (std::size_t c = 0; c < n; ++c) {
        auto& col = columns[c];
        col.reserve(x.support_size());
        for (const auto& [g, xg] : x.terms()) col.emplace_back(words::multiply(g, ball[c]), xg);
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) {
            return words::canonical_compare(a.first, b.first) < 0;
        });
    }

    DenseMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cplx acc{};
            const auto& u = columns[i];
            const auto& v = columns[j];
            std::size_t a = 0, b = 0;
            while (a < u.size() && b < v.size()) {
                const int c = words::canonical_compare(u[a].first, v[b].first);
                if (c < 0) ++a;
                else if (c > 0) ++b;
                else { acc += std::conj(u[a].second) * v[b].second; ++a; ++b; }
            }
            gram.at(i, j) = acc;
            gram.at(j, i) = std::conj(acc);
        }
    }

    const double lam = numerics::power_norm(gram, iters);
    return std::sqrt(std::max(lam, 0.0));
}

/// Gram matrix of e^{-t d(g,h)} on the ball of radius R, with its minimum eigenvalue.
inline std::pair<DenseMatrix, double> haagerup_gram(int rank, double t, int radius,
                                                    std::uint64_t ball_cap = words::kDefaultBallCap) {
    if (!(t > 0.0)) throw std::invalid_argument("haagerup_gram: t must be > 0");
    const std::vector<Word> ball = words::enumerate_ball(rank, radius, ball_cap);
    const std::size_t n = ball.size();
    if (n > numerics::kDefaultDimCap) throw std::invalid_argument("haagerup_gram: dimension cap exceeded");
    DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const std::size_t dist = words::multiply(words::inverse(ball[i]), ball[j]).length();
            const double v = std::exp(-t * static_cast<double>(dist));
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    }
    const double min_eig = numerics::min_eigenvalue(g);
    return {std::move(g), min_eig};
}

}  // namespace ncverify::freealg
