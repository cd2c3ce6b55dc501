#pragma once

/**
 * @file qfock.hpp
 * @brief Truncated q-deformed Fock space over a doubled real Hilbert space,
 * q-Gaussian field operators, and exact vacuum-state moments.
 *
 * Basis vectors are tensor words over letters 1..dim where dim = 2 * dim_h:
 * letter j <= dim_h is the real part of e_j, letter j + dim_h the imaginary
 * part. Degrees above the cutoff K are projected away by creation.
 *
 * Two evaluation routes coexist:
 *  - dense operators on the full truncated basis (small sizes only), used for
 *    structural identities: commutation relations, Gram adjoints, rotations;
 *  - sparse application of field polynomials to the vacuum, used for moments.
 *    The vacuum trace is the vacuum coordinate of (p~ p)^m applied to the
 *    vacuum, so a cutoff K >= (exponent * max degree) / 2 already gives the
 *    un-truncated value: any path from the vacuum back to itself through M
 *    elementary letters never climbs above degree M / 2.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncverify/numerics.hpp"

namespace ncverify::qfock {

using numerics::DenseMatrix;

using FockWord = std::vector<std::uint8_t>;

inline constexpr int kMaxPermutationDegree = 8;

inline void check_q(double q, const char* where) {
    if (!(q > -1.0 && q < 1.0)) throw std::invalid_argument(std::string(where) + ": q must lie in (-1, 1)");
}

/// Pure index arithmetic over the truncated tensor basis; nothing is stored.
class FockBasis {
  public:
    static FockBasis make(int dim_h, int cutoff) {
        if (dim_h < 1 || dim_h > 127) throw std::invalid_argument("FockBasis: dim_h must be in 1..127");
        if (cutoff < 0 || cutoff > 32) throw std::invalid_argument("FockBasis: cutoff must be in 0..32");
        FockBasis b;
        b.dim_h_ = dim_h;
        b.dim_ = 2 * dim_h;
        b.cutoff_ = cutoff;
        b.offsets_.assign(static_cast<std::size_t>(cutoff) + 2, 0);
        std::uint64_t block = 1, total = 0;
        constexpr std::uint64_t kSat = UINT64_MAX / 4;
        for (int k = 0; k <= cutoff; ++k) {
            b.offsets_[static_cast<std::size_t>(k)] = total;
            total = std::min(kSat, total + block);
            block = (block > kSat / static_cast<std::uint64_t>(b.dim_)) ? kSat
                                                                        : block * static_cast<std::uint64_t>(b.dim_);
        }
        b.offsets_[static_cast<std::size_t>(cutoff) + 1] = total;
        return b;
    }

    int dim_h() const { return dim_h_; }
    int dim() const { return dim_; }
    int cutoff() const { return cutoff_; }
    std::uint64_t size() const { return offsets_.back(); }

    std::uint64_t block_offset(int degree) const { return offsets_[static_cast<std::size_t>(degree)]; }
    std::uint64_t block_size(int degree) const {
        return offsets_[static_cast<std::size_t>(degree) + 1] - offsets_[static_cast<std::size_t>(degree)];
    }

    std::uint64_t index_of(const FockWord& w) const {
        if (w.size() > static_cast<std::size_t>(cutoff_)) throw std::out_of_range("FockBasis: word above cutoff");
        std::uint64_t o = 0;
        for (std::uint8_t l : w) {
            if (l < 1 || l > dim_) throw std::out_of_range("FockBasis: letter out of range");
            o = o * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(l - 1);
        }
        return block_offset(static_cast<int>(w.size())) + o;
    }

    FockWord word_at(std::uint64_t index) const {
        if (index >= size()) throw std::out_of_range("FockBasis: index out of range");
        int k = 0;
        while (offsets_[static_cast<std::size_t>(k) + 1] <= index) ++k;
        std::uint64_t o = index - block_offset(k);
        FockWord w(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(o % static_cast<std::uint64_t>(dim_) + 1);
            o /= static_cast<std::uint64_t>(dim_);
        }
        return w;
    }

  private:
    int dim_h_ = 0;
    int dim_ = 0;
    int cutoff_ = 0;
    std::vector<std::uint64_t> offsets_;
};

inline void check_dense_scale(const FockBasis& b, const char* where) {
    if (b.size() > numerics::kDefaultDimCap)
        throw std::invalid_argument(std::string(where) + ": truncated basis exceeds the dense cap");
}

/// The q-inner-product Gram matrix, block diagonal across degrees.
struct QGram {
    double q = 0.0;
    int dim_h = 0;
    int cutoff = 0;
    std::vector<DenseMatrix> blocks;  // blocks[k] over the degree-k tensor words
};

/**
 * Gram entries come from the inversion-number expansion
 *   <u, v>_q = sum_{sigma} q^{inv(sigma)} prod_l delta(u_l, v_{sigma(l)}),
 * realized by scattering each word through every permutation of its slots.
 * The permutation enumeration limits the degree to 8.
 */
inline QGram gram(const FockBasis& basis, double q) {
    check_q(q, "gram");
    check_dense_scale(basis, "gram");
    if (basis.cutoff() > kMaxPermutationDegree)
        throw std::invalid_argument("gram: cutoff exceeds the permutation enumeration bound");

    QGram g;
    g.q = q;
    g.dim_h = basis.dim_h();
    g.cutoff = basis.cutoff();
    g.blocks.reserve(static_cast<std::size_t>(basis.cutoff()) + 1);

    for (int k = 0; k <= basis.cutoff(); ++k) {
        const std::size_t bs = static_cast<std::size_t>(basis.block_size(k));
        DenseMatrix block(bs, bs);
        if (k == 0) {
            block.at(0, 0) = 1.0;
            g.blocks.push_back(std::move(block));
            continue;
        }

        // Permutations of k slots with inversion counts, enumerated once.
        std::vector<int> perm(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::vector<std::pair<std::vector<int>, int>> perms;
        do {
            int inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
            perms.emplace_back(perm, inv);
        } while (std::next_permutation(perm.begin(), perm.end()));

        const int max_inv = k * (k - 1) / 2;
        std::vector<double> qpow(static_cast<std::size_t>(max_inv) + 1, 1.0);
        for (int i = 1; i <= max_inv; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i) - 1] * q;

        FockWord u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
        const std::uint64_t off = basis.block_offset(k);
        for (std::uint64_t iu = 0; iu < bs; ++iu) {
            u = basis.word_at(off + iu);
            for (const auto& [sigma, inv] : perms) {
                for (int l = 0; l < k; ++l) v[static_cast<std::size_t>(sigma[static_cast<std::size_t>(l)])] = u[static_cast<std::size_t>(l)];
                const std::uint64_t iv = basis.index_of(v) - off;
                block.at(iu, iv) += qpow[static_cast<std::size_t>(inv)];
            }
        }
        g.blocks.push_back(std::move(block));
    }
    return g;
}

/// Minimum eigenvalue across all degree blocks; positive for q in (-1, 1).
inline double gram_min_eig(const QGram& g) {
    double m = std::numeric_limits<double>::infinity();
    for (const DenseMatrix& b : g.blocks) m = std::min(m, numerics::min_eigenvalue(b));
    return m;
}

/// Dense operator on the truncated basis; q rides along for adjoint routing.
struct FockOperator {
    DenseMatrix mat;
    double q = 0.0;
    int dim_h = 0;
    int cutoff = 0;
};

inline void check_compatible(const FockOperator& a, const FockOperator& b, const char* where) {
    if (a.q != b.q || a.dim_h != b.dim_h || a.cutoff != b.cutoff)
        throw std::invalid_argument(std::string(where) + ": operator context mismatch");
}

inline FockOperator op_multiply(const FockOperator& a, const FockOperator& b) {
    check_compatible(a, b, "op_multiply");
    return {numerics::multiply(a.mat, b.mat), a.q, a.dim_h, a.cutoff};
}

inline FockOperator op_add(const FockOperator& a, const FockOperator& b) {
    check_compatible(a, b, "op_add");
    return {numerics::add(a.mat, b.mat), a.q, a.dim_h, a.cutoff};
}

inline FockOperator op_subtract(const FockOperator& a, const FockOperator& b) {
    check_compatible(a, b, "op_subtract");
    return {numerics::subtract(a.mat, b.mat), a.q, a.dim_h, a.cutoff};
}

inline FockOperator op_scale(const FockOperator& a, cplx c) {
    return {numerics::scale(a.mat, c), a.q, a.dim_h, a.cutoff};
}

inline FockOperator op_identity(const FockBasis& basis, double q) {
    check_dense_scale(basis, "op_identity");
    return {DenseMatrix::identity(static_cast<std::size_t>(basis.size())), q, basis.dim_h(), basis.cutoff()};
}

/// Creation by a basis letter: prepend, with the top degree projected to zero.
inline FockOperator creation(const FockBasis& basis, double q, int letter) {
    check_q(q, "creation");
    check_dense_scale(basis, "creation");
    if (letter < 1 || letter > basis.dim()) throw std::invalid_argument("creation: letter out of range");
    const std::size_t n = static_cast<std::size_t>(basis.size());
    FockOperator op{DenseMatrix(n, n), q, basis.dim_h(), basis.cutoff()};
    for (std::uint64_t col = 0; col < n; ++col) {
        FockWord w = basis.word_at(col);
        if (w.size() == static_cast<std::size_t>(basis.cutoff())) continue;
        FockWord nw;
        nw.reserve(w.size() + 1);
        nw.push_back(static_cast<std::uint8_t>(letter));
        nw.insert(nw.end(), w.begin(), w.end());
        op.mat.at(static_cast<std::size_t>(basis.index_of(nw)), static_cast<std::size_t>(col)) = 1.0;
    }
    return op;
}

/// Annihilation by a basis letter: q-weighted removal across matching slots.
inline FockOperator annihilation(const FockBasis& basis, double q, int letter) {
    check_q(q, "annihilation");
    check_dense_scale(basis, "annihilation");
    if (letter < 1 || letter > basis.dim()) throw std::invalid_argument("annihilation: letter out of range");
    const std::size_t n = static_cast<std::size_t>(basis.size());
    FockOperator op{DenseMatrix(n, n), q, basis.dim_h(), basis.cutoff()};
    for (std::uint64_t col = 0; col < n; ++col) {
        const FockWord w = basis.word_at(col);
        double weight = 1.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] == static_cast<std::uint8_t>(letter)) {
                FockWord nw = w;
                nw.erase(nw.begin() + static_cast<std::ptrdiff_t>(j));
                op.mat.at(static_cast<std::size_t>(basis.index_of(nw)), static_cast<std::size_t>(col)) += weight;
            }
            weight *= q;
        }
    }
    return op;
}

/// Real field operator X(letter) = creation + annihilation.
inline FockOperator x_field(const FockBasis& basis, double q, int letter) {
    return op_add(creation(basis, q, letter), annihilation(basis, q, letter));
}

/// Holomorphic field Z(e_j) = (X(real part) + i X(imaginary part)) / sqrt(2).
inline FockOperator z_field(const FockBasis& basis, double q, int j) {
    if (j < 1 || j > basis.dim_h()) throw std::invalid_argument("z_field: index out of range");
    const FockOperator xf = x_field(basis, q, j);
    const FockOperator xg = x_field(basis, q, j + basis.dim_h());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return op_add(op_scale(xf, inv_sqrt2), op_scale(xg, cplx(0.0, inv_sqrt2)));
}

/// Adjoint with respect to the q-inner product: G^{-1} A^H G.
inline FockOperator gram_adjoint(const FockOperator& op, const QGram& g) {
    if (op.q != g.q || op.dim_h != g.dim_h || op.cutoff != g.cutoff)
        throw std::invalid_argument("gram_adjoint: operator and Gram context mismatch");
    const std::size_t n = op.mat.rows;

    DenseMatrix gfull(n, n), ginv(n, n);
    std::size_t off = 0;
    for (const DenseMatrix& block : g.blocks) {
        const std::size_t bs = block.rows;
        const numerics::EigResult eig = numerics::hermitian_eigs_with_vectors(block);
        for (double lam : eig.values)
            if (!(lam > 0.0)) throw std::runtime_error("gram_adjoint: Gram block not positive definite");
        for (std::size_t i = 0; i < bs; ++i)
            for (std::size_t j = 0; j < bs; ++j) {
                gfull.at(off + i, off + j) = block.at(i, j);
                cplx acc{};
                for (std::size_t k = 0; k < bs; ++k)
                    acc += eig.vectors.at(i, k) * std::conj(eig.vectors.at(j, k)) / eig.values[k];
                ginv.at(off + i, off + j) = acc;
            }
        off += bs;
    }
    DenseMatrix out = numerics::multiply(ginv, numerics::multiply(numerics::adjoint(op.mat), gfull));
    return {std::move(out), op.q, op.dim_h, op.cutoff};
}

/// Vacuum state functional: the vacuum coordinate of A applied to the vacuum.
inline cplx vacuum_trace(const FockOperator& op) {
    if (op.mat.rows == 0) throw std::invalid_argument("vacuum_trace: empty operator");
    return op.mat.at(0, 0);
}

// ---------------------------------------------------------------------------
// Holomorphic field polynomials
// ---------------------------------------------------------------------------

struct HoloFactor {
    int index = 0;  // 1..dim_h
    int power = 0;  // >= 1 in normal form
    bool operator==(const HoloFactor&) const = default;
};

/// Product of holomorphic fields in normal form: adjacent indices distinct.
class HoloMonomial {
  public:
    HoloMonomial() = default;

    static HoloMonomial make(const std::vector<HoloFactor>& factors) {
        HoloMonomial m;
        for (const HoloFactor& f : factors) {
            if (f.index < 1) throw std::invalid_argument("HoloMonomial: index must be >= 1");
            if (f.power < 0) throw std::invalid_argument("HoloMonomial: power must be >= 0");
            if (f.power == 0) continue;
            if (!m.factors_.empty() && m.factors_.back().index == f.index)
                m.factors_.back().power += f.power;
            else
                m.factors_.push_back(f);
        }
        return m;
    }

    const std::vector<HoloFactor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (const HoloFactor& f : factors_) d += f.power;
        return d;
    }

    int max_index() const {
        int m = 0;
        for (const HoloFactor& f : factors_) m = std::max(m, f.index);
        return m;
    }

    bool operator==(const HoloMonomial&) const = default;
    bool operator<(const HoloMonomial& o) const {
        const std::size_t n = std::min(factors_.size(), o.factors_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (factors_[i].index != o.factors_[i].index) return factors_[i].index < o.factors_[i].index;
            if (factors_[i].power != o.factors_[i].power) return factors_[i].power < o.factors_[i].power;
        }
        return factors_.size() < o.factors_.size();
    }

  private:
    std::vector<HoloFactor> factors_;
};

/// Finite linear combination of holomorphic monomials over a dim_h-dimensional space.
class HoloPolynomial {
  public:
    explicit HoloPolynomial(int dim_h) : dim_h_(dim_h) {
        if (dim_h < 1) throw std::invalid_argument("HoloPolynomial: dim_h must be >= 1");
    }

    static HoloPolynomial from_terms(int dim_h, const std::vector<std::pair<HoloMonomial, cplx>>& terms) {
        HoloPolynomial p(dim_h);
        for (const auto& [m, c] : terms) p.add_term(m, c);
        return p;
    }

    void add_term(const HoloMonomial& m, cplx c) {
        if (m.max_index() > dim_h_) throw std::invalid_argument("HoloPolynomial: factor index exceeds dim_h");
        auto [it, inserted] = coeffs_.try_emplace(m, c);
        if (!inserted) it->second += c;
        if (std::abs(it->second) <= 1e-15) coeffs_.erase(it);
    }

    int dim_h() const { return dim_h_; }
    const std::map<HoloMonomial, cplx>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    int max_degree() const {
        int d = 0;
        for (const auto& [m, c] : coeffs_) d = std::max(d, m.degree());
        return d;
    }

    int min_degree() const {
        if (coeffs_.empty()) return 0;
        int d = std::numeric_limits<int>::max();
        for (const auto& [m, c] : coeffs_) d = std::min(d, m.degree());
        return d;
    }

  private:
    int dim_h_;
    std::map<HoloMonomial, cplx> coeffs_;
};

namespace detail {

inline HoloPolynomial scale_by_degree(const HoloPolynomial& p, const std::function<cplx(int)>& f) {
    HoloPolynomial out(p.dim_h());
    for (const auto& [m, c] : p.terms()) out.add_term(m, c * f(m.degree()));
    return out;
}

}  // namespace detail

/// Heat flow: degree-k coefficients scale by e^{-t k}.
inline HoloPolynomial heat_q(const HoloPolynomial& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_q: time must be >= 0");
    return detail::scale_by_degree(p, [t](int k) { return cplx(std::exp(-t * k), 0.0); });
}

/// Number-operator generator: degree-k coefficients scale by k.
inline HoloPolynomial generator_q(const HoloPolynomial& p) {
    return detail::scale_by_degree(p, [](int k) { return cplx(static_cast<double>(k), 0.0); });
}

/// Rotation: degree-k coefficients pick up z^k (z unimodular within 1e-12).
inline HoloPolynomial rotate_q(const HoloPolynomial& p, cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw std::invalid_argument("rotate_q: z must be unimodular");
    const double theta = std::arg(z);
    return detail::scale_by_degree(p, [theta](int k) { return std::polar(1.0, theta * k); });
}

/// Dense matrix of a field polynomial (products taken factor by factor).
inline FockOperator materialize(const HoloPolynomial& p, const FockBasis& basis, double q) {
    check_q(q, "materialize");
    check_dense_scale(basis, "materialize");
    if (p.dim_h() != basis.dim_h()) throw std::invalid_argument("materialize: dim_h mismatch");
    const std::size_t n = static_cast<std::size_t>(basis.size());

    std::vector<FockOperator> z_cache;
    z_cache.reserve(static_cast<std::size_t>(basis.dim_h()));
    for (int j = 1; j <= basis.dim_h(); ++j) z_cache.push_back(z_field(basis, q, j));

    FockOperator acc{DenseMatrix(n, n), q, basis.dim_h(), basis.cutoff()};
    for (const auto& [m, c] : p.terms()) {
        FockOperator term = op_identity(basis, q);
        for (const HoloFactor& f : m.factors())
            for (int r = 0; r < f.power; ++r)
                term = op_multiply(term, z_cache[static_cast<std::size_t>(f.index) - 1]);
        acc = op_add(acc, op_scale(term, c));
    }
    return acc;
}

/**
 * Second quantization of the block rotation that sends the real part of e_j to
 * cos(theta) f_j - sin(theta) g_j and the imaginary part to
 * sin(theta) f_j + cos(theta) g_j, acting as the k-fold tensor power on each
 * degree. Conjugation by it multiplies each holomorphic field by e^{i theta},
 * exactly, cutoff or not.
 */
inline FockOperator second_quantize_rotation(const FockBasis& basis, double q, double theta) {
    check_q(q, "second_quantize_rotation");
    check_dense_scale(basis, "second_quantize_rotation");
    const std::size_t n = static_cast<std::size_t>(basis.size());
    const int dim_h = basis.dim_h();
    const double c = std::cos(theta), s = std::sin(theta);

    // Images of a single letter under the base rotation: (coefficient, letter).
    auto images = [&](std::uint8_t l) -> std::array<std::pair<double, std::uint8_t>, 2> {
        if (l <= static_cast<std::uint8_t>(dim_h))
            return {{{c, l}, {-s, static_cast<std::uint8_t>(l + dim_h)}}};
        return {{{s, static_cast<std::uint8_t>(l - dim_h)}, {c, l}}};
    };

    FockOperator op{DenseMatrix(n, n), q, dim_h, basis.cutoff()};
    FockWord scratch;
    for (std::uint64_t col = 0; col < n; ++col) {
        const FockWord w = basis.word_at(col);
        scratch.assign(w.size(), 0);
        // Expand the tensor product over the 2^k choices of image letters.
        auto expand = [&](auto&& self, std::size_t pos, double coeff) -> void {
            if (coeff == 0.0) return;
            if (pos == w.size()) {
                op.mat.at(static_cast<std::size_t>(basis.index_of(scratch)), static_cast<std::size_t>(col)) += coeff;
                return;
            }
            for (const auto& [wt, letter] : images(w[pos])) {
                scratch[pos] = letter;
                self(self, pos + 1, coeff * wt);
            }
        };
        expand(expand, 0, 1.0);
    }
    return op;
}

// ---------------------------------------------------------------------------
// Sparse vacuum application
// ---------------------------------------------------------------------------

/// Sparse vector over tensor words; the map order keeps accumulation deterministic.
using FockState = std::map<FockWord, cplx>;

inline FockState vacuum() {
    FockState s;
    s.emplace(FockWord{}, cplx(1.0, 0.0));
    return s;
}

namespace detail {

inline void accumulate(FockState& dst, const FockWord& w, cplx c) {
    auto [it, inserted] = dst.try_emplace(w, c);
    if (!inserted) it->second += c;
}

/// X(letter) = creation + annihilation applied to every term, scaled by weight.
inline void apply_x_into(FockState& dst, const FockState& src, int letter, double q, int cutoff, cplx weight) {
    const std::uint8_t ul = static_cast<std::uint8_t>(letter);
    for (const auto& [w, c] : src) {
        const cplx wc = weight * c;
        if (w.size() < static_cast<std::size_t>(cutoff)) {
            FockWord nw;
            nw.reserve(w.size() + 1);
            nw.push_back(ul);
            nw.insert(nw.end(), w.begin(), w.end());
            accumulate(dst, nw, wc);
        }
        double qw = 1.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] == ul) {
                FockWord nw = w;
                nw.erase(nw.begin() + static_cast<std::ptrdiff_t>(j));
                accumulate(dst, nw, wc * qw);
            }
            qw *= q;
        }
    }
}

}  // namespace detail

/// Z(e_j) or its adjoint applied to a sparse state.
inline FockState apply_z(const FockState& src, int j, int dim_h, double q, int cutoff, bool dagger) {
    if (j < 1 || j > dim_h) throw std::invalid_argument("apply_z: index out of range");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    FockState out;
    detail::apply_x_into(out, src, j, q, cutoff, cplx(inv_sqrt2, 0.0));
    detail::apply_x_into(out, src, j + dim_h, q, cutoff, cplx(0.0, dagger ? -inv_sqrt2 : inv_sqrt2));
    return out;
}

/// Applies a monomial (or its adjoint) rightmost factor first.
inline FockState apply_monomial(const FockState& src, const HoloMonomial& m, int dim_h, double q, int cutoff,
                                bool dagger) {
    FockState state = src;
    const auto& fs = m.factors();
    if (!dagger) {
        for (auto it = fs.rbegin(); it != fs.rend(); ++it)
            for (int r = 0; r < it->power; ++r) state = apply_z(state, it->index, dim_h, q, cutoff, false);
    } else {
        for (const HoloFactor& f : fs)
            for (int r = 0; r < f.power; ++r) state = apply_z(state, f.index, dim_h, q, cutoff, true);
    }
    return state;
}

/// Applies a field polynomial (or its adjoint) to a sparse state.
inline FockState apply_polynomial(const HoloPolynomial& p, const FockState& src, double q, int cutoff, bool dagger) {
    FockState out;
    for (const auto& [m, c] : p.terms()) {
        const FockState applied = apply_monomial(src, m, p.dim_h(), q, cutoff, dagger);
        const cplx coeff = dagger ? std::conj(c) : c;
        for (const auto& [w, v] : applied) detail::accumulate(out, w, coeff * v);
    }
    return out;
}

namespace detail {

inline int moment_cutoff_needed(const HoloPolynomial& p, int half_steps) {
    // A vacuum-to-vacuum path through 2m * maxdeg elementary letters peaks at
    // half its letter count, so this cutoff already matches the full space.
    return half_steps * p.max_degree();
}

}  // namespace detail

/// Vacuum moment tau((p~ p)^k) by sparse application; exact despite the cutoff
/// as long as cutoff >= k * max degree.
inline cplx vacuum_moment(const HoloPolynomial& p, int k, const FockBasis& basis, double q) {
    check_q(q, "vacuum_moment");
    if (k < 1) throw std::invalid_argument("vacuum_moment: k must be >= 1");
    if (p.dim_h() != basis.dim_h()) throw std::invalid_argument("vacuum_moment: dim_h mismatch");
    if (basis.cutoff() < detail::moment_cutoff_needed(p, k))
        throw std::invalid_argument("vacuum_moment: cutoff too small for an exact moment");
    FockState v = vacuum();
    for (int i = 0; i < k; ++i) {
        v = apply_polynomial(p, v, q, basis.cutoff(), false);
        v = apply_polynomial(p, v, q, basis.cutoff(), true);
    }
    auto it = v.find(FockWord{});
    return it == v.end() ? cplx{} : it->second;
}

/// Even-exponent vacuum norm ( tau((p~ p)^{pexp/2}) )^{1/pexp} by sparse application.
inline double norm_even_q(const HoloPolynomial& p, int pexp, const FockBasis& basis, double q) {
    if (pexp < 2 || pexp % 2 != 0) throw std::invalid_argument("norm_even_q: exponent must be even and >= 2");
    if (p.is_zero()) return 0.0;
    const cplx t = vacuum_moment(p, pexp / 2, basis, q);
    const double re = t.real(), im = t.imag();
    if (std::abs(im) > 1e-10 * std::max(std::abs(re), 1e-100))
        throw std::runtime_error("norm_even_q: moment has non-negligible imaginary part");
    if (re < -1e-10) throw std::runtime_error("norm_even_q: negative moment");
    return std::pow(std::max(re, 0.0), 1.0 / static_cast<double>(pexp));
}

/// Same norm through the dense route: materialize, Gram adjoint, matrix powers.
inline double norm_even_dense(const HoloPolynomial& p, int pexp, const FockBasis& basis, double q) {
    if (pexp < 2 || pexp % 2 != 0) throw std::invalid_argument("norm_even_dense: exponent must be even and >= 2");
    check_dense_scale(basis, "norm_even_dense");
    const FockOperator a = materialize(p, basis, q);
    const QGram g = gram(basis, q);
    const FockOperator adag = gram_adjoint(a, g);
    const FockOperator y = op_multiply(adag, a);
    FockOperator pw = y;
    for (int i = 1; i < pexp / 2; ++i) pw = op_multiply(pw, y);
    const cplx t = vacuum_trace(pw);
    const double re = t.real(), im = t.imag();
    if (std::abs(im) > 1e-10 * std::max(std::abs(re), 1e-100))
        throw std::runtime_error("norm_even_dense: moment has non-negligible imaginary part");
    if (re < -1e-10) throw std::runtime_error("norm_even_dense: negative moment");
    return std::pow(std::max(re, 0.0), 1.0 / static_cast<double>(pexp));
}

}  // namespace ncverify::qfock
