#pragma once

/**
 * @file harness.hpp
 * @brief Batch verification harness: named inequality checks over the three
 * algebra modules, JSON scenario configs, and CSV/JSON reports.
 *
 * Every row is normalized so that pass means lhs <= rhs + tolerance. Rows at
 * p = inf rest on one-sided norm estimates and are reported as estimates,
 * never as hard failures. Given a seed, rows are reproducible bit for bit
 * except for the wall-time column.
 */

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ncverify/circle_kernels.hpp"
#include "ncverify/free_algebra.hpp"
#include "ncverify/hankel.hpp"
#include "ncverify/numerics.hpp"
#include "ncverify/qfock.hpp"
#include "ncverify/random_gen.hpp"
#include "ncverify/torus.hpp"
#include "ncverify/words.hpp"

namespace ncverify::harness {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario and report types
// ---------------------------------------------------------------------------

struct Scenario {
    std::string id;
    std::string algebra;  // free | qgauss | qtorus
    std::string check;
    int d = 1;
    std::vector<double> t_grid;
    std::vector<int> p_list;  // even entries only
    bool p_inf = false;       // "inf" was listed in p_list
    double tolerance = 1e-9;
    std::size_t quad_points = 4096;
    std::optional<std::uint64_t> seed;
    int instances = 5;
    json detail;  // algebra parameters and polynomial sources
};

struct ReportRow {
    std::string scenario;
    std::string check;
    std::string algebra;
    std::string params;  // semicolon separated key=value pairs, comma free
    std::string p;       // "2", "4", ..., "inf", or "-"
    double t = std::numeric_limits<double>::quiet_NaN();
    int d = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double slack = 0.0;
    std::string status;  // pass | fail | estpass | estfail
    double ms = 0.0;
};

inline constexpr const char* kCsvHeader = "scenario,check,algebra,params,p,t,d,lhs,rhs,ratio,slack,status,ms";

inline std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

/// ratio defaults to lhs/rhs; decay checks override it with the quantity the
/// check is really about (observed contraction, or observed over expected).
inline ReportRow make_row(const Scenario& s, std::string params, std::string p, double t, int d,
                          double lhs, double rhs, bool hard, double tol,
                          double ratio = std::numeric_limits<double>::quiet_NaN()) {
    ReportRow r;
    r.scenario = s.id;
    r.check = s.check;
    r.algebra = s.algebra;
    r.params = std::move(params);
    r.p = std::move(p);
    r.t = t;
    r.d = d;
    r.lhs = lhs;
    r.rhs = rhs;
    if (std::isnan(ratio))
        r.ratio = (rhs != 0.0) ? lhs / rhs
                               : (lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    else
        r.ratio = ratio;
    r.slack = rhs + tol - lhs;
    const bool ok = lhs <= rhs + tol;
    r.status = hard ? (ok ? "pass" : "fail") : (ok ? "estpass" : "estfail");
    return r;
}

inline double nan_t() { return std::numeric_limits<double>::quiet_NaN(); }

/// Composite Simpson integral of e^{-s d} over [0, 40/d] plus the exact tail.
inline double decay_integral_bound(int d) {
    const double dd = static_cast<double>(d);
    const double upper = 40.0 / dd;
    const std::size_t panels = 4096;
    const double h = upper / static_cast<double>(panels);
    auto f = [dd](double s) { return std::exp(-s * dd); };
    double acc = f(0.0) + f(upper);
    for (std::size_t i = 1; i < panels; ++i)
        acc += f(h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * h / 3.0 + std::exp(-40.0) / dd;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

inline Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("scenario: expected a JSON object");
    Scenario s;
    s.id = j.value("id", std::string{});
    if (s.id.empty()) throw std::invalid_argument("scenario: id is required");
    s.algebra = j.value("algebra", std::string{"free"});
    if (s.algebra != "free" && s.algebra != "qgauss" && s.algebra != "qtorus")
        throw std::invalid_argument("scenario " + s.id + ": unknown algebra '" + s.algebra + "'");
    s.check = j.value("check", std::string{});
    if (s.check.empty()) throw std::invalid_argument("scenario " + s.id + ": check is required");
    s.d = j.value("d", 1);
    if (j.contains("t_grid"))
        for (const auto& v : j.at("t_grid")) s.t_grid.push_back(v.get<double>());
    if (j.contains("p_list"))
        for (const auto& v : j.at("p_list")) {
            if (v.is_string()) {
                if (v.get<std::string>() != "inf")
                    throw std::invalid_argument("scenario " + s.id + ": p_list strings must be \"inf\"");
                s.p_inf = true;
            } else {
                const int p = v.get<int>();
                if (p < 2 || p % 2 != 0)
                    throw std::invalid_argument("scenario " + s.id + ": p_list entries must be even and >= 2");
                s.p_list.push_back(p);
            }
        }
    s.tolerance = j.value("tolerance", 1e-9);
    s.quad_points = j.value("quad_points", std::size_t{4096});
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    s.instances = j.value("instances", 5);
    if (s.instances < 1) throw std::invalid_argument("scenario " + s.id + ": instances must be >= 1");
    s.detail = j;
    return s;
}

inline std::vector<Scenario> parse_config(const json& j) {
    const json* arr = nullptr;
    if (j.is_array()) arr = &j;
    else if (j.is_object() && j.contains("scenarios")) arr = &j.at("scenarios");
    else throw std::invalid_argument("config: expected an array or an object with a scenarios array");
    std::vector<Scenario> out;
    for (const auto& e : *arr) out.push_back(scenario_from_json(e));
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial sources
// ---------------------------------------------------------------------------

inline freealg::GroupPolynomial parse_free_poly(const json& arr, int rank) {
    std::vector<freealg::GroupPolynomial::Term> terms;
    for (const auto& e : arr)
        terms.emplace_back(words::parse_word(e.at("word").get<std::string>(), rank),
                           cplx(e.value("re", 0.0), e.value("im", 0.0)));
    return freealg::GroupPolynomial::from_terms(rank, std::move(terms));
}

inline qfock::HoloPolynomial parse_holo_poly(const json& arr, int dim_h) {
    qfock::HoloPolynomial p(dim_h);
    for (const auto& e : arr) {
        const auto& idx = e.at("indices");
        const auto& pws = e.at("powers");
        if (idx.size() != pws.size())
            throw std::invalid_argument("monomial: indices and powers must have equal length");
        std::vector<qfock::HoloFactor> fs;
        for (std::size_t i = 0; i < idx.size(); ++i)
            fs.push_back({idx[i].get<int>(), pws[i].get<int>()});
        p.add_term(qfock::HoloMonomial::make(fs), cplx(e.value("re", 0.0), e.value("im", 0.0)));
    }
    return p;
}

inline torus::TorusPolynomial parse_torus_poly(const json& arr, int n, std::vector<double> theta) {
    std::vector<torus::TorusPolynomial::Term> terms;
    for (const auto& e : arr) {
        torus::MultiIndex alpha;
        for (const auto& v : e.at("alpha")) alpha.push_back(v.get<int>());
        terms.emplace_back(std::move(alpha), cplx(e.value("re", 0.0), e.value("im", 0.0)));
    }
    return torus::TorusPolynomial::make(n, std::move(theta), std::move(terms));
}

namespace detail {

inline std::uint64_t require_seed(const Scenario& s) {
    if (!s.seed) throw std::invalid_argument("scenario " + s.id + ": seed required for random polynomials");
    return *s.seed;
}

/// Tail populations live above degree d, low populations at or below it.
enum class Band { any, tail, low };

inline std::vector<freealg::GroupPolynomial> free_population(const Scenario& s, Band band, bool holomorphic) {
    const int rank = s.detail.value("rank", 2);
    if (s.detail.contains("polynomial")) return {parse_free_poly(s.detail.at("polynomial"), rank)};
    rnd::RandomSource rng(require_seed(s));
    rnd::FreePolySpec spec;
    spec.rank = rank;
    spec.term_count = s.detail.value("terms", 8);
    spec.holomorphic = s.detail.value("holomorphic", holomorphic);
    const int len_cap = s.detail.value("max_len", 6);
    if (band == Band::tail) {
        spec.min_len = s.d;
        spec.max_len = std::max(len_cap, s.d);
    } else if (band == Band::low) {
        spec.min_len = 0;
        spec.max_len = s.d;
    } else {
        spec.min_len = 0;
        spec.max_len = len_cap;
    }
    std::vector<freealg::GroupPolynomial> pop;
    pop.reserve(static_cast<std::size_t>(s.instances));
    for (int i = 0; i < s.instances; ++i) pop.push_back(rnd::random_group_polynomial(rng, spec));
    return pop;
}

inline std::vector<qfock::HoloPolynomial> qgauss_population(const Scenario& s, Band band) {
    const int dim_h = s.detail.value("dimH", 2);
    if (s.detail.contains("monomials")) return {parse_holo_poly(s.detail.at("monomials"), dim_h)};
    rnd::RandomSource rng(require_seed(s));
    rnd::HoloPolySpec spec;
    spec.dim_h = dim_h;
    spec.term_count = s.detail.value("terms", 6);
    const int deg_cap = s.detail.value("max_deg", 3);
    if (band == Band::tail) {
        spec.min_deg = s.d;
        spec.max_deg = std::max(deg_cap, s.d);
    } else if (band == Band::low) {
        spec.min_deg = 0;
        spec.max_deg = s.d;
    } else {
        spec.min_deg = 0;
        spec.max_deg = deg_cap;
    }
    std::vector<qfock::HoloPolynomial> pop;
    pop.reserve(static_cast<std::size_t>(s.instances));
    for (int i = 0; i < s.instances; ++i) pop.push_back(rnd::random_holo_polynomial(rng, spec));
    return pop;
}

inline std::vector<double> torus_theta(const Scenario& s, int n) {
    if (s.detail.contains("theta")) {
        std::vector<double> th;
        for (const auto& v : s.detail.at("theta")) th.push_back(v.get<double>());
        return th;
    }
    if (s.detail.contains("weyl") && n == 2) {
        const int a = s.detail.at("weyl").at("a").get<int>();
        const int b = s.detail.at("weyl").at("b").get<int>();
        const double t12 = static_cast<double>(a) / static_cast<double>(b);
        return {0.0, t12, -t12, 0.0};
    }
    if (n == 2) {
        const double t12 = s.detail.value("theta12", 0.3);
        return {0.0, t12, -t12, 0.0};
    }
    return std::vector<double>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

inline std::vector<torus::TorusPolynomial> torus_population(const Scenario& s, Band band, bool holomorphic) {
    const int n = s.detail.value("n", 2);
    std::vector<double> theta = torus_theta(s, n);
    if (s.detail.contains("monomials")) return {parse_torus_poly(s.detail.at("monomials"), n, std::move(theta))};
    rnd::RandomSource rng(require_seed(s));
    rnd::TorusPolySpec spec;
    spec.n = n;
    spec.theta = std::move(theta);
    spec.term_count = s.detail.value("terms", 8);
    spec.holomorphic = s.detail.value("holomorphic", holomorphic);
    const int len_cap = s.detail.value("max_len", 6);
    if (band == Band::tail) {
        spec.min_len = s.d;
        spec.max_len = std::max(len_cap, s.d);
    } else if (band == Band::low) {
        spec.min_len = 0;
        spec.max_len = s.d;
    } else {
        spec.min_len = 0;
        spec.max_len = len_cap;
    }
    std::vector<torus::TorusPolynomial> pop;
    pop.reserve(static_cast<std::size_t>(s.instances));
    for (int i = 0; i < s.instances; ++i) pop.push_back(rnd::random_torus_polynomial(rng, spec));
    return pop;
}

/// Vacuum norm with the cutoff the moment expansion needs for exactness.
inline double qgauss_norm(const Scenario& s, const qfock::HoloPolynomial& p, int pexp, double q) {
    const int needed = (pexp / 2) * std::max(p.max_degree(), 1);
    const int cutoff = std::max(s.detail.value("K", needed), needed);
    return qfock::norm_even_q(p, pexp, qfock::FockBasis::make(p.dim_h(), cutoff), q);
}

// ---------------------------------------------------------------------------
// Check implementations
// ---------------------------------------------------------------------------

/// Semigroup decay and its reverse on the two degree bands. kind selects the
/// row shape: 0 tail decay, 1 low-degree reverse decay.
inline void heat_band_rows(const Scenario& s, std::vector<ReportRow>& rows, int kind) {
    const Band band = (kind == 0) ? Band::tail : Band::low;
    const double dd = static_cast<double>(s.d);
    auto emit = [&](int inst, int p, double t, double n_heat, double n_plain, bool hard, const char* extra) {
        std::ostringstream os;
        os << "i=" << inst << extra;
        const double decay = std::exp(-t * dd);
        const double lhs = (kind == 0) ? n_heat : decay * n_plain;
        const double rhs = (kind == 0) ? decay * n_plain : n_heat;
        rows.push_back(make_row(s, os.str(), std::to_string(p), t, s.d, lhs, rhs, hard, s.tolerance,
                                n_plain != 0.0 ? n_heat / n_plain : 1.0));
    };

    if (s.algebra == "free") {
        const auto pop = free_population(s, band, true);
        const int radius = s.detail.value("radius", 3);
        for (std::size_t i = 0; i < pop.size(); ++i) {
            for (int p : s.p_list) {
                const double base = freealg::norm_even(pop[i], p);
                for (double t : s.t_grid)
                    emit(static_cast<int>(i), p, t, freealg::norm_even(freealg::heat(pop[i], t), p), base, true, "");
            }
            if (s.p_inf) {
                const double base = freealg::op_norm_estimate(pop[i], radius);
                for (double t : s.t_grid) {
                    const double nh = freealg::op_norm_estimate(freealg::heat(pop[i], t), radius);
                    std::ostringstream os;
                    os << "i=" << i << ";radius=" << radius;
                    const double decay = std::exp(-t * dd);
                    const double lhs = (kind == 0) ? nh : decay * base;
                    const double rhs = (kind == 0) ? decay * base : nh;
                    rows.push_back(make_row(s, os.str(), "inf", t, s.d, lhs, rhs, false, s.tolerance,
                                            base != 0.0 ? nh / base : 1.0));
                }
            }
        }
    } else if (s.algebra == "qgauss") {
        const double q = s.detail.value("q", 0.5);
        const auto pop = qgauss_population(s, band);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int p : s.p_list) {
                const double base = qgauss_norm(s, pop[i], p, q);
                for (double t : s.t_grid)
                    emit(static_cast<int>(i), p, t, qgauss_norm(s, qfock::heat_q(pop[i], t), p, q), base, true,
                         "");
            }
    } else {
        const auto pop = torus_population(s, band, true);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int p : s.p_list) {
                const double base = torus::norm_even(pop[i], p);
                for (double t : s.t_grid)
                    emit(static_cast<int>(i), p, t, torus::norm_even(torus::heat(pop[i], t), p), base, true, "");
            }
    }
}

/// Number operator bounds on the two bands. kind 0: d-fold growth on the tail
/// plus a replay of the integral derivation; kind 1: d-fold cap on low degrees.
inline void gap_band_rows(const Scenario& s, std::vector<ReportRow>& rows, int kind) {
    const Band band = (kind == 0) ? Band::tail : Band::low;
    const double dd = static_cast<double>(s.d);
    const double replay_c = decay_integral_bound(s.d);
    auto emit = [&](int inst, int p, double n_gen, double n_plain) {
        std::ostringstream os;
        os << "i=" << inst;
        if (kind == 0) {
            rows.push_back(make_row(s, os.str(), std::to_string(p), nan_t(), s.d, dd * n_plain, n_gen, true,
                                    s.tolerance));
            rows.push_back(make_row(s, os.str() + ";replay=1", std::to_string(p), nan_t(), s.d, n_plain,
                                    replay_c * n_gen, true, s.tolerance));
        } else {
            rows.push_back(make_row(s, os.str(), std::to_string(p), nan_t(), s.d, n_gen, dd * n_plain, true,
                                    s.tolerance));
        }
    };

    if (s.algebra == "free") {
        const auto pop = free_population(s, band, true);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int p : s.p_list)
                emit(static_cast<int>(i), p, freealg::norm_even(freealg::generator(pop[i]), p),
                     freealg::norm_even(pop[i], p));
    } else if (s.algebra == "qgauss") {
        const double q = s.detail.value("q", 0.5);
        const auto pop = qgauss_population(s, band);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int p : s.p_list)
                emit(static_cast<int>(i), p, qgauss_norm(s, qfock::generator_q(pop[i]), p, q),
                     qgauss_norm(s, pop[i], p, q));
    } else {
        const auto pop = torus_population(s, band, true);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (int p : s.p_list)
                emit(static_cast<int>(i), p, torus::norm_even(torus::generator(pop[i]), p),
                     torus::norm_even(pop[i], p));
    }
}

/// The d-th power of the first generator realizes the decay rate exactly.
inline void sharpness_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    const double dd = static_cast<double>(s.d);
    const double tol = std::min(s.tolerance, 1e-10);
    auto emit = [&](int p, double t, double ratio) {
        const double rate = std::exp(-t * dd);
        rows.push_back(make_row(s, "monomial=generator^d", std::to_string(p), t, s.d,
                                std::abs(ratio - rate), 0.0, true, tol, ratio / rate));
    };

    if (s.algebra == "free") {
        const int rank = s.detail.value("rank", 2);
        const auto x = freealg::GroupPolynomial::delta(
            words::Word::reduced(rank, std::vector<int>(static_cast<std::size_t>(s.d), 1)));
        for (int p : s.p_list) {
            const double base = freealg::norm_even(x, p);
            for (double t : s.t_grid) emit(p, t, freealg::norm_even(freealg::heat(x, t), p) / base);
        }
    } else if (s.algebra == "qgauss") {
        const double q = s.detail.value("q", 0.5);
        qfock::HoloPolynomial x(s.detail.value("dimH", 1));
        x.add_term(qfock::HoloMonomial::make({{1, s.d}}), 1.0);
        for (int p : s.p_list) {
            const double base = qgauss_norm(s, x, p, q);
            for (double t : s.t_grid) emit(p, t, qgauss_norm(s, qfock::heat_q(x, t), p, q) / base);
        }
    } else {
        const int n = s.detail.value("n", 2);
        torus::MultiIndex alpha(static_cast<std::size_t>(n), 0);
        alpha[0] = s.d;
        const auto x = torus::TorusPolynomial::monomial(n, torus_theta(s, n), alpha);
        for (int p : s.p_list) {
            const double base = torus::norm_even(x, p);
            for (double t : s.t_grid) emit(p, t, torus::norm_even(torus::heat(x, t), p) / base);
        }
    }
}

/// Free tail decay at the hypercontractive rate e^{-(2/p) d min(t, t^2)},
/// valid for every tail element, holomorphic or not.
inline void hc_smoothing_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("hc-smoothing: free algebra only");
    const auto pop = free_population(s, Band::tail, false);
    const double dd = static_cast<double>(s.d);
    for (std::size_t i = 0; i < pop.size(); ++i)
        for (int p : s.p_list) {
            const double base = freealg::norm_even(pop[i], p);
            for (double t : s.t_grid) {
                const double rate = std::exp(-(2.0 / p) * dd * std::min(t, t * t));
                std::ostringstream os;
                os << "i=" << i;
                rows.push_back(make_row(s, os.str(), std::to_string(p), t, s.d,
                                        freealg::norm_even(freealg::heat(pop[i], t), p), rate * base, true,
                                        s.tolerance));
            }
        }
}

/// Order-d decay with explicit constants for arbitrary free tail elements,
/// and the quarter-strength generator bound that follows from it.
inline void sharp_order_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("sharp-order: free algebra only");
    const auto pop = free_population(s, Band::tail, false);
    const double dd = static_cast<double>(s.d);
    const int radius = s.detail.value("radius", 3);
    auto bound = [dd](double t) {
        return (dd + 1.0) * (1.0 - std::exp(-2.0 * t)) * std::exp(-t * dd) + 2.0 * std::exp(-t * (dd + 1.0));
    };
    for (std::size_t i = 0; i < pop.size(); ++i) {
        for (int p : s.p_list) {
            const double base = freealg::norm_even(pop[i], p);
            for (double t : s.t_grid) {
                std::ostringstream os;
                os << "i=" << i;
                rows.push_back(make_row(s, os.str(), std::to_string(p), t, s.d,
                                        freealg::norm_even(freealg::heat(pop[i], t), p), bound(t) * base, true,
                                        s.tolerance));
            }
            std::ostringstream os;
            os << "i=" << i << ";generator=1";
            rows.push_back(make_row(s, os.str(), std::to_string(p), nan_t(), s.d, 0.25 * dd * base,
                                    freealg::norm_even(freealg::generator(pop[i]), p), true, s.tolerance));
        }
        if (s.p_inf) {
            const double base = freealg::op_norm_estimate(pop[i], radius);
            for (double t : s.t_grid) {
                std::ostringstream os;
                os << "i=" << i << ";radius=" << radius;
                rows.push_back(make_row(s, os.str(), "inf", t, s.d,
                                        freealg::op_norm_estimate(freealg::heat(pop[i], t), radius),
                                        bound(t) * base, false, s.tolerance));
            }
        }
    }
}

/// Norm growth across even exponents for low-degree holomorphic elements.
/// Pairs come as [p, q, case] with case 1 or 2.
inline void moment_cmp_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    const bool qgauss = (s.algebra == "qgauss");
    if (!qgauss && s.algebra != "free")
        throw std::invalid_argument("moment comparison: free or qgauss only");

    std::vector<std::array<int, 3>> pairs;
    if (s.detail.contains("pairs")) {
        for (const auto& e : s.detail.at("pairs"))
            pairs.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    } else if (qgauss) {
        pairs = {{2, 4, 1}, {2, 4, 2}};
    } else {
        pairs = {{2, 4, 1}, {2, 6, 1}, {4, 6, 1}, {2, 4, 2}, {2, 6, 2}};
    }

    auto constant = [&](int p, int q, int variant) {
        const double dd = static_cast<double>(s.d);
        if (qgauss)
            return variant == 1 ? std::pow(static_cast<double>(q - 1) / (p - 1), dd / 2.0)
                                : std::pow(static_cast<double>(q) / 2.0, dd / 2.0);
        return variant == 1 ? std::pow(static_cast<double>(q - 1) / (p - 1), dd)
                            : std::pow(static_cast<double>(q - 1), dd / 2.0);
    };

    if (qgauss) {
        const double qdef = s.detail.value("q", 0.5);
        const auto pop = qgauss_population(s, Band::low);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (const auto& [p, qe, variant] : pairs) {
                std::ostringstream os;
                os << "i=" << i << ";p=" << p << ";case=" << variant;
                rows.push_back(make_row(s, os.str(), std::to_string(qe), nan_t(), s.d,
                                        qgauss_norm(s, pop[i], qe, qdef),
                                        constant(p, qe, variant) * qgauss_norm(s, pop[i], p, qdef), true,
                                        s.tolerance));
            }
    } else {
        const auto pop = free_population(s, Band::low, true);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (const auto& [p, qe, variant] : pairs) {
                std::ostringstream os;
                os << "i=" << i << ";p=" << p << ";case=" << variant;
                rows.push_back(make_row(s, os.str(), std::to_string(qe), nan_t(), s.d,
                                        freealg::norm_even(pop[i], qe),
                                        constant(p, qe, variant) * freealg::norm_even(pop[i], p), true,
                                        s.tolerance));
            }
    }
}

/// Two-to-four hypercontractivity of the deformed semigroup at t = ln(2)/2.
inline void hc_q_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "qgauss") throw std::invalid_argument("hc-q: qgauss only");
    const double q = s.detail.value("q", 0.5);
    const double t = s.detail.value("t", 0.5 * std::log(2.0));
    const auto pop = qgauss_population(s, Band::any);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        std::ostringstream os;
        os << "i=" << i << ";q=" << fmt_g(q);
        rows.push_back(make_row(s, os.str(), "4", t, s.d,
                                qgauss_norm(s, qfock::heat_q(pop[i], t), 4, q),
                                qgauss_norm(s, pop[i], 2, q), true, s.tolerance));
    }
}

/// Circle kernel moments and total variation against their closed forms.
inline void kernel_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    const std::string kernel = s.detail.value("kernel", std::string{"poisson"});
    const std::size_t n = s.quad_points;
    if (kernel == "poisson") {
        for (double t : s.t_grid) {
            const auto f = kernels::CircleDensity::shifted_poisson(s.d, t);
            for (long k = 0; k <= 2L * s.d; ++k) {
                const double expect = std::exp(-t * s.d) * std::exp(-t * std::abs(static_cast<double>(s.d - k)));
                std::ostringstream os;
                os << "k=" << k;
                rows.push_back(make_row(s, os.str(), "-", t, s.d, std::abs(kernels::moment(f, k, n) - expect),
                                        0.0, true, s.tolerance));
            }
            rows.push_back(make_row(s, "tv=1", "-", t, s.d,
                                    std::abs(kernels::total_variation(f, n) - std::exp(-t * s.d)), 0.0, true,
                                    s.tolerance));
        }
    } else if (kernel == "fejer") {
        const auto g = kernels::CircleDensity::shifted_fejer(s.d);
        for (long k = 0; k <= s.d; ++k) {
            std::ostringstream os;
            os << "k=" << k;
            rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d,
                                    std::abs(kernels::moment(g, k, n) - static_cast<double>(k)), 0.0, true,
                                    s.tolerance));
        }
        rows.push_back(make_row(s, "tv=1", "-", nan_t(), s.d,
                                std::abs(kernels::total_variation(g, n) - static_cast<double>(s.d)), 0.0, true,
                                s.tolerance));
    } else {
        throw std::invalid_argument("kernel-lemma: kernel must be poisson or fejer");
    }
}

/// Rotation averages against the closed flows: the shifted Poisson average
/// reproduces heat on holomorphic tails, the shifted Fejer average reproduces
/// the generator on holomorphic low degrees.
inline void avg_identity_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("avg-identity: free algebra only");
    const std::string variant = s.detail.value("variant", std::string{"semigroup"});
    const std::size_t n = s.quad_points;

    auto rotation_average = [&](const freealg::GroupPolynomial& x,
                                const std::function<cplx(double)>& weight) {
        freealg::GroupPolynomial acc = freealg::GroupPolynomial::from_terms(x.rank(), {});
        for (std::size_t k = 0; k < n; ++k) {
            const double phi = torus::k2Pi * static_cast<double>(k) / static_cast<double>(n);
            acc = freealg::add(acc, freealg::scale(freealg::rotate(x, std::polar(1.0, phi)),
                                                   weight(phi) / static_cast<double>(n)));
        }
        return acc;
    };

    if (variant == "semigroup") {
        const auto pop = free_population(s, Band::tail, true);
        for (std::size_t i = 0; i < pop.size(); ++i)
            for (double t : s.t_grid) {
                const auto f = kernels::CircleDensity::shifted_poisson(s.d, t);
                const auto avg = rotation_average(pop[i], [&f](double phi) { return f(phi); });
                const double resid =
                    freealg::norm_even(freealg::subtract(freealg::heat(pop[i], t), avg), 2);
                std::ostringstream os;
                os << "i=" << i << ";variant=semigroup";
                rows.push_back(make_row(s, os.str(), "2", t, s.d, resid, 0.0, true, s.tolerance));
            }
    } else if (variant == "generator") {
        const auto pop = free_population(s, Band::low, true);
        const auto g = kernels::CircleDensity::shifted_fejer(s.d);
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto avg = rotation_average(pop[i], [&g](double phi) { return g(phi); });
            const double resid =
                freealg::norm_even(freealg::subtract(freealg::generator(pop[i]), avg), 2);
            std::ostringstream os;
            os << "i=" << i << ";variant=generator";
            rows.push_back(make_row(s, os.str(), "2", nan_t(), s.d, resid, 0.0, true, s.tolerance));
        }
    } else {
        throw std::invalid_argument("avg-identity: variant must be semigroup or generator");
    }
}

/// Trace norm of the difference Hankel matrix against the closed bound, with
/// the corner block facts that prove it.
inline void hankel_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("hankel: free algebra only");
    std::vector<double> r_list;
    if (s.detail.contains("r_list"))
        for (const auto& v : s.detail.at("r_list")) r_list.push_back(v.get<double>());
    else if (s.detail.contains("r"))
        r_list.push_back(s.detail.at("r").get<double>());
    else if (!s.t_grid.empty())
        for (double t : s.t_grid) r_list.push_back(std::exp(-t));
    else
        r_list = {0.1, 0.3, 0.5, 0.7, 0.9};
    const std::size_t n = s.detail.value("N", std::size_t{200});

    for (double r : r_list) {
        const std::string pr = "r=" + fmt_g(r);
        const auto h = hankel::hankel_matrix(hankel::SharpSequence(s.d, r), n);
        rows.push_back(make_row(s, pr + ";row=trace-norm", "-", nan_t(), s.d, hankel::trace_norm(h),
                                hankel::multiplier_bound(s.d, r), true, s.tolerance));
        const auto dec = hankel::abc_decomposition(s.d, r, n);
        rows.push_back(make_row(s, pr + ";row=b-closed", "-", nan_t(), s.d,
                                std::abs(dec.norms.b_trace_norm - dec.norms.b_closed_form), 0.0, true,
                                s.tolerance));
        rows.push_back(make_row(s, pr + ";row=c-closed", "-", nan_t(), s.d,
                                std::abs(dec.norms.c_trace_norm - dec.norms.c_closed_form), 0.0, true,
                                s.tolerance));
        rows.push_back(make_row(s, pr + ";row=corner-psd", "-", nan_t(), s.d, -dec.norms.a_tilde_min_eig,
                                1e-10 * (s.d + 1), true, 0.0, dec.norms.a_tilde_min_eig));
        rows.push_back(make_row(s, pr + ";row=corner-trace", "-", nan_t(), s.d,
                                std::abs(dec.norms.a_tilde_trace - dec.norms.a_tilde_trace_closed), 0.0, true,
                                1e-10));
    }
    rows.push_back(make_row(s, "row=smoothing-bound", "-", nan_t(), s.d, hankel::smoothing_constant(s.d),
                            4.0 / s.d, true, s.tolerance));
    rows.push_back(make_row(s, "row=smoothing-quad", "-", nan_t(), s.d,
                            std::abs(hankel::smoothing_constant(s.d) - hankel::smoothing_constant_quadrature(s.d)),
                            0.0, true, std::max(s.tolerance, 1e-6)));
}

/// Distance kernel Gram matrices on balls stay positive semi-definite.
inline void haagerup_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("haagerup-psd: free algebra only");
    const int rank = s.detail.value("rank", 2);
    const int radius = s.detail.value("radius", 3);
    for (double t : s.t_grid) {
        const auto [g, mineig] = freealg::haagerup_gram(rank, t, radius);
        std::ostringstream os;
        os << "rank=" << rank << ";radius=" << radius << ";dim=" << g.rows;
        rows.push_back(make_row(s, os.str(), "-", t, s.d, -mineig,
                                1e-10 * static_cast<double>(g.rows), true, 0.0, mineig));
    }
}

/// Deformed commutation residual below the truncation edge.
inline void qcr_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "qgauss") throw std::invalid_argument("qcr: qgauss only");
    std::vector<double> q_list;
    if (s.detail.contains("q_list"))
        for (const auto& v : s.detail.at("q_list")) q_list.push_back(v.get<double>());
    else
        q_list = {-0.9, -0.5, 0.0, 0.5, 0.9};
    const int dim_h = s.detail.value("dimH", 2);
    const int cutoff = s.detail.value("K", 3);

    for (double q : q_list) {
        const auto basis = qfock::FockBasis::make(dim_h, cutoff);
        const auto id = qfock::op_identity(basis, q);
        const std::uint64_t edge = basis.block_offset(cutoff);
        double worst = 0.0;
        std::vector<qfock::FockOperator> ann, cre;
        for (int l = 1; l <= 2 * dim_h; ++l) {
            ann.push_back(qfock::annihilation(basis, q, l));
            cre.push_back(qfock::creation(basis, q, l));
        }
        for (std::size_t i = 0; i < ann.size(); ++i)
            for (std::size_t j = 0; j < cre.size(); ++j) {
                auto res = qfock::op_subtract(qfock::op_multiply(ann[i], cre[j]),
                                              qfock::op_scale(qfock::op_multiply(cre[j], ann[i]), q));
                if (i == j) res = qfock::op_subtract(res, id);
                for (std::uint64_t col = 0; col < edge; ++col)
                    for (std::size_t row = 0; row < res.mat.rows; ++row)
                        worst = std::max(worst, std::abs(res.mat.at(row, static_cast<std::size_t>(col))));
            }
        std::ostringstream os;
        os << "q=" << fmt_g(q) << ";dimH=" << dim_h << ";K=" << cutoff;
        rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d, worst, 0.0, true,
                                std::min(s.tolerance, 1e-10)));
    }
}

/// Deformed inner product Gram blocks are strictly positive definite.
inline void gram_psd_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "qgauss") throw std::invalid_argument("gram-psd: qgauss only");
    std::vector<double> q_list;
    if (s.detail.contains("q_list"))
        for (const auto& v : s.detail.at("q_list")) q_list.push_back(v.get<double>());
    else
        q_list = {-0.9, -0.5, 0.0, 0.5, 0.9};
    const int dim_h = s.detail.value("dimH", 2);
    const int cutoff = s.detail.value("K", 4);
    for (double q : q_list) {
        const double mineig = qfock::gram_min_eig(qfock::gram(qfock::FockBasis::make(dim_h, cutoff), q));
        std::ostringstream os;
        os << "q=" << fmt_g(q) << ";dimH=" << dim_h << ";K=" << cutoff;
        rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d, -mineig, -1e-12, true, 0.0, mineig));
    }
}

/// Symbolic norms against the clock-and-shift model, restricted to exponent
/// windows where the b-periodic model is faithful for the traced word.
inline void weyl_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "qtorus") throw std::invalid_argument("weyl-xval: qtorus only");
    if (!s.detail.contains("weyl")) throw std::invalid_argument("weyl-xval: weyl {a, b} required");
    const int a = s.detail.at("weyl").at("a").get<int>();
    const int b = s.detail.at("weyl").at("b").get<int>();
    const std::vector<double> theta = torus_theta(s, 2);
    const double tol = std::min(s.tolerance, 1e-10);

    auto emit = [&](const torus::TorusPolynomial& x, int inst, int window) {
        const auto m = torus::weyl_model(a, b, x);
        std::ostringstream os;
        os << "i=" << inst << ";window=" << window << ";b=" << b;
        rows.push_back(make_row(s, os.str() + ";row=trace", "-", nan_t(), s.d,
                                std::abs(torus::trace(x) - torus::weyl_normalized_trace(m)), 0.0, true, tol));
        for (int p : s.p_list) {
            if (p * window > b - 1) continue;  // wrapped words would alias
            rows.push_back(make_row(s, os.str(), std::to_string(p), nan_t(), s.d,
                                    std::abs(torus::norm_even(x, p) - torus::weyl_schatten_norm(m, p)), 0.0,
                                    true, tol));
        }
    };

    if (s.detail.contains("monomials")) {
        const auto x = parse_torus_poly(s.detail.at("monomials"), 2, theta);
        int window = 0;
        for (const auto& [al, c] : x.terms())
            for (int v : al) window = std::max(window, std::abs(v));
        emit(x, 0, window);
        return;
    }

    std::vector<int> windows;
    for (int w : {1, 2, std::min(4, b - 1)})
        if (w <= b - 1 && std::find(windows.begin(), windows.end(), w) == windows.end())
            windows.push_back(w);

    rnd::RandomSource rng(require_seed(s));
    for (int inst = 0; inst < s.instances; ++inst)
        for (int window : windows) {
            std::vector<torus::TorusPolynomial::Term> terms;
            for (int k = 0; k < s.detail.value("terms", 6); ++k)
                terms.push_back({{rng.uniform_int(-window, window), rng.uniform_int(-window, window)},
                                 rng.coeff()});
            emit(torus::TorusPolynomial::make(2, theta, std::move(terms)), inst, window);
        }
}

/// Star algebra axioms on random elements: associativity, involution,
/// traciality, positivity, and rotation invariance of moments.
inline void axioms_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    const double tol = s.tolerance;
    const cplx z = std::polar(1.0, 1.234);

    if (s.algebra == "free") {
        rnd::RandomSource rng(require_seed(s));
        rnd::FreePolySpec spec;
        spec.rank = s.detail.value("rank", 2);
        spec.term_count = s.detail.value("terms", 6);
        spec.max_len = s.detail.value("max_len", 4);
        for (int i = 0; i < s.instances; ++i) {
            const auto x = rnd::random_group_polynomial(rng, spec);
            const auto y = rnd::random_group_polynomial(rng, spec);
            const auto w = rnd::random_group_polynomial(rng, spec);
            double worst = 0.0;
            auto track = [&worst](const freealg::GroupPolynomial& diff) {
                for (const auto& [key, c] : diff.terms()) {
                    (void)key;
                    worst = std::max(worst, std::abs(c));
                }
            };
            track(freealg::subtract(freealg::convolve(freealg::convolve(x, y), w),
                                    freealg::convolve(x, freealg::convolve(y, w))));
            track(freealg::subtract(freealg::adjoint(freealg::convolve(x, y)),
                                    freealg::convolve(freealg::adjoint(y), freealg::adjoint(x))));
            worst = std::max(worst, std::abs(freealg::trace(freealg::convolve(x, y)) -
                                             freealg::trace(freealg::convolve(y, x))));
            worst = std::max(worst,
                             std::max(0.0, -freealg::trace(freealg::convolve(freealg::adjoint(x), x)).real()));
            worst = std::max(worst, std::abs(freealg::norm_even(freealg::rotate(x, z), 4) -
                                             freealg::norm_even(x, 4)));
            std::ostringstream os;
            os << "i=" << i;
            rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d, worst, 0.0, true, tol));
        }
    } else if (s.algebra == "qtorus") {
        rnd::RandomSource rng(require_seed(s));
        rnd::TorusPolySpec spec;
        spec.n = s.detail.value("n", 2);
        spec.theta = torus_theta(s, spec.n);
        spec.term_count = s.detail.value("terms", 6);
        spec.max_len = s.detail.value("max_len", 4);
        for (int i = 0; i < s.instances; ++i) {
            const auto x = rnd::random_torus_polynomial(rng, spec);
            const auto y = rnd::random_torus_polynomial(rng, spec);
            const auto w = rnd::random_torus_polynomial(rng, spec);
            double worst = 0.0;
            auto track = [&worst](const torus::TorusPolynomial& diff) {
                for (const auto& [key, c] : diff.terms()) {
                    (void)key;
                    worst = std::max(worst, std::abs(c));
                }
            };
            track(torus::subtract(torus::convolve(torus::convolve(x, y), w),
                                  torus::convolve(x, torus::convolve(y, w))));
            track(torus::subtract(torus::adjoint(torus::convolve(x, y)),
                                  torus::convolve(torus::adjoint(y), torus::adjoint(x))));
            worst = std::max(worst, std::abs(torus::trace(torus::convolve(x, y)) -
                                             torus::trace(torus::convolve(y, x))));
            worst = std::max(worst,
                             std::max(0.0, -torus::trace(torus::convolve(torus::adjoint(x), x)).real()));
            worst = std::max(worst,
                             std::abs(torus::norm_even(torus::rotate(x, z), 4) - torus::norm_even(x, 4)));
            std::ostringstream os;
            os << "i=" << i;
            rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d, worst, 0.0, true, tol));
        }
    } else {
        rnd::RandomSource rng(require_seed(s));
        rnd::HoloPolySpec spec;
        spec.dim_h = s.detail.value("dimH", 2);
        spec.term_count = s.detail.value("terms", 4);
        spec.max_deg = s.detail.value("max_deg", 2);
        const double q = s.detail.value("q", 0.5);
        for (int i = 0; i < s.instances; ++i) {
            const auto x = rnd::random_holo_polynomial(rng, spec);
            double worst = 0.0;
            const double n4 = qgauss_norm(s, x, 4, q);
            worst = std::max(worst, std::abs(qgauss_norm(s, qfock::rotate_q(x, z), 4, q) - n4));
            worst = std::max(worst,
                             std::max(0.0, qgauss_norm(s, qfock::heat_q(x, 0.5), 2, q) -
                                               qgauss_norm(s, x, 2, q)));
            std::ostringstream os;
            os << "i=" << i << ";q=" << fmt_g(q);
            rows.push_back(make_row(s, os.str(), "-", nan_t(), s.d, worst, 0.0, true, tol));
        }
    }
}

/// Exploratory search only: first grid time at which an element outside the
/// tail band breaks the tail decay rate. Rows never fail.
inline void time_sharpness_rows(const Scenario& s, std::vector<ReportRow>& rows) {
    if (s.algebra != "free") throw std::invalid_argument("time-sharpness: free algebra only");
    const int rank = s.detail.value("rank", 2);
    const auto x = freealg::add(
        freealg::GroupPolynomial::delta(words::Word::identity(rank)),
        freealg::GroupPolynomial::delta(words::Word::reduced(rank, {1})));
    const double base = freealg::norm_even(x, 2);
    double first_fail = std::numeric_limits<double>::quiet_NaN();
    for (double t : s.t_grid) {
        const double lhs = freealg::norm_even(freealg::heat(x, t), 2);
        if (lhs > std::exp(-t * s.d) * base + s.tolerance) {
            first_fail = t;
            break;
        }
    }
    std::ostringstream os;
    os << "first_fail_t=" << (std::isnan(first_fail) ? "none" : fmt_g(first_fail));
    rows.push_back(make_row(s, os.str(), "2", nan_t(), s.d, 0.0, 0.0, false, s.tolerance));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dispatch and reporting
// ---------------------------------------------------------------------------

inline std::vector<ReportRow> run_check(const Scenario& s) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<ReportRow> rows;
    if (s.check == "hs-tail") detail::heat_band_rows(s, rows, 0);
    else if (s.check == "hs-low") detail::heat_band_rows(s, rows, 1);
    else if (s.check == "gap-tail") detail::gap_band_rows(s, rows, 0);
    else if (s.check == "gap-low") detail::gap_band_rows(s, rows, 1);
    else if (s.check == "sharpness") detail::sharpness_rows(s, rows);
    else if (s.check == "hc-smoothing") detail::hc_smoothing_rows(s, rows);
    else if (s.check == "sharp-order") detail::sharp_order_rows(s, rows);
    else if (s.check == "moment-cmp") detail::moment_cmp_rows(s, rows);
    else if (s.check == "moment-cmp-q") detail::moment_cmp_rows(s, rows);
    else if (s.check == "hc-q") detail::hc_q_rows(s, rows);
    else if (s.check == "kernel-lemma") detail::kernel_rows(s, rows);
    else if (s.check == "avg-identity") detail::avg_identity_rows(s, rows);
    else if (s.check == "hankel") detail::hankel_rows(s, rows);
    else if (s.check == "haagerup-psd") detail::haagerup_rows(s, rows);
    else if (s.check == "qcr") detail::qcr_rows(s, rows);
    else if (s.check == "gram-psd") detail::gram_psd_rows(s, rows);
    else if (s.check == "weyl-xval") detail::weyl_rows(s, rows);
    else if (s.check == "axioms") detail::axioms_rows(s, rows);
    else if (s.check == "time-sharpness") detail::time_sharpness_rows(s, rows);
    else throw std::invalid_argument("run_check: unknown check '" + s.check + "'");

    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (ReportRow& r : rows) r.ms = ms / static_cast<double>(rows.size());
    return rows;
}

struct RunSummary {
    std::vector<ReportRow> rows;
    std::size_t hard_total = 0;
    std::size_t hard_failed = 0;
    std::size_t est_total = 0;
    std::size_t est_failed = 0;
    bool hard_pass() const { return hard_failed == 0; }
    bool estimates_pass() const { return est_failed == 0; }
};

inline RunSummary run_all(std::vector<Scenario> scenarios) {
    std::sort(scenarios.begin(), scenarios.end(),
              [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
    RunSummary out;
    for (const Scenario& s : scenarios) {
        std::vector<ReportRow> rows = run_check(s);
        for (ReportRow& r : rows) out.rows.push_back(std::move(r));
    }
    for (const ReportRow& r : out.rows) {
        if (r.status == "pass" || r.status == "fail") {
            ++out.hard_total;
            if (r.status == "fail") ++out.hard_failed;
        } else {
            ++out.est_total;
            if (r.status == "estfail") ++out.est_failed;
        }
    }
    return out;
}

inline void write_csv(const std::vector<ReportRow>& rows, std::ostream& os) {
    os << kCsvHeader << "\n";
    for (const ReportRow& r : rows) {
        os << r.scenario << ',' << r.check << ',' << r.algebra << ',' << r.params << ',' << r.p << ','
           << (std::isnan(r.t) ? std::string{"-"} : fmt_g(r.t)) << ',' << r.d << ',' << fmt_g(r.lhs) << ','
           << fmt_g(r.rhs) << ',' << fmt_g(r.ratio) << ',' << fmt_g(r.slack) << ',' << r.status << ','
           << fmt_g(r.ms) << "\n";
    }
}

inline json rows_to_json(const std::vector<ReportRow>& rows) {
    json arr = json::array();
    for (const ReportRow& r : rows) {
        json o;
        o["scenario"] = r.scenario;
        o["check"] = r.check;
        o["algebra"] = r.algebra;
        o["params"] = r.params;
        o["p"] = r.p;
        if (std::isnan(r.t)) o["t"] = nullptr;
        else o["t"] = r.t;
        o["d"] = r.d;
        o["lhs"] = r.lhs;
        o["rhs"] = r.rhs;
        o["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr);
        o["slack"] = r.slack;
        o["status"] = r.status;
        o["ms"] = r.ms;
        arr.push_back(std::move(o));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Default scenario battery
// ---------------------------------------------------------------------------

inline std::vector<Scenario> default_scenarios() {
    std::vector<Scenario> out;
    auto add = [&out](const json& j) { out.push_back(scenario_from_json(j)); };
    const json t_main = json::array({0.1, 0.5, 1.0});
    const json p_free = json::array({2, 4, 6});
    const json p_q = json::array({2, 4});

    for (int d : {1, 2, 3}) {
        const std::string sd = std::to_string(d);
        add({{"id", "hs-tail-free-d" + sd}, {"algebra", "free"}, {"check", "hs-tail"}, {"d", d},
             {"t_grid", t_main}, {"p_list", json::array({2, 4, 6, "inf"})}, {"seed", 1000 + d},
             {"instances", 8}, {"max_len", 6}});
        add({{"id", "gap-tail-free-d" + sd}, {"algebra", "free"}, {"check", "gap-tail"}, {"d", d},
             {"p_list", p_free}, {"seed", 1100 + d}, {"instances", 8}, {"max_len", 6}});
        add({{"id", "hc-free-d" + sd}, {"algebra", "free"}, {"check", "hc-smoothing"}, {"d", d},
             {"t_grid", json::array({0.2, 1.0, 2.0})}, {"p_list", json::array({4})}, {"seed", 1200 + d},
             {"instances", 10}, {"max_len", 6}});
        add({{"id", "sharp-order-free-d" + sd}, {"algebra", "free"}, {"check", "sharp-order"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_q}, {"seed", 1300 + d}, {"instances", 6}, {"max_len", 5}});
        add({{"id", "hs-tail-q-d" + sd}, {"algebra", "qgauss"}, {"check", "hs-tail"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_q}, {"seed", 1400 + d}, {"instances", 6}, {"dimH", 2},
             {"max_deg", 3}, {"q", 0.5}});
        add({{"id", "hs-tail-torus-d" + sd}, {"algebra", "qtorus"}, {"check", "hs-tail"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_free}, {"seed", 1500 + d}, {"instances", 8}, {"theta12", 0.3},
             {"max_len", 5}});
    }

    add({{"id", "hs-low-free-d2"}, {"algebra", "free"}, {"check", "hs-low"}, {"d", 2}, {"t_grid", t_main},
         {"p_list", p_free}, {"seed", 1601}, {"instances", 8}});
    add({{"id", "gap-low-free-d2"}, {"algebra", "free"}, {"check", "gap-low"}, {"d", 2}, {"p_list", p_free},
         {"seed", 1602}, {"instances", 8}});
    add({{"id", "hs-low-q-d2"}, {"algebra", "qgauss"}, {"check", "hs-low"}, {"d", 2}, {"t_grid", t_main},
         {"p_list", p_q}, {"seed", 1603}, {"instances", 6}, {"q", -0.5}});
    add({{"id", "gap-low-q-d2"}, {"algebra", "qgauss"}, {"check", "gap-low"}, {"d", 2}, {"p_list", p_q},
         {"seed", 1604}, {"instances", 6}, {"q", -0.5}});
    add({{"id", "gap-tail-q-d2"}, {"algebra", "qgauss"}, {"check", "gap-tail"}, {"d", 2}, {"p_list", p_q},
         {"seed", 1605}, {"instances", 6}, {"q", 0.5}});
    add({{"id", "hs-low-torus-d2"}, {"algebra", "qtorus"}, {"check", "hs-low"}, {"d", 2}, {"t_grid", t_main},
         {"p_list", p_free}, {"seed", 1606}, {"instances", 8}, {"theta12", 0.3}});
    add({{"id", "gap-low-torus-d2"}, {"algebra", "qtorus"}, {"check", "gap-low"}, {"d", 2},
         {"p_list", p_free}, {"seed", 1607}, {"instances", 8}, {"theta12", 0.3}});
    add({{"id", "gap-tail-torus-d2"}, {"algebra", "qtorus"}, {"check", "gap-tail"}, {"d", 2},
         {"p_list", p_free}, {"seed", 1608}, {"instances", 8}, {"theta12", 0.3}});

    for (int d : {1, 5}) {
        const std::string sd = std::to_string(d);
        add({{"id", "sharpness-free-d" + sd}, {"algebra", "free"}, {"check", "sharpness"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_free}, {"tolerance", 1e-10}});
        add({{"id", "sharpness-q-d" + sd}, {"algebra", "qgauss"}, {"check", "sharpness"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_q}, {"tolerance", 1e-10}, {"dimH", 1}, {"q", 0.5}});
        add({{"id", "sharpness-torus-d" + sd}, {"algebra", "qtorus"}, {"check", "sharpness"}, {"d", d},
             {"t_grid", t_main}, {"p_list", p_free}, {"tolerance", 1e-10}, {"theta12", 0.3}});
    }

    for (int d : {2, 4}) {
        add({{"id", "moment-free-d" + std::to_string(d)}, {"algebra", "free"}, {"check", "moment-cmp"},
             {"d", d}, {"seed", 1700 + d}, {"instances", 6}});
    }
    for (int d : {1, 2, 3}) {
        add({{"id", "moment-q-d" + std::to_string(d)}, {"algebra", "qgauss"}, {"check", "moment-cmp-q"},
             {"d", d}, {"seed", 1800 + d}, {"instances", 5}, {"q", -0.5}});
    }
    add({{"id", "hc-q-spot"}, {"algebra", "qgauss"}, {"check", "hc-q"}, {"seed", 1900}, {"instances", 6},
         {"max_deg", 3}, {"q", 0.5}});

    for (int d : {1, 4, 8}) {
        const std::string sd = std::to_string(d);
        add({{"id", "kernel-poisson-d" + sd}, {"algebra", "free"}, {"check", "kernel-lemma"}, {"d", d},
             {"t_grid", json::array({0.25, 1.0})}, {"kernel", "poisson"}, {"tolerance", 1e-6},
             {"quad_points", 16384}});
        add({{"id", "kernel-fejer-d" + sd}, {"algebra", "free"}, {"check", "kernel-lemma"}, {"d", d},
             {"kernel", "fejer"}, {"tolerance", 1e-6}, {"quad_points", 16384}});
    }
    add({{"id", "avg-semigroup"}, {"algebra", "free"}, {"check", "avg-identity"}, {"d", 2},
         {"t_grid", json::array({0.3, 0.8})}, {"variant", "semigroup"}, {"seed", 2000}, {"instances", 4},
         {"tolerance", 1e-6}, {"quad_points", 4096}});
    add({{"id", "avg-generator"}, {"algebra", "free"}, {"check", "avg-identity"}, {"d", 2},
         {"variant", "generator"}, {"seed", 2001}, {"instances", 4}, {"tolerance", 1e-6},
         {"quad_points", 4096}});

    for (int d = 1; d <= 8; ++d)
        add({{"id", "hankel-d" + std::to_string(d)}, {"algebra", "free"}, {"check", "hankel"}, {"d", d},
             {"tolerance", 1e-6}, {"N", 200}});

    add({{"id", "haagerup-ball"}, {"algebra", "free"}, {"check", "haagerup-psd"},
         {"t_grid", json::array({0.5, 1.0})}, {"radius", 3}});
    add({{"id", "qcr-grid"}, {"algebra", "qgauss"}, {"check", "qcr"}, {"dimH", 2}, {"K", 3}});
    add({{"id", "qcr-deep"}, {"algebra", "qgauss"}, {"check", "qcr"}, {"dimH", 2}, {"K", 4},
         {"q_list", json::array({0.5})}});
    add({{"id", "gram-psd-grid"}, {"algebra", "qgauss"}, {"check", "gram-psd"}, {"dimH", 2}, {"K", 4}});
    add({{"id", "weyl-xval-b5"}, {"algebra", "qtorus"}, {"check", "weyl-xval"},
         {"p_list", json::array({2, 4})}, {"weyl", {{"a", 1}, {"b", 5}}}, {"seed", 2100}, {"instances", 4}});

    add({{"id", "axioms-free"}, {"algebra", "free"}, {"check", "axioms"}, {"seed", 2200}, {"instances", 30}});
    add({{"id", "axioms-torus"}, {"algebra", "qtorus"}, {"check", "axioms"}, {"seed", 2201},
         {"instances", 30}, {"theta12", 0.707106781186547524}});
    add({{"id", "axioms-qgauss"}, {"algebra", "qgauss"}, {"check", "axioms"}, {"seed", 2202},
         {"instances", 10}, {"q", 0.4}});

    add({{"id", "time-sharpness-free"}, {"algebra", "free"}, {"check", "time-sharpness"}, {"d", 1},
         {"t_grid", json::array({0.05, 0.1, 0.2, 0.5, 1.0})}});

    return out;
}

}  // namespace ncverify::harness
