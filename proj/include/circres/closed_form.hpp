#pragma once

// Closed forms for G_{N,1} = K_N minus the distance-1 class, N >= 5 odd, and
// their transport to G_{N,r} (gcd(r, N) = 1) through x -> r^{-1} x.
//
// With Delta = sqrt(N (N - 4)) and rho = (N - 2 + Delta) / 2 every quantity is
// a ratio of polynomials in rho^N, rho^q whose value is O(1) (or, for trees,
// whose logarithm is O(N log N)). Two backends are provided:
//   * floating, in log domain: everything is divided through by rho^N so no
//     power is ever formed (rho^N overflows double near N = 170);
//   * exact, in Q(rho): the results are rational (resistance, hitting time,
//     Kirchhoff index) or integral (trees, forests) and are checked to be so.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "circres/errors.hpp"
#include "circres/graph_model.hpp"
#include "circres/quadratic_field.hpp"
#include "circres/rational.hpp"

namespace circres {

inline void require_closed_form_order(int n) {
    if (n < 5 || n % 2 == 0)
        throw DomainError("closed forms require odd N >= 5, got N=" + std::to_string(n));
}

inline void require_residue(int n, int q) {
    if (q < 0 || q >= n)
        throw DomainError("residue q=" + std::to_string(q) + " outside 0.." + std::to_string(n - 1));
}

struct RhoConstants {
    int n;
    double delta;    // sqrt(N (N - 4))
    double rho;      // (N - 2 + delta) / 2 > 1
    double log_rho;
};

inline RhoConstants rho_constants(int n) {
    require_closed_form_order(n);
    const double nn = n;
    const double delta = std::sqrt(nn * (nn - 4));
    const double rho = (nn - 2 + delta) / 2;
    return {n, delta, rho, std::log(rho)};
}

namespace detail {

/// {rho^N - 1 + (-1)^q (rho^q - rho^{N-q})} / rho^N
///   = 1 - (-1)^q rho^{-q} + (-1)^q rho^{q-N} - rho^{-N}.
inline double scaled_bracket(const RhoConstants& c, int q) {
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    const double inv_n = std::exp(-c.n * c.log_rho);
    const double inv_q = std::exp(-q * c.log_rho);
    const double inv_nq = std::exp((q - c.n) * c.log_rho);
    return (1.0 - sign * inv_q) + (sign * inv_nq - inv_n);
}

/// (rho^N + 1) / rho^N.
inline double scaled_rho_n_plus_one(const RhoConstants& c) { return 1.0 + std::exp(-c.n * c.log_rho); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Floating backend
// ---------------------------------------------------------------------------

/// R^{(1)} at oriented residue q:
///   2 / (Delta (rho^N + 1)) * {rho^N - 1 + (-1)^q (rho^q - rho^{N-q})}.
inline double resistance_closed(int n, int q) {
    const auto c = rho_constants(n);
    require_residue(n, q);
    if (q == 0) return 0.0;
    return 2.0 / c.delta * detail::scaled_bracket(c, q) / detail::scaled_rho_n_plus_one(c);
}

/// log tau(G_{N,1}) = log[(rho^N + 1)^2 / (N rho^{N-1} (rho + 1)^2)].
inline double log_tree_count_closed(int n) {
    const auto c = rho_constants(n);
    const double log_rho_n_plus_one = n * c.log_rho + std::log1p(std::exp(-n * c.log_rho));
    return 2.0 * log_rho_n_plus_one - (n - 1) * c.log_rho - 2.0 * std::log1p(c.rho) - std::log(double(n));
}

/// F^{(1)}(u | v) = tau R; the float value overflows to inf for large N.
inline double forest_count_closed(int n, int q) {
    require_closed_form_order(n);
    require_residue(n, q);
    if (q == 0) throw DomainError("forest count needs distinct vertices (q != 0)");
    return std::exp(log_tree_count_closed(n) + std::log(resistance_closed(n, q)));
}

/// H^{(1)} = N (N - 3) / (Delta (rho^N + 1)) * {...} = (vol / 2) R.
inline double hitting_time_closed(int n, int q) {
    return 0.5 * n * (n - 3.0) * resistance_closed(n, q);
}

/// Kf(G_{N,1}) = N / (Delta (rho^N + 1)) * {(N-1)(rho^N - 1) + 2 (rho^N - rho) / (rho + 1)}.
inline double kirchhoff_closed(int n) {
    const auto c = rho_constants(n);
    const double inv_n = std::exp(-n * c.log_rho);
    const double inv_n1 = std::exp((1 - n) * c.log_rho);
    const double scaled = (n - 1.0) * (1.0 - inv_n) + 2.0 * (1.0 - inv_n1) / (c.rho + 1.0);
    return n / c.delta * scaled / (1.0 + inv_n);
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Powers rho^0 .. rho^N in Q(rho) for one odd N, shared by the exact formulas.
class ExactClosedForms {
public:
    explicit ExactClosedForms(int n) : n_(n) {
        require_closed_form_order(n);
        powers_.reserve(static_cast<std::size_t>(n) + 1);
        powers_.emplace_back(n, 1);
        const QuadElem rho = QuadElem::rho(n);
        for (int k = 1; k <= n; ++k) powers_.push_back(powers_.back() * rho);
    }

    int n() const { return n_; }
    const QuadElem& rho_pow(int k) const { return powers_.at(static_cast<std::size_t>(k)); }
    QuadElem delta() const { return QuadElem(n_, -(n_ - 2), 2); }  // rho - 1/rho

    /// rho^N - 1 + (-1)^q (rho^q - rho^{N-q})
    QuadElem bracket(int q) const {
        require_residue(n_, q);
        const QuadElem diff = rho_pow(q) - rho_pow(n_ - q);
        return rho_pow(n_) - Rational(1) + (q % 2 == 0 ? diff : -diff);
    }

    Rational resistance(int q) const {
        const QuadElem r = QuadElem(n_, 2) * bracket(q) / (delta() * (rho_pow(n_) + Rational(1)));
        return require_rational(r, "resistance");
    }

    Integer tree_count() const {
        const QuadElem top = (rho_pow(n_) + Rational(1)).pow(2);
        const QuadElem bottom = Rational(n_) * rho_pow(n_ - 1) * (QuadElem::rho(n_) + Rational(1)).pow(2);
        return require_integer(top / bottom, "tree count");
    }

    Integer forest_count(int q) const {
        if (q == 0) throw DomainError("forest count needs distinct vertices (q != 0)");
        const QuadElem pre = QuadElem(n_, 2) * (rho_pow(n_) + Rational(1))
                             / (delta() * Rational(n_) * rho_pow(n_ - 1)
                                * (QuadElem::rho(n_) + Rational(1)).pow(2));
        return require_integer(pre * bracket(q), "forest count");
    }

    Rational hitting_time(int q) const {
        const QuadElem h = Rational(n_ * (n_ - 3)) * bracket(q) / (delta() * (rho_pow(n_) + Rational(1)));
        return require_rational(h, "hitting time");
    }

    Rational kirchhoff() const {
        const QuadElem rho = QuadElem::rho(n_);
        const QuadElem rho_n = rho_pow(n_);
        const QuadElem inner = Rational(n_ - 1) * (rho_n - Rational(1))
                               + QuadElem(n_, 2) * (rho_n - rho) / (rho + Rational(1));
        const QuadElem kf = Rational(n_) * inner / (delta() * (rho_n + Rational(1)));
        return require_rational(kf, "Kirchhoff index");
    }

private:
    Rational require_rational(const QuadElem& x, const char* what) const {
        if (!x.is_rational())
            throw IntegralityError(std::string(what) + " for N=" + std::to_string(n_)
                                   + " has an irrational part: " + x.str());
        return x.a();
    }
    Integer require_integer(const QuadElem& x, const char* what) const {
        const Rational r = require_rational(x, what);
        if (!is_integer(r))
            throw IntegralityError(std::string(what) + " for N=" + std::to_string(n_)
                                   + " is not an integer: " + format_rational(r));
        if (r < 0) throw IntegralityError(std::string(what) + " is negative");
        return r.get_num();
    }

    int n_;
    std::vector<QuadElem> powers_;
};

inline Rational resistance_closed_exact(int n, int q) { return ExactClosedForms(n).resistance(q); }
inline Integer tree_count_closed_exact(int n) { return ExactClosedForms(n).tree_count(); }
inline Integer forest_count_closed_exact(int n, int q) { return ExactClosedForms(n).forest_count(q); }
inline Rational hitting_time_closed_exact(int n, int q) { return ExactClosedForms(n).hitting_time(q); }
inline Rational kirchhoff_closed_exact(int n) { return ExactClosedForms(n).kirchhoff(); }

// ---------------------------------------------------------------------------
// Isomorphism G_{N,r} -> G_{N,1}
// ---------------------------------------------------------------------------

/// x -> s x mod N with s = r^{-1} mod N maps G_{N,r} onto G_{N,1}.
struct DeltaMap {
    int n;
    int r;
    int s;

    static DeltaMap make(int n, int r) {
        if (n < 3) throw DomainError("N must be >= 3");
        const int rr = ((r % n) + n) % n;
        if (std::gcd(rr, n) != 1)
            throw UnsupportedCaseError("no closed form for gcd(r, N) > 1 (r=" + std::to_string(r)
                                       + ", N=" + std::to_string(n) + ")");
        // extended Euclid for the inverse
        long long old_r = rr, cur_r = n, old_s = 1, cur_s = 0;
        while (cur_r != 0) {
            const long long quot = old_r / cur_r;
            std::tie(old_r, cur_r) = std::make_pair(cur_r, old_r - quot * cur_r);
            std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - quot * cur_s);
        }
        const int s = static_cast<int>(((old_s % n) + n) % n);
        return {n, r, s};
    }

    int map_vertex(int x) const {
        check_vertex(x, n);
        return static_cast<int>((static_cast<long long>(s) * x) % n);
    }

    /// min(s q mod N, N - (s q mod N)).
    int reduce(int q) const {
        const int m = static_cast<int>((static_cast<long long>(s) * (((q % n) + n) % n)) % n);
        return std::min(m, n - m);
    }
};

inline int reduce_coprime(int n, int r, int q) { return DeltaMap::make(n, r).reduce(q); }

/// For a spec with a closed form, the deleted class r; throws otherwise with
/// the violated precondition in the message.
inline int closed_form_class(const CirculantSpec& spec) {
    if (!spec.is_deletion() || !spec.is_unweighted())
        throw UnsupportedCaseError("closed forms require an unweighted single-class deletion");
    const auto r = spec.single_deleted_class();
    if (!r) throw UnsupportedCaseError("closed forms require exactly one deleted distance class");
    require_closed_form_order(spec.n());
    DeltaMap::make(spec.n(), *r);
    return *r;
}

// ---------------------------------------------------------------------------
// Root-of-unity sum behind the resistance formula
// ---------------------------------------------------------------------------

/// S_m(rho) = sum_{j=0}^{N-1} omega^{jm} / (rho + omega^j), omega = e^{2 pi i / N},
/// by direct summation in `Real`. For m != 0 mod N the sum is of order
/// rho^{m-1-N} while its terms are of order 1/rho, so the default 100-digit
/// type is needed to resolve it; it is adequate while N log10(rho) < ~85.
template <typename Real = boost::multiprecision::cpp_bin_float_100>
std::complex<double> root_of_unity_sum(int n, long long m, double rho) {
    if (n < 1 || n % 2 == 0) throw DomainError("root-of-unity sum requires odd N");
    if (!(rho > 0)) throw DomainError("root-of-unity sum requires rho > 0");
    const long long mbar = ((m % n) + n) % n;
    const Real two_pi = boost::math::constants::two_pi<Real>();
    // Powers of omega by repeated multiplication; the drift is ~N ulps of Real.
    std::vector<Real> c(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
    const Real c1 = cos(two_pi / n), s1 = sin(two_pi / n);
    c[0] = 1;
    s[0] = 0;
    for (int j = 1; j < n; ++j) {
        c[j] = c[j - 1] * c1 - s[j - 1] * s1;
        s[j] = s[j - 1] * c1 + c[j - 1] * s1;
    }
    const Real r = rho;
    Real re = 0, im = 0;
    for (int j = 0; j < n; ++j) {
        const std::size_t jm = static_cast<std::size_t>((j * mbar) % n);
        // (c_m + i s_m) / (rho + c + i s)
        const Real a = r + c[j];
        const Real inv = 1 / (a * a + s[j] * s[j]);
        re += (c[jm] * a + s[jm] * s[j]) * inv;
        im += (s[jm] * a - c[jm] * s[j]) * inv;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

/// Closed evaluation: N rho^{N-1} / (rho^N + 1) for mbar = 0, else
/// -N (-1)^mbar rho^{mbar-1} / (rho^N + 1).
inline double root_of_unity_sum_closed(int n, long long m, double rho) {
    if (n < 1 || n % 2 == 0) throw DomainError("root-of-unity sum requires odd N");
    if (!(rho > 0)) throw DomainError("root-of-unity sum requires rho > 0");
    const long long mbar = ((m % n) + n) % n;
    const double denom = std::pow(rho, n) + 1.0;
    if (mbar == 0) return n * std::pow(rho, n - 1) / denom;
    const double sign = (mbar % 2 == 0) ? 1.0 : -1.0;
    return -n * sign * std::pow(rho, static_cast<double>(mbar - 1)) / denom;
}

// ---------------------------------------------------------------------------
// Leading-order asymptotics
// ---------------------------------------------------------------------------

struct AsymptoticPredictors {
    double rho_approx;        // N - 2 - 1/N
    double resistance_limit;  // 2 / N
    double kirchhoff_approx;  // N (N - 1) / Delta
    double tree_ratio;        // tau(G_{N,1}) / N^{N-2}
    double tree_ratio_limit;  // e^{-2}
};

inline AsymptoticPredictors asymptotic_predictors(int n) {
    const auto c = rho_constants(n);
    const double nn = n;
    return {
        nn - 2.0 - 1.0 / nn,
        2.0 / nn,
        nn * (nn - 1.0) / c.delta,
        std::exp(log_tree_count_closed(n) - (nn - 2.0) * std::log(nn)),
        std::exp(-2.0),
    };
}

}  // namespace circres
