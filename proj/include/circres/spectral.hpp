#pragma once

// Laplacian spectra of circulant graphs and every invariant that follows from
// eigenvalue data alone: resistance, spanning trees, two-component forests,
// hitting times and the Kirchhoff index.
//
// All functions are templated on the floating type. `double` is the default;
// `long double` is used where an absolute 1e-6 check on values ~1e10 is needed.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <type_traits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "circres/detail/kahan.hpp"
#include "circres/errors.hpp"
#include "circres/graph_model.hpp"
#include "circres/rational.hpp"

namespace circres {

template <std::floating_point Real = double>
struct Spectrum {
    int n = 0;
    std::vector<Real> eigenvalues;  // lambda_0 .. lambda_{N-1}
    Real min_positive = 0;          // min over j >= 1
    bool connected = false;
};

namespace detail {

/// 1 - cos(2 pi m / N) for m in 0..N-1, evaluated as 2 sin^2(pi m / N) and
/// mirrored so entries m and N - m are bitwise identical.
template <std::floating_point Real>
std::vector<Real> one_minus_cos_table(int n) {
    std::vector<Real> t(static_cast<std::size_t>(n));
    const Real pi = std::numbers::pi_v<Real>;
    for (int m = 0; m <= n / 2; ++m) {
        const Real s = std::sin(pi * static_cast<Real>(m) / static_cast<Real>(n));
        t[m] = 2 * s * s;
        t[(n - m) % n] = t[m];
    }
    return t;
}

template <std::floating_point Real>
std::vector<Real> cos_table(int n) {
    std::vector<Real> t(static_cast<std::size_t>(n));
    const Real two_pi = 2 * std::numbers::pi_v<Real>;
    for (int m = 0; m <= n / 2; ++m) {
        t[m] = std::cos(two_pi * static_cast<Real>(m) / static_cast<Real>(n));
        t[(n - m) % n] = t[m];
    }
    return t;
}

inline int mul_mod(int a, int b, int n) {
    return static_cast<int>((static_cast<long long>(a) * b) % n);
}

template <std::floating_point Real>
void finish_spectrum(Spectrum<Real>& s) {
    s.min_positive = std::numeric_limits<Real>::infinity();
    for (int j = 1; j < s.n; ++j) s.min_positive = std::min(s.min_positive, s.eigenvalues[j]);
    s.connected = s.min_positive > static_cast<Real>(connectivity_tolerance(s.n));
}

template <std::floating_point Real>
void require_connected(const Spectrum<Real>& s, const char* what) {
    if (!s.connected)
        throw DisconnectedGraphError(std::string(what) + ": graph is disconnected (infinite resistance)");
}

}  // namespace detail

/// lambda_j = sum_k 2 w(k) (1 - cos(2 pi j k / N)) + [N even] w(N/2) (1 - cos(pi j)).
template <std::floating_point Real = double>
Spectrum<Real> eigenvalues(const CirculantSpec& spec) {
    const int n = spec.n();
    const auto table = detail::one_minus_cos_table<Real>(n);
    std::vector<std::pair<int, Real>> terms;
    for (int k : spec.support()) {
        const Real mult = (2 * k == n) ? 1 : 2;
        terms.emplace_back(k, mult * static_cast<Real>(to_long_double(spec.weight(k))));
    }
    Spectrum<Real> s;
    s.n = n;
    s.eigenvalues.assign(static_cast<std::size_t>(n), Real(0));
    for (int j = 1; j <= n / 2; ++j) {
        detail::CompensatedSum<Real> acc;
        for (const auto& [k, w] : terms) acc += w * table[detail::mul_mod(j, k, n)];
        s.eigenvalues[j] = acc.value();
        s.eigenvalues[n - j] = s.eigenvalues[j];
    }
    detail::finish_spectrum(s);
    return s;
}

/// Deleted-class form for odd N: lambda_j = N - 2|S| + 2 sum_{k in S} cos(2 pi j k / N).
template <std::floating_point Real = double>
Spectrum<Real> eigenvalues_deletion_form(const CirculantSpec& spec) {
    if (!spec.is_deletion()) throw UnsupportedCaseError("deletion form needs a deleted-class spec");
    const int n = spec.n();
    if (n % 2 == 0) throw DomainError("deletion form of the spectrum requires odd N");
    const auto& deleted = *spec.deleted();
    const auto table = detail::cos_table<Real>(n);
    Spectrum<Real> s;
    s.n = n;
    s.eigenvalues.assign(static_cast<std::size_t>(n), Real(0));
    const Real base = static_cast<Real>(n) - 2 * static_cast<Real>(deleted.size());
    for (int j = 1; j <= n / 2; ++j) {
        detail::CompensatedSum<Real> acc;
        acc += base;
        for (int k : deleted) acc += 2 * table[detail::mul_mod(j, k, n)];
        s.eigenvalues[j] = acc.value();
        s.eigenvalues[n - j] = s.eigenvalues[j];
    }
    detail::finish_spectrum(s);
    return s;
}

/// Effective resistance at oriented residue q from a precomputed spectrum.
template <std::floating_point Real>
Real resistance_from_spectrum(const Spectrum<Real>& s, int q) {
    detail::require_connected(s, "resistance");
    const int n = s.n;
    q = ((q % n) + n) % n;
    if (q == 0) return 0;
    const auto table = detail::one_minus_cos_table<Real>(n);
    detail::CompensatedSum<Real> acc;
    for (int j = 1; j < n; ++j) acc += table[detail::mul_mod(j, q, n)] / s.eigenvalues[j];
    return 2 * acc.value() / static_cast<Real>(n);
}

/// R(u, v) = (2/N) sum_{j>=1} (1 - cos(2 pi j q / N)) / lambda_j.
template <std::floating_point Real = double>
Real resistance_spectral(const CirculantSpec& spec, int u, int v) {
    const int q = oriented_residue(u, v, spec.n());
    return resistance_from_spectrum(eigenvalues<Real>(spec), q);
}

template <std::floating_point Real = double>
struct TreeCount {
    Real log_value = 0;                // log tau; -inf for disconnected graphs
    std::optional<Integer> rounded;    // exact count when it can be certified
};

namespace detail {

/// Nearest integer to (1/N) prod lambda_j when the extended-precision product
/// is accurate to well under 1/2 and lands within max(1e-6, error bound) of it.
inline std::optional<Integer> certify_tree_integer(const Spectrum<long double>& s) {
    if (!s.connected) return Integer(0);
    const int n = s.n;
    if (n > 60) return std::nullopt;
    long double product = 1.0L / n;
    for (int j = 1; j < n; ++j) product *= s.eigenvalues[j];
    const long double err = product * (4.0L * n + 8.0L) * LDBL_EPSILON;
    if (err >= 0.25L) return std::nullopt;
    const long double nearest = std::nearbyint(product);
    if (std::abs(product - nearest) > std::max(1e-6L, err)) return std::nullopt;
    return Integer(std::to_string(std::llround(nearest)));
}

}  // namespace detail

/// log tau = -log N + sum_{j>=1} log lambda_j; -inf when disconnected.
template <std::floating_point Real>
Real log_tree_count_from_spectrum(const Spectrum<Real>& s) {
    if (!s.connected) return -std::numeric_limits<Real>::infinity();
    detail::CompensatedSum<Real> log_sum;
    log_sum += -std::log(static_cast<Real>(s.n));
    for (int j = 1; j < s.n; ++j) log_sum += std::log(s.eigenvalues[j]);
    return log_sum.value();
}

/// Log-domain tree count. For unweighted specs with N <= 60 the exact count is
/// also reported when it can be certified from a long double product.
template <std::floating_point Real = double>
TreeCount<Real> tree_count_spectral(const CirculantSpec& spec) {
    const auto s = eigenvalues<Real>(spec);
    TreeCount<Real> out;
    out.log_value = log_tree_count_from_spectrum(s);
    if (spec.is_unweighted()) {
        if constexpr (std::is_same_v<Real, long double>)
            out.rounded = detail::certify_tree_integer(s);
        else
            out.rounded = detail::certify_tree_integer(eigenvalues<long double>(spec));
    }
    return out;
}

/// F(u | v) = tau * R(u, v).
template <std::floating_point Real = double>
Real forest_count_spectral(const CirculantSpec& spec, int u, int v) {
    const int q = oriented_residue(u, v, spec.n());
    if (q == 0) throw DomainError("forest count needs distinct vertices");
    const auto s = eigenvalues<Real>(spec);
    detail::require_connected(s, "forest count");
    const Real r = resistance_from_spectrum(s, q);
    return std::exp(log_tree_count_from_spectrum(s)) * r;
}

/// H(u, v) = (vol / 2) R(u, v), using the swap automorphism x -> u + v - x.
template <std::floating_point Real = double>
Real hitting_time_spectral(const CirculantSpec& spec, int u, int v) {
    const int q = oriented_residue(u, v, spec.n());
    const auto s = eigenvalues<Real>(spec);
    detail::require_connected(s, "hitting time");
    if (q == 0) return 0;
    const Real half_volume = static_cast<Real>(to_long_double(volume(spec))) / 2;
    return half_volume * resistance_from_spectrum(s, q);
}

template <std::floating_point Real>
Real kirchhoff_from_spectrum(const Spectrum<Real>& s) {
    detail::require_connected(s, "Kirchhoff index");
    detail::CompensatedSum<Real> acc;
    for (int j = 1; j < s.n; ++j) acc += 1 / s.eigenvalues[j];
    return static_cast<Real>(s.n) * acc.value();
}

/// Kf = N sum_{j>=1} 1 / lambda_j.
template <std::floating_point Real = double>
Real kirchhoff_spectral(const CirculantSpec& spec) {
    return kirchhoff_from_spectrum(eigenvalues<Real>(spec));
}

/// Kf = (N/2) sum_{q=1}^{N-1} R(q), the pairwise-distance route.
template <std::floating_point Real = double>
Real kirchhoff_pairwise_spectral(const CirculantSpec& spec) {
    const auto s = eigenvalues<Real>(spec);
    detail::CompensatedSum<Real> acc;
    for (int q = 1; q < s.n; ++q) acc += resistance_from_spectrum(s, q);
    return static_cast<Real>(s.n) / 2 * acc.value();
}

}  // namespace circres
