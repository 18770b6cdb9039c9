#pragma once

// Request -> InvariantResult records, shared by the CLI `compute` and `eig`
// subcommands.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "circres/closed_form.hpp"
#include "circres/errors.hpp"
#include "circres/graph_model.hpp"
#include "circres/oracles.hpp"
#include "circres/report.hpp"
#include "circres/spectral.hpp"

namespace circres {

struct ComputeRequest {
    CirculantSpec spec;
    Quantity quantity = Quantity::resistance;
    Method method = Method::spectral;
    std::optional<int> u = std::nullopt;
    std::optional<int> v = std::nullopt;
    std::optional<int> q = std::nullopt;
    bool exact = false;
    WalkConfig walk = {};
};

/// Oracles build dense N x N matrices; beyond this they are refused.
inline constexpr int kOracleMaxN = 400;

namespace detail {

inline bool needs_pair(Quantity q) {
    return q == Quantity::resistance || q == Quantity::forests || q == Quantity::hitting;
}

inline std::vector<std::pair<int, int>> requested_pairs(const ComputeRequest& req) {
    const int n = req.spec.n();
    const int u = req.u.value_or(0);
    check_vertex(u, n);
    if (req.v && req.q) throw DomainError("give either --v or --q, not both");
    if (req.v) {
        check_vertex(*req.v, n);
        return {{u, *req.v}};
    }
    if (req.q) {
        if (*req.q < 0 || *req.q >= n) throw DomainError("q must lie in 0..N-1");
        return {{u, (u + *req.q) % n}};
    }
    std::vector<std::pair<int, int>> out;
    for (int d = 1; d < n; ++d) out.emplace_back(u, (u + d) % n);
    return out;
}

inline json number_or_null(long double x) {
    if (!std::isfinite(x)) return nullptr;
    return static_cast<double>(x);
}

}  // namespace detail

inline std::vector<InvariantResult> compute_invariants(const ComputeRequest& req) {
    const CirculantSpec& spec = req.spec;
    const int n = spec.n();
    std::vector<InvariantResult> out;

    if (req.exact && req.method != Method::closed && req.method != Method::oracle)
        throw UnsupportedCaseError("--exact is only available for the closed and oracle methods");
    if (req.method == Method::monte_carlo && req.quantity != Quantity::hitting)
        throw UnsupportedCaseError("the monte-carlo method only estimates hitting times");
    if (req.method == Method::oracle && n > kOracleMaxN)
        throw DomainError("dense oracles are limited to N <= " + std::to_string(kOracleMaxN));

    // Closed forms: validates odd N >= 5, single class, gcd(r, N) = 1.
    std::optional<DeltaMap> iso;
    if (req.method == Method::closed) iso = DeltaMap::make(n, closed_form_class(spec));

    if (req.quantity == Quantity::eigenvalues) {
        if (req.method != Method::spectral && req.method != Method::closed)
            throw UnsupportedCaseError("eigenvalues are available from the spectral and closed methods only");
        const auto start = std::chrono::steady_clock::now();
        const auto s = req.method == Method::closed ? eigenvalues_deletion_form(spec) : eigenvalues(spec);
        json arr = json::array();
        for (double x : s.eigenvalues) arr.push_back(x);
        InvariantResult r{spec, req.quantity, req.method, Representation::floating, arr, json::object()};
        r.metadata["connected"] = s.connected;
        r.metadata["runtime_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
        return out;
    }

    if (!is_connected(spec))
        throw DisconnectedGraphError("graph " + spec.describe() + " is disconnected (tau = 0, resistance infinite)");

    std::optional<ExactClosedForms> exact_forms;
    if (iso && req.exact) exact_forms.emplace(n);

    auto emit = [&](Representation rep, json value, json meta, std::chrono::steady_clock::time_point start) {
        meta["runtime_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(InvariantResult{spec, req.quantity, req.method, rep, std::move(value), std::move(meta)});
    };

    if (!detail::needs_pair(req.quantity)) {
        const auto start = std::chrono::steady_clock::now();
        json meta = json::object();
        if (req.quantity == Quantity::trees) {
            switch (req.method) {
                case Method::closed:
                    if (exact_forms)
                        emit(Representation::rational, format_rational(Rational(exact_forms->tree_count())), meta, start);
                    else
                        emit(Representation::log, log_tree_count_closed(n), meta, start);
                    return out;
                case Method::spectral: {
                    const auto t = tree_count_spectral(spec);
                    if (t.rounded) meta["rounded"] = t.rounded->get_str();
                    emit(Representation::log, static_cast<double>(t.log_value), meta, start);
                    return out;
                }
                case Method::oracle:
                    emit(Representation::rational, format_rational(tree_count_oracle(spec)), meta, start);
                    return out;
                default: break;
            }
        } else {  // kirchhoff
            switch (req.method) {
                case Method::closed:
                    if (exact_forms)
                        emit(Representation::rational, format_rational(exact_forms->kirchhoff()), meta, start);
                    else
                        emit(Representation::floating, kirchhoff_closed(n), meta, start);
                    return out;
                case Method::spectral:
                    emit(Representation::floating, kirchhoff_spectral(spec), meta, start);
                    return out;
                case Method::oracle: {
                    Rational sum = 0;
                    const auto rs = resistance_oracle_exact_all(spec, 0);
                    for (const auto& r : rs) sum += r;
                    emit(Representation::rational, format_rational(sum * Rational(n, 2)), meta, start);
                    return out;
                }
                default: break;
            }
        }
        throw UnsupportedCaseError("method not available for this quantity");
    }

    std::optional<Spectrum<long double>> spectrum;
    if (req.method == Method::spectral) spectrum = eigenvalues<long double>(spec);

    for (const auto& [u, v] : detail::requested_pairs(req)) {
        const auto start = std::chrono::steady_clock::now();
        const int q = oriented_residue(u, v, n);
        json meta = {{"q", q}, {"u", u}, {"v", v}};
        if (req.quantity == Quantity::forests && u == v) throw DomainError("forest count needs distinct vertices");

        switch (req.method) {
            case Method::closed: {
                const int d = iso->reduce(q);
                if (iso->r != 1) meta["delta_q"] = d;
                if (req.quantity == Quantity::resistance) {
                    if (exact_forms)
                        emit(Representation::rational, format_rational(exact_forms->resistance(d)), meta, start);
                    else
                        emit(Representation::floating, resistance_closed(n, d), meta, start);
                } else if (req.quantity == Quantity::hitting) {
                    if (exact_forms)
                        emit(Representation::rational, format_rational(exact_forms->hitting_time(d)), meta, start);
                    else
                        emit(Representation::floating, hitting_time_closed(n, d), meta, start);
                } else {
                    if (exact_forms) {
                        emit(Representation::rational, format_rational(Rational(exact_forms->forest_count(d))), meta,
                             start);
                    } else {
                        const double value = forest_count_closed(n, d);
                        if (std::isfinite(value))
                            emit(Representation::floating, value, meta, start);
                        else
                            emit(Representation::log, log_tree_count_closed(n) + std::log(resistance_closed(n, d)),
                                 meta, start);
                    }
                }
                break;
            }
            case Method::spectral: {
                const long double r = resistance_from_spectrum(*spectrum, q);
                if (req.quantity == Quantity::resistance) {
                    emit(Representation::floating, static_cast<double>(r), meta, start);
                } else if (req.quantity == Quantity::hitting) {
                    emit(Representation::floating, static_cast<double>(to_long_double(volume(spec)) / 2 * r), meta,
                         start);
                } else {
                    const long double log_f = log_tree_count_from_spectrum(*spectrum) + std::log(r);
                    const long double value = std::exp(log_f);
                    if (std::isfinite(static_cast<double>(value)))
                        emit(Representation::floating, static_cast<double>(value), meta, start);
                    else
                        emit(Representation::log, static_cast<double>(log_f), meta, start);
                }
                break;
            }
            case Method::oracle: {
                if (req.quantity == Quantity::resistance) {
                    const auto r = resistance_oracle(spec, u, v);
                    if (r.exact)
                        emit(Representation::rational, format_rational(*r.exact), meta, start);
                    else
                        emit(Representation::floating, detail::number_or_null(r.value), meta, start);
                } else if (req.quantity == Quantity::hitting) {
                    emit(Representation::rational, format_rational(hitting_time_oracle(spec, u, v)), meta, start);
                } else {
                    emit(Representation::rational, format_rational(forest_count_oracle(spec, u, v)), meta, start);
                }
                break;
            }
            case Method::monte_carlo: {
                const auto mc = hitting_time_monte_carlo(spec, u, v, req.walk);
                meta["seed"] = mc.seed;
                meta["walks"] = mc.walks;
                meta["stderr"] = mc.stderr_;
                meta["truncated"] = mc.truncated;
                emit(Representation::floating, mc.mean, meta, start);
                break;
            }
        }
    }
    return out;
}

}  // namespace circres
