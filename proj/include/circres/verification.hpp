#pragma once

// Cross-method verification: for each spec, every invariant is computed by
// the oracle, spectral and (where applicable) closed-form paths and compared
// against per-quantity tolerances.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "circres/closed_form.hpp"
#include "circres/detail/parallel.hpp"
#include "circres/graph_model.hpp"
#include "circres/oracles.hpp"
#include "circres/report.hpp"
#include "circres/spectral.hpp"

namespace circres {

/// Pass/fail thresholds; defaults are the acceptance tolerances.
struct Tolerances {
    double resistance_rel = 1e-9;
    double hitting_rel = 1e-9;
    double kirchhoff_rel = 1e-9;
    double tree_rel = 1e-9;
    double forest_rel = 1e-9;
    double eigen_rel = 1e-12;
};

/// Exact oracles are run for every case, so verification is limited to desk scale.
inline constexpr int kVerifyMaxN = 31;

struct VerificationCase {
    json spec;
    std::string quantity;
    std::optional<int> u, v, q;
    json values = json::object();  // method -> value
    double max_abs_dev = 0;
    double max_rel_dev = 0;
    bool pass = true;
    std::string note;

    /// Records `value` against `reference`; fails when the relative deviation exceeds tol.
    void compare(const std::string& method, long double value, long double reference, double tol) {
        values[method] = static_cast<double>(value);
        const long double abs_dev = std::abs(value - reference);
        const long double rel_dev = reference != 0 ? abs_dev / std::abs(reference) : abs_dev;
        max_abs_dev = std::max(max_abs_dev, static_cast<double>(abs_dev));
        max_rel_dev = std::max(max_rel_dev, static_cast<double>(rel_dev));
        if (!(rel_dev <= tol)) fail(method + " deviates");
    }

    void compare_exact(const std::string& method, const Rational& value, const Rational& reference) {
        values[method] = format_rational(value);
        if (value != reference) {
            const double abs_dev = std::abs(to_double(value - reference));
            max_abs_dev = std::max(max_abs_dev, abs_dev);
            max_rel_dev = std::max(max_rel_dev, reference != 0 ? abs_dev / std::abs(to_double(reference)) : abs_dev);
            fail(method + " differs exactly");
        }
    }

    void fail(const std::string& why) {
        pass = false;
        note += (note.empty() ? "" : "; ") + why;
    }
};

struct VerificationSummary {
    std::size_t specs = 0;
    std::size_t disconnected_specs = 0;
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    double worst_abs_dev = 0;
    double worst_rel_dev = 0;
};

struct VerificationReport {
    std::vector<VerificationCase> cases;
    VerificationSummary summary;
    Tolerances tolerances;

    bool all_pass() const { return summary.failed == 0; }
};

namespace detail {

inline VerificationCase make_case(const CirculantSpec& spec, const char* quantity) {
    VerificationCase c;
    c.spec = spec_to_json(spec);
    c.quantity = quantity;
    return c;
}

inline void set_pair(VerificationCase& c, int u, int v, int n) {
    c.u = u;
    c.v = v;
    c.q = oriented_residue(u, v, n);
}

inline std::vector<VerificationCase> verify_disconnected(const CirculantSpec& spec) {
    auto c = make_case(spec, "connectivity");
    c.note = "disconnected";
    const bool by_gcd = connected_by_gcd(spec);
    const bool by_spectrum = connected_by_spectrum(spec);
    c.values["gcd_connected"] = by_gcd;
    c.values["spectral_connected"] = by_spectrum;
    if (spec.is_unweighted() && by_gcd != by_spectrum) c.fail("connectivity criteria disagree");
    const Rational tau = tree_count_oracle(spec);
    c.values["oracle_trees"] = format_rational(tau);
    if (tau != 0) c.fail("oracle tree count is nonzero");
    const auto log_tau = tree_count_spectral(spec).log_value;
    if (!(std::isinf(log_tau) && log_tau < 0)) c.fail("spectral log tree count is finite");
    try {
        resistance_spectral(spec, 0, 1);
        c.fail("spectral resistance did not signal disconnection");
    } catch (const DisconnectedGraphError&) {
    }
    try {
        resistance_oracle_exact(spec, 0, 1);
        c.fail("oracle resistance did not signal disconnection");
    } catch (const DisconnectedGraphError&) {
    }
    return {c};
}

}  // namespace detail

/// Every cross-method case for one spec.
inline std::vector<VerificationCase> verify_spec(const CirculantSpec& spec, const Tolerances& tol) {
    const int n = spec.n();
    if (n > kVerifyMaxN)
        throw DomainError("verification runs exact oracles and is limited to N <= " + std::to_string(kVerifyMaxN));
    if (!is_connected(spec)) return detail::verify_disconnected(spec);

    std::vector<VerificationCase> cases;

    std::optional<DeltaMap> iso;
    std::optional<ExactClosedForms> exact;
    std::string closed_note;
    try {
        const int r = closed_form_class(spec);
        iso = DeltaMap::make(n, r);
        exact.emplace(n);
    } catch (const std::exception& e) {
        closed_note = std::string("closed forms skipped: ") + e.what();
    }
    auto annotate = [&](VerificationCase& c) {
        if (!closed_note.empty()) c.note = closed_note;
    };

    // Eigenvalues: symmetry, and the deleted-class form for odd N.
    const auto spectrum = eigenvalues<long double>(spec);
    {
        auto c = detail::make_case(spec, "eigenvalues");
        long double worst_sym = 0;
        for (int j = 1; j < n; ++j)
            worst_sym = std::max(worst_sym, std::abs(spectrum.eigenvalues[j] - spectrum.eigenvalues[n - j]));
        c.values["symmetry_max_abs"] = static_cast<double>(worst_sym);
        if (worst_sym > tol.eigen_rel) c.fail("eigenvalue symmetry broken");
        if (spec.is_deletion() && n % 2 == 1) {
            const auto alt = eigenvalues_deletion_form<long double>(spec);
            long double worst = 0;
            for (int j = 0; j < n; ++j) {
                const long double scale = std::max<long double>(1, std::abs(spectrum.eigenvalues[j]));
                worst = std::max(worst, std::abs(alt.eigenvalues[j] - spectrum.eigenvalues[j]) / scale);
            }
            c.values["deletion_form_max_rel"] = static_cast<double>(worst);
            c.max_rel_dev = static_cast<double>(worst);
            if (worst > tol.eigen_rel) c.fail("deletion-form eigenvalues disagree");
        }
        cases.push_back(std::move(c));
    }

    // Oracle data: ground at 0, so pair (N - q, 0) has oriented residue q.
    const auto r_oracle = resistance_oracle_exact_all(spec, 0);
    const auto h_to_zero = hitting_time_oracle_all(spec, 0);
    const Rational tau = tree_count_oracle(spec);
    const Rational vol = volume(spec);

    for (int q = 1; q < n; ++q) {
        const int u = n - q;
        const int v = 0;
        const Rational& r_ref = r_oracle[u];
        const int delta_q = iso ? iso->reduce(q) : 0;

        auto rc = detail::make_case(spec, "resistance");
        detail::set_pair(rc, u, v, n);
        rc.values["oracle"] = format_rational(r_ref);
        rc.compare("spectral", resistance_from_spectrum(spectrum, q), to_long_double(r_ref), tol.resistance_rel);
        if (iso) {
            rc.compare("closed", resistance_closed(n, delta_q), to_long_double(r_ref), tol.resistance_rel);
            rc.compare_exact("closed_exact", exact->resistance(delta_q), r_ref);
        }
        annotate(rc);
        cases.push_back(std::move(rc));

        auto fc = detail::make_case(spec, "forests");
        detail::set_pair(fc, u, v, n);
        const Rational f_ref = forest_count_oracle(spec, u, v);
        fc.values["oracle"] = format_rational(f_ref);
        fc.compare_exact("tau_times_R", tau * r_ref, f_ref);
        fc.compare("spectral", std::exp(log_tree_count_from_spectrum(spectrum)) * resistance_from_spectrum(spectrum, q),
                   to_long_double(f_ref), tol.forest_rel);
        if (iso) fc.compare_exact("closed_exact", Rational(exact->forest_count(delta_q)), f_ref);
        annotate(fc);
        cases.push_back(std::move(fc));

        auto hc = detail::make_case(spec, "hitting");
        detail::set_pair(hc, u, v, n);
        const Rational& h_uv = h_to_zero[u];
        const Rational h_vu = hitting_time_oracle(spec, v, u);
        hc.values["oracle"] = format_rational(h_uv);
        hc.values["oracle_reverse"] = format_rational(h_vu);
        hc.compare_exact("commute_identity", h_uv + h_vu, vol * r_ref);
        hc.compare_exact("swap_symmetry", h_vu, h_uv);
        const long double half_vol_r = to_long_double(vol) / 2 * resistance_from_spectrum(spectrum, q);
        hc.compare("spectral", half_vol_r, to_long_double(h_uv), tol.hitting_rel);
        if (iso) {
            hc.compare("closed", hitting_time_closed(n, delta_q), to_long_double(h_uv), tol.hitting_rel);
            hc.compare_exact("closed_exact", exact->hitting_time(delta_q), h_uv);
        }
        annotate(hc);
        cases.push_back(std::move(hc));
    }

    {
        auto tc = detail::make_case(spec, "trees");
        tc.values["oracle"] = format_rational(tau);
        const long double log_tau = log_tree_count_from_spectrum(spectrum);
        tc.compare("spectral", std::exp(log_tau), to_long_double(tau), tol.tree_rel);
        if (spec.is_unweighted()) {
            const auto rounded = detail::certify_tree_integer(spectrum);
            if (rounded) tc.compare_exact("spectral_rounded", Rational(*rounded), tau);
        }
        if (iso) tc.compare_exact("closed_exact", Rational(exact->tree_count()), tau);
        annotate(tc);
        cases.push_back(std::move(tc));
    }

    {
        auto kc = detail::make_case(spec, "kirchhoff");
        Rational pairwise = 0;
        for (int u = 1; u < n; ++u) pairwise += r_oracle[u];
        pairwise *= Rational(n, 2);
        kc.values["oracle_pairwise"] = format_rational(pairwise);
        kc.compare("spectral", kirchhoff_from_spectrum(spectrum), to_long_double(pairwise), tol.kirchhoff_rel);
        if (iso) {
            kc.compare("closed", kirchhoff_closed(n), to_long_double(pairwise), tol.kirchhoff_rel);
            kc.compare_exact("closed_exact", exact->kirchhoff(), pairwise);
        }
        annotate(kc);
        cases.push_back(std::move(kc));
    }
    return cases;
}

/// Runs verify_spec over all specs on a worker pool; cases keep spec order.
inline VerificationReport run_verification(const std::vector<CirculantSpec>& specs, const Tolerances& tol,
                                           unsigned threads = 0) {
    std::vector<std::vector<VerificationCase>> per_spec(specs.size());
    detail::parallel_for(specs.size(), threads, [&](std::size_t i) { per_spec[i] = verify_spec(specs[i], tol); });

    VerificationReport report;
    report.tolerances = tol;
    report.summary.specs = specs.size();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!per_spec[i].empty() && per_spec[i].front().quantity == "connectivity") ++report.summary.disconnected_specs;
        for (auto& c : per_spec[i]) {
            ++report.summary.total;
            (c.pass ? report.summary.passed : report.summary.failed)++;
            report.summary.worst_abs_dev = std::max(report.summary.worst_abs_dev, c.max_abs_dev);
            report.summary.worst_rel_dev = std::max(report.summary.worst_rel_dev, c.max_rel_dev);
            report.cases.push_back(std::move(c));
        }
    }
    return report;
}

inline json case_to_json(const VerificationCase& c) {
    json j;
    j["spec"] = c.spec;
    j["quantity"] = c.quantity;
    if (c.q) {
        j["u"] = *c.u;
        j["v"] = *c.v;
        j["q"] = *c.q;
    }
    j["values"] = c.values;
    j["max_abs_dev"] = c.max_abs_dev;
    j["max_rel_dev"] = c.max_rel_dev;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json report_to_json(const VerificationReport& r) {
    json j;
    j["summary"] = {{"specs", r.summary.specs},
                    {"disconnected_specs", r.summary.disconnected_specs},
                    {"total", r.summary.total},
                    {"passed", r.summary.passed},
                    {"failed", r.summary.failed},
                    {"worst_abs_dev", r.summary.worst_abs_dev},
                    {"worst_rel_dev", r.summary.worst_rel_dev},
                    {"all_pass", r.all_pass()}};
    j["tolerances"] = {{"resistance_rel", r.tolerances.resistance_rel},
                       {"hitting_rel", r.tolerances.hitting_rel},
                       {"kirchhoff_rel", r.tolerances.kirchhoff_rel},
                       {"tree_rel", r.tolerances.tree_rel},
                       {"forest_rel", r.tolerances.forest_rel},
                       {"eigen_rel", r.tolerances.eigen_rel}};
    j["cases"] = json::array();
    for (const auto& c : r.cases) j["cases"].push_back(case_to_json(c));
    return j;
}

}  // namespace circres
