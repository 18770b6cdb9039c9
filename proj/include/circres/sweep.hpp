#pragma once

// Large-N sweeps of scaled G_{N,1} quantities against their limits, all from
// the log-domain closed forms.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circres/closed_form.hpp"
#include "circres/detail/parallel.hpp"
#include "circres/errors.hpp"
#include "circres/report.hpp"

namespace circres {

enum class SweepQuantity { tree_ratio, resistance_scaled, kirchhoff_scaled, rho_gap };

inline std::string_view to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::tree_ratio: return "tree-ratio";
        case SweepQuantity::resistance_scaled: return "resistance-scaled";
        case SweepQuantity::kirchhoff_scaled: return "kirchhoff-scaled";
        case SweepQuantity::rho_gap: return "rho-gap";
    }
    return "?";
}

inline SweepQuantity parse_sweep_quantity(std::string_view s) {
    for (auto q : {SweepQuantity::tree_ratio, SweepQuantity::resistance_scaled, SweepQuantity::kirchhoff_scaled,
                   SweepQuantity::rho_gap})
        if (to_string(q) == s) return q;
    throw DomainError("unknown sweep quantity '" + std::string(s)
                      + "' (expected tree-ratio, resistance-scaled, kirchhoff-scaled or rho-gap)");
}

struct SweepRow {
    int n = 0;
    std::optional<int> q;
    double value = 0;
    double limit = 0;
    double deviation = 0;  // value - limit
};

struct SweepTable {
    SweepQuantity quantity;
    std::vector<SweepRow> rows;
    std::size_t skipped_even = 0;
};

/// One row per odd N in [n_min, n_max] stepping by `step`:
///   tree-ratio         tau(G_{N,1}) / N^{N-2}  -> e^{-2}
///   resistance-scaled  N R(q) / 2              -> 1
///   kirchhoff-scaled   Kf / N                  -> 1
///   rho-gap            (N - 2 - 1/N) - rho     -> 0
inline SweepRow sweep_row(SweepQuantity quantity, int n, int q) {
    SweepRow row;
    row.n = n;
    switch (quantity) {
        case SweepQuantity::tree_ratio: {
            const auto p = asymptotic_predictors(n);
            row.value = p.tree_ratio;
            row.limit = p.tree_ratio_limit;
            break;
        }
        case SweepQuantity::resistance_scaled:
            row.q = q;
            row.value = n * resistance_closed(n, q) / 2.0;
            row.limit = 1.0;
            break;
        case SweepQuantity::kirchhoff_scaled:
            row.value = kirchhoff_closed(n) / n;
            row.limit = 1.0;
            break;
        case SweepQuantity::rho_gap:
            row.value = asymptotic_predictors(n).rho_approx - rho_constants(n).rho;
            row.limit = 0.0;
            break;
    }
    row.deviation = row.value - row.limit;
    return row;
}

inline SweepTable run_sweep(SweepQuantity quantity, int n_min, int n_max, int step, int q, unsigned threads = 0) {
    if (step < 1) throw DomainError("sweep step must be >= 1");
    if (n_min < 5) n_min = 5;
    if (n_max < n_min) throw DomainError("sweep range is empty");
    if (quantity == SweepQuantity::resistance_scaled && (q < 1 || q >= n_min))
        throw DomainError("resistance-scaled sweep needs 1 <= q < n-min");
    SweepTable table{quantity, {}, 0};
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; n += step) {
        if (n % 2 == 0)
            ++table.skipped_even;
        else
            ns.push_back(n);
    }
    table.rows.resize(ns.size());
    detail::parallel_for(ns.size(), threads, [&](std::size_t i) { table.rows[i] = sweep_row(quantity, ns[i], q); });
    return table;
}

inline json sweep_row_to_json(SweepQuantity quantity, const SweepRow& row) {
    json j;
    j["n"] = row.n;
    j["s_or_r"] = "1";
    j["quantity"] = std::string(to_string(quantity));
    j["method"] = "closed";
    if (row.q) j["q"] = *row.q;
    j["value"] = row.value;
    j["limit"] = row.limit;
    j["deviation"] = row.deviation;
    return j;
}

/// CSV row in the fixed column order of csv_columns().
inline std::string sweep_row_to_csv(SweepQuantity quantity, const SweepRow& row) {
    return std::to_string(row.n) + ",1," + std::string(to_string(quantity)) + ",closed,"
           + (row.q ? std::to_string(*row.q) : "") + ",,," + format_double(row.value) + ",,"
           + format_double(row.limit) + "," + format_double(row.deviation);
}

}  // namespace circres
