#pragma once

// Circulant graphs on Z_N built from K_N by distance-class weights.
//
// A spec assigns every distance k in {1..floor(N/2)} a nonnegative rational
// weight w(k). Deletion specs are the special case w = indicator of the
// complement of the deleted set S.

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circres/errors.hpp"
#include "circres/rational.hpp"

namespace circres {

class CirculantSpec {
public:
    /// K_N with the distance classes in `deleted` removed.
    static CirculantSpec deletion(int n, const std::set<int>& deleted) {
        check_order(n);
        CirculantSpec spec;
        spec.n_ = n;
        for (int k : deleted) check_distance(n, k);
        for (int k = 1; k <= n / 2; ++k) spec.weights_[k] = deleted.count(k) ? 0 : 1;
        spec.deleted_ = deleted;
        return spec;
    }

    static CirculantSpec complete(int n) { return deletion(n, {}); }

    /// General weight profile. Distances absent from `weights` get weight 0.
    static CirculantSpec weighted(int n, const std::map<int, Rational>& weights) {
        check_order(n);
        CirculantSpec spec;
        spec.n_ = n;
        for (int k = 1; k <= n / 2; ++k) spec.weights_[k] = 0;
        for (const auto& [k, w] : weights) {
            check_distance(n, k);
            if (w < 0) throw DomainError("negative weight at distance " + std::to_string(k));
            spec.weights_[k] = w;
        }
        return spec;
    }

    int n() const { return n_; }
    int max_distance() const { return n_ / 2; }
    const std::map<int, Rational>& weights() const { return weights_; }
    const std::optional<std::set<int>>& deleted() const { return deleted_; }
    bool is_deletion() const { return deleted_.has_value(); }

    const Rational& weight(int k) const {
        check_distance(n_, k);
        return weights_.at(k);
    }

    /// True when every weight is 0 or 1 (a plain subgraph of K_N).
    bool is_unweighted() const {
        for (const auto& [k, w] : weights_)
            if (w != 0 && w != 1) return false;
        return true;
    }

    /// Distances carrying positive weight.
    std::vector<int> support() const {
        std::vector<int> out;
        for (const auto& [k, w] : weights_)
            if (w > 0) out.push_back(k);
        return out;
    }

    /// The single deleted class r when this is an unweighted deletion of one class.
    std::optional<int> single_deleted_class() const {
        if (!deleted_ || deleted_->size() != 1) return std::nullopt;
        return *deleted_->begin();
    }

    friend bool operator==(const CirculantSpec& a, const CirculantSpec& b) {
        return a.n_ == b.n_ && a.weights_ == b.weights_ && a.deleted_ == b.deleted_;
    }

    std::string describe() const {
        std::string s = "N=" + std::to_string(n_);
        if (deleted_) {
            s += " S={";
            bool first = true;
            for (int k : *deleted_) {
                if (!first) s += ",";
                s += std::to_string(k);
                first = false;
            }
            s += "}";
        } else {
            s += " w=[";
            for (const auto& [k, w] : weights_) s += (k > 1 ? "," : "") + format_rational(w);
            s += "]";
        }
        return s;
    }

private:
    CirculantSpec() = default;

    static void check_order(int n) {
        if (n < 3) throw DomainError("circulant graphs need N >= 3, got " + std::to_string(n));
    }
    static void check_distance(int n, int k) {
        if (k < 1 || k > n / 2)
            throw DomainError("distance " + std::to_string(k) + " outside 1.." + std::to_string(n / 2));
    }

    int n_ = 0;
    std::map<int, Rational> weights_;
    std::optional<std::set<int>> deleted_;
};

inline void check_vertex(int x, int n) {
    if (x < 0 || x >= n)
        throw DomainError("vertex " + std::to_string(x) + " outside Z_" + std::to_string(n));
}

/// (v - u) mod n in {0..n-1}.
inline int oriented_residue(int u, int v, int n) {
    check_vertex(u, n);
    check_vertex(v, n);
    return ((v - u) % n + n) % n;
}

/// min(q, n - q) for q = oriented_residue(u, v, n).
inline int circulant_distance(int u, int v, int n) {
    const int q = oriented_residue(u, v, n);
    return std::min(q, n - q);
}

struct VertexPair {
    int u;
    int v;
    int q;
    int h;

    static VertexPair make(int u, int v, int n) {
        const int q = oriented_residue(u, v, n);
        return {u, v, q, std::min(q, n - q)};
    }
};

/// Weighted degree of every vertex (the graph is vertex-transitive).
inline Rational degree(const CirculantSpec& spec) {
    const int n = spec.n();
    Rational deg = 0;
    for (int k = 1; k <= (n - 1) / 2; ++k) deg += 2 * spec.weight(k);
    if (n % 2 == 0) deg += spec.weight(n / 2);
    return deg;
}

inline Rational volume(const CirculantSpec& spec) { return spec.n() * degree(spec); }

/// Exact criterion: the circulant graph is connected iff the gcd of N and
/// every positively weighted distance is 1.
inline bool connected_by_gcd(const CirculantSpec& spec) {
    int g = spec.n();
    for (int k : spec.support()) g = std::gcd(g, k);
    return g == 1;
}

/// Connectivity threshold for the smallest nonzero Laplacian eigenvalue.
inline double connectivity_tolerance(int n) { return 1e-9 * n; }

/// Eigenvalue criterion: min_{j>=1} lambda_j > 1e-9 N. Evaluates the
/// eigenvalue formula directly, without the cached tables of spectral.hpp.
inline bool connected_by_spectrum(const CirculantSpec& spec) {
    const int n = spec.n();
    std::vector<std::pair<int, double>> terms;
    for (int k : spec.support()) terms.emplace_back(k, to_double(spec.weight(k)));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 1; j < n; ++j) {
        double lambda = 0.0;
        for (const auto& [k, w] : terms) {
            const double c = std::cos(two_pi * static_cast<double>((static_cast<long long>(j) * k) % n) / n);
            lambda += (2 * k == n ? 1.0 : 2.0) * w * (1.0 - c);
        }
        if (lambda <= connectivity_tolerance(n)) return false;
    }
    return true;
}

inline bool is_connected(const CirculantSpec& spec) {
    return spec.is_unweighted() ? connected_by_gcd(spec) : connected_by_spectrum(spec);
}

}  // namespace circres
