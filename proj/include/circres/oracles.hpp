#pragma once

// Brute-force reference implementations. Nothing here uses the Fourier
// diagonalization: every invariant is computed from the dense Laplacian
// (exact determinants and linear solves), the random-walk transition matrix,
// simulation, or exhaustive enumeration.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "circres/errors.hpp"
#include "circres/graph_model.hpp"
#include "circres/rational.hpp"

namespace circres {

/// Row-major dense matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    /// Copy with the listed rows and columns removed.
    Matrix without(const std::vector<std::size_t>& drop) const {
        std::vector<std::size_t> keep_r, keep_c;
        for (std::size_t i = 0; i < rows_; ++i)
            if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep_r.push_back(i);
        for (std::size_t j = 0; j < cols_; ++j)
            if (std::find(drop.begin(), drop.end(), j) == drop.end()) keep_c.push_back(j);
        Matrix out(keep_r.size(), keep_c.size());
        for (std::size_t i = 0; i < keep_r.size(); ++i)
            for (std::size_t j = 0; j < keep_c.size(); ++j) out(i, j) = (*this)(keep_r[i], keep_c[j]);
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Exact linear algebra
// ---------------------------------------------------------------------------

/// Fraction-free (Bareiss) determinant with row pivoting. Every division is
/// exact, so all intermediates stay integers.
inline Integer bareiss_determinant(Matrix<Integer> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Exact determinant of a rational matrix: each row is scaled by the LCM of its
/// denominators, Bareiss runs on integers, and the scale is divided back out.
inline Rational determinant_exact(const Matrix<Rational>& a) {
    const std::size_t n = a.rows();
    Matrix<Integer> m(n, n);
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer row_lcm = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j).get_num() * (row_lcm / a(i, j).get_den());
        scale *= row_lcm;
    }
    Rational det(bareiss_determinant(std::move(m)), scale);
    det.canonicalize();
    return det;
}

/// Solves A X = B over the rationals by Gauss-Jordan elimination.
/// Throws std::logic_error on a singular A.
inline Matrix<Rational> solve_exact(Matrix<Rational> a, Matrix<Rational> b) {
    const std::size_t n = a.rows();
    if (n != a.cols() || b.rows() != n) throw DomainError("solve_exact: shape mismatch");
    const std::size_t nb = b.cols();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw std::logic_error("solve_exact: singular system");
        a.swap_rows(k, p);
        b.swap_rows(k, p);
        const Rational inv = 1 / a(k, k);
        for (std::size_t j = k; j < n; ++j) a(k, j) *= inv;
        for (std::size_t j = 0; j < nb; ++j) b(k, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            const Rational f = a(i, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < nb; ++j) b(i, j) -= f * b(k, j);
        }
    }
    return b;
}

// ---------------------------------------------------------------------------
// Laplacian
// ---------------------------------------------------------------------------

struct DenseLaplacian {
    int n = 0;
    Matrix<Rational> entries;

    const Rational& operator()(int i, int j) const { return entries(i, j); }
};

/// L = D - A with A(i, j) = w(h(i, j)).
inline DenseLaplacian build_laplacian(const CirculantSpec& spec) {
    const int n = spec.n();
    DenseLaplacian lap{n, Matrix<Rational>(n, n)};
    for (int i = 0; i < n; ++i) {
        Rational row_sum = 0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Rational& w = spec.weight(circulant_distance(i, j, n));
            lap.entries(i, j) = -w;
            row_sum += w;
        }
        lap.entries(i, i) = row_sum;
    }
    return lap;
}

inline void require_connected_oracle(const CirculantSpec& spec, const char* what) {
    if (!is_connected(spec))
        throw DisconnectedGraphError(std::string(what) + ": graph " + spec.describe() + " is disconnected");
}

// ---------------------------------------------------------------------------
// Effective resistance
// ---------------------------------------------------------------------------

/// R(u, v) for every u with v grounded: the diagonal of the inverse of L with
/// row/column v deleted (solving L~ x = e_u for all u at once).
inline std::vector<Rational> resistance_oracle_exact_all(const CirculantSpec& spec, int v) {
    check_vertex(v, spec.n());
    require_connected_oracle(spec, "resistance oracle");
    const std::size_t n = static_cast<std::size_t>(spec.n());
    const auto grounded = build_laplacian(spec).entries.without({static_cast<std::size_t>(v)});
    Matrix<Rational> identity(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) identity(i, i) = 1;
    const auto inv = solve_exact(grounded, identity);
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t u = 0, row = 0; u < n; ++u) {
        if (static_cast<int>(u) == v) continue;
        out[u] = inv(row, row);
        ++row;
    }
    return out;
}

/// Grounded solve at v: delete row/column v, solve L~ x = e_u, return x_u.
inline Rational resistance_oracle_exact(const CirculantSpec& spec, int u, int v) {
    check_vertex(u, spec.n());
    check_vertex(v, spec.n());
    require_connected_oracle(spec, "resistance oracle");
    if (u == v) return 0;
    const std::size_t n = static_cast<std::size_t>(spec.n());
    const auto grounded = build_laplacian(spec).entries.without({static_cast<std::size_t>(v)});
    const std::size_t row = static_cast<std::size_t>(u < v ? u : u - 1);
    Matrix<Rational> rhs(n - 1, 1);
    rhs(row, 0) = 1;
    return solve_exact(grounded, rhs)(row, 0);
}

/// Same grounded solve in long double with partial pivoting.
inline long double resistance_oracle_float(const CirculantSpec& spec, int u, int v) {
    check_vertex(u, spec.n());
    check_vertex(v, spec.n());
    require_connected_oracle(spec, "resistance oracle");
    if (u == v) return 0;
    const int n = spec.n();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    std::vector<long double> w(static_cast<std::size_t>(n / 2) + 1, 0.0L);
    for (int k = 1; k <= n / 2; ++k) w[k] = to_long_double(spec.weight(k));
    Matrix<long double> a(m, m + 1, 0.0L);
    auto idx = [v](int x) { return static_cast<std::size_t>(x < v ? x : x - 1); };
    for (int i = 0; i < n; ++i) {
        if (i == v) continue;
        long double diag = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const long double wij = w[circulant_distance(i, j, n)];
            diag += wij;
            if (j != v) a(idx(i), idx(j)) = -wij;
        }
        a(idx(i), idx(i)) = diag;
    }
    a(idx(u), m) = 1;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        a.swap_rows(k, p);
        for (std::size_t i = k + 1; i < m; ++i) {
            const long double f = a(i, k) / a(k, k);
            if (f == 0) continue;
            for (std::size_t j = k; j <= m; ++j) a(i, j) -= f * a(k, j);
        }
    }
    std::vector<long double> x(m);
    for (std::size_t k = m; k-- > 0;) {
        long double s = a(k, m);
        for (std::size_t j = k + 1; j < m; ++j) s -= a(k, j) * x[j];
        x[k] = s / a(k, k);
    }
    return x[idx(u)];
}

/// Exact rationals are used up to this order; above it the float solve.
inline constexpr int kExactOracleMaxN = 30;

struct OracleValue {
    std::optional<Rational> exact;
    long double value = 0;
};

inline OracleValue resistance_oracle(const CirculantSpec& spec, int u, int v) {
    if (spec.n() <= kExactOracleMaxN) {
        Rational r = resistance_oracle_exact(spec, u, v);
        const long double value = to_long_double(r);
        return {std::move(r), value};
    }
    return {std::nullopt, resistance_oracle_float(spec, u, v)};
}

// ---------------------------------------------------------------------------
// Spanning trees and forests (matrix-tree / all-minors)
// ---------------------------------------------------------------------------

/// Principal minor of L with row/column 0 deleted; 0 when disconnected.
inline Rational tree_count_oracle(const CirculantSpec& spec) {
    return determinant_exact(build_laplacian(spec).entries.without({0}));
}

/// Minor of L with rows/columns u and v deleted: forests with two trees
/// separating u and v.
inline Rational forest_count_oracle(const CirculantSpec& spec, int u, int v) {
    check_vertex(u, spec.n());
    check_vertex(v, spec.n());
    if (u == v) throw DomainError("forest count needs distinct vertices");
    return determinant_exact(
        build_laplacian(spec).entries.without({static_cast<std::size_t>(u), static_cast<std::size_t>(v)}));
}

// ---------------------------------------------------------------------------
// Hitting times by first-step analysis
// ---------------------------------------------------------------------------

/// H(x, v) for every start x: solves H(x) = 1 + sum_y P(x, y) H(y), H(v) = 0,
/// with P(x, y) = w(h(x, y)) / deg.
inline std::vector<Rational> hitting_time_oracle_all(const CirculantSpec& spec, int v) {
    check_vertex(v, spec.n());
    require_connected_oracle(spec, "hitting time oracle");
    const int n = spec.n();
    const Rational deg = degree(spec);
    const std::size_t m = static_cast<std::size_t>(n - 1);
    auto idx = [v](int x) { return static_cast<std::size_t>(x < v ? x : x - 1); };
    Matrix<Rational> a(m, m);
    Matrix<Rational> rhs(m, 1, Rational(1));
    for (int x = 0; x < n; ++x) {
        if (x == v) continue;
        a(idx(x), idx(x)) = 1;
        for (int y = 0; y < n; ++y) {
            if (y == x || y == v) continue;
            const Rational p = spec.weight(circulant_distance(x, y, n)) / deg;
            a(idx(x), idx(y)) -= p;
        }
    }
    const auto h = solve_exact(std::move(a), std::move(rhs));
    std::vector<Rational> out(static_cast<std::size_t>(n), Rational(0));
    for (int x = 0; x < n; ++x)
        if (x != v) out[x] = h(idx(x), 0);
    return out;
}

inline Rational hitting_time_oracle(const CirculantSpec& spec, int u, int v) {
    check_vertex(u, spec.n());
    return hitting_time_oracle_all(spec, v)[static_cast<std::size_t>(u)];
}

// ---------------------------------------------------------------------------
// Monte Carlo hitting times
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// xoshiro256** seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        for (auto& word : s_) word = detail::splitmix64(seed);
    }

    /// Independent stream for walk `index` of a run seeded with `seed`.
    static Xoshiro256 for_stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t mix = seed;
        const std::uint64_t a = detail::splitmix64(mix);
        std::uint64_t idx = index ^ a;
        return Xoshiro256(detail::splitmix64(idx) ^ seed);
    }

    std::uint64_t operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

struct WalkConfig {
    std::uint64_t seed = 42;
    std::uint64_t walks = 100000;
    std::uint64_t max_steps = 0;  // 0 selects N^3
    unsigned threads = 0;         // 0 selects hardware concurrency
};

struct MonteCarloResult {
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t walks = 0;
    std::uint64_t truncated = 0;
    std::uint64_t seed = 0;
};

/// Degree-proportional random walks from u until absorption at v. Walk i draws
/// from stream (seed, i), and per-chunk integer sums are combined, so the
/// result does not depend on the thread count.
inline MonteCarloResult hitting_time_monte_carlo(const CirculantSpec& spec, int u, int v, WalkConfig cfg) {
    const int n = spec.n();
    check_vertex(u, n);
    check_vertex(v, n);
    require_connected_oracle(spec, "Monte Carlo hitting time");
    const std::uint64_t n64 = static_cast<std::uint64_t>(n);
    if (cfg.max_steps == 0) cfg.max_steps = n64 * n64 * n64;
    if (cfg.walks < 1) throw DomainError("WalkConfig: walks must be >= 1");
    if (cfg.max_steps < n64 * n64) throw DomainError("WalkConfig: max_steps must be >= N^2");

    MonteCarloResult result;
    result.seed = cfg.seed;
    result.walks = cfg.walks;
    if (u == v) return result;

    // Step offsets with cumulative weights; uniform choice when unweighted.
    std::vector<int> offsets;
    std::vector<double> cumulative;
    double total = 0;
    for (int k : spec.support()) {
        const double w = to_double(spec.weight(k));
        offsets.push_back(k);
        total += w;
        cumulative.push_back(total);
        if (2 * k != n) {
            offsets.push_back(n - k);
            total += w;
            cumulative.push_back(total);
        }
    }
    const bool uniform = spec.is_unweighted();

    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (cfg.walks + kChunk - 1) / kChunk;
    struct ChunkSums {
        std::uint64_t sum = 0;
        unsigned __int128 sum_sq = 0;
        std::uint64_t truncated = 0;
    };
    std::vector<ChunkSums> sums(chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            ChunkSums acc;
            const std::uint64_t end = std::min(cfg.walks, (c + 1) * kChunk);
            for (std::uint64_t w = c * kChunk; w < end; ++w) {
                auto rng = Xoshiro256::for_stream(cfg.seed, w);
                int x = u;
                std::uint64_t steps = 0;
                while (x != v && steps < cfg.max_steps) {
                    std::size_t pick;
                    if (uniform) {
                        pick = static_cast<std::size_t>(rng.below(offsets.size()));
                    } else {
                        const double r = rng.unit() * total;
                        pick = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r)
                                                        - cumulative.begin());
                        pick = std::min(pick, offsets.size() - 1);
                    }
                    x = (x + offsets[pick]) % n;
                    ++steps;
                }
                if (x != v) {
                    ++acc.truncated;
                    continue;
                }
                acc.sum += steps;
                acc.sum_sq += static_cast<unsigned __int128>(steps) * steps;
            }
            sums[c] = acc;
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
    for (const auto& s : sums) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        result.truncated += s.truncated;
    }
    if (result.truncated * 1000 > cfg.walks)
        throw SimulationError(std::to_string(result.truncated) + " of " + std::to_string(cfg.walks)
                              + " walks exceeded max_steps=" + std::to_string(cfg.max_steps));
    const std::uint64_t done = cfg.walks - result.truncated;
    if (done == 0) return result;
    const long double mean = static_cast<long double>(sum) / done;
    result.mean = static_cast<double>(mean);
    if (done > 1) {
        const long double var =
            (static_cast<long double>(sum_sq) - static_cast<long double>(sum) * mean) / (done - 1);
        result.stderr_ = static_cast<double>(std::sqrt(std::max(0.0L, var) / done));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Exhaustive spanning-tree enumeration
// ---------------------------------------------------------------------------

inline constexpr int kEnumerateMaxN = 9;

/// Sum over (N-1)-edge acyclic subsets of the product of edge weights; the
/// plain spanning-tree count for unweighted specs.
inline Rational spanning_tree_enumerate(const CirculantSpec& spec) {
    const int n = spec.n();
    if (n > kEnumerateMaxN)
        throw DomainError("spanning_tree_enumerate refuses N=" + std::to_string(n) + " (limit "
                          + std::to_string(kEnumerateMaxN) + ")");
    struct Edge {
        int a, b;
        Rational w;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rational& w = spec.weight(circulant_distance(i, j, n));
            if (w > 0) edges.push_back({i, j, w});
        }
    const bool unweighted = spec.is_unweighted();

    // union-find with rollback (union by size, no path compression)
    std::vector<int> parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };

    const int need = n - 1;
    std::uint64_t count = 0;
    Rational weighted = 0;
    Rational product = 1;

    auto dfs = [&](auto&& self, std::size_t idx, int chosen) -> void {
        if (chosen == need) {
            if (unweighted)
                ++count;
            else
                weighted += product;
            return;
        }
        if (edges.size() - idx < static_cast<std::size_t>(need - chosen)) return;
        const Edge& e = edges[idx];
        int ra = find(e.a), rb = find(e.b);
        if (ra != rb) {
            if (size[ra] < size[rb]) std::swap(ra, rb);
            parent[rb] = ra;
            size[ra] += size[rb];
            Rational saved;
            if (!unweighted) {
                saved = product;
                product *= e.w;
            }
            self(self, idx + 1, chosen + 1);
            if (!unweighted) product = saved;
            size[ra] -= size[rb];
            parent[rb] = rb;
        }
        self(self, idx + 1, chosen);
    };
    dfs(dfs, 0, 0);
    return unweighted ? Rational(Integer(std::to_string(count))) : weighted;
}

}  // namespace circres
