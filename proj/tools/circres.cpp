// circres: effective resistance, spanning trees/forests, hitting times and
// Kirchhoff indices of circulant graphs K_N minus distance classes.
//
// Exit codes: 0 ok, 1 verification failure, 2 precondition violation,
// 3 disconnected graph.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "circres/compute.hpp"
#include "circres/report.hpp"
#include "circres/sweep.hpp"
#include "circres/verification.hpp"

namespace {

using namespace circres;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitDisconnected = 3;

constexpr const char* kOutputDirEnv = "CIRCRES_OUTPUT_DIR";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::set<int> parse_class_list(const std::string& text) {
    std::set<int> out;
    for (const auto& tok : split(text, ',')) {
        try {
            out.insert(std::stoi(tok));
        } catch (const std::exception&) {
            throw DomainError("bad distance class '" + tok + "'");
        }
    }
    return out;
}

/// "1:1/2,2:3" -> {1: 1/2, 2: 3}
std::map<int, Rational> parse_weight_list(const std::string& text) {
    std::map<int, Rational> out;
    for (const auto& tok : split(text, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw DomainError("weight entry '" + tok + "' is not k:w");
        out[std::stoi(tok.substr(0, colon))] = parse_rational(tok.substr(colon + 1));
    }
    return out;
}

struct SpecArgs {
    int n = 0;
    std::string deleted;
    std::string weights;

    void add_to(CLI::App* cmd, bool require_n = true) {
        auto* opt = cmd->add_option("--n", n, "Vertex count N");
        if (require_n) opt->required();
        auto* del = cmd->add_option("--delete", deleted, "Deleted distance classes, comma separated (e.g. 1,3)");
        cmd->add_option("--weights", weights, "Distance weights k:p/q, comma separated (absent distances get 0)")
            ->excludes(del);
    }

    CirculantSpec build() const {
        if (!weights.empty()) return CirculantSpec::weighted(n, parse_weight_list(weights));
        return CirculantSpec::deletion(n, parse_class_list(deleted));
    }
};

/// --output path, resolved against $CIRCRES_OUTPUT_DIR when relative.
std::optional<std::filesystem::path> resolve_output(const std::string& output, const char* fallback_name) {
    const char* dir = std::getenv(kOutputDirEnv);
    if (!output.empty()) {
        std::filesystem::path p(output);
        if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
        return p;
    }
    if (fallback_name && dir && *dir) return std::filesystem::path(dir) / fallback_name;
    return std::nullopt;
}

class Sink {
public:
    explicit Sink(const std::optional<std::filesystem::path>& path) {
        if (path) {
            if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
            file_ = std::make_unique<std::ofstream>(*path);
            if (!*file_) throw DomainError("cannot open output file " + path->string());
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct ComputeArgs {
    SpecArgs spec;
    std::string quantity = "resistance";
    std::string method = "spectral";
    std::optional<int> u, v, q;
    bool exact = false;
    std::uint64_t seed = 42;
    std::uint64_t walks = 100000;
    std::uint64_t max_steps = 0;
    unsigned threads = 0;
    std::string format = "jsonl";
    std::string output;
};

int run_compute(const ComputeArgs& a, bool eig_only) {
    const ComputeRequest req{
        .spec = a.spec.build(),
        .quantity = eig_only ? Quantity::eigenvalues : parse_quantity(a.quantity),
        .method = eig_only ? Method::spectral : parse_method(a.method),
        .u = a.u,
        .v = a.v,
        .q = a.q,
        .exact = a.exact,
        .walk = WalkConfig{a.seed, a.walks, a.max_steps, a.threads},
    };
    const auto results = compute_invariants(req);

    Sink sink(resolve_output(a.output, nullptr));
    if (a.format == "csv") {
        sink.out() << csv_header() << "\n";
        for (const auto& r : results) sink.out() << csv_row(r) << "\n";
    } else {
        for (const auto& r : results) sink.out() << result_to_json(r).dump() << "\n";
    }
    return kExitOk;
}

struct VerifyArgs {
    std::optional<int> n;
    int n_min = 5;
    int n_max = 15;
    bool odd_only = false;
    std::string deleted;
    std::optional<int> r;
    bool all_subsets = false;
    Tolerances tol;
    unsigned threads = 0;
    std::string output;
};

std::vector<CirculantSpec> verification_specs(const VerifyArgs& a) {
    std::vector<int> ns;
    if (a.n) {
        ns.push_back(*a.n);
    } else {
        for (int n = a.n_min; n <= a.n_max; ++n)
            if (!a.odd_only || n % 2 == 1) ns.push_back(n);
    }
    if (ns.empty()) throw DomainError("empty N range");
    std::vector<CirculantSpec> specs;
    for (int n : ns) {
        if (n > kVerifyMaxN)
            throw DomainError("verify runs exact oracles and is limited to N <= " + std::to_string(kVerifyMaxN));
        if (!a.deleted.empty()) {
            specs.push_back(CirculantSpec::deletion(n, parse_class_list(a.deleted)));
        } else if (a.r) {
            specs.push_back(CirculantSpec::deletion(n, {*a.r}));
        } else if (a.all_subsets) {
            const int half = n / 2;
            for (unsigned mask = 0; mask < (1u << half); ++mask) {
                std::set<int> s;
                for (int k = 1; k <= half; ++k)
                    if (mask & (1u << (k - 1))) s.insert(k);
                specs.push_back(CirculantSpec::deletion(n, s));
            }
        } else {
            for (int r = 1; r <= n / 2; ++r) specs.push_back(CirculantSpec::deletion(n, {r}));
        }
    }
    return specs;
}

int run_verify(const VerifyArgs& a) {
    const auto specs = verification_specs(a);
    const auto report = run_verification(specs, a.tol, a.threads);
    const auto path = resolve_output(a.output, "verify-report.json");
    {
        Sink sink(path);
        sink.out() << report_to_json(report).dump(2) << "\n";
    }
    const auto& s = report.summary;
    std::cerr << "verify: " << s.specs << " specs (" << s.disconnected_specs << " disconnected), " << s.total
              << " cases, " << s.passed << " passed, " << s.failed << " failed; worst rel dev "
              << format_double(s.worst_rel_dev) << ", worst abs dev " << format_double(s.worst_abs_dev) << "\n";
    if (path) std::cerr << "report written to " << path->string() << "\n";
    for (const auto& c : report.cases)
        if (!c.pass) std::cerr << "  FAIL " << c.spec.dump() << " " << c.quantity << " q=" << (c.q ? *c.q : -1) << ": "
                               << c.note << "\n";
    return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

struct SweepArgs {
    std::string quantity;
    int n_min = 5;
    int n_max = 2001;
    int step = 2;
    int q = 1;
    std::string format = "jsonl";
    std::string output;
    unsigned threads = 0;
};

int run_sweep_cmd(const SweepArgs& a) {
    const auto quantity = parse_sweep_quantity(a.quantity);
    const auto table = run_sweep(quantity, a.n_min, a.n_max, a.step, a.q, a.threads);
    Sink sink(resolve_output(a.output, nullptr));
    if (a.format == "csv") {
        sink.out() << csv_header() << "\n";
        for (const auto& row : table.rows) sink.out() << sweep_row_to_csv(quantity, row) << "\n";
        sink.out() << "# rows=" << table.rows.size() << " skipped_even=" << table.skipped_even << "\n";
    } else {
        for (const auto& row : table.rows) sink.out() << sweep_row_to_json(quantity, row).dump() << "\n";
        sink.out() << json{{"footer", {{"rows", table.rows.size()}, {"skipped_even", table.skipped_even}}}}.dump()
                   << "\n";
    }
    return kExitOk;
}

enum class Mode { compute, oracle, eig };

void add_compute_options(CLI::App* cmd, ComputeArgs& a, Mode mode) {
    a.spec.add_to(cmd);
    if (mode != Mode::eig) {
        cmd->add_option("--quantity", a.quantity, "resistance | trees | forests | hitting | kirchhoff | eigenvalues")
            ->check(CLI::IsMember({"resistance", "trees", "forests", "hitting", "kirchhoff", "eigenvalues"}));
        if (mode == Mode::compute)
            cmd->add_option("--method", a.method, "closed | spectral | oracle | monte-carlo")
                ->check(CLI::IsMember({"closed", "spectral", "oracle", "monte-carlo"}));
        cmd->add_option("--u", a.u, "Source vertex (default 0)");
        cmd->add_option("--v", a.v, "Target vertex (default: every v != u)");
        cmd->add_option("--q", a.q, "Oriented residue v - u mod N (alternative to --v)");
        cmd->add_flag("--exact", a.exact, "Exact rational output (closed and oracle methods)");
        cmd->add_option("--seed", a.seed, "Monte Carlo seed");
        cmd->add_option("--walks", a.walks, "Monte Carlo walk count");
        cmd->add_option("--max-steps", a.max_steps, "Monte Carlo step cap per walk (default N^3)");
        cmd->add_option("--threads", a.threads, "Worker threads (default: all cores)");
    }
    cmd->add_option("--format", a.format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("--output", a.output, "Output file (relative paths resolve against $CIRCRES_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resistance, spanning-tree, forest, hitting-time and Kirchhoff computations on circulant graphs"};
    app.require_subcommand(1);

    ComputeArgs compute_args;
    auto* compute = app.add_subcommand("compute", "Compute one invariant by one method");
    add_compute_options(compute, compute_args, Mode::compute);

    ComputeArgs oracle_args;
    oracle_args.method = "oracle";
    auto* oracle = app.add_subcommand("oracle", "Compute one invariant by the dense exact oracles");
    add_compute_options(oracle, oracle_args, Mode::oracle);

    ComputeArgs eig_args;
    auto* eig = app.add_subcommand("eig", "Dump the Laplacian spectrum");
    add_compute_options(eig, eig_args, Mode::eig);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Cross-check closed forms, spectral sums and oracles");
    verify->add_option("--n", verify_args.n, "Single N (overrides the range)");
    verify->add_option("--n-min", verify_args.n_min, "Smallest N");
    verify->add_option("--n-max", verify_args.n_max, "Largest N");
    verify->add_flag("--odd-only", verify_args.odd_only, "Skip even N");
    verify->add_option("--delete", verify_args.deleted, "Deleted classes for every N (comma separated)");
    verify->add_option("--r", verify_args.r, "Single deleted class r for every N");
    verify->add_flag("--all-subsets", verify_args.all_subsets, "Every deletion set S for every N");
    verify->add_option("--tol-resistance", verify_args.tol.resistance_rel, "Relative tolerance, resistance");
    verify->add_option("--tol-hitting", verify_args.tol.hitting_rel, "Relative tolerance, hitting times");
    verify->add_option("--tol-kirchhoff", verify_args.tol.kirchhoff_rel, "Relative tolerance, Kirchhoff index");
    verify->add_option("--tol-trees", verify_args.tol.tree_rel, "Relative tolerance, spectral tree counts");
    verify->add_option("--tol-forests", verify_args.tol.forest_rel, "Relative tolerance, spectral forest counts");
    verify->add_option("--tol-eigen", verify_args.tol.eigen_rel, "Relative tolerance, eigenvalue forms");
    verify->add_option("--threads", verify_args.threads, "Worker threads (default: all cores)");
    verify->add_option("--output", verify_args.output, "Report file (default: stdout, or $CIRCRES_OUTPUT_DIR)");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Scaled G_{N,1} quantities against their large-N limits");
    sweep->add_option("--quantity", sweep_args.quantity, "tree-ratio | resistance-scaled | kirchhoff-scaled | rho-gap")
        ->required();
    sweep->add_option("--n-min", sweep_args.n_min, "Smallest N (default 5)");
    sweep->add_option("--n-max", sweep_args.n_max, "Largest N (default 2001)");
    sweep->add_option("--step", sweep_args.step, "Step in N (default 2; even N are skipped)");
    sweep->add_option("--q", sweep_args.q, "Fixed residue for resistance-scaled (default 1)");
    sweep->add_option("--format", sweep_args.format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
    sweep->add_option("--output", sweep_args.output, "Output file");
    sweep->add_option("--threads", sweep_args.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitPrecondition;
    }

    try {
        if (*compute) return run_compute(compute_args, false);
        if (*oracle) return run_compute(oracle_args, false);
        if (*eig) return run_compute(eig_args, true);
        if (*verify) return run_verify(verify_args);
        if (*sweep) return run_sweep_cmd(sweep_args);
    } catch (const DisconnectedGraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDisconnected;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const UnsupportedCaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return kExitOk;
}
