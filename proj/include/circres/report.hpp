#pragma once

// Result records emitted by the command-line tool: JSON lines (default) or CSV
// with a fixed column order. Exact rationals travel as "p/q" strings.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "circres/errors.hpp"
#include "circres/graph_model.hpp"
#include "circres/rational.hpp"

namespace circres {

using json = nlohmann::ordered_json;

enum class Quantity { resistance, trees, forests, hitting, kirchhoff, eigenvalues };
enum class Method { closed, spectral, oracle, monte_carlo };
enum class Representation { rational, floating, log };

inline std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::resistance: return "resistance";
        case Quantity::trees: return "trees";
        case Quantity::forests: return "forests";
        case Quantity::hitting: return "hitting";
        case Quantity::kirchhoff: return "kirchhoff";
        case Quantity::eigenvalues: return "eigenvalues";
    }
    return "?";
}

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed: return "closed";
        case Method::spectral: return "spectral";
        case Method::oracle: return "oracle";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

inline std::string_view to_string(Representation r) {
    switch (r) {
        case Representation::rational: return "rational";
        case Representation::floating: return "float";
        case Representation::log: return "log";
    }
    return "?";
}

inline Quantity parse_quantity(std::string_view s) {
    for (auto q : {Quantity::resistance, Quantity::trees, Quantity::forests, Quantity::hitting,
                   Quantity::kirchhoff, Quantity::eigenvalues})
        if (to_string(q) == s) return q;
    throw DomainError("unknown quantity '" + std::string(s) + "'");
}

inline Method parse_method(std::string_view s) {
    for (auto m : {Method::closed, Method::spectral, Method::oracle, Method::monte_carlo})
        if (to_string(m) == s) return m;
    throw DomainError("unknown method '" + std::string(s) + "'");
}

inline Representation parse_representation(std::string_view s) {
    for (auto r : {Representation::rational, Representation::floating, Representation::log})
        if (to_string(r) == s) return r;
    throw DomainError("unknown representation '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Spec serialization
// ---------------------------------------------------------------------------

/// {"n": N, "deleted": [...]} or {"n": N, "weights": {"k": "p/q", ...}}.
inline json spec_to_json(const CirculantSpec& spec) {
    json j;
    j["n"] = spec.n();
    if (spec.is_deletion()) {
        j["deleted"] = json::array();
        for (int k : *spec.deleted()) j["deleted"].push_back(k);
    } else {
        j["weights"] = json::object();
        for (const auto& [k, w] : spec.weights()) j["weights"][std::to_string(k)] = format_rational(w);
    }
    return j;
}

inline CirculantSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw DomainError("spec JSON needs an integer field 'n'");
    const int n = j["n"].get<int>();
    const bool has_deleted = j.contains("deleted");
    const bool has_weights = j.contains("weights");
    if (has_deleted == has_weights) throw DomainError("spec JSON needs exactly one of 'deleted' or 'weights'");
    if (has_deleted) {
        std::set<int> s;
        for (const auto& k : j["deleted"]) s.insert(k.get<int>());
        return CirculantSpec::deletion(n, s);
    }
    std::map<int, Rational> w;
    for (const auto& [key, value] : j["weights"].items()) {
        const Rational r = value.is_string() ? parse_rational(value.get<std::string>())
                                             : Rational(value.get<long>());
        w[std::stoi(key)] = r;
    }
    return CirculantSpec::weighted(n, w);
}

/// Compact spec label used in the CSV s_or_r column: "1;3" for deletions,
/// "w=1:1/2;2:3" for weight profiles.
inline std::string spec_label(const CirculantSpec& spec) {
    std::string s;
    if (spec.is_deletion()) {
        for (int k : *spec.deleted()) s += (s.empty() ? "" : ";") + std::to_string(k);
        return s;
    }
    s = "w=";
    bool first = true;
    for (const auto& [k, w] : spec.weights()) {
        s += (first ? "" : ";") + std::to_string(k) + ":" + format_rational(w);
        first = false;
    }
    return s;
}

// ---------------------------------------------------------------------------
// InvariantResult
// ---------------------------------------------------------------------------

struct InvariantResult {
    CirculantSpec spec;
    Quantity quantity;
    Method method;
    Representation representation;
    json value;                          // number, "p/q" string, or array (eigenvalues)
    json metadata = json::object();      // q, u, v, seed, runtime_ms, ...
};

inline json result_to_json(const InvariantResult& r) {
    json j;
    j["spec"] = spec_to_json(r.spec);
    j["quantity"] = std::string(to_string(r.quantity));
    j["method"] = std::string(to_string(r.method));
    j["representation"] = std::string(to_string(r.representation));
    j["value"] = r.value;
    j["metadata"] = r.metadata;
    return j;
}

inline InvariantResult result_from_json(const json& j) {
    InvariantResult r{spec_from_json(j.at("spec")),
                      parse_quantity(j.at("quantity").get<std::string>()),
                      parse_method(j.at("method").get<std::string>()),
                      parse_representation(j.at("representation").get<std::string>()),
                      j.at("value"),
                      j.value("metadata", json::object())};
    if (r.representation == Representation::rational && r.value.is_string())
        parse_rational(r.value.get<std::string>());  // validates
    return r;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {"n", "s_or_r", "quantity", "method", "q", "u", "v",
                                                  "value", "exact_value", "limit", "deviation"};
    return cols;
}

inline std::string csv_header() {
    std::string s;
    for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
    return s;
}

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

namespace detail {

inline std::string csv_cell(const json& j) {
    if (j.is_null()) return "";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return format_double(j.get<double>());
    return j.dump();
}

inline std::string csv_escape(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

/// One CSV row per result; eigenvalue arrays go into the value cell as
/// space-separated numbers.
inline std::string csv_row(const InvariantResult& r) {
    const json& md = r.metadata;
    auto meta = [&](const char* key) { return md.contains(key) ? detail::csv_cell(md[key]) : std::string(); };
    std::string value, exact;
    if (r.value.is_array()) {
        for (const auto& x : r.value) value += (value.empty() ? "" : " ") + detail::csv_cell(x);
    } else if (r.representation == Representation::rational && r.value.is_string()) {
        exact = r.value.get<std::string>();
        value = format_double(to_double(parse_rational(exact)));
    } else {
        value = detail::csv_cell(r.value);
    }
    const std::vector<std::string> cells = {std::to_string(r.spec.n()),
                                            spec_label(r.spec),
                                            std::string(to_string(r.quantity)),
                                            std::string(to_string(r.method)),
                                            meta("q"),
                                            meta("u"),
                                            meta("v"),
                                            value,
                                            exact,
                                            meta("limit"),
                                            meta("deviation")};
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) row += (i ? "," : "") + detail::csv_escape(cells[i]);
    return row;
}

}  // namespace circres
