#pragma once

// JSON documents: the network format, the incomplete-observation scenario
// format, and a deterministic writer for query results.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "credal/bayes_net.hpp"
#include "credal/error.hpp"
#include "credal/incomplete.hpp"
#include "credal/previsions.hpp"

namespace credal {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // byte is the 1-based position of the offending character
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = line_column(text, byte);
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(msg, line, col);
    }
}

template <class Err>
void require_keys(const Json& obj, std::string_view where, std::initializer_list<std::string_view> keys) {
    if (!obj.is_object()) throw Err(std::string(where) + ": expected an object");
    for (const auto& [k, _] : obj.items()) {
        bool known = false;
        for (auto want : keys) known = known || k == want;
        if (!known) throw Err(std::string(where) + ": unknown field '" + k + "'");
    }
    for (auto want : keys)
        if (!obj.contains(std::string(want))) throw Err(std::string(where) + ": missing field '" + std::string(want) + "'");
}

template <class Err>
std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) throw Err(where + ": expected a string");
    return j.get<std::string>();
}

template <class Err>
std::vector<std::string> as_strings(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Err(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string<Err>(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <class Err>
std::vector<double> as_reals(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Err(where + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw Err(where + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(j[i].get<double>());
    }
    return out;
}

}  // namespace detail

/// Parses and validates a network document.
inline BayesNet parse_network(std::string_view document) {
    using detail::as_reals;
    using detail::as_string;
    using detail::as_strings;
    const Json doc = detail::parse_json(document);
    detail::require_keys<NetworkError>(doc, "network", {"variables", "arcs", "cpts"});

    if (!doc["variables"].is_array()) throw NetworkError("variables: expected an array");
    std::vector<NetworkVariable> vars;
    for (std::size_t i = 0; i < doc["variables"].size(); ++i) {
        const auto& v = doc["variables"][i];
        const std::string where = "variables[" + std::to_string(i) + "]";
        detail::require_keys<NetworkError>(v, where, {"name", "states"});
        vars.push_back({as_string<NetworkError>(v["name"], where + ".name"),
                        as_strings<NetworkError>(v["states"], where + ".states")});
    }

    if (!doc["arcs"].is_array()) throw NetworkError("arcs: expected an array");
    std::vector<BayesNet::Arc> arcs;
    for (std::size_t i = 0; i < doc["arcs"].size(); ++i) {
        const std::string where = "arcs[" + std::to_string(i) + "]";
        auto pair = as_strings<NetworkError>(doc["arcs"][i], where);
        if (pair.size() != 2) throw NetworkError(where + ": expected [parent, child]");
        arcs.emplace_back(pair[0], pair[1]);
    }

    if (!doc["cpts"].is_object()) throw NetworkError("cpts: expected an object");
    std::map<std::string, Cpt> cpts;
    for (const auto& [name, c] : doc["cpts"].items()) {
        const std::string where = "cpts." + name;
        detail::require_keys<NetworkError>(c, where, {"parents", "rows"});
        Cpt cpt;
        cpt.parents = as_strings<NetworkError>(c["parents"], where + ".parents");
        if (!c["rows"].is_array()) throw NetworkError(where + ".rows: expected an array");
        for (std::size_t r = 0; r < c["rows"].size(); ++r)
            cpt.rows.push_back(as_reals<NetworkError>(c["rows"][r], where + ".rows[" + std::to_string(r) + "]"));
        cpts.emplace(name, std::move(cpt));
    }
    return BayesNet(std::move(vars), std::move(arcs), std::move(cpts));
}

inline Json network_to_json(const BayesNet& net) {
    Json doc;
    doc["variables"] = Json::array();
    for (const auto& v : net.variables()) doc["variables"].push_back({{"name", v.name}, {"states", v.states}});
    doc["arcs"] = Json::array();
    for (const auto& [p, c] : net.arcs()) doc["arcs"].push_back({p, c});
    doc["cpts"] = Json::object();
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Cpt c = net.cpt(i);
        doc["cpts"][net.variable(i).name] = {{"parents", c.parents}, {"rows", c.rows}};
    }
    return doc;
}

/// Writes `j` with object keys in insertion order and reals printed with
/// `digits` significant digits.
inline void write_json(std::ostream& os, const Json& j, int digits = 17, int indent = 2, int depth = 0) {
    const auto pad = [&](int d) { os << std::string(static_cast<std::size_t>(indent * d), ' '); };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                pad(depth + 1);
                os << Json(k).dump() << ": ";
                write_json(os, v, digits, indent, depth + 1);
            }
            os << "\n";
            pad(depth);
            os << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                write_json(os, j[i], digits, indent, depth + 1);
            }
            os << "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.*g", digits, x);
            os << buf;
            return;
        }
        default:
            os << j.dump();
    }
}

inline std::string serialize_network(const BayesNet& net) {
    std::ostringstream os;
    write_json(os, network_to_json(net));
    os << "\n";
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// An incomplete-observation problem with named gambles and the observation made.
struct ScenarioDocument {
    IncompleteModel model;
    std::vector<std::pair<std::string, Gamble>> gambles;
    std::string observed;

    const Gamble& gamble(std::string_view name) const {
        for (const auto& [n, g] : gambles)
            if (n == name) return g;
        throw UnknownLabel("unknown gamble '" + std::string(name) + "'");
    }
};

inline ScenarioDocument parse_scenario(std::string_view document) {
    using detail::as_reals;
    using detail::as_string;
    using detail::as_strings;
    const Json doc = detail::parse_json(document);
    detail::require_keys<NetworkError>(doc, "scenario", {"states", "observations", "gamma", "priors", "gambles", "observed"});

    try {
        const OutcomeSpace states(as_strings<NetworkError>(doc["states"], "states"));
        const OutcomeSpace obs(as_strings<NetworkError>(doc["observations"], "observations"));

        if (!doc["gamma"].is_object()) throw NetworkError("gamma: expected an object");
        std::vector<std::vector<std::string>> gamma(states.size());
        std::vector<bool> seen(states.size(), false);
        for (const auto& [s, images] : doc["gamma"].items()) {
            if (!states.contains(s)) throw NetworkError("gamma: unknown state '" + s + "'");
            const std::size_t x = states.index_of(s);
            seen[x] = true;
            gamma[x] = as_strings<NetworkError>(images, "gamma." + s);
            for (const auto& o : gamma[x])
                if (!obs.contains(o)) throw NetworkError("gamma." + s + ": unknown observation '" + o + "'");
        }
        for (std::size_t x = 0; x < states.size(); ++x)
            if (!seen[x]) throw NetworkError("gamma: no image for state '" + states.label(x) + "'");

        if (!doc["priors"].is_array() || doc["priors"].empty()) throw NetworkError("priors: expected a non-empty array");
        std::vector<MassFunction> priors;
        for (std::size_t i = 0; i < doc["priors"].size(); ++i)
            priors.emplace_back(states, as_reals<NetworkError>(doc["priors"][i], "priors[" + std::to_string(i) + "]"));

        if (!doc["gambles"].is_object()) throw NetworkError("gambles: expected an object");
        std::vector<std::pair<std::string, Gamble>> gambles;
        for (const auto& [name, values] : doc["gambles"].items())
            gambles.emplace_back(name, Gamble(states, as_reals<NetworkError>(values, "gambles." + name)));

        const std::string observed = as_string<NetworkError>(doc["observed"], "observed");
        if (!obs.contains(observed)) throw NetworkError("observed: unknown observation '" + observed + "'");

        return ScenarioDocument{IncompleteModel(CredalSet(std::move(priors)),
                                                MultiValuedMap::from_labels(states, obs, gamma)),
                                std::move(gambles), observed};
    } catch (const InvalidModel& e) {
        throw NetworkError(std::string("scenario: ") + e.what());
    }
}

}  // namespace credal
