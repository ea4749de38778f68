#pragma once

// Command-line front-end. Exit codes: 0 success, 1 input or validation
// failure, 2 query failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "credal/bayes_net.hpp"
#include "credal/classify.hpp"
#include "credal/error.hpp"
#include "credal/incomplete.hpp"
#include "credal/network_io.hpp"

namespace credal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitQuery = 2;

/// "Name=state,Name=state"; whitespace around tokens is ignored.
inline std::vector<std::pair<std::string, std::string>> parse_evidence_spec(const std::string& spec) {
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(" \t") - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw QueryError("evidence item '" + token + "' is not of the form Name=state");
        std::string name = trim(token.substr(0, eq));
        std::string state = trim(token.substr(eq + 1));
        if (name.empty() || state.empty()) throw QueryError("evidence item '" + token + "' is incomplete");
        out.emplace_back(std::move(name), std::move(state));
    }
    return out;
}

/// Tie band, optionally overridden by CREDAL_TIE_BAND.
inline double tie_band_from_env() {
    const char* env = std::getenv("CREDAL_TIE_BAND");
    if (!env || !*env) return kDefaultTieBand;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(v) || v < 0.0)
        throw Error(std::string("CREDAL_TIE_BAND must be a non-negative real, got '") + env + "'");
    return v;
}

namespace detail {

inline std::string human(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct QueryOptions {
    std::string path;
    std::string class_name;
    std::string evidence;
    std::string mode = "conservative";
    std::string gamble;
    std::string prefer;
    bool json = false;
};

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::optional<BayesNet> load_network(const std::string& path, std::ostream& err) {
    try {
        return parse_network(read_file(path));
    } catch (const std::exception& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

inline Json evidence_json(const BayesNet& net, const Evidence& ev) {
    Json j = Json::object();
    for (const auto& [v, s] : ev.values()) j[net.variable(v).name] = net.variable(v).states[s];
    return j;
}

inline std::string evidence_text(const BayesNet& net, const Evidence& ev) {
    std::string s;
    for (const auto& [v, st] : ev.values())
        s += (s.empty() ? "" : ", ") + net.variable(v).name + "=" + net.variable(v).states[st];
    return s.empty() ? "(none)" : s;
}

inline void emit(std::ostream& out, const Json& j) {
    write_json(out, j);
    out << "\n";
}

inline int cmd_validate(const QueryOptions& o, std::ostream& out, std::ostream& err) {
    BayesNet* net = nullptr;
    std::optional<BayesNet> loaded;
    std::string failure;
    try {
        loaded.emplace(parse_network(read_file(o.path)));
        net = &*loaded;
    } catch (const std::exception& e) {
        failure = e.what();
    }
    if (!net) {
        if (o.json) {
            emit(out, Json{{"command", {{"name", "validate"}, {"network", o.path}}},
                           {"valid", false},
                           {"error", failure}});
        } else {
            out << "network: " << o.path << "\n" << "structure: invalid\n";
        }
        err << "error: " << o.path << ": " << failure << "\n";
        return kExitInput;
    }
    const auto issues = validate_positivity(*net);
    if (o.json) {
        Json warnings = Json::array();
        for (const auto& i : issues)
            warnings.push_back({{"variable", i.variable}, {"row", i.row}, {"column", i.column}, {"value", i.value}});
        emit(out, Json{{"command", {{"name", "validate"}, {"network", o.path}}},
                       {"valid", true},
                       {"variables", net->size()},
                       {"arcs", net->arcs().size()},
                       {"positivity", issues.empty() ? "ok" : "violated"},
                       {"positivity_warnings", warnings}});
        return kExitOk;
    }
    out << "network: " << o.path << "\n";
    out << "variables: " << net->size() << "\n";
    out << "arcs: " << net->arcs().size() << "\n";
    out << "structure: ok\n";
    if (issues.empty()) {
        out << "positivity: ok\n";
    } else {
        out << "positivity: " << issues.size() << " non-positive entr" << (issues.size() == 1 ? "y" : "ies") << "\n";
        for (const auto& i : issues)
            out << "warning: CPT of '" << i.variable << "' row " << i.row << " column " << i.column << " is "
                << human(i.value) << "\n";
    }
    return kExitOk;
}

inline int cmd_classify(const QueryOptions& o, std::ostream& out, std::ostream& err) {
    const double band = tie_band_from_env();
    auto net = load_network(o.path, err);
    if (!net) return kExitInput;
    try {
        Stopwatch clock;
        const std::size_t cls = net->index_of(o.class_name);
        const Evidence ev = Evidence::from_names(*net, parse_evidence_spec(o.evidence));
        const auto result = classify(*net, cls, ev, band);
        const auto& states = net->variable(cls).states;
        const bool suspended = result.undominated.size() == states.size();

        if (o.json) {
            Json j;
            j["command"] = {{"name", "classify"},
                            {"network", o.path},
                            {"class", o.class_name},
                            {"evidence", evidence_json(*net, ev)}};
            j["tie_band"] = band;
            Json und = Json::array();
            for (std::size_t c : result.undominated) und.push_back(states[c]);
            j["undominated"] = und;
            Json iv = Json::object();
            for (std::size_t c = 0; c < states.size(); ++c)
                iv[states[c]] = {{"lower", result.intervals[c].lower}, {"upper", result.intervals[c].upper}};
            j["intervals"] = iv;
            Json pairs = Json::array();
            for (std::size_t a = 0; a < states.size(); ++a)
                for (std::size_t b = 0; b < states.size(); ++b)
                    if (a != b)
                        pairs.push_back({{"dominant", states[a]},
                                         {"dominated", states[b]},
                                         {"mu", result.mu[a][b]},
                                         {"dominates", make_outcome(result.mu[a][b], band).dominates}});
            j["dominance"] = pairs;
            if (suspended) {
                Json order = Json::array();
                for (std::size_t c : result.display_order) order.push_back(states[c]);
                j["display_order_by_lower_posterior_not_a_decision"] = order;
            }
            emit(out, j);
            return kExitOk;
        }

        out << "class: " << o.class_name << "\n";
        out << "evidence: " << evidence_text(*net, ev) << "\n";
        out << "undominated:";
        for (std::size_t c : result.undominated) out << " " << states[c];
        out << (result.undominated.size() > 1 ? "  (judgement suspended)" : "") << "\n";
        for (std::size_t c = 0; c < states.size(); ++c)
            out << "posterior " << states[c] << ": [" << human(result.intervals[c].lower) << ", "
                << human(result.intervals[c].upper) << "]\n";
        for (std::size_t a = 0; a < states.size(); ++a)
            for (std::size_t b = 0; b < states.size(); ++b)
                if (a != b)
                    out << "mu(" << states[a] << " -> " << states[b] << "): " << human(result.mu[a][b])
                        << (make_outcome(result.mu[a][b], band).dominates ? "  dominates" : "") << "\n";
        if (suspended) {
            out << "display order by lower posterior (not a decision):";
            for (std::size_t c : result.display_order) out << " " << states[c];
            out << "\n";
        }
        out << "elapsed: " << human(clock.ms()) << " ms\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitQuery;
    }
}

inline int cmd_posterior(const QueryOptions& o, std::ostream& out, std::ostream& err) {
    auto net = load_network(o.path, err);
    if (!net) return kExitInput;
    try {
        Stopwatch clock;
        const std::size_t cls = net->index_of(o.class_name);
        const Evidence ev = Evidence::from_names(*net, parse_evidence_spec(o.evidence));
        const auto& states = net->variable(cls).states;
        Json j;
        j["command"] = {{"name", "posterior"},
                        {"network", o.path},
                        {"class", o.class_name},
                        {"evidence", evidence_json(*net, ev)},
                        {"mode", o.mode}};
        Json values = Json::object();
        if (o.mode == "baseline") {
            const auto p = precise_posterior(*net, cls, ev);
            for (std::size_t c = 0; c < states.size(); ++c) values[states[c]] = p[c];
            j["posterior"] = values;
        } else {
            for (std::size_t c = 0; c < states.size(); ++c) {
                const auto iv = posterior_interval(*net, cls, c, ev);
                values[states[c]] = {{"lower", iv.lower}, {"upper", iv.upper}};
            }
            j["intervals"] = values;
        }
        if (o.json) {
            emit(out, j);
            return kExitOk;
        }
        out << "class: " << o.class_name << "\n";
        out << "evidence: " << evidence_text(*net, ev) << "\n";
        out << "mode: " << o.mode << "\n";
        for (std::size_t c = 0; c < states.size(); ++c) {
            const auto& v = values[states[c]];
            if (o.mode == "baseline")
                out << "p(" << states[c] << "): " << human(v.get<double>()) << "\n";
            else
                out << "p(" << states[c] << "): [" << human(v["lower"].get<double>()) << ", "
                    << human(v["upper"].get<double>()) << "]\n";
        }
        out << "elapsed: " << human(clock.ms()) << " ms\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitQuery;
    }
}

inline int cmd_regext(const QueryOptions& o, std::ostream& out, std::ostream& err) {
    const double band = tie_band_from_env();
    std::optional<ScenarioDocument> doc;
    try {
        doc.emplace(parse_scenario(read_file(o.path)));
    } catch (const std::exception& e) {
        err << "error: " << o.path << ": " << e.what() << "\n";
        return kExitInput;
    }
    try {
        const auto& model = doc->model;
        Json j;
        j["command"] = {{"name", "regext"}, {"scenario", o.path}, {"observed", doc->observed}};
        if (!o.gamble.empty()) {
            const Gamble& f = doc->gamble(o.gamble);
            const double lo = regular_extension(model, doc->observed, f);
            const double up = regular_extension_upper(model, doc->observed, f);
            j["command"]["gamble"] = o.gamble;
            j["lower"] = lo;
            j["upper"] = up;
            if (o.json) {
                emit(out, j);
            } else {
                out << "observed: " << doc->observed << "\n";
                out << "gamble: " << o.gamble << "\n";
                out << "lower: " << human(lo) << "\n";
                out << "upper: " << human(up) << "\n";
            }
            return kExitOk;
        }
        const auto comma = o.prefer.find(',');
        if (comma == std::string::npos) throw QueryError("--prefer expects two gamble names 'A,B'");
        const std::string a = o.prefer.substr(0, comma);
        const std::string b = o.prefer.substr(comma + 1);
        const Gamble& fa = doc->gamble(a);
        const Gamble& fb = doc->gamble(b);
        const auto ab = observation_prefers(model, doc->observed, fa, fb, band);
        const auto ba = observation_prefers(model, doc->observed, fb, fa, band);
        j["command"]["prefer"] = {a, b};
        j["tie_band"] = band;
        j["preferences"] = Json::array(
            {{{"better", a}, {"worse", b}, {"lower", regular_extension(model, doc->observed, fa - fb)}, {"verdict", to_string(ab)}},
             {{"better", b}, {"worse", a}, {"lower", regular_extension(model, doc->observed, fb - fa)}, {"verdict", to_string(ba)}}});
        if (o.json)
            emit(out, j);
        else
            out << a << " vs " << b << ": " << to_string(ab) << "; " << b << " vs " << a << ": " << to_string(ba)
                << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitQuery;
    }
}

}  // namespace detail

/// Runs the command line; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Conservative updating and credal classification with incomplete observations", "credal"};
    app.require_subcommand(1);
    detail::QueryOptions o;

    auto* validate = app.add_subcommand("validate", "Check a network file and report positivity");
    validate->add_option("network", o.path, "Network JSON file")->required();
    validate->add_flag("--json", o.json, "Machine-readable output");

    auto* cls = app.add_subcommand("classify", "Undominated classes given partial evidence");
    cls->add_option("network", o.path, "Network JSON file")->required();
    cls->add_option("--class", o.class_name, "Class variable")->required();
    cls->add_option("--evidence", o.evidence, "Observed attributes, e.g. \"L=l1,S=s1\"");
    cls->add_flag("--json", o.json, "Machine-readable output");

    auto* post = app.add_subcommand("posterior", "Posterior of the class: conservative intervals or MAR baseline");
    post->add_option("network", o.path, "Network JSON file")->required();
    post->add_option("--class", o.class_name, "Class variable")->required();
    post->add_option("--evidence", o.evidence, "Observed attributes, e.g. \"L=l1,S=s1\"");
    post->add_option("--mode", o.mode, "conservative or baseline")
        ->check(CLI::IsMember({"conservative", "baseline"}));
    post->add_flag("--json", o.json, "Machine-readable output");

    auto* reg = app.add_subcommand("regext", "Lower posterior of a gamble in an incomplete-observation scenario");
    reg->add_option("scenario", o.path, "Scenario JSON file")->required();
    auto* g = reg->add_option("--gamble", o.gamble, "Gamble name");
    auto* p = reg->add_option("--prefer", o.prefer, "Compare two gambles 'A,B' in both directions");
    g->excludes(p);
    reg->add_flag("--json", o.json, "Machine-readable output");

    try {
        app.parse(argc, argv);
        if (reg->parsed() && o.gamble.empty() && o.prefer.empty())
            throw CLI::ValidationError("regext", "one of --gamble or --prefer is required");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (validate->parsed()) return detail::cmd_validate(o, out, err);
        if (cls->parsed()) return detail::cmd_classify(o, out, err);
        if (post->parsed()) return detail::cmd_posterior(o, out, err);
        return detail::cmd_regext(o, out, err);
    } catch (const std::exception& e) {
        // configuration problems such as a malformed CREDAL_TIE_BAND
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace credal::cli
