#pragma once

// Discrete Bayesian networks: structure, CPTs, joint factorization, Markov
// blankets, the elimination plan used by the dominance test, and the precise
// posterior that treats missing attributes as missing at random.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "credal/error.hpp"
#include "credal/previsions.hpp"

namespace credal {

struct NetworkVariable {
    std::string name;
    std::vector<std::string> states;

    std::size_t cardinality() const noexcept { return states.size(); }

    std::size_t state_index(std::string_view s) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == s) return i;
        throw UnknownLabel("variable '" + name + "' has no state '" + std::string(s) + "'");
    }
};

/// Conditional probability table. Rows run over parent configurations in
/// row-major order, last parent fastest; columns are the owner's states.
struct Cpt {
    std::vector<std::string> parents;
    std::vector<std::vector<double>> rows;
};

struct PositivityIssue {
    std::string variable;
    std::size_t row;
    std::size_t column;
    double value;
};

class BayesNet {
public:
    using Arc = std::pair<std::string, std::string>;

    BayesNet(std::vector<NetworkVariable> variables, std::vector<Arc> arcs, std::map<std::string, Cpt> cpts)
        : variables_(std::move(variables)), arcs_(std::move(arcs)) {
        const std::size_t n = variables_.size();
        if (n == 0) throw NetworkError("network has no variables");
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = variables_[i];
            if (v.name.empty()) throw NetworkError("variable " + std::to_string(i) + " has an empty name");
            if (v.states.empty()) throw NetworkError("variable '" + v.name + "' has no states");
            for (std::size_t j = 0; j < i; ++j)
                if (variables_[j].name == v.name) throw NetworkError("duplicate variable name '" + v.name + "'");
            for (std::size_t a = 0; a < v.states.size(); ++a)
                for (std::size_t b = a + 1; b < v.states.size(); ++b)
                    if (v.states[a] == v.states[b])
                        throw NetworkError("variable '" + v.name + "' has duplicate state '" + v.states[a] + "'");
        }

        parents_.assign(n, {});
        children_.assign(n, {});
        for (const auto& [from, to] : arcs_) {
            const auto p = find(from);
            const auto c = find(to);
            if (!p) throw NetworkError("arc refers to unknown variable '" + from + "'");
            if (!c) throw NetworkError("arc refers to unknown variable '" + to + "'");
            if (std::find(parents_[*c].begin(), parents_[*c].end(), *p) != parents_[*c].end())
                throw NetworkError("duplicate arc " + from + " -> " + to);
            parents_[*c].push_back(*p);
            children_[*p].push_back(*c);
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::sort(parents_[i].begin(), parents_[i].end());
            std::sort(children_[i].begin(), children_[i].end());
        }
        check_acyclic();

        tables_.resize(n);
        for (const auto& [name, cpt] : cpts)
            if (!find(name)) throw NetworkError("CPT for unknown variable '" + name + "'");
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = variables_[i];
            auto it = cpts.find(v.name);
            if (it == cpts.end()) throw NetworkError("variable '" + v.name + "' has no CPT");
            const Cpt& cpt = it->second;
            std::vector<std::string> expected;
            for (std::size_t p : parents_[i]) expected.push_back(variables_[p].name);
            if (cpt.parents != expected)
                throw NetworkError("CPT of '" + v.name + "' lists parents [" + join(cpt.parents) +
                                   "], graph and declaration order give [" + join(expected) + "]");
            std::size_t rows = 1;
            for (std::size_t p : parents_[i]) rows *= variables_[p].cardinality();
            if (cpt.rows.size() != rows)
                throw NetworkError("CPT of '" + v.name + "' has " + std::to_string(cpt.rows.size()) + " rows, expected " +
                                   std::to_string(rows));
            auto& table = tables_[i];
            table.reserve(rows * v.cardinality());
            for (std::size_t r = 0; r < rows; ++r) {
                const auto& row = cpt.rows[r];
                if (row.size() != v.cardinality())
                    throw NetworkError("CPT of '" + v.name + "' row " + std::to_string(r) + " has " +
                                       std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(v.cardinality()));
                double sum = 0.0;
                for (double x : row) {
                    if (!std::isfinite(x) || x < 0.0)
                        throw NetworkError("CPT of '" + v.name + "' row " + std::to_string(r) +
                                           " has a negative or non-finite entry");
                    sum += x;
                }
                if (std::abs(sum - 1.0) > kMassTolerance)
                    throw NetworkError("CPT of '" + v.name + "' row " + std::to_string(r) + " sums to " +
                                       format_real(sum) + ", expected 1");
                table.insert(table.end(), row.begin(), row.end());
            }
        }
    }

    std::size_t size() const noexcept { return variables_.size(); }
    const std::vector<NetworkVariable>& variables() const noexcept { return variables_; }
    const NetworkVariable& variable(std::size_t i) const { return variables_.at(i); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    std::size_t cardinality(std::size_t i) const { return variables_.at(i).cardinality(); }

    /// Parents in declaration order.
    const std::vector<std::size_t>& parents(std::size_t i) const { return parents_.at(i); }
    const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < variables_.size(); ++i)
            if (variables_[i].name == name) return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) return *i;
        throw UnknownLabel("unknown variable '" + std::string(name) + "'");
    }

    /// Rows of the CPT of variable i, reconstructed in file layout.
    Cpt cpt(std::size_t i) const {
        Cpt out;
        for (std::size_t p : parents_.at(i)) out.parents.push_back(variables_[p].name);
        const std::size_t k = cardinality(i);
        for (std::size_t r = 0; r * k < tables_[i].size(); ++r)
            out.rows.emplace_back(tables_[i].begin() + static_cast<std::ptrdiff_t>(r * k),
                                  tables_[i].begin() + static_cast<std::ptrdiff_t>((r + 1) * k));
        return out;
    }

    /// Row index of the parent configuration of variable i found in `states`
    /// (a state per network variable; only the parents are read).
    std::size_t row_index(std::size_t i, std::span<const std::size_t> states) const {
        std::size_t row = 0;
        for (std::size_t p : parents_[i]) row = row * variables_[p].cardinality() + states[p];
        return row;
    }

    /// p(variable i = states[i] | parents as in states).
    double conditional(std::size_t i, std::span<const std::size_t> states) const {
        return tables_[i][row_index(i, states) * cardinality(i) + states[i]];
    }

    double entry(std::size_t i, std::size_t row, std::size_t column) const {
        return tables_.at(i).at(row * cardinality(i) + column);
    }

private:
    static std::string join(const std::vector<std::string>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
        return s;
    }

    static std::string format_real(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", x);
        return buf;
    }

    void check_acyclic() const {
        const std::size_t n = variables_.size();
        std::vector<int> color(n, 0);
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < n; ++s)
            if (color[s] == 0) visit(s, color, stack);
    }

    void visit(std::size_t v, std::vector<int>& color, std::vector<std::size_t>& stack) const {
        color[v] = 1;
        stack.push_back(v);
        for (std::size_t c : children_[v]) {
            if (color[c] == 1) {
                std::string cycle;
                auto it = std::find(stack.begin(), stack.end(), c);
                for (; it != stack.end(); ++it) cycle += variables_[*it].name + " -> ";
                throw NetworkError("cycle: " + cycle + variables_[c].name);
            }
            if (color[c] == 0) visit(c, color, stack);
        }
        stack.pop_back();
        color[v] = 2;
    }

    std::vector<NetworkVariable> variables_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::vector<double>> tables_;
};

/// One state index per network variable.
using FullAssignment = std::vector<std::size_t>;

/// Observed attribute values; every attribute not listed is missing.
class Evidence {
public:
    Evidence() = default;

    void set(std::size_t variable, std::size_t state) { values_[variable] = state; }

    std::optional<std::size_t> value(std::size_t variable) const {
        auto it = values_.find(variable);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    bool observed(std::size_t variable) const { return values_.count(variable) != 0; }
    const std::map<std::size_t, std::size_t>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Evidence from (variable name, state name) pairs.
    static Evidence from_names(const BayesNet& net, const std::vector<std::pair<std::string, std::string>>& pairs) {
        Evidence e;
        for (const auto& [var, state] : pairs) {
            const std::size_t v = net.index_of(var);
            if (e.observed(v)) throw QueryError("variable '" + var + "' appears twice in the evidence");
            e.set(v, net.variable(v).state_index(state));
        }
        return e;
    }

private:
    std::map<std::size_t, std::size_t> values_;
};

/// Rejects evidence that mentions the class or uses out-of-range states.
inline void check_evidence(const BayesNet& net, std::size_t class_var, const Evidence& ev) {
    if (class_var >= net.size()) throw UnknownLabel("class variable index out of range");
    for (const auto& [v, s] : ev.values()) {
        if (v >= net.size()) throw UnknownLabel("evidence variable index out of range");
        if (v == class_var)
            throw QueryError("evidence mentions the class variable '" + net.variable(v).name + "'");
        if (s >= net.cardinality(v))
            throw UnknownLabel("evidence state out of range for '" + net.variable(v).name + "'");
    }
}

/// Attributes neither observed nor the class, in declaration order.
inline std::vector<std::size_t> missing_attributes(const BayesNet& net, std::size_t class_var, const Evidence& ev) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < net.size(); ++v)
        if (v != class_var && !ev.observed(v)) out.push_back(v);
    return out;
}

/// Calls `visit(states)` for every joint state of `vars`, written into
/// `states` (other entries untouched). Last variable varies fastest.
template <class Visit>
void for_each_configuration(const BayesNet& net, std::span<const std::size_t> vars, FullAssignment& states,
                            Visit&& visit) {
    for (std::size_t v : vars) states[v] = 0;
    for (;;) {
        visit(static_cast<const FullAssignment&>(states));
        std::size_t k = vars.size();
        while (k > 0) {
            const std::size_t v = vars[k - 1];
            if (++states[v] < net.cardinality(v)) break;
            states[v] = 0;
            --k;
        }
        if (k == 0) return;
    }
}

/// Product of the CPT lookups for a complete assignment.
inline double joint_probability(const BayesNet& net, std::span<const std::size_t> a) {
    if (a.size() != net.size()) throw QueryError("assignment does not cover every variable exactly once");
    double p = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (a[i] >= net.cardinality(i)) throw UnknownLabel("state out of range for '" + net.variable(i).name + "'");
        p *= net.conditional(i, a);
    }
    return p;
}

/// Every CPT entry that is not strictly positive.
inline std::vector<PositivityIssue> validate_positivity(const BayesNet& net) {
    std::vector<PositivityIssue> out;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Cpt c = net.cpt(i);
        for (std::size_t r = 0; r < c.rows.size(); ++r)
            for (std::size_t k = 0; k < c.rows[r].size(); ++k)
                if (!(c.rows[r][k] > 0.0)) out.push_back({net.variable(i).name, r, k, c.rows[r][k]});
    }
    return out;
}

/// Parents, children and the children's other parents of v.
inline std::set<std::size_t> markov_blanket(const BayesNet& net, std::size_t v) {
    if (v >= net.size()) throw UnknownLabel("variable index out of range");
    std::set<std::size_t> out(net.parents(v).begin(), net.parents(v).end());
    for (std::size_t c : net.children(v)) {
        out.insert(c);
        out.insert(net.parents(c).begin(), net.parents(c).end());
    }
    out.erase(v);
    return out;
}

/// Elimination schedule of the dominance dynamic program for one class variable.
struct DominancePlan {
    struct Step {
        std::size_t child;
        std::set<std::size_t> family;     // parents of the child plus the child
        std::set<std::size_t> earlier;    // union of the families of the class and earlier children
        std::set<std::size_t> eliminate;  // family \ earlier
    };

    std::size_t class_var;
    std::vector<Step> steps;           // children in processing order
    std::set<std::size_t> class_scope;  // parents of the class
};

namespace detail {

inline DominancePlan build_plan(const BayesNet& net, std::size_t class_var, std::vector<std::size_t> order) {
    DominancePlan plan;
    plan.class_var = class_var;
    plan.class_scope.insert(net.parents(class_var).begin(), net.parents(class_var).end());
    std::set<std::size_t> seen = plan.class_scope;
    seen.insert(class_var);
    for (std::size_t child : order) {
        DominancePlan::Step s;
        s.child = child;
        s.family.insert(net.parents(child).begin(), net.parents(child).end());
        s.family.insert(child);
        s.earlier = seen;
        std::set_difference(s.family.begin(), s.family.end(), seen.begin(), seen.end(),
                            std::inserter(s.eliminate, s.eliminate.end()));
        seen.insert(s.family.begin(), s.family.end());
        plan.steps.push_back(std::move(s));
    }
    return plan;
}

}  // namespace detail

/// Plan with the children of the class in a topological order among
/// themselves, ties broken by declaration order.
inline DominancePlan dominance_plan(const BayesNet& net, std::size_t class_var) {
    if (class_var >= net.size()) throw UnknownLabel("class variable index out of range");
    const auto& kids = net.children(class_var);
    std::vector<std::size_t> order;
    std::vector<bool> placed(net.size(), false);
    while (order.size() < kids.size()) {
        for (std::size_t c : kids) {
            if (placed[c]) continue;
            bool ready = true;
            for (std::size_t p : net.parents(c))
                if (!placed[p] && std::find(kids.begin(), kids.end(), p) != kids.end()) ready = false;
            if (ready) {
                placed[c] = true;
                order.push_back(c);
                break;
            }
        }
    }
    return detail::build_plan(net, class_var, std::move(order));
}

/// Plan with a caller-chosen order of the children; it must list every child
/// once and extend the arcs between them.
inline DominancePlan dominance_plan(const BayesNet& net, std::size_t class_var, std::span<const std::size_t> order) {
    if (class_var >= net.size()) throw UnknownLabel("class variable index out of range");
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != net.children(class_var)) throw QueryError("order must list every child of the class exactly once");
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto& ps = net.parents(order[i]);
            if (std::find(ps.begin(), ps.end(), order[j]) != ps.end())
                throw QueryError("order puts '" + net.variable(order[i]).name + "' before its parent '" +
                                 net.variable(order[j]).name + "'");
        }
    return detail::build_plan(net, class_var, std::vector<std::size_t>(order.begin(), order.end()));
}

/// Posterior over the class with missing attributes summed out.
inline MassFunction precise_posterior(const BayesNet& net, std::size_t class_var, const Evidence& ev) {
    check_evidence(net, class_var, ev);
    const auto missing = missing_attributes(net, class_var, ev);
    FullAssignment a(net.size(), 0);
    for (const auto& [v, s] : ev.values()) a[v] = s;
    std::vector<double> mass(net.cardinality(class_var), 0.0);
    for (std::size_t c = 0; c < mass.size(); ++c) {
        a[class_var] = c;
        for_each_configuration(net, missing, a, [&](const FullAssignment& x) { mass[c] += joint_probability(net, x); });
    }
    double z = 0.0;
    for (double m : mass) z += m;
    if (!(z > 0.0)) throw ZeroConditioningEvent("evidence has probability zero");
    for (double& m : mass) m /= z;
    return MassFunction(OutcomeSpace(net.variable(class_var).states), std::move(mass));
}

}  // namespace credal
