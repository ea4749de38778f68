#pragma once

// Conservative updating and credal classification over a Bayesian network:
// missing attributes may have gone missing for any reason, so posteriors are
// taken in the worst case over every completion of them.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/bayes_net.hpp"
#include "credal/error.hpp"
#include "credal/factor.hpp"
#include "credal/previsions.hpp"

namespace credal {

struct DominanceOutcome {
    double mu;
    bool dominates;
};

struct Interval {
    double lower;
    double upper;
};

/// mu values of the dynamic program, kept for inspection.
struct DominanceTrace {
    struct ChildStep {
        std::size_t child;
        Factor mu;  // after multiplying the child's ratio and eliminating
    };
    std::vector<ChildStep> child_steps;  // in execution order (last child first)
    std::optional<Factor> class_step;
    std::size_t steps = 0;
};

struct CredalClassification {
    std::size_t class_var;
    std::vector<std::size_t> undominated;
    std::vector<Interval> intervals;         // per class state
    std::vector<std::vector<double>> mu;     // mu[a][b]: test of a dominating b
    std::vector<std::size_t> display_order;  // by lower posterior, descending; not a decision
};

inline DominanceOutcome make_outcome(double mu, double tie_band = kDefaultTieBand) {
    return {mu, mu - 1.0 > tie_band};
}

namespace detail {

inline void require_positive(const BayesNet& net) {
    const auto issues = validate_positivity(net);
    if (!issues.empty()) {
        const auto& i = issues.front();
        throw PositivityViolation("CPT of '" + i.variable + "' row " + std::to_string(i.row) + " column " +
                                  std::to_string(i.column) + " is not strictly positive");
    }
}

inline void check_class_state(const BayesNet& net, std::size_t class_var, std::size_t c) {
    if (c >= net.cardinality(class_var))
        throw UnknownLabel("class state out of range for '" + net.variable(class_var).name + "'");
}

inline FullAssignment evidence_assignment(const BayesNet& net, const Evidence& ev) {
    FullAssignment a(net.size(), 0);
    for (const auto& [v, s] : ev.values()) a[v] = s;
    return a;
}

// Ratio of the family's CPT entry with the class at `num` over the class at
// `den`, tabulated over the missing variables of the family.
inline Factor family_ratio(const BayesNet& net, std::size_t var, std::size_t class_var, std::size_t num,
                           std::size_t den, const Evidence& ev, const FullAssignment& base) {
    std::vector<std::size_t> scope;
    std::vector<std::size_t> cards;
    std::vector<std::size_t> family = net.parents(var);
    family.push_back(var);
    std::sort(family.begin(), family.end());
    for (std::size_t v : family)
        if (v != class_var && !ev.observed(v)) {
            scope.push_back(v);
            cards.push_back(net.cardinality(v));
        }
    FullAssignment a = base;
    std::vector<double> table;
    for_each_configuration(net, scope, a, [&](const FullAssignment& x) {
        FullAssignment y = x;
        y[class_var] = num;
        const double p1 = net.conditional(var, y);
        y[class_var] = den;
        table.push_back(p1 / net.conditional(var, y));
    });
    return Factor(std::move(scope), std::move(cards), std::move(table));
}

inline std::vector<std::size_t> missing_in(const std::set<std::size_t>& vars, std::size_t class_var,
                                           const Evidence& ev) {
    std::vector<std::size_t> out;
    for (std::size_t v : vars)
        if (v != class_var && !ev.observed(v)) out.push_back(v);
    return out;
}

}  // namespace detail

/// Lower posterior prevision of f (a gamble on the class states): the least
/// precise conditional expectation over all completions of the missing attributes.
inline double conservative_lower(const BayesNet& net, std::size_t class_var, const Gamble& f, const Evidence& ev) {
    check_evidence(net, class_var, ev);
    require_same_space(OutcomeSpace(net.variable(class_var).states), f.space());
    detail::require_positive(net);

    const auto missing = missing_attributes(net, class_var, ev);
    FullAssignment a = detail::evidence_assignment(net, ev);
    double best = std::numeric_limits<double>::infinity();
    for_each_configuration(net, missing, a, [&](const FullAssignment& x) {
        FullAssignment y = x;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t c = 0; c < f.size(); ++c) {
            y[class_var] = c;
            const double p = joint_probability(net, y);
            num += f[c] * p;
            den += p;
        }
        if (!(den > 0.0)) throw PositivityViolation("a completion of the evidence has probability zero");
        best = std::min(best, num / den);
    });
    return best;
}

inline Interval posterior_interval(const BayesNet& net, std::size_t class_var, std::size_t c, const Evidence& ev) {
    detail::check_class_state(net, class_var, c);
    const OutcomeSpace classes(net.variable(class_var).states);
    const Gamble indicator = Gamble::indicator(classes, c);
    return {conservative_lower(net, class_var, indicator, ev), -conservative_lower(net, class_var, -indicator, ev)};
}

/// Minimum over every completion of the joint-probability ratio p(c1,e,r)/p(c2,e,r).
inline DominanceOutcome dominance_bruteforce(const BayesNet& net, std::size_t class_var, std::size_t c1,
                                             std::size_t c2, const Evidence& ev,
                                             double tie_band = kDefaultTieBand) {
    check_evidence(net, class_var, ev);
    detail::check_class_state(net, class_var, c1);
    detail::check_class_state(net, class_var, c2);
    detail::require_positive(net);

    const auto missing = missing_attributes(net, class_var, ev);
    FullAssignment a = detail::evidence_assignment(net, ev);
    double mu = std::numeric_limits<double>::infinity();
    for_each_configuration(net, missing, a, [&](const FullAssignment& x) {
        FullAssignment y = x;
        y[class_var] = c1;
        const double p1 = joint_probability(net, y);
        y[class_var] = c2;
        mu = std::min(mu, p1 / joint_probability(net, y));
    });
    return make_outcome(mu, tie_band);
}

/// Dominance test by the dynamic program over the children of the class:
/// one factor step per child, last child first, then one for the class.
inline DominanceOutcome dominance_dp(const BayesNet& net, const DominancePlan& plan, std::size_t c1, std::size_t c2,
                                     const Evidence& ev, DominanceTrace* trace = nullptr,
                                     double tie_band = kDefaultTieBand) {
    const std::size_t cls = plan.class_var;
    check_evidence(net, cls, ev);
    detail::check_class_state(net, cls, c1);
    detail::check_class_state(net, cls, c2);
    detail::require_positive(net);

    const FullAssignment base = detail::evidence_assignment(net, ev);
    Factor mu(1.0);
    std::size_t steps = 0;
    for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
        mu = detail::family_ratio(net, it->child, cls, c1, c2, ev, base) * mu;
        mu = mu.minimize_out(detail::missing_in(it->eliminate, cls, ev));
        for (std::size_t v : mu.scope())
            if (!it->earlier.count(v))
                throw InternalScopeError("mu factor after '" + net.variable(it->child).name + "' still depends on '" +
                                         net.variable(v).name + "'");
        ++steps;
        if (trace) trace->child_steps.push_back({it->child, mu});
    }
    mu = detail::family_ratio(net, cls, cls, c1, c2, ev, base) * mu;
    mu = mu.minimize_out(detail::missing_in(plan.class_scope, cls, ev));
    ++steps;
    if (!mu.is_scalar()) throw InternalScopeError("final mu is not a scalar");
    if (trace) {
        trace->class_step = mu;
        trace->steps = steps;
    }
    return make_outcome(mu.scalar(), tie_band);
}

inline DominanceOutcome dominance_dp(const BayesNet& net, std::size_t class_var, std::size_t c1, std::size_t c2,
                                     const Evidence& ev, double tie_band = kDefaultTieBand) {
    return dominance_dp(net, dominance_plan(net, class_var), c1, c2, ev, nullptr, tie_band);
}

/// Undominated classes, posterior intervals and the pairwise mu matrix.
inline CredalClassification classify(const BayesNet& net, std::size_t class_var, const Evidence& ev,
                                     double tie_band = kDefaultTieBand) {
    check_evidence(net, class_var, ev);
    detail::require_positive(net);
    const DominancePlan plan = dominance_plan(net, class_var);
    const std::size_t k = net.cardinality(class_var);

    CredalClassification out;
    out.class_var = class_var;
    out.mu.assign(k, std::vector<double>(k, 1.0));
    std::vector<bool> dominated(k, false);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            const auto d = dominance_dp(net, plan, a, b, ev, nullptr, tie_band);
            out.mu[a][b] = d.mu;
            if (d.dominates) dominated[b] = true;
        }
    for (std::size_t c = 0; c < k; ++c) {
        if (!dominated[c]) out.undominated.push_back(c);
        out.intervals.push_back(posterior_interval(net, class_var, c, ev));
    }
    out.display_order.resize(k);
    std::iota(out.display_order.begin(), out.display_order.end(), std::size_t{0});
    std::stable_sort(out.display_order.begin(), out.display_order.end(),
                     [&](std::size_t x, std::size_t y) { return out.intervals[x].lower > out.intervals[y].lower; });
    return out;
}

}  // namespace credal
