#pragma once

// Incomplete (set-valued) observations: a multi-valued map from states to the
// observations they can produce, with no assumption on how an observation is
// chosen among them. Posterior lower previsions follow by regular extension.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "credal/error.hpp"
#include "credal/previsions.hpp"

namespace credal {

class MultiValuedMap {
public:
    /// `gamma[x]` lists the observation indices state x may produce.
    MultiValuedMap(OutcomeSpace states, OutcomeSpace observations, std::vector<std::vector<std::size_t>> gamma)
        : states_(std::move(states)), observations_(std::move(observations)) {
        if (gamma.size() != states_.size()) throw InvalidModel("multi-valued map needs one image per state");
        images_.reserve(gamma.size());
        for (std::size_t x = 0; x < gamma.size(); ++x) {
            if (gamma[x].empty())
                throw InvalidModel("image of state '" + states_.label(x) + "' is empty");
            std::vector<bool> flags(observations_.size(), false);
            for (std::size_t o : gamma[x]) {
                if (o >= observations_.size()) throw InvalidModel("observation index out of range");
                flags[o] = true;
            }
            images_.emplace_back(observations_, std::move(flags));
        }
    }

    /// Map whose images are given by observation labels.
    static MultiValuedMap from_labels(OutcomeSpace states, OutcomeSpace observations,
                                      const std::vector<std::vector<std::string>>& gamma) {
        std::vector<std::vector<std::size_t>> idx(gamma.size());
        for (std::size_t x = 0; x < gamma.size(); ++x)
            for (const auto& l : gamma[x]) idx[x].push_back(observations.index_of(l));
        return MultiValuedMap(std::move(states), std::move(observations), std::move(idx));
    }

    /// Complete observation: every state is observed as itself.
    static MultiValuedMap identity(const OutcomeSpace& space) {
        std::vector<std::vector<std::size_t>> g(space.size());
        for (std::size_t x = 0; x < space.size(); ++x) g[x] = {x};
        return MultiValuedMap(space, space, std::move(g));
    }

    const OutcomeSpace& states() const noexcept { return states_; }
    const OutcomeSpace& observations() const noexcept { return observations_; }
    const Event& image(std::size_t x) const { return images_.at(x); }

private:
    OutcomeSpace states_;
    OutcomeSpace observations_;
    std::vector<Event> images_;
};

/// Prior credal set on the states plus the incompleteness map.
class IncompleteModel {
public:
    IncompleteModel(CredalSet prior, MultiValuedMap map) : prior_(std::move(prior)), map_(std::move(map)) {
        require_same_space(prior_.space(), map_.states());
    }

    const CredalSet& prior() const noexcept { return prior_; }
    const MultiValuedMap& map() const noexcept { return map_; }

private:
    CredalSet prior_;
    MultiValuedMap map_;
};

/// States that may produce observation o.
inline Event compatible_outcomes(const MultiValuedMap& map, std::string_view o) {
    const std::size_t oi = map.observations().index_of(o);
    std::vector<bool> flags(map.states().size());
    for (std::size_t x = 0; x < flags.size(); ++x) flags[x] = map.image(x).contains(oi);
    return Event(map.states(), std::move(flags));
}

/// States that can only produce observation o.
inline Event certainty_set(const MultiValuedMap& map, std::string_view o) {
    const std::size_t oi = map.observations().index_of(o);
    std::vector<bool> flags(map.states().size());
    for (std::size_t x = 0; x < flags.size(); ++x) flags[x] = map.image(x).contains(oi) && map.image(x).count() == 1;
    return Event(map.states(), std::move(flags));
}

/// Vacuous lower prevision of g (on observations) given the state x.
inline double forward_vacuous(const MultiValuedMap& map, std::string_view x, const Gamble& g) {
    require_same_space(map.observations(), g.space());
    return vacuous_lower(map.image(map.states().index_of(x)), g);
}

namespace detail {

// sum_{certain} p (f - mu)^+  +  sum_{compatible} p min(f - mu, 0)
inline double regext_balance(const MassFunction& p, const Gamble& f, const Event& compatible, const Event& certain,
                             double mu) {
    double s = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (certain.contains(x)) s += p[x] * std::max(f[x] - mu, 0.0);
        if (compatible.contains(x)) s += p[x] * std::min(f[x] - mu, 0.0);
    }
    return s;
}

// Greatest mu with regext_balance(mu) >= 0, for a member with P(compatible) > 0.
// The balance is continuous, piecewise linear and non-increasing with kinks at
// the values of f on the compatible states only.
inline double regext_root(const MassFunction& p, const Gamble& f, const Event& compatible, const Event& certain) {
    std::vector<double> kinks;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (compatible.contains(x)) kinks.push_back(f[x]);
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    std::vector<double> balance(kinks.size());
    for (std::size_t j = 0; j < kinks.size(); ++j) balance[j] = regext_balance(p, f, compatible, certain, kinks[j]);

    // balance[0] >= 0 always holds: no compatible term is negative there.
    std::size_t j = 0;
    while (j + 1 < kinks.size() && balance[j + 1] >= 0.0) ++j;

    if (j + 1 == kinks.size()) {
        // Past the last kink the slope is -P(compatible).
        const double slope = p.probability(compatible);
        return kinks[j] + std::max(balance[j], 0.0) / slope;
    }
    if (balance[j] <= 0.0) return kinks[j];
    return kinks[j] + balance[j] * (kinks[j + 1] - kinks[j]) / (balance[j] - balance[j + 1]);
}

}  // namespace detail

/// Lower posterior prevision of f after observing o, by regular extension.
inline double regular_extension(const IncompleteModel& model, std::string_view o, const Gamble& f) {
    const auto& map = model.map();
    require_same_space(map.states(), f.space());
    const Event compatible = compatible_outcomes(map, o);
    const Event certain = certainty_set(map, o);

    double best = std::numeric_limits<double>::infinity();
    bool conditioned = false;
    for (const auto& p : model.prior().members()) {
        // Members giving the compatible set probability zero add nothing to the condition.
        if (!(p.probability(compatible) > 0.0)) continue;
        conditioned = true;
        best = std::min(best, detail::regext_root(p, f, compatible, certain));
    }
    return conditioned ? best : f.min();
}

inline double regular_extension_upper(const IncompleteModel& model, std::string_view o, const Gamble& f) {
    return -regular_extension(model, o, -f);
}

/// Brute-force lower posterior for a precise prior: minimum of the Bayes
/// posterior over every deterministic selection of one observation per state.
inline double protocol_oracle(const IncompleteModel& model, std::string_view o, const Gamble& f) {
    if (!model.prior().is_precise()) throw InvalidModel("protocol oracle needs a precise prior");
    const auto& map = model.map();
    require_same_space(map.states(), f.space());
    const MassFunction& p = model.prior().members().front();
    const std::size_t oi = map.observations().index_of(o);
    const std::size_t n = map.states().size();

    std::vector<std::vector<std::size_t>> options(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t k = 0; k < map.observations().size(); ++k)
            if (map.image(x).contains(k)) options[x].push_back(k);

    std::vector<std::size_t> choice(n, 0);
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (;;) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (options[x][choice[x]] != oi) continue;
            num += f[x] * p[x];
            den += p[x];
        }
        if (den > 0.0) {
            any = true;
            best = std::min(best, num / den);
        }
        std::size_t x = 0;
        while (x < n && ++choice[x] == options[x].size()) choice[x++] = 0;
        if (x == n) break;
    }
    return any ? best : f.min();
}

enum class Preference { strict, almost, none };

inline const char* to_string(Preference p) {
    switch (p) {
        case Preference::strict: return "strict";
        case Preference::almost: return "almost";
        case Preference::none: return "none";
    }
    return "none";
}

/// Preference for exchanging f_b for f_a after observing o.
inline Preference observation_prefers(const IncompleteModel& model, std::string_view o, const Gamble& fa,
                                      const Gamble& fb, double tie_band = kDefaultTieBand) {
    const double r = regular_extension(model, o, fa - fb);
    if (r > tie_band) return Preference::strict;
    if (r >= -tie_band) return Preference::almost;
    return Preference::none;
}

}  // namespace credal
