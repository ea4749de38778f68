#pragma once

// Finite-space uncertainty models: gambles, mass functions, finitely generated
// credal sets, vacuous previsions and the preference rules built on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "credal/error.hpp"

namespace credal {

/// Values in [-band, band] are treated as zero when deciding preferences.
inline constexpr double kDefaultTieBand = 1e-12;

/// Tolerance on the total mass of a mass function (and of a CPT row).
inline constexpr double kMassTolerance = 1e-9;

/// An ordered, immutable set of distinct outcome labels. Copies share storage.
class OutcomeSpace {
public:
    explicit OutcomeSpace(std::vector<std::string> labels)
        : labels_(std::make_shared<const std::vector<std::string>>(std::move(labels))) {
        if (labels_->empty()) throw InvalidModel("outcome space must be non-empty");
        for (std::size_t i = 0; i < labels_->size(); ++i)
            for (std::size_t j = i + 1; j < labels_->size(); ++j)
                if ((*labels_)[i] == (*labels_)[j])
                    throw InvalidModel("duplicate outcome label '" + (*labels_)[i] + "'");
    }
    OutcomeSpace(std::initializer_list<std::string> labels)
        : OutcomeSpace(std::vector<std::string>(labels)) {}

    std::size_t size() const noexcept { return labels_->size(); }
    const std::vector<std::string>& labels() const noexcept { return *labels_; }
    const std::string& label(std::size_t i) const { return labels_->at(i); }

    std::size_t index_of(std::string_view label) const {
        for (std::size_t i = 0; i < labels_->size(); ++i)
            if ((*labels_)[i] == label) return i;
        throw UnknownLabel("unknown outcome '" + std::string(label) + "'");
    }

    bool contains(std::string_view label) const {
        return std::find(labels_->begin(), labels_->end(), label) != labels_->end();
    }

    friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
        return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

inline void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b) {
    if (!(a == b)) throw SpaceMismatch("objects are defined on different outcome spaces");
}

/// A bounded real-valued reward on a finite space.
class Gamble {
public:
    Gamble(OutcomeSpace space, std::vector<double> values) : space_(std::move(space)), values_(std::move(values)) {
        if (values_.size() != space_.size())
            throw InvalidModel("gamble needs exactly one value per outcome");
        for (double v : values_)
            if (!std::isfinite(v)) throw InvalidModel("gamble values must be finite");
    }

    static Gamble constant(const OutcomeSpace& space, double c) {
        return Gamble(space, std::vector<double>(space.size(), c));
    }

    static Gamble indicator(const OutcomeSpace& space, std::size_t outcome) {
        std::vector<double> v(space.size(), 0.0);
        v.at(outcome) = 1.0;
        return Gamble(space, std::move(v));
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    double min() const { return *std::min_element(values_.begin(), values_.end()); }
    double max() const { return *std::max_element(values_.begin(), values_.end()); }

    Gamble operator-() const {
        std::vector<double> v(values_.size());
        std::transform(values_.begin(), values_.end(), v.begin(), [](double x) { return -x; });
        return Gamble(space_, std::move(v));
    }

    friend Gamble operator-(const Gamble& a, const Gamble& b) {
        require_same_space(a.space_, b.space_);
        std::vector<double> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
        return Gamble(a.space_, std::move(v));
    }

    friend Gamble operator+(const Gamble& a, const Gamble& b) {
        require_same_space(a.space_, b.space_);
        std::vector<double> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
        return Gamble(a.space_, std::move(v));
    }

    /// alpha * f + beta
    Gamble affine(double alpha, double beta) const {
        std::vector<double> v(values_.size());
        std::transform(values_.begin(), values_.end(), v.begin(), [&](double x) { return alpha * x + beta; });
        return Gamble(space_, std::move(v));
    }

private:
    OutcomeSpace space_;
    std::vector<double> values_;
};

/// A subset of an outcome space.
class Event {
public:
    Event(OutcomeSpace space, std::vector<bool> members) : space_(std::move(space)), members_(std::move(members)) {
        if (members_.size() != space_.size()) throw InvalidModel("event needs one flag per outcome");
    }

    static Event empty(const OutcomeSpace& space) { return Event(space, std::vector<bool>(space.size(), false)); }
    static Event full(const OutcomeSpace& space) { return Event(space, std::vector<bool>(space.size(), true)); }

    static Event of(const OutcomeSpace& space, std::initializer_list<std::string_view> labels) {
        Event e = empty(space);
        for (auto l : labels) e.members_[space.index_of(l)] = true;
        return e;
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    bool contains(std::size_t i) const { return members_.at(i); }
    bool is_empty() const { return std::none_of(members_.begin(), members_.end(), [](bool b) { return b; }); }
    std::size_t count() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }

    bool subset_of(const Event& other) const {
        require_same_space(space_, other.space_);
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (members_[i] && !other.members_[i]) return false;
        return true;
    }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (members_[i]) out.push_back(space_.label(i));
        return out;
    }

    friend bool operator==(const Event& a, const Event& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    OutcomeSpace space_;
    std::vector<bool> members_;
};

/// A precise probability model, given by its mass function.
class MassFunction {
public:
    MassFunction(OutcomeSpace space, std::vector<double> mass) : space_(std::move(space)), mass_(std::move(mass)) {
        if (mass_.size() != space_.size()) throw InvalidModel("mass function needs one value per outcome");
        double total = 0.0;
        for (double m : mass_) {
            if (!std::isfinite(m) || m < 0.0) throw InvalidModel("masses must be finite and non-negative");
            total += m;
        }
        if (std::abs(total - 1.0) > kMassTolerance)
            throw InvalidModel("masses sum to " + std::to_string(total) + ", expected 1");
    }

    static MassFunction uniform(const OutcomeSpace& space) {
        return MassFunction(space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
    }

    static MassFunction point(const OutcomeSpace& space, std::size_t outcome) {
        std::vector<double> m(space.size(), 0.0);
        m.at(outcome) = 1.0;
        return MassFunction(space, std::move(m));
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    std::span<const double> mass() const noexcept { return mass_; }
    double operator[](std::size_t i) const { return mass_[i]; }

    double probability(const Event& e) const {
        require_same_space(space_, e.space());
        double p = 0.0;
        for (std::size_t i = 0; i < mass_.size(); ++i)
            if (e.contains(i)) p += mass_[i];
        return p;
    }

private:
    OutcomeSpace space_;
    std::vector<double> mass_;
};

/// A finitely generated credal set; lower and upper previsions are envelopes over its members.
class CredalSet {
public:
    explicit CredalSet(std::vector<MassFunction> members) : members_(std::move(members)) {
        if (members_.empty()) throw InvalidModel("credal set must have at least one member");
        for (const auto& m : members_) require_same_space(members_.front().space(), m.space());
    }
    CredalSet(MassFunction precise) : members_{std::move(precise)} {}  // NOLINT: implicit on purpose

    /// All point masses on the outcomes of `b`.
    static CredalSet vacuous(const Event& b) {
        if (b.is_empty()) throw EmptyEvent("vacuous credal set on an empty event");
        std::vector<MassFunction> ms;
        for (std::size_t i = 0; i < b.space().size(); ++i)
            if (b.contains(i)) ms.push_back(MassFunction::point(b.space(), i));
        return CredalSet(std::move(ms));
    }

    const OutcomeSpace& space() const noexcept { return members_.front().space(); }
    const std::vector<MassFunction>& members() const noexcept { return members_; }
    bool is_precise() const noexcept { return members_.size() == 1; }

private:
    std::vector<MassFunction> members_;
};

inline double expectation(const MassFunction& p, const Gamble& f) {
    require_same_space(p.space(), f.space());
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e += f[i] * p[i];
    return e;
}

inline double lower_prevision(const CredalSet& k, const Gamble& f) {
    require_same_space(k.space(), f.space());
    double lo = expectation(k.members().front(), f);
    for (const auto& m : k.members()) lo = std::min(lo, expectation(m, f));
    return lo;
}

inline double upper_prevision(const CredalSet& k, const Gamble& f) { return -lower_prevision(k, -f); }

/// Infimum of f over the non-empty event b.
inline double vacuous_lower(const Event& b, const Gamble& f) {
    require_same_space(b.space(), f.space());
    if (b.is_empty()) throw EmptyEvent("vacuous lower prevision relative to an empty event");
    double lo = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!b.contains(i)) continue;
        lo = first ? f[i] : std::min(lo, f[i]);
        first = false;
    }
    return lo;
}

/// Precise conditional expectation P(f | B).
inline double bayes_condition(const MassFunction& p, const Event& b, const Gamble& f) {
    require_same_space(p.space(), b.space());
    require_same_space(p.space(), f.space());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!b.contains(i)) continue;
        num += f[i] * p[i];
        den += p[i];
    }
    if (!(den > 0.0)) throw ZeroConditioningEvent("conditioning event has probability zero");
    return num / den;
}

/// a is strictly preferred to b: the lower prevision of f_a - f_b is positive beyond the tie band.
inline bool strictly_prefers(const CredalSet& k, const Gamble& fa, const Gamble& fb, double tie_band = kDefaultTieBand) {
    return lower_prevision(k, fa - fb) > tie_band;
}

inline bool almost_prefers(const CredalSet& k, const Gamble& fa, const Gamble& fb, double tie_band = kDefaultTieBand) {
    return lower_prevision(k, fa - fb) >= -tie_band;
}

/// Indices of the actions no other action is strictly preferred to.
inline std::vector<std::size_t> maximal_set(const CredalSet& k, std::span<const Gamble> actions,
                                            double tie_band = kDefaultTieBand) {
    if (actions.empty()) throw InvalidModel("maximal_set needs at least one action");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < actions.size() && !dominated; ++j)
            dominated = j != i && strictly_prefers(k, actions[j], actions[i], tie_band);
        if (!dominated) out.push_back(i);
    }
    return out;
}

}  // namespace credal
