#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "credal/error.hpp"

namespace credal {

/// A dense real table over a set of discrete variables. Scope is kept sorted by
/// variable index; the table is row-major with the last scope variable fastest.
class Factor {
public:
    /// Scalar factor.
    explicit Factor(double value = 1.0) : table_{value} {}

    Factor(std::vector<std::size_t> scope, std::vector<std::size_t> cards, std::vector<double> table)
        : scope_(std::move(scope)), cards_(std::move(cards)), table_(std::move(table)) {
        if (scope_.size() != cards_.size()) throw InvalidModel("factor scope and cardinalities disagree");
        if (!std::is_sorted(scope_.begin(), scope_.end()) ||
            std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
            throw InvalidModel("factor scope must be strictly increasing");
        if (table_.size() != volume(cards_)) throw InvalidModel("factor table has the wrong length");
    }

    const std::vector<std::size_t>& scope() const noexcept { return scope_; }
    const std::vector<std::size_t>& cardinalities() const noexcept { return cards_; }
    std::span<const double> table() const noexcept { return table_; }
    bool is_scalar() const noexcept { return scope_.empty(); }

    double scalar() const {
        if (!is_scalar()) throw InternalScopeError("factor is not a scalar");
        return table_.front();
    }

    bool has(std::size_t var) const { return std::binary_search(scope_.begin(), scope_.end(), var); }

    /// Value at a configuration given as one state per scope variable.
    double at(std::span<const std::size_t> config) const { return table_[offset(config)]; }

    /// Value with the scope variables read from a full state vector indexed by variable.
    double at_assignment(std::span<const std::size_t> states) const {
        std::size_t off = 0;
        for (std::size_t k = 0; k < scope_.size(); ++k) off = off * cards_[k] + states[scope_[k]];
        return table_[off];
    }

    friend Factor operator*(const Factor& a, const Factor& b) {
        std::vector<std::size_t> scope;
        std::vector<std::size_t> cards;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.scope_.size() || j < b.scope_.size()) {
            if (j == b.scope_.size() || (i < a.scope_.size() && a.scope_[i] < b.scope_[j])) {
                scope.push_back(a.scope_[i]);
                cards.push_back(a.cards_[i++]);
            } else if (i == a.scope_.size() || b.scope_[j] < a.scope_[i]) {
                scope.push_back(b.scope_[j]);
                cards.push_back(b.cards_[j++]);
            } else {
                if (a.cards_[i] != b.cards_[j]) throw InvalidModel("factors disagree on a cardinality");
                scope.push_back(a.scope_[i]);
                cards.push_back(a.cards_[i]);
                ++i;
                ++j;
            }
        }
        const auto pa = a.positions_in(scope);
        const auto pb = b.positions_in(scope);
        std::vector<double> table(volume(cards));
        std::vector<std::size_t> config(scope.size(), 0);
        std::vector<std::size_t> ca(a.scope_.size());
        std::vector<std::size_t> cb(b.scope_.size());
        for (std::size_t off = 0; off < table.size(); ++off) {
            for (std::size_t k = 0; k < ca.size(); ++k) ca[k] = config[pa[k]];
            for (std::size_t k = 0; k < cb.size(); ++k) cb[k] = config[pb[k]];
            table[off] = a.at(ca) * b.at(cb);
            increment(config, cards);
        }
        return Factor(std::move(scope), std::move(cards), std::move(table));
    }

    /// Minimum over all joint states of the listed variables; variables not in
    /// scope are ignored.
    Factor minimize_out(std::span<const std::size_t> vars) const {
        std::vector<std::size_t> keep_scope;
        std::vector<std::size_t> keep_cards;
        std::vector<bool> dropped(scope_.size(), false);
        for (std::size_t k = 0; k < scope_.size(); ++k) {
            dropped[k] = std::find(vars.begin(), vars.end(), scope_[k]) != vars.end();
            if (!dropped[k]) {
                keep_scope.push_back(scope_[k]);
                keep_cards.push_back(cards_[k]);
            }
        }
        std::vector<double> table(volume(keep_cards), std::numeric_limits<double>::infinity());
        std::vector<std::size_t> config(scope_.size(), 0);
        for (std::size_t off = 0; off < table_.size(); ++off) {
            std::size_t target = 0;
            for (std::size_t k = 0; k < scope_.size(); ++k)
                if (!dropped[k]) target = target * cards_[k] + config[k];
            table[target] = std::min(table[target], table_[off]);
            increment(config, cards_);
        }
        return Factor(std::move(keep_scope), std::move(keep_cards), std::move(table));
    }

private:
    static std::size_t volume(const std::vector<std::size_t>& cards) {
        std::size_t v = 1;
        for (std::size_t c : cards) v *= c;
        return v;
    }

    static void increment(std::vector<std::size_t>& config, const std::vector<std::size_t>& cards) {
        for (std::size_t k = config.size(); k > 0; --k) {
            if (++config[k - 1] < cards[k - 1]) return;
            config[k - 1] = 0;
        }
    }

    std::size_t offset(std::span<const std::size_t> config) const {
        std::size_t off = 0;
        for (std::size_t k = 0; k < scope_.size(); ++k) off = off * cards_[k] + config[k];
        return off;
    }

    std::vector<std::size_t> positions_in(const std::vector<std::size_t>& scope) const {
        std::vector<std::size_t> pos(scope_.size());
        for (std::size_t k = 0; k < scope_.size(); ++k)
            pos[k] = static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), scope_[k]) - scope.begin());
        return pos;
    }

    std::vector<std::size_t> scope_;
    std::vector<std::size_t> cards_;
    std::vector<double> table_;
};

}  // namespace credal
