#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "credal/credal.hpp"

namespace credal::support {

inline std::string data_path(const std::string& name) { return std::string(CREDAL_DATA_DIR) + "/" + name; }

inline BayesNet load_fixture(const std::string& name) { return parse_network(read_file(data_path(name))); }

inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n, double floor = 0.05) {
    std::uniform_real_distribution<double> u(floor, 1.0);
    std::vector<double> p(n);
    for (double& x : p) x = u(rng);
    const double z = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= z;
    return p;
}

struct RandomNetOptions {
    std::size_t min_vars = 2;
    std::size_t max_vars = 8;
    std::size_t max_states = 3;
    std::size_t max_parents = 3;
    double arc_probability = 0.45;
};

/// Random DAG with strictly positive CPTs. Variable 0 in declaration order is
/// not special; callers pick the class. Declaration order is shuffled relative
/// to the topological order used to draw arcs.
inline BayesNet random_net(std::mt19937_64& rng, const RandomNetOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> nvars(opt.min_vars, opt.max_vars);
    std::uniform_int_distribution<std::size_t> nstates(2, opt.max_states);
    std::bernoulli_distribution arc(opt.arc_probability);
    const std::size_t n = nvars(rng);

    std::vector<NetworkVariable> vars(n);
    for (std::size_t i = 0; i < n; ++i) {
        vars[i].name = "X" + std::to_string(i);
        const std::size_t k = nstates(rng);
        for (std::size_t s = 0; s < k; ++s) vars[i].states.push_back("x" + std::to_string(i) + "_" + std::to_string(s));
    }
    std::vector<std::size_t> topo(n);
    std::iota(topo.begin(), topo.end(), std::size_t{0});
    std::shuffle(topo.begin(), topo.end(), rng);

    std::vector<std::vector<std::size_t>> parents(n);
    std::vector<BayesNet::Arc> arcs;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (parents[topo[j]].size() < opt.max_parents && arc(rng)) {
                parents[topo[j]].push_back(topo[i]);
                arcs.emplace_back(vars[topo[i]].name, vars[topo[j]].name);
            }

    std::map<std::string, Cpt> cpts;
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(parents[v].begin(), parents[v].end());
        Cpt c;
        std::size_t rows = 1;
        for (std::size_t p : parents[v]) {
            c.parents.push_back(vars[p].name);
            rows *= vars[p].states.size();
        }
        for (std::size_t r = 0; r < rows; ++r) c.rows.push_back(random_distribution(rng, vars[v].states.size()));
        cpts[vars[v].name] = std::move(c);
    }
    return BayesNet(std::move(vars), std::move(arcs), std::move(cpts));
}

inline Evidence random_evidence(std::mt19937_64& rng, const BayesNet& net, std::size_t class_var,
                                double observe_probability = 0.4) {
    std::bernoulli_distribution observe(observe_probability);
    Evidence ev;
    for (std::size_t v = 0; v < net.size(); ++v) {
        if (v == class_var || !observe(rng)) continue;
        std::uniform_int_distribution<std::size_t> s(0, net.cardinality(v) - 1);
        ev.set(v, s(rng));
    }
    return ev;
}

inline Evidence complete_evidence(std::mt19937_64& rng, const BayesNet& net, std::size_t class_var) {
    return random_evidence(rng, net, class_var, 1.0);
}

inline std::size_t random_class(std::mt19937_64& rng, const BayesNet& net) {
    std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);
    return pick(rng);
}

inline bool close_relative(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Random incomplete-observation instance with a precise prior.
struct RandomScenario {
    IncompleteModel model;
    std::string observed;
    Gamble f;
};

inline RandomScenario random_scenario(std::mt19937_64& rng, std::size_t max_states = 5, std::size_t max_obs = 4,
                                      bool sparse_prior = false) {
    std::uniform_int_distribution<std::size_t> ns(1, max_states);
    std::uniform_int_distribution<std::size_t> no(1, max_obs);
    const std::size_t n = ns(rng);
    const std::size_t m = no(rng);
    std::vector<std::string> sl, ol;
    for (std::size_t i = 0; i < n; ++i) sl.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i) ol.push_back("o" + std::to_string(i));
    OutcomeSpace states(sl), obs(ol);

    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<std::size_t> anyobs(0, m - 1);
    std::vector<std::vector<std::size_t>> gamma(n);
    for (auto& g : gamma) {
        for (std::size_t o = 0; o < m; ++o)
            if (coin(rng)) g.push_back(o);
        if (g.empty()) g.push_back(anyobs(rng));
    }
    auto p = random_distribution(rng, n, 0.0);
    if (sparse_prior) {
        std::bernoulli_distribution zero(0.3);
        for (double& x : p)
            if (zero(rng)) x = 0.0;
        double z = std::accumulate(p.begin(), p.end(), 0.0);
        if (z == 0.0) {
            p.assign(n, 0.0);
            p[0] = 1.0;
            z = 1.0;
        }
        for (double& x : p) x /= z;
    }
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_int_distribution<int> small(-3, 3);
    std::vector<double> f(n);
    for (double& x : f) x = coin(rng) ? val(rng) : static_cast<double>(small(rng));  // integers force ties
    return {IncompleteModel(MassFunction(states, p), MultiValuedMap(states, obs, gamma)), ol[anyobs(rng)],
            Gamble(states, f)};
}

}  // namespace credal::support
