// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "credal/credal.hpp"
#include "support.hpp"

using namespace credal;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool rel_close(double a, double b, double rel) { return support::close_relative(a, b, rel); }

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string brief(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Check asia_dominance_numbers() {
    Check c;
    const auto net = support::load_fixture("asia.json");
    const auto C = net.index_of("C");
    const auto ev = Evidence::from_names(net, {{"L", "l1"}, {"S", "s1"}});

    const auto t0 = std::chrono::steady_clock::now();
    const auto plan = dominance_plan(net, C);
    DominanceTrace trace;
    const auto dp12 = dominance_dp(net, plan, 0, 1, ev, &trace);
    const auto dp21 = dominance_dp(net, plan, 1, 0, ev);
    const auto bf12 = dominance_bruteforce(net, C, 0, 1, ev);
    const auto bf21 = dominance_bruteforce(net, C, 1, 0, ev);
    const double ms = elapsed_ms(t0);

    const double a = 1.0 / 9.0, b = 45.0 / 686.0;
    c.require(rel_close(dp12.mu, a, 1e-12), "dp mu(c1,c2) = " + num(dp12.mu));
    c.require(rel_close(bf12.mu, a, 1e-12), "brute mu(c1,c2) = " + num(bf12.mu));
    c.require(rel_close(dp21.mu, b, 1e-12), "dp mu(c2,c1) = " + num(dp21.mu));
    c.require(rel_close(bf21.mu, b, 1e-12), "brute mu(c2,c1) = " + num(bf21.mu));
    c.require(trace.child_steps.size() == 2 && trace.child_steps[0].child == net.index_of("D") &&
                  trace.child_steps[0].mu.scope() == std::vector<std::size_t>{net.index_of("T")},
              "mu_D is not a function of T alone");
    if (c.ok) {
        const auto muD = trace.child_steps[0].mu.table();
        c.require(rel_close(muD[0], 1.0, 1e-12), "mu_D(t1) = " + num(muD[0]));
        c.require(rel_close(muD[1], 1.0 / 3.0, 1e-12), "mu_D(t2) = " + num(muD[1]));
        const auto& muL = trace.child_steps[1].mu;
        c.require(muL.is_scalar() && rel_close(muL.scalar(), 1.0, 1e-12), "mu_L != 1");
    }
    c.require(ms < 10.0, "runtime " + num(ms) + " ms");
    if (c.ok) c.detail = "mu = 1/9 and 45/686, mu_D = (1, 1/3), mu_L = 1, " + brief(ms) + " ms";
    return c;
}

Check asia_suspension_and_resolution() {
    Check c;
    const auto net = support::load_fixture("asia.json");
    const auto C = net.index_of("C");
    const auto r1 = classify(net, C, Evidence::from_names(net, {{"L", "l1"}, {"S", "s1"}}));
    const auto r2 = classify(net, C, Evidence::from_names(net, {{"L", "l1"}, {"S", "s1"}, {"T", "t1"}}));
    c.require(r1.undominated == std::vector<std::size_t>{0, 1}, "L=l1,S=s1 does not suspend judgement");
    c.require(r2.undominated == std::vector<std::size_t>{1}, "L=l1,S=s1,T=t1 does not give {c2}");
    if (c.ok) c.detail = "{c1,c2} then {c2}";
    return c;
}

Check baseline_contrast() {
    Check c;
    const auto net = support::load_fixture("asia.json");
    const auto C = net.index_of("C");
    const auto ev = Evidence::from_names(net, {{"L", "l1"}, {"S", "s1"}});
    const double p = precise_posterior(net, C, ev)[0];
    const auto iv = posterior_interval(net, C, 0, ev);
    c.require(std::abs(p - 0.646) <= 0.001, "baseline p(c1|l1,s1) = " + num(p));
    c.require(iv.lower <= p && p <= iv.upper, "baseline outside [" + num(iv.lower) + ", " + num(iv.upper) + "]");
    if (c.ok) c.detail = "p = " + num(p) + " in [" + num(iv.lower) + ", " + num(iv.upper) + "]";
    return c;
}

Check monty_hall() {
    Check c;
    const OutcomeSpace doors{"1", "2", "3"};
    const IncompleteModel classic(MassFunction::uniform(doors),
                                  MultiValuedMap::from_labels(doors, OutcomeSpace{"2", "3"}, {{"2", "3"}, {"3"}, {"2"}}));
    const IncompleteModel nodoor(MassFunction::uniform(doors),
                                 MultiValuedMap::from_labels(doors, OutcomeSpace{"2", "3", "none"},
                                                             {{"2", "3", "none"}, {"3", "none"}, {"2", "none"}}));
    std::mt19937_64 rng(1985);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 100; ++t) {
        const Gamble f(doors, {u(rng), u(rng), u(rng)});
        const double closed = 0.5 * f[2] + 0.5 * std::min(f[2], f[0]);
        const double r = regular_extension(classic, "2", f);
        c.require(std::abs(r - closed) <= 1e-12, "classic closed form off: " + num(r) + " vs " + num(closed));
        const double n = regular_extension(nodoor, "2", f);
        c.require(std::abs(n - std::min(f[0], f[2])) <= 1e-12, "no-door form off: " + num(n));
    }
    const Gamble fa(doors, {1, 0, 0});  // stick: car behind door 1
    const Gamble fb(doors, {0, 0, 1});  // switch to door 3
    const double ba = regular_extension(classic, "2", fb - fa);
    const double ab = regular_extension(classic, "2", fa - fb);
    c.require(std::abs(ba) <= 1e-12, "R(fb - fa | 2) = " + num(ba));
    c.require(std::abs(ab + 1.0) <= 1e-12, "R(fa - fb | 2) = " + num(ab));
    c.require(observation_prefers(classic, "2", fb, fa) == Preference::almost, "switch not almost-preferred");
    c.require(observation_prefers(nodoor, "2", fb, fa) == Preference::none &&
                  observation_prefers(nodoor, "2", fa, fb) == Preference::none,
              "no-door variant has a preference");
    if (c.ok) c.detail = "100 gambles exact; R(fb-fa)=0, R(fa-fb)=-1; no-door = min{f(1),f(3)}";
    return c;
}

Check dp_oracle_equivalence() {
    Check c;
    std::mt19937_64 rng(20040711);
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t nets = 0, comparisons = 0;
    double worst = 0.0;
    for (; nets < 250; ++nets) {
        const auto net = support::random_net(rng);
        const auto cls = support::random_class(rng, net);
        for (int pattern = 0; pattern < 3; ++pattern) {
            const auto ev = support::random_evidence(rng, net, cls, 0.15 + 0.3 * pattern);
            const auto plan = dominance_plan(net, cls);
            for (std::size_t a = 0; a < net.cardinality(cls); ++a)
                for (std::size_t b = 0; b < net.cardinality(cls); ++b) {
                    const double dp = dominance_dp(net, plan, a, b, ev).mu;
                    const double bf = dominance_bruteforce(net, cls, a, b, ev).mu;
                    worst = std::max(worst, std::abs(dp - bf) / std::max(std::abs(bf), 1e-300));
                    c.require(rel_close(dp, bf, 1e-10), "net " + std::to_string(nets) + ": " + num(dp) + " vs " + num(bf));
                    ++comparisons;
                }
        }
    }
    const double ms = elapsed_ms(t0);
    c.require(ms < 60000.0, "runtime " + num(ms) + " ms");
    if (c.ok)
        c.detail = std::to_string(nets) + " nets, " + std::to_string(comparisons) + " pairs, worst rel " + num(worst) +
                   ", " + brief(ms / 1000.0) + " s";
    return c;
}

Check regular_extension_oracle() {
    Check c;
    std::mt19937_64 rng(1999);
    double worst = 0.0;
    const int n = 500;
    for (int t = 0; t < n; ++t) {
        const auto s = support::random_scenario(rng, 5, 4, t % 3 == 0);
        const double r = regular_extension(s.model, s.observed, s.f);
        const double o = protocol_oracle(s.model, s.observed, s.f);
        worst = std::max(worst, std::abs(r - o));
        c.require(std::abs(r - o) <= 1e-10, "instance " + std::to_string(t) + ": " + num(r) + " vs " + num(o));
    }
    if (c.ok) c.detail = std::to_string(n) + " instances, worst abs " + num(worst);
    return c;
}

Check reduction_to_bayes() {
    Check c;
    std::mt19937_64 rng(4242);
    const int n = 200;
    for (int t = 0; t < n; ++t) {
        const auto net = support::random_net(rng);
        const auto cls = support::random_class(rng, net);
        const auto ev = support::complete_evidence(rng, net, cls);
        const auto r = classify(net, cls, ev);
        const auto p = precise_posterior(net, cls, ev);
        double best = 0.0;
        for (std::size_t k = 0; k < net.cardinality(cls); ++k) best = std::max(best, p[k]);
        std::vector<std::size_t> argmax;
        for (std::size_t k = 0; k < net.cardinality(cls); ++k)
            if (p[k] >= best * (1.0 - 1e-12)) argmax.push_back(k);
        c.require(r.undominated == argmax, "net " + std::to_string(t) + ": undominated set differs from argmax");
        for (const auto& iv : r.intervals)
            c.require(iv.upper - iv.lower <= 1e-12, "net " + std::to_string(t) + ": interval width " + num(iv.upper - iv.lower));
    }
    if (c.ok) c.detail = std::to_string(n) + " nets with complete evidence";
    return c;
}

Check structural_invariants() {
    Check c;
    std::mt19937_64 rng(777);
    std::size_t transitive_triples = 0;
    support::RandomNetOptions opt;
    for (int t = 0; t < 300; ++t) {
        const auto net = support::random_net(rng, opt);
        const auto cls = support::random_class(rng, net);
        const auto ev = support::random_evidence(rng, net, cls, 0.5);
        const auto r = classify(net, cls, ev);
        c.require(!r.undominated.empty(), "empty undominated set");
        const std::size_t k = net.cardinality(cls);
        std::vector<std::vector<bool>> dom(k, std::vector<bool>(k, false));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) dom[a][b] = a != b && make_outcome(r.mu[a][b]).dominates;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                c.require(!(dom[a][b] && dom[b][a]), "mutual dominance");
                for (std::size_t d = 0; d < k; ++d)
                    if (dom[a][b] && dom[b][d] && a != d) {
                        ++transitive_triples;
                        c.require(dom[a][d], "transitivity violated");
                    }
            }
        DominanceTrace trace;
        dominance_dp(net, dominance_plan(net, cls), 0, 1 % k, ev, &trace);
        c.require(trace.steps == net.children(cls).size() + 1, "step count " + std::to_string(trace.steps));
    }
    if (c.ok) c.detail = "300 nets, " + std::to_string(transitive_triples) + " chained dominances checked, m+1 steps";
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1 Asia dominance numbers", asia_dominance_numbers},
        {"AC2 Asia suspension and resolution", asia_suspension_and_resolution},
        {"AC3 baseline contrast", baseline_contrast},
        {"AC4 Monty Hall", monty_hall},
        {"AC5 DP vs brute-force dominance", dp_oracle_equivalence},
        {"AC6 regular extension vs protocol oracle", regular_extension_oracle},
        {"AC7 reduction to Bayes", reduction_to_bayes},
        {"AC8 structural invariants", structural_invariants},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", cr.name, c.detail.c_str());
        failed += c.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
