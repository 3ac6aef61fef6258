#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bestchoice/dominance.hpp"
#include "bestchoice/exact.hpp"
#include "bestchoice/simulate.hpp"

using namespace bestchoice;
namespace bs = bestchoice::sim;

namespace {

// Coupled (n+1)-sample: insert one item, worse than all others, at a fresh
// uniform time. Later items keep their relative ranks; the inserted item is
// ranked last among the arrivals seen at its slot.
bs::ArrivalSample insert_worst(const bs::ArrivalSample& s, double u) {
    bs::ArrivalSample t;
    t.n = s.n + 1;
    auto pos = std::lower_bound(s.times.begin(), s.times.end(), u) - s.times.begin();
    t.times = s.times;
    t.times.insert(t.times.begin() + pos, u);
    t.relative_ranks = s.relative_ranks;
    t.relative_ranks.insert(t.relative_ranks.begin() + pos, static_cast<int>(pos) + 1);
    t.is_record.resize(static_cast<size_t>(t.n));
    for (int k = 0; k < t.n; ++k) t.is_record[static_cast<size_t>(k)] = (t.relative_ranks[static_cast<size_t>(k)] == 1);
    return t;
}

bs::StrategyProgram stop_at_first() {
    return {"first arrival", [](double, int, auto, auto) { return true; }};
}

}  // namespace

TEST_CASE("sample shape") {
    bs::RngStream rng(1, 0);
    auto s = bs::sample_arrivals(1, rng);
    CHECK(s.n == 1);
    CHECK(s.relative_ranks[0] == 1);
    CHECK(bool(s.is_record[0]));

    auto big = bs::sample_arrivals(50, rng);
    CHECK(std::is_sorted(big.times.begin(), big.times.end()));
    for (int k = 1; k <= 50; ++k) {
        CHECK(big.relative_ranks[static_cast<size_t>(k - 1)] >= 1);
        CHECK(big.relative_ranks[static_cast<size_t>(k - 1)] <= k);
    }
}

TEST_CASE("record thinning law: P(k-th arrival is a record) = 1/k") {
    const int trials = 1000000;
    const int n = 10;
    bs::RngStream rng(2024, 0);
    std::vector<long> records(static_cast<size_t>(n), 0);
    for (int t = 0; t < trials; ++t) {
        auto s = bs::sample_arrivals(n, rng);
        for (int k = 0; k < n; ++k)
            if (s.is_record[static_cast<size_t>(k)]) ++records[static_cast<size_t>(k)];
    }
    for (int k = 1; k <= n; ++k) {
        double p = 1.0 / k;
        double sigma = std::sqrt(p * (1.0 - p) / trials);
        double hat = static_cast<double>(records[static_cast<size_t>(k - 1)]) / trials;
        CHECK(std::fabs(hat - p) <= 3.0 * sigma);
    }
}

TEST_CASE("no-arrival probability: P(N_x = 0) = (1-x)^n") {
    const int trials = 1000000;
    bs::RngStream rng(7, 1);
    for (double x : {0.25, kInvE}) {
        const int n = 5;
        long none = 0;
        for (int t = 0; t < trials; ++t) {
            auto s = bs::sample_arrivals(n, rng);
            if (s.times[0] > x) ++none;
        }
        double p = std::pow(1.0 - x, n);
        double sigma = std::sqrt(p * (1.0 - p) / trials);
        CHECK(std::fabs(static_cast<double>(none) / trials - p) <= 3.0 * sigma);
    }
}

TEST_CASE("run_once on crafted samples") {
    // stop-at-first wins iff no later record
    bs::ArrivalSample s;
    s.n = 3;
    s.times = {0.2, 0.5, 0.9};
    s.relative_ranks = {1, 2, 2};
    s.is_record = {1, 0, 0};
    CHECK(bs::run_once(stop_at_first(), s) == bs::Outcome::win);
    s.relative_ranks = {1, 2, 1};
    s.is_record = {1, 0, 1};
    CHECK(bs::run_once(stop_at_first(), s) == bs::Outcome::stopped_wrong);

    bs::StrategyProgram never{"never", [](double, int, auto, auto) { return false; }};
    CHECK(bs::run_once(never, s) == bs::Outcome::no_stop);

    // tau_x with every arrival before x never stops
    auto tau = bs::to_program(make_x_strategy(0.95));
    CHECK(bs::run_once(tau, s) == bs::Outcome::no_stop);
    CHECK(bs::stop_time(tau, s) == 1.0);
}

TEST_CASE("estimates are deterministic for a fixed seed") {
    auto prog = bs::to_program(make_x_strategy(kInvE));
    auto a = bs::estimate(prog, 6, 200000, 99);
    auto b = bs::estimate(prog, 6, 200000, 99);
    CHECK(a.wins == b.wins);
    CHECK(a.value == b.value);
    auto c = bs::estimate(prog, 6, 200000, 100);
    CHECK(a.wins != c.wins);  // different seed, different stream
}

TEST_CASE("estimate agrees with exact values") {
    const long long trials = 1000000;
    struct Case {
        AnyStrategy strategy;
        int n;
    };
    std::vector<Case> cases;
    cases.push_back({make_x_strategy(kInvE), 7});
    cases.push_back({make_d_strategy(4), 10});  // d*(10) = 4
    cases.push_back({dominance::build_restart(kInvE, 0.5 * kInvE).strategy, 10});
    cases.push_back({dominance::build_skip_first(1.0, kInvE).strategy, 3});
    uint64_t seed = 11;
    for (const auto& c : cases) {
        double truth = exact::win_prob(c.strategy, c.n);
        auto est = bs::estimate(bs::to_program(c.strategy), c.n, trials, seed++);
        CHECK(std::fabs(est.value - truth) <= 4.0 * est.std_error);
    }
}

TEST_CASE("worker count does not change the estimate") {
    auto prog = bs::to_program(make_x_strategy(kInvE));
    setenv("BESTCHOICE_THREADS", "1", 1);
    auto a = bs::estimate(prog, 8, 300000, 42);
    setenv("BESTCHOICE_THREADS", "7", 1);
    auto b = bs::estimate(prog, 8, 300000, 42);
    unsetenv("BESTCHOICE_THREADS");
    CHECK(a.wins == b.wins);
    CHECK(a.value == b.value);
}

TEST_CASE("coupling: stop time is nonincreasing in n for nonincreasing cutoffs") {
    std::vector<CutoffStrategy> strategies;
    strategies.push_back(make_x_strategy(kInvE));
    strategies.push_back(make_d_strategy(3));
    strategies.push_back(CutoffStrategy({0.8, 0.6, 0.5, 0.4}, 0.25));
    bs::RngStream rng(5, 3);
    for (const auto& strat : strategies) {
        auto prog = bs::to_program(strat);
        for (int rep = 0; rep < 2000; ++rep) {
            auto s = bs::sample_arrivals(9, rng);
            auto t = insert_worst(s, rng.unit());
            CHECK(bs::stop_time(prog, t) <= bs::stop_time(prog, s));
        }
    }
}
