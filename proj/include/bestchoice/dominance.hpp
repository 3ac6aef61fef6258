#ifndef BESTCHOICE_DOMINANCE_HPP
#define BESTCHOICE_DOMINANCE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bestchoice/core.hpp"

// Dominance verdicts between exactly evaluable strategies, and the three
// constructions that beat the 1/e-strategy on prescribed sets of n.

namespace bestchoice::dominance {

enum class Relation { dominates, strongly_dominates_on_Z, dominated, incomparable, equal };

struct DominanceVerdict {
    Relation relation = Relation::equal;
    std::vector<int> witness_set;   // n with strict inequality in favour of a
    std::map<int, double> diffs;    // n -> W(a,n) - W(b,n)
    double asymptote_a = 0.0;       // lim_n W(a,n)
    double asymptote_b = 0.0;
    double tolerance = 1e-12;
};

// Exact per-n comparison of strategy a against strategy b over n = 1..n_max.
// With Z given, checks strong dominance on Z first. Differences within the
// tolerance count as ties. Asymptotic limits are reported separately.
DominanceVerdict compare(const AnyStrategy& a, const AnyStrategy& b, int n_max,
                         const std::set<int>* Z = nullptr, double tolerance = 1e-12);

// lim_n W(tau, n) = -x log x where x is the limiting cutoff.
double asymptotic_value(const AnyStrategy& strategy);

// Cutoffs (a1), tail x: the lone arrival before x is never taken early.
// Delta(n) = [(1-x)^n - (1-a1)^n] (s(2,n) - s(1,n)).
struct SkipFirstConstruction {
    CutoffStrategy strategy;
    double a1;
    double x;
    double delta(int n) const;  // W(tau, n) - W(tau_x, n)
};
SkipFirstConstruction build_skip_first(double a1, double x);

// If nothing arrived by y, restart with the short-horizon optimum c = 2-sqrt(3)
// rescaled to [y,1]. Delta(n) = (1-y)^n [p_n(c) - p_n((x-y)/(1-y))].
struct RestartConstruction {
    BranchingStrategy strategy;
    double x;
    double y;
    double delta(int n) const;  // W(tau, n) - W(tau_x, n)
};
RestartConstruction build_restart(double x, double y);

inline constexpr double kRestartBase = 0.2679491924311227;  // 2 - sqrt(3)

// Ladder n_1 > n_2 = d*(n_1)-1 > ... > n_m >= 1, block j covering record
// indices n_{j+1} < k <= n_j with cutoff c_j, c_1 < c_2 < ... < c_m < 1/e.
struct LadderPlan {
    std::vector<int> ladder;
    std::vector<double> block_cutoffs;
    std::vector<double> advantage_floors;  // alpha_j after each stage
};

struct LadderConstruction {
    CutoffStrategy strategy;
    LadderPlan plan;
    std::vector<double> advantages;  // W(tau',n) - p_n(1/e) for n = 1..n_1
};

// Strategy with all cutoffs in (0, 1/e) strictly beating the 1/e-strategy for
// every n <= n1. Stage j lowers block j by bisection, keeping the incumbent
// advantage for larger n above alpha_{j-1}/2. Verified, not assumed.
LadderConstruction build_finite_Z_dominator(int n1, double floor_factor = 0.5);

}  // namespace bestchoice::dominance

#endif
