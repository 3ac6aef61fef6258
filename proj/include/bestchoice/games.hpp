#ifndef BESTCHOICE_GAMES_HPP
#define BESTCHOICE_GAMES_HPP

#include <utility>
#include <vector>

#include "bestchoice/core.hpp"

// The game against an adversary choosing the number of items: optimal play
// against geometric priors, a best-response solver for finite priors, the
// two worked two-point games, and the stochastic-order monotonicity
// counter-examples built from them.

namespace bestchoice::games {

struct GeometricOptimal {
    double theta = 0.0;
    double x = 0.0;                 // (1/e - theta(e-1)/e)_+
    double numeric_x = 0.0;         // argmax of W(tau_., nu) found numerically
    double value = 0.0;             // W(tau_x, nu), series evaluation
    double closed_form_value = 0.0; // (theta + x) log((theta+1)/(theta+x))
    double truncation_bound = 0.0;
    // |value - (theta+1)/e| <= 1e-9; holds on theta <= 1/(e-1) (x > 0 side).
    bool value_identity_holds = false;
};

GeometricOptimal geometric_optimal_x(double theta);

// P(n | N_t = k) proportional to nu_n C(n,k) t^k (1-t)^{n-k}. Geometric
// priors are truncated at tail mass 1e-12.
struct Posterior {
    std::vector<int> n;
    std::vector<double> prob;
};
Posterior posterior(const SampleSizeDistribution& nu, double t, int k);

struct AcceptancePolicy {
    int n_bar = 0;
    double value = 0.0;  // optimal winning probability V(0,0)
    // accept[k-1]: disjoint closed intervals of acceptance times for a
    // record of index k (regions may be non-intervals).
    std::vector<std::vector<std::pair<double, double>>> accept;
    bool accuracy_warning = false;  // value moved > 1e-3 when halving the grid
    double half_grid_value = 0.0;
};

// Backward induction on a uniform time grid over states (t, N_t = k):
// stop value q(t,k) = E[k/n | t,k], exact one-step survival probabilities,
// accept iff q >= V. The t -> 1 boundary uses the limiting fixed-n
// continuation values, where the posterior concentrates on the smallest
// compatible support point. Value accuracy is O(1/grid_size).
AcceptancePolicy best_response(const SampleSizeDistribution& nu, int grid_size);

// Two-point prior nu_1 = 1-p, nu_4 = p; b = 1 - a_1.
// w(b,p) = (1-p) b + (p/24)(11 - 5 b^4).
double game_example1(double b, double p);

struct SaddleReport {
    double b_star = 0.0;
    double p_star = 0.0;
    double value = 0.0;
    double equalizer_check = 0.0;  // max_p |w(b*,p) - value| over a 1001 grid
    double best_response_threshold = 0.0;  // p below which b(p) = 1
    // (p, max_b w(b,p)) on a grid of [p*, 1]; strictly increasing.
    std::vector<std::pair<double, double>> monotonicity_segment;
    bool monotonic = false;
};

SaddleReport game_example1_saddle();

// Two-point prior nu_3 = 1-p, nu_6 = p; b = 1 - a_2. Returns the two
// conditional winning probabilities (f1 on n=3, f2 on n=6).
std::pair<double, double> game_example2(double b);

SaddleReport game_example2_saddle();

enum class WhichExample { example1, example2 };

struct MonotonicityReport {
    double p_a = 0.0, p_b = 0.0;
    Ordering order = Ordering::equal;
    double value_a = 0.0, value_b = 0.0;  // analytic optimal values
    double dp_value_a = 0.0, dp_value_b = 0.0;  // best-response DP cross-check
    bool counterexample = false;  // nu_b stochastically dominates yet pays more
};

// Exhibits p* <= p_a < p_b <= 1 with the stochastically larger prior giving
// the strictly larger optimal value, refuting monotonicity in the
// stochastic order. Pass p_a == p_b for the degenerate no-counterexample case.
MonotonicityReport monotonicity_counterexample(WhichExample which, double p_a, double p_b,
                                               int dp_grid = 20000);

}  // namespace bestchoice::games

#endif
