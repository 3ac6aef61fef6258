#ifndef BESTCHOICE_MINIMAX_HPP
#define BESTCHOICE_MINIMAX_HPP

#include <vector>

#include "bestchoice/core.hpp"

// Right-shift constructions: cutoffs above 1/e that pin the winning
// probability for small n at exactly 1/e and gain for larger n, keeping the
// strategy minimax (w_n >= 1/e for all n).

namespace bestchoice::minimax {

struct TableRow {
    int n;
    double w_n;        // constructed strategy
    double p_ref;      // p_n(1/e)
};

struct EqualizerResult {
    CutoffStrategy strategy;
    std::vector<double> cutoffs;     // a_1..a_m > 1/e, decreasing
    std::vector<int> constrained_n;  // n with w_n pinned to 1/e
    std::vector<TableRow> table;     // n in {4..10, 15, 20, 25}
    int crossover_n = 0;             // least n with w_n > p_n(1/e)
};

// m in {1,2,3}: a_1 = 1 - 1/e, a_2 = sqrt(1 - 2/e), a_3 by root-solving
// w_3(a_1,a_2,.,1/e,...) = 1/e on (1/e, a_2).
EqualizerResult equalizer_cutoffs(int m);

// Table rows for the three-cutoff equalizer.
std::vector<TableRow> reproduce_table();

struct RightShiftStep {
    CutoffStrategy strategy;
    int step = 0;
    double raised_to = 0.0;
    double min_w = 0.0;                  // min over n <= n_max of w_n
    std::vector<int> active_constraints;  // n with w_n within 1e-9 of 1/e
    std::vector<int> beats;               // n with w_n > p_n(1/e) + 1e-12
    std::vector<int> loses;               // n with w_n < p_n(1/e) - 1e-12
};

// Step k raises cutoff a_k to the largest value keeping a_k < a_{k-1} and
// w_n >= 1/e for every n <= n_max. Each step is verified minimax; the sets
// where it beats/loses to tau_{1/e} are reported, not asserted.
std::vector<RightShiftStep> general_right_shift(int steps, int n_max = 500);

}  // namespace bestchoice::minimax

#endif
