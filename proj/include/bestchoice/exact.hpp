#ifndef BESTCHOICE_EXACT_HPP
#define BESTCHOICE_EXACT_HPP

#include <functional>
#include <vector>

#include "bestchoice/core.hpp"

// Closed-form winning probabilities.
//
// d-strategies:  s(d,n) = (d-1)/n * h(d,n),  h(d,n) = sum_{j=d}^n 1/(j-1),
//                s(1,n) = 1/n.
// x-strategies:  p_n(x) = 1 - x - sum_{k=2}^n (1-x)^k / (k(k-1)).
// Nonincreasing cutoff vectors a:
//                w_n(a) = sum_{k=0}^{n-1} pi_{n,k}(a) s(k+1,n),
// where pi_{n,0} = (1-a_1)^n and, for 0 < k < n,
//   pi_{n,k} = n C(n-1,k-1) Int_{a_{k+1}}^{a_k} x^{k-1}(1-x)^{n-k} dx
//            + C(n,k) a_{k+1}^k (1-a_{k+1})^{n-k}.
// The integral is an incomplete-beta difference, so with
// T_k := P(Bin(n, a_k) >= k) the weights telescope: pi_{n,k} = T_k - T_{k+1}.
// Everything here evaluates that closed form; no quadrature.

namespace bestchoice::exact {

struct PiWeights {
    int n = 0;
    std::vector<double> weights;  // pi_{n,0} .. pi_{n,n-1}
    // sum_k pi_{n,k} should equal 1 - a_n^n; the gap is reported, not assumed.
    double normalization_deficit = 0.0;
};

// h(d,n); +infinity for d == 1 (the j=1 term divides by zero), 0 for d > n.
double harmonic_tail(int d, int n);

// s(d,n), the d-strategy winning probability on n items.
double win_prob_d(int d, int n);

// Threshold of the n-optimal d-strategy: max{d >= 2 : h(d,n) >= 1}, else 1.
int optimal_d(int n);

// p_n(x) = W(tau_x, n).
double win_prob_x(int n, double x);

// p_n'(x) = -1 + sum_{j=1}^{n-1} (1-x)^j / j.
double win_prob_x_derivative(int n, double x);

// Maximum point x_n of p_n on [0,1]; x_1 = x_2 = 0.
double argmax_x(int n);

// The pi_{n,k} weights of a nonincreasing cutoff strategy.
PiWeights pi_weights(const CutoffStrategy& strategy, int n);

// w_n(a) for a nonincreasing cutoff strategy.
double win_prob_cutoff(const CutoffStrategy& strategy, int n);

// dw_n/da_k = C(n-1,k-1) a_k^{k-1} (1-a_k)^{n-k} [h(k+1,n) - 1],
// valid when a_k <= min(a_1,...,a_{k-1}).
double win_prob_cutoff_partial(const CutoffStrategy& strategy, int n, int k);

// W(tau, n) for any exactly evaluable strategy. Branching strategies use
// W = p_n(x) + (1-y)^n [p_n((x'-y)/(1-y)) - p_n((x-y)/(1-y))].
double win_prob(const AnyStrategy& strategy, int n);

struct MixtureValue {
    double value = 0.0;
    double truncation_bound = 0.0;  // unsummed tail mass (geometric priors)
};

// W(tau, nu) = sum_n nu_n W(tau, n), given the per-n evaluator.
MixtureValue mixture_value(const std::function<double(int)>& per_n,
                           const SampleSizeDistribution& nu);

}  // namespace bestchoice::exact

#endif
