#ifndef BESTCHOICE_CORE_HPP
#define BESTCHOICE_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Domain types for the best-choice problem with random arrivals and unknown
// sample size: cutoff strategies for the chooser, priors on the number of
// items for the adversary, and evaluation reports tying them together.

namespace bestchoice {

inline constexpr double kInvE = 0.36787944117144233;  // 1/e
inline constexpr int kMaxExactN = 1000000;  // cap for exact evaluations

// Thrown when a strategy falls outside the class an algorithm can handle
// (e.g. exact evaluation of non-monotone cutoff vectors).
struct unsupported_strategy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when distributions cannot be placed in the stochastic order.
struct unsupported_comparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative construction cannot meet its feasibility targets.
struct construction_failed : std::runtime_error {
    construction_failed(const std::string& what, int stage_)
        : std::runtime_error(what), stage(stage_) {}
    int stage;
};

// Thrown when a posterior is conditioned on an impossible observation.
struct degenerate_state : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Markovian stopping strategy: a record of index k (k arrivals seen so far)
// may be accepted from time a_k on. Explicit cutoffs a_1..a_m, then `tail`
// for every larger index. Immutable after construction.
class CutoffStrategy {
  public:
    CutoffStrategy(std::vector<double> cutoffs, double tail);

    const std::vector<double>& cutoffs() const { return cutoffs_; }
    double tail() const { return tail_; }

    // Effective cutoff a_k, 1-based.
    double cutoff(int k) const {
        return k <= static_cast<int>(cutoffs_.size()) ? cutoffs_[k - 1] : tail_;
    }

    // a_1 >= a_2 >= ... >= a_m >= tail. Exact evaluation requires this.
    bool nonincreasing() const { return nonincreasing_; }

  private:
    std::vector<double> cutoffs_;
    double tail_;
    bool nonincreasing_;
};

// Skip the first d-1 items, then stop at the first record.
CutoffStrategy make_d_strategy(int d);

// Stop at the first record arriving after time x, regardless of index.
CutoffStrategy make_x_strategy(double x);

// Two-phase strategy: if any arrival occurred by `switch_time` y, play the
// x-strategy `if_nonempty`; otherwise play `if_empty` (both >= y).
struct BranchingStrategy {
    BranchingStrategy(double switch_time, double if_nonempty, double if_empty);
    double switch_time;
    double if_nonempty;
    double if_empty;
};

using AnyStrategy = std::variant<CutoffStrategy, BranchingStrategy>;

// Prior on the number of items: point mass, finite support, or geometric
// with nu_n = theta * (theta+1)^{-n}, n >= 1.
class SampleSizeDistribution {
  public:
    enum class Kind { point_mass, finite, geometric };

    static SampleSizeDistribution point_mass(int n);
    static SampleSizeDistribution finite(std::vector<std::pair<int, double>> support);
    static SampleSizeDistribution geometric(double theta);

    Kind kind() const { return kind_; }
    // Sorted (n, weight) atoms; empty for geometric.
    const std::vector<std::pair<int, double>>& support() const { return support_; }
    double theta() const { return theta_; }

    double weight(int n) const;          // nu_n
    double tail_mass_from(int m) const;  // P(N >= m)
    int max_n() const;                   // largest support atom (finite kinds)

    // Smallest N with P(n > N) <= tol; used to truncate geometric priors.
    int truncation_length(double tail_tol) const;

  private:
    SampleSizeDistribution() = default;
    Kind kind_ = Kind::point_mass;
    std::vector<std::pair<int, double>> support_;
    double theta_ = 0.0;
};

enum class Ordering { nu1_dominates, nu2_dominates, equal, incomparable };

// Partial stochastic order: nu2 dominates iff its tail sums P(N >= m) are
// >= those of nu1 for every m, strictly somewhere.
Ordering stochastic_order_compare(const SampleSizeDistribution& nu1,
                                  const SampleSizeDistribution& nu2);

// Per-n winning probabilities of one strategy, optionally mixed over a prior.
struct EvaluationReport {
    std::map<int, double> per_n;
    std::optional<double> mixture_value;
    std::map<int, double> std_errors;  // Monte Carlo only
    std::string strategy_description;
    std::string method;  // "exact" | "monte-carlo"
};

// Checks the report invariants (probabilities in range, mixture consistency).
// Returns an empty string when valid, else a diagnostic.
std::string validate(const EvaluationReport& report, const SampleSizeDistribution* nu = nullptr);

}  // namespace bestchoice

#endif
