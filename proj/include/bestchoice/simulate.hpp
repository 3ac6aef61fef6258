#ifndef BESTCHOICE_SIMULATE_HPP
#define BESTCHOICE_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bestchoice/core.hpp"

// Monte Carlo oracle for arbitrary stopping strategies. Arrival times are
// sorted iid uniforms; the relative rank of the k-th arrival is drawn
// uniformly on {1..k}, independently of everything else. A strategy wins iff
// it stops at the last record.

namespace bestchoice::sim {

// Deterministic substream: mt19937_64 seeded via SplitMix64 from
// (master seed, stream index). The unit-interval mapping is fixed so results
// do not depend on the standard library's distribution internals.
class RngStream {
  public:
    RngStream(uint64_t master_seed, uint64_t stream_index);
    double unit();              // [0,1)
    int uniform_int(int k);     // uniform on {1..k}

  private:
    std::mt19937_64 engine_;
};

struct ArrivalSample {
    int n = 0;
    std::vector<double> times;        // strictly increasing in (0,1)
    std::vector<int> relative_ranks;  // r_k in {1..k}
    std::vector<char> is_record;      // r_k == 1
};

ArrivalSample sample_arrivals(int n, RngStream& rng);

enum class Outcome { win, stopped_wrong, no_stop };

// Decision callback, invoked only at record arrivals: given the record's
// time, its index k, and the history of the first k (time, rank) pairs,
// return true to stop.
struct StrategyProgram {
    std::string description;
    std::function<bool(double time, int index, std::span<const double> times,
                       std::span<const int> ranks)>
        decide;
};

Outcome run_once(const StrategyProgram& strategy, const ArrivalSample& sample);

// Stopping time of the strategy on a sample, with 1 meaning "no stop".
double stop_time(const StrategyProgram& strategy, const ArrivalSample& sample);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    long long wins = 0;
    long long trials = 0;
};

// Mean win indicator over `trials` runs at fixed n. Trials are processed in
// chunks of 2^16 with per-chunk substreams, so the result is bit-identical
// for a fixed (seed, trials) regardless of worker count. Worker count is
// capped by the BESTCHOICE_THREADS environment variable.
Estimate estimate(const StrategyProgram& strategy, int n, long long trials, uint64_t seed);

StrategyProgram to_program(const CutoffStrategy& s);
StrategyProgram to_program(const BranchingStrategy& s);
StrategyProgram to_program(const AnyStrategy& s);

}  // namespace bestchoice::sim

#endif
