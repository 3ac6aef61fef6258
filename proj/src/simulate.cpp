#include "bestchoice/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace bestchoice::sim {

namespace {

constexpr long long kChunkSize = 1 << 16;

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int worker_count(long long chunks) {
    long long hw = std::thread::hardware_concurrency();
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("BESTCHOICE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = v;
    }
    return static_cast<int>(std::min<long long>(hw, chunks));
}

}  // namespace

RngStream::RngStream(uint64_t master_seed, uint64_t stream_index)
    : engine_(splitmix64(master_seed ^ splitmix64(stream_index))) {}

double RngStream::unit() {
    // 53-bit mantissa mapping, independent of the library's distributions.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int RngStream::uniform_int(int k) {
    // rejection on the top of the 64-bit range keeps the draw unbiased
    uint64_t bound = ~uint64_t(0) - (~uint64_t(0) % static_cast<uint64_t>(k));
    uint64_t v;
    do {
        v = engine_();
    } while (v >= bound);
    return static_cast<int>(v % static_cast<uint64_t>(k)) + 1;
}

ArrivalSample sample_arrivals(int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    ArrivalSample s;
    s.n = n;
    s.times.resize(static_cast<size_t>(n));
    for (auto& t : s.times) t = rng.unit();
    std::sort(s.times.begin(), s.times.end());
    s.relative_ranks.resize(static_cast<size_t>(n));
    s.is_record.resize(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        int r = rng.uniform_int(k);
        s.relative_ranks[static_cast<size_t>(k - 1)] = r;
        s.is_record[static_cast<size_t>(k - 1)] = (r == 1);
    }
    return s;
}

Outcome run_once(const StrategyProgram& strategy, const ArrivalSample& sample) {
    for (int k = 1; k <= sample.n; ++k) {
        if (!sample.is_record[static_cast<size_t>(k - 1)]) continue;
        bool stop = strategy.decide(sample.times[static_cast<size_t>(k - 1)], k,
                                    std::span<const double>(sample.times.data(), k),
                                    std::span<const int>(sample.relative_ranks.data(), k));
        if (!stop) continue;
        for (int j = k + 1; j <= sample.n; ++j)
            if (sample.is_record[static_cast<size_t>(j - 1)]) return Outcome::stopped_wrong;
        return Outcome::win;
    }
    return Outcome::no_stop;
}

double stop_time(const StrategyProgram& strategy, const ArrivalSample& sample) {
    for (int k = 1; k <= sample.n; ++k) {
        if (!sample.is_record[static_cast<size_t>(k - 1)]) continue;
        if (strategy.decide(sample.times[static_cast<size_t>(k - 1)], k,
                            std::span<const double>(sample.times.data(), k),
                            std::span<const int>(sample.relative_ranks.data(), k)))
            return sample.times[static_cast<size_t>(k - 1)];
    }
    return 1.0;
}

Estimate estimate(const StrategyProgram& strategy, int n, long long trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const long long chunks = (trials + kChunkSize - 1) / kChunkSize;
    std::vector<long long> chunk_wins(static_cast<size_t>(chunks), 0);

    auto run_chunk = [&](long long c) {
        RngStream rng(seed, static_cast<uint64_t>(c));
        long long lo = c * kChunkSize;
        long long count = std::min(kChunkSize, trials - lo);
        long long wins = 0;
        for (long long i = 0; i < count; ++i) {
            ArrivalSample s = sample_arrivals(n, rng);
            if (run_once(strategy, s) == Outcome::win) ++wins;
        }
        chunk_wins[static_cast<size_t>(c)] = wins;
    };

    int workers = worker_count(chunks);
    if (workers <= 1) {
        for (long long c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    Estimate e;
    e.trials = trials;
    for (long long w : chunk_wins) e.wins += w;
    e.value = static_cast<double>(e.wins) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

StrategyProgram to_program(const CutoffStrategy& s) {
    StrategyProgram p;
    p.description = "cutoff strategy";
    p.decide = [s](double t, int index, std::span<const double>, std::span<const int>) {
        return t >= s.cutoff(index);
    };
    return p;
}

StrategyProgram to_program(const BranchingStrategy& s) {
    StrategyProgram p;
    p.description = "branching strategy";
    p.decide = [s](double t, int, std::span<const double> times, std::span<const int>) {
        bool nonempty = times[0] <= s.switch_time;  // N_y > 0
        return t >= (nonempty ? s.if_nonempty : s.if_empty);
    };
    return p;
}

StrategyProgram to_program(const AnyStrategy& s) {
    if (const auto* c = std::get_if<CutoffStrategy>(&s)) return to_program(*c);
    return to_program(std::get<BranchingStrategy>(s));
}

}  // namespace bestchoice::sim
