#include "bestchoice/exact.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bestchoice/numeric.hpp"

namespace bestchoice::exact {

using numeric::KahanSum;

namespace {

void require_n(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > kMaxExactN)
        throw std::invalid_argument("n exceeds the exact-evaluation cap of 10^6");
}

void require_nonincreasing(const CutoffStrategy& s) {
    if (!s.nonincreasing())
        throw unsupported_strategy(
            "exact evaluation needs nonincreasing cutoffs; use the Monte Carlo module");
}

// Streams s(k+1, n) for k = 0, 1, ..., n-1 in O(1) per step.
class WinProbStream {
  public:
    explicit WinProbStream(int n) : n_(n), k_(0), s_(1.0 / n) {
        KahanSum h;  // h(2,n) = H_{n-1}
        for (int j = n; j >= 2; --j) h.add(1.0 / (j - 1));
        h_ = h.value();
    }
    // s(k+1, n) for the current k.
    double value() const { return s_; }
    void advance() {
        ++k_;
        s_ = (static_cast<double>(k_) / n_) * h_;  // s(k+1,n), h_ = h(k+1,n)
        h_ -= k_ >= 1 ? 1.0 / k_ : 0.0;            // -> h(k+2,n)
    }

  private:
    int n_;
    int k_;
    double s_;
    double h_;
};

}  // namespace

double harmonic_tail(int d, int n) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    require_n(n);
    if (d == 1) return std::numeric_limits<double>::infinity();
    if (d > n) return 0.0;
    KahanSum h;
    for (int j = n; j >= d; --j) h.add(1.0 / (j - 1));
    return h.value();
}

double win_prob_d(int d, int n) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    require_n(n);
    if (d > n) return 0.0;
    if (d == 1) return 1.0 / n;
    return (static_cast<double>(d - 1) / n) * harmonic_tail(d, n);
}

int optimal_d(int n) {
    require_n(n);
    if (n == 1) return 1;
    double h = harmonic_tail(2, n);
    if (h < 1.0) return 1;
    int d = 2;
    while (d < n && h - 1.0 / (d - 1) >= 1.0) {
        h -= 1.0 / (d - 1);
        ++d;
    }
    return d;
}

double win_prob_x(int n, double x) {
    require_n(n);
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
    const double q = 1.0 - x;
    KahanSum s;
    double qk = q;
    for (int k = 2; k <= n; ++k) {
        qk *= q;
        double term = qk / (static_cast<double>(k) * (k - 1));
        s.add(term);
        // terms decay geometrically; the remaining tail is below term*q/x
        if (x > 0.0 && term * q / x < 1e-18) break;
    }
    return 1.0 - x - s.value();
}

double win_prob_x_derivative(int n, double x) {
    require_n(n);
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
    const double q = 1.0 - x;
    KahanSum s;
    double qj = 1.0;
    for (int j = 1; j <= n - 1; ++j) {
        qj *= q;
        double term = qj / j;
        s.add(term);
        if (x > 0.0 && term * q / x < 1e-18) break;
    }
    return -1.0 + s.value();
}

double argmax_x(int n) {
    require_n(n);
    if (n <= 2) return 0.0;  // p_1, p_2 strictly decreasing
    double lo = 0.0, hi = kInvE;  // p_n'(0) = H_{n-1} - 1 > 0, p_n'(1/e) < 0
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        (win_prob_x_derivative(n, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PiWeights pi_weights(const CutoffStrategy& strategy, int n) {
    require_n(n);
    require_nonincreasing(strategy);
    PiWeights out;
    out.n = n;
    out.weights.resize(static_cast<size_t>(n));
    out.weights[0] = std::pow(1.0 - strategy.cutoff(1), n);
    double t_k = numeric::binomial_upper_tail(n, 1, strategy.cutoff(1));
    KahanSum total;
    total.add(out.weights[0]);
    for (int k = 1; k <= n - 1; ++k) {
        double t_next = numeric::binomial_upper_tail(n, k + 1, strategy.cutoff(k + 1));
        double pi = t_k - t_next;
        if (pi < 0.0) pi = 0.0;  // roundoff guard; analytically nonnegative
        out.weights[static_cast<size_t>(k)] = pi;
        total.add(pi);
        t_k = t_next;
    }
    double an = strategy.cutoff(n);
    out.normalization_deficit = total.value() - (1.0 - std::pow(an, n));
    return out;
}

double win_prob_cutoff(const CutoffStrategy& strategy, int n) {
    require_n(n);
    require_nonincreasing(strategy);
    const int m = static_cast<int>(strategy.cutoffs().size());
    const double tail = strategy.tail();

    WinProbStream s(n);
    KahanSum w;
    w.add(std::pow(1.0 - strategy.cutoff(1), n) * s.value());  // k = 0 term

    // Explicit-cutoff region: pi_{n,k} = T_k - T_{k+1} via binomial tails.
    double t_k = numeric::binomial_upper_tail(n, 1, strategy.cutoff(1));
    int k = 1;
    const int explicit_top = std::min(m, n - 1);
    for (; k <= explicit_top; ++k) {
        s.advance();
        double t_next = numeric::binomial_upper_tail(n, k + 1, strategy.cutoff(k + 1));
        double pi = t_k - t_next;
        if (pi < 0.0) pi = 0.0;
        w.add(pi * s.value());
        t_k = t_next;
    }
    // Constant-tail region: pi_{n,k} = C(n,k) tail^k (1-tail)^(n-k), stepped
    // by the pmf recurrence. For large n the pmf underflows away from the
    // mode; reseed from logs once the left tail becomes representable and
    // stop when the right tail falls below underflow.
    if (k <= n - 1 && tail > 0.0 && tail < 1.0) {
        double pmf = numeric::binomial_pmf(n, k, tail);
        if (pmf < 1e-305) pmf = 0.0;  // keep subnormals out of the recurrence
        const double ratio = tail / (1.0 - tail);
        const double mode = n * tail;
        for (; k <= n - 1; ++k) {
            s.advance();
            if (pmf == 0.0) {
                if (k > mode) break;
                double lp = numeric::lchoose(n, k) + k * std::log(tail) +
                            (n - k) * std::log1p(-tail);
                if (lp > -700.0) pmf = std::exp(lp);
            }
            w.add(pmf * s.value());
            if (pmf > 0.0) pmf *= ratio * (static_cast<double>(n - k) / (k + 1));
        }
    }
    double v = w.value();
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

double win_prob_cutoff_partial(const CutoffStrategy& strategy, int n, int k) {
    require_n(n);
    if (k < 1 || k > n) throw std::invalid_argument("require 1 <= k <= n");
    const double a = strategy.cutoff(k);
    for (int j = 1; j < k; ++j)
        if (strategy.cutoff(j) < a)
            throw unsupported_strategy("partial derivative needs a_k <= min(a_1..a_{k-1})");
    const double bracket = harmonic_tail(k + 1, n) - 1.0;
    if (k == 1) return std::pow(1.0 - a, n - 1) * bracket;
    if (k == n) return std::pow(a, n - 1) * bracket;  // bracket = -1 here
    if (a <= 0.0 || a >= 1.0) return 0.0;
    double mag = std::exp(numeric::lchoose(n - 1, k - 1) + (k - 1) * std::log(a) +
                          (n - k) * std::log1p(-a));
    return mag * bracket;
}

double win_prob(const AnyStrategy& strategy, int n) {
    require_n(n);
    if (const auto* c = std::get_if<CutoffStrategy>(&strategy))
        return win_prob_cutoff(*c, n);
    const auto& b = std::get<BranchingStrategy>(strategy);
    double base = win_prob_x(n, b.if_nonempty);
    if (b.switch_time >= 1.0) return base;
    double rescaled_empty = (b.if_empty - b.switch_time) / (1.0 - b.switch_time);
    double rescaled_base = (b.if_nonempty - b.switch_time) / (1.0 - b.switch_time);
    double none_before = std::pow(1.0 - b.switch_time, n);
    return base + none_before * (win_prob_x(n, rescaled_empty) - win_prob_x(n, rescaled_base));
}

MixtureValue mixture_value(const std::function<double(int)>& per_n,
                           const SampleSizeDistribution& nu) {
    MixtureValue out;
    if (nu.kind() != SampleSizeDistribution::Kind::geometric) {
        KahanSum s;
        for (const auto& [n, wt] : nu.support()) s.add(wt * per_n(n));
        out.value = s.value();
        return out;
    }
    const double theta = nu.theta();
    KahanSum s;
    double weight = theta / (theta + 1.0);  // nu_1
    double tail = 1.0 / (theta + 1.0);      // P(N > n)
    int n = 1;
    while (true) {
        s.add(weight * per_n(n));
        if (tail < 1e-12 || n >= kMaxExactN) break;
        weight /= (theta + 1.0);
        tail /= (theta + 1.0);
        ++n;
    }
    out.value = s.value();
    out.truncation_bound = tail;
    return out;
}

}  // namespace bestchoice::exact
