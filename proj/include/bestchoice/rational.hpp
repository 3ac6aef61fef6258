#ifndef BESTCHOICE_RATIONAL_HPP
#define BESTCHOICE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

// Exact rational arithmetic for the small-n winning probabilities. The
// classic constants (11/24, 17/180, ...) are rationals, so golden tests can
// demand equality instead of tolerances. Capped at n <= 200 where the exact
// representation stays cheap.

namespace bestchoice::rational {

using Rat = boost::multiprecision::cpp_rational;

inline constexpr int kMaxRationalN = 200;

// h(d,n) = sum_{j=d}^{n} 1/(j-1), exact. Requires d >= 2 (h(1,n) diverges).
inline Rat harmonic_tail_exact(int d, int n) {
    if (d < 2) throw std::invalid_argument("exact harmonic tail requires d >= 2");
    if (n < 1 || n > kMaxRationalN) throw std::invalid_argument("exact mode requires 1 <= n <= 200");
    Rat h = 0;
    for (int j = d; j <= n; ++j) h += Rat(1, j - 1);
    return h;
}

// s(d,n): winning probability of the d-strategy on n items, exact.
inline Rat win_prob_d_exact(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("require d >= 1 and n >= 1");
    if (n > kMaxRationalN) throw std::invalid_argument("exact mode requires n <= 200");
    if (d > n) return Rat(0);
    if (d == 1) return Rat(1, n);
    return Rat(d - 1, n) * harmonic_tail_exact(d, n);
}

// argmax_d s(d,n) with the n=2 tie resolved to d=2, via exact comparisons.
inline int optimal_d_exact(int n) {
    if (n < 1 || n > kMaxRationalN) throw std::invalid_argument("exact mode requires 1 <= n <= 200");
    int best = 1;
    Rat best_val = win_prob_d_exact(1, n);
    for (int d = 2; d <= n; ++d) {
        Rat v = win_prob_d_exact(d, n);
        if (v >= best_val) {  // ties resolve upward (n=2 -> d=2)
            best_val = v;
            best = d;
        }
    }
    return best;
}

}  // namespace bestchoice::rational

#endif
