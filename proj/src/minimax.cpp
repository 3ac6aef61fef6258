#include "bestchoice/minimax.hpp"

#include <cmath>
#include <sstream>

#include "bestchoice/exact.hpp"

namespace bestchoice::minimax {

namespace {

const int kTableRows[] = {4, 5, 6, 7, 8, 9, 10, 15, 20, 25};

double w_of(const std::vector<double>& cutoffs, int n) {
    return exact::win_prob_cutoff(CutoffStrategy(cutoffs, kInvE), n);
}

std::vector<TableRow> make_table(const std::vector<double>& cutoffs) {
    std::vector<TableRow> t;
    for (int n : kTableRows)
        t.push_back({n, w_of(cutoffs, n), exact::win_prob_x(n, kInvE)});
    return t;
}

int find_crossover(const std::vector<double>& cutoffs, int n_max = 500) {
    for (int n = 1; n <= n_max; ++n)
        if (w_of(cutoffs, n) > exact::win_prob_x(n, kInvE) + 1e-12) return n;
    return 0;
}

}  // namespace

EqualizerResult equalizer_cutoffs(int m) {
    if (m < 1 || m > 3)
        throw unsupported_strategy(
            "closed-form equalizer is established for m <= 3; use general_right_shift");
    std::vector<double> cutoffs;
    cutoffs.push_back(1.0 - kInvE);                 // pins w_1 = 1/e
    if (m >= 2) cutoffs.push_back(std::sqrt(1.0 - 2.0 * kInvE));  // pins w_2
    if (m >= 3) {
        // w_3 is strictly decreasing in a_3 on (1/e, a_2); bisect to the pin.
        double lo = kInvE, hi = cutoffs[1];
        std::vector<double> probe = cutoffs;
        probe.push_back(0.0);
        auto w3 = [&](double a) {
            probe[2] = a;
            return w_of(probe, 3);
        };
        if (!(w3(lo) > kInvE && w3(hi) < kInvE))
            throw construction_failed("equalizer a_3 root not bracketed", 3);
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            double mid = 0.5 * (lo + hi);
            (w3(mid) > kInvE ? lo : hi) = mid;
        }
        cutoffs.push_back(0.5 * (lo + hi));
    }
    EqualizerResult r{CutoffStrategy(cutoffs, kInvE), cutoffs, {}, make_table(cutoffs),
                      find_crossover(cutoffs)};
    for (int n = 1; n <= m; ++n) r.constrained_n.push_back(n);
    return r;
}

std::vector<TableRow> reproduce_table() { return equalizer_cutoffs(3).table; }

std::vector<RightShiftStep> general_right_shift(int steps, int n_max) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (n_max < steps + 2) throw std::invalid_argument("n_max too small");
    std::vector<RightShiftStep> out;
    std::vector<double> cutoffs;
    std::vector<double> p_ref(static_cast<size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) p_ref[static_cast<size_t>(n)] = exact::win_prob_x(n, kInvE);

    // Feasibility slack sits at roundoff level, two orders below the 1e-10
    // margin the constructed strategies are verified against.
    const double floor = kInvE - 1e-12;
    for (int k = 1; k <= steps; ++k) {
        cutoffs.push_back(kInvE);
        auto min_w = [&](double a) {
            cutoffs[static_cast<size_t>(k - 1)] = a;
            // w_n for n < k is already pinned and does not depend on a_k
            double worst = 1.0;
            for (int n = k; n <= n_max; ++n) worst = std::min(worst, w_of(cutoffs, n));
            return worst;
        };
        double hi_cap = (k == 1 ? 1.0 : cutoffs[static_cast<size_t>(k - 2)]) - 1e-12;
        double lo = kInvE, hi = hi_cap;
        if (!(min_w(lo) >= floor)) {
            std::ostringstream os;
            os << "right-shift step " << k << ": infeasible at the 1/e baseline";
            throw construction_failed(os.str(), k);
        }
        if (min_w(hi) >= floor) {
            // the ordering constraint a_k < a_{k-1} binds before any w_n
            // reaches 1/e; the cap is the answer
            lo = hi;
        } else {
            for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                (min_w(mid) >= floor ? lo : hi) = mid;
            }
        }
        cutoffs[static_cast<size_t>(k - 1)] = lo;  // feasible end

        RightShiftStep step{CutoffStrategy(cutoffs, kInvE), k, lo, 1.0, {}, {}, {}};
        for (int n = 1; n <= n_max; ++n) {
            double w = w_of(cutoffs, n);
            step.min_w = std::min(step.min_w, w);
            if (std::fabs(w - kInvE) <= 1e-9) step.active_constraints.push_back(n);
            if (w > p_ref[static_cast<size_t>(n)] + 1e-12) step.beats.push_back(n);
            if (w < p_ref[static_cast<size_t>(n)] - 1e-12) step.loses.push_back(n);
        }
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace bestchoice::minimax
