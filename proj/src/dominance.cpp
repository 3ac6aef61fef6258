#include "bestchoice/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bestchoice/exact.hpp"

namespace bestchoice::dominance {

double asymptotic_value(const AnyStrategy& strategy) {
    double x;
    if (const auto* c = std::get_if<CutoffStrategy>(&strategy))
        x = c->tail();
    else
        x = std::get<BranchingStrategy>(strategy).if_nonempty;
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x);
}

DominanceVerdict compare(const AnyStrategy& a, const AnyStrategy& b, int n_max,
                         const std::set<int>* Z, double tolerance) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (Z && !Z->empty() && *Z->rbegin() > n_max)
        throw std::invalid_argument("n_max must cover max(Z)");
    DominanceVerdict v;
    v.tolerance = tolerance;
    v.asymptote_a = asymptotic_value(a);
    v.asymptote_b = asymptotic_value(b);
    bool any_pos = false, any_neg = false;
    for (int n = 1; n <= n_max; ++n) {
        double d = exact::win_prob(a, n) - exact::win_prob(b, n);
        v.diffs[n] = d;
        if (d > tolerance) {
            any_pos = true;
            v.witness_set.push_back(n);
        } else if (d < -tolerance) {
            any_neg = true;
        }
    }
    if (Z && !Z->empty()) {
        bool strong = true;
        for (int n : *Z)
            if (!(v.diffs.at(n) > tolerance)) { strong = false; break; }
        if (strong) {
            v.relation = Relation::strongly_dominates_on_Z;
            return v;
        }
    }
    if (!any_pos && !any_neg) v.relation = Relation::equal;
    else if (any_pos && !any_neg) v.relation = Relation::dominates;
    else if (!any_pos && any_neg) v.relation = Relation::dominated;
    else v.relation = Relation::incomparable;
    return v;
}

double SkipFirstConstruction::delta(int n) const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    double mass = std::pow(1.0 - x, n) - std::pow(1.0 - a1, n);
    if (n == 1) return -mass;
    if (n == 2) return 0.0;
    return mass * exact::harmonic_tail(3, n) / n;
}

SkipFirstConstruction build_skip_first(double a1, double x) {
    if (!(0.0 < x && x < a1 && a1 <= 1.0))
        throw std::invalid_argument("skip-first requires 0 < x < a1 <= 1");
    return SkipFirstConstruction{CutoffStrategy({a1}, x), a1, x};
}

double RestartConstruction::delta(int n) const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    double z = (x - y) / (1.0 - y);
    return std::pow(1.0 - y, n) *
           (exact::win_prob_x(n, kRestartBase) - exact::win_prob_x(n, z));
}

RestartConstruction build_restart(double x, double y) {
    const double c = kRestartBase;
    if (!(x > c && x <= 1.0))
        throw std::invalid_argument("restart requires x > 2 - sqrt(3)");
    double y_lo = std::max(0.0, (x - c) / (1.0 - c));
    if (!(y > y_lo && y <= x))
        throw std::invalid_argument("restart requires ((x-c)/(1-c))_+ < y <= x");
    double x_prime = c * (1.0 - y) + y;
    return RestartConstruction{BranchingStrategy(y, x, x_prime), x, y};
}

namespace {

// Advantage over tau_{1/e} of the ladder candidate, for a single n <= n1.
double ladder_advantage(const std::vector<double>& cutoffs, double tail, int n,
                        const std::vector<double>& p_ref) {
    CutoffStrategy s(std::vector<double>(cutoffs.begin(), cutoffs.begin() + n), tail);
    return exact::win_prob_cutoff(s, n) - p_ref[static_cast<size_t>(n)];
}

}  // namespace

LadderConstruction build_finite_Z_dominator(int n1, double floor_factor) {
    if (n1 < 1) throw std::invalid_argument("n1 must be >= 1");
    if (!(floor_factor > 0.0 && floor_factor < 1.0))
        throw std::invalid_argument("floor factor must lie in (0,1)");

    LadderPlan plan;
    for (int n = n1; n >= 1; n = exact::optimal_d(n) - 1) plan.ladder.push_back(n);
    const int m = static_cast<int>(plan.ladder.size());

    std::vector<double> p_ref(static_cast<size_t>(n1) + 1, 0.0);
    for (int n = 1; n <= n1; ++n) p_ref[static_cast<size_t>(n)] = exact::win_prob_x(n, kInvE);

    std::vector<double> cutoffs(static_cast<size_t>(n1), kInvE);
    double tail = kInvE;

    auto min_advantage = [&](int lo, int hi) {  // over n in (lo, hi]
        double worst = 1.0;
        for (int n = lo + 1; n <= hi; ++n)
            worst = std::min(worst, ladder_advantage(cutoffs, tail, n, p_ref));
        return worst;
    };

    double alpha = 0.0;
    double prev_c = 0.0;
    for (int j = 0; j < m; ++j) {
        int block_hi = plan.ladder[static_cast<size_t>(j)];
        int block_lo = j + 1 < m ? plan.ladder[static_cast<size_t>(j + 1)] : 0;
        auto set_block = [&](double c) {
            for (int k = block_lo + 1; k <= block_hi; ++k)
                cutoffs[static_cast<size_t>(k - 1)] = c;
            if (j == 0) tail = c;
        };

        double c_j;
        if (j == 0) {
            // First block has no incumbent advantage to protect; depth is a
            // free parameter and 1/(2e) keeps the tail asymptote reasonable.
            c_j = 0.5 * kInvE;
            set_block(c_j);
        } else {
            double target = floor_factor * alpha;
            double lo = prev_c + 0.01 * (kInvE - prev_c);
            double hi = kInvE * (1.0 - 1e-9);
            auto feasible = [&](double c) {
                set_block(c);
                return min_advantage(block_hi, n1) >= target;
            };
            if (feasible(lo)) {
                c_j = lo;
            } else {
                if (!feasible(hi)) {
                    std::ostringstream os;
                    os << "ladder stage " << (j + 1) << ": no feasible cutoff keeps the "
                       << "incumbent advantage above " << target;
                    throw construction_failed(os.str(), j + 1);
                }
                double flo = lo, fhi = hi;  // infeasible .. feasible
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (flo + fhi);
                    (feasible(mid) ? fhi : flo) = mid;
                }
                c_j = fhi;
            }
            set_block(c_j);
        }

        double block_min = min_advantage(block_lo, block_hi);
        if (!(block_min > 1e-12)) {
            std::ostringstream os;
            os << "ladder stage " << (j + 1) << ": block advantage not strictly positive ("
               << block_min << ")";
            throw construction_failed(os.str(), j + 1);
        }
        plan.block_cutoffs.push_back(c_j);
        alpha = min_advantage(block_lo, n1);
        plan.advantage_floors.push_back(alpha);
        prev_c = c_j;
    }

    LadderConstruction out{CutoffStrategy(cutoffs, tail), std::move(plan), {}};
    out.advantages.resize(static_cast<size_t>(n1) + 1, 0.0);
    for (int n = 1; n <= n1; ++n) {
        out.advantages[static_cast<size_t>(n)] =
            exact::win_prob_cutoff(out.strategy, n) - p_ref[static_cast<size_t>(n)];
        if (!(out.advantages[static_cast<size_t>(n)] > 1e-12)) {
            std::ostringstream os;
            os << "ladder verification failed at n=" << n;
            throw construction_failed(os.str(), m);
        }
    }
    return out;
}

}  // namespace bestchoice::dominance
