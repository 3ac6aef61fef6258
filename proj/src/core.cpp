#include "bestchoice/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bestchoice {

namespace {

void require_probability(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << what << " must lie in [0,1], got " << v;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

CutoffStrategy::CutoffStrategy(std::vector<double> cutoffs, double tail)
    : cutoffs_(std::move(cutoffs)), tail_(tail) {
    for (double a : cutoffs_) require_probability(a, "cutoff");
    require_probability(tail_, "tail");
    nonincreasing_ = true;
    double prev = 1.0;
    for (double a : cutoffs_) {
        if (a > prev) { nonincreasing_ = false; break; }
        prev = a;
    }
    if (nonincreasing_ && tail_ > prev) nonincreasing_ = false;
}

CutoffStrategy make_d_strategy(int d) {
    if (d < 1) throw std::invalid_argument("d-strategy requires d >= 1");
    return CutoffStrategy(std::vector<double>(static_cast<size_t>(d - 1), 1.0), 0.0);
}

CutoffStrategy make_x_strategy(double x) {
    require_probability(x, "x");
    return CutoffStrategy({}, x);
}

BranchingStrategy::BranchingStrategy(double switch_time_, double if_nonempty_, double if_empty_)
    : switch_time(switch_time_), if_nonempty(if_nonempty_), if_empty(if_empty_) {
    require_probability(switch_time, "switch_time");
    require_probability(if_nonempty, "if_nonempty");
    require_probability(if_empty, "if_empty");
    if (if_nonempty < switch_time || if_empty < switch_time)
        throw std::invalid_argument("branch cutoffs must be >= switch_time");
}

SampleSizeDistribution SampleSizeDistribution::point_mass(int n) {
    if (n < 1) throw std::invalid_argument("point mass requires n >= 1");
    SampleSizeDistribution d;
    d.kind_ = Kind::point_mass;
    d.support_ = {{n, 1.0}};
    return d;
}

SampleSizeDistribution SampleSizeDistribution::finite(std::vector<std::pair<int, double>> support) {
    if (support.empty()) throw std::invalid_argument("finite prior needs at least one atom");
    std::sort(support.begin(), support.end());
    double sum = 0.0;
    std::set<int> seen;
    for (auto& [n, w] : support) {
        if (n < 1) throw std::invalid_argument("support values must be positive integers");
        if (!(w > 0.0)) throw std::invalid_argument("weights must be strictly positive");
        if (!seen.insert(n).second) throw std::invalid_argument("support values must be distinct");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
    SampleSizeDistribution d;
    d.kind_ = Kind::finite;
    d.support_ = std::move(support);
    return d;
}

SampleSizeDistribution SampleSizeDistribution::geometric(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("geometric prior requires theta > 0");
    SampleSizeDistribution d;
    d.kind_ = Kind::geometric;
    d.theta_ = theta;
    return d;
}

double SampleSizeDistribution::weight(int n) const {
    if (n < 1) return 0.0;
    if (kind_ == Kind::geometric)
        return theta_ * std::pow(theta_ + 1.0, -static_cast<double>(n));
    for (const auto& [m, w] : support_)
        if (m == n) return w;
    return 0.0;
}

double SampleSizeDistribution::tail_mass_from(int m) const {
    if (m <= 1) return 1.0;
    if (kind_ == Kind::geometric)
        return std::pow(theta_ + 1.0, 1.0 - static_cast<double>(m));
    double t = 0.0;
    for (const auto& [n, w] : support_)
        if (n >= m) t += w;
    return t;
}

int SampleSizeDistribution::max_n() const {
    if (kind_ == Kind::geometric)
        throw std::invalid_argument("geometric prior has unbounded support");
    return support_.back().first;
}

int SampleSizeDistribution::truncation_length(double tail_tol) const {
    if (kind_ != Kind::geometric) return max_n();
    // P(N > n) = (theta+1)^{-n}
    int n = 1;
    double tail = 1.0 / (theta_ + 1.0);
    while (tail > tail_tol && n < kMaxExactN) {
        tail /= (theta_ + 1.0);
        ++n;
    }
    return n;
}

Ordering stochastic_order_compare(const SampleSizeDistribution& nu1,
                                  const SampleSizeDistribution& nu2) {
    const double tol = 1e-12;
    if (nu1.kind() == SampleSizeDistribution::Kind::geometric ||
        nu2.kind() == SampleSizeDistribution::Kind::geometric) {
        if (nu1.kind() != nu2.kind())
            throw unsupported_comparison("cannot compare geometric with finite-support prior");
        // Tail (theta+1)^{1-m} is pointwise monotone in theta.
        double t1 = nu1.theta(), t2 = nu2.theta();
        if (std::fabs(t1 - t2) <= tol) return Ordering::equal;
        return t2 < t1 ? Ordering::nu2_dominates : Ordering::nu1_dominates;
    }
    int top = std::max(nu1.max_n(), nu2.max_n());
    bool ge = true, le = true, strict_ge = false, strict_le = false;
    for (int m = 2; m <= top; ++m) {
        double d = nu2.tail_mass_from(m) - nu1.tail_mass_from(m);
        if (d > tol) { le = false; strict_ge = true; }
        if (d < -tol) { ge = false; strict_le = true; }
    }
    if (ge && strict_ge) return Ordering::nu2_dominates;
    if (le && strict_le) return Ordering::nu1_dominates;
    if (ge && le) return Ordering::equal;
    return Ordering::incomparable;
}

std::string validate(const EvaluationReport& report, const SampleSizeDistribution* nu) {
    for (const auto& [n, p] : report.per_n)
        if (!(p >= 0.0 && p <= 1.0))
            return "winning probability out of [0,1] at n=" + std::to_string(n);
    if (report.mixture_value) {
        if (!(*report.mixture_value >= 0.0 && *report.mixture_value <= 1.0))
            return "mixture value out of [0,1]";
        if (nu && nu->kind() != SampleSizeDistribution::Kind::geometric) {
            double s = 0.0;
            for (const auto& [n, w] : nu->support()) {
                auto it = report.per_n.find(n);
                if (it == report.per_n.end()) return "missing per-n entry for mixture";
                s += w * it->second;
            }
            if (std::fabs(s - *report.mixture_value) > 1e-12)
                return "mixture value inconsistent with per-n probabilities";
        }
    }
    return "";
}

}  // namespace bestchoice
