#ifndef BESTCHOICE_NUMERIC_HPP
#define BESTCHOICE_NUMERIC_HPP

// Small numerical kernel shared by the exact-evaluation code: compensated
// summation, log-binomials, the regularized incomplete beta function and the
// binomial tail built on it.

namespace bestchoice::numeric {

// Kahan-compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

double lchoose(int n, int k);                 // log C(n,k)
double binomial_pmf(int n, int k, double p);  // C(n,k) p^k (1-p)^(n-k)

// I_x(a,b), continued-fraction evaluation (a,b > 0, x in [0,1]).
double regularized_incomplete_beta(double a, double b, double x);

// P(Bin(n,p) >= k) = I_p(k, n-k+1); exact 1 for k <= 0, 0 for k > n.
double binomial_upper_tail(int n, int k, double p);

}  // namespace bestchoice::numeric

#endif
