#pragma once

#include <cstdint>
#include <vector>

namespace clusterft {

// Binomial rate with a Wilson score interval. A zero event count reports
// ok=false ("insufficient statistics") rather than a zero probability;
// value/hi still carry the point estimate and upper bound.
struct RateEstimate {
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    uint64_t events = 0;
    uint64_t trials = 0;
    bool ok = false;
};

RateEstimate wilson_rate(uint64_t events, uint64_t trials, double z = 1.96);

// Pearson chi-squared p-value (upper tail), via the regularized incomplete
// gamma function.
double chi_squared_pvalue(double statistic, int dof);

// Chi-squared homogeneity test for two histograms over the same buckets.
double chi_squared_two_sample_pvalue(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b);

// Weighted least-squares slope of log(y) against log(x). sigma_rel are
// relative 1-sigma errors on y (propagated to log space).
struct SlopeFit {
    double slope = 0.0;
    double slope_err = 0.0;
    double intercept = 0.0;
    bool ok = false;
};
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& sigma_rel);

}  // namespace clusterft
