#include "clusterft/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace clusterft {

RateEstimate wilson_rate(uint64_t events, uint64_t trials, double z) {
    RateEstimate est;
    est.events = events;
    est.trials = trials;
    if (trials == 0) return est;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    est.value = p;
    est.lo = std::max(0.0, center - half);
    est.hi = std::min(1.0, center + half);
    est.ok = events > 0;
    return est;
}

namespace {

// Regularized upper incomplete gamma Q(a, x), series + continued fraction.
double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q domain");
    if (x == 0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi_squared_pvalue(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0) return 1.0;
    return gamma_q(dof / 2.0, statistic / 2.0);
}

double chi_squared_two_sample_pvalue(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("histogram size mismatch");
    double na = 0, nb = 0;
    for (auto v : a) na += static_cast<double>(v);
    for (auto v : b) nb += static_cast<double>(v);
    if (na == 0 || nb == 0) return 1.0;
    const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
    double stat = 0;
    int dof = -1;
    for (size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]), bi = static_cast<double>(b[i]);
        if (ai + bi == 0) continue;
        const double d = ka * ai - kb * bi;
        stat += d * d / (ai + bi);
        ++dof;
    }
    if (dof <= 0) return 1.0;
    return chi_squared_pvalue(stat, dof);
}

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& sigma_rel) {
    SlopeFit fit;
    if (x.size() != y.size() || x.size() < 2) return fit;
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) return fit;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        const double sigma = (i < sigma_rel.size() && sigma_rel[i] > 0) ? sigma_rel[i] : 1.0;
        const double w = 1.0 / (sigma * sigma);
        sw += w;
        swx += w * lx;
        swy += w * ly;
        swxx += w * lx * lx;
        swxy += w * lx * ly;
    }
    const double denom = sw * swxx - swx * swx;
    if (denom <= 0) return fit;
    fit.slope = (sw * swxy - swx * swy) / denom;
    fit.intercept = (swy - fit.slope * swx) / sw;
    fit.slope_err = std::sqrt(sw / denom);
    fit.ok = true;
    return fit;
}

}  // namespace clusterft
