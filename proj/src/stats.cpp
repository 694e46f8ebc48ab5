#include "spmvlab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace spmvlab {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance needs at least 2 samples");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int dof) {
    if (dof < 1) throw std::invalid_argument("degrees of freedom must be positive");
    const double v = static_cast<double>(dof);
    const double x = v / (v + t * t);
    const double tail = 0.5 * incomplete_beta(v / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, int dof) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("quantile needs p in (0, 1)");
    if (p == 0.5) return 0.0;
    // Exploit symmetry and bisect on the CDF.
    const bool upper = p > 0.5;
    const double target = upper ? p : 1.0 - p;
    double lo = 0.0, hi = 2.0;
    while (student_t_cdf(hi, dof) < target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, dof) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * (1.0 + hi)) break;
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

CiBounds student_t_ci(const std::vector<double>& samples, double confidence) {
    if (samples.size() < 2)
        throw std::invalid_argument("confidence interval needs at least 2 samples");
    const double m = mean(samples);
    const double s = std::sqrt(sample_variance(samples));
    const double n = static_cast<double>(samples.size());
    const double t =
        student_t_quantile(0.5 + confidence / 2.0, static_cast<int>(samples.size()) - 1);
    const double half = t * s / std::sqrt(n);
    return {m - half, m + half};
}

bool ci_gap_ok(const std::vector<double>& samples, double confidence, double rel_limit) {
    if (samples.size() < 2) return false;
    const double m = mean(samples);
    if (!(m > 0.0)) return false;
    const CiBounds ci = student_t_ci(samples, confidence);
    return (ci.upper - ci.lower) / m < rel_limit;
}

} // namespace spmvlab
