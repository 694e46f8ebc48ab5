#pragma once

#include <vector>

namespace spmvlab {

double mean(const std::vector<double>& xs);

// Unbiased (n-1 divisor) variance; requires n >= 2.
double sample_variance(const std::vector<double>& xs);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with dof degrees of freedom.
double student_t_cdf(double t, int dof);

// Quantile (inverse CDF) for p in (0, 1); bisection on student_t_cdf.
double student_t_quantile(double p, int dof);

struct CiBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Two-sided confidence interval for the mean, Student-t based.
// Requires at least 2 samples.
CiBounds student_t_ci(const std::vector<double>& samples, double confidence);

// The benchmark stopping rule: true when the interval's relative gap
// (upper - lower) / mean drops below rel_limit. Pure function of the
// sample list; false while fewer than 2 samples or mean <= 0.
bool ci_gap_ok(const std::vector<double>& samples, double confidence, double rel_limit);

} // namespace spmvlab
