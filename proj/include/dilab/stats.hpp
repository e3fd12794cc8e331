#pragma once

#include <cstddef>
#include <vector>

namespace dilab::stats {

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse standard normal CDF, |error| < 1e-15 after Halley refinement.
double normal_quantile(double p);

// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Upper tail P(F > f) for an F statistic with (df1, df2) degrees of freedom.
double f_upper_tail_p(double f, double df1, double df2);

double mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);

// Ranks with ties assigned their average rank (1-based).
std::vector<double> average_ranks(const std::vector<double>& v);

struct SpearmanResult {
    double rho = 0.0;
    double p_value = 1.0;  // two-sided, t approximation, df = n - 2
    std::size_t n = 0;
};

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dilab::stats
