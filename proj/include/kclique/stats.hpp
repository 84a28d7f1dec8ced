#pragma once

namespace kclique {

// Regularized incomplete beta function I_x(a, b).
double betainc(double a, double b, double x);

// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double df);

// Upper tail P(F >= f) for an F(d1, d2) statistic.
double f_dist_sf(double f, double d1, double d2);

}  // namespace kclique
