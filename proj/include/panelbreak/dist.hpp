#pragma once

namespace panelbreak {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x), series for x < a+1 and
// continued fraction otherwise.
double incomplete_gamma_p(double a, double x);

// Student-t CDF with dof degrees of freedom, via the incomplete beta
// identity F(t) = 1 - I_{v/(v+t^2)}(v/2, 1/2) / 2 for t >= 0.
double student_t_cdf(double t, long long dof);

// Two-sided p-value 2*(1 - F(|t|; dof)). dof >= 1 or InvalidDof.
double two_sided_p(double t_stat, long long dof);

// Chi-square CDF with k degrees of freedom: P(k/2, x/2).
double chi_square_cdf(double x, double k);

// Quantile by monotone bisection of the CDF to 1e-12 bracket width,
// started from a [0, hi] bracket grown geometrically.
double chi_square_quantile(double p, double k);

}  // namespace panelbreak
