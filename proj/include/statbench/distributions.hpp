#pragma once

namespace statbench::dist {

double normal_pdf(double z);
double normal_cdf(double z);
/// Inverse of normal_cdf for p in (0, 1).
double normal_quantile(double p);

double t_pdf(double t, double df);
double t_cdf(double t, double df);
/// Inverse of t_cdf for p in (0, 1). Throws DomainError for p outside (0, 1) or df <= 0.
double t_quantile(double p, double df);

double chisq_pdf(double x, double df);
double chisq_cdf(double x, double df);
/// Upper tail 1 - chisq_cdf, computed without cancellation.
double chisq_sf(double x, double df);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

}  // namespace statbench::dist
