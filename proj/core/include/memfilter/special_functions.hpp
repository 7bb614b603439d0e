#pragma once

namespace memfilter {

/// Standard normal density phi(z).
double std_normal_pdf(double z);

/// Standard normal CDF Phi(z).
///
/// Computed through a rational Chebyshev approximation of erfc (Cody 1969),
/// using nothing from the platform beyond exp.  Absolute error is well below
/// 1e-12 for |z| <= 8, and the tail branch keeps full relative accuracy down
/// to the underflow threshold.
double std_normal_cdf(double z);

/// ln Phi(z) without underflow.
///
/// Direct logarithm for z >= -37 (Phi is still normal there); below that an
/// asymptotic Mills-ratio expansion takes over.  For z >= 0 the complement
/// identity ln(1 - Phi(-z)) is used so the result stays accurate as Phi -> 1.
double log_std_normal_cdf(double z);

/// Inverse standard normal CDF (Wichura's AS 241, the PPND16 variant).
/// Requires p in (0, 1); throws std::domain_error otherwise.
double std_normal_quantile(double p);

}  // namespace memfilter
