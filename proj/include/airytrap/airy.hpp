#pragma once

#include <complex>

namespace airytrap {

using Complex = std::complex<double>;

/// Ai, Ai', Bi, Bi' at one argument.
///
/// est_error is a conservative bound on the relative error of the four
/// values, built from the magnitude of the first neglected term (and, in
/// the series region, the working-precision cancellation). It is measured
/// against each value or 1e-3 of its dominant constituent, whichever is
/// larger, so it stays finite at zeros of the individual functions.
struct AiryQuad {
  Complex ai;
  Complex ai_prime;
  Complex bi;
  Complex bi_prime;
  double est_error = 0.0;
};

/// Ai and Ai' only. Never overflows where Ai is recessive.
struct AiryPair {
  Complex ai;
  Complex ai_prime;
  double est_error = 0.0;
};

/// Largest |z| accepted by the evaluators.
inline constexpr double kAiryMaxModulus = 1.0e4;

/// Radius below which the Maclaurin series is summed in binary128.
inline constexpr double kAirySeriesRadius = 9.0;

/// Evaluates Ai, Ai', Bi, Bi' for complex z.
///
/// |z| <= 9 sums the Maclaurin series in 113-bit arithmetic, which absorbs
/// the e^{4|z|^{3/2}/3} cancellation suffered by the recessive solution.
/// |z| > 9 uses the Poincare expansions, with the connection formulas
/// rotating every argument into the sector where a single exponential
/// dominates. Results satisfy airy_eval(conj z) == conj(airy_eval(z))
/// exactly, and real z produces values with exactly zero imaginary parts.
///
/// Throws DomainError for |z| > kAiryMaxModulus or when a value does not
/// fit in binary64, AccuracyError if the estimated error exceeds 1e-8.
AiryQuad airy_eval(Complex z);

/// Same as airy_eval but only Ai and Ai'.
AiryPair airy_ai(Complex z);

/// Real-argument convenience wrapper for Ai(x).
double airy_ai_real(double x);

/// n-th zero of Ai on the negative real axis (n = 1 gives -2.33811...).
/// Valid for 1 <= n <= 100; throws DomainError outside that range and
/// ConvergenceError if the safeguarded Newton iteration stalls.
double ai_zero(int n);

}  // namespace airytrap
