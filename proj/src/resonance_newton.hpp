#pragma once

// Newton iteration shared by the pulling and pushing resonance conditions
//   pi Ai(z) [Bi(z) + i Ai(z)] = sign * F^{1/3}.

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "airytrap/airy.hpp"
#include "airytrap/errors.hpp"

namespace airytrap::detail {

struct NewtonResult {
  Complex root;
  double residual;
  int iterations;
};

inline Complex outgoing_condition(Complex z, double rhs, Complex* derivative) {
  const AiryQuad q = airy_eval(z);
  const Complex i(0.0, 1.0);
  const Complex outgoing = q.bi + i * q.ai;
  if (derivative) {
    *derivative = std::numbers::pi * (q.ai_prime * outgoing + q.ai * (q.bi_prime + i * q.ai_prime));
  }
  return std::numbers::pi * q.ai * outgoing - rhs;
}

inline NewtonResult newton_outgoing(Complex seed, double rhs, double tolerance,
                                    int max_iterations = 100) {
  Complex z = seed;
  Complex dg;
  Complex g = outgoing_condition(z, rhs, &dg);
  std::vector<Complex> trace{z};
  for (int iter = 1; iter <= max_iterations; ++iter) {
    if (dg == Complex(0.0, 0.0)) break;
    Complex step = g / dg;
    // Damp the step while it makes the residual worse.
    Complex next = z - step;
    Complex dnext;
    Complex gnext;
    for (int halving = 0;; ++halving) {
      try {
        gnext = outgoing_condition(next, rhs, &dnext);
        if (std::abs(gnext) <= std::abs(g) || halving == 30) break;
      } catch (const DomainError&) {
        if (halving == 30) throw;
      }
      step *= 0.5;
      next = z - step;
    }
    z = next;
    g = gnext;
    dg = dnext;
    trace.push_back(z);
    const bool small_step = std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z));
    if (small_step && std::abs(g) <= tolerance) return {z, std::abs(g), iter};
    if (std::abs(g) <= 1e-3 * tolerance) {
      // One more step polishes the root to full precision at no risk.
      Complex dpol;
      const Complex polished = z - g / dg;
      const Complex gp = outgoing_condition(polished, rhs, &dpol);
      if (std::abs(gp) <= std::abs(g)) return {polished, std::abs(gp), iter + 1};
      return {z, std::abs(g), iter};
    }
  }
  std::ostringstream msg;
  msg << "Newton did not converge from seed " << seed << " (rhs " << rhs << "); last iterates:";
  const std::size_t first = trace.size() > 6 ? trace.size() - 6 : 0;
  for (std::size_t k = first; k < trace.size(); ++k) msg << ' ' << trace[k];
  msg << "; residual " << std::abs(g);
  throw ConvergenceError(msg.str());
}

}  // namespace airytrap::detail
