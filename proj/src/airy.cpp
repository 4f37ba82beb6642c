#include "airytrap/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "airytrap/errors.hpp"

namespace airytrap {
namespace {

using std::numbers::pi;

constexpr double kDoubleEps = 0x1p-53;
constexpr double kQuadEps = 0x1p-112;
constexpr double kAccuracyLimit = 1e-8;

// ---------------------------------------------------------------------------
// binary128 complex arithmetic for the Maclaurin series

using Quad = __float128;

struct QComplex {
  Quad re = 0;
  Quad im = 0;
};

QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
QComplex operator*(QComplex a, QComplex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QComplex operator*(Quad s, QComplex a) { return {s * a.re, s * a.im}; }
QComplex operator/(QComplex a, Quad s) { return {a.re / s, a.im / s}; }

double magnitude(QComplex a) {
  return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im));
}
Complex to_double(QComplex a) {
  return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

// Ai(0), -Ai'(0) and sqrt(3) as unevaluated double-double sums.
const Quad kC1 = Quad(0.3550280538878172) + Quad(2.05233632436212e-17);
const Quad kC2 = Quad(0.2588194037928068) + Quad(-2.522243111610832e-17);
const Quad kSqrt3 = Quad(1.7320508075688772) + Quad(1.0035084221806903e-16);

struct Evaluation {
  Complex ai, ai_prime, bi, bi_prime;
  // Absolute error bounds and the size of the largest constituent of each value.
  std::array<double, 4> abs_err{};
  std::array<double, 4> scale{};
};

double relative_error(const Evaluation& e) {
  const std::array<Complex, 4> values{e.ai, e.ai_prime, e.bi, e.bi_prime};
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double denom = std::max(std::abs(values[k]), 1e-3 * e.scale[k]);
    if (denom > 0.0) worst = std::max(worst, e.abs_err[k] / denom);
  }
  return worst + 2.0 * kDoubleEps;
}

Evaluation maclaurin(Complex z) {
  const QComplex zq{z.real(), z.imag()};
  const QComplex z3 = zq * zq * zq;

  // f = sum 3^k (1/3)_k z^{3k}/(3k)!,  g = sum 3^k (2/3)_k z^{3k+1}/(3k+1)!
  QComplex f_term{1, 0}, g_term = zq, fp_term{}, gp_term{1, 0};
  QComplex f = f_term, g = g_term, fp{}, gp = gp_term;
  double f_abs = 1.0, g_abs = magnitude(zq), fp_abs = 0.0, gp_abs = 1.0;

  bool converged = false;
  for (int k = 1; k <= 200; ++k) {
    const Quad k3 = 3 * k;
    f_term = f_term * z3 / ((k3 - 1) * k3);
    g_term = g_term * z3 / (k3 * (k3 + 1));
    fp_term = (k == 1) ? Quad(0.5) * (zq * zq) : fp_term * z3 / ((k3 - 3) * (k3 - 1));
    gp_term = gp_term * z3 / (k3 * (k3 - 2));
    f = f + f_term;
    g = g + g_term;
    fp = fp + fp_term;
    gp = gp + gp_term;

    const double mf = magnitude(f_term), mg = magnitude(g_term);
    const double mfp = magnitude(fp_term), mgp = magnitude(gp_term);
    f_abs += mf;
    g_abs += mg;
    fp_abs += mfp;
    gp_abs += mgp;
    if (mf <= 1e-36 * f_abs && mg <= 1e-36 * std::max(g_abs, 1e-300) &&
        mfp <= 1e-36 * std::max(fp_abs, 1e-300) && mgp <= 1e-36 * gp_abs) {
      converged = true;
      break;
    }
  }
  if (!converged) throw AccuracyError("Airy Maclaurin series did not converge");

  const QComplex c1f = kC1 * f, c2g = kC2 * g, c1fp = kC1 * fp, c2gp = kC2 * gp;
  Evaluation e;
  e.ai = to_double(c1f - c2g);
  e.bi = to_double(kSqrt3 * (c1f + c2g));
  e.ai_prime = to_double(c1fp - c2gp);
  e.bi_prime = to_double(kSqrt3 * (c1fp + c2gp));

  const double c1 = static_cast<double>(kC1), c2 = static_cast<double>(kC2);
  const double value_abs = c1 * f_abs + c2 * g_abs;
  const double deriv_abs = c1 * fp_abs + c2 * gp_abs;
  const double value_scale = std::max(c1 * magnitude(f), c2 * magnitude(g));
  const double deriv_scale = std::max(c1 * magnitude(fp), c2 * magnitude(gp));
  e.abs_err = {8 * kQuadEps * value_abs, 8 * kQuadEps * deriv_abs,
               8 * kQuadEps * std::sqrt(3.0) * value_abs,
               8 * kQuadEps * std::sqrt(3.0) * deriv_abs};
  e.scale = {value_scale, deriv_scale, std::sqrt(3.0) * value_scale,
             std::sqrt(3.0) * deriv_scale};
  return e;
}

// ---------------------------------------------------------------------------
// Poincare expansions for |z| > 9

constexpr int kMaxAsymptoticTerms = 80;

struct Coefficients {
  std::array<double, kMaxAsymptoticTerms> u{};
  std::array<double, kMaxAsymptoticTerms> v{};
};

const Coefficients& coefficients() {
  static const Coefficients table = [] {
    Coefficients c;
    c.u[0] = c.v[0] = 1.0;
    for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
      const double kd = k;
      c.u[k] = c.u[k - 1] * (6 * kd - 5) * (6 * kd - 3) * (6 * kd - 1) /
               ((2 * kd - 1) * 216 * kd);
      c.v[k] = -(6 * kd + 1) / (6 * kd - 1) * c.u[k];
    }
    return c;
  }();
  return table;
}

struct SeriesSum {
  Complex sum;
  double rel_trunc;
};

// sum_k sign^k c_k zeta^{-k}, truncated before the terms start to grow.
SeriesSum poincare(const std::array<double, kMaxAsymptoticTerms>& c, Complex inv_zeta,
                   double sign) {
  Complex sum = 1.0, power = 1.0;
  double previous = 1.0;
  for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
    power *= sign * inv_zeta;
    const Complex term = c[k] * power;
    const double size = std::abs(term);
    if (size > previous) return {sum, 10.0 * previous / std::abs(sum)};
    if (size <= 1e-18 * std::abs(sum)) return {sum + term, 10.0 * size / std::abs(sum)};
    sum += term;
    previous = size;
  }
  return {sum, 10.0 * previous / std::abs(sum)};
}

Complex checked_exp(Complex w, Complex z) {
  if (w.real() > 709.0) {
    std::ostringstream msg;
    msg << "Airy value overflows binary64 at z = " << z;
    throw DomainError(msg.str());
  }
  return std::exp(w);
}

struct PairEval {
  Complex value, deriv;
  double err_value, err_deriv;  // absolute
};

// Ai(z), Ai'(z) from the single recessive exponential; |arg z| <= 2pi/3.
PairEval ai_expansion(Complex z) {
  const Complex root = std::sqrt(z);
  const Complex zeta = (2.0 / 3.0) * z * root;
  const Complex quarter = std::sqrt(root);
  const Complex inv = 1.0 / zeta;
  const auto& c = coefficients();
  const SeriesSum su = poincare(c.u, inv, -1.0);
  const SeriesSum sv = poincare(c.v, inv, -1.0);
  const Complex e = checked_exp(-zeta, z) / (2.0 * std::sqrt(pi));
  const Complex value = e / quarter * su.sum;
  const Complex deriv = -quarter * e * sv.sum;
  return {value, deriv, (su.rel_trunc + 4 * kDoubleEps) * std::abs(value),
          (sv.rel_trunc + 4 * kDoubleEps) * std::abs(deriv)};
}

// Bi(z), Bi'(z) from the single dominant exponential; |arg z| <= pi/6.
PairEval bi_expansion(Complex z) {
  const Complex root = std::sqrt(z);
  const Complex zeta = (2.0 / 3.0) * z * root;
  const Complex quarter = std::sqrt(root);
  const Complex inv = 1.0 / zeta;
  const auto& c = coefficients();
  const SeriesSum su = poincare(c.u, inv, 1.0);
  const SeriesSum sv = poincare(c.v, inv, 1.0);
  const Complex e = checked_exp(zeta, z) / std::sqrt(pi);
  const Complex value = e / quarter * su.sum;
  const Complex deriv = quarter * e * sv.sum;
  // The neglected recessive part is at most |Ai/Bi| ~ e^{-2 Re zeta} relative.
  const double recessive = std::exp(-2.0 * zeta.real());
  return {value, deriv, (su.rel_trunc + recessive + 4 * kDoubleEps) * std::abs(value),
          (sv.rel_trunc + recessive + 4 * kDoubleEps) * std::abs(deriv)};
}

PairEval conj(const PairEval& p) {
  return {std::conj(p.value), std::conj(p.deriv), p.err_value, p.err_deriv};
}

// Ai in the closed sector |arg z| <= 2pi/3, any half plane.
PairEval ai_sector(Complex z) {
  if (z.imag() < 0.0) return conj(ai_expansion(std::conj(z)));
  return ai_expansion(z);
}

struct LargeAi {
  PairEval pair;
  double scale_value, scale_deriv;
};

// Ai for |z| > 9 with Im z >= 0.
LargeAi ai_large_upper(Complex z) {
  const double theta = std::arg(z);
  if (theta <= 2.0 * pi / 3.0 + 1e-12) {
    const PairEval p = ai_expansion(z);
    return {p, std::abs(p.value), std::abs(p.deriv)};
  }
  // Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z),  Ai'(z) = -w^2 Ai'(wz) - w Ai'(w^2 z)
  const double r = std::abs(z);
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  const Complex w2 = std::polar(1.0, -2.0 * pi / 3.0);
  const PairEval a = ai_sector(std::polar(r, theta - 4.0 * pi / 3.0));
  const PairEval b = ai_sector(std::polar(r, theta - 2.0 * pi / 3.0));
  PairEval out{-w * a.value - w2 * b.value, -w2 * a.deriv - w * b.deriv,
               a.err_value + b.err_value, a.err_deriv + b.err_deriv};
  return {out, std::abs(a.value) + std::abs(b.value), std::abs(a.deriv) + std::abs(b.deriv)};
}

Evaluation asymptotic_upper(Complex z, bool want_bi) {
  Evaluation e;
  const LargeAi ai = ai_large_upper(z);
  e.ai = ai.pair.value;
  e.ai_prime = ai.pair.deriv;
  e.abs_err[0] = ai.pair.err_value;
  e.abs_err[1] = ai.pair.err_deriv;
  e.scale[0] = ai.scale_value;
  e.scale[1] = ai.scale_deriv;
  if (!want_bi) return e;

  const double theta = std::arg(z);
  if (theta <= pi / 6.0) {
    const PairEval b = bi_expansion(z);
    e.bi = b.value;
    e.bi_prime = b.deriv;
    e.abs_err[2] = b.err_value;
    e.abs_err[3] = b.err_deriv;
    e.scale[2] = std::abs(b.value);
    e.scale[3] = std::abs(b.deriv);
    return e;
  }
  // Bi(z) = i Ai(z) + 2 e^{-i pi/6} Ai(z e^{-2 pi i/3})
  const Complex i(0.0, 1.0);
  const Complex phase = 2.0 * std::polar(1.0, -pi / 6.0);
  const Complex wbar = std::polar(1.0, -2.0 * pi / 3.0);
  const PairEval r = ai_sector(std::polar(std::abs(z), theta - 2.0 * pi / 3.0));
  e.bi = i * e.ai + phase * r.value;
  e.bi_prime = i * e.ai_prime + phase * wbar * r.deriv;
  e.abs_err[2] = e.abs_err[0] + 2.0 * r.err_value;
  e.abs_err[3] = e.abs_err[1] + 2.0 * r.err_deriv;
  e.scale[2] = std::abs(e.ai) + 2.0 * std::abs(r.value);
  e.scale[3] = std::abs(e.ai_prime) + 2.0 * std::abs(r.deriv);
  return e;
}

Evaluation evaluate(Complex z, bool want_bi) {
  const double modulus = std::abs(z);
  if (!std::isfinite(modulus) || modulus > kAiryMaxModulus) {
    std::ostringstream msg;
    msg << "Airy argument |z| = " << modulus << " outside the supported disc |z| <= "
        << kAiryMaxModulus;
    throw DomainError(msg.str());
  }
  const bool lower = z.imag() < 0.0;
  const Complex upper = lower ? std::conj(z) : z;

  Evaluation e = modulus <= kAirySeriesRadius ? maclaurin(upper) : asymptotic_upper(upper, want_bi);
  if (lower) {
    e.ai = std::conj(e.ai);
    e.ai_prime = std::conj(e.ai_prime);
    e.bi = std::conj(e.bi);
    e.bi_prime = std::conj(e.bi_prime);
  } else if (z.imag() == 0.0) {
    e.ai = e.ai.real();
    e.ai_prime = e.ai_prime.real();
    e.bi = e.bi.real();
    e.bi_prime = e.bi_prime.real();
  }
  if (!want_bi) e.abs_err[2] = e.abs_err[3] = e.scale[2] = e.scale[3] = 0.0;

  const bool finite = std::isfinite(e.ai.real()) && std::isfinite(e.ai.imag()) &&
                      std::isfinite(e.ai_prime.real()) && std::isfinite(e.ai_prime.imag()) &&
                      (!want_bi || (std::isfinite(e.bi.real()) && std::isfinite(e.bi.imag()) &&
                                    std::isfinite(e.bi_prime.real()) &&
                                    std::isfinite(e.bi_prime.imag())));
  if (!finite) {
    std::ostringstream msg;
    msg << "Airy value overflows binary64 at z = " << z;
    throw DomainError(msg.str());
  }
  return e;
}

}  // namespace

AiryQuad airy_eval(Complex z) {
  const Evaluation e = evaluate(z, true);
  AiryQuad q{e.ai, e.ai_prime, e.bi, e.bi_prime, relative_error(e)};
  if (q.est_error > kAccuracyLimit) {
    std::ostringstream msg;
    msg << "Airy evaluation at z = " << z << " cannot certify 1e-8 (estimate "
        << q.est_error << ")";
    throw AccuracyError(msg.str());
  }
  return q;
}

AiryPair airy_ai(Complex z) {
  const Evaluation e = evaluate(z, false);
  AiryPair p{e.ai, e.ai_prime, relative_error(e)};
  if (p.est_error > kAccuracyLimit) {
    std::ostringstream msg;
    msg << "Ai evaluation at z = " << z << " cannot certify 1e-8";
    throw AccuracyError(msg.str());
  }
  return p;
}

double airy_ai_real(double x) { return airy_ai(Complex(x, 0.0)).ai.real(); }

double ai_zero(int n) {
  if (n < 1 || n > 100) throw DomainError("ai_zero: n must lie in [1, 100]");

  // Asymptotic estimate a_n ~ -T(3pi(4n-1)/8).
  const double t = 3.0 * pi * (4.0 * n - 1.0) / 8.0;
  const double guess =
      -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t) - 5.0 / 36.0 / (t * t * t * t));

  // Zeros are spaced by about pi / sqrt|a_n|; a quarter of that brackets one.
  const double half_width = 0.25 * pi / std::sqrt(-guess);
  double lo = guess - half_width, hi = guess + half_width;
  double f_lo = airy_ai_real(lo), f_hi = airy_ai_real(hi);
  if (f_lo * f_hi > 0.0) throw ConvergenceError("ai_zero: failed to bracket the zero");

  double x = guess;
  for (int iter = 0; iter < 60; ++iter) {
    const AiryPair p = airy_ai(Complex(x, 0.0));
    const double f = p.ai.real(), df = p.ai_prime.real();
    if (f == 0.0) return x;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    double next = x - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4 * kDoubleEps * std::abs(x)) return next;
    x = next;
  }
  throw ConvergenceError("ai_zero: Newton iteration did not converge");
}

}  // namespace airytrap
