#include "jacobi/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "jacobi/numerics.hpp"

namespace jacobi::herglotz {

namespace {

inline int sign_of(double x) { return x > 0.0 ? +1 : (x < 0.0 ? -1 : 0); }

void eval_with_derivative(const PartialFractionForm& f, double z, double& g,
                          double& gp) {
  CompensatedSum sum;
  double slope = 0.0;
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    const double d = f.poles[j] - z;
    sum.add(f.coefficients[j] / d);
    slope += f.coefficients[j] / (d * d);
  }
  g = f.constant + sum.value();
  gp = slope;
}

}  // namespace

void validate(const ProductForm& f) {
  if (!std::isfinite(f.scale) || f.scale == 0.0)
    fail(errc::structural, "product scale must be finite and nonzero");
  if (!all_finite(f.zeros) || !all_finite(f.poles))
    fail(errc::structural, "zeros and poles must be finite");
  if (!strictly_increasing(f.zeros) || !strictly_increasing(f.poles))
    fail(errc::structural, "zeros and poles must be strictly sorted");
  // disjointness: both lists sorted, so walk them together
  std::size_t i = 0, j = 0;
  while (i < f.zeros.size() && j < f.poles.size()) {
    if (f.zeros[i] == f.poles[j])
      fail(errc::structural, "zeros and poles must be disjoint");
    if (f.zeros[i] < f.poles[j])
      ++i;
    else
      ++j;
  }
}

void validate(const PartialFractionForm& f) {
  if (!std::isfinite(f.constant))
    fail(errc::structural, "constant must be finite");
  if (f.poles.size() != f.coefficients.size())
    fail(errc::structural, "one coefficient per pole required");
  if (!all_finite(f.poles) || !all_finite(f.coefficients))
    fail(errc::structural, "poles and coefficients must be finite");
  if (!strictly_increasing(f.poles))
    fail(errc::structural, "poles must be strictly sorted");
  for (double c : f.coefficients)
    if (c == 0.0) fail(errc::structural, "coefficients must be nonzero");
}

double eval_product(const ProductForm& f, double z) {
  validate(f);
  SignedLogProduct prod;
  prod.multiply(f.scale);
  for (double zero : f.zeros) prod.multiply(z - zero);
  for (double pole : f.poles) {
    if (z == pole) fail(errc::pole_evaluation, "product evaluated at a pole");
    prod.divide(z - pole);
  }
  return prod.value();
}

std::complex<double> eval_product(const ProductForm& f, std::complex<double> z) {
  validate(f);
  std::complex<double> acc(f.scale, 0.0);
  const std::size_t paired = std::min(f.zeros.size(), f.poles.size());
  for (std::size_t i = 0; i < paired; ++i) {
    const std::complex<double> den = z - f.poles[i];
    if (den == std::complex<double>(0.0, 0.0))
      fail(errc::pole_evaluation, "product evaluated at a pole");
    acc *= (z - f.zeros[i]) / den;
  }
  for (std::size_t i = paired; i < f.zeros.size(); ++i) acc *= z - f.zeros[i];
  for (std::size_t i = paired; i < f.poles.size(); ++i) {
    const std::complex<double> den = z - f.poles[i];
    if (den == std::complex<double>(0.0, 0.0))
      fail(errc::pole_evaluation, "product evaluated at a pole");
    acc /= den;
  }
  return acc;
}

double eval_partial_fraction(const PartialFractionForm& f, double z) {
  validate(f);
  CompensatedSum sum;
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    if (z == f.poles[j])
      fail(errc::pole_evaluation, "partial fraction evaluated at a pole");
    sum.add(f.coefficients[j] / (f.poles[j] - z));
  }
  return f.constant + sum.value();
}

std::complex<double> eval_partial_fraction(const PartialFractionForm& f,
                                           std::complex<double> z) {
  validate(f);
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    const std::complex<double> den = f.poles[j] - z;
    if (den == std::complex<double>(0.0, 0.0))
      fail(errc::pole_evaluation, "partial fraction evaluated at a pole");
    const std::complex<double> term = f.coefficients[j] / den;
    re.add(term.real());
    im.add(term.imag());
  }
  return {f.constant + re.value(), im.value()};
}

std::vector<double> product_residues(const ProductForm& f) {
  validate(f);
  std::vector<double> residues(f.poles.size());
  for (std::size_t k = 0; k < f.poles.size(); ++k) {
    const double pk = f.poles[k];
    SignedLogProduct prod;
    prod.multiply(f.scale);
    for (double zero : f.zeros) prod.multiply(pk - zero);
    for (std::size_t n = 0; n < f.poles.size(); ++n) {
      if (n == k) continue;
      const double gap = pk - f.poles[n];
      if (gap == 0.0) fail(errc::degenerate_spectrum, "repeated poles");
      prod.divide(gap);
    }
    residues[k] = prod.value();
    if (!std::isfinite(residues[k]))
      fail(errc::degenerate_spectrum, "residue evaluation overflowed");
  }
  return residues;
}

PartialFractionForm product_to_partial_fraction(const ProductForm& f) {
  validate(f);
  if (f.zeros.size() != f.poles.size())
    fail(errc::structural, "conversion needs a degree-balanced product");
  PartialFractionForm out;
  out.constant = f.scale;
  out.poles = f.poles;
  const std::vector<double> residues = product_residues(f);
  out.coefficients.resize(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i)
    out.coefficients[i] = -residues[i];
  return out;
}

namespace detail {

int sign_at(const PartialFractionForm& f, double x, bool from_right) {
  for (std::size_t j = 0; j < f.poles.size(); ++j)
    if (x == f.poles[j]) {
      const int cs = sign_of(f.coefficients[j]);
      return from_right ? -cs : cs;
    }
  return sign_of(eval_partial_fraction(f, x));
}

double find_bracketed_zero(const PartialFractionForm& f, double lo, double hi,
                           int sign_lo, int sign_hi, double tol) {
  if (!(lo < hi) || sign_lo == sign_hi || sign_lo == 0 || sign_hi == 0)
    fail(errc::inconsistent_data, "root bracket lacks a sign change");
  const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));

  // bisection to a short bracket
  while (hi - lo > 1e-6 * scale) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return mid;
    const int s = sign_of(eval_partial_fraction(f, mid));
    if (s == 0) return mid;
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }

  // safeguarded Newton, bracket updated every step
  const double eps = std::numeric_limits<double>::epsilon();
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double g, gp;
    eval_with_derivative(f, z, g, gp);
    if (g == 0.0) return z;
    if (sign_of(g) == sign_lo)
      lo = z;
    else
      hi = z;
    double zn;
    if (gp != 0.0 && std::isfinite(gp)) {
      zn = z - g / gp;
      if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
    } else {
      zn = 0.5 * (lo + hi);
    }
    const double step = std::abs(zn - z);
    z = zn;
    if (step <= 4.0 * eps * std::max(1.0, std::abs(z))) return z;
  }
  // Newton did not settle; finish with certified bisection
  while (hi - lo > tol * std::max(1.0, std::abs(0.5 * (lo + hi)))) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const int s = sign_of(eval_partial_fraction(f, mid));
    if (s == 0) return mid;
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

namespace {

std::vector<double> zeros_impl(const PartialFractionForm& input, double tol,
                               bool parallel) {
  validate(input);
  if (!(tol > 0.0)) fail(errc::structural, "root tolerance must be positive");
  if (input.constant == 0.0)
    fail(errc::normalization, "partial fraction needs a nonzero constant");
  if (input.poles.empty()) return {};

  int common = sign_of(input.coefficients.front());
  for (double c : input.coefficients)
    if (sign_of(c) != common)
      fail(errc::not_herglotz, "coefficients must share one sign");
  if (sign_of(input.constant) != common)
    fail(errc::not_herglotz,
         "constant and coefficient signs disagree; reflect the axis first");

  // both-negative inputs have the same zeros as their negation
  PartialFractionForm f = input;
  if (common < 0) {
    f.constant = -f.constant;
    for (double& c : f.coefficients) c = -c;
  }

  const std::size_t p = f.poles.size();
  CompensatedSum coeff_sum;
  for (double c : f.coefficients) coeff_sum.add(c);

  // exterior bracket: the root beyond the last pole is at most sum(A)/c away
  double ext_hi = f.poles.back() + coeff_sum.value() / f.constant;
  ext_hi += std::max(tol, 1e-12) * std::max(1.0, std::abs(ext_hi));
  for (int tries = 0; tries < 64; ++tries) {
    if (detail::sign_at(f, ext_hi, true) > 0) break;
    ext_hi += ext_hi - f.poles.back();
  }

  std::vector<double> roots(p);
  auto solve_one = [&](std::size_t i) {
    const double lo = f.poles[i];
    const double hi = i + 1 < p ? f.poles[i + 1] : ext_hi;
    roots[i] = detail::find_bracketed_zero(f, lo, hi, -1, +1, tol);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(p); ++i)
      solve_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < p; ++i) solve_one(i);
  }
  return roots;
}

}  // namespace

std::vector<double> zeros_of_partial_fraction(const PartialFractionForm& f,
                                              double tol) {
  return zeros_impl(f, tol, true);
}

std::vector<double> zeros_of_partial_fraction_serial(
    const PartialFractionForm& f, double tol) {
  return zeros_impl(f, tol, false);
}

double constant_from_zero(const std::vector<double>& poles,
                          const std::vector<double>& coefficients,
                          double known_zero) {
  if (poles.size() != coefficients.size())
    fail(errc::structural, "one coefficient per pole required");
  CompensatedSum sum;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    if (poles[j] == known_zero)
      fail(errc::pole_evaluation, "known zero coincides with a pole");
    sum.add(coefficients[j] / (poles[j] - known_zero));
  }
  return -sum.value();
}

PairingDiagnostics pairing_diagnostics(const std::vector<double>& zeros,
                                       const std::vector<double>& poles) {
  const std::size_t p = zeros.size();
  if (p == 0 || p != poles.size())
    fail(errc::structural, "pairing diagnostics need equal nonempty lists");

  PairingDiagnostics out;
  out.min_paired_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p; ++i)
    out.min_paired_gap = std::min(out.min_paired_gap,
                                  std::abs(zeros[i] - poles[i]));

  // residue of the truncated product prod_{j<=m} (z - zeros_j)/(z - poles_j)
  // at poles_n, for n <= m
  auto partial_residue = [&](std::size_t n, std::size_t m) {
    SignedLogProduct prod;
    prod.multiply(poles[n] - zeros[n]);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == n) continue;
      prod.multiply(poles[n] - zeros[j]);
      prod.divide(poles[n] - poles[j]);
    }
    return prod.value();
  };

  out.residue_drift.resize(p);
  for (std::size_t m = 1; m <= p; ++m) {
    double drift = 0.0;
    for (std::size_t n = 0; n < m; ++n)
      drift = std::max(drift,
                       std::abs(partial_residue(n, m) - partial_residue(n, p)));
    out.residue_drift[m - 1] = drift;
  }
  return out;
}

}  // namespace jacobi::herglotz
