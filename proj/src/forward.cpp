#include "jacobi/forward.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/numerics.hpp"

namespace jacobi::forward {

namespace {

herglotz::PartialFractionForm measure_form(const SpectralDatum& d) {
  validate(d);
  return {0.0, d.eigenvalues, d.weights};
}

}  // namespace

double boundary_from_angle(double beta) {
  if (!(beta > 0.0 && beta < M_PI))
    fail(errc::structural, "boundary angle must lie in (0, pi)");
  if (beta == M_PI / 2.0) return 0.0;
  return std::cos(beta) / std::sin(beta);
}

double m_function(const SpectralDatum& d, double z) {
  return herglotz::eval_partial_fraction(measure_form(d), z);
}

std::complex<double> m_function(const SpectralDatum& d, std::complex<double> z) {
  return herglotz::eval_partial_fraction(measure_form(d), z);
}

double m_shift(double m_h1, double h1, double h2) {
  const double den = 1.0 - (h2 - h1) * m_h1;
  if (den == 0.0)
    fail(errc::pole_evaluation, "shifted m-function pole: z in spectrum of J_h2");
  return m_h1 / den;
}

std::complex<double> m_shift(std::complex<double> m_h1, double h1, double h2) {
  const std::complex<double> den = 1.0 - (h2 - h1) * m_h1;
  if (den == std::complex<double>(0.0, 0.0))
    fail(errc::pole_evaluation, "shifted m-function pole: z in spectrum of J_h2");
  return m_h1 / den;
}

herglotz::ProductForm build_F(const TwoSpectra& ts) {
  validate(ts);
  return {1.0, ts.nu, ts.lambda};
}

ResidueWeightReport residue_weight_check(const TwoSpectra& ts,
                                         const std::vector<double>& weights_h1) {
  if (weights_h1.size() != ts.lambda.size())
    fail(errc::structural, "one weight per lambda required");
  const herglotz::ProductForm F = build_F(ts);
  const std::vector<double> residues = herglotz::product_residues(F);
  const double delta = ts.h1 - ts.h2;
  ResidueWeightReport report;
  report.deviations.resize(residues.size());
  for (std::size_t k = 0; k < residues.size(); ++k) {
    report.deviations[k] = std::abs(residues[k] + delta * weights_h1[k]);
    report.max_abs = std::max(report.max_abs, report.deviations[k]);
  }
  report.max_rel_delta = report.max_abs / std::abs(delta);
  return report;
}

AsymptoticsReport asymptotic_check(const JacobiMatrix& m, double h,
                                   const std::vector<double>& radii,
                                   double tol) {
  if (radii.size() < 2)
    fail(errc::structural, "slope fit needs at least two radii");
  const SpectralDatum d = tridiag::spectral_datum(m, h, tol);
  const double radius = std::max(std::abs(d.eigenvalues.front()),
                                 std::abs(d.eigenvalues.back()));
  for (double r : radii)
    if (!(r >= 10.0 * radius))
      fail(errc::structural, "radii must be at least 10x the spectral radius");

  const double a1h = m.diag[0] - h;
  const double b1 = m.size() > 1 ? m.offdiag[0] : 0.0;

  AsymptoticsReport report;
  report.radii = radii;
  report.residuals.reserve(radii.size());
  bool all_zero = true;
  for (double r : radii) {
    const std::complex<double> z(0.0, r);
    const std::complex<double> z2 = z * z;
    const std::complex<double> series =
        -1.0 / z - a1h / z2 - (a1h * a1h + b1 * b1) / (z2 * z);
    const double residual = std::abs(m_function(d, z) - series);
    report.residuals.push_back(residual);
    if (residual != 0.0) all_zero = false;
  }

  if (all_zero) {
    report.slope = -std::numeric_limits<double>::infinity();
    report.pass = true;
    return report;
  }

  // least-squares slope of log residual vs log radius
  const std::size_t n = radii.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(radii[i]);
    const double y =
        std::log(std::max(report.residuals[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  report.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  report.pass = report.slope <= -3.9;
  return report;
}

GeneratedInstance generate_instance(std::uint64_t seed, std::size_t n,
                                    Range diag_range, Range offdiag_range,
                                    double h1, double h2, double tol) {
  if (n == 0) fail(errc::structural, "instance size must be at least 1");
  if (!(diag_range.lo <= diag_range.hi))
    fail(errc::structural, "empty diagonal range");
  if (!(offdiag_range.lo <= offdiag_range.hi) || !(offdiag_range.lo > 0.0))
    fail(errc::structural, "off-diagonal range must be strictly positive");
  if (h1 == h2) fail(errc::structural, "generator needs h1 != h2");

  SeededRng rng(seed);
  GeneratedInstance out;
  out.matrix.diag.resize(n);
  out.matrix.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    out.matrix.diag[i] = rng.uniform(diag_range.lo, diag_range.hi);
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.matrix.offdiag[i] = rng.uniform(offdiag_range.lo, offdiag_range.hi);

  out.datum_h1 = tridiag::spectral_datum(out.matrix, h1, tol);
  out.datum_h2 = tridiag::spectral_datum(out.matrix, h2, tol);
  out.two_spectra = {h1, h2, out.datum_h1.eigenvalues, out.datum_h2.eigenvalues};
  validate(out.two_spectra);
  return out;
}

}  // namespace jacobi::forward
