#include "jacobi/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/numerics.hpp"

namespace jacobi {

const char* to_string(errc code) {
  switch (code) {
    case errc::structural: return "structural";
    case errc::degenerate_spectrum: return "degenerate_spectrum";
    case errc::pole_evaluation: return "pole_evaluation";
    case errc::not_herglotz: return "not_herglotz";
    case errc::normalization: return "normalization";
    case errc::inconsistent_data: return "inconsistent_data";
    case errc::inconsistent_pairing: return "inconsistent_pairing";
    case errc::ill_conditioned_measure: return "ill_conditioned_measure";
  }
  return "unknown";
}

void fail(errc code, const std::string& what) {
  throw SpectralError(code, std::string(to_string(code)) + ": " + what);
}

void validate(const JacobiMatrix& m) {
  if (m.diag.empty()) fail(errc::structural, "JacobiMatrix needs N >= 1");
  if (m.offdiag.size() + 1 != m.diag.size())
    fail(errc::structural, "JacobiMatrix needs N-1 off-diagonal entries");
  if (!all_finite(m.diag) || !all_finite(m.offdiag))
    fail(errc::structural, "JacobiMatrix entries must be finite");
  for (std::size_t i = 0; i < m.offdiag.size(); ++i)
    if (!(m.offdiag[i] > 0.0)) {
      std::ostringstream os;
      os << "off-diagonal b_" << i + 1 << " = " << m.offdiag[i]
         << " is not strictly positive";
      fail(errc::structural, os.str());
    }
}

void validate(const BoundaryConstant& b) {
  if (!std::isfinite(b.h)) fail(errc::structural, "boundary constant must be finite");
  if (b.beta) {
    const double beta = *b.beta;
    if (!(beta > 0.0 && beta < M_PI))
      fail(errc::structural, "boundary angle must lie in (0, pi)");
    const double cot = std::cos(beta) / std::sin(beta);
    if (std::abs(b.h - cot) > 1e-12 * std::max(1.0, std::abs(b.h)))
      fail(errc::structural, "boundary constant does not match cot(beta)");
  }
}

void validate(const SpectralDatum& d) {
  if (!std::isfinite(d.h)) fail(errc::structural, "boundary constant must be finite");
  if (d.eigenvalues.empty() || d.eigenvalues.size() != d.weights.size())
    fail(errc::structural, "eigenvalue/weight lists must be nonempty and equal length");
  if (!all_finite(d.eigenvalues) || !all_finite(d.weights))
    fail(errc::structural, "spectral datum entries must be finite");
  if (!strictly_increasing(d.eigenvalues))
    fail(errc::structural, "eigenvalues must be strictly increasing");
  CompensatedSum total;
  for (double w : d.weights) {
    if (!(w > 0.0)) fail(errc::structural, "spectral weights must be positive");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    fail(errc::structural, "spectral weights must sum to 1");
}

void validate(const TwoSpectra& ts) {
  if (!std::isfinite(ts.h1) || !std::isfinite(ts.h2))
    fail(errc::structural, "boundary constants must be finite");
  if (ts.h1 == ts.h2) fail(errc::structural, "two spectra require h1 != h2");
  if (ts.lambda.empty() || ts.lambda.size() != ts.nu.size())
    fail(errc::structural, "spectra must be nonempty and equal length");
  if (!all_finite(ts.lambda) || !all_finite(ts.nu))
    fail(errc::structural, "spectra entries must be finite");
  if (!strictly_increasing(ts.lambda) || !strictly_increasing(ts.nu))
    fail(errc::structural, "spectra must be strictly increasing");
  const int orientation = ts.h1 > ts.h2 ? +1 : -1;
  InterlacingReport report = validate_interlacing(ts.lambda, ts.nu, orientation);
  if (!report) fail(errc::inconsistent_data, "interlacing: " + report.detail);
  const double gap = min_merged_gap(ts.lambda, ts.nu);
  const double radius =
      std::max(std::max(std::abs(ts.lambda.front()), std::abs(ts.lambda.back())),
               std::max(std::abs(ts.nu.front()), std::abs(ts.nu.back())));
  if (gap < kDegenerateGapRel * radius)
    fail(errc::degenerate_spectrum,
         "merged two-spectra gap below the degeneracy floor");
  const double delta = compute_delta(ts.lambda, ts.nu);
  const double n = static_cast<double>(ts.lambda.size());
  if (std::abs(delta - (ts.h1 - ts.h2)) > 1e-10 * n) {
    std::ostringstream os;
    os << "sum(nu - lambda) = " << delta << " but h1 - h2 = " << ts.h1 - ts.h2;
    fail(errc::inconsistent_data, os.str());
  }
}

double min_merged_gap(const std::vector<double>& lambda,
                      const std::vector<double>& nu) {
  std::vector<double> merged;
  merged.reserve(lambda.size() + nu.size());
  merged.insert(merged.end(), lambda.begin(), lambda.end());
  merged.insert(merged.end(), nu.begin(), nu.end());
  std::sort(merged.begin(), merged.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < merged.size(); ++i)
    gap = std::min(gap, merged[i] - merged[i - 1]);
  return gap;
}

InterlacingReport validate_interlacing(const std::vector<double>& lambda,
                                       const std::vector<double>& nu,
                                       int orientation) {
  if (lambda.size() != nu.size())
    fail(errc::structural, "interlacing check needs equal-length lists");
  if (orientation != +1 && orientation != -1)
    fail(errc::structural, "orientation must be +1 or -1");
  const std::size_t n = lambda.size();
  // lower = sequence that sits to the left at each index
  const std::vector<double>& lower = orientation > 0 ? lambda : nu;
  const std::vector<double>& upper = orientation > 0 ? nu : lambda;
  InterlacingReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = lower[i] < upper[i];
    const bool right_ok = i + 1 == n || upper[i] < lower[i + 1];
    if (!left_ok || !right_ok) {
      report.ok = false;
      report.first_violation = i + 1;
      std::ostringstream os;
      os << "strict interlacing fails at index " << i + 1;
      report.detail = os.str();
      return report;
    }
  }
  return report;
}

double compute_delta(const std::vector<double>& lambda,
                     const std::vector<double>& nu) {
  if (lambda.size() != nu.size())
    fail(errc::structural, "delta needs equal-length lists");
  CompensatedSum sum;
  for (std::size_t i = 0; i < lambda.size(); ++i) sum.add(nu[i] - lambda[i]);
  return sum.value();
}

std::vector<double> compute_tau_inverse(const std::vector<double>& lambda,
                                        const std::vector<double>& nu) {
  if (lambda.size() != nu.size())
    fail(errc::structural, "tau needs equal-length lists");
  const std::size_t n = lambda.size();
  const double delta = compute_delta(lambda, nu);
  if (delta == 0.0) fail(errc::inconsistent_data, "tau needs Delta != 0");
  std::vector<double> tau_inverse(n);
  for (std::size_t k = 0; k < n; ++k) {
    SignedLogProduct prod;
    prod.multiply(nu[k] - lambda[k]);
    prod.divide(delta);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      if (lambda[j] == lambda[k])
        fail(errc::degenerate_spectrum, "coincident lambda values");
      prod.multiply(nu[j] - lambda[k]);
      prod.divide(lambda[j] - lambda[k]);
    }
    tau_inverse[k] = prod.value();
    if (!std::isfinite(tau_inverse[k]))
      fail(errc::degenerate_spectrum, "tau evaluation overflowed");
  }
  return tau_inverse;
}

C2SConditions two_spectra_conditions(const TwoSpectra& ts) {
  C2SConditions out;
  if (ts.lambda.empty() || ts.lambda.size() != ts.nu.size() || ts.h1 == ts.h2)
    fail(errc::structural, "conditions need equal-length spectra and h1 != h2");
  const int orientation = ts.h1 > ts.h2 ? +1 : -1;

  out.interlacing = static_cast<bool>(
      validate_interlacing(ts.lambda, ts.nu, orientation));

  // Both spectra are bounded at finite size, so both side inequalities of
  // condition (1) apply: the upper sequence must exceed the lower one at
  // both ends.
  const std::vector<double>& lower = orientation > 0 ? ts.lambda : ts.nu;
  const std::vector<double>& upper = orientation > 0 ? ts.nu : ts.lambda;
  out.boundary_inequality =
      upper.front() > lower.front() && upper.back() > lower.back();

  out.delta = compute_delta(ts.lambda, ts.nu);
  const double n = static_cast<double>(ts.lambda.size());
  out.delta_matches = std::isfinite(out.delta) &&
                      std::abs(out.delta - (ts.h1 - ts.h2)) <= 1e-10 * n;

  out.tau_positive = false;
  if (out.interlacing && out.delta != 0.0) {
    try {
      const std::vector<double> tau_inv = compute_tau_inverse(ts.lambda, ts.nu);
      out.tau_positive = true;
      for (double t : tau_inv)
        if (!(t > 0.0)) out.tau_positive = false;
    } catch (const SpectralError& e) {
      out.detail = e.what();
    }
  }
  return out;
}

}  // namespace jacobi
