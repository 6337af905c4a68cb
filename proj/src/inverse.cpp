#include "jacobi/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/numerics.hpp"
#include "jacobi/tridiag.hpp"

namespace jacobi::inverse {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

inline int sign_of(double x) { return x > 0.0 ? +1 : (x < 0.0 ? -1 : 0); }

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Validated 0-based view of a RecoveryProblem: hidden nu indices (l-set),
// weighted indices (k-set) with their values, and the known nu list.
struct ProblemView {
  std::vector<std::size_t> hidden;
  std::vector<std::size_t> weighted;
  std::vector<double> weights;
  std::vector<double> nu_known;  // full length, NaN where hidden
  std::vector<char> known;
};

ProblemView split_problem(const RecoveryProblem& p, bool matching_required) {
  if (p.lambda.empty()) fail(errc::structural, "lambda list is empty");
  if (!all_finite(p.lambda) || !strictly_increasing(p.lambda))
    fail(errc::structural, "lambda must be finite and strictly increasing");
  const std::size_t n = p.lambda.size();

  ProblemView view;
  view.nu_known.assign(n, kNan);
  view.known.assign(n, 0);

  view.hidden.reserve(p.hidden.size());
  for (std::size_t idx : p.hidden) {
    if (idx < 1 || idx > n) fail(errc::structural, "hidden index out of range");
    view.hidden.push_back(idx - 1);
  }
  std::sort(view.hidden.begin(), view.hidden.end());
  if (std::adjacent_find(view.hidden.begin(), view.hidden.end()) !=
      view.hidden.end())
    fail(errc::structural, "hidden indices must be unique");

  std::vector<char> is_hidden(n, 0);
  for (std::size_t idx : view.hidden) is_hidden[idx] = 1;

  for (const auto& [idx1, value] : p.known_nu) {
    if (idx1 < 1 || idx1 > n) fail(errc::structural, "known_nu index out of range");
    if (!std::isfinite(value)) fail(errc::structural, "known_nu value not finite");
    if (is_hidden[idx1 - 1])
      fail(errc::structural, "known_nu given at a hidden index");
    view.nu_known[idx1 - 1] = value;
    view.known[idx1 - 1] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!is_hidden[i] && !view.known[i]) {
      std::ostringstream os;
      os << "nu at index " << i + 1 << " is neither hidden nor known";
      fail(errc::structural, os.str());
    }

  for (const auto& [idx1, value] : p.known_weights) {
    if (idx1 < 1 || idx1 > n)
      fail(errc::structural, "known_weights index out of range");
    if (!(value > 0.0) || !std::isfinite(value))
      fail(errc::structural, "weights must be positive and finite");
    view.weighted.push_back(idx1 - 1);
    view.weights.push_back(value);
  }

  if (matching_required) {
    if (view.weighted != view.hidden)
      fail(errc::structural,
           "known weight index set must equal the hidden index set");
  } else if (view.weighted.size() != view.hidden.size()) {
    fail(errc::structural,
         "non-matching problems need equally many weights and hidden nu's");
  }
  return view;
}

// Every known nu must already sit in its interlacing slot for the claimed
// orientation; inconsistent inputs are rejected, not repaired.
void check_known_slots(const std::vector<double>& lambda,
                       const ProblemView& view, int orientation) {
  const std::size_t n = lambda.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!view.known[i]) continue;
    const double nu = view.nu_known[i];
    bool ok;
    if (orientation > 0)
      ok = lambda[i] < nu && (i + 1 == n || nu < lambda[i + 1]);
    else
      ok = nu < lambda[i] && (i == 0 || lambda[i - 1] < nu);
    if (!ok) {
      std::ostringstream os;
      os << "interlacing: known nu at index " << i + 1
         << " violates the data orientation";
      fail(errc::inconsistent_data, os.str());
    }
  }
}

// Solve the single-sign partial fraction c + sum A_k/(lambda_k - z) for its
// zeros, reflecting the axis first when the orientation is negative so the
// one herglotz root-finder body serves both branches.
std::vector<double> oriented_zeros(double constant,
                                   const std::vector<double>& poles,
                                   const std::vector<double>& coeffs,
                                   int orientation, double tol) {
  if (orientation > 0)
    return herglotz::zeros_of_partial_fraction({constant, poles, coeffs}, tol);
  const std::size_t p = poles.size();
  std::vector<double> rpoles(p), rcoeffs(p);
  for (std::size_t i = 0; i < p; ++i) {
    rpoles[i] = -poles[p - 1 - i];
    rcoeffs[i] = -coeffs[p - 1 - i];
  }
  std::vector<double> mirrored =
      herglotz::zeros_of_partial_fraction({constant, rpoles, rcoeffs}, tol);
  std::vector<double> roots(p);
  for (std::size_t i = 0; i < p; ++i) roots[i] = -mirrored[p - 1 - i];
  return roots;
}

struct ReconstructOutput {
  JacobiMatrix matrix;
  double h2 = 0.0;
  std::vector<double> weights;
};

ReconstructOutput reconstruct_core(const std::vector<double>& lambda,
                                   const std::vector<double>& nu, double h1) {
  if (lambda.empty() || lambda.size() != nu.size())
    fail(errc::structural, "two spectra must be nonempty and equal length");
  if (!all_finite(lambda) || !all_finite(nu) || !std::isfinite(h1))
    fail(errc::structural, "reconstruction inputs must be finite");
  if (!strictly_increasing(lambda) || !strictly_increasing(nu))
    fail(errc::structural, "spectra must be strictly increasing");

  const double delta = compute_delta(lambda, nu);
  if (delta == 0.0) fail(errc::inconsistent_data, "two spectra with zero Delta");
  const double h2 = h1 - delta;

  ReconstructOutput out;
  out.h2 = h2;
  out.weights = weights_from_two_spectra(lambda, nu, h1, h2);
  auto [a, b] = detail::stieltjes_coefficients(lambda, out.weights);
  a[0] += h1;
  out.matrix = {std::move(a), std::move(b)};
  validate(out.matrix);
  return out;
}

// Residuals shared by every pipeline: weight-sum drift, agreement with the
// given weights, the Delta identity, and a forward re-solve of the
// reconstructed matrix against both spectra.
RecoveryResult finish_recovery(const std::vector<double>& lambda,
                               std::vector<double> nu_full, double h1,
                               std::optional<double> h2_echo,
                               const ProblemView& view,
                               std::map<std::string, double> diagnostics,
                               errc violation_code) {
  const double delta_sum = compute_delta(lambda, nu_full);
  if (delta_sum == 0.0)
    fail(violation_code, "interlacing: recovered data has zero Delta");
  const int orientation = delta_sum > 0.0 ? +1 : -1;
  const InterlacingReport report =
      validate_interlacing(lambda, nu_full, orientation);
  if (!report)
    fail(violation_code, "interlacing: recovered data fails: " + report.detail);

  ReconstructOutput rec = reconstruct_core(lambda, nu_full, h1);

  RecoveryResult out;
  out.nu_full = std::move(nu_full);
  out.h2 = h2_echo ? *h2_echo : rec.h2;
  out.weights_h1 = std::move(rec.weights);
  out.matrix = std::move(rec.matrix);
  out.diagnostics = std::move(diagnostics);

  out.diagnostics["delta_residual"] = std::abs(delta_sum - (h1 - out.h2));
  CompensatedSum wsum;
  for (double w : out.weights_h1) wsum.add(w);
  out.diagnostics["sum_weights_residual"] = std::abs(wsum.value() - 1.0);

  double weight_match = 0.0;
  for (std::size_t i = 0; i < view.weighted.size(); ++i)
    weight_match = std::max(
        weight_match,
        std::abs(view.weights[i] - out.weights_h1[view.weighted[i]]));
  out.diagnostics["weight_match_residual"] = weight_match;

  out.diagnostics["min_offdiag"] =
      out.matrix.offdiag.empty()
          ? 0.0
          : *std::min_element(out.matrix.offdiag.begin(),
                              out.matrix.offdiag.end());

  const SpectralDatum check1 = tridiag::spectral_datum(out.matrix, h1);
  const SpectralDatum check2 = tridiag::spectral_datum(out.matrix, out.h2);
  double lam_res = 0.0, nu_res = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    lam_res = std::max(lam_res, std::abs(check1.eigenvalues[i] - lambda[i]));
    nu_res = std::max(nu_res, std::abs(check2.eigenvalues[i] - out.nu_full[i]));
  }
  out.diagnostics["lambda_roundtrip_residual"] = lam_res;
  out.diagnostics["nu_roundtrip_residual"] = nu_res;
  return out;
}

std::vector<double> merge_nu(const ProblemView& view,
                             const std::vector<double>& roots) {
  std::vector<double> nu_full = view.nu_known;
  for (std::size_t i = 0; i < view.hidden.size(); ++i)
    nu_full[view.hidden[i]] = roots[i];
  return nu_full;
}

double require_h1(const RecoveryProblem& p) {
  if (!p.h1 || !std::isfinite(*p.h1))
    fail(errc::structural, "h1 is required for this recovery mode");
  return *p.h1;
}

}  // namespace

std::vector<double> weights_from_two_spectra(const std::vector<double>& lambda,
                                             const std::vector<double>& nu,
                                             double h1, double h2) {
  if (lambda.size() != nu.size() || lambda.empty())
    fail(errc::structural, "two spectra must be nonempty and equal length");
  const double delta = h1 - h2;
  if (delta == 0.0) fail(errc::structural, "weights need h1 != h2");
  const int orientation = delta > 0.0 ? +1 : -1;
  const InterlacingReport report = validate_interlacing(lambda, nu, orientation);
  if (!report)
    fail(errc::inconsistent_data, "interlacing: " + report.detail);

  const herglotz::ProductForm F{1.0, nu, lambda};
  const std::vector<double> residues = herglotz::product_residues(F);
  std::vector<double> weights(residues.size());
  CompensatedSum total;
  for (std::size_t k = 0; k < residues.size(); ++k) {
    weights[k] = -residues[k] / delta;
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
      fail(errc::inconsistent_data, "nonpositive spectral weight recovered");
    total.add(weights[k]);
  }
  if (std::abs(total.value() - 1.0) > 1e-10)
    fail(errc::inconsistent_data,
         "recovered weights do not sum to 1: spectra inconsistent with h1 - h2");
  return weights;
}

std::pair<JacobiMatrix, double> reconstruct_from_two_spectra(
    const std::vector<double>& lambda, const std::vector<double>& nu,
    double h1) {
  ReconstructOutput out = reconstruct_core(lambda, nu, h1);
  return {std::move(out.matrix), out.h2};
}

RecoveryResult recover_two_spectra(const RecoveryProblem& p) {
  const double h1 = require_h1(p);
  ProblemView view = split_problem(p, true);
  if (!view.hidden.empty())
    fail(errc::structural, "two-spectra mode takes no hidden indices");
  return finish_recovery(p.lambda, view.nu_known, h1, p.h2, view, {},
                         errc::inconsistent_data);
}

namespace detail {

std::vector<double> matching_coefficients(
    const std::vector<double>& lambda, const std::vector<double>& nu_known,
    const std::vector<std::size_t>& index_set,
    const std::vector<double>& weights) {
  const std::size_t n = lambda.size();
  std::vector<char> in_set(n, 0);
  for (std::size_t idx : index_set) in_set[idx] = 1;

  std::vector<double> coeffs(index_set.size());
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    const std::size_t k = index_set[i];
    SignedLogProduct h_value;  // H(lambda_k) over the complement indices
    for (std::size_t j = 0; j < n; ++j) {
      if (in_set[j]) continue;
      h_value.multiply(lambda[k] - nu_known[j]);
      h_value.divide(lambda[k] - lambda[j]);
    }
    if (h_value.is_zero())
      fail(errc::inconsistent_data, "complement product vanishes at a pole");
    const double c = weights[i] / h_value.value();
    if (!std::isfinite(c) || !(c > 0.0)) {
      std::ostringstream os;
      os << "coefficient at index " << k + 1
         << " is not positive: data not realizable";
      fail(errc::inconsistent_data, os.str());
    }
    coeffs[i] = c;
  }
  return coeffs;
}

std::pair<std::vector<double>, std::vector<double>> stieltjes_coefficients(
    const std::vector<double>& nodes, const std::vector<double>& masses) {
  const std::size_t n = nodes.size();
  if (n == 0 || masses.size() != n)
    fail(errc::structural, "measure needs equally many nodes and masses");
  if (!strictly_increasing(nodes))
    fail(errc::structural, "measure nodes must be strictly increasing");
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m))
      fail(errc::structural, "measure masses must be positive and finite");

  const double scale =
      std::max(1.0, std::max(std::abs(nodes.front()), std::abs(nodes.back())));
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> a(n), b(n > 1 ? n - 1 : 0);
  std::vector<std::vector<double>> basis;
  basis.reserve(n);

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sqrt(masses[i]);
  const double nrm = std::sqrt(dot(v, v));
  for (double& x : v) x /= nrm;

  std::vector<double> w(n);
  double beta_prev = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    basis.push_back(v);
    for (std::size_t i = 0; i < n; ++i) w[i] = nodes[i] * v[i];
    const double alpha = dot(v, w);
    a[step] = alpha;
    if (step + 1 == n) break;

    for (std::size_t i = 0; i < n; ++i) w[i] -= alpha * v[i];
    if (step > 0)
      for (std::size_t i = 0; i < n; ++i) w[i] -= beta_prev * basis[step - 1][i];

    // full reorthogonalization, two classical Gram-Schmidt passes
    for (int pass = 0; pass < 2; ++pass)
      for (const std::vector<double>& u : basis) {
        const double proj = dot(u, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * u[i];
      }

    const double beta = std::sqrt(dot(w, w));
    if (!(beta > floor)) {
      std::ostringstream os;
      os << "recurrence coefficient b_" << step + 1
         << " lost positivity (measure numerically rank-deficient)";
      fail(errc::ill_conditioned_measure, os.str());
    }
    b[step] = beta;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / beta;
    beta_prev = beta;
  }
  return {std::move(a), std::move(b)};
}

std::pair<std::vector<double>, std::vector<double>> jacobi_from_measure(
    const std::vector<double>& nodes, const std::vector<double>& masses) {
  const std::size_t n = nodes.size();
  if (n == 0 || masses.size() != n)
    fail(errc::structural, "measure needs equally many nodes and masses");
  if (!strictly_increasing(nodes))
    fail(errc::structural, "measure nodes must be strictly increasing");
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m))
      fail(errc::structural, "measure masses must be positive and finite");

  // Gragg-Harrod elimination: nodes and masses are folded in one at a time
  // with plane rotations. p0 turns into the diagonal, p1 into the total mass
  // followed by the squared off-diagonal entries.
  std::vector<double> p0 = nodes;
  std::vector<double> p1(n, 0.0);
  p1[0] = masses[0];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double pn = masses[j + 1];
    double gam = 1.0;
    double sig = 0.0;
    double t = 0.0;
    const double xlam = nodes[j + 1];
    for (std::size_t k = 0; k <= j + 1; ++k) {
      const double rho = p1[k] + pn;
      const double tmp = gam * rho;
      const double tsig = sig;
      if (rho <= 0.0) {
        gam = 1.0;
        sig = 0.0;
      } else {
        gam = p1[k] / rho;
        sig = pn / rho;
      }
      const double tk = sig * (p0[k] - xlam) - gam * t;
      p0[k] -= tk - t;
      t = tk;
      pn = sig <= 0.0 ? tsig * p1[k] : t * t / sig;
      p1[k] = tmp;
    }
  }

  std::vector<double> a = p0;
  std::vector<double> b(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(p1[i + 1] > 0.0) || !std::isfinite(p1[i + 1])) {
      std::ostringstream os;
      os << "recurrence coefficient b_" << i + 1
         << " lost positivity (measure numerically rank-deficient)";
      fail(errc::ill_conditioned_measure, os.str());
    }
    b[i] = std::sqrt(p1[i + 1]);
  }
  return {std::move(a), std::move(b)};
}

}  // namespace detail

RecoveryResult recover_ip1(const RecoveryProblem& p) {
  const double h1 = require_h1(p);
  if (!p.h2 || !std::isfinite(*p.h2))
    fail(errc::structural, "ip1 needs both boundary constants");
  if (p.extra) fail(errc::structural, "ip1 takes no extra datum");
  const double h2 = *p.h2;
  const double delta = h1 - h2;
  if (delta == 0.0) fail(errc::structural, "ip1 needs h1 != h2");
  const int orientation = delta > 0.0 ? +1 : -1;

  ProblemView view = split_problem(p, true);
  check_known_slots(p.lambda, view, orientation);

  if (view.hidden.empty())
    return finish_recovery(p.lambda, view.nu_known, h1, h2, view, {},
                           errc::inconsistent_data);

  std::vector<double> poles(view.hidden.size());
  for (std::size_t i = 0; i < view.hidden.size(); ++i)
    poles[i] = p.lambda[view.hidden[i]];
  const std::vector<double> coeffs = detail::matching_coefficients(
      p.lambda, view.nu_known, view.hidden, view.weights);

  const std::vector<double> roots =
      oriented_zeros(1.0 / delta, poles, coeffs, orientation,
                     herglotz::kDefaultRootTol);
  return finish_recovery(p.lambda, merge_nu(view, roots), h1, h2, view, {},
                         errc::inconsistent_data);
}

RecoveryResult recover_ip2(const RecoveryProblem& p) {
  const double h1 = require_h1(p);
  if (p.h2) fail(errc::structural, "ip2 determines h2; do not provide it");
  if (!p.extra || p.extra->kind != RecoveryProblem::ExtraKind::nu)
    fail(errc::structural, "ip2 needs one extra eigenvalue nu_m");

  ProblemView view = split_problem(p, true);
  if (view.hidden.empty()) fail(errc::structural, "ip2 needs a nonempty hidden set");
  const std::size_t m1 = p.extra->index;
  if (m1 < 1 || m1 > p.lambda.size())
    fail(errc::structural, "extra index out of range");
  const std::size_t m = m1 - 1;
  if (!std::binary_search(view.hidden.begin(), view.hidden.end(), m))
    fail(errc::structural, "ip2 extra eigenvalue must carry a hidden index");
  const double nu_m = p.extra->value;
  if (!std::isfinite(nu_m) || nu_m == p.lambda[m])
    fail(errc::inconsistent_data, "extra eigenvalue coincides with lambda");

  const int orientation = nu_m > p.lambda[m] ? +1 : -1;
  check_known_slots(p.lambda, view, orientation);

  std::vector<double> poles(view.hidden.size());
  for (std::size_t i = 0; i < view.hidden.size(); ++i)
    poles[i] = p.lambda[view.hidden[i]];
  const std::vector<double> coeffs = detail::matching_coefficients(
      p.lambda, view.nu_known, view.hidden, view.weights);

  const double constant = herglotz::constant_from_zero(poles, coeffs, nu_m);
  if (!std::isfinite(constant) || sign_of(constant) != orientation)
    fail(errc::inconsistent_data,
         "recovered constant sign is inconsistent with the data orientation");
  const double delta = 1.0 / constant;
  const double h2 = h1 - delta;

  std::vector<double> roots = oriented_zeros(constant, poles, coeffs,
                                             orientation,
                                             herglotz::kDefaultRootTol);
  double known_zero_residual = 0.0;
  for (std::size_t i = 0; i < view.hidden.size(); ++i)
    if (view.hidden[i] == m) {
      known_zero_residual = std::abs(roots[i] - nu_m);
      roots[i] = nu_m;  // the given datum is authoritative
    }

  std::map<std::string, double> diag{{"known_zero_residual", known_zero_residual}};
  return finish_recovery(p.lambda, merge_nu(view, roots), h1, h2, view,
                         std::move(diag), errc::inconsistent_data);
}

RecoveryResult recover_ip3(const RecoveryProblem& p) {
  const double h1 = require_h1(p);
  if (p.h2) fail(errc::structural, "ip3 determines h2; do not provide it");
  if (!p.extra || p.extra->kind != RecoveryProblem::ExtraKind::weight)
    fail(errc::structural, "ip3 needs one extra weight mu_m");

  ProblemView view = split_problem(p, true);
  const std::size_t m1 = p.extra->index;
  if (m1 < 1 || m1 > p.lambda.size())
    fail(errc::structural, "extra index out of range");
  const std::size_t m = m1 - 1;
  if (std::binary_search(view.hidden.begin(), view.hidden.end(), m))
    fail(errc::structural, "ip3 extra weight index must not be hidden");
  if (!(p.extra->value > 0.0) || !std::isfinite(p.extra->value))
    fail(errc::structural, "extra weight must be positive and finite");
  const double nu_m = view.nu_known[m];

  const int orientation = nu_m > p.lambda[m] ? +1 : -1;
  check_known_slots(p.lambda, view, orientation);

  // enlarge the index set: A' = A + {m}, with mu_m joining the weights
  std::vector<std::size_t> enlarged = view.hidden;
  std::vector<double> enlarged_weights = view.weights;
  const auto pos = std::lower_bound(enlarged.begin(), enlarged.end(), m);
  const std::size_t at = static_cast<std::size_t>(pos - enlarged.begin());
  enlarged.insert(pos, m);
  enlarged_weights.insert(enlarged_weights.begin() + static_cast<std::ptrdiff_t>(at),
                          p.extra->value);

  std::vector<double> poles(enlarged.size());
  for (std::size_t i = 0; i < enlarged.size(); ++i)
    poles[i] = p.lambda[enlarged[i]];
  const std::vector<double> coeffs = detail::matching_coefficients(
      p.lambda, view.nu_known, enlarged, enlarged_weights);

  const double constant = herglotz::constant_from_zero(poles, coeffs, nu_m);
  if (!std::isfinite(constant) || sign_of(constant) != orientation)
    fail(errc::inconsistent_data,
         "recovered constant sign is inconsistent with the data orientation");
  const double delta = 1.0 / constant;
  const double h2 = h1 - delta;

  const std::vector<double> all_roots =
      oriented_zeros(constant, poles, coeffs, orientation,
                     herglotz::kDefaultRootTol);
  double known_zero_residual = 0.0;
  std::vector<double> roots;
  roots.reserve(view.hidden.size());
  for (std::size_t i = 0; i < enlarged.size(); ++i) {
    if (enlarged[i] == m)
      known_zero_residual = std::abs(all_roots[i] - nu_m);
    else
      roots.push_back(all_roots[i]);
  }

  std::map<std::string, double> diag{{"known_zero_residual", known_zero_residual}};
  return finish_recovery(p.lambda, merge_nu(view, roots), h1, h2, view,
                         std::move(diag), errc::inconsistent_data);
}

RecoveryResult recover_nonmatching(const RecoveryProblem& p) {
  const double h1 = require_h1(p);
  ProblemView view = split_problem(p, false);
  const std::size_t n = p.lambda.size();

  // variant dispatch: h2 present, or one extra datum replacing it
  enum class Variant { plain, extra_nu, extra_weight };
  Variant variant;
  if (p.h2) {
    if (p.extra)
      fail(errc::structural, "provide either h2 or an extra datum, not both");
    if (!std::isfinite(*p.h2) || *p.h2 == h1)
      fail(errc::structural, "h2 must be finite and differ from h1");
    variant = Variant::plain;
  } else if (p.extra) {
    variant = p.extra->kind == RecoveryProblem::ExtraKind::nu
                  ? Variant::extra_nu
                  : Variant::extra_weight;
  } else {
    fail(errc::structural, "either h2 or an extra datum is required");
  }

  std::vector<std::size_t> l_set = view.hidden;
  std::vector<std::size_t> k_set = view.weighted;
  std::vector<double> weights = view.weights;

  std::size_t zero_index = n;  // index of the known zero, if any
  double zero_value = kNan;
  if (variant == Variant::extra_nu) {
    const std::size_t m1 = p.extra->index;
    if (m1 < 1 || m1 > n) fail(errc::structural, "extra index out of range");
    const std::size_t m = m1 - 1;
    if (!std::binary_search(l_set.begin(), l_set.end(), m))
      fail(errc::structural, "extra eigenvalue must carry a hidden index");
    if (!std::isfinite(p.extra->value) || p.extra->value == p.lambda[m])
      fail(errc::inconsistent_data, "extra eigenvalue coincides with lambda");
    zero_index = m;
    zero_value = p.extra->value;
  } else if (variant == Variant::extra_weight) {
    const std::size_t m1 = p.extra->index;
    if (m1 < 1 || m1 > n) fail(errc::structural, "extra index out of range");
    const std::size_t m = m1 - 1;
    if (std::binary_search(k_set.begin(), k_set.end(), m) ||
        std::binary_search(l_set.begin(), l_set.end(), m))
      fail(errc::structural,
           "extra weight index must lie outside both index sets");
    if (!(p.extra->value > 0.0) || !std::isfinite(p.extra->value))
      fail(errc::structural, "extra weight must be positive and finite");
    // enlarge both sets by the pair (m, m); nu_m is known and becomes the zero
    const auto lpos = std::lower_bound(l_set.begin(), l_set.end(), m);
    l_set.insert(lpos, m);
    const auto kpos = std::lower_bound(k_set.begin(), k_set.end(), m);
    const std::size_t at = static_cast<std::size_t>(kpos - k_set.begin());
    k_set.insert(kpos, m);
    weights.insert(weights.begin() + static_cast<std::ptrdiff_t>(at),
                   p.extra->value);
    zero_index = m;
    zero_value = view.nu_known[m];
  }

  if (l_set.empty()) {
    if (variant != Variant::plain)
      fail(errc::structural, "constant recovery needs a nonempty hidden set");
    return finish_recovery(p.lambda, view.nu_known, h1, p.h2, view, {},
                           errc::inconsistent_pairing);
  }

  int orientation;
  if (variant == Variant::plain)
    orientation = h1 > *p.h2 ? +1 : -1;
  else
    orientation = zero_value > p.lambda[zero_index] ? +1 : -1;
  check_known_slots(p.lambda, view, orientation);

  const std::size_t pairs = l_set.size();
  std::vector<char> in_l(n, 0), in_k(n, 0);
  for (std::size_t idx : l_set) in_l[idx] = 1;
  for (std::size_t idx : k_set) in_k[idx] = 1;

  // coefficients B_j = mu_{k_j} / Hbar(lambda_{k_j}) with the known-complement
  // ratio Hbar(x) = prod_{n not in l}(x - nu_n) / prod_{n not in k}(x - lambda_n);
  // unlike the matching case the residue signs may legitimately alternate.
  std::vector<double> poles(pairs), coeffs(pairs);
  for (std::size_t j = 0; j < pairs; ++j) {
    const double x = p.lambda[k_set[j]];
    poles[j] = x;
    SignedLogProduct ratio;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_l[i]) ratio.multiply(x - view.nu_known[i]);
      if (!in_k[i]) ratio.divide(x - p.lambda[i]);
    }
    if (ratio.is_zero())
      fail(errc::inconsistent_pairing, "complement product vanishes at a pole");
    coeffs[j] = weights[j] / ratio.value();
    if (!std::isfinite(coeffs[j]) || coeffs[j] == 0.0)
      fail(errc::inconsistent_pairing, "coefficient evaluation degenerate");
  }

  double delta;
  double constant;
  if (variant == Variant::plain) {
    delta = h1 - *p.h2;
    constant = 1.0 / delta;
  } else {
    constant = herglotz::constant_from_zero(poles, coeffs, zero_value);
    if (!std::isfinite(constant) || sign_of(constant) != orientation)
      fail(errc::inconsistent_pairing,
           "recovered constant sign is inconsistent with the data orientation");
    delta = 1.0 / constant;
  }
  const double h2 = h1 - delta;

  // each hidden nu_{l_j} is certified to live in its global interlacing slot
  const herglotz::PartialFractionForm g{constant, poles, coeffs};
  const double span = std::abs(delta) * (1.0 + 1e-9) +
                      1e-12 * std::max(1.0, std::abs(p.lambda.front()) +
                                                std::abs(p.lambda.back()));
  std::vector<double> roots(pairs);
  for (std::size_t j = 0; j < pairs; ++j) {
    const std::size_t l = l_set[j];
    double lo, hi;
    if (orientation > 0) {
      lo = p.lambda[l];
      hi = l + 1 < n ? p.lambda[l + 1] : p.lambda[l] + span;
    } else {
      hi = p.lambda[l];
      lo = l > 0 ? p.lambda[l - 1] : p.lambda[l] - span;
    }
    int sign_lo = herglotz::detail::sign_at(g, lo, true);
    int sign_hi = herglotz::detail::sign_at(g, hi, false);
    for (int nudge = 0; nudge < 8 && sign_lo == 0; ++nudge) {
      lo -= 1e-9 * std::max(1.0, std::abs(lo));
      sign_lo = herglotz::detail::sign_at(g, lo, true);
    }
    for (int nudge = 0; nudge < 8 && sign_hi == 0; ++nudge) {
      hi += 1e-9 * std::max(1.0, std::abs(hi));
      sign_hi = herglotz::detail::sign_at(g, hi, false);
    }
    if (sign_lo == sign_hi || sign_lo == 0 || sign_hi == 0) {
      std::ostringstream os;
      os << "interlacing bracket for nu_" << l + 1 << " lacks a sign change";
      fail(errc::inconsistent_pairing, os.str());
    }
    roots[j] = herglotz::detail::find_bracketed_zero(
        g, lo, hi, sign_lo, sign_hi, herglotz::kDefaultRootTol);
  }

  std::map<std::string, double> diag;
  if (variant != Variant::plain) {
    for (std::size_t j = 0; j < pairs; ++j)
      if (l_set[j] == zero_index) {
        diag["known_zero_residual"] = std::abs(roots[j] - zero_value);
        roots[j] = zero_value;
      }
  }

  std::vector<double> nu_full = view.nu_known;
  for (std::size_t j = 0; j < pairs; ++j) nu_full[l_set[j]] = roots[j];

  std::optional<double> echo = p.h2;
  return finish_recovery(p.lambda, std::move(nu_full), h1,
                         variant == Variant::plain ? echo
                                                   : std::optional<double>(h2),
                         view, std::move(diag), errc::inconsistent_pairing);
}

}  // namespace jacobi::inverse
