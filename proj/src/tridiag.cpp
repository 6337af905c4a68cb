#include "jacobi/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi/numerics.hpp"

namespace jacobi::tridiag {

namespace {

constexpr double kRescaleHi = 1e150;
constexpr double kRescaleLo = 1e-150;

inline int next_sign(double p, int prev) {
  if (p > 0.0) return +1;
  if (p < 0.0) return -1;
  return -prev;  // a zero minor counts as a sign change
}

// Trailing monic minors of (zI - J): q_{N+1} = 1, q_N = z - a_N,
// q_k = (z - a_k) q_{k+1} - b_k^2 q_{k+2}. All four running values (and the
// saved q_2) are rescaled by a common factor when they grow or shrink past
// the guard thresholds, so ratios of the outputs are exact.
struct TrailingMinors {
  double q1 = 0.0;   // det(zI - J), up to the common scale
  double dq1 = 0.0;  // its derivative, same scale
  double q2 = 0.0;   // first-row/column-deleted minor, same scale
};

TrailingMinors trailing_minors(const JacobiMatrix& m, double z) {
  const std::size_t n = m.size();
  const auto& a = m.diag;
  const auto& b = m.offdiag;

  double q_prev = 1.0;          // q_{k+2}
  double q_curr = z - a[n - 1];  // q_{k+1}, starts as q_N
  double dq_prev = 0.0;
  double dq_curr = 1.0;
  double q2 = q_prev;  // correct for n == 1
  if (n == 2) q2 = q_curr;

  for (std::size_t k = n - 1; k >= 1; --k) {
    const double bk2 = b[k - 1] * b[k - 1];
    const double zk = z - a[k - 1];
    const double q_new = zk * q_curr - bk2 * q_prev;
    const double dq_new = q_curr + zk * dq_curr - bk2 * dq_prev;
    q_prev = q_curr;
    q_curr = q_new;
    dq_prev = dq_curr;
    dq_curr = dq_new;

    const double mag = std::max(std::max(std::abs(q_prev), std::abs(q_curr)),
                                std::max(std::abs(dq_prev), std::abs(dq_curr)));
    if (mag > kRescaleHi || (mag > 0.0 && mag < kRescaleLo)) {
      const double s = 1.0 / mag;
      q_prev *= s;
      q_curr *= s;
      dq_prev *= s;
      dq_curr *= s;
      q2 *= s;
    }
    if (k == 2) q2 = q_curr;
  }
  return {q_curr, dq_curr, q2};
}

// One eigenvalue by count-certified bisection plus a short bracket-safe
// Newton polish on the characteristic polynomial.
double solve_kth(const JacobiMatrix& m, std::size_t k, Bounds g, double tol) {
  double lo = g.lo;
  double hi = g.hi;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // bracket at ulp resolution
    if (hi - lo <= tol * std::max(1.0, std::abs(mid))) break;
    if (eigenvalues_below(m, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const TrailingMinors v = trailing_minors(m, x);
    if (v.dq1 == 0.0 || !std::isfinite(v.q1) || !std::isfinite(v.dq1)) break;
    const double step = v.q1 / v.dq1;
    const double xn = x - step;
    if (!(xn >= lo && xn <= hi) || xn == x) break;
    x = xn;
    if (std::abs(step) <=
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
      break;
  }
  return x;
}

std::vector<double> solve_all(const JacobiMatrix& m, double tol, bool parallel) {
  validate(m);
  if (!(tol > 0.0)) fail(errc::structural, "eigenvalue tolerance must be positive");
  const std::size_t n = m.size();
  const Bounds g = spectral_bounds(m);
  std::vector<double> out(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k)
      out[static_cast<std::size_t>(k)] =
          solve_kth(m, static_cast<std::size_t>(k), g, tol);
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = solve_kth(m, k, g, tol);
  }
  return out;
}

}  // namespace

SturmEvaluation sturm_evaluate(const JacobiMatrix& m, double z) {
  validate(m);
  const std::size_t n = m.size();
  SturmEvaluation ev;
  ev.z = z;
  ev.values.reserve(n + 1);

  // leading minors of (J - z): p_0 = 1, p_k = (a_k - z) p_{k-1} - b_{k-1}^2 p_{k-2}
  double p_prev = 1.0;
  double p_curr = m.diag[0] - z;
  ev.values.push_back(p_prev);
  ev.values.push_back(p_curr);
  int prev_sign = +1;
  int sign = next_sign(p_curr, prev_sign);
  std::size_t changes = sign != prev_sign ? 1 : 0;
  prev_sign = sign;

  for (std::size_t k = 2; k <= n; ++k) {
    const double bk2 = m.offdiag[k - 2] * m.offdiag[k - 2];
    const double p_new = (m.diag[k - 1] - z) * p_curr - bk2 * p_prev;
    p_prev = p_curr;
    p_curr = p_new;
    const double mag = std::max(std::abs(p_prev), std::abs(p_curr));
    if (mag > kRescaleHi || (mag > 0.0 && mag < kRescaleLo)) {
      const double s = 1.0 / mag;
      p_prev *= s;
      p_curr *= s;
    }
    ev.values.push_back(p_curr);
    sign = next_sign(p_curr, prev_sign);
    if (sign != prev_sign) ++changes;
    prev_sign = sign;
  }
  ev.sign_changes = changes;
  return ev;
}

std::size_t eigenvalues_below(const JacobiMatrix& m, double z) {
  const std::size_t n = m.size();
  double p_prev = 1.0;
  double p_curr = m.diag[0] - z;
  int prev_sign = +1;
  int sign = next_sign(p_curr, prev_sign);
  std::size_t changes = sign != prev_sign ? 1 : 0;
  prev_sign = sign;
  for (std::size_t k = 2; k <= n; ++k) {
    const double bk2 = m.offdiag[k - 2] * m.offdiag[k - 2];
    const double p_new = (m.diag[k - 1] - z) * p_curr - bk2 * p_prev;
    p_prev = p_curr;
    p_curr = p_new;
    const double mag = std::max(std::abs(p_prev), std::abs(p_curr));
    if (mag > kRescaleHi || (mag > 0.0 && mag < kRescaleLo)) {
      const double s = 1.0 / mag;
      p_prev *= s;
      p_curr *= s;
    }
    sign = next_sign(p_curr, prev_sign);
    if (sign != prev_sign) ++changes;
    prev_sign = sign;
  }
  return changes;
}

Bounds spectral_bounds(const JacobiMatrix& m) {
  const std::size_t n = m.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += m.offdiag[i - 1];
    if (i + 1 < n) r += m.offdiag[i];
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  const double pad = 16.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return {lo - pad, hi + pad};
}

JacobiMatrix apply_boundary(JacobiMatrix m, double h) {
  validate(m);
  if (!std::isfinite(h)) fail(errc::structural, "boundary constant must be finite");
  m.diag[0] -= h;
  return m;
}

std::vector<double> eigenvalues_serial(const JacobiMatrix& m, double tol) {
  return solve_all(m, tol, false);
}

std::vector<double> eigenvalues(const JacobiMatrix& m, double tol) {
  return solve_all(m, tol, true);
}

namespace {

// One half-solution of the eigenvector recurrence: log-magnitude profile and
// the scale-free ratio (prefix sum of squares) / (current component squared),
// indexed by site. `forward` starts from u(1) = 1, otherwise from u(N) = 1.
struct HalfSolution {
  std::vector<double> log_mag;
  std::vector<double> sum_ratio;
};

HalfSolution half_solution(const JacobiMatrix& m, double z, bool forward) {
  const std::size_t n = m.size();
  const auto& a = m.diag;
  const auto& b = m.offdiag;
  HalfSolution out;
  out.log_mag.assign(n, 0.0);
  out.sum_ratio.assign(n, 1.0);

  double u_prev = 0.0;
  double u_curr = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  const auto record = [&](std::size_t site) {
    out.log_mag[site] = u_curr == 0.0
                            ? -std::numeric_limits<double>::infinity()
                            : std::log(std::abs(u_curr)) + log_scale;
    out.sum_ratio[site] = sum / (u_curr * u_curr);
  };

  if (forward) {
    record(0);
    for (std::size_t site = 1; site < n; ++site) {
      // b_site u(site+1) = (z - a_site) u(site) - b_{site-1} u(site-1), 1-based
      const double b_prev = site >= 2 ? b[site - 2] : 0.0;
      const double u_next = ((z - a[site - 1]) * u_curr - b_prev * u_prev) / b[site - 1];
      u_prev = u_curr;
      u_curr = u_next;
      sum += u_curr * u_curr;
      const double mag = std::max(std::abs(u_curr), std::abs(u_prev));
      if (mag > kRescaleHi) {
        const double s = 1.0 / mag;
        u_prev *= s;
        u_curr *= s;
        sum *= s * s;
        log_scale += std::log(mag);
      }
      record(site);
    }
  } else {
    record(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t site = n - 1 - i;  // 0-based site being computed
      const double b_next = site + 2 <= n - 1 ? b[site + 1] : 0.0;
      const double u_next =
          ((z - a[site + 1]) * u_curr - b_next * u_prev) / b[site];
      u_prev = u_curr;
      u_curr = u_next;
      sum += u_curr * u_curr;
      const double mag = std::max(std::abs(u_curr), std::abs(u_prev));
      if (mag > kRescaleHi) {
        const double s = 1.0 / mag;
        u_prev *= s;
        u_curr *= s;
        sum *= s * s;
        log_scale += std::log(mag);
      }
      record(site);
    }
  }
  return out;
}

}  // namespace

std::vector<double> spectral_weights(const JacobiMatrix& m,
                                     const std::vector<double>& eigenvalues) {
  validate(m);
  if (eigenvalues.size() != m.size())
    fail(errc::structural, "need one eigenvalue per matrix row");
  const std::size_t n = m.size();
  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (n == 1) {
      weights[k] = 1.0;
      continue;
    }
    const double z = eigenvalues[k];
    const HalfSolution fwd = half_solution(m, z, true);
    const HalfSolution bwd = half_solution(m, z, false);

    // join where |u| peaks; both half-solutions are reliable there
    std::size_t c = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double score = fwd.log_mag[i] + bwd.log_mag[i];
      if (score > best) {
        best = score;
        c = i;
      }
    }
    // mu = u(1)^2 / sum u(n)^2 with u normalized so u(c) = 1
    const double sum_at_join = fwd.sum_ratio[c] + bwd.sum_ratio[c] - 1.0;
    const double mu = std::exp(-2.0 * fwd.log_mag[c]) / sum_at_join;
    if (!std::isfinite(mu) || !(mu > 0.0)) {
      std::ostringstream os;
      os << "weight at eigenvalue " << k + 1
         << " did not evaluate to a positive finite value (clustered spectrum?)";
      fail(errc::degenerate_spectrum, os.str());
    }
    weights[k] = mu;
  }
  return weights;
}

namespace detail {
std::vector<double> weights_minor_ratio(const JacobiMatrix& m,
                                        const std::vector<double>& eigenvalues) {
  validate(m);
  if (eigenvalues.size() != m.size())
    fail(errc::structural, "need one eigenvalue per matrix row");
  std::vector<double> weights(eigenvalues.size());
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const TrailingMinors v = trailing_minors(m, eigenvalues[k]);
    const double mu = v.q2 / v.dq1;
    if (!std::isfinite(mu) || !(mu > 0.0)) {
      std::ostringstream os;
      os << "weight at eigenvalue " << k + 1
         << " did not evaluate to a positive finite value (clustered spectrum?)";
      fail(errc::degenerate_spectrum, os.str());
    }
    weights[k] = mu;
  }
  return weights;
}
}  // namespace detail

SpectralDatum spectral_datum(const JacobiMatrix& m, double h, double tol) {
  const JacobiMatrix perturbed = apply_boundary(m, h);
  SpectralDatum d;
  d.h = h;
  d.eigenvalues = eigenvalues(perturbed, tol);
  const double radius =
      std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
  for (std::size_t i = 1; i < d.eigenvalues.size(); ++i)
    if (d.eigenvalues[i] - d.eigenvalues[i - 1] < kDegenerateGapRel * radius)
      fail(errc::degenerate_spectrum, "eigenvalue gap below degeneracy floor");
  d.weights = spectral_weights(perturbed, d.eigenvalues);
  return d;
}

namespace detail {
CharPolyValue char_poly(const JacobiMatrix& m, double z) {
  const TrailingMinors v = trailing_minors(m, z);
  return {v.q1, v.dq1};
}
}  // namespace detail

}  // namespace jacobi::tridiag
