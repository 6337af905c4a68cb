#pragma once

// Test-only oracles, independent of the library's solver paths:
//  - dense eigendecomposition (Eigen) for eigenvalues and weights,
//  - 256-bit evaluation (MPFR) of the minor-ratio weight after refining the
//    eigenvalue by Newton at the same precision, so even exponentially small
//    weights come out relatively accurate.

#include <vector>

#include <Eigen/Dense>
#include <mpfr.h>

#include "jacobi/core.hpp"

namespace oracle {

struct Decomposition {
  std::vector<double> eigenvalues;
  std::vector<double> weights;  // squared first eigenvector components
};

inline Eigen::MatrixXd dense(const jacobi::JacobiMatrix& m, double h) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = m.diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = m.offdiag[static_cast<std::size_t>(i)];
    a(i + 1, i) = m.offdiag[static_cast<std::size_t>(i)];
  }
  a(0, 0) -= h;
  return a;
}

inline Decomposition decompose(const jacobi::JacobiMatrix& m, double h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(m, h));
  const int n = static_cast<int>(m.size());
  Decomposition out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    out.weights[static_cast<std::size_t>(i)] = v0 * v0;
  }
  return out;
}

namespace detail {

// trailing monic minors of (zI - J_h) in MPFR: fills q1 = det, dq1 = det',
// q2 = first-row/column-deleted minor
class MpfrMinors {
public:
  explicit MpfrMinors(mpfr_prec_t prec) {
    mpfr_inits2(prec, q1, dq1, q2, q_prev, q_curr, dq_prev, dq_curr, t1, t2, t3,
                static_cast<mpfr_ptr>(nullptr));
  }
  ~MpfrMinors() {
    mpfr_clears(q1, dq1, q2, q_prev, q_curr, dq_prev, dq_curr, t1, t2, t3,
                static_cast<mpfr_ptr>(nullptr));
  }
  MpfrMinors(const MpfrMinors&) = delete;
  MpfrMinors& operator=(const MpfrMinors&) = delete;

  void evaluate(const std::vector<double>& a, const std::vector<double>& b,
                mpfr_srcptr z) {
    const std::size_t n = a.size();
    mpfr_set_d(q_prev, 1.0, MPFR_RNDN);
    mpfr_sub_d(q_curr, z, a[n - 1], MPFR_RNDN);
    mpfr_set_d(dq_prev, 0.0, MPFR_RNDN);
    mpfr_set_d(dq_curr, 1.0, MPFR_RNDN);
    mpfr_set_d(q2, 1.0, MPFR_RNDN);
    if (n == 2) mpfr_set(q2, q_curr, MPFR_RNDN);
    for (std::size_t k = n - 1; k >= 1; --k) {
      const double bk2 = b[k - 1] * b[k - 1];
      mpfr_sub_d(t3, z, a[k - 1], MPFR_RNDN);  // z - a_k
      // t1 = (z - a_k) q_curr - bk2 q_prev
      mpfr_mul(t1, t3, q_curr, MPFR_RNDN);
      mpfr_mul_d(t2, q_prev, bk2, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      // t2 = q_curr + (z - a_k) dq_curr - bk2 dq_prev
      mpfr_mul(t2, t3, dq_curr, MPFR_RNDN);
      mpfr_add(t2, t2, q_curr, MPFR_RNDN);
      mpfr_mul_d(t3, dq_prev, bk2, MPFR_RNDN);
      mpfr_sub(t2, t2, t3, MPFR_RNDN);
      mpfr_set(q_prev, q_curr, MPFR_RNDN);
      mpfr_set(q_curr, t1, MPFR_RNDN);
      mpfr_set(dq_prev, dq_curr, MPFR_RNDN);
      mpfr_set(dq_curr, t2, MPFR_RNDN);
      if (k == 2) mpfr_set(q2, q_curr, MPFR_RNDN);
    }
    mpfr_set(q1, q_curr, MPFR_RNDN);
    mpfr_set(dq1, dq_curr, MPFR_RNDN);
  }

  mpfr_t q1, dq1, q2;

private:
  mpfr_t q_prev, q_curr, dq_prev, dq_curr, t1, t2, t3;
};

}  // namespace detail

// Weight mu = q2(z*)/q1'(z*) where z* refines the double eigenvalue z by
// Newton iterations at 256 bits.
inline double weight_mpfr(const jacobi::JacobiMatrix& m, double h, double z) {
  const std::size_t n = m.size();
  if (n == 1) return 1.0;
  constexpr mpfr_prec_t prec = 256;
  std::vector<double> a = m.diag;
  a[0] -= h;

  detail::MpfrMinors minors(prec);
  mpfr_t root, step;
  mpfr_inits2(prec, root, step, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(root, z, MPFR_RNDN);
  for (int it = 0; it < 8; ++it) {
    minors.evaluate(a, m.offdiag, root);
    mpfr_div(step, minors.q1, minors.dq1, MPFR_RNDN);
    mpfr_sub(root, root, step, MPFR_RNDN);
  }
  minors.evaluate(a, m.offdiag, root);
  mpfr_div(step, minors.q2, minors.dq1, MPFR_RNDN);
  const double mu = mpfr_get_d(step, MPFR_RNDN);
  mpfr_clears(root, step, static_cast<mpfr_ptr>(nullptr));
  return mu;
}

}  // namespace oracle
