#pragma once

#include "jacobi/core.hpp"

namespace jacobi::tridiag {

// Leading-principal-minor sequence p_0(z)..p_N(z) of (J - z), rescaled along
// the way so the recurrence cannot overflow. The number of sign changes in
// the sequence equals the number of eigenvalues strictly below z.
struct SturmEvaluation {
  double z = 0.0;
  std::vector<double> values;
  std::size_t sign_changes = 0;
};

SturmEvaluation sturm_evaluate(const JacobiMatrix& m, double z);

// Count-only variant used by the bisection inner loop.
std::size_t eigenvalues_below(const JacobiMatrix& m, double z);

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

// Gershgorin interval widened by a few ulps so that the Sturm count is 0 at
// lo and N at hi even when an eigenvalue sits exactly on the bound (N = 1).
Bounds spectral_bounds(const JacobiMatrix& m);

// J_h = J - h <.,e_1> e_1: subtract h from the (1,1) entry.
JacobiMatrix apply_boundary(JacobiMatrix m, double h);

inline constexpr double kDefaultEigenTol = 1e-13;

// All N eigenvalues, each bracketed by bisection on the Sturm count until the
// bracket width is at most tol*max(1,|lambda|), then polished by a few
// bracket-safe Newton steps on the characteristic polynomial. Output strictly
// increasing. The serial loop is the reference the OpenMP version is tested
// against (bitwise identical).
std::vector<double> eigenvalues_serial(const JacobiMatrix& m,
                                       double tol = kDefaultEigenTol);
std::vector<double> eigenvalues(const JacobiMatrix& m,
                                double tol = kDefaultEigenTol);

// Spectral weights mu_k, the squared first components of the unit
// eigenvectors, computed through the norming-constant sum
// mu_k = (sum_n |u(n)|^2)^{-1} with u the recurrence solution normalized by
// u(1) = 1. The two half-solutions are run from both ends and joined at the
// largest component, which keeps relative accuracy even for weights many
// orders of magnitude below 1 (localized eigenvectors).
std::vector<double> spectral_weights(const JacobiMatrix& m,
                                     const std::vector<double>& eigenvalues);

// apply_boundary + eigenvalues + spectral_weights packaged with h.
SpectralDatum spectral_datum(const JacobiMatrix& m, double h,
                             double tol = kDefaultEigenTol);

namespace detail {
// Monic characteristic polynomial det(zI - J) and its derivative, evaluated
// by the trailing-minor recurrence with joint rescaling; the returned pair is
// a common multiple of (p_N, p_N') so the ratio is scale-free.
struct CharPolyValue {
  double p = 0.0;
  double dp = 0.0;
};
CharPolyValue char_poly(const JacobiMatrix& m, double z);

// Weights through the minor-determinant ratio p_{N-1}(lambda)/p_N'(lambda).
// Reference route kept for testing; it only carries absolute accuracy, so
// weights far below 1 come out relatively wrong (or nonpositive, which is
// reported as degenerate).
std::vector<double> weights_minor_ratio(const JacobiMatrix& m,
                                        const std::vector<double>& eigenvalues);
}  // namespace detail

}  // namespace jacobi::tridiag
