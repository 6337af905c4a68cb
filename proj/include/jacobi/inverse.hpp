#pragma once

#include "jacobi/core.hpp"
#include "jacobi/herglotz.hpp"

namespace jacobi::inverse {

struct RecoveryResult {
  std::vector<double> nu_full;
  double h2 = 0.0;  // echoed when given, recovered otherwise
  std::vector<double> weights_h1;
  JacobiMatrix matrix;
  std::map<std::string, double> diagnostics;
};

// mu_k(h1) = -Res(F, lambda_k) / (h1 - h2) from the two spectra alone.
std::vector<double> weights_from_two_spectra(const std::vector<double>& lambda,
                                             const std::vector<double>& nu,
                                             double h1, double h2);

// Constructive two-spectra reconstruction: h2 = h1 - sum(nu - lambda), the
// weights from the residues, and the matrix from the discrete measure by a
// Stieltjes / recurrence orthogonalization with full reorthogonalization;
// a_1 is then shifted by h1 to undo the boundary perturbation.
std::pair<JacobiMatrix, double> reconstruct_from_two_spectra(
    const std::vector<double>& lambda, const std::vector<double>& nu,
    double h1);

// Full-data wrapper around the reconstruction (CLI mode `twospectra`):
// requires h1 and a complete known_nu list, no hidden indices.
RecoveryResult recover_two_spectra(const RecoveryProblem& p);

// Matching index sets, both boundary constants known.
RecoveryResult recover_ip1(const RecoveryProblem& p);

// Matching index sets, h2 unknown, one extra eigenvalue nu_m with m hidden.
RecoveryResult recover_ip2(const RecoveryProblem& p);

// Matching index sets, h2 unknown, one extra weight mu_m with m not hidden;
// the index set is enlarged to A' = A + {m} and nu_m serves as known zero.
RecoveryResult recover_ip3(const RecoveryProblem& p);

// General pairing: weights known at {k_n}, nu hidden at {l_n} (both sorted,
// paired in order). With h2 present this is the plain non-matching problem;
// an extra eigenvalue or extra weight replaces h2 as in the matching case.
// Roots are located inside certified global-interlacing brackets, so mixed
// residue signs from genuinely non-matching pairings are handled.
RecoveryResult recover_nonmatching(const RecoveryProblem& p);

namespace detail {

// Coefficients of the reduced partial fraction at the poles lambda_k, k in A:
// mu_k / H(lambda_k) with H the complement product over known nu's. By
// construction these do not involve either boundary constant, which is what
// makes the constant-recovery variants work.
std::vector<double> matching_coefficients(
    const std::vector<double>& lambda, const std::vector<double>& nu_known,
    const std::vector<std::size_t>& index_set,  // 0-based, sorted
    const std::vector<double>& weights);        // aligned with index_set

// Jacobi coefficients of the discrete measure sum_i masses_i * delta_nodes_i
// by the Stieltjes procedure with full reorthogonalization. This is the
// kernel the reconstruction pipelines use.
std::pair<std::vector<double>, std::vector<double>> stieltjes_coefficients(
    const std::vector<double>& nodes, const std::vector<double>& masses);

// Same map computed by the rotation-based Gragg-Harrod reduction; kept as an
// algebraically independent route for cross-checking the Stieltjes kernel.
std::pair<std::vector<double>, std::vector<double>> jacobi_from_measure(
    const std::vector<double>& nodes, const std::vector<double>& masses);

}  // namespace detail

}  // namespace jacobi::inverse
