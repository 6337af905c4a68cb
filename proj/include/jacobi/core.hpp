#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacobi {

enum class errc {
  structural,
  degenerate_spectrum,
  pole_evaluation,
  not_herglotz,
  normalization,
  inconsistent_data,
  inconsistent_pairing,
  ill_conditioned_measure,
};

const char* to_string(errc code);

// All domain failures funnel through this type; code() tells callers (and
// the CLI exit-code mapping) which contract was violated.
class SpectralError : public std::runtime_error {
public:
  SpectralError(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& what);

// Symmetric tridiagonal matrix: diagonal a_1..a_N, off-diagonal b_1..b_{N-1}
// with every b_n strictly positive.
struct JacobiMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::size_t size() const { return diag.size(); }
};

// Boundary constant h, optionally tied to an angle beta in (0,pi) through
// h = cot(beta).
struct BoundaryConstant {
  double h = 0.0;
  std::optional<double> beta;
};

// One boundary constant together with the sorted spectrum and the spectral
// weights (norming constants) of J_h. Weights are the point masses of the
// spectral measure at e_1, so they are positive and sum to 1.
struct SpectralDatum {
  double h = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> weights;
};

// A pair of boundary constants with the two interlacing spectra:
// lambda = spectrum of J_{h1}, nu = spectrum of J_{h2}.
struct TwoSpectra {
  double h1 = 0.0;
  double h2 = 0.0;
  std::vector<double> lambda;
  std::vector<double> nu;
};

// Mixed-data recovery input. `hidden` lists the 1-based indices of unknown
// nu's. Weights are known either on the same indices (matching problems) or
// on an index set of equal size (non-matching problems, paired in sorted
// order). The optional extra datum replaces a missing boundary constant.
struct RecoveryProblem {
  std::vector<double> lambda;
  std::vector<std::size_t> hidden;
  std::map<std::size_t, double> known_nu;
  std::map<std::size_t, double> known_weights;
  std::optional<double> h1;
  std::optional<double> h2;

  enum class ExtraKind { nu, weight };
  struct Extra {
    ExtraKind kind = ExtraKind::nu;
    std::size_t index = 0;
    double value = 0.0;
  };
  std::optional<Extra> extra;
};

// Relative eigenvalue-gap floor below which spectra are rejected as
// degenerate instead of silently processed.
inline constexpr double kDegenerateGapRel = 1e-13;

void validate(const JacobiMatrix& m);
void validate(const BoundaryConstant& b);
void validate(const SpectralDatum& d);
void validate(const TwoSpectra& ts);

struct InterlacingReport {
  bool ok = true;
  std::size_t first_violation = 0;  // 1-based index of the first bad position
  std::string detail;
  explicit operator bool() const { return ok; }
};

// orientation +1 checks lambda_n < nu_n < lambda_{n+1}, orientation -1 the
// mirror image nu_n < lambda_n < nu_{n+1}. Lists must be sorted and of equal
// length.
InterlacingReport validate_interlacing(const std::vector<double>& lambda,
                                       const std::vector<double>& nu,
                                       int orientation);

// Compensated sum of nu_n - lambda_n. For data generated from a matrix this
// equals h1 - h2 (the trace of the rank-one perturbation).
double compute_delta(const std::vector<double>& lambda,
                     const std::vector<double>& nu);

// Smallest gap in the merged, sorted union of the two spectra; the argument
// of the degeneracy floor.
double min_merged_gap(const std::vector<double>& lambda,
                      const std::vector<double>& nu);

// tau_k^{-1} of the two-spectra characterization,
//   tau_k^{-1} = ((nu_k - lambda_k)/Delta) prod_{n != k} (nu_n - lambda_k)/(lambda_n - lambda_k),
// evaluated in log-magnitude + sign form. Equals the spectral weight mu_k of
// J_{h1} at lambda_k.
std::vector<double> compute_tau_inverse(const std::vector<double>& lambda,
                                        const std::vector<double>& nu);

// The two checkable conditions of the two-spectra characterization at finite
// size: interlacing with the boundary-side inequalities, and the Delta /
// tau_k structure. Used by the CLI `check` command.
struct C2SConditions {
  bool interlacing = false;
  bool boundary_inequality = false;
  bool delta_matches = false;
  bool tau_positive = false;
  double delta = 0.0;
  std::string detail;
  bool all() const {
    return interlacing && boundary_inequality && delta_matches && tau_positive;
  }
};

C2SConditions two_spectra_conditions(const TwoSpectra& ts);

}  // namespace jacobi
