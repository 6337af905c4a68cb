#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "jacobi/core.hpp"
#include "jacobi/herglotz.hpp"
#include "jacobi/tridiag.hpp"

namespace jacobi::forward {

// h = cot(beta) for beta in (0, pi).
double boundary_from_angle(double beta);

// Weyl m-function of the datum: m_h(z) = sum_k mu_k / (lambda_k - z), so
// Res(m_h, lambda_k) = -mu_k.
double m_function(const SpectralDatum& d, double z);
std::complex<double> m_function(const SpectralDatum& d, std::complex<double> z);

// Rank-one shift identity: the value of m_{h2} from the value of m_{h1} at
// the same point, m_{h2} = m_{h1} / (1 - (h2 - h1) m_{h1}). A vanishing
// denominator signals that the point lies in the spectrum of J_{h2}.
double m_shift(double m_h1, double h1, double h2);
std::complex<double> m_shift(std::complex<double> m_h1, double h1, double h2);

// F(z) = prod (z - nu_n)/(z - lambda_n) with unit scale; equals
// m_{h1}/m_{h2} pointwise and tends to 1 at infinity.
herglotz::ProductForm build_F(const TwoSpectra& ts);

// Verifies Res(F, lambda_k) = -(h1 - h2) mu_k(h1) for every k.
struct ResidueWeightReport {
  std::vector<double> deviations;  // |Res(F, lambda_k) + (h1-h2) mu_k|
  double max_abs = 0.0;
  double max_rel_delta = 0.0;  // max_abs / |h1 - h2|
};
ResidueWeightReport residue_weight_check(const TwoSpectra& ts,
                                         const std::vector<double>& weights_h1);

// Compares m_h(iR) against -1/z - (a_1-h)/z^2 - ((a_1-h)^2 + b_1^2)/z^3 and
// fits the log-log slope of the residual, which must fall off like R^{-4}.
struct AsymptoticsReport {
  std::vector<double> radii;
  std::vector<double> residuals;
  double slope = 0.0;
  bool pass = false;  // slope <= -3.9, or the residual vanishes identically
};
AsymptoticsReport asymptotic_check(const JacobiMatrix& m, double h,
                                   const std::vector<double>& radii,
                                   double tol = tridiag::kDefaultEigenTol);

// Deterministic generator. Uniform doubles come from the top 53 bits of
// mt19937_64 output, so results are identical across platforms; the scheme
// is identified in CLI metadata as kRngAlgorithm.
inline constexpr const char* kRngAlgorithm = "mt19937_64-u53";

class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t index(std::size_t n) {
    return std::min<std::size_t>(n - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(n)));
  }

private:
  std::mt19937_64 engine_;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratedInstance {
  JacobiMatrix matrix;
  TwoSpectra two_spectra;
  SpectralDatum datum_h1;
  SpectralDatum datum_h2;
};

// Deterministic per seed: diagonal entries are drawn first, then the
// off-diagonal ones. Fails loudly on a degenerate spectrum; reseeding is the
// caller's job.
GeneratedInstance generate_instance(std::uint64_t seed, std::size_t n,
                                    Range diag_range, Range offdiag_range,
                                    double h1, double h2,
                                    double tol = tridiag::kDefaultEigenTol);

}  // namespace jacobi::forward
