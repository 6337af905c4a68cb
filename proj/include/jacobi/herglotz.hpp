#pragma once

#include <complex>

#include "jacobi/core.hpp"

namespace jacobi::herglotz {

// C * prod_j (z - zero_j) / (z - pole_j). Zero and pole lists are sorted and
// disjoint; degree-balanced instances (equal counts) tend to 'scale' at
// infinity.
struct ProductForm {
  double scale = 1.0;
  std::vector<double> zeros;
  std::vector<double> poles;
};

// constant + sum_j coeff_j / (pole_j - z). With this orientation the residue
// at pole_j is -coeff_j.
struct PartialFractionForm {
  double constant = 0.0;
  std::vector<double> poles;
  std::vector<double> coefficients;
};

void validate(const ProductForm& f);
void validate(const PartialFractionForm& f);

// Real z uses log-magnitude + sign accumulation; complex z multiplies
// zero/pole factor ratios in pairwise-balanced order.
double eval_product(const ProductForm& f, double z);
std::complex<double> eval_product(const ProductForm& f, std::complex<double> z);

double eval_partial_fraction(const PartialFractionForm& f, double z);
std::complex<double> eval_partial_fraction(const PartialFractionForm& f,
                                           std::complex<double> z);

// Residue of f at each pole:
//   Res(f, pole_k) = C (pole_k - zero_k) prod_{n != k} (pole_k - zero_n)/(pole_k - pole_n)
// for equal counts; general counts use the full factor lists. For interlaced
// data all residues share one sign.
std::vector<double> product_residues(const ProductForm& f);

// Degree-balanced conversion: constant = scale (the z -> infinity limit),
// coefficient_j = -Res(f, pole_j). Agrees pointwise with the product form.
PartialFractionForm product_to_partial_fraction(const ProductForm& f);

inline constexpr double kDefaultRootTol = 1e-12;

// Zeros of a single-sign partial fraction: exactly one in each open interval
// between consecutive poles plus one beyond the last pole, found by certified
// bisection refined with safeguarded Newton. Requires sign(constant) equal to
// the common coefficient sign (both-negative inputs are negated internally).
// The serial loop is the reference the OpenMP version is tested against.
std::vector<double> zeros_of_partial_fraction(const PartialFractionForm& f,
                                              double tol = kDefaultRootTol);
std::vector<double> zeros_of_partial_fraction_serial(
    const PartialFractionForm& f, double tol = kDefaultRootTol);

// The unique constant c making known_zero a root of
// c + sum_j coeff_j / (pole_j - z).
double constant_from_zero(const std::vector<double>& poles,
                          const std::vector<double>& coefficients,
                          double known_zero);

// Finite-size stand-ins for the growth hypotheses of the paired-product
// representation: the smallest paired zero/pole gap, and how far the partial
// product residues at truncation m drift from the full ones.
struct PairingDiagnostics {
  double min_paired_gap = 0.0;
  std::vector<double> residue_drift;  // indexed by truncation m = 1..p
};
PairingDiagnostics pairing_diagnostics(const std::vector<double>& zeros,
                                       const std::vector<double>& poles);

namespace detail {
// Sign of f at x: limit sign when x is a pole approached from the given
// side, plain evaluation sign otherwise.
int sign_at(const PartialFractionForm& f, double x, bool from_right);

// Root in (lo, hi) given certified endpoint signs: bisection to a short
// bracket, then Newton steps that fall back to bisection whenever they leave
// the bracket.
double find_bracketed_zero(const PartialFractionForm& f, double lo, double hi,
                           int sign_lo, int sign_hi, double tol);
}  // namespace detail

}  // namespace jacobi::herglotz
