// Acceptance suite: ten criteria, one PASS/FAIL line each, exit code equal
// to the number of failures. Instances come from the seeded generator;
// seeds whose spectra fail validation (degenerate at double precision) are
// skipped and counted, per the generator's reseed contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jacobi/forward.hpp"
#include "jacobi/harness.hpp"
#include "jacobi/herglotz.hpp"
#include "jacobi/inverse.hpp"

using namespace jacobi;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kPhiConj = (1.0 - std::sqrt(5.0)) / 2.0;

int failures = 0;

void verdict(int id, bool pass, const std::string& text) {
  std::printf("criterion %2d [%s] %s\n", id, pass ? "PASS" : "FAIL",
              text.c_str());
  if (!pass) ++failures;
}

struct Admitted {
  std::uint64_t seed;
  std::size_t n;
  forward::GeneratedInstance instance;
};

// sequential-seed admission: sizes cycle 8,16,32; degenerate draws skipped
std::vector<Admitted> admit_suite(std::size_t count, std::size_t& skipped) {
  const std::size_t sizes[3] = {8, 16, 32};
  std::vector<Admitted> out;
  out.reserve(count);
  std::uint64_t seed = 0;
  skipped = 0;
  while (out.size() < count && seed < 1000000) {
    ++seed;
    const std::size_t n = sizes[out.size() % 3];
    try {
      Admitted a{seed, n,
                 forward::generate_instance(seed, n, {-2, 2}, {0.5, 2}, 0.7,
                                            -0.4)};
      out.push_back(std::move(a));
    } catch (const SpectralError&) {
      ++skipped;
    }
  }
  return out;
}

double matrix_distance(const JacobiMatrix& a, const JacobiMatrix& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max(err, std::abs(a.diag[i] - b.diag[i]));
    if (i + 1 < a.size())
      err = std::max(err, std::abs(a.offdiag[i] - b.offdiag[i]));
  }
  return err;
}

char buffer[512];

}  // namespace

int main() {
  std::size_t skipped = 0;
  const std::vector<Admitted> suite = admit_suite(100, skipped);
  std::printf("suite: %zu instances admitted, %zu degenerate seeds skipped "
              "(a in [-2,2], b in [0.5,2], h1=0.7, h2=-0.4)\n",
              suite.size(), skipped);

  // 1. ip1 roundtrip: hidden fraction 25%, nu within 1e-8 relative, matrix
  //    entrywise within 1e-8, total runtime under 10 seconds
  {
    double nu_by_n[3] = {0, 0, 0}, mat_by_n[3] = {0, 0, 0};
    std::size_t exceptions = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const Admitted& a : suite) {
      forward::SeededRng rng(a.seed ^ harness::kSubsetSeedSalt);
      const RecoveryProblem p =
          harness::make_problem(a.instance, harness::Mode::ip1, a.n / 4, rng);
      const std::size_t bin = a.n == 8 ? 0 : (a.n == 16 ? 1 : 2);
      try {
        const inverse::RecoveryResult r = harness::dispatch(p, harness::Mode::ip1);
        for (std::size_t idx : p.hidden) {
          const double t = a.instance.two_spectra.nu[idx - 1];
          nu_by_n[bin] = std::max(nu_by_n[bin],
                                  std::abs(r.nu_full[idx - 1] - t) / std::abs(t));
        }
        mat_by_n[bin] =
            std::max(mat_by_n[bin], matrix_distance(r.matrix, a.instance.matrix));
      } catch (const SpectralError&) {
        ++exceptions;
        nu_by_n[bin] = std::max(nu_by_n[bin], 1.0);
      }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const double nu_max = std::max({nu_by_n[0], nu_by_n[1], nu_by_n[2]});
    const double mat_max = std::max({mat_by_n[0], mat_by_n[1], mat_by_n[2]});
    const bool pass =
        nu_max <= 1e-8 && mat_max <= 1e-8 && elapsed < 10.0 && exceptions == 0;
    std::snprintf(buffer, sizeof(buffer),
                  "ip1 roundtrip, 100 instances: max nu rel %.2e, max matrix "
                  "%.2e (gates 1e-08), runtime %.2fs, exceptions %zu",
                  nu_max, mat_max, elapsed, exceptions);
    verdict(1, pass, buffer);
    std::printf("              by size: N=8 nu %.1e mat %.1e | N=16 nu %.1e "
                "mat %.1e | N=32 nu %.1e mat %.1e\n",
                nu_by_n[0], mat_by_n[0], nu_by_n[1], mat_by_n[1], nu_by_n[2],
                mat_by_n[2]);
    if (!pass)
      std::printf("              note: two-spectra doubles cannot encode the "
                  "smallest weights at N >= 16; see README, Numerical "
                  "accuracy\n");
  }

  // 2. golden-ratio worked instance
  {
    RecoveryProblem p;
    p.lambda = {-1.0, 1.0};
    p.hidden = {2};
    p.known_nu[1] = kPhiConj;
    p.known_weights[2] = 0.5;
    p.h1 = 0.0;
    p.h2 = -1.0;
    bool pass = false;
    double nu_err = 1.0, mat_err = 1.0;
    try {
      const inverse::RecoveryResult r = inverse::recover_ip1(p);
      nu_err = std::abs(r.nu_full[1] - 1.6180339887);
      mat_err = std::max(std::max(std::abs(r.matrix.diag[0]),
                                  std::abs(r.matrix.diag[1])),
                         std::abs(r.matrix.offdiag[0] - 1.0));
      pass = nu_err <= 1e-10 && mat_err <= 1e-10;
    } catch (const SpectralError&) {
    }
    std::snprintf(buffer, sizeof(buffer),
                  "golden instance: |nu_2 - 1.6180339887| = %.2e, matrix error "
                  "%.2e (gate 1e-10)",
                  nu_err, mat_err);
    verdict(2, pass, buffer);
  }

  // 3. Delta identity on every generated instance
  {
    double worst = 0.0;
    for (const Admitted& a : suite) {
      const double delta =
          compute_delta(a.instance.two_spectra.lambda, a.instance.two_spectra.nu);
      worst = std::max(worst, std::abs(delta - 1.1) / static_cast<double>(a.n));
    }
    std::snprintf(buffer, sizeof(buffer),
                  "delta identity: max |sum(nu-lambda) - (h1-h2)|/N = %.2e "
                  "(gate 1e-10)",
                  worst);
    verdict(3, worst <= 1e-10, buffer);
  }

  // 4. residue / norming-constant relation
  {
    double worst = 0.0;
    for (const Admitted& a : suite) {
      const auto report = forward::residue_weight_check(
          a.instance.two_spectra, a.instance.datum_h1.weights);
      worst = std::max(worst, report.max_rel_delta);
    }
    std::snprintf(buffer, sizeof(buffer),
                  "residue relation: max |Res(F) + (h1-h2) mu| / (h1-h2) = "
                  "%.2e (gate 1e-09)",
                  worst);
    verdict(4, worst <= 1e-9, buffer);
  }

  // 5. m-function asymptotics: log-log slope of the residual
  {
    double worst_slope = -1e9;
    std::size_t checked = 0;
    for (const Admitted& a : suite) {
      if (a.n != 8 || checked >= 20) continue;
      ++checked;
      const auto report = forward::asymptotic_check(a.instance.matrix, 0.7,
                                                    {1e2, 1e3, 1e4});
      worst_slope = std::max(worst_slope, report.slope);
    }
    std::snprintf(buffer, sizeof(buffer),
                  "asymptotics on %zu instances: worst residual slope %.3f "
                  "(gate -3.9)",
                  checked, worst_slope);
    verdict(5, checked == 20 && worst_slope <= -3.9, buffer);
  }

  // 6. ip2/ip3 boundary recovery on the criterion-1 suite
  {
    double worst_ip2 = 0.0, worst_ip3 = 0.0;
    std::size_t exceptions = 0;
    for (const Admitted& a : suite) {
      for (const harness::Mode mode : {harness::Mode::ip2, harness::Mode::ip3}) {
        forward::SeededRng rng(a.seed ^ harness::kSubsetSeedSalt);
        const RecoveryProblem p =
            harness::make_problem(a.instance, mode, a.n / 4, rng);
        try {
          const inverse::RecoveryResult r = harness::dispatch(p, mode);
          const double err = std::abs(r.h2 - (-0.4));
          (mode == harness::Mode::ip2 ? worst_ip2 : worst_ip3) =
              std::max(mode == harness::Mode::ip2 ? worst_ip2 : worst_ip3, err);
        } catch (const SpectralError&) {
          ++exceptions;
        }
      }
    }
    const bool pass =
        worst_ip2 <= 1e-8 && worst_ip3 <= 1e-8 && exceptions == 0;
    std::snprintf(buffer, sizeof(buffer),
                  "boundary recovery: max |h2 error| ip2 %.2e, ip3 %.2e "
                  "(gate 1e-08), exceptions %zu",
                  worst_ip2, worst_ip3, exceptions);
    verdict(6, pass, buffer);
    if (!pass)
      std::printf("              note: driven by the N >= 16 instances of the "
                  "suite; same data limitation as criterion 1\n");
  }

  // 7. non-matching index sets at N = 8, two hidden, plus consistency of the
  //    general path with ip1 on matching pairings
  {
    double worst_nu = 0.0, worst_consistency = 0.0, worst_h2 = 0.0;
    double worst_matrix_agreement = 0.0;
    std::size_t count = 0, exceptions = 0;
    std::uint64_t seed = 0;
    while (count < 50 && seed < 100000) {
      ++seed;
      forward::GeneratedInstance inst;
      try {
        inst = forward::generate_instance(seed, 8, {-2, 2}, {0.5, 2}, 0.7, -0.4);
      } catch (const SpectralError&) {
        continue;
      }
      ++count;
      forward::SeededRng rng(seed ^ harness::kSubsetSeedSalt);
      try {
        for (const harness::Mode mode :
             {harness::Mode::nip1, harness::Mode::nip2, harness::Mode::nip3}) {
          const RecoveryProblem p = harness::make_problem(inst, mode, 2, rng);
          const inverse::RecoveryResult r = harness::dispatch(p, mode);
          for (std::size_t idx : p.hidden)
            worst_nu = std::max(worst_nu, std::abs(r.nu_full[idx - 1] -
                                                   inst.two_spectra.nu[idx - 1]));
          if (mode != harness::Mode::nip1)
            worst_h2 = std::max(worst_h2, std::abs(r.h2 - (-0.4)));
        }
        // matching pairing: the general path must reproduce ip1's recovery;
        // the reconstructed matrices then agree to the conditioning floor of
        // the instance and are reported alongside
        forward::SeededRng rng2(seed ^ harness::kSubsetSeedSalt);
        const RecoveryProblem match =
            harness::make_problem(inst, harness::Mode::ip1, 2, rng2);
        const inverse::RecoveryResult general =
            inverse::recover_nonmatching(match);
        const inverse::RecoveryResult special = inverse::recover_ip1(match);
        for (std::size_t i = 0; i < 8; ++i)
          worst_consistency =
              std::max(worst_consistency,
                       std::abs(general.nu_full[i] - special.nu_full[i]));
        worst_consistency =
            std::max(worst_consistency, std::abs(general.h2 - special.h2));
        worst_matrix_agreement = std::max(
            worst_matrix_agreement, matrix_distance(general.matrix, special.matrix));
      } catch (const SpectralError&) {
        ++exceptions;
      }
    }
    const bool pass = worst_nu <= 1e-8 && worst_consistency <= 1e-12 &&
                      worst_h2 <= 1e-8 && exceptions == 0;
    std::snprintf(buffer, sizeof(buffer),
                  "non-matching recovery, %zu instances: max nu err %.2e "
                  "(gate 1e-08), h2 err %.2e, ip1 consistency %.2e (gate "
                  "1e-12, matrices agree to %.1e), exceptions %zu",
                  count, worst_nu, worst_h2, worst_consistency,
                  worst_matrix_agreement, exceptions);
    verdict(7, pass, buffer);
  }

  // 8. measure -> Stieltjes -> matrix roundtrip, gated through N = 32; the
  //    N = 64 row and the two-spectra-route errors are reported, not gated
  {
    double gated = 0.0;
    std::printf("              reconstruction curve:\n");
    for (const std::size_t n : {8UL, 16UL, 32UL, 64UL}) {
      double measure_err = 0.0, spectra_err = 0.0;
      std::size_t count = 0, spectra_ok = 0, spectra_skipped = 0;
      for (std::uint64_t seed = 1; count < 25 && seed <= 100000; ++seed) {
        forward::SeededRng rng(seed);
        JacobiMatrix m;
        m.diag.resize(n);
        m.offdiag.resize(n - 1);
        for (auto& x : m.diag) x = rng.uniform(-2.0, 2.0);
        for (auto& x : m.offdiag) x = rng.uniform(0.5, 2.0);
        SpectralDatum datum;
        try {
          datum = tridiag::spectral_datum(m, 0.7);
        } catch (const SpectralError&) {
          continue;
        }
        ++count;
        auto [a, b] =
            inverse::detail::stieltjes_coefficients(datum.eigenvalues, datum.weights);
        a[0] += 0.7;
        measure_err = std::max(measure_err, matrix_distance({a, b}, m));
        try {
          const SpectralDatum datum2 = tridiag::spectral_datum(m, -0.4);
          const TwoSpectra ts{0.7, -0.4, datum.eigenvalues, datum2.eigenvalues};
          validate(ts);
          const auto [J, h2] = inverse::reconstruct_from_two_spectra(
              ts.lambda, ts.nu, 0.7);
          spectra_err = std::max(spectra_err, matrix_distance(J, m));
          ++spectra_ok;
        } catch (const SpectralError&) {
          ++spectra_skipped;
        }
      }
      if (n <= 32) gated = std::max(gated, measure_err);
      std::printf("              N=%-2zu measure-route %.2e | two-spectra "
                  "route %.2e (%zu ok, %zu degenerate)\n",
                  n, measure_err, spectra_err, spectra_ok, spectra_skipped);
    }
    std::snprintf(buffer, sizeof(buffer),
                  "measure -> Stieltjes -> matrix: max entrywise error %.2e "
                  "for N <= 32 (gate 1e-08); degradation reported above",
                  gated);
    verdict(8, gated <= 1e-8, buffer);
  }

  // 9. characterization validator: generated data passes, the three
  //    documented corruptions fail
  {
    bool all_pass = true;
    for (const Admitted& a : suite)
      if (!two_spectra_conditions(a.instance.two_spectra).all()) all_pass = false;

    const TwoSpectra& good = suite.front().instance.two_spectra;
    TwoSpectra swapped = good;
    std::swap(swapped.lambda, swapped.nu);
    TwoSpectra shared = good;
    shared.nu[2] = shared.lambda[2];
    TwoSpectra reversed = good;
    std::swap(reversed.h1, reversed.h2);
    const bool swap_fails = !two_spectra_conditions(swapped).all();
    const bool shared_fails = !two_spectra_conditions(shared).all();
    const bool reversed_fails = !two_spectra_conditions(reversed).all();
    std::snprintf(buffer, sizeof(buffer),
                  "characterization: generated pass %s; corruptions fail "
                  "swap=%s shared=%s reversed=%s",
                  all_pass ? "yes" : "NO", swap_fails ? "yes" : "NO",
                  shared_fails ? "yes" : "NO", reversed_fails ? "yes" : "NO");
    verdict(9, all_pass && swap_fails && shared_fails && reversed_fails, buffer);
  }

  // 10. herglotz roundtrip: product -> partial fraction -> zeros on 1000
  //     random interlaced instances with up to 64 pairs
  {
    forward::SeededRng rng(271828);
    double worst = 0.0;
    std::size_t count = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t pairs = 1 + rng.index(64);
      herglotz::ProductForm f;
      f.scale = std::exp(rng.uniform(-1.0, 1.0));
      double x = rng.uniform(-5.0, -4.0);
      for (std::size_t i = 0; i < pairs; ++i) {
        f.poles.push_back(x);
        x += rng.uniform(0.05, 1.0);
      }
      for (std::size_t i = 0; i < pairs; ++i) {
        const double lo = f.poles[i];
        const double hi = i + 1 < pairs ? f.poles[i + 1] : f.poles[i] + 1.0;
        f.zeros.push_back(lo + (hi - lo) * rng.uniform(0.02, 0.98));
      }
      const auto roots = herglotz::zeros_of_partial_fraction(
          herglotz::product_to_partial_fraction(f));
      ++count;
      for (std::size_t i = 0; i < pairs; ++i)
        worst = std::max(worst, std::abs(roots[i] - f.zeros[i]) /
                                    std::max(1.0, std::abs(f.zeros[i])));
    }
    std::snprintf(buffer, sizeof(buffer),
                  "herglotz roundtrip, %zu instances: max zero error %.2e "
                  "(gate 1e-10)",
                  count, worst);
    verdict(10, worst <= 1e-10, buffer);
  }

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
