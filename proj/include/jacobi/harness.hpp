#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "jacobi/forward.hpp"
#include "jacobi/inverse.hpp"

// Batch experiment plumbing behind the CLI: problem construction for each
// recovery mode, mode dispatch, and the seeded roundtrip sweep.

namespace jacobi::harness {

enum class Mode { ip1, ip2, ip3, nip1, nip2, nip3, twospectra };

Mode mode_from_string(const std::string& name);
const char* to_string(Mode mode);

// Derives the subset-selection stream from the instance seed; documented so
// sweeps are reproducible across runs and thread counts.
inline constexpr std::uint64_t kSubsetSeedSalt = 0x9e3779b97f4a7c15ULL;

// Builds the recovery problem for one generated instance by hiding data
// according to the mode. hidden_count is clamped to what the mode supports
// (ip2/nip* need at least one hidden index, ip3 needs a spare known one, and
// the non-matching modes draw the weighted set disjoint from the hidden one).
// A nonempty fixed_hidden (1-based) overrides the random selection.
RecoveryProblem make_problem(const forward::GeneratedInstance& instance,
                             Mode mode, std::size_t hidden_count,
                             forward::SeededRng& rng,
                             const std::vector<std::size_t>& fixed_hidden = {});

inverse::RecoveryResult dispatch(const RecoveryProblem& problem, Mode mode);

struct SweepConfig {
  std::uint64_t seed_lo = 1;
  std::uint64_t seed_hi = 100;
  std::vector<std::size_t> sizes{8, 16, 32};
  std::vector<double> hidden_fractions{0.25};
  Mode mode = Mode::ip1;
  forward::Range diag_range{-2.0, 2.0};
  forward::Range offdiag_range{0.5, 2.0};
  double h1 = 0.7;
  double h2 = -0.4;
  double eigen_tol = tridiag::kDefaultEigenTol;
  std::vector<std::size_t> fixed_hidden;  // 1-based; overrides the fractions
};

struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t hidden_count = 0;
  Mode mode = Mode::ip1;
  double max_matrix_err = 0.0;
  double max_nu_err = 0.0;
  double runtime_sec = 0.0;
  std::string error;  // nonempty when the instance failed
};

SweepRow run_instance(std::uint64_t seed, std::size_t n, double hidden_fraction,
                      const SweepConfig& config);

// Instances run concurrently up to the JACOBI_INVERSE_THREADS cap; the row
// order is (seed, n, fraction) regardless of completion order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_csv(const std::filesystem::path& path,
               const std::vector<SweepRow>& rows);

}  // namespace jacobi::harness
