#include "jacobi/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "jacobi/parallel.hpp"

namespace jacobi::harness {

namespace {

// count distinct indices from {0..n-1}, optionally avoiding a mask
std::vector<std::size_t> choose_subset(forward::SeededRng& rng, std::size_t n,
                                       std::size_t count,
                                       const std::vector<char>* avoid = nullptr) {
  std::vector<std::size_t> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!avoid || !(*avoid)[i]) pool.push_back(i);
  if (count > pool.size())
    fail(errc::structural, "subset request larger than the available pool");
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Mode mode_from_string(const std::string& name) {
  if (name == "ip1") return Mode::ip1;
  if (name == "ip2") return Mode::ip2;
  if (name == "ip3") return Mode::ip3;
  if (name == "nip1") return Mode::nip1;
  if (name == "nip2") return Mode::nip2;
  if (name == "nip3") return Mode::nip3;
  if (name == "twospectra") return Mode::twospectra;
  fail(errc::structural, "unknown mode: " + name);
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::ip1: return "ip1";
    case Mode::ip2: return "ip2";
    case Mode::ip3: return "ip3";
    case Mode::nip1: return "nip1";
    case Mode::nip2: return "nip2";
    case Mode::nip3: return "nip3";
    case Mode::twospectra: return "twospectra";
  }
  return "unknown";
}

RecoveryProblem make_problem(const forward::GeneratedInstance& instance,
                             Mode mode, std::size_t hidden_count,
                             forward::SeededRng& rng,
                             const std::vector<std::size_t>& fixed_hidden) {
  const std::size_t n = instance.matrix.size();
  const std::vector<double>& nu = instance.two_spectra.nu;
  const std::vector<double>& mu = instance.datum_h1.weights;

  RecoveryProblem p;
  p.lambda = instance.two_spectra.lambda;
  p.h1 = instance.two_spectra.h1;

  if (mode == Mode::twospectra) hidden_count = 0;
  const bool needs_hidden =
      mode == Mode::ip2 || mode == Mode::nip1 || mode == Mode::nip2 || mode == Mode::nip3;
  if (needs_hidden) hidden_count = std::max<std::size_t>(hidden_count, 1);
  if (mode == Mode::ip3) hidden_count = std::min(hidden_count, n - 1);
  const bool nonmatching =
      mode == Mode::nip1 || mode == Mode::nip2 || mode == Mode::nip3;
  if (nonmatching) hidden_count = std::min(hidden_count, n / 2);
  if (mode == Mode::nip3) hidden_count = std::min(hidden_count, (n - 1) / 2);
  hidden_count = std::min(hidden_count, n);

  std::vector<std::size_t> hidden;
  if (fixed_hidden.empty()) {
    hidden = choose_subset(rng, n, hidden_count);
  } else {
    if (mode == Mode::twospectra)
      fail(errc::structural, "two-spectra mode takes no hidden indices");
    for (std::size_t idx : fixed_hidden) {
      if (idx < 1 || idx > n) fail(errc::structural, "hidden index out of range");
      hidden.push_back(idx - 1);
    }
    std::sort(hidden.begin(), hidden.end());
    if (std::adjacent_find(hidden.begin(), hidden.end()) != hidden.end())
      fail(errc::structural, "hidden indices must be unique");
  }
  std::vector<char> is_hidden(n, 0);
  for (std::size_t idx : hidden) is_hidden[idx] = 1;

  for (std::size_t idx : hidden) p.hidden.push_back(idx + 1);
  for (std::size_t i = 0; i < n; ++i)
    if (!is_hidden[i]) p.known_nu[i + 1] = nu[i];

  std::vector<std::size_t> weighted = hidden;
  std::vector<char> blocked = is_hidden;
  if (nonmatching) {
    weighted = choose_subset(rng, n, hidden.size(), &is_hidden);
    for (std::size_t idx : weighted) blocked[idx] = 1;
  }
  for (std::size_t idx : weighted) p.known_weights[idx + 1] = mu[idx];

  switch (mode) {
    case Mode::ip1:
    case Mode::nip1:
      p.h2 = instance.two_spectra.h2;
      break;
    case Mode::twospectra:
      break;
    case Mode::ip2:
    case Mode::nip2: {
      const std::size_t m = hidden[rng.index(hidden.size())];
      p.extra = RecoveryProblem::Extra{RecoveryProblem::ExtraKind::nu, m + 1, nu[m]};
      break;
    }
    case Mode::ip3:
    case Mode::nip3: {
      const std::vector<std::size_t> spare = choose_subset(rng, n, 1, &blocked);
      const std::size_t m = spare.front();
      p.extra =
          RecoveryProblem::Extra{RecoveryProblem::ExtraKind::weight, m + 1, mu[m]};
      break;
    }
  }
  return p;
}

inverse::RecoveryResult dispatch(const RecoveryProblem& problem, Mode mode) {
  switch (mode) {
    case Mode::ip1: return inverse::recover_ip1(problem);
    case Mode::ip2: return inverse::recover_ip2(problem);
    case Mode::ip3: return inverse::recover_ip3(problem);
    case Mode::nip1:
    case Mode::nip2:
    case Mode::nip3: return inverse::recover_nonmatching(problem);
    case Mode::twospectra: return inverse::recover_two_spectra(problem);
  }
  fail(errc::structural, "unknown mode");
}

SweepRow run_instance(std::uint64_t seed, std::size_t n, double hidden_fraction,
                      const SweepConfig& config) {
  SweepRow row;
  row.seed = seed;
  row.n = n;
  row.mode = config.mode;
  try {
    const forward::GeneratedInstance instance = forward::generate_instance(
        seed, n, config.diag_range, config.offdiag_range, config.h1, config.h2,
        config.eigen_tol);
    const std::size_t hidden_count = static_cast<std::size_t>(
        std::lround(hidden_fraction * static_cast<double>(n)));
    forward::SeededRng rng(seed ^ kSubsetSeedSalt);
    const RecoveryProblem problem = make_problem(
        instance, config.mode, hidden_count, rng, config.fixed_hidden);
    row.hidden_count = problem.hidden.size();

    const auto start = std::chrono::steady_clock::now();
    const inverse::RecoveryResult result = dispatch(problem, config.mode);
    const auto stop = std::chrono::steady_clock::now();
    row.runtime_sec = std::chrono::duration<double>(stop - start).count();

    for (std::size_t i = 0; i < n; ++i) {
      row.max_matrix_err = std::max(
          row.max_matrix_err,
          std::abs(result.matrix.diag[i] - instance.matrix.diag[i]));
      if (i + 1 < n)
        row.max_matrix_err = std::max(
            row.max_matrix_err,
            std::abs(result.matrix.offdiag[i] - instance.matrix.offdiag[i]));
    }
    for (std::size_t idx : problem.hidden)
      row.max_nu_err =
          std::max(row.max_nu_err, std::abs(result.nu_full[idx - 1] -
                                            instance.two_spectra.nu[idx - 1]));
  } catch (const std::exception& e) {
    row.error = e.what();
    row.max_matrix_err = std::nan("");
    row.max_nu_err = std::nan("");
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.seed_hi < config.seed_lo)
    fail(errc::structural, "empty seed range");
  struct Task {
    std::uint64_t seed;
    std::size_t n;
    double fraction;
  };
  std::vector<Task> tasks;
  for (std::uint64_t seed = config.seed_lo; seed <= config.seed_hi; ++seed)
    for (std::size_t n : config.sizes)
      for (double fraction : config.hidden_fractions)
        tasks.push_back({seed, n, fraction});

  std::vector<SweepRow> rows(tasks.size());
  const int threads = parallel::sweep_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(tasks.size()); ++i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] =
        run_instance(t.seed, t.n, t.fraction, config);
  }
  return rows;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(errc::structural, "cannot write " + path.string());
  out << "seed,n,hidden,mode,max_matrix_err,max_nu_err,runtime_sec\n";
  char buf[256];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%zu,%zu,%s,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(row.seed), row.n,
                  row.hidden_count, to_string(row.mode), row.max_matrix_err,
                  row.max_nu_err, row.runtime_sec);
    out << buf;
  }
}

}  // namespace jacobi::harness
