// Timing harness for the OpenMP kernels against their serial references:
// Sturm-bisection eigenvalues, batched interlaced root finding, and the
// roundtrip sweep. The parallel and serial paths must agree bitwise.

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "jacobi/forward.hpp"
#include "jacobi/harness.hpp"
#include "jacobi/herglotz.hpp"
#include "jacobi/tridiag.hpp"

using namespace jacobi;

namespace {

JacobiMatrix random_matrix(forward::SeededRng& rng, std::size_t n) {
  JacobiMatrix m;
  m.diag.resize(n);
  m.offdiag.resize(n - 1);
  for (auto& x : m.diag) x = rng.uniform(-2.0, 2.0);
  for (auto& x : m.offdiag) x = rng.uniform(0.5, 2.0);
  return m;
}

herglotz::PartialFractionForm random_fraction(forward::SeededRng& rng,
                                              std::size_t pairs) {
  herglotz::ProductForm f;
  f.scale = 1.0;
  double x = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    f.poles.push_back(x);
    x += rng.uniform(0.05, 1.0);
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    const double lo = f.poles[i];
    const double hi = i + 1 < pairs ? f.poles[i + 1] : f.poles[i] + 1.0;
    f.zeros.push_back(lo + (hi - lo) * rng.uniform(0.1, 0.9));
  }
  return herglotz::product_to_partial_fraction(f);
}

template <typename F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double start = omp_get_wtime();
    body();
    best = std::min(best, omp_get_wtime() - start);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d (OMP_NUM_THREADS to change)\n\n",
              omp_get_max_threads());
  std::printf("%-22s %6s %12s %12s %9s %9s\n", "kernel", "size", "serial[s]",
              "parallel[s]", "speedup", "bitwise");

  forward::SeededRng rng(1);
  for (std::size_t n : {64, 128, 256, 512}) {
    const JacobiMatrix m = random_matrix(rng, n);
    std::vector<double> serial, parallel;
    const double ts = time_best_of(reps, [&] { serial = tridiag::eigenvalues_serial(m); });
    const double tp = time_best_of(reps, [&] { parallel = tridiag::eigenvalues(m); });
    std::printf("%-22s %6zu %12.4e %12.4e %8.2fx %9s\n", "sturm-eigenvalues", n,
                ts, tp, ts / tp, serial == parallel ? "yes" : "NO");
  }

  for (std::size_t pairs : {64, 256, 1024}) {
    const herglotz::PartialFractionForm f = random_fraction(rng, pairs);
    std::vector<double> serial, parallel;
    const double ts = time_best_of(
        reps, [&] { serial = herglotz::zeros_of_partial_fraction_serial(f); });
    const double tp =
        time_best_of(reps, [&] { parallel = herglotz::zeros_of_partial_fraction(f); });
    std::printf("%-22s %6zu %12.4e %12.4e %8.2fx %9s\n", "interlaced-zeros",
                pairs, ts, tp, ts / tp, serial == parallel ? "yes" : "NO");
  }

  {
    harness::SweepConfig config;
    config.seed_lo = 1;
    config.seed_hi = 40;
    config.sizes = {8, 16};
    std::vector<harness::SweepRow> one, many;
    setenv("JACOBI_INVERSE_THREADS", "1", 1);
    const double ts = time_best_of(reps, [&] { one = harness::run_sweep(config); });
    unsetenv("JACOBI_INVERSE_THREADS");
    const double tp = time_best_of(reps, [&] { many = harness::run_sweep(config); });
    const auto bits = [](double x) { return std::bit_cast<std::uint64_t>(x); };
    bool same = one.size() == many.size();
    for (std::size_t i = 0; same && i < one.size(); ++i)
      same = one[i].seed == many[i].seed &&
             bits(one[i].max_matrix_err) == bits(many[i].max_matrix_err) &&
             bits(one[i].max_nu_err) == bits(many[i].max_nu_err);
    std::printf("%-22s %6zu %12.4e %12.4e %8.2fx %9s\n", "roundtrip-sweep",
                one.size(), ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return 0;
}
