// Batch front end: generate instances, run forward checks and inverse
// pipelines on JSON records, and drive roundtrip sweeps.
//
// Exit codes: 0 success, 1 runtime failure, 2 schema violation,
// 3 inconsistent data / failed check (named on stderr), 4 degenerate
// spectrum while generating.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jacobi/harness.hpp"
#include "jacobi/json_io.hpp"

namespace fs = std::filesystem;
using namespace jacobi;

namespace {

forward::Range parse_range(const std::string& text, bool positive) {
  const auto colon = text.find(':');
  forward::Range range;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    range.lo = std::stod(text.substr(0, colon));
    range.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a range of the form lo:hi, got " + text);
  }
  if (!(range.lo <= range.hi))
    throw CLI::ValidationError("empty range " + text);
  if (positive && !(range.lo > 0.0))
    throw CLI::ValidationError("range must be strictly positive: " + text);
  return range;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

int exit_code_for(const SpectralError& e) {
  switch (e.code()) {
    case errc::structural: return 2;
    case errc::degenerate_spectrum: return 4;
    default: return 3;
  }
}

int cmd_generate(std::uint64_t seed, std::size_t n, const std::string& diag_text,
                 const std::string& offdiag_text, double h1, double h2,
                 double tol, const std::string& out_dir) {
  const forward::Range diag_range = parse_range(diag_text, false);
  const forward::Range offdiag_range = parse_range(offdiag_text, true);
  const forward::GeneratedInstance instance =
      forward::generate_instance(seed, n, diag_range, offdiag_range, h1, h2, tol);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  io::write_json_file(dir / "matrix.json", instance.matrix);
  io::write_json_file(dir / "spectra.json",
                      nlohmann::json{instance.datum_h1, instance.datum_h2});
  io::write_json_file(dir / "twospectra.json", instance.two_spectra);
  io::write_json_file(dir / "meta.json",
                      nlohmann::json{{"seed", seed},
                                     {"n", n},
                                     {"rng", forward::kRngAlgorithm},
                                     {"diag_range", diag_text},
                                     {"offdiag_range", offdiag_text},
                                     {"h1", h1},
                                     {"h2", h2},
                                     {"tol", tol}});
  std::cout << "wrote matrix.json, spectra.json, twospectra.json, meta.json to "
            << dir.string() << "\n";
  return 0;
}

int cmd_invert(const std::string& problem_path, const std::string& mode_name,
               double tol, const std::string& out_path) {
  const harness::Mode mode = harness::mode_from_string(mode_name);
  const RecoveryProblem problem = io::load<RecoveryProblem>(problem_path);
  const inverse::RecoveryResult result = harness::dispatch(problem, mode);
  io::write_json_file(out_path, result);

  bool ok = true;
  std::string failing;
  for (const auto& [name, value] : result.diagnostics) {
    if (name.find("residual") == std::string::npos) continue;
    if (!(value <= tol)) {
      ok = false;
      failing = name;
      break;
    }
  }
  std::cout << "result written to " << out_path << "\n";
  for (const auto& [name, value] : result.diagnostics)
    std::printf("  %-28s %.3e\n", name.c_str(), value);
  if (!ok) {
    std::cerr << "check failed: " << failing << " above tolerance " << tol << "\n";
    return 3;
  }
  return 0;
}

int cmd_check(const std::string& spectra_path) {
  const TwoSpectra ts = io::load<TwoSpectra>(spectra_path);
  if (ts.lambda.size() != ts.nu.size() || ts.lambda.empty() || ts.h1 == ts.h2)
    fail(errc::structural, "twospectra record malformed");
  const C2SConditions report = two_spectra_conditions(ts);
  const auto line = [](const char* name, bool pass) {
    std::printf("%-22s %s\n", name, pass ? "PASS" : "FAIL");
  };
  line("interlacing", report.interlacing);
  line("boundary_inequality", report.boundary_inequality);
  line("delta", report.delta_matches);
  line("tau_positivity", report.tau_positive);
  std::printf("delta = %.17g (h1 - h2 = %.17g)\n", report.delta, ts.h1 - ts.h2);
  if (!report.all()) {
    std::string names;
    if (!report.interlacing) names += " interlacing";
    if (!report.boundary_inequality) names += " boundary_inequality";
    if (!report.delta_matches) names += " delta";
    if (!report.tau_positive) names += " tau_positivity";
    std::cerr << "check failed:" << names << "\n";
    return 3;
  }
  return 0;
}

int cmd_roundtrip(const std::string& seed_text, const std::string& n_text,
                  const std::string& fraction_text, const std::string& hidden_text,
                  const std::string& mode_name, const std::string& diag_text,
                  const std::string& offdiag_text, double h1, double h2,
                  double tol, const std::string& out_path) {
  harness::SweepConfig config;
  const forward::Range seeds = parse_range(seed_text, false);
  config.seed_lo = static_cast<std::uint64_t>(seeds.lo);
  config.seed_hi = static_cast<std::uint64_t>(seeds.hi);
  config.sizes = parse_size_list(n_text);
  config.hidden_fractions = parse_double_list(fraction_text);
  if (!hidden_text.empty()) {
    // one fraction (< 1) or an explicit comma list of indices
    const std::vector<double> values = parse_double_list(hidden_text);
    if (values.size() == 1 && values[0] < 1.0) {
      config.hidden_fractions = {values[0]};
    } else {
      config.hidden_fractions = {0.0};
      for (double v : values) {
        if (v < 1.0 || v != std::floor(v))
          throw CLI::ValidationError("--hidden needs indices >= 1 or one fraction");
        config.fixed_hidden.push_back(static_cast<std::size_t>(v));
      }
    }
  }
  config.mode = harness::mode_from_string(mode_name);
  config.diag_range = parse_range(diag_text, false);
  config.offdiag_range = parse_range(offdiag_text, true);
  config.h1 = h1;
  config.h2 = h2;

  const std::vector<harness::SweepRow> rows = harness::run_sweep(config);
  harness::write_csv(out_path, rows);

  std::size_t failures = 0;
  double worst_matrix = 0.0, worst_nu = 0.0, total_runtime = 0.0;
  for (const harness::SweepRow& row : rows) {
    if (!row.error.empty()) {
      ++failures;
      std::cerr << "seed " << row.seed << " n " << row.n << ": " << row.error
                << "\n";
      continue;
    }
    worst_matrix = std::max(worst_matrix, row.max_matrix_err);
    worst_nu = std::max(worst_nu, row.max_nu_err);
    total_runtime += row.runtime_sec;
    if (row.max_matrix_err > tol || row.max_nu_err > tol) ++failures;
  }
  std::printf("instances=%zu failures=%zu max_matrix_err=%.3e max_nu_err=%.3e "
              "recovery_time=%.3fs (rng %s)\n",
              rows.size(), failures, worst_matrix, worst_nu, total_runtime,
              forward::kRngAlgorithm);
  std::cout << "sweep table written to " << out_path << "\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forward and inverse spectral problems for finite Jacobi "
               "matrices under rank-one boundary perturbations"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::size_t n = 8;
  std::string diag_range = "-2:2";
  std::string offdiag_range = "0.5:2";
  double h1 = 0.7;
  double h2 = -0.4;
  double eigen_tol = tridiag::kDefaultEigenTol;
  std::string out_dir = ".";

  CLI::App* generate = app.add_subcommand(
      "generate", "generate a seeded instance and write its JSON records");
  generate->add_option("--seed", seed, "RNG seed");
  generate->add_option("--n", n, "matrix size")->check(CLI::PositiveNumber);
  generate->add_option("--diag-range", diag_range, "diagonal range lo:hi");
  generate->add_option("--offdiag-range", offdiag_range,
                       "off-diagonal range lo:hi (lo > 0)");
  generate->add_option("--h1", h1, "first boundary constant");
  generate->add_option("--h2", h2, "second boundary constant");
  generate->add_option("--tol", eigen_tol, "eigenvalue tolerance");
  generate->add_option("--out", out_dir, "output directory");

  std::string problem_path;
  std::string mode_name = "ip1";
  double tol = 1e-8;
  std::string result_path = "result.json";

  CLI::App* invert = app.add_subcommand(
      "invert", "run a recovery pipeline on a problem file");
  invert->add_option("problem", problem_path, "RecoveryProblem JSON file")
      ->required();
  invert->add_option("--mode", mode_name,
                     "ip1|ip2|ip3|nip1|nip2|nip3|twospectra");
  invert->add_option("--tol", tol, "diagnostic tolerance");
  invert->add_option("--out", result_path, "result file");

  std::string spectra_path;
  CLI::App* check = app.add_subcommand(
      "check", "run the two-spectra characterization conditions");
  check->add_option("twospectra", spectra_path, "TwoSpectra JSON file")
      ->required();

  std::string seed_range = "1:100";
  std::string n_list = "8,16,32";
  std::string fraction_list = "0.25";
  std::string hidden_flag;
  std::string csv_path = "sweep.csv";

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "seeded generate/hide/recover sweep with a CSV table");
  roundtrip->add_option("--seed-range", seed_range, "seed range lo:hi");
  roundtrip->add_option("--n-list", n_list, "comma list of sizes");
  roundtrip->add_option("--hidden-fraction-list", fraction_list,
                        "comma list of hidden fractions");
  roundtrip->add_option("--hidden", hidden_flag,
                        "hidden nu indices (comma list) or one fraction");
  roundtrip->add_option("--mode", mode_name,
                        "ip1|ip2|ip3|nip1|nip2|nip3|twospectra");
  roundtrip->add_option("--diag-range", diag_range, "diagonal range lo:hi");
  roundtrip->add_option("--offdiag-range", offdiag_range,
                        "off-diagonal range lo:hi (lo > 0)");
  roundtrip->add_option("--h1", h1, "first boundary constant");
  roundtrip->add_option("--h2", h2, "second boundary constant");
  roundtrip->add_option("--tol", tol, "acceptance tolerance for errors");
  roundtrip->add_option("--out", csv_path, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(seed, n, diag_range, offdiag_range, h1, h2, eigen_tol,
                          out_dir);
    if (invert->parsed())
      return cmd_invert(problem_path, mode_name, tol, result_path);
    if (check->parsed()) return cmd_check(spectra_path);
    if (roundtrip->parsed())
      return cmd_roundtrip(seed_range, n_list, fraction_list, hidden_flag,
                           mode_name, diag_range, offdiag_range, h1, h2, tol,
                           csv_path);
  } catch (const SpectralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
