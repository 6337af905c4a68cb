#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jacobi/forward.hpp"
#include "jacobi/json_io.hpp"

using namespace jacobi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("jacobi_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

int run_cli_capture(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(CLI_BIN) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("records roundtrip through JSON") {
  const auto inst = forward::generate_instance(2, 6, {-2, 2}, {0.5, 2}, 0.7, -0.4);

  const nlohmann::json jm = inst.matrix;
  const auto m2 = jm.get<JacobiMatrix>();
  CHECK(m2.diag == inst.matrix.diag);
  CHECK(m2.offdiag == inst.matrix.offdiag);

  const nlohmann::json jd = inst.datum_h1;
  const auto d2 = jd.get<SpectralDatum>();
  CHECK(d2.eigenvalues == inst.datum_h1.eigenvalues);
  CHECK(d2.weights == inst.datum_h1.weights);

  const nlohmann::json jt = inst.two_spectra;
  const auto t2 = jt.get<TwoSpectra>();
  CHECK(t2.lambda == inst.two_spectra.lambda);
  CHECK(t2.nu == inst.two_spectra.nu);

  RecoveryProblem p;
  p.lambda = inst.two_spectra.lambda;
  p.hidden = {2, 4};
  p.known_nu[1] = inst.two_spectra.nu[0];
  p.known_weights[2] = 0.25;
  p.h1 = 0.7;
  p.extra = RecoveryProblem::Extra{RecoveryProblem::ExtraKind::weight, 3, 0.125};
  const nlohmann::json jp = p;
  const auto p2 = jp.get<RecoveryProblem>();
  CHECK(p2.lambda == p.lambda);
  CHECK(p2.hidden == p.hidden);
  CHECK(p2.known_nu == p.known_nu);
  CHECK(p2.known_weights == p.known_weights);
  CHECK(p2.h1 == p.h1);
  CHECK_FALSE(p2.h2.has_value());
  REQUIRE(p2.extra.has_value());
  CHECK(p2.extra->kind == RecoveryProblem::ExtraKind::weight);
  CHECK(p2.extra->index == 3);
  CHECK(p2.extra->value == 0.125);
}

TEST_CASE("schema violations are structural errors") {
  TempDir dir;
  const fs::path bad = dir.path / "bad.json";
  {
    std::ofstream out(bad);
    out << "{\"lambda\": \"oops\"}";
  }
  try {
    io::load<RecoveryProblem>(bad);
    CHECK(false);
  } catch (const SpectralError& e) {
    CHECK(e.code() == errc::structural);
  }

  const fs::path garbled = dir.path / "garbled.json";
  {
    std::ofstream out(garbled);
    out << "{not json";
  }
  CHECK_THROWS_AS(io::load<TwoSpectra>(garbled), SpectralError);
  CHECK_THROWS_AS(io::load<TwoSpectra>(dir.path / "absent.json"), SpectralError);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("generate writes deterministic records that pass check") {
  TempDir a, b;
  CHECK(run_cli("generate --seed 5 --n 8 --out " + a.path.string()) == 0);
  CHECK(run_cli("generate --seed 5 --n 8 --out " + b.path.string()) == 0);
  for (const char* name :
       {"matrix.json", "spectra.json", "twospectra.json", "meta.json"})
    CHECK(slurp(a.path / name) == slurp(b.path / name));

  CHECK(run_cli("check " + (a.path / "twospectra.json").string()) == 0);

  // the spectra file holds both boundary data
  const nlohmann::json spectra = io::read_json_file(a.path / "spectra.json");
  REQUIRE(spectra.is_array());
  REQUIRE(spectra.size() == 2);
  CHECK(spectra[0].at("h").get<double>() == 0.7);
  CHECK(spectra[1].at("h").get<double>() == -0.4);
}

TEST_CASE("check fails on corrupted two-spectra files") {
  TempDir dir;
  REQUIRE(run_cli("generate --seed 7 --n 8 --out " + dir.path.string()) == 0);
  auto ts = io::load<TwoSpectra>(dir.path / "twospectra.json");
  std::swap(ts.lambda, ts.nu);
  io::write_json_file(dir.path / "swapped.json", ts);
  CHECK(run_cli("check " + (dir.path / "swapped.json").string()) == 3);
}

TEST_CASE("invert solves the golden ip1 problem file") {
  TempDir dir;
  const fs::path problem = dir.path / "problem.json";
  {
    std::ofstream out(problem);
    out << R"({"lambda": [-1.0, 1.0], "hidden": [2],
               "known_nu": {"1": -0.6180339887498949},
               "known_weights": {"2": 0.5}, "h1": 0.0, "h2": -1.0})";
  }
  const fs::path result = dir.path / "result.json";
  CHECK(run_cli("invert " + problem.string() + " --mode ip1 --out " +
                result.string()) == 0);
  const nlohmann::json r = io::read_json_file(result);
  CHECK(std::abs(r.at("nu")[1].get<double>() - 1.6180339887) <= 1e-10);
  CHECK(std::abs(r.at("h2").get<double>() + 1.0) <= 1e-12);
}

TEST_CASE("invert maps schema and consistency failures to exit codes") {
  TempDir dir;
  // ip2 problem missing its extra datum: schema violation, exit 2
  const fs::path no_extra = dir.path / "no_extra.json";
  {
    std::ofstream out(no_extra);
    out << R"({"lambda": [-1.0, 1.0], "hidden": [2],
               "known_nu": {"1": -0.6180339887498949},
               "known_weights": {"2": 0.5}, "h1": 0.0})";
  }
  CHECK(run_cli("invert " + no_extra.string() + " --mode ip2 --out " +
                (dir.path / "r.json").string()) == 2);

  // corrupted weight: the recovered zero crosses an interior eigenvalue and
  // the interlacing check is named on stderr, exit 3
  const auto inst = forward::generate_instance(31, 8, {-2, 2}, {0.5, 2}, 0.7, -0.4);
  RecoveryProblem p;
  p.lambda = inst.two_spectra.lambda;
  p.h1 = 0.7;
  p.h2 = -0.4;
  p.hidden = {4};
  for (std::size_t i = 1; i <= 8; ++i)
    if (i != 4) p.known_nu[i] = inst.two_spectra.nu[i - 1];
  p.known_weights[4] = 40.0 * inst.datum_h1.weights[3];
  const fs::path perturbed = dir.path / "perturbed.json";
  io::write_json_file(perturbed, p);
  const fs::path log = dir.path / "log.txt";
  CHECK(run_cli_capture("invert " + perturbed.string() + " --mode ip1 --out " +
                            (dir.path / "r2.json").string(),
                        log) == 3);
  CHECK(slurp(log).find("interlacing") != std::string::npos);
}

TEST_CASE("roundtrip sweep writes an ordered CSV and aggregates") {
  TempDir dir;
  const fs::path csv = dir.path / "sweep.csv";
  CHECK(run_cli("roundtrip --seed-range 1:6 --n-list 8 "
                "--hidden-fraction-list 0.25 --mode ip1 --out " +
                csv.string()) == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "seed,n,hidden,mode,max_matrix_err,max_nu_err,runtime_sec");
  std::size_t rows = 0;
  std::uint64_t prev_seed = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.find(',');
    const std::uint64_t seed = std::stoull(line.substr(0, comma));
    CHECK(seed > prev_seed);
    prev_seed = seed;
  }
  CHECK(rows == 6);

  // hidden fraction zero collapses onto the two-spectra mode
  const fs::path csv0 = dir.path / "sweep0.csv";
  CHECK(run_cli("roundtrip --seed-range 1:3 --n-list 8 "
                "--hidden-fraction-list 0 --mode ip1 --out " +
                csv0.string()) == 0);
  const fs::path csv_ts = dir.path / "sweep_ts.csv";
  CHECK(run_cli("roundtrip --seed-range 1:3 --n-list 8 "
                "--hidden-fraction-list 0 --mode twospectra --out " +
                csv_ts.string()) == 0);
}

TEST_CASE("flag validation rejects an off-diagonal range touching zero") {
  CHECK(run_cli("generate --seed 1 --n 8 --offdiag-range 0:2") != 0);
  CHECK(run_cli("roundtrip --seed-range 1:2 --n-list 8 --offdiag-range 0:2") != 0);
}

TEST_CASE("sweep rows do not depend on the thread cap") {
  TempDir dir;
  const fs::path a = dir.path / "a.csv";
  const fs::path b = dir.path / "b.csv";
  const std::string args = "roundtrip --seed-range 1:8 --n-list 8 --mode ip1";
  CHECK(std::system(("JACOBI_INVERSE_THREADS=1 " + std::string(CLI_BIN) + " " +
                     args + " --out " + a.string() + " >/dev/null 2>&1")
                        .c_str()) == 0);
  CHECK(std::system(("JACOBI_INVERSE_THREADS=4 " + std::string(CLI_BIN) + " " +
                     args + " --out " + b.string() + " >/dev/null 2>&1")
                        .c_str()) == 0);
  // identical except the runtime column
  std::ifstream fa(a), fb(b);
  std::string la, lb;
  while (std::getline(fa, la) && std::getline(fb, lb)) {
    CHECK(la.substr(0, la.rfind(',')) == lb.substr(0, lb.rfind(',')));
  }
}

}  // TEST_SUITE
