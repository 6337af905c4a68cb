#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jacobi/core.hpp"
#include "jacobi/inverse.hpp"

// JSON record shapes shared by the CLI and the test fixtures:
//   JacobiMatrix     {"a":[...], "b":[...]}
//   SpectralDatum    {"h":..., "eigenvalues":[...], "weights":[...]}
//   TwoSpectra       {"h1":..., "h2":..., "lambda":[...], "nu":[...]}
//   RecoveryProblem  {"lambda":[...], "hidden":[...], "known_nu":{"i":v},
//                     "known_weights":{"i":v}, "h1":..., "h2":...,
//                     "extra":{"kind":"nu"|"weight","index":i,"value":v}}
// Indices are 1-based. Optional fields may be absent or null.

namespace jacobi {

void to_json(nlohmann::json& j, const JacobiMatrix& m);
void from_json(const nlohmann::json& j, JacobiMatrix& m);

void to_json(nlohmann::json& j, const SpectralDatum& d);
void from_json(const nlohmann::json& j, SpectralDatum& d);

void to_json(nlohmann::json& j, const TwoSpectra& ts);
void from_json(const nlohmann::json& j, TwoSpectra& ts);

void to_json(nlohmann::json& j, const RecoveryProblem& p);
void from_json(const nlohmann::json& j, RecoveryProblem& p);

namespace inverse {
void to_json(nlohmann::json& j, const RecoveryResult& r);
}

namespace io {

// Parse failures and schema mismatches surface as structural SpectralErrors
// so the CLI can map them to its schema exit code.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

template <typename T>
T load(const std::filesystem::path& path) {
  const nlohmann::json j = read_json_file(path);
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(errc::structural, "schema mismatch in " + path.string() + ": " + e.what());
  }
}

}  // namespace io

}  // namespace jacobi
