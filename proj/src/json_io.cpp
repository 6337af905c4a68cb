#include "jacobi/json_io.hpp"

#include <fstream>

namespace jacobi {

namespace {

using nlohmann::json;

std::map<std::size_t, double> indexed_map_from_json(const json& j,
                                                    const char* field) {
  std::map<std::size_t, double> out;
  if (j.is_null()) return out;
  if (!j.is_object()) fail(errc::structural, std::string(field) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    std::size_t idx = 0;
    try {
      idx = static_cast<std::size_t>(std::stoull(key));
    } catch (const std::exception&) {
      fail(errc::structural, std::string(field) + " key is not an index: " + key);
    }
    if (!value.is_number())
      fail(errc::structural, std::string(field) + " value must be a number");
    out[idx] = value.get<double>();
  }
  return out;
}

json indexed_map_to_json(const std::map<std::size_t, double>& m) {
  json j = json::object();
  for (const auto& [idx, value] : m) j[std::to_string(idx)] = value;
  return j;
}

}  // namespace

void to_json(json& j, const JacobiMatrix& m) {
  j = json{{"a", m.diag}, {"b", m.offdiag}};
}

void from_json(const json& j, JacobiMatrix& m) {
  j.at("a").get_to(m.diag);
  j.at("b").get_to(m.offdiag);
}

void to_json(json& j, const SpectralDatum& d) {
  j = json{{"h", d.h}, {"eigenvalues", d.eigenvalues}, {"weights", d.weights}};
}

void from_json(const json& j, SpectralDatum& d) {
  j.at("h").get_to(d.h);
  j.at("eigenvalues").get_to(d.eigenvalues);
  j.at("weights").get_to(d.weights);
}

void to_json(json& j, const TwoSpectra& ts) {
  j = json{{"h1", ts.h1}, {"h2", ts.h2}, {"lambda", ts.lambda}, {"nu", ts.nu}};
}

void from_json(const json& j, TwoSpectra& ts) {
  j.at("h1").get_to(ts.h1);
  j.at("h2").get_to(ts.h2);
  j.at("lambda").get_to(ts.lambda);
  j.at("nu").get_to(ts.nu);
}

void to_json(json& j, const RecoveryProblem& p) {
  j = json{{"lambda", p.lambda},
           {"hidden", p.hidden},
           {"known_nu", indexed_map_to_json(p.known_nu)},
           {"known_weights", indexed_map_to_json(p.known_weights)}};
  if (p.h1) j["h1"] = *p.h1;
  if (p.h2) j["h2"] = *p.h2;
  if (p.extra) {
    j["extra"] = json{
        {"kind", p.extra->kind == RecoveryProblem::ExtraKind::nu ? "nu" : "weight"},
        {"index", p.extra->index},
        {"value", p.extra->value}};
  }
}

void from_json(const json& j, RecoveryProblem& p) {
  j.at("lambda").get_to(p.lambda);
  p.hidden.clear();
  if (j.contains("hidden") && !j["hidden"].is_null())
    j.at("hidden").get_to(p.hidden);
  p.known_nu = indexed_map_from_json(j.value("known_nu", json()), "known_nu");
  p.known_weights =
      indexed_map_from_json(j.value("known_weights", json()), "known_weights");
  p.h1.reset();
  p.h2.reset();
  if (j.contains("h1") && !j["h1"].is_null()) p.h1 = j["h1"].get<double>();
  if (j.contains("h2") && !j["h2"].is_null()) p.h2 = j["h2"].get<double>();
  p.extra.reset();
  if (j.contains("extra") && !j["extra"].is_null()) {
    const json& e = j["extra"];
    RecoveryProblem::Extra extra;
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "nu")
      extra.kind = RecoveryProblem::ExtraKind::nu;
    else if (kind == "weight")
      extra.kind = RecoveryProblem::ExtraKind::weight;
    else
      fail(errc::structural, "extra.kind must be 'nu' or 'weight'");
    extra.index = e.at("index").get<std::size_t>();
    extra.value = e.at("value").get<double>();
    p.extra = extra;
  }
}

namespace inverse {
void to_json(json& j, const RecoveryResult& r) {
  j = json{{"nu", r.nu_full},
           {"h2", r.h2},
           {"weights_h1", r.weights_h1},
           {"matrix", r.matrix},
           {"diagnostics", r.diagnostics}};
}
}  // namespace inverse

namespace io {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::structural, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(errc::structural, "invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::structural, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace io

}  // namespace jacobi
