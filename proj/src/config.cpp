#include "athena/config.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <string>
#include <sstream>
#include <stdexcept>

#include "athena/arch.hpp"

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace athena {

nlohmann::json parse_config(std::string_view source) {
  std::size_t i = 0;
  while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
  if (i < source.size() && source[i] == '{') {
    try {
      return nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed json config: ") + e.what());
    }
  }
  toml::table table;
  try {
    table = toml::parse(source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed toml config at line " << e.source().begin.line << ", column "
        << e.source().begin.column << ": " << e.description();
    throw std::invalid_argument(msg.str());
  }
  std::ostringstream json;
  json << toml::json_formatter{table};
  return nlohmann::json::parse(json.str());
}

namespace {

Nanos micros_field(const nlohmann::json& obj, const char* key, Nanos fallback) {
  if (!obj.contains(key)) return fallback;
  return from_micros(obj.at(key).get<double>());
}

// Misspelt keys would otherwise fall back to defaults without notice.
void reject_unknown(const nlohmann::json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : obj.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown key '" + key + "' in " + std::string(where));
}

}  // namespace

Topology load_topology(std::string_view source) {
  const auto doc = parse_config(source);
  TopologySpec spec;
  try {
    reject_unknown(doc, {"rows", "cols", "qubits_per_chip", "compute_fraction", "links_per_edge", "edges", "timing", "epr"},
                   "topology");
    spec.rows = doc.at("rows").get<int>();
    spec.cols = doc.at("cols").get<int>();
    spec.qubits_per_chip = doc.at("qubits_per_chip").get<int>();
    spec.compute_fraction = doc.value("compute_fraction", spec.compute_fraction);
    spec.links_per_edge = doc.value("links_per_edge", spec.links_per_edge);
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges")) spec.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (doc.contains("timing")) {
      const auto& t = doc.at("timing");
      auto& m = spec.timing;
      reject_unknown(t,
                     {"t_1q", "t_2q", "t_atom_transfer", "t_atom_move", "t_measure", "t_epr_gen", "t_relocate",
                      "t_recnot", "epr_hide_fraction"},
                     "[timing]");
      m.one_qubit = micros_field(t, "t_1q", m.one_qubit);
      m.two_qubit = micros_field(t, "t_2q", m.two_qubit);
      m.atom_transfer = micros_field(t, "t_atom_transfer", m.atom_transfer);
      m.atom_move = micros_field(t, "t_atom_move", m.atom_move);
      m.measure = micros_field(t, "t_measure", m.measure);
      m.epr_gen = micros_field(t, "t_epr_gen", m.epr_gen);
      m.relocate = micros_field(t, "t_relocate", m.relocate);
      m.recnot = micros_field(t, "t_recnot", m.recnot);
      m.epr_hide = t.value("epr_hide_fraction", m.epr_hide);
    }
    if (doc.contains("epr")) {
      const auto& e = doc.at("epr");
      auto& m = spec.epr;
      reject_unknown(e, {"p_attempt", "n_attempts", "load", "pump", "bsm_per_attempt", "depump", "unload"}, "[epr]");
      m.p_attempt = e.value("p_attempt", m.p_attempt);
      m.n_attempts = e.value("n_attempts", m.n_attempts);
      m.load = micros_field(e, "load", m.load);
      m.pump = micros_field(e, "pump", m.pump);
      m.bsm_per_attempt = micros_field(e, "bsm_per_attempt", m.bsm_per_attempt);
      m.depump = micros_field(e, "depump", m.depump);
      m.unload = micros_field(e, "unload", m.unload);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad topology config: ") + e.what());
  }
  return Topology(std::move(spec));
}

}  // namespace athena
