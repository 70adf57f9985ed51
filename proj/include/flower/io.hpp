#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "flower/construction.hpp"
#include "flower/fr_code.hpp"
#include "flower/repair.hpp"
#include "flower/sequences.hpp"

namespace flower {

// File formats: FR codes as JSON, incidence matrices as CSV, sequences as a
// two-line text format, construction parameters as JSON.

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw SpecError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline int require_int(const nlohmann::json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_number_integer())
    throw SpecError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace detail

// ---- FR code JSON: {"n":..,"theta":..,"nodes":[[..],..]} ----

inline nlohmann::json to_json(const FrCode& code) {
  nlohmann::json j;
  j["n"] = code.node_count();
  j["theta"] = code.packet_count();
  j["nodes"] = code.nodes();
  return j;
}

inline FrCode code_from_json(const nlohmann::json& j, bool strict = false) {
  if (!j.is_object()) throw SpecError("FR code JSON must be an object");
  const int n = detail::require_int(j, "n");
  const int theta = detail::require_int(j, "theta");
  const auto& nodes = detail::require_field(j, "nodes");
  if (!nodes.is_array())
    throw SpecError("field \"nodes\" must be an array of arrays");
  std::vector<std::vector<int>> lists;
  for (const auto& entry : nodes) {
    if (!entry.is_array())
      throw SpecError("field \"nodes\" must be an array of arrays");
    std::vector<int> list;
    for (const auto& v : entry) {
      if (!v.is_number_integer())
        throw SpecError("packet indices must be integers");
      list.push_back(v.get<int>());
    }
    lists.push_back(std::move(list));
  }
  if (static_cast<int>(lists.size()) != n)
    throw SpecError("\"n\" = " + std::to_string(n) + " but " +
                    std::to_string(lists.size()) + " node lists given");
  return FrCode(std::move(lists), theta, strict);
}

inline FrCode code_from_json_text(const std::string& text,
                                  bool strict = false) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("invalid JSON");
  return code_from_json(j, strict);
}

// ---- Incidence matrix CSV: header "node,P1..Ptheta", one row per node ----

inline std::string to_csv(const IncidenceMatrix& m) {
  std::string out = "node";
  for (int j = 1; j <= m.cols(); ++j) out += ",P" + std::to_string(j);
  out += "\n";
  for (int i = 1; i <= m.rows(); ++i) {
    out += std::to_string(i);
    for (int j = 1; j <= m.cols(); ++j) out += "," + std::to_string(m.at(i, j));
    out += "\n";
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

inline int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SpecError(std::string("cannot parse ") + what + " from \"" + s +
                    "\"");
  }
}

}  // namespace detail

inline IncidenceMatrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SpecError("empty CSV");
  const auto header = detail::split_csv_line(line);
  if (header.empty() || header.front() != "node")
    throw SpecError("CSV header must start with \"node\"");
  const int cols = static_cast<int>(header.size()) - 1;
  if (cols < 1) throw SpecError("CSV header lists no packet columns");
  for (int j = 1; j <= cols; ++j)
    if (header[static_cast<std::size_t>(j)] != "P" + std::to_string(j))
      throw SpecError("CSV header column " + std::to_string(j) +
                      " must be P" + std::to_string(j));
  std::vector<int> entries;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (static_cast<int>(fields.size()) != cols + 1)
      throw SpecError("CSV row " + std::to_string(rows + 1) + " has " +
                      std::to_string(fields.size() - 1) + " entries, expected " +
                      std::to_string(cols));
    ++rows;
    if (detail::parse_int(fields.front(), "node index") != rows)
      throw SpecError("CSV rows must be numbered 1..n in order");
    for (int j = 1; j <= cols; ++j)
      entries.push_back(
          detail::parse_int(fields[static_cast<std::size_t>(j)], "matrix entry"));
  }
  if (rows == 0) throw SpecError("CSV has no data rows");
  return IncidenceMatrix(rows, cols, std::move(entries));
}

/// The multisets a matrix encodes, packet indices ascending per node.
inline FrCode code_from_matrix(const IncidenceMatrix& m, bool strict = false) {
  std::vector<std::vector<int>> nodes(static_cast<std::size_t>(m.rows()));
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j)
      for (int c = 0; c < m.at(i, j); ++c)
        nodes[static_cast<std::size_t>(i) - 1].push_back(j);
  return FrCode(std::move(nodes), m.cols(), strict);
}

// ---- Sequence text: "n=<int> theta=<int>" then one comma-separated line --

namespace detail {

inline std::pair<int, int> parse_sequence_header(const std::string& line) {
  std::istringstream in(line);
  std::string a, b;
  if (!(in >> a >> b) || a.rfind("n=", 0) != 0 || b.rfind("theta=", 0) != 0)
    throw SpecError("sequence header must read \"n=<int> theta=<int>\"");
  return {parse_int(a.substr(2), "n"), parse_int(b.substr(6), "theta")};
}

inline std::vector<int> parse_sequence_body(std::istream& in) {
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) break;
  if (line.empty()) throw SpecError("sequence body is missing");
  std::vector<int> values;
  for (const std::string& f : split_csv_line(line))
    values.push_back(parse_int(f, "sequence term"));
  return values;
}

inline std::string sequence_header(int n, int theta) {
  return "n=" + std::to_string(n) + " theta=" + std::to_string(theta) + "\n";
}

template <typename T>
std::string join_csv(const std::vector<T>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(static_cast<int>(values[k]));
  }
  return out + "\n";
}

inline std::vector<std::uint8_t> to_bits(const std::vector<int>& values,
                                         const char* what) {
  std::vector<std::uint8_t> bits;
  for (int v : values) {
    if (v != 0 && v != 1)
      throw SpecError(std::string(what) + " entries must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(v));
  }
  return bits;
}

}  // namespace detail

inline std::string to_text(const DroppingSequence& d) {
  return detail::sequence_header(d.n, d.theta) + detail::join_csv(d.bits);
}

inline std::string to_text(const NodeSequence& s) {
  return detail::sequence_header(s.n, s.theta) + detail::join_csv(s.terms);
}

inline std::string to_text(const ChiSequence& x) {
  return detail::sequence_header(x.n, x.theta) + detail::join_csv(x.bits);
}

inline DroppingSequence dropping_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw SpecError("empty sequence file");
  const auto [n, theta] = detail::parse_sequence_header(header);
  DroppingSequence d{n, theta,
                     detail::to_bits(detail::parse_sequence_body(in),
                                     "dropping sequence")};
  check_valid(d);
  return d;
}

inline NodeSequence node_sequence_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw SpecError("empty sequence file");
  const auto [n, theta] = detail::parse_sequence_header(header);
  NodeSequence s{n, theta, detail::parse_sequence_body(in)};
  check_valid(s);
  return s;
}

inline ChiSequence chi_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw SpecError("empty sequence file");
  const auto [n, theta] = detail::parse_sequence_header(header);
  ChiSequence x{n, theta,
                detail::to_bits(detail::parse_sequence_body(in),
                                "characteristic sequence")};
  check_valid(x);
  return x;
}

// ---- Construction specs ----
//
//   {"kind":"single_ring","n":..,"theta":..,"subsets":[[..],..]}
//   {"kind":"multi_ring","n":..,"theta":..,"rho":..,
//    "f_in":{"const":k}|{"table":{"1":k,...}},"f_ex":...}

struct MultiRingSpec {
  int n = 0;
  int theta = 0;
  int rho = 0;
  JumpFunctions jumps;
};

using ConstructionSpec = std::variant<SubsetJumpPlan, MultiRingSpec>;

namespace detail {

inline JumpFn jump_from_json(const nlohmann::json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_object())
    throw SpecError(std::string("field \"") + key +
                    "\" must be {\"const\":k} or {\"table\":{..}}");
  if (v.contains("const")) {
    if (!v["const"].is_number_integer())
      throw SpecError(std::string(key) + ": \"const\" must be an integer");
    return JumpFn::constant(v["const"].get<int>());
  }
  if (v.contains("table")) {
    if (!v["table"].is_object())
      throw SpecError(std::string(key) + ": \"table\" must be an object");
    std::map<long long, int> table;
    for (const auto& [point, value] : v["table"].items()) {
      if (!value.is_number_integer())
        throw SpecError(std::string(key) + ": table values must be integers");
      table[parse_int(point, "jump table point")] = value.get<int>();
    }
    return JumpFn::table(std::move(table));
  }
  throw SpecError(std::string("field \"") + key +
                  "\" must carry \"const\" or \"table\"");
}

}  // namespace detail

inline ConstructionSpec construction_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("construction spec must be an object");
  const auto& kind = detail::require_field(j, "kind");
  if (!kind.is_string()) throw SpecError("field \"kind\" must be a string");
  if (kind == "single_ring") {
    SubsetJumpPlan plan;
    plan.n = detail::require_int(j, "n");
    plan.theta = detail::require_int(j, "theta");
    const auto& subsets = detail::require_field(j, "subsets");
    if (!subsets.is_array() || subsets.empty())
      throw SpecError("field \"subsets\" must be a nonempty array");
    for (const auto& entry : subsets) {
      if (!entry.is_array())
        throw SpecError("each subset must be an array of node indices");
      std::vector<int> subset;
      for (const auto& v : entry) {
        if (!v.is_number_integer())
          throw SpecError("node indices must be integers");
        subset.push_back(v.get<int>());
      }
      plan.subsets.push_back(std::move(subset));
    }
    return plan;
  }
  if (kind == "multi_ring") {
    MultiRingSpec spec;
    spec.n = detail::require_int(j, "n");
    spec.theta = detail::require_int(j, "theta");
    spec.rho = detail::require_int(j, "rho");
    spec.jumps.internal = detail::jump_from_json(j, "f_in");
    spec.jumps.external = detail::jump_from_json(j, "f_ex");
    return spec;
  }
  throw SpecError("unknown construction kind \"" +
                  kind.get<std::string>() + "\"");
}

inline std::string construction_kind(const ConstructionSpec& spec) {
  return std::holds_alternative<SubsetJumpPlan>(spec) ? "single_ring"
                                                      : "multi_ring";
}

inline FrCode construct(const ConstructionSpec& spec) {
  if (const auto* plan = std::get_if<SubsetJumpPlan>(&spec))
    return single_ring(*plan).code;
  const auto& mr = std::get<MultiRingSpec>(spec);
  return multi_ring(mr.n, mr.theta, mr.rho, mr.jumps);
}

// ---- Repair report rendering ----

inline nlohmann::json to_json(const RepairReport& report, const FrCode& code) {
  nlohmann::json j;
  j["n"] = code.node_count();
  j["theta"] = code.packet_count();
  j["system_repair_degree"] = report.system_degree;
  j["warnings"] = report.warnings;
  j["nodes"] = nlohmann::json::array();
  for (const NodeRepair& nr : report.nodes) {
    nlohmann::json entry;
    entry["node"] = nr.node;
    entry["packets"] = code.node(nr.node);
    entry["minimal_helper_sets"] = nr.minimal_helper_sets;
    entry["degree_set"] = nr.degree_set;
    entry["max_degree"] = nr.max_degree;
    if (nr.sdr_degree)
      entry["sdr_degree"] = *nr.sdr_degree;
    else
      entry["sdr_degree"] = nullptr;
    entry["unrepairable"] = nr.unrepairable;
    entry["approximate"] = nr.approximate;
    j["nodes"].push_back(std::move(entry));
  }
  return j;
}

/// Human-readable table: one row per node with its packets and repair
/// degree set.
inline std::string to_text(const RepairReport& report, const FrCode& code) {
  auto packet_list = [&](int i) {
    std::string s;
    for (int p : code.node(i)) s += (s.empty() ? "P" : " P") + std::to_string(p);
    return s.empty() ? std::string("-") : s;
  };
  auto degree_list = [](const NodeRepair& nr) {
    std::string s = "{";
    for (std::size_t k = 0; k < nr.degree_set.size(); ++k)
      s += (k ? "," : "") + std::to_string(nr.degree_set[k]);
    s += "}";
    if (nr.approximate) s += "~";
    return s;
  };
  std::size_t packets_width = std::string("Packets").size();
  for (const NodeRepair& nr : report.nodes)
    packets_width = std::max(packets_width, packet_list(nr.node).size());
  auto cell = [](const std::string& text, std::size_t width) {
    return text +
           std::string(text.size() < width ? width - text.size() : 1, ' ');
  };
  std::ostringstream out;
  out << cell("Node", 6) << cell("Packets", packets_width + 2)
      << cell("Degree set", 12) << "SDR\n";
  for (const NodeRepair& nr : report.nodes) {
    const std::string packets = packet_list(nr.node);
    out << cell("U" + std::to_string(nr.node), 6)
        << cell(packets, packets_width + 2) << cell(degree_list(nr), 12)
        << (nr.sdr_degree ? std::to_string(*nr.sdr_degree) : std::string("-"));
    if (!nr.unrepairable.empty()) {
      out << "  unrepairable:";
      for (int p : nr.unrepairable) out << " P" << p;
    }
    out << "\n";
  }
  out << "System repair degree d = " << report.system_degree << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace flower
