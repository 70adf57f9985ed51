// flr: command-line front end for FR-code construction, sequence
// conversion, repair analysis, and DRESS storage simulation.
//
// Exit codes: 0 success, 1 domain failure (unrepairable node, insufficient
// data, ...), 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <flower/flower.hpp>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw flower::SpecError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  const std::string text = read_file(path);
  return {text.begin(), text.end()};
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw flower::SpecError("cannot write " + out_path);
  out << content;
}

json parse_json(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw flower::SpecError("invalid JSON in " + path);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Accepts either an FR code object or a construction spec.
flower::FrCode load_code(const std::string& path) {
  const json j = parse_json(path);
  if (j.is_object() && j.contains("kind"))
    return flower::construct(flower::construction_from_json(j));
  return flower::code_from_json(j);
}

void enforce_strict(const flower::FrCode& code) {
  const auto report = flower::validate(code, /*strict=*/true);
  if (report.ok()) return;
  std::string what = "strict validation failed:";
  for (const auto& v : report.violations) what += " " + v.message + ";";
  throw flower::DomainError(what);
}

int run_construct(const std::string& spec_path, const std::string& kind,
                  const std::string& out_path) {
  const auto spec = flower::construction_from_json(parse_json(spec_path));
  if (!kind.empty() && kind != flower::construction_kind(spec))
    throw flower::SpecError("--kind " + kind + " does not match spec kind " +
                            flower::construction_kind(spec));
  write_output(out_path, dump(flower::to_json(flower::construct(spec))));
  return 0;
}

int run_convert(const std::string& from, const std::string& to,
                const std::string& in_path, const std::string& out_path,
                bool strict) {
  const std::string input = read_file(in_path);
  auto emit_code = [&](const flower::FrCode& code) {
    if (strict) enforce_strict(code);
    write_output(out_path, dump(flower::to_json(code)));
  };
  auto emit_matrix = [&](const flower::IncidenceMatrix& m) {
    write_output(out_path, flower::to_csv(m));
  };

  if (from == "dropping") {
    const auto d = flower::dropping_from_text(input);
    if (to == "dropping") {
      write_output(out_path, flower::to_text(flower::canonicalize_dropping(d)));
      return 0;
    }
    if (to == "node") {
      write_output(out_path, flower::to_text(flower::dropping_to_node(d)));
      return 0;
    }
    if (to == "code") {
      emit_code(flower::decode_dropping(d));
      return 0;
    }
    if (to == "matrix") {
      emit_matrix(flower::incidence_from_dropping(d));
      return 0;
    }
  } else if (from == "node") {
    const auto s = flower::node_sequence_from_text(input);
    if (to == "dropping") {
      write_output(out_path, flower::to_text(flower::node_to_dropping(s)));
      return 0;
    }
    if (to == "code") {
      emit_code(flower::decode_node(s));
      return 0;
    }
    if (to == "matrix") {
      emit_matrix(flower::incidence_matrix(flower::decode_node(s)));
      return 0;
    }
  } else if (from == "chi") {
    const auto x = flower::chi_from_text(input);
    if (to == "code") {
      emit_code(flower::decode_chi(x));
      return 0;
    }
    if (to == "matrix") {
      emit_matrix(flower::incidence_matrix(flower::decode_chi(x)));
      return 0;
    }
  } else if (from == "code") {
    const auto code = flower::code_from_json_text(input);
    if (to == "code") {
      emit_code(code);
      return 0;
    }
    if (to == "matrix") {
      emit_matrix(flower::incidence_matrix(code));
      return 0;
    }
  } else if (from == "matrix") {
    const auto m = flower::matrix_from_csv(input);
    if (to == "code") {
      emit_code(flower::code_from_matrix(m));
      return 0;
    }
  } else {
    throw flower::SpecError("unknown input form \"" + from + "\"");
  }
  throw flower::SpecError("unsupported conversion " + from + " -> " + to +
                          " (sequences are not unique for a given code)");
}

int run_analyze(const std::string& code_path, const std::string& format,
                const std::string& out_path) {
  const auto code = load_code(code_path);
  const auto report = flower::analyze_repair(code);
  if (format == "text")
    write_output(out_path, flower::to_text(report, code));
  else
    write_output(out_path, dump(flower::to_json(report, code)));
  return 0;
}

int run_export(const std::string& code_path, const std::string& out_path) {
  write_output(out_path,
               flower::to_csv(flower::incidence_matrix(load_code(code_path))));
  return 0;
}

int run_simulate(const std::string& code_path, const std::string& file_path,
                 int B, int fail, const std::string& strategy,
                 const std::string& snapshot_path,
                 const std::string& out_path) {
  const auto code = load_code(code_path);
  const auto file = flower::make_file_blob(read_bytes(file_path), B);
  const flower::DressSystem sys(code, file);

  json transcript;
  transcript["n"] = code.node_count();
  transcript["theta"] = code.packet_count();
  transcript["B"] = B;
  transcript["stripes"] = file.stripes();
  transcript["original_length"] = file.original_length;
  bool all_pass = true;
  auto check = [&](const std::string& name, bool pass) {
    transcript["checks"].push_back(json{{"name", name}, {"pass", pass}});
    all_pass = all_pass && pass;
  };

  if (code.node_count() <= flower::kExactRepairNodeLimit)
    transcript["k_star"] = flower::min_reconstruction_degree(sys);
  else
    transcript["k_star"] = nullptr;

  {
    std::vector<int> everyone;
    for (int i = 1; i <= code.node_count(); ++i) everyone.push_back(i);
    const auto collected = flower::collect(sys, everyone);
    check("collect_all_nodes_roundtrip",
          collected.original() == file.original());
  }

  if (fail > 0) {
    const auto strat = strategy == "sdr" ? flower::RepairStrategy::Sdr
                                         : flower::RepairStrategy::MinContact;
    const auto result = flower::repair_node(sys, fail, strat);
    json repair;
    repair["failed_node"] = fail;
    repair["strategy"] = strategy;
    repair["helpers"] = result.helpers;
    repair["blocks_transferred"] = result.blocks_transferred;
    const bool identical = result.restored == sys.node_contents(fail);
    repair["restored_identical"] = identical;
    transcript["repair"] = std::move(repair);
    check("repair_restores_exactly", identical);
  } else {
    transcript["repair"] = nullptr;
  }

  if (!snapshot_path.empty()) {
    {
      std::ofstream out(snapshot_path, std::ios::binary);
      if (!out) throw flower::SpecError("cannot write " + snapshot_path);
      flower::save_snapshot(sys, out);
    }
    std::ifstream in(snapshot_path, std::ios::binary);
    const auto reloaded = flower::load_snapshot(in, code);
    bool same = true;
    for (int j = 1; j <= code.packet_count() && same; ++j)
      same = reloaded.packet_block(j) == sys.packet_block(j);
    check("snapshot_roundtrip", same);
  }

  write_output(out_path, dump(transcript));
  if (!all_pass) throw flower::IntegrityError("one or more checks failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "FR code toolkit: Flower-code construction, sequence conversion, "
      "repair analysis, and DRESS storage simulation"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed,
                 "Seed for randomized sweeps (reserved; current subcommands "
                 "are deterministic)");

  std::string spec_path, kind, out_path;
  auto* construct = app.add_subcommand(
      "construct", "Build an FR code from a construction spec (JSON)");
  construct->add_option("--spec", spec_path, "Construction spec file")
      ->required();
  construct->add_option("--kind", kind,
                        "Expected spec kind (single_ring|multi_ring)");
  construct->add_option("--out", out_path, "Output path (default stdout)");

  std::string from, to, in_path, conv_out;
  bool strict = false;
  auto* convert = app.add_subcommand(
      "convert", "Convert between dropping/node/chi sequences, codes and "
                 "incidence matrices");
  convert->add_option("--from", from, "Input form: dropping|node|chi|code|matrix")
      ->required();
  convert->add_option("--to", to, "Output form: dropping|node|code|matrix")
      ->required();
  convert->add_option("--in", in_path, "Input file")->required();
  convert->add_option("--out", conv_out, "Output path (default stdout)");
  convert->add_flag("--strict", strict,
                    "Require every packet stored and every node nonempty");

  std::string analyze_code, format = "json", analyze_out;
  auto* analyze =
      app.add_subcommand("analyze", "Repair-degree analysis of an FR code");
  analyze->add_option("--code", analyze_code, "FR code or construction spec")
      ->required();
  analyze->add_option("--format", format, "Output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--out", analyze_out, "Output path (default stdout)");

  std::string sim_code, sim_file, sim_strategy = "min_contact", sim_snapshot,
              sim_out;
  int sim_B = 0, sim_fail = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "Store an MDS-encoded file on an FR-coded system, "
                  "optionally fail and repair a node");
  simulate->add_option("--code", sim_code, "FR code or construction spec")
      ->required();
  simulate->add_option("--file", sim_file, "Payload file")->required();
  simulate->add_option("--B", sim_B, "Message symbols per stripe")->required();
  simulate->add_option("--fail", sim_fail, "Node to fail and repair");
  simulate->add_option("--strategy", sim_strategy, "Repair strategy")
      ->check(CLI::IsMember({"min_contact", "sdr"}));
  simulate->add_option("--snapshot", sim_snapshot,
                       "Write a stored-system snapshot here");
  simulate->add_option("--out", sim_out, "Transcript path (default stdout)");

  std::string export_code, export_out;
  auto* exp = app.add_subcommand("export",
                                 "Write a code's incidence matrix as CSV");
  exp->add_option("--code", export_code, "FR code or construction spec")
      ->required();
  exp->add_option("--out", export_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (construct->parsed())
      return run_construct(spec_path, kind, out_path);
    if (convert->parsed())
      return run_convert(from, to, in_path, conv_out, strict);
    if (analyze->parsed())
      return run_analyze(analyze_code, format, analyze_out);
    if (simulate->parsed())
      return run_simulate(sim_code, sim_file, sim_B, sim_fail, sim_strategy,
                          sim_snapshot, sim_out);
    if (exp->parsed()) return run_export(export_code, export_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const flower::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
