#include "boundinfo/dist.hpp"
#include "boundinfo/errors.hpp"
#include "boundinfo/json_io.hpp"
#include "boundinfo/measures.hpp"
#include "boundinfo/tables.hpp"
#include "boundinfo/protocols.hpp"
#include "boundinfo/quantum.hpp"
#include "../src/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using boundinfo::Rat;
using boundinfo::dist::JointDistribution;
namespace io = boundinfo::io;
namespace meas = boundinfo::measures;
namespace proto = boundinfo::proto;
namespace qm = boundinfo::quantum;
namespace tables = boundinfo::tables;

int log_level() {
  const char* v = std::getenv("BOUNDINFO_LOG");
  return v ? std::atoi(v) : 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw boundinfo::Error("cannot open " + out_path);
    f << text;
  }
}

JointDistribution table_by_name(const std::string& name) {
  if (name == "smolin") return tables::smolin_table();
  if (name == "unlock") return tables::unlock_table();
  if (name == "prob1") return tables::prob1_table();
  if (name == "prob2") return tables::prob2_table();
  if (name == "sprob3" || name == "appendixB") return tables::sprob3_table();
  if (name == "dprob") return proto::symmetrized_five();
  if (name == "csec") return tables::csec_table();
  if (name == "csec2") return tables::csec2_table();
  if (name == "appendixA-1") return tables::compact_table(1);
  if (name == "appendixA-2") return tables::compact_table(2);
  throw boundinfo::UnknownTableError("unknown table: " + name);
}

std::string render_table(const JointDistribution& d, const std::string& fmt) {
  if (fmt == "json") return io::dist_to_json(d).dump(2);
  if (fmt == "csv") return io::dist_to_csv(d);
  return io::dist_to_text(d);
}

std::set<std::string> split_names(const std::string& csv) {
  std::set<std::string> out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.insert(tok);
  return out;
}

struct Options {
  std::string format = "text";
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t search_budget = 1'000'000;
  std::string out;
};

int cmd_tables(const std::string& name, const Options& opt) {
  emit(render_table(table_by_name(name), opt.format), opt.out);
  return 0;
}

int cmd_measures(const std::string& table, const std::string& x,
                 const std::string& y, const std::string& z, bool intrinsic,
                 const std::string& strategy, const Options& opt) {
  auto d = table_by_name(table);
  auto xs = split_names(x), ys = split_names(y), zs = split_names(z);

  nlohmann::json report;
  std::ostringstream text;
  bool ok = true;

  auto cmi = meas::conditional_mutual_information(d, xs, ys, zs);
  report["conditional_mutual_information"] = io::measure_report(cmi);
  text << "I(" << x << ":" << y << (z.empty() ? "" : "|" + z)
       << ") = " << cmi.value << (cmi.exact_zero ? " (exact zero)" : "")
       << "\n";

  if (intrinsic) {
    std::vector<std::string> eve_regs = d.eve_view();
    meas::SearchConfig cfg;
    cfg.budget = opt.search_budget;
    cfg.seed = opt.seed;
    cfg.strategy = strategy == "refined"
                       ? meas::SearchStrategy::kRefined
                       : meas::SearchStrategy::kDeterministicExhaustive;
    auto r = meas::intrinsic_information_search(d, xs, ys, eve_regs, cfg);
    report["intrinsic_upper_bound"] = io::search_report(r);
    text << "min_channel I(" << x << ":" << y << "|Ebar) <= " << r.value.value
         << (r.value.exact_zero ? " (exact zero)" : "") << "\n";
  }

  emit(opt.format == "json" ? report.dump(2) : text.str(), opt.out);
  return ok ? 0 : 1;
}

struct ProtocolReport {
  std::ostringstream text;
  nlohmann::json checks = nlohmann::json::array();
  bool ok = true;

  void check(const std::string& label, bool pass) {
    text << label << (pass ? " PASS" : " FAIL") << "\n";
    checks.push_back({{"check", label}, {"pass", pass}});
    ok &= pass;
  }
  void match(const std::string& label, bool m) {
    text << label << (m ? " MATCH" : " MISMATCH") << "\n";
    checks.push_back({{"check", label}, {"pass", m}});
    ok &= m;
  }
};

bool checkpoint(const proto::Transcript& t, const std::string& name,
                const JointDistribution& expected,
                const std::map<std::string, std::string>& ren) {
  std::set<std::string> keep;
  for (const auto& r : expected.registers()) {
    std::string pre = r.name;
    for (const auto& [from, to] : ren)
      if (to == r.name) pre = from;
    keep.insert(pre);
  }
  auto m = boundinfo::dist::marginalize(t.snapshot(name), keep);
  if (!ren.empty()) m = boundinfo::dist::rename(m, ren);
  return boundinfo::dist::matches_marginal(m, expected);
}

int cmd_protocol(const std::string& name, const Options& opt) {
  ProtocolReport rep;
  nlohmann::json extra;

  if (name == "unlock") {
    auto r = proto::unlock(tables::smolin_table(), {"B", "D"}, {"A", "C"});
    rep.match("table-8 (equal branch)",
              boundinfo::dist::table_equal(r.branches[0].dist,
                                           tables::unlock_table()));
    for (const auto& b : r.branches) {
      rep.check("acceptance(" + b.label + ")=1/2",
                b.acceptance == Rat(1, 2));
      rep.check("sbit(" + b.key1 + "," + b.key2 + ") [" + b.label + "]",
                b.sbit);
    }
    extra["transcript"] = io::transcript_to_json(r.transcript);
  } else if (name == "superactivate") {
    auto r = proto::superactivate_pair();
    rep.match("table-10", checkpoint(r.transcript, "table-10",
                                     tables::prob1_table(), {}));
    rep.match("table-11", checkpoint(r.transcript, "table-11",
                                     tables::prob2_table(), {}));
    rep.match("table-12", checkpoint(r.transcript, "table-12",
                                     tables::sprob3_table(), {}));
    rep.check("sbit(" + r.key1 + "," + r.key2 + ")", r.sbit);
    extra["transcript"] = io::transcript_to_json(r.transcript);
  } else if (name == "five-copy") {
    auto d = proto::symmetrized_five();
    const std::vector<std::string> parties{"A", "B", "C", "D", "E"};
    for (std::size_t i = 0; i < parties.size(); ++i)
      for (std::size_t j = i + 1; j < parties.size(); ++j) {
        auto r = proto::distill_pair_from_five(d, {parties[i], parties[j]});
        rep.check("sbit(" + parties[i] + "," + parties[j] + ")", r.sbit);
      }
  } else if (name == "distribute-secret") {
    auto r = proto::distribute_secret();
    rep.match("table-17",
              checkpoint(r.transcript, "table-17", tables::csec_table(),
                         {{"pA", "A"}, {"pB", "B"}, {"pC", "C"}}));
    rep.match("table-18",
              checkpoint(r.transcript, "table-18", tables::csec2_table(),
                         {{"pA", "A"}, {"pB", "B"}, {"pC", "C"},
                          {"Dout", "D"}}));
    rep.check("David bit == s in all branches", r.newcomer_matches_secret);
    rep.check("I(s:EveView)=0 exact", r.eve_independent);
    rep.check("multipartite sbit", r.multipartite_sbit);
    extra["transcript"] = io::transcript_to_json(r.transcript);
  } else if (name == "quantum-unlock") {
    auto r = qm::quantum_unlock();
    rep.check("4/4 branches fidelity 1 within tolerance",
              r.worst_fidelity > 1.0 - opt.tolerance);
    extra["worst_fidelity"] = r.worst_fidelity;
  } else if (name == "quantum-superactivate") {
    auto r = qm::quantum_superactivation();
    rep.match("intermediate 4-qubit state",
              r.checkpoint_distance < opt.tolerance);
    rep.check("64/64 branches fidelity 1 within tolerance",
              r.worst_fidelity > 1.0 - opt.tolerance);
    rep.check("announced bits leave an sbit",
              boundinfo::dist::is_sbit(r.announced_key_distribution, "D",
                                       "E"));
    extra["worst_fidelity"] = r.worst_fidelity;
    extra["checkpoint_distance"] = r.checkpoint_distance;
  } else if (name == "ghz-extend") {
    auto r = qm::ghz_extend();
    std::ostringstream label;
    label << r.branches.size() << "/16 branches fidelity "
          << std::fixed << std::setprecision(9) << r.worst_fidelity;
    rep.check(label.str(), r.branches.size() == 16 &&
                               r.worst_fidelity > 1.0 - opt.tolerance);
    rep.check("outcome distribution uniform 1/16", r.uniform_sixteenth);
  } else {
    throw boundinfo::UnknownProtocolError("unknown protocol: " + name);
  }

  if (opt.format == "json") {
    nlohmann::json j{{"protocol", name}, {"checks", rep.checks},
                     {"pass", rep.ok}};
    if (log_level() > 0) j["detail"] = extra;
    emit(j.dump(2), opt.out);
  } else {
    std::string text = rep.text.str();
    if (log_level() > 0 && extra.contains("transcript"))
      text += "transcript: " + extra["transcript"].dump(2) + "\n";
    emit(text, opt.out);
  }
  return rep.ok ? 0 : 1;
}

int cmd_verify(const Options& opt) {
  auto results = boundinfo::verify::run_acceptance(opt.tolerance, opt.seed);
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    all &= r.pass;
    arr.push_back({{"criterion", r.id},
                   {"name", r.name},
                   {"expected", r.expected},
                   {"observed", r.observed},
                   {"pass", r.pass}});
    text << "criterion " << r.id << " [" << r.name << "]: "
         << (r.pass ? "PASS" : "FAIL (" + r.observed + ")") << "\n";
  }
  emit(opt.format == "json" ? arr.dump(2) : text.str(), opt.out);
  return all ? 0 : 1;
}

int cmd_export(const std::string& target, const Options& opt) {
  if (target == "smolin-state") {
    emit(io::state_to_json(qm::smolin_state()).dump(2), opt.out);
    return 0;
  }
  emit(render_table(table_by_name(target),
                    opt.format == "text" ? "json" : opt.format),
       opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bound-information toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after a subcommand

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--tolerance", opt.tolerance, "numerical tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for randomized search/tests");
  app.add_option("--search-budget", opt.search_budget,
                 "cap on exhaustive channel search")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "write output to a file");

  std::string table_name, protocol_name, export_target;
  auto* tables_cmd = app.add_subcommand("tables", "print a reference table");
  tables_cmd->add_option("name", table_name)->required();

  std::string mx = "A,C", my = "B,D", mz, strategy = "exhaustive";
  bool intrinsic = false;
  auto* measures_cmd =
      app.add_subcommand("measures", "information measures on a table");
  measures_cmd->add_option("name", table_name)->required();
  measures_cmd->add_option("--x", mx, "first register set (comma list)");
  measures_cmd->add_option("--y", my, "second register set");
  measures_cmd->add_option("--z", mz, "conditioning set");
  measures_cmd->add_flag("--intrinsic", intrinsic,
                         "also minimize over Eve channels");
  measures_cmd->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"exhaustive", "refined"}));

  auto* protocol_cmd = app.add_subcommand("protocol", "run a protocol driver");
  protocol_cmd->add_option("name", protocol_name)->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "run the full acceptance suite");

  auto* export_cmd = app.add_subcommand("export", "serialize a table/state");
  export_cmd->add_option("target", export_target)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tables_cmd->parsed()) return cmd_tables(table_name, opt);
    if (measures_cmd->parsed())
      return cmd_measures(table_name, mx, my, mz, intrinsic, strategy, opt);
    if (protocol_cmd->parsed()) return cmd_protocol(protocol_name, opt);
    if (verify_cmd->parsed()) return cmd_verify(opt);
    if (export_cmd->parsed()) return cmd_export(export_target, opt);
  } catch (const boundinfo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
