#include "boundinfo/json_io.hpp"

#include "boundinfo/errors.hpp"

#include <iomanip>
#include <sstream>

namespace boundinfo::io {

using dist::Entry;
using dist::JointDistribution;
using dist::RegisterSpec;

json dist_to_json(const JointDistribution& d) {
  json regs = json::array();
  for (const auto& r : d.registers())
    regs.push_back({{"name", r.name}, {"owner", r.owner},
                    {"alphabet", r.alphabet}});
  json entries = json::array();
  for (const auto& [o, p] : d.table()) {
    json outcome = json::array();
    for (std::size_t i = 0; i < o.size(); ++i)
      outcome.push_back(d.registers()[i].alphabet[o[i]]);
    entries.push_back({{"outcome", outcome}, {"p", rat_to_string(p)}});
  }
  return {{"registers", regs}, {"entries", entries}};
}

JointDistribution dist_from_json(const json& j) {
  std::vector<RegisterSpec> regs;
  for (const auto& r : j.at("registers"))
    regs.push_back({r.at("name").get<std::string>(),
                    r.at("alphabet").get<std::vector<std::string>>(),
                    r.at("owner").get<std::string>()});
  std::vector<Entry> entries;
  for (const auto& e : j.at("entries"))
    entries.push_back({e.at("outcome").get<std::vector<std::string>>(),
                       rat_from_string(e.at("p").get<std::string>())});
  return make_distribution(regs, entries);
}

std::string dist_to_csv(const JointDistribution& d) {
  std::ostringstream out;
  bool first = true;
  for (const auto& r : d.registers()) {
    out << (first ? "" : ",") << r.name;
    first = false;
  }
  out << ",p\n";
  for (const auto& [o, p] : d.table()) {
    for (std::size_t i = 0; i < o.size(); ++i)
      out << d.registers()[i].alphabet[o[i]] << ",";
    out << rat_to_string(p) << "\n";
  }
  return out.str();
}

std::string dist_to_text(const JointDistribution& d) {
  std::vector<std::size_t> widths;
  for (const auto& r : d.registers()) {
    std::size_t w = r.name.size();
    for (const auto& s : r.alphabet) w = std::max(w, s.size());
    widths.push_back(w);
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < d.registers().size(); ++i)
    out << std::setw(static_cast<int>(widths[i]) + 2)
        << d.registers()[i].name;
  out << "  p\n";
  for (const auto& [o, p] : d.table()) {
    for (std::size_t i = 0; i < o.size(); ++i)
      out << std::setw(static_cast<int>(widths[i]) + 2)
          << d.registers()[i].alphabet[o[i]];
    out << "  " << rat_to_string(p) << "\n";
  }
  return out.str();
}

json channel_to_json(const measures::EveChannel& ch) {
  json matrix = json::array();
  for (const auto& row : ch.matrix) {
    json r = json::array();
    for (const auto& p : row) r.push_back(rat_to_string(p));
    matrix.push_back(r);
  }
  return {{"inputs", ch.inputs}, {"outputs", ch.outputs}, {"matrix", matrix}};
}

measures::EveChannel channel_from_json(const json& j) {
  measures::EveChannel ch;
  ch.inputs = j.at("inputs").get<std::vector<std::string>>();
  ch.outputs = j.at("outputs").get<std::vector<std::string>>();
  for (const auto& row : j.at("matrix")) {
    std::vector<Rat> r;
    for (const auto& p : row) r.push_back(rat_from_string(p.get<std::string>()));
    ch.matrix.push_back(std::move(r));
  }
  ch.validate();
  return ch;
}

json measure_report(const measures::MeasureValue& v) {
  return {{"value", v.value}, {"exact", v.exact_zero}};
}

json search_report(const measures::SearchResult& r) {
  json out = measure_report(r.value);
  out["witness"] = channel_to_json(r.witness);
  return out;
}

json state_to_json(const quantum::DensityOperator& rho) {
  json labels = json::array();
  for (const auto& l : rho.labels())
    labels.push_back({{"name", l.name}, {"dim", l.dim}});
  json re = json::array(), im = json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    json rr = json::array(), ri = json::array();
    for (int c = 0; c < rho.dim(); ++c) {
      rr.push_back(rho.matrix()(r, c).real());
      ri.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"labels", labels}, {"re", re}, {"im", im}};
}

quantum::DensityOperator state_from_json(const json& j) {
  std::vector<quantum::Subsystem> labels;
  for (const auto& l : j.at("labels"))
    labels.push_back({l.at("name").get<std::string>(), l.at("dim").get<int>()});
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const int n = static_cast<int>(re.size());
  quantum::Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
  return {std::move(labels), std::move(m)};
}

json transcript_to_json(const proto::Transcript& t) {
  json steps = json::array();
  for (const auto& s : t.steps())
    steps.push_back({{"actor", s.actor}, {"op", s.description},
                     {"announced", s.announced}});
  json snaps = json::object();
  for (const auto& [name, d] : t.snapshots()) snaps[name] = dist_to_json(d);
  return {{"steps", steps}, {"snapshots", snaps}};
}

}  // namespace boundinfo::io
