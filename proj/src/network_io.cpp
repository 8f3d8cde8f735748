#include "bcond/network_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bcond {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "syntax error at byte " << e.byte << ": " << e.what();
    throw ParseError(os.str());
  }
}

[[noreturn]] void semantic_error(const std::string& msg) {
  throw ParseError("semantic error: " + msg);
}

}  // namespace

BeliefNetwork parse_network_lenient(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("variables") ||
      !doc.contains("tables")) {
    semantic_error("expected object with 'variables' and 'tables'");
  }

  std::vector<Variable> vars;
  for (const auto& jv : doc["variables"]) {
    Variable v;
    v.name = jv.at("name").get<std::string>();
    for (const auto& s : jv.at("states")) {
      v.states.push_back(s.get<std::string>());
    }
    vars.push_back(std::move(v));
  }

  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!index.emplace(vars[i].name, static_cast<int>(i)).second) {
      semantic_error("duplicate variable '" + vars[i].name + "'");
    }
  }

  std::vector<ConditionalTable> tables(vars.size());
  std::vector<bool> has_table(vars.size(), false);
  for (const auto& jt : doc["tables"]) {
    const std::string child = jt.at("child").get<std::string>();
    auto cit = index.find(child);
    if (cit == index.end()) semantic_error("unknown child '" + child + "'");
    ConditionalTable t;
    t.child = cit->second;
    for (const auto& jp : jt.at("parents")) {
      const std::string pname = jp.get<std::string>();
      auto pit = index.find(pname);
      if (pit == index.end()) {
        semantic_error("unknown parent '" + pname + "' of '" + child + "'");
      }
      t.parents.push_back(pit->second);
    }
    for (const auto& jr : jt.at("rows")) {
      std::vector<double> row;
      for (const auto& x : jr) row.push_back(x.get<double>());
      t.rows.push_back(std::move(row));
    }
    if (has_table[t.child]) {
      semantic_error("duplicate table for '" + child + "'");
    }
    has_table[t.child] = true;
    tables[t.child] = std::move(t);
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!has_table[v]) semantic_error("missing table for '" + vars[v].name + "'");
  }

  return BeliefNetwork(std::move(vars), std::move(tables));
}

BeliefNetwork parse_network(const std::string& text) {
  BeliefNetwork net = parse_network_lenient(text);
  auto problems = validate(net);
  if (!problems.empty()) semantic_error(problems.front());
  return net;
}

std::string serialize_network(const BeliefNetwork& net) {
  json doc;
  doc["variables"] = json::array();
  for (int v = 0; v < net.size(); ++v) {
    json jv;
    jv["name"] = net.variable(v).name;
    jv["states"] = net.variable(v).states;
    doc["variables"].push_back(std::move(jv));
  }
  doc["tables"] = json::array();
  for (int v = 0; v < net.size(); ++v) {
    const auto& t = net.table(v);
    json jt;
    jt["child"] = net.variable(v).name;
    json parents = json::array();
    for (int p : t.parents) parents.push_back(net.variable(p).name);
    jt["parents"] = std::move(parents);
    jt["rows"] = t.rows;
    doc["tables"].push_back(std::move(jt));
  }
  return doc.dump(2) + "\n";
}

EvidenceStream parse_evidence(const std::string& text,
                              const BeliefNetwork& net) {
  json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("observations")) {
    semantic_error("expected object with 'observations'");
  }
  EvidenceStream stream;
  std::int64_t last_step = 0;
  for (const auto& jo : doc["observations"]) {
    TimedEvidence item;
    item.arrival_step = jo.at("at_step").get<std::int64_t>();
    if (item.arrival_step < 0) semantic_error("negative at_step");
    if (item.arrival_step < last_step) {
      semantic_error("arrival steps must be non-decreasing");
    }
    last_step = item.arrival_step;
    for (const auto& [name, label] : jo.at("set").items()) {
      auto idx = net.index_of(name);
      if (!idx) semantic_error("unknown variable '" + name + "'");
      int state = net.require_state(*idx, label.get<std::string>());
      auto [it, inserted] = item.evidence.assignments.emplace(*idx, state);
      (void)it;
      if (!inserted) semantic_error("variable '" + name + "' observed twice");
    }
    stream.items.push_back(std::move(item));
  }
  return stream;
}

std::string serialize_evidence(const EvidenceStream& stream,
                               const BeliefNetwork& net) {
  json doc;
  doc["observations"] = json::array();
  for (const auto& item : stream.items) {
    json jo;
    jo["at_step"] = item.arrival_step;
    json set = json::object();
    for (const auto& [v, s] : item.evidence.assignments) {
      set[net.variable(v).name] = net.variable(v).states[s];
    }
    jo["set"] = std::move(set);
    doc["observations"].push_back(std::move(jo));
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
}

BeliefNetwork load_network_file(const std::string& path) {
  return parse_network(read_text_file(path));
}

EvidenceStream load_evidence_file(const std::string& path,
                                  const BeliefNetwork& net) {
  return parse_evidence(read_text_file(path), net);
}

}  // namespace bcond
