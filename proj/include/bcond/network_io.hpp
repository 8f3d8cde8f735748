#pragma once

#include <string>

#include "bcond/network.hpp"

namespace bcond {

// Network file schema (UTF-8 JSON):
//   {"variables":[{"name":str,"states":[str,...]}],
//    "tables":[{"child":str,"parents":[str,...],"rows":[[num,...],...]}]}
BeliefNetwork parse_network(const std::string& text);
// Builds the network without the validity gate so `validate` can report
// every problem; still throws ParseError for unrepresentable input.
BeliefNetwork parse_network_lenient(const std::string& text);
std::string serialize_network(const BeliefNetwork& net);

// Evidence file schema:
//   {"observations":[{"at_step":int,"set":{varname:stateLabel,...}},...]}
EvidenceStream parse_evidence(const std::string& text,
                              const BeliefNetwork& net);
std::string serialize_evidence(const EvidenceStream& stream,
                               const BeliefNetwork& net);

BeliefNetwork load_network_file(const std::string& path);
EvidenceStream load_evidence_file(const std::string& path,
                                  const BeliefNetwork& net);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace bcond
