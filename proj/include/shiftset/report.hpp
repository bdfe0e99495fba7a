#pragma once

#include <string>

#include <json.hpp>

#include "shiftset/asymptotics.hpp"
#include "shiftset/deltaf.hpp"
#include "shiftset/lemma.hpp"
#include "shiftset/recurrence.hpp"

namespace shiftset {

// One JSON object per result, emitted one-per-line in json-lines mode.
// Every record carries a "type" field; keys are serialized in sorted
// order, so identical inputs give byte-identical lines.

std::string rational_string(const mpq_class& q);  // "p/q", or "p" when q = 1

nlohmann::json set_record(const std::string& op, const std::string& source_spec,
                          const NatSet& result);

// Certificates embed the A spec string so a later replay can rebuild A
// and re-check the witnesses without trusting the producer.
nlohmann::json certificate_record(const Certificate& cert, const std::string& a_spec);
nlohmann::json search_record(const SearchOutcome& outcome, const std::string& a_spec,
                             const std::string& b_spec, uint64_t k, uint64_t h);

nlohmann::json lemma_record(const LemmaReport& report);
nlohmann::json witness_record(const DeltaFWitness& witness);
nlohmann::json partition_record(const PartitionExperiment& experiment);
nlohmann::json gate_record(const GateReport& report);

}  // namespace shiftset
