#include "shiftset/report.hpp"

namespace shiftset {

namespace {

nlohmann::json elements_json(const NatSet& s) { return nlohmann::json(s.elements()); }

nlohmann::json entries_json(const HTuple& t) {
    return nlohmann::json(std::vector<uint64_t>(t.entries().begin(), t.entries().end()));
}

}  // namespace

std::string rational_string(const mpq_class& q) { return q.get_str(); }

nlohmann::json set_record(const std::string& op, const std::string& source_spec,
                          const NatSet& result) {
    return {
        {"type", "set"},
        {"op", op},
        {"source", source_spec},
        {"capacity", result.capacity()},
        {"size", result.size()},
        {"elements", elements_json(result)},
    };
}

nlohmann::json certificate_record(const Certificate& cert, const std::string& a_spec) {
    return {
        {"type", "certificate"},
        {"A", a_spec},
        {"tuple", entries_json(cert.tuple)},
        {"witnesses", cert.witnesses},
        {"k", cert.k},
        {"intersection_size", cert.intersection_size},
    };
}

nlohmann::json search_record(const SearchOutcome& outcome, const std::string& a_spec,
                             const std::string& b_spec, uint64_t k, uint64_t h) {
    return {
        {"type", "search-summary"},
        {"A", a_spec},
        {"B", b_spec},
        {"k", k},
        {"h", h},
        {"found", outcome.certificates.size()},
        {"prefixes_examined", outcome.prefixes_examined},
        {"budget_exhausted", outcome.budget_exhausted},
    };
}

nlohmann::json lemma_record(const LemmaReport& report) {
    return {
        {"type", "lemma-report"},
        {"n", report.n},
        {"m", report.m},
        {"k", report.k},
        {"a_max", report.a_max},
        {"b_max", report.b_max},
        {"H0", entries_json(report.H0)},
        {"Gamma", report.Gamma},
        {"Z", elements_json(report.Z)},
        {"Z_size", report.Z.size()},
        {"intersection", elements_json(report.intersection)},
        {"exact_bound", rational_string(report.exact_bound)},
        {"exact_bound_value", report.exact_bound.get_d()},
        {"L", report.L},
        {"root_bound", report.root_bound},
    };
}

nlohmann::json witness_record(const DeltaFWitness& witness) {
    return {
        {"type", "deltaf-witness"},
        {"S", witness.S_id},
        {"h", witness.h},
        {"Z", entries_json(witness.Z)},
    };
}

nlohmann::json partition_record(const PartitionExperiment& experiment) {
    nlohmann::json coloring = nlohmann::json::object();
    for (const auto& [diff, piece] : experiment.coloring.piece_of) {
        coloring[std::to_string(diff)] = piece;
    }
    nlohmann::json record = {
        {"type", "partition-experiment"},
        {"X", entries_json(experiment.X)},
        {"pieces", experiment.coloring.pieces},
        {"coloring", std::move(coloring)},
        {"k", experiment.target_k},
        {"found", experiment.result.has_value()},
    };
    if (experiment.result) {
        record["piece"] = experiment.result->first;
        record["Y"] = entries_json(experiment.result->second);
    }
    return record;
}

nlohmann::json gate_record(const GateReport& report) {
    nlohmann::json diagnostics = nlohmann::json::object();
    for (const auto& [name, series] : report.diagnostics) diagnostics[name] = series;
    return {
        {"type", "gate-report"},
        {"kind", report.kind},
        {"k", report.k},
        {"h", report.h},
        {"N", report.N},
        {"k0_list", report.k0_list},
        {"series", report.series},
        {"threshold", report.threshold},
        {"margin", report.margin},
        {"verdict", to_string(report.verdict)},
        {"arg_n", report.arg.first},
        {"arg_m", report.arg.second},
        {"diagnostics", std::move(diagnostics)},
    };
}

}  // namespace shiftset
