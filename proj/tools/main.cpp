// Batch front end: sequence generation, distance/recurrence computations,
// pigeonhole extraction, witness and partition searches, finite-window
// gates, and a self-verification suite with certificate replay.
//
// Exit codes: 0 computed or found; 1 a bounded search found nothing;
// 2 usage or input error; 3 a certificate or pinned check failed replay.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shiftset/asymptotics.hpp"
#include "shiftset/deltaf.hpp"
#include "shiftset/lemma.hpp"
#include "shiftset/recurrence.hpp"
#include "shiftset/report.hpp"
#include "shiftset/sequence.hpp"

using namespace shiftset;
using nlohmann::json;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNothingFound = 1;
constexpr int kExitInputError = 2;
constexpr int kExitVerifyFailure = 3;

enum class Format { Human, JsonLines, Csv };

struct GlobalOptions {
    Format format = Format::Human;
    unsigned workers = 1;
};

Format parse_format(const std::string& name) {
    if (name == "human") return Format::Human;
    if (name == "jsonl" || name == "json-lines") return Format::JsonLines;
    if (name == "csv") return Format::Csv;
    throw InputError("unknown format '" + name + "' (expected human, jsonl, or csv)");
}

void require_not_csv(Format format) {
    if (format == Format::Csv) {
        throw InputError("csv output is only available for gate tables");
    }
}

NatSet realize_checked(const std::string& spec_text) {
    const SequenceSpec spec = SequenceSpec::parse(spec_text);
    if (spec.horizon > 8'000'000) {
        std::cerr << "note: capacity " << spec.horizon << " bits is about "
                  << spec.horizon / 8 / 1024 / 1024 << " MiB per set\n";
    }
    return realize(spec);
}

std::string render_values(std::span<const uint64_t> values, size_t limit = 64) {
    std::ostringstream out;
    out << '{';
    for (size_t i = 0; i < values.size() && i < limit; ++i) {
        if (i) out << ", ";
        out << values[i];
    }
    if (values.size() > limit) out << ", ... (" << values.size() << " elements)";
    out << '}';
    return out.str();
}

std::string render_set(const NatSet& s) { return render_values(s.elements()); }

std::string render_tuple(const HTuple& t) { return render_values(t.entries()); }

void emit(Format format, const json& record, const std::string& human) {
    if (format == Format::JsonLines) {
        std::cout << record.dump() << '\n';
    } else {
        std::cout << human << '\n';
    }
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

int cmd_delta(const GlobalOptions& global, const std::string& a_text) {
    require_not_csv(global.format);
    const NatSet result = realize_checked(a_text).distance_set();
    emit(global.format, set_record("delta", a_text, result),
         "delta(" + a_text + ") = " + render_set(result));
    return kExitFound;
}

int cmd_rk(const GlobalOptions& global, const std::string& a_text, uint64_t k,
           std::optional<uint64_t> bound) {
    require_not_csv(global.format);
    const NatSet a = realize_checked(a_text);
    const uint64_t limit = bound.value_or(a.capacity());
    const NatSet result = rk_set(a, k, limit);
    emit(global.format, set_record("rk", a_text, result),
         "R_" + std::to_string(k) + "(" + a_text + ") within [1, " +
             std::to_string(limit) + ") = " + render_set(result));
    return kExitFound;
}

int cmd_rkh_search(const GlobalOptions& global, const std::string& a_text,
                   const std::string& b_text, uint64_t k, uint64_t h,
                   const SearchLimits& limits) {
    require_not_csv(global.format);
    const NatSet a = realize_checked(a_text);
    const NatSet b = realize_checked(b_text);
    const SearchOutcome outcome = rkh_search(a, b, k, h, limits, global.workers);
    for (const auto& cert : outcome.certificates) {
        if (!certificate_check(a, cert)) {
            std::cerr << "internal error: certificate for tuple "
                      << render_tuple(cert.tuple) << " failed replay\n";
            return kExitVerifyFailure;
        }
        emit(global.format, certificate_record(cert, a_text),
             "certificate tuple=" + render_tuple(cert.tuple) +
                 " witnesses=" + render_values(cert.witnesses) +
                 " k=" + std::to_string(cert.k) +
                 " |intersection|=" + std::to_string(cert.intersection_size));
    }
    emit(global.format, search_record(outcome, a_text, b_text, k, h),
         "searched " + std::to_string(outcome.prefixes_examined) + " prefixes, found " +
             std::to_string(outcome.certificates.size()) +
             (outcome.budget_exhausted ? " (budget exhausted)" : ""));
    return outcome.certificates.empty() ? kExitNothingFound : kExitFound;
}

int cmd_lemma(const GlobalOptions& global, const std::string& a_text,
              const std::string& b_text, uint64_t k) {
    require_not_csv(global.format);
    const NatSet a = realize_checked(a_text);
    const NatSet b = realize_checked(b_text);
    const LemmaReport report = lemma_extract(a, b, k, global.workers);
    std::ostringstream human;
    human << "extraction: n=" << report.n << " m=" << report.m << " k=" << report.k
          << "\n  H0 = " << render_tuple(report.H0) << "\n  Z = " << render_set(report.Z)
          << " (|Z| = " << report.Z.size() << ")"
          << "\n  common intersection = " << render_set(report.intersection)
          << "\n  bound: |Z| >= " << rational_string(report.exact_bound) << " ~ "
          << report.exact_bound.get_d() << " (root form " << report.root_bound << ")";
    emit(global.format, lemma_record(report), human.str());
    return kExitFound;
}

int cmd_deltaf(const GlobalOptions& global, const std::string& s_text, uint64_t h,
               std::optional<uint64_t> bound, std::optional<uint64_t> ladder_levels,
               uint64_t ladder_horizon) {
    require_not_csv(global.format);
    if (ladder_levels) {
        const auto witnesses = ladder_delta_f_check(*ladder_levels, ladder_horizon);
        for (const auto& w : witnesses) {
            emit(global.format, witness_record(w),
                 "block witness (size " + std::to_string(w.h) +
                     "): " + render_tuple(w.Z));
        }
        return kExitFound;
    }
    const NatSet s = realize_checked(s_text);
    const uint64_t vertex_bound = bound.value_or(s.capacity());
    const auto witness = find_delta_f_witness(s, h, vertex_bound, s_text);
    if (!witness) {
        emit(global.format,
             json{{"type", "deltaf-witness"},
                  {"S", s_text},
                  {"h", h},
                  {"found", false},
                  {"vertex_bound", vertex_bound}},
             "no witness of size " + std::to_string(h) + " below " +
                 std::to_string(vertex_bound));
        return kExitNothingFound;
    }
    if (!is_delta_subset(witness->Z, s)) {
        std::cerr << "internal error: witness failed replay\n";
        return kExitVerifyFailure;
    }
    emit(global.format, witness_record(*witness),
         "witness (size " + std::to_string(h) + "): " + render_tuple(witness->Z));
    return kExitFound;
}

int cmd_partition(const GlobalOptions& global, const std::string& s_text,
                  const std::vector<uint64_t>& x_values, uint32_t pieces, uint64_t seed,
                  const std::string& assign, uint64_t k) {
    require_not_csv(global.format);
    HTuple x(x_values);
    const NatSet s = s_text.empty() ? x.distance_set() : realize_checked(s_text);
    DeltaColoring coloring;
    if (assign.empty()) {
        coloring = random_coloring(x.distance_set(), pieces, seed);
    } else {
        coloring.pieces = pieces;
        std::istringstream in(assign);
        std::string part;
        while (std::getline(in, part, ',')) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) {
                throw InputError("expected difference=piece entries in --assign");
            }
            try {
                coloring.piece_of[std::stoull(part.substr(0, eq))] =
                    static_cast<uint32_t>(std::stoul(part.substr(eq + 1)));
            } catch (const std::exception&) {
                throw InputError("bad --assign entry '" + part + "'");
            }
        }
    }
    const PartitionExperiment experiment = partition_experiment(s, x, coloring, k);
    std::string human;
    if (experiment.result) {
        human = "monochromatic subset " + render_tuple(experiment.result->second) +
                " in piece " + std::to_string(experiment.result->first);
    } else {
        human = "no monochromatic subset of size " + std::to_string(k);
    }
    emit(global.format, partition_record(experiment), human);
    return experiment.result ? kExitFound : kExitNothingFound;
}

int cmd_gate(const GlobalOptions& global, const std::string& kind,
             const std::string& a_text, const std::string& b_text, uint64_t k, uint64_t h,
             std::optional<uint64_t> N_opt, const std::vector<uint64_t>& k0_list,
             const std::string& f_name, double margin, double epsilon,
             double decay_ratio) {
    const SequenceSpec a_spec = SequenceSpec::parse(a_text);
    uint64_t N = 0;
    if (N_opt) {
        N = *N_opt;
    } else {
        // Default window: every rank the realized sequences provide.
        N = realize(a_spec).size();
        if (kind == "liminf" || kind == "corollary") {
            if (b_text.empty()) throw InputError("this gate kind needs --B");
            N = std::min<uint64_t>(N, realize(SequenceSpec::parse(b_text)).size());
        }
        if (N == 0) throw InputError("the realized sequences are empty");
    }
    GateReport report;
    if (kind == "liminf") {
        if (b_text.empty()) throw InputError("the liminf gate needs --B");
        report = liminf_gate(a_spec, SequenceSpec::parse(b_text), k, h, N, k0_list,
                             margin, global.workers);
    } else if (kind == "corollary") {
        if (b_text.empty()) throw InputError("the corollary gate needs --B");
        report = corollary_f_gate(a_spec, SequenceSpec::parse(b_text),
                                  GrowthFunction::parse(f_name), k, N, k0_list,
                                  decay_ratio);
    } else if (kind == "thm2") {
        report = thm2_gate(a_spec, k, N, k0_list, epsilon);
    } else {
        throw InputError("unknown gate kind '" + kind +
                         "' (expected liminf, corollary, or thm2)");
    }

    if (global.format == Format::Csv) {
        std::cout << "k0,value,threshold,margin,verdict\n";
        for (size_t i = 0; i < report.k0_list.size(); ++i) {
            std::cout << report.k0_list[i] << ',' << report.series[i] << ','
                      << report.threshold << ',' << report.margin << ','
                      << to_string(report.verdict) << '\n';
        }
        return kExitFound;
    }
    std::ostringstream human;
    human << report.kind << " gate: k=" << report.k;
    if (report.h) human << " h=" << report.h;
    human << " N=" << report.N << "\n  k0\tvalue\n";
    for (size_t i = 0; i < report.k0_list.size(); ++i) {
        human << "  " << report.k0_list[i] << '\t' << report.series[i] << '\n';
    }
    human << "  threshold " << report.threshold
          << ", verdict: " << to_string(report.verdict);
    emit(global.format, gate_record(report), human.str());
    return kExitFound;
}

// ---------------------------------------------------------------------------
// Self-verification: pinned example values, replayed extraction reports,
// and the cross-form bound identity. Any mismatch names itself and exits 3.

int verify_pinned(const GlobalOptions& global, const std::string& instances_path,
                  bool fault_inject) {
    int checked = 0;
    const auto fail = [&](const std::string& what) {
        std::cerr << "verification failed: " << what << '\n';
        return kExitVerifyFailure;
    };

    NatSet a = NatSet::from_elements(std::vector<uint64_t>{1, 2, 3, 5, 8}, 9);
    if (!instances_path.empty()) {
        const NatSet loaded = read_set_file(instances_path);
        if (!(loaded == a)) {
            throw InputError("instance file '" + instances_path +
                             "' does not match the pinned set {1,2,3,5,8}");
        }
        a = loaded;
    }

    // Pairs of A at distances 1, 2, 3 -- two of each.
    for (uint64_t x : {1, 2, 3}) {
        if (recurrence_count(a, x) != 2) {
            return fail("recurrence_count(A, " + std::to_string(x) + ") != 2");
        }
        ++checked;
    }
    // The distance set of {1,2,4} sits inside R_2(A)...
    const NatSet f_deltas = HTuple({1, 2, 4}).distance_set();
    if (f_deltas.elements() != std::vector<uint64_t>{1, 2, 3}) {
        return fail("delta({1,2,4}) != {1,2,3}");
    }
    const NatSet r2 = rk_set(a, 2, a.capacity());
    for (uint64_t d : f_deltas.elements()) {
        if (!r2.contains(d)) return fail("delta({1,2,4}) escapes R_2(A)");
    }
    ++checked;
    // ...yet the tuple itself is not a member: its three shifts miss.
    if (rkh_membership(a, 2, HTuple({1, 2, 4})).has_value()) {
        return fail("{1,2,4} unexpectedly entered R_2^3(A)");
    }
    ++checked;

    auto cert = rkh_membership(a, 1, HTuple({1, 2, 3}));
    if (!cert || cert->witnesses != std::vector<uint64_t>{4}) {
        return fail("membership witness for {1,2,3} is not {4}");
    }
    if (fault_inject) cert->witnesses[0] += 1;  // test-only corruption
    if (!certificate_check(a, *cert)) {
        return fail("certificate replay for tuple {1,2,3}" +
                    std::string(fault_inject ? " (fault injected)" : ""));
    }
    ++checked;

    // No three numbers below 60 have all differences odd.
    SequenceSpec odds_spec;
    odds_spec.kind = SequenceKind::Odds;
    odds_spec.horizon = 60;
    if (find_delta_f_witness(realize(odds_spec), 3, 60).has_value()) {
        return fail("found a size-3 witness inside the odd numbers");
    }
    ++checked;

    // Ladder blocks replay as witnesses of every size up to 4.
    if (ladder_delta_f_check(4, 200).size() != 4) return fail("ladder check lost a block");
    ++checked;

    // Pinned extraction: A = {1,2}, B = {1,2} puts 3 in both shifts.
    const auto tiny = lemma_extract(NatSet::from_elements(std::vector<uint64_t>{1, 2}, 3),
                                    NatSet::from_elements(std::vector<uint64_t>{1, 2}, 3),
                                    1, global.workers);
    if (!(tiny.H0 == HTuple({3})) || tiny.Z.size() != 2 || tiny.exact_bound != 1) {
        return fail("tiny extraction instance changed");
    }
    ++checked;

    const auto big =
        lemma_extract(a, NatSet::from_elements(std::vector<uint64_t>{1, 2, 3, 4}, 5), 2,
                      global.workers);
    mpq_class expected(40, 66);
    expected.canonicalize();
    if (big.exact_bound != expected) return fail("extraction bound is not 40/66");
    if (mpq_class(big.Z.size()) < big.exact_bound) {
        return fail("|Z| fell under the exact bound");
    }
    if (big.intersection.size() < 2) return fail("extraction intersection too small");
    ++checked;

    // The rational bound and its root form are two spellings of one number.
    for (const auto& [n, m, kk, s] : std::vector<std::array<uint64_t, 4>>{
             {5, 4, 2, 12}, {2, 2, 1, 4}, {7, 9, 3, 40}}) {
        const auto bound = lemma_bound(n, m, kk, s);
        const double e = bound.exact.get_d();
        if (std::abs(bound.root_form - e) > 1e-9 * std::max(1.0, e)) {
            return fail("bound forms diverge at n=" + std::to_string(n));
        }
        ++checked;
    }

    if (global.format == Format::JsonLines) {
        std::cout << json{{"type", "verify"}, {"checks", checked}, {"ok", true}}.dump()
                  << '\n';
    } else {
        std::cout << "all " << checked << " pinned checks passed\n";
    }
    return kExitFound;
}

int verify_replay(const GlobalOptions& global, const std::string& replay_path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (replay_path != "-") {
        file.open(replay_path);
        if (!file) throw InputError("cannot open replay file '" + replay_path + "'");
        in = &file;
    }
    uint64_t line_no = 0, replayed = 0;
    std::string line;
    std::map<std::string, NatSet> realized;
    while (std::getline(*in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError("replay line " + std::to_string(line_no) + ": " + e.what());
        }
        if (record.value("type", "") != "certificate") continue;
        try {
            const std::string a_text = record.at("A").get<std::string>();
            auto [it, fresh] = realized.try_emplace(a_text);
            if (fresh) it->second = realize_checked(a_text);
            const Certificate cert{
                HTuple(record.at("tuple").get<std::vector<uint64_t>>()),
                record.at("witnesses").get<std::vector<uint64_t>>(),
                record.at("k").get<uint64_t>(),
                record.value("intersection_size", uint64_t{0})};
            if (!certificate_check(it->second, cert)) {
                std::cerr << "replay failed at line " << line_no << ": tuple "
                          << render_tuple(cert.tuple) << '\n';
                return kExitVerifyFailure;
            }
        } catch (const json::exception& e) {
            throw InputError("replay line " + std::to_string(line_no) +
                             ": bad certificate record: " + e.what());
        }
        ++replayed;
    }
    if (global.format == Format::JsonLines) {
        std::cout << json{{"type", "verify-replay"},
                          {"certificates", replayed},
                          {"ok", true}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "replayed " << replayed << " certificates\n";
    }
    return kExitFound;
}

int cmd_verify(const GlobalOptions& global, const std::string& instances_path,
               bool fault_inject, const std::string& replay_path) {
    require_not_csv(global.format);
    if (!replay_path.empty()) return verify_replay(global, replay_path);
    return verify_pinned(global, instances_path, fault_inject);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite set shifts: distance sets, certified recurrence tuples, "
                 "pigeonhole extraction, and finite-window gates"};
    app.require_subcommand(1);
    // --h is a real option below, so help lives on --help alone.
    app.set_help_flag("--help", "print help and exit");
    const auto subcommand = [&](const std::string& name, const std::string& desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help and exit");
        sub->fallthrough();  // --format and friends may follow the subcommand
        return sub;
    };

    GlobalOptions global;
    std::string format_name = "human";
    app.add_option("--format", format_name, "output format: human, jsonl, csv")
        ->capture_default_str();
    app.add_option("--workers", global.workers, "worker threads for the heavy loops")
        ->capture_default_str();
    uint64_t horizon_opt = 0;
    auto* horizon_flag =
        app.add_option("--horizon", horizon_opt,
                       "global capacity cap (default 1000000, or SHIFTSET_HORIZON)");

    std::string a_text, b_text, s_text, kind = "liminf", f_name = "logsq";
    std::string assign, instances_path, replay_path;
    uint64_t k = 1, h = 2, seed = 0, ladder_horizon = 100000;
    uint32_t pieces = 2;
    std::optional<uint64_t> bound, ladder_levels, N;
    std::vector<uint64_t> x_values, k0_list;
    SearchLimits limits;
    double margin = 0.05, epsilon = 0.1, decay_ratio = 0.6;
    bool fault_inject = false;

    auto* delta = subcommand("delta", "distance set of a sequence");
    delta->add_option("--A", a_text, "sequence spec")->required();

    auto* rk = subcommand("rk", "k-recurrence set restricted to [1, bound)");
    rk->add_option("--A", a_text)->required();
    rk->add_option("--k", k)->required();
    rk->add_option("--bound", bound, "exclusive bound (default: capacity of A)");

    auto* search = subcommand(
        "rkh-search", "certified h-tuples of B whose shifts of A share >= k elements");
    search->add_option("--A", a_text)->required();
    search->add_option("--B", b_text)->required();
    search->add_option("--k", k)->required();
    search->add_option("--h", h)->required();
    search->add_option("--tuple-budget", limits.tuple_budget)->capture_default_str();
    search->add_option("--result-cap", limits.result_cap)->capture_default_str();
    search->add_option("--b-horizon", limits.b_horizon,
                       "restrict B to [0, b-horizon) before searching");

    auto* lemma = subcommand(
        "lemma", "extract Z from B with a common k-intersection and its exact bound");
    lemma->add_option("--A", a_text)->required();
    lemma->add_option("--B", b_text)->required();
    lemma->add_option("--k", k)->required();

    auto* deltaf = subcommand(
        "deltaf", "witness sets with all differences inside S, or ladder block checks");
    deltaf->add_option("--S", s_text, "target set spec");
    deltaf->add_option("--h", h, "witness size")->capture_default_str();
    deltaf->add_option("--bound", bound, "vertex bound (default: capacity of S)");
    deltaf->add_option("--ladder-levels", ladder_levels,
                       "check this many ladder blocks instead of searching");
    deltaf->add_option("--ladder-horizon", ladder_horizon)->capture_default_str();

    auto* partition = subcommand(
        "partition", "color the differences of X and find a monochromatic subset");
    partition->add_option("--X", x_values, "base tuple, comma separated")
        ->required()
        ->delimiter(',');
    partition->add_option("--S", s_text, "ambient set spec (default: delta(X))");
    partition->add_option("--pieces", pieces)->capture_default_str();
    partition->add_option("--seed", seed, "seed for the random coloring");
    partition->add_option("--assign", assign,
                          "explicit coloring, e.g. 1=0,2=1,3=0 (overrides --seed)");
    partition->add_option("--k", k, "monochromatic target size")->required();

    auto* gate = subcommand("gate", "finite-window asymptotic gates");
    gate->add_option("--kind", kind, "liminf, corollary, or thm2")
        ->capture_default_str();
    gate->add_option("--A", a_text)->required();
    gate->add_option("--B", b_text);
    gate->add_option("--k", k)->required();
    gate->add_option("--h", h)->capture_default_str();
    gate->add_option("--N", N, "window width in ranks (default: all available)");
    gate->add_option("--k0", k0_list, "window checkpoints (default N/4 steps)")
        ->delimiter(',');
    gate->add_option("--f", f_name, "growth function for the corollary gate")
        ->capture_default_str();
    gate->add_option("--margin", margin)->capture_default_str();
    gate->add_option("--epsilon", epsilon)->capture_default_str();
    gate->add_option("--decay-ratio", decay_ratio)->capture_default_str();

    auto* verify = subcommand(
        "verify", "run the pinned example suite, or replay certificates");
    verify->add_option("--instances", instances_path,
                       "set file that must match the pinned instance");
    verify->add_flag("--fault-inject", fault_inject,
                     "corrupt a witness before replay (must exit 3)");
    verify->add_option("--replay", replay_path,
                       "json-lines file of certificates to re-check ('-' for stdin)");

    try {
        app.parse(argc, argv);

        if (const char* env = std::getenv("SHIFTSET_HORIZON")) {
            set_global_horizon(std::stoull(env));
        }
        if (horizon_flag->count()) set_global_horizon(horizon_opt);
        global.format = parse_format(format_name);
        if (global.workers < 1) global.workers = 1;

        if (delta->parsed()) return cmd_delta(global, a_text);
        if (rk->parsed()) return cmd_rk(global, a_text, k, bound);
        if (search->parsed()) return cmd_rkh_search(global, a_text, b_text, k, h, limits);
        if (lemma->parsed()) return cmd_lemma(global, a_text, b_text, k);
        if (deltaf->parsed()) {
            if (!ladder_levels && s_text.empty()) {
                throw InputError("deltaf needs either --S or --ladder-levels");
            }
            return cmd_deltaf(global, s_text, h, bound, ladder_levels, ladder_horizon);
        }
        if (partition->parsed())
            return cmd_partition(global, s_text, x_values, pieces, seed, assign, k);
        if (gate->parsed())
            return cmd_gate(global, kind, a_text, b_text, k, h, N, k0_list, f_name,
                            margin, epsilon, decay_ratio);
        if (verify->parsed())
            return cmd_verify(global, instances_path, fault_inject, replay_path);
        return kExitInputError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}
