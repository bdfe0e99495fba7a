#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shiftset/sequence.hpp"

namespace shiftset {

/// A finite window cannot decide an asymptotic hypothesis; gates therefore
/// return a three-valued verdict with an explicit margin. The verdict is
/// advisory -- exactness lives in certificates.
enum class Verdict { GateOpen, GateClosed, Inconclusive };

std::string to_string(Verdict v);

/// Finite-window evaluation of an asymptotic hypothesis. `series` holds
/// one value per k0 in k0_list: for the liminf gate, the grid infimum of
/// c_{n,m} = (a_n + b_m) / (n * m^(1/k)) over k0 <= n,m <= N (non-
/// decreasing in k0, since the index set shrinks); for the 1-D gates, the
/// tail supremum of the governing ratio over k0 <= n <= N. `arg` is the
/// (n, m) attaining the last window's extremum, lexicographically least
/// among attainers; m is 0 for 1-D gates.
struct GateReport {
    std::string kind;  // "liminf" | "corollary" | "thm2"
    uint64_t k = 0;
    uint64_t h = 0;  // 0 when not applicable
    uint64_t N = 0;
    std::vector<uint64_t> k0_list;
    std::vector<double> series;
    double threshold = 0.0;  // liminf: (h-1)^(-1/k); 1-D gates: epsilon
    double margin = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::pair<uint64_t, uint64_t> arg{0, 0};
    // Named auxiliary series for report rendering.
    std::vector<std::pair<std::string, std::vector<double>>> diagnostics;
};

/// Default window checkpoints {1, N/4, N/2, 3N/4} (deduplicated).
std::vector<uint64_t> default_k0_list(uint64_t N);

/// Grid infima of (a_n + b_m) / (n * m^(1/k)) against the threshold
/// (h-1)^(-1/k). Ranks n, m are 1-based into the sorted sequences; both
/// realized sequences must have at least N elements. Verdict: gate-open
/// when the last infimum is below threshold - margin, gate-closed when
/// the infima trend is non-decreasing and the last sits above
/// threshold + margin, else inconclusive.
GateReport liminf_gate(const SequenceSpec& A_spec, const SequenceSpec& B_spec,
                       uint64_t k, uint64_t h, uint64_t N,
                       std::vector<uint64_t> k0_list = {}, double margin = 0.05,
                       unsigned workers = 1);

enum class GrowthKind { LogSquared, Sqrt, Identity, Power };

/// Named growth function for the corollary gate. logsq(x) is
/// (ln max(x,2))^2, kept away from ln 0. Parsed from "logsq", "sqrt",
/// "identity", or "pow=<exponent>".
struct GrowthFunction {
    GrowthKind kind = GrowthKind::Identity;
    double exponent = 1.0;

    double operator()(double x) const;
    static GrowthFunction parse(std::string_view name);
    std::string name() const;
};

/// Finite proxies for "limsup a_n / (n f(n)) < ∞" and
/// "f(b_n) / n^(1/k) -> 0": the first holds when the running maximum of
/// a_n / (n f(n)) stops growing before the last window checkpoint, the
/// second when the tail sup of f(b_n) / n^(1/k) has fallen to at most
/// decay_ratio of its global sup. Open needs both; closed means the first
/// failed outright or the tail sup never decayed at all.
GateReport corollary_f_gate(const SequenceSpec& A_spec, const SequenceSpec& B_spec,
                            const GrowthFunction& f, uint64_t k, uint64_t N,
                            std::vector<uint64_t> k0_list = {},
                            double decay_ratio = 0.6);

/// Tail trend of a_n / n^(k/(k-1)) (requires k >= 2; the k = 1 recurrence
/// set is just the distance set and needs no gate). Gate-open when the
/// tail sup falls below epsilon, gate-closed when it exceeds 1. Also
/// reports the diagonal quantity 2 a_n / (n * a_n^(1/k)) per window.
GateReport thm2_gate(const SequenceSpec& A_spec, uint64_t k, uint64_t N,
                     std::vector<uint64_t> k0_list = {}, double epsilon = 0.1);

}  // namespace shiftset
