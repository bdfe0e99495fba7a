#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftset/htuple.hpp"
#include "shiftset/natset.hpp"

namespace shiftset {

/// Replayable witness that a tuple T lies in R_k^h(A): the smallest k
/// elements of ⋂_{t in T}(A + t), plus the exact intersection size.
/// Checking needs nothing from the search that produced it: every witness
/// ξ must satisfy ξ - t ∈ A for all t in the tuple.
struct Certificate {
    HTuple tuple;
    std::vector<uint64_t> witnesses;  // strictly increasing, length >= k
    uint64_t k = 0;
    uint64_t intersection_size = 0;
};

struct SearchLimits {
    // Enumeration prefixes examined before the search gives up; every
    // prefix of length 1..h formed by the search counts, pruned or not.
    uint64_t tuple_budget = 1'000'000;
    uint64_t result_cap = 1000;
    uint64_t b_horizon = UINT64_MAX;  // clamped to B.capacity
};

struct SearchOutcome {
    std::vector<Certificate> certificates;  // lexicographic by tuple
    uint64_t prefixes_examined = 0;
    bool budget_exhausted = false;  // distinguished from "search space done"
};

/// |A ∩ (A + x)|: the number of pairs of A at distance x (x = 0 gives |A|).
uint64_t recurrence_count(const NatSet& A, uint64_t x);

/// R_k(A) ∩ [1, bound) = {x in [1, bound) : |A ∩ (A+x)| >= k}. For k = 1
/// this is the distance set restricted to [1, bound).
NatSet rk_set(const NatSet& A, uint64_t k, uint64_t bound);

/// Certificate that T ∈ R_k^h(A), or nullopt when |⋂(A + t_i)| < k.
std::optional<Certificate> rkh_membership(const NatSet& A, uint64_t k, const HTuple& T);

/// Enumerates [B ∩ [0, b_horizon)]^h in lexicographic order with prefix
/// pruning (a prefix is abandoned as soon as the running intersection
/// drops below k elements; intersection size is monotone non-increasing
/// in the prefix). Returns up to result_cap certificates, sorted; the
/// outcome is deterministic and identical for any worker count.
SearchOutcome rkh_search(const NatSet& A, const NatSet& B, uint64_t k, uint64_t h,
                         const SearchLimits& limits = {}, unsigned workers = 1);

/// Pure replay of a certificate against A; independent of the search path.
bool certificate_check(const NatSet& A, const Certificate& cert);

}  // namespace shiftset
