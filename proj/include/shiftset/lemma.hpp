#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "shiftset/htuple.hpp"
#include "shiftset/natset.hpp"

namespace shiftset {

/// Full trace of the pigeonhole extraction: given finite A (|A| = n) and
/// B (|B| = m) and k <= n, there is a Z ⊆ B whose shifted copies of A all
/// contain a common k-set H0. The extraction counts, for every i, the
/// k-subsets of A + b_i; H0 is the most frequent key, Gamma the ranks i
/// whose shift contains it, Z = {b_i : i in Gamma}.
///
/// exact_bound = m * C(n,k) / C(a_max + b_max, k) is the pigeonhole lower
/// bound on |Z|, as an exact rational. root_bound is the algebraically
/// equal floating form L * (n * m^(1/k) / (a_max + b_max))^k.
struct LemmaReport {
    uint64_t n = 0, m = 0, k = 0;
    uint64_t a_max = 0, b_max = 0;
    HTuple H0;
    std::vector<uint64_t> Gamma;  // 1-based ranks into B, increasing
    NatSet Z;
    NatSet intersection;  // ⋂_{z in Z}(A + z), contains H0
    mpq_class exact_bound;
    double L = 0.0;
    double root_bound = 0.0;
};

struct LemmaBound {
    mpq_class exact;   // m * C(n,k) / C(s,k)
    double L;          // Π_{i=1..k-1} (1 - i/n) / (1 - i/s); 1 when k = 1
    double root_form;  // L * (n * m^(1/k) / s)^k
};

/// Requires s >= n >= k >= 1 and m >= 1. exact and root_form agree to
/// relative 1e-9 (they are two spellings of the same quantity).
LemmaBound lemma_bound(uint64_t n, uint64_t m, uint64_t k, uint64_t s);

/// Requires |A| >= k >= 1 and |B| >= 1. Counting work is m * C(n,k) key
/// updates, capped at kLemmaUpdateCap (InputError beyond). Ties in the
/// most-frequent key are broken toward the lexicographically smallest H0,
/// so the report is deterministic for any worker count.
LemmaReport lemma_extract(const NatSet& A, const NatSet& B, uint64_t k, unsigned workers = 1);

inline constexpr uint64_t kLemmaUpdateCap = 100'000'000;

mpz_class binomial(uint64_t n, uint64_t k);

}  // namespace shiftset
