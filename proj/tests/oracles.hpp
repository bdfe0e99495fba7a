#pragma once

// Brute-force reference implementations used to freeze expected values and
// to cross-check the library's pruned/packed code paths. Everything here
// works on plain vectors and std::set, independent of the bit-vector
// kernels under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Values = std::vector<uint64_t>;

inline std::set<uint64_t> naive_shift(const std::set<uint64_t>& a, uint64_t t) {
    std::set<uint64_t> out;
    for (uint64_t x : a) out.insert(x + t);
    return out;
}

inline std::set<uint64_t> naive_distance_set(const std::set<uint64_t>& a) {
    std::set<uint64_t> out;
    for (uint64_t x : a) {
        for (uint64_t y : a) {
            if (y > x) out.insert(y - x);
        }
    }
    return out;
}

inline std::set<uint64_t> naive_intersect_shifts(const std::set<uint64_t>& a,
                                                 const Values& shifts) {
    std::set<uint64_t> out = naive_shift(a, shifts.at(0));
    for (size_t i = 1; i < shifts.size(); ++i) {
        std::set<uint64_t> next = naive_shift(a, shifts[i]);
        std::set<uint64_t> merged;
        std::set_intersection(out.begin(), out.end(), next.begin(), next.end(),
                              std::inserter(merged, merged.begin()));
        out = std::move(merged);
    }
    return out;
}

inline uint64_t naive_recurrence_count(const std::set<uint64_t>& a, uint64_t x) {
    uint64_t count = 0;
    for (uint64_t v : a) {
        if (v >= x && a.count(v - x)) ++count;
    }
    return count;
}

inline std::set<uint64_t> naive_rk_set(const std::set<uint64_t>& a, uint64_t k,
                                       uint64_t bound) {
    std::set<uint64_t> out;
    for (uint64_t x = 1; x < bound; ++x) {
        if (naive_recurrence_count(a, x) >= k) out.insert(x);
    }
    return out;
}

// All k-element subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_combo(size_t n, size_t k, F&& visit) {
    if (k == 0 || k > n) return;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] != n - k + i) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

// Unpruned, budget-free search: every h-subset of b with an intersection
// of at least k elements, in lexicographic order.
inline std::vector<Values> brute_rkh_search(const std::set<uint64_t>& a, const Values& b,
                                            uint64_t k, uint64_t h) {
    std::vector<Values> found;
    for_each_combo(b.size(), h, [&](const std::vector<size_t>& idx) {
        Values shifts;
        for (size_t i : idx) shifts.push_back(b[i]);
        if (naive_intersect_shifts(a, shifts).size() >= k) found.push_back(shifts);
    });
    return found;
}

// Most frequent k-subset across the shifted copies a + b_i, with its
// count; ties prefer the lexicographically smaller subset.
inline std::pair<Values, uint64_t> brute_lemma_argmax(const Values& a, const Values& b,
                                                      uint64_t k) {
    std::map<Values, uint64_t> counts;
    for (uint64_t shift : b) {
        for_each_combo(a.size(), k, [&](const std::vector<size_t>& idx) {
            Values key;
            for (size_t i : idx) key.push_back(a[i] + shift);
            ++counts[key];
        });
    }
    Values best;
    uint64_t best_count = 0;
    for (const auto& [key, count] : counts) {
        if (count > best_count) {
            best = key;
            best_count = count;
        }
    }
    return {best, best_count};
}

// Lexicographically least h-subset of [0, bound) whose pairwise
// differences all lie in `diffs`, or nullopt.
inline std::optional<Values> brute_clique(const std::set<uint64_t>& diffs, uint64_t h,
                                          uint64_t bound) {
    std::optional<Values> result;
    for_each_combo(bound, h, [&](const std::vector<size_t>& idx) {
        if (result) return;
        for (size_t j = 1; j < idx.size(); ++j) {
            for (size_t i = 0; i < j; ++i) {
                if (!diffs.count(idx[j] - idx[i])) return;
            }
        }
        result = Values(idx.begin(), idx.end());
    });
    return result;
}

// Ladder built by direct recursion, separate from the library generator.
inline Values ladder_values(uint64_t horizon) {
    std::set<uint64_t> out;
    uint64_t a = 2;
    for (uint64_t n = 1; a < horizon; ++n) {
        for (uint64_t i = 1; i <= n && a * i < horizon; ++i) out.insert(a * i);
        a = a * n + 1;
    }
    return Values(out.begin(), out.end());
}

// Sorted set of `count` distinct values drawn from [lo, hi].
inline Values random_values(std::mt19937_64& rng, size_t count, uint64_t lo, uint64_t hi) {
    std::set<uint64_t> out;
    while (out.size() < count) {
        out.insert(lo + rng() % (hi - lo + 1));
    }
    return Values(out.begin(), out.end());
}

}  // namespace oracle
