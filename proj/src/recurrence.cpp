#include "shiftset/recurrence.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

namespace shiftset {

namespace {

std::vector<uint64_t> first_elements(const NatSet& s, uint64_t n) {
    std::vector<uint64_t> out;
    out.reserve(n);
    const auto words = s.words();
    for (size_t w = 0; w < words.size() && out.size() < n; ++w) {
        uint64_t bits = words[w];
        while (bits && out.size() < n) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

Certificate make_certificate(const HTuple& tuple, const NatSet& intersection, uint64_t k) {
    return Certificate{tuple, first_elements(intersection, k), k, intersection.size()};
}

// Per-root enumeration unit for rkh_search. Node indices are local to the
// subtree, starting at 1 for the root prefix; global indices are recovered
// at merge time by prefix-summing subtree node counts. A subtree stops at
// node_cap nodes (truncated = true) or after cert_cap certificates --
// neither cut can change the merged outcome.
struct SubtreeResult {
    uint64_t nodes = 0;
    bool truncated = false;
    std::vector<std::pair<uint64_t, Certificate>> found;  // (local node index, cert)
};

struct SubtreeParams {
    const NatSet* A;
    const std::vector<uint64_t>* b;
    uint64_t k;
    uint64_t h;
    uint64_t node_cap;
    uint64_t cert_cap;
};

bool subtree_dfs(const SubtreeParams& p, SubtreeResult& r, std::vector<uint64_t>& prefix,
                 size_t last_index, const NatSet& intersection) {
    if (r.nodes >= p.node_cap) {
        r.truncated = true;
        return false;
    }
    ++r.nodes;
    if (intersection.size() < p.k) return true;  // prune: monotone in the prefix
    if (prefix.size() == p.h) {
        r.found.emplace_back(r.nodes, make_certificate(HTuple(prefix), intersection, p.k));
        return r.found.size() < p.cert_cap;
    }
    for (size_t j = last_index + 1; j < p.b->size(); ++j) {
        // Not enough elements left to finish the tuple.
        if (p.b->size() - j < p.h - prefix.size()) break;
        prefix.push_back((*p.b)[j]);
        const NatSet child = intersection.intersect_shifted(*p.A, (*p.b)[j]);
        const bool keep_going = subtree_dfs(p, r, prefix, j, child);
        prefix.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

SubtreeResult search_subtree(const SubtreeParams& p, size_t root) {
    SubtreeResult r;
    std::vector<uint64_t> prefix{(*p.b)[root]};
    subtree_dfs(p, r, prefix, root, p.A->shifted((*p.b)[root]));
    return r;
}

}  // namespace

uint64_t recurrence_count(const NatSet& A, uint64_t x) {
    const auto words = A.words();
    const uint64_t word_off = x / 64;
    const unsigned bit_off = x % 64;
    if (word_off >= words.size()) return 0;
    uint64_t count = 0;
    for (size_t w = word_off; w < words.size(); ++w) {
        const size_t s = w - word_off;
        uint64_t displaced = bit_off == 0 ? words[s] : words[s] << bit_off;
        if (bit_off != 0 && s > 0) displaced |= words[s - 1] >> (64 - bit_off);
        count += std::popcount(words[w] & displaced);
    }
    return count;
}

NatSet rk_set(const NatSet& A, uint64_t k, uint64_t bound) {
    if (k < 1) throw InputError("recurrence order k must be at least 1");
    NatSet out(bound);
    for (uint64_t x = 1; x < bound; ++x) {
        if (recurrence_count(A, x) >= k) out.insert(x);
    }
    return out;
}

std::optional<Certificate> rkh_membership(const NatSet& A, uint64_t k, const HTuple& T) {
    if (k < 1) throw InputError("recurrence order k must be at least 1");
    const NatSet intersection = intersect_shifts(A, T);
    if (intersection.size() < k) return std::nullopt;
    return make_certificate(T, intersection, k);
}

bool certificate_check(const NatSet& A, const Certificate& cert) {
    if (cert.k < 1) return false;
    if (cert.witnesses.size() < cert.k) return false;
    for (size_t i = 1; i < cert.witnesses.size(); ++i) {
        if (cert.witnesses[i - 1] >= cert.witnesses[i]) return false;
    }
    for (uint64_t xi : cert.witnesses) {
        for (uint64_t t : cert.tuple.entries()) {
            if (xi < t || !A.contains(xi - t)) return false;
        }
    }
    return true;
}

SearchOutcome rkh_search(const NatSet& A, const NatSet& B, uint64_t k, uint64_t h,
                         const SearchLimits& limits, unsigned workers) {
    if (h < 2) throw InputError("tuple size h must be at least 2 for the search");
    if (k < 1) throw InputError("recurrence order k must be at least 1");
    if (limits.tuple_budget < 1 || limits.result_cap < 1 || limits.b_horizon < 1) {
        throw InputError("search limits must all be positive");
    }

    const uint64_t b_horizon = std::min(limits.b_horizon, B.capacity());
    std::vector<uint64_t> b;
    for (uint64_t v : B.elements()) {
        if (v < b_horizon) b.push_back(v);
    }

    SearchOutcome outcome;
    if (b.size() < h) return outcome;  // empty search space, zero nodes
    const size_t roots = b.size() - (h - 1);
    const uint64_t budget = limits.tuple_budget;

    SubtreeParams params{&A, &b, k, h, budget, limits.result_cap};
    std::vector<SubtreeResult> results(roots);

    if (workers <= 1) {
        // Sequential: give each subtree only the budget and cap that are
        // left; both cuts leave the merged outcome unchanged.
        uint64_t used = 0;
        uint64_t collected = 0;
        for (size_t root = 0; root < roots; ++root) {
            SubtreeParams local = params;
            local.node_cap = budget - used;
            local.cert_cap = limits.result_cap - collected;
            results[root] = search_subtree(local, root);
            used += results[root].nodes;
            collected += results[root].found.size();
            if (results[root].truncated) break;
            if (collected >= limits.result_cap) break;
        }
    } else {
        // Speculative: every subtree sees the full budget and cap. A node
        // relevant to the sequential outcome has global index <= budget,
        // hence local index <= budget, so nothing the merge needs is cut.
        const unsigned n_workers = static_cast<unsigned>(std::min<size_t>(workers, roots));
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w]() {
                for (size_t root = w; root < roots; root += n_workers) {
                    results[root] = search_subtree(params, root);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // Deterministic merge: replay the sequential stop rules over the
    // per-subtree results. `total` counts nodes in lexicographic
    // enumeration order and saturates at budget + 1; a certificate's
    // global node index is total-before-its-subtree plus its local index.
    uint64_t total = 0;
    std::optional<uint64_t> cap_hit;  // node index where result_cap filled
    for (size_t root = 0; root < roots && total <= budget; ++root) {
        const SubtreeResult& r = results[root];
        for (const auto& [local_idx, cert] : r.found) {
            const uint64_t global_idx = total + local_idx;
            if (global_idx > budget) break;
            outcome.certificates.push_back(cert);
            if (outcome.certificates.size() >= limits.result_cap) {
                cap_hit = global_idx;
                break;
            }
        }
        if (cap_hit) break;
        if (r.truncated || r.nodes > budget - total) {
            total = budget + 1;
        } else {
            total += r.nodes;
        }
    }
    if (cap_hit) {
        outcome.prefixes_examined = *cap_hit;
    } else if (total > budget) {
        outcome.prefixes_examined = budget;
        outcome.budget_exhausted = true;
    } else {
        outcome.prefixes_examined = total;
    }
    return outcome;
}

}  // namespace shiftset
