#include "shiftset/lemma.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <thread>

namespace shiftset {

namespace {

// Walks all k-element index combinations of [0, n) in lexicographic order.
template <typename F>
void for_each_combination(uint64_t n, uint64_t k, F&& visit) {
    if (k > n) return;
    std::vector<uint64_t> idx(k);
    for (uint64_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        uint64_t i = k;
        while (i-- > 0) {
            if (idx[i] != n - k + i) {
                ++idx[i];
                for (uint64_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

struct PackedLayout {
    unsigned bits;       // field width per entry
    uint64_t ones;       // 1 in every field: key(H + t) = key(H) + t * ones
    bool fits;
};

PackedLayout packed_layout(uint64_t max_value, uint64_t k) {
    const unsigned bits = std::max<unsigned>(1, std::bit_width(max_value));
    if (k * bits > 64) return {0, 0, false};
    uint64_t ones = 0;
    for (uint64_t j = 0; j < k; ++j) ones |= uint64_t{1} << (bits * j);
    return {bits, ones, true};
}

// Entries packed most-significant-first, so unsigned order on keys is
// lexicographic order on tuples.
uint64_t pack(const std::vector<uint64_t>& values, const std::vector<uint64_t>& idx,
              unsigned bits) {
    uint64_t key = 0;
    for (uint64_t i : idx) key = (key << bits) | values[i];
    return key;
}

std::vector<uint64_t> unpack(uint64_t key, unsigned bits, uint64_t k) {
    std::vector<uint64_t> out(k);
    const uint64_t mask = bits == 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
    for (uint64_t j = k; j-- > 0;) {
        out[j] = key & mask;
        key >>= bits;
    }
    return out;
}

// Most frequent key; ties prefer the smaller key (= lexicographically
// smaller tuple). Returns (key, count).
std::pair<uint64_t, uint64_t> best_run(std::vector<uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    uint64_t best_key = keys[0], best_count = 0;
    size_t i = 0;
    while (i < keys.size()) {
        size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        if (j - i > best_count) {
            best_count = j - i;
            best_key = keys[i];
        }
        i = j;
    }
    return {best_key, best_count};
}

std::vector<uint64_t> shard_starts(uint64_t total, unsigned parts) {
    std::vector<uint64_t> starts(parts + 1);
    for (unsigned p = 0; p <= parts; ++p) {
        starts[p] = total * p / parts;
    }
    return starts;
}

}  // namespace

mpz_class binomial(uint64_t n, uint64_t k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

LemmaBound lemma_bound(uint64_t n, uint64_t m, uint64_t k, uint64_t s) {
    if (k < 1 || n < k || s < n || m < 1) {
        throw InputError("lemma bound needs s >= n >= k >= 1 and m >= 1");
    }
    mpq_class exact(m * binomial(n, k), binomial(s, k));
    exact.canonicalize();
    double L = 1.0;
    for (uint64_t i = 1; i < k; ++i) {
        L *= (1.0 - double(i) / double(n)) / (1.0 - double(i) / double(s));
    }
    const double nd = double(n), sd = double(s);
    const double root_form =
        L * std::pow(nd * std::pow(double(m), 1.0 / double(k)) / sd, double(k));
    return LemmaBound{exact, L, root_form};
}

LemmaReport lemma_extract(const NatSet& A, const NatSet& B, uint64_t k, unsigned workers) {
    const auto a = A.elements();
    const auto b = B.elements();
    const uint64_t n = a.size(), m = b.size();
    if (k < 1 || n < k) {
        throw InputError("lemma extraction needs |A| >= k >= 1");
    }
    if (m < 1) throw InputError("lemma extraction needs a nonempty B");
    if (a.front() == 0 && b.front() == 0) {
        // With 0 in both sets the shifted copies spill out of [1, s] and
        // the C(s, k) pigeonhole denominator is no longer sound.
        throw InputError("lemma extraction needs min(A) + min(B) >= 1");
    }
    const uint64_t a_max = a.back(), b_max = b.back();
    const uint64_t s = a_max + b_max;

    const mpz_class updates = mpz_class(m) * binomial(n, k);
    if (updates > kLemmaUpdateCap) {
        throw InputError("m * C(n, k) = " + updates.get_str() +
                         " key updates exceed the cap of " + std::to_string(kLemmaUpdateCap));
    }

    // Count occurrences of every k-subset across the shifted copies
    // A + b_i. Subsets of A + b_i are exactly subsets of A displaced by
    // b_i, so the base subsets are enumerated once.
    std::vector<uint64_t> h0_values;
    const PackedLayout layout = packed_layout(s, k);
    const unsigned n_workers = std::max(1u, std::min<unsigned>(workers, m));
    if (layout.fits) {
        std::vector<uint64_t> base_keys;
        base_keys.reserve(updates.get_ui() / m);
        for_each_combination(n, k, [&](const std::vector<uint64_t>& idx) {
            base_keys.push_back(pack(a, idx, layout.bits));
        });
        std::vector<uint64_t> keys(base_keys.size() * m);
        const auto starts = shard_starts(m, n_workers);
        auto fill = [&](unsigned w) {
            size_t pos = starts[w] * base_keys.size();
            for (uint64_t i = starts[w]; i < starts[w + 1]; ++i) {
                const uint64_t displacement = b[i] * layout.ones;
                for (uint64_t key : base_keys) keys[pos++] = key + displacement;
            }
        };
        if (n_workers <= 1) {
            fill(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(fill, w);
            for (auto& t : pool) t.join();
        }
        const auto [key, count] = best_run(keys);
        h0_values = unpack(key, layout.bits, k);
        (void)count;
    } else {
        // Wide fallback for values that do not pack into 64 bits.
        auto count_range = [&](uint64_t lo, uint64_t hi) {
            std::map<std::vector<uint64_t>, uint64_t> counts;
            std::vector<uint64_t> key(k);
            for_each_combination(n, k, [&](const std::vector<uint64_t>& idx) {
                for (uint64_t i = lo; i < hi; ++i) {
                    for (uint64_t j = 0; j < k; ++j) key[j] = a[idx[j]] + b[i];
                    ++counts[key];
                }
            });
            return counts;
        };
        std::map<std::vector<uint64_t>, uint64_t> counts;
        if (n_workers <= 1) {
            counts = count_range(0, m);
        } else {
            const auto starts = shard_starts(m, n_workers);
            std::vector<std::map<std::vector<uint64_t>, uint64_t>> partial(n_workers);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < n_workers; ++w) {
                pool.emplace_back(
                    [&, w]() { partial[w] = count_range(starts[w], starts[w + 1]); });
            }
            for (auto& t : pool) t.join();
            for (const auto& part : partial) {
                for (const auto& [key, c] : part) counts[key] += c;
            }
        }
        uint64_t best_count = 0;
        for (const auto& [key, c] : counts) {  // ascending keys: first max is lex-least
            if (c > best_count) {
                best_count = c;
                h0_values = key;
            }
        }
    }

    HTuple H0(h0_values);

    // Γ = ranks whose shifted copy contains H0; Z = the shifts themselves.
    std::vector<uint64_t> gamma;
    NatSet Z(B.capacity());
    for (uint64_t i = 0; i < m; ++i) {
        bool hit = true;
        for (uint64_t x : H0.entries()) {
            if (x < b[i] || !A.contains(x - b[i])) {
                hit = false;
                break;
            }
        }
        if (hit) {
            gamma.push_back(i + 1);  // 1-based ranks
            Z.insert(b[i]);
        }
    }

    NatSet intersection = A.shifted(b[gamma.front() - 1]);
    for (size_t g = 1; g < gamma.size(); ++g) {
        intersection = intersection.intersect_shifted(A, b[gamma[g] - 1]);
    }

    const LemmaBound bound = lemma_bound(n, m, k, s);
    return LemmaReport{n,
                       m,
                       k,
                       a_max,
                       b_max,
                       std::move(H0),
                       std::move(gamma),
                       std::move(Z),
                       std::move(intersection),
                       bound.exact,
                       bound.L,
                       bound.root_form};
}

}  // namespace shiftset
