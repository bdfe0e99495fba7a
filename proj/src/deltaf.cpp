#include "shiftset/deltaf.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "shiftset/sequence.hpp"

namespace shiftset {

namespace {

// Candidate bit vectors for the clique search, fixed width V bits.
using Words = std::vector<uint64_t>;

size_t words_for(uint64_t v) { return (v + 63) / 64; }

// word `w` of (src << shift), reading out of range as zero.
uint64_t displaced_left(const Words& src, uint64_t shift, size_t w) {
    const uint64_t off = shift / 64;
    const unsigned sh = shift % 64;
    if (w < off) return 0;
    const size_t s = w - off;
    uint64_t out = s < src.size() ? (sh ? src[s] << sh : src[s]) : 0;
    if (sh && s > 0 && s - 1 < src.size()) out |= src[s - 1] >> (64 - sh);
    return out;
}

// word `w` of (src >> shift).
uint64_t displaced_right(const Words& src, uint64_t shift, size_t w) {
    const uint64_t off = shift / 64;
    const unsigned sh = shift % 64;
    const size_t s = w + off;
    uint64_t out = s < src.size() ? (sh ? src[s] >> sh : src[s]) : 0;
    if (sh && s + 1 < src.size()) out |= src[s + 1] << (64 - sh);
    return out;
}

// Difference graph on [0, V): edge {x, y} iff |x - y| in S.
struct DiffGraph {
    uint64_t V;
    Words fwd;  // S restricted to [0, V)
    Words rev;  // bit j = S[V - 1 - j]

    explicit DiffGraph(const NatSet& S, uint64_t V) : V(V), fwd(words_for(V), 0) {
        for (uint64_t d : S.elements()) {
            if (d >= V) break;
            fwd[d / 64] |= uint64_t{1} << (d % 64);
        }
        rev.assign(words_for(V), 0);
        for (uint64_t j = 0; j < V; ++j) {
            if (fwd[(V - 1 - j) / 64] >> ((V - 1 - j) % 64) & 1) {
                rev[j / 64] |= uint64_t{1} << (j % 64);
            }
        }
    }

    // word `w` of the neighbor set of v: {v + d} ∪ {v - d} for d in S.
    uint64_t neighbor_word(uint64_t v, size_t w) const {
        uint64_t bits = displaced_left(fwd, v, w) | displaced_right(rev, V - 1 - v, w);
        if (w == v / 64) bits &= ~(uint64_t{1} << (v % 64));  // no self loop
        if (w == words_for(V) - 1 && V % 64) bits &= (uint64_t{1} << (V % 64)) - 1;
        return bits;
    }

    uint64_t degree(uint64_t v) const {
        uint64_t n = 0;
        for (size_t w = 0; w < words_for(V); ++w) n += std::popcount(neighbor_word(v, w));
        return n;
    }
};

struct CliqueSearch {
    const DiffGraph& g;
    uint64_t h;
    std::vector<uint64_t> color_order;  // descending degree, ties by value
    std::vector<uint64_t> clique;
    static constexpr uint64_t kColoringCutoff = 2048;

    CliqueSearch(const DiffGraph& graph, uint64_t target) : g(graph), h(target) {
        color_order.resize(g.V);
        std::vector<uint64_t> deg(g.V);
        for (uint64_t v = 0; v < g.V; ++v) {
            color_order[v] = v;
            deg[v] = g.degree(v);
        }
        std::stable_sort(color_order.begin(), color_order.end(),
                         [&](uint64_t x, uint64_t y) {
                             if (deg[x] != deg[y]) return deg[x] > deg[y];
                             return x < y;
                         });
    }

    // Upper bound on the largest clique inside P: greedy coloring in the
    // fixed vertex order; stops once `enough` colors are seen.
    uint64_t color_bound(const Words& P, uint64_t enough) const {
        std::vector<Words> classes;
        for (uint64_t v : color_order) {
            if (!(P[v / 64] >> (v % 64) & 1)) continue;
            bool placed = false;
            for (auto& cls : classes) {
                bool conflict = false;
                for (size_t w = 0; w < cls.size(); ++w) {
                    if (cls[w] & g.neighbor_word(v, w)) {
                        conflict = true;
                        break;
                    }
                }
                if (!conflict) {
                    cls[v / 64] |= uint64_t{1} << (v % 64);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                if (classes.size() + 1 >= enough) return enough;
                classes.emplace_back(P.size(), 0);
                classes.back()[v / 64] |= uint64_t{1} << (v % 64);
            }
        }
        return classes.size();
    }

    // Depth-first in ascending vertex order; the first full clique found
    // is the lexicographically least one.
    bool extend(const Words& P, uint64_t count) {
        if (clique.size() == h) return true;
        const uint64_t need = h - clique.size();
        if (count < need) return false;
        if (count <= kColoringCutoff && count > need) {
            if (color_bound(P, need) < need) return false;
        }
        for (size_t w = 0; w < P.size(); ++w) {
            uint64_t bits = P[w];
            while (bits) {
                const uint64_t v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                Words next(P.size());
                uint64_t next_count = 0;
                for (size_t u = 0; u < P.size(); ++u) {
                    uint64_t masked = P[u] & g.neighbor_word(v, u);
                    if (u == w) masked &= ~((uint64_t{2} << (v % 64)) - 1);  // keep > v
                    if (u < w) masked = 0;
                    next[u] = masked;
                    next_count += std::popcount(masked);
                }
                clique.push_back(v);
                if (extend(next, next_count)) return true;
                clique.pop_back();
            }
        }
        return false;
    }
};

uint32_t pair_piece(const DeltaColoring& coloring, uint64_t lo, uint64_t hi) {
    const auto it = coloring.piece_of.find(hi - lo);
    if (it == coloring.piece_of.end() || it->second >= coloring.pieces) {
        throw InputError("coloring is not total on the differences of X");
    }
    return it->second;
}

}  // namespace

bool is_delta_subset(const HTuple& Z, const NatSet& S) {
    bool beyond_capacity = false;
    const auto entries = Z.entries();
    for (size_t j = 1; j < entries.size(); ++j) {
        for (size_t i = 0; i < j; ++i) {
            const uint64_t d = entries[j] - entries[i];
            if (d < S.capacity()) {
                if (!S.contains(d)) return false;  // decidably false
            } else {
                beyond_capacity = true;
            }
        }
    }
    if (beyond_capacity) {
        throw CapacityError("a difference reaches past the set's capacity; "
                            "the answer is undecidable at this horizon");
    }
    return true;
}

std::optional<DeltaFWitness> find_delta_f_witness(const NatSet& S, uint64_t h,
                                                  uint64_t vertex_bound,
                                                  std::string S_id) {
    if (h < 1) throw InputError("witness size h must be at least 1");
    if (vertex_bound > S.capacity()) {
        throw InputError("vertex bound must not exceed the set's capacity");
    }
    if (vertex_bound < h) return std::nullopt;  // not enough vertices

    DiffGraph graph(S, vertex_bound);
    CliqueSearch search(graph, h);
    Words all(words_for(vertex_bound), ~uint64_t{0});
    if (vertex_bound % 64) all.back() = (uint64_t{1} << (vertex_bound % 64)) - 1;
    if (!search.extend(all, vertex_bound)) return std::nullopt;
    return DeltaFWitness{HTuple(search.clique), h, std::move(S_id)};
}

std::vector<DeltaFWitness> ladder_delta_f_check(uint64_t levels, uint64_t horizon) {
    if (levels < 1) throw InputError("ladder check needs at least one level");
    const auto bases = ladder_bases(horizon);
    if (bases.size() < levels || bases[levels - 1] > (horizon - 1) / levels) {
        throw InputError("horizon " + std::to_string(horizon) +
                         " is too small to hold " + std::to_string(levels) +
                         " complete ladder blocks");
    }
    SequenceSpec spec;
    spec.kind = SequenceKind::Ladder;
    spec.horizon = horizon;
    const NatSet ladder = realize(spec);

    std::vector<DeltaFWitness> witnesses;
    witnesses.reserve(levels);
    for (uint64_t n = 1; n <= levels; ++n) {
        std::vector<uint64_t> block(n);
        for (uint64_t i = 1; i <= n; ++i) block[i - 1] = bases[n - 1] * i;
        HTuple Z(block);
        for (uint64_t v : block) {
            if (!ladder.contains(v)) throw Error("ladder block escapes the ladder set");
        }
        if (!is_delta_subset(Z, ladder)) {
            throw Error("ladder block differences escape the ladder set");
        }
        witnesses.push_back(DeltaFWitness{std::move(Z), n, spec.to_string()});
    }
    return witnesses;
}

DeltaColoring random_coloring(const NatSet& deltas, uint32_t pieces, uint64_t seed) {
    if (pieces < 1) throw InputError("a coloring needs at least one piece");
    DeltaColoring coloring;
    coloring.pieces = pieces;
    std::mt19937_64 rng(seed);
    for (uint64_t d : deltas.elements()) {
        coloring.piece_of[d] = static_cast<uint32_t>(rng() % pieces);
    }
    return coloring;
}

PartitionExperiment partition_experiment(const NatSet& S, const HTuple& X,
                                         const DeltaColoring& coloring, uint64_t k) {
    if (k < 1) throw InputError("monochromatic target size k must be at least 1");
    if (!is_delta_subset(X, S)) {
        throw InputError("the base set X must have all differences inside S");
    }
    const auto xs = X.entries();
    // Fail fast if the coloring misses any difference of X.
    for (size_t j = 1; j < xs.size(); ++j) {
        for (size_t i = 0; i < j; ++i) pair_piece(coloring, xs[i], xs[j]);
    }

    PartitionExperiment experiment{S, X, coloring, k, std::nullopt};
    if (k > xs.size()) return experiment;
    if (k == 1) {
        experiment.result = {0, HTuple({xs[0]})};  // vacuously monochromatic
        return experiment;
    }

    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        const uint32_t piece = pair_piece(coloring, xs[idx[0]], xs[idx[1]]);
        bool mono = true;
        for (size_t j = 1; j < k && mono; ++j) {
            for (size_t i = 0; i < j && mono; ++i) {
                mono = pair_piece(coloring, xs[idx[i]], xs[idx[j]]) == piece;
            }
        }
        if (mono) {
            std::vector<uint64_t> y(k);
            for (size_t i = 0; i < k; ++i) y[i] = xs[idx[i]];
            experiment.result = {piece, HTuple(std::move(y))};
            return experiment;
        }
        size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] != xs.size() - k + i) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return experiment;
    }
}

}  // namespace shiftset
