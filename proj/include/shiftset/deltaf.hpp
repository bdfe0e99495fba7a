#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftset/htuple.hpp"
#include "shiftset/natset.hpp"

namespace shiftset {

/// A finite set Z whose pairwise differences all lie in a target set S.
/// Replayable via is_delta_subset(Z, S).
struct DeltaFWitness {
    HTuple Z;
    uint64_t h = 0;
    std::string S_id;  // description of the target set
};

/// True iff every positive pairwise difference of Z is in S. A difference
/// at or beyond S.capacity() makes the question undecidable at this
/// horizon and throws CapacityError -- but only when no in-capacity
/// difference already settles the answer as false.
bool is_delta_subset(const HTuple& Z, const NatSet& S);

/// Searches [0, vertex_bound) for an h-set Z with all pairwise differences
/// in S (an h-clique in the graph with edge {x,y} iff |x-y| in S).
/// Requires vertex_bound <= S.capacity(). Returns the lexicographically
/// least witness, or nullopt when none exists with max element below
/// vertex_bound (a bounded negative, not an absolute one).
std::optional<DeltaFWitness> find_delta_f_witness(const NatSet& S, uint64_t h,
                                                  uint64_t vertex_bound,
                                                  std::string S_id = {});

/// For each n <= levels, checks that the ladder block A_n = {a_n * i} has
/// all its differences inside the block (hence inside the ladder set) and
/// returns A_n as a size-n witness. The horizon must fit every requested
/// block in full.
std::vector<DeltaFWitness> ladder_delta_f_check(uint64_t levels, uint64_t horizon);

/// Assignment of every difference of X to one of `pieces` classes,
/// 0-indexed.
struct DeltaColoring {
    uint32_t pieces = 1;
    std::map<uint64_t, uint32_t> piece_of;
};

DeltaColoring random_coloring(const NatSet& deltas, uint32_t pieces, uint64_t seed);

struct PartitionExperiment {
    NatSet S;
    HTuple X;
    DeltaColoring coloring;
    uint64_t target_k = 0;
    // (piece t, Y): |Y| = target_k, Y ⊆ X, all differences of Y in piece t.
    std::optional<std::pair<uint32_t, HTuple>> result;
};

/// Colors the pairs of X by the piece of their difference and searches
/// exhaustively for a monochromatic k-subset (lexicographically least
/// returned). Requires Δ(X) ⊆ S and a coloring total on Δ(X).
PartitionExperiment partition_experiment(const NatSet& S, const HTuple& X,
                                         const DeltaColoring& coloring, uint64_t k);

}  // namespace shiftset
