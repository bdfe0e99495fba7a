#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shiftset/natset.hpp"

namespace shiftset {

/// Strictly increasing tuple {t_1 < ... < t_h} of naturals, h >= 1.
class HTuple {
public:
    explicit HTuple(std::vector<uint64_t> entries);

    size_t size() const { return entries_.size(); }
    uint64_t operator[](size_t i) const { return entries_[i]; }
    uint64_t front() const { return entries_.front(); }
    uint64_t back() const { return entries_.back(); }
    std::span<const uint64_t> entries() const { return entries_; }

    /// Positive pairwise differences of the entries, as a set.
    NatSet distance_set() const;

    bool operator==(const HTuple& other) const = default;
    auto operator<=>(const HTuple& other) const = default;  // lexicographic

private:
    std::vector<uint64_t> entries_;
};

/// (A + t_1) ∩ ... ∩ (A + t_h). Equals shifted(t_1) when h = 1.
NatSet intersect_shifts(const NatSet& A, const HTuple& T);

/// Single-consumer stream of all h-element subsets of S, emitted exactly
/// once each, in lexicographic order of their entry lists. Emits
/// binomial(|S|, h) tuples in total (none when h > |S|).
class HTupleStream {
public:
    HTupleStream(const NatSet& S, uint64_t h);

    std::optional<HTuple> next();
    uint64_t emitted() const { return emitted_; }

private:
    std::vector<uint64_t> pool_;
    std::vector<size_t> index_;
    uint64_t h_;
    uint64_t emitted_ = 0;
    bool done_ = false;
    bool started_ = false;
};

}  // namespace shiftset
