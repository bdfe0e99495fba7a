#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shiftset/errors.hpp"

namespace shiftset {

// Process-wide cap on set capacity. Operations that would grow a set past
// this bound throw CapacityError instead of silently allocating.
inline constexpr uint64_t kDefaultGlobalHorizon = 1'000'000;

uint64_t global_horizon();
void set_global_horizon(uint64_t horizon);

/// Finite set of naturals over [0, capacity), stored as a dense bit vector.
///
/// Capacity is an explicit, exclusive upper bound and propagates through
/// operations (a shift by t grows it by t). Iteration via elements() yields
/// strictly increasing values. Once built, treat a NatSet as an immutable
/// value: all operations below are pure and safe to share across threads.
class NatSet {
public:
    NatSet() = default;
    explicit NatSet(uint64_t capacity);
    static NatSet from_elements(std::span<const uint64_t> elements, uint64_t capacity);

    uint64_t capacity() const { return capacity_; }
    uint64_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(uint64_t x) const;
    void insert(uint64_t x);  // requires x < capacity

    std::vector<uint64_t> elements() const;
    uint64_t min() const;  // throws Error on empty set
    uint64_t max() const;  // throws Error on empty set

    /// {a + t : a in this}; capacity grows to capacity() + t.
    NatSet shifted(uint64_t t) const;

    /// Set intersection; the result's capacity is the smaller capacity.
    NatSet intersect(const NatSet& other) const;

    /// this ∩ (other + t), as one word-wise pass over displaced words --
    /// the dominant kernel; never materializes the shifted copy.
    NatSet intersect_shifted(const NatSet& other, uint64_t t) const;

    /// All positive pairwise differences a' - a; empty when size() <= 1.
    NatSet distance_set() const;

    /// Raw 64-bit words, little-endian bit order; tail bits are zero.
    std::span<const uint64_t> words() const { return words_; }

    // Equality is element-wise; capacity is a storage bound, not identity.
    bool operator==(const NatSet& other) const;

private:
    uint64_t capacity_ = 0;
    std::vector<uint64_t> words_;
    mutable uint64_t cached_size_ = 0;
    mutable bool size_valid_ = true;  // empty set has size 0
};

}  // namespace shiftset
