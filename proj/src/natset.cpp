#include "shiftset/natset.hpp"

#include <atomic>
#include <bit>
#include <string>

namespace shiftset {

namespace {

std::atomic<uint64_t> g_horizon{kDefaultGlobalHorizon};

uint64_t words_for(uint64_t capacity) { return (capacity + 63) / 64; }

}  // namespace

uint64_t global_horizon() { return g_horizon.load(std::memory_order_relaxed); }

void set_global_horizon(uint64_t horizon) {
    g_horizon.store(horizon, std::memory_order_relaxed);
}

NatSet::NatSet(uint64_t capacity) : capacity_(capacity) {
    if (capacity > global_horizon()) {
        throw CapacityError("capacity " + std::to_string(capacity) +
                            " exceeds the global horizon " +
                            std::to_string(global_horizon()));
    }
    words_.resize(words_for(capacity), 0);
}

NatSet NatSet::from_elements(std::span<const uint64_t> elements, uint64_t capacity) {
    NatSet s(capacity);
    for (uint64_t x : elements) s.insert(x);
    return s;
}

uint64_t NatSet::size() const {
    if (!size_valid_) {
        uint64_t n = 0;
        for (uint64_t w : words_) n += std::popcount(w);
        cached_size_ = n;
        size_valid_ = true;
    }
    return cached_size_;
}

bool NatSet::contains(uint64_t x) const {
    if (x >= capacity_) return false;
    return (words_[x / 64] >> (x % 64)) & 1;
}

void NatSet::insert(uint64_t x) {
    if (x >= capacity_) {
        throw CapacityError("element " + std::to_string(x) + " is not below capacity " +
                            std::to_string(capacity_));
    }
    words_[x / 64] |= uint64_t{1} << (x % 64);
    size_valid_ = false;
}

std::vector<uint64_t> NatSet::elements() const {
    std::vector<uint64_t> out;
    out.reserve(size());
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

uint64_t NatSet::min() const {
    for (size_t w = 0; w < words_.size(); ++w) {
        if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
    }
    throw Error("min() of an empty set");
}

uint64_t NatSet::max() const {
    for (size_t w = words_.size(); w-- > 0;) {
        if (words_[w]) return w * 64 + 63 - std::countl_zero(words_[w]);
    }
    throw Error("max() of an empty set");
}

NatSet NatSet::shifted(uint64_t t) const {
    NatSet out(capacity_ + t);  // horizon check happens in the constructor
    const uint64_t word_off = t / 64;
    const unsigned bit_off = t % 64;
    if (bit_off == 0) {
        for (size_t w = 0; w < words_.size(); ++w) out.words_[w + word_off] = words_[w];
    } else {
        for (size_t w = 0; w < words_.size(); ++w) {
            out.words_[w + word_off] |= words_[w] << bit_off;
            const uint64_t carry = words_[w] >> (64 - bit_off);
            if (carry) out.words_[w + word_off + 1] |= carry;  // in range iff nonzero
        }
    }
    out.size_valid_ = size_valid_;
    out.cached_size_ = cached_size_;
    return out;
}

NatSet NatSet::intersect(const NatSet& other) const {
    const NatSet& small = capacity_ <= other.capacity_ ? *this : other;
    const NatSet& large = capacity_ <= other.capacity_ ? other : *this;
    NatSet out(small.capacity_);
    for (size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = small.words_[w] & large.words_[w];
    }
    out.size_valid_ = false;
    return out;
}

NatSet NatSet::intersect_shifted(const NatSet& other, uint64_t t) const {
    NatSet out(std::min(capacity_, other.capacity_ + t));
    const uint64_t word_off = t / 64;
    const unsigned bit_off = t % 64;
    const auto& src = other.words_;
    for (size_t w = word_off; w < out.words_.size(); ++w) {
        const size_t s = w - word_off;
        if (s > src.size()) break;  // past the last carry word
        uint64_t displaced = 0;
        if (s < src.size()) displaced = bit_off == 0 ? src[s] : src[s] << bit_off;
        if (bit_off != 0 && s > 0 && s <= src.size()) {
            displaced |= src[s - 1] >> (64 - bit_off);
        }
        out.words_[w] = words_[w] & displaced;
    }
    out.size_valid_ = false;
    return out;
}

NatSet NatSet::distance_set() const {
    // Δ(A) = ⋃_{a in A} (A - a) restricted to positives: one word-wise
    // right shift of the whole set per element. O(|A| * capacity / 64).
    NatSet out(capacity_);
    const auto elems = elements();
    if (elems.size() <= 1) return out;
    const size_t nwords = words_.size();
    for (uint64_t a : elems) {
        const uint64_t word_off = a / 64;
        const unsigned bit_off = a % 64;
        if (bit_off == 0) {
            for (size_t w = word_off; w < nwords; ++w) {
                out.words_[w - word_off] |= words_[w];
            }
        } else {
            for (size_t w = word_off; w < nwords; ++w) {
                uint64_t lo = words_[w] >> bit_off;
                uint64_t hi = (w + 1 < nwords) ? words_[w + 1] << (64 - bit_off) : 0;
                out.words_[w - word_off] |= lo | hi;
            }
        }
    }
    out.words_[0] &= ~uint64_t{1};  // drop the zero difference
    out.size_valid_ = false;
    return out;
}

bool NatSet::operator==(const NatSet& other) const {
    const size_t shared = std::min(words_.size(), other.words_.size());
    for (size_t w = 0; w < shared; ++w) {
        if (words_[w] != other.words_[w]) return false;
    }
    for (size_t w = shared; w < words_.size(); ++w) {
        if (words_[w] != 0) return false;
    }
    for (size_t w = shared; w < other.words_.size(); ++w) {
        if (other.words_[w] != 0) return false;
    }
    return true;
}

}  // namespace shiftset
