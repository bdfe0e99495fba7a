#include "shiftset/htuple.hpp"

#include <string>

namespace shiftset {

HTuple::HTuple(std::vector<uint64_t> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("a tuple needs at least one entry");
    for (size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i - 1] >= entries_[i]) {
            throw InputError("tuple entries must be strictly increasing (entry " +
                             std::to_string(i) + ")");
        }
    }
}

NatSet HTuple::distance_set() const {
    NatSet out(back() + 1);
    for (size_t j = 1; j < entries_.size(); ++j) {
        for (size_t i = 0; i < j; ++i) out.insert(entries_[j] - entries_[i]);
    }
    return out;
}

NatSet intersect_shifts(const NatSet& A, const HTuple& T) {
    NatSet running = A.shifted(T[0]);
    for (size_t i = 1; i < T.size(); ++i) {
        running = running.intersect(A.shifted(T[i]));
    }
    return running;
}

HTupleStream::HTupleStream(const NatSet& S, uint64_t h)
    : pool_(S.elements()), h_(h) {
    if (h == 0) throw InputError("tuple size must be at least 1");
    done_ = h_ > pool_.size();
}

std::optional<HTuple> HTupleStream::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        index_.resize(h_);
        for (size_t i = 0; i < h_; ++i) index_[i] = i;
        started_ = true;
    } else {
        // Lexicographic successor: bump the rightmost index that can move.
        size_t i = h_;
        while (i-- > 0) {
            if (index_[i] != pool_.size() - h_ + i) {
                ++index_[i];
                for (size_t j = i + 1; j < h_; ++j) index_[j] = index_[j - 1] + 1;
                break;
            }
            if (i == 0) {
                done_ = true;
                return std::nullopt;
            }
        }
    }
    std::vector<uint64_t> entries(h_);
    for (size_t i = 0; i < h_; ++i) entries[i] = pool_[index_[i]];
    ++emitted_;
    return HTuple(std::move(entries));
}

}  // namespace shiftset
