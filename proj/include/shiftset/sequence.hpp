#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "shiftset/natset.hpp"

namespace shiftset {

enum class SequenceKind {
    ExplicitList,
    ExplicitFile,
    Primes,
    Power,    // {floor(c * n^p) : n >= 1}, duplicates removed
    Random,   // each x in [0, horizon) kept with probability d, pure in (spec, seed)
    Ladder,   // blocks {a_n * i : 1 <= i <= n} with a_1 = 2, a_{n+1} = a_n * n + 1
    Naturals,
    Odds,
};

/// Recipe for a NatSet. Parsed from / printed to a compact string:
///
///   spec    := kind [":" params] ["@" horizon]
///   kind    := explicit | file | primes | power | random | ladder | naturals | odds
///   params  := explicit: comma-separated strictly increasing naturals
///              file:     path to a set file
///              power:    c=<rat>,p=<rat>         (both positive)
///              random:   d=<rat>,seed=<nat>      (d in (0,1])
///   rat     := integer | fraction "6/5" | decimal "1.2"
///
/// horizon is required except for explicit/file, where it defaults to
/// max+1. to_string() emits a canonical form (fractions reduced, horizon
/// explicit) that parses back to the same spec.
struct SequenceSpec {
    SequenceKind kind = SequenceKind::ExplicitList;
    uint64_t horizon = 0;
    std::vector<uint64_t> values;  // ExplicitList
    std::string path;              // ExplicitFile
    mpq_class power_c = 1;
    mpq_class power_p = 1;
    mpq_class density = 1;
    uint64_t seed = 0;

    static SequenceSpec parse(std::string_view text);
    std::string to_string() const;
};

/// Materialize the spec as a NatSet with capacity = horizon, containing
/// every generated value below the horizon. An empty result is a valid
/// outcome, not an error.
NatSet realize(const SequenceSpec& spec);

/// Set file format: one decimal integer per line, strictly increasing;
/// '#' starts a comment line; blank lines are ignored. Any violation is a
/// hard error naming the offending line.
NatSet read_set_file(const std::string& path, std::optional<uint64_t> horizon = {});

/// Ladder block bases a_1, a_2, ... (a_1 = 2, a_{n+1} = a_n * n + 1),
/// listed while a_n < horizon.
std::vector<uint64_t> ladder_bases(uint64_t horizon);

}  // namespace shiftset
