#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shiftset/lemma.hpp"
#include "shiftset/report.hpp"

using namespace shiftset;

namespace {

NatSet make(std::initializer_list<uint64_t> values, uint64_t capacity) {
    return NatSet::from_elements(std::vector<uint64_t>(values), capacity);
}

std::vector<uint64_t> vec(std::initializer_list<uint64_t> values) { return values; }

mpq_class rat(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

bool bound_holds(const LemmaReport& report) {
    return mpq_class(report.Z.size()) >= report.exact_bound;
}

bool forms_agree(const mpq_class& exact, double root) {
    const double e = exact.get_d();
    return std::abs(root - e) <= 1e-9 * std::max(1.0, e);
}

// Replays every invariant of a report against the inputs.
void check_report(const NatSet& A, const NatSet& B, uint64_t k, const LemmaReport& r) {
    const auto b = B.elements();
    CHECK(r.n == A.size());
    CHECK(r.m == B.size());
    CHECK(r.a_max == A.max());
    CHECK(r.b_max == B.max());
    CHECK(r.H0.size() == k);
    CHECK(r.Gamma.size() == r.Z.size());
    CHECK(bound_holds(r));
    CHECK(r.intersection.size() >= k);
    CHECK(forms_agree(r.exact_bound, r.root_bound));
    for (uint64_t rank : r.Gamma) {
        REQUIRE(rank >= 1);
        REQUIRE(rank <= b.size());
        const uint64_t z = b[rank - 1];
        CHECK(r.Z.contains(z));
        for (uint64_t x : r.H0.entries()) {  // H0 ⊆ A + z, replayed
            REQUIRE(x >= z);
            CHECK(A.contains(x - z));
        }
    }
    for (uint64_t x : r.H0.entries()) CHECK(r.intersection.contains(x));
}

}  // namespace

TEST_CASE("bound arithmetic") {
    SUBCASE("k = 1 has an empty correction product") {
        const auto b = lemma_bound(2, 2, 1, 4);
        CHECK(b.exact == mpq_class(1));
        CHECK(b.L == 1.0);
        CHECK(b.root_form == doctest::Approx(1.0));
    }
    SUBCASE("the worked 5/4/2/12 instance") {
        const auto b = lemma_bound(5, 4, 2, 12);
        CHECK(b.exact == rat(40, 66));
        CHECK(b.L == doctest::Approx(48.0 / 55.0));
        CHECK(forms_agree(b.exact, b.root_form));
    }
    SUBCASE("forcing A to fill the interval gives bound 1") {
        const auto b = lemma_bound(3, 1, 3, 3);
        CHECK(b.exact == mpq_class(1));
    }
    SUBCASE("the two forms agree across a parameter sweep") {
        for (uint64_t k = 1; k <= 5; ++k) {
            for (uint64_t n = k; n <= 20; n += 3) {
                for (uint64_t s = n; s <= 200; s += 17) {
                    for (uint64_t m = 1; m <= 40; m += 7) {
                        CHECK(forms_agree(lemma_bound(n, m, k, s).exact,
                                          lemma_bound(n, m, k, s).root_form));
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(lemma_bound(3, 1, 4, 10), InputError);  // k > n
    CHECK_THROWS_AS(lemma_bound(5, 1, 2, 4), InputError);   // s < n
    CHECK_THROWS_AS(lemma_bound(5, 0, 2, 10), InputError);  // empty B
}

TEST_CASE("extraction on the tiny worked instance") {
    // A = {1,2}, B = {1,2}: shifts are {2,3} and {3,4}; 3 is the only
    // value hit twice, so H0 = {3} and both shifts join Z.
    NatSet A = make({1, 2}, 3);
    NatSet B = make({1, 2}, 3);
    const auto report = lemma_extract(A, B, 1);
    CHECK(report.H0 == HTuple({3}));
    CHECK(report.Gamma == vec({1, 2}));
    CHECK(report.Z.elements() == vec({1, 2}));
    CHECK(report.intersection.elements() == vec({3}));
    CHECK(report.exact_bound == mpq_class(1));
    CHECK(report.Z.size() == 2);
    check_report(A, B, 1, report);
}

TEST_CASE("extraction on the running example") {
    NatSet A = make({1, 2, 3, 5, 8}, 9);
    NatSet B = make({1, 2, 3, 4}, 5);
    const auto report = lemma_extract(A, B, 2);
    CHECK(report.exact_bound == rat(40, 66));
    check_report(A, B, 2, report);

    // Independent argmax: the most frequent pair across the four shifted
    // copies, lex-least on ties.
    const auto [h0, count] = oracle::brute_lemma_argmax({1, 2, 3, 5, 8}, {1, 2, 3, 4}, 2);
    CHECK(report.H0 == HTuple(h0));
    CHECK(report.Gamma.size() == count);
}

TEST_CASE("singleton B forces Z = B") {
    NatSet A = make({1, 2, 3, 5, 8}, 9);
    NatSet B = make({7}, 8);
    const auto report = lemma_extract(A, B, 2);
    CHECK(report.Z.elements() == vec({7}));
    CHECK(report.Gamma == vec({1}));
    CHECK(report.intersection == A.shifted(7));
    CHECK(report.exact_bound <= 1);
    check_report(A, B, 2, report);
}

TEST_CASE("random instances satisfy every report invariant") {
    std::mt19937_64 rng(53);
    for (int round = 0; round < 150; ++round) {
        const uint64_t k = 1 + rng() % 4;
        const uint64_t n = k + rng() % (31 - k);
        const uint64_t m = 1 + rng() % 30;
        const auto a_values = oracle::random_values(rng, n, 1, 200);
        const auto b_values = oracle::random_values(rng, m, 1, 200);
        NatSet A = NatSet::from_elements(a_values, 201);
        NatSet B = NatSet::from_elements(b_values, 201);
        const auto report = lemma_extract(A, B, k);
        check_report(A, B, k, report);
    }
}

TEST_CASE("packed counting equals the map-based oracle argmax") {
    std::mt19937_64 rng(59);
    for (int round = 0; round < 50; ++round) {
        const uint64_t k = 1 + rng() % 3;
        const uint64_t n = k + rng() % 8;
        const uint64_t m = 1 + rng() % 8;
        const auto a_values = oracle::random_values(rng, n, 1, 60);
        const auto b_values = oracle::random_values(rng, m, 1, 60);
        const auto report = lemma_extract(NatSet::from_elements(a_values, 61),
                                          NatSet::from_elements(b_values, 61), k);
        const auto [h0, count] = oracle::brute_lemma_argmax(a_values, b_values, k);
        CHECK(report.H0 == HTuple(h0));
        CHECK(report.Gamma.size() == count);
    }
}

TEST_CASE("appending a larger element to B never lowers the top count") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 40; ++round) {
        const uint64_t k = 1 + rng() % 3;
        const uint64_t n = k + rng() % 10;
        const uint64_t m = 1 + rng() % 8;
        const auto a_values = oracle::random_values(rng, n, 1, 100);
        auto b_values = oracle::random_values(rng, m, 1, 100);
        NatSet A = NatSet::from_elements(a_values, 101);
        const auto before =
            lemma_extract(A, NatSet::from_elements(b_values, 101), k).Gamma.size();
        b_values.push_back(b_values.back() + 1 + rng() % 50);
        const auto after =
            lemma_extract(A, NatSet::from_elements(b_values, 256), k).Gamma.size();
        CHECK(after >= before);
    }
}

TEST_CASE("worker sharding never changes the report") {
    std::mt19937_64 rng(67);
    for (int round = 0; round < 15; ++round) {
        const uint64_t k = 1 + rng() % 4;
        const uint64_t n = k + rng() % 20;
        const uint64_t m = 1 + rng() % 25;
        const auto a_values = oracle::random_values(rng, n, 1, 200);
        const auto b_values = oracle::random_values(rng, m, 1, 200);
        NatSet A = NatSet::from_elements(a_values, 201);
        NatSet B = NatSet::from_elements(b_values, 201);
        const std::string base = lemma_record(lemma_extract(A, B, k, 1)).dump();
        CHECK(lemma_record(lemma_extract(A, B, k, 3)).dump() == base);
        CHECK(lemma_record(lemma_extract(A, B, k, 8)).dump() == base);
    }
}

TEST_CASE("wide keys fall back to exact map counting") {
    // Values past 2^21 with k = 3 cannot pack into 64 bits.
    const uint64_t big = 3'000'000;
    set_global_horizon(10'000'000);
    NatSet A = NatSet::from_elements(vec({big + 1, big + 2, big + 4, big + 10}), big + 11);
    NatSet B = NatSet::from_elements(vec({1, 2}), 3);
    const auto report = lemma_extract(A, B, 3);
    CHECK(report.H0.size() == 3);
    CHECK(bound_holds(report));
    CHECK(report.intersection.size() >= 3);
    set_global_horizon(kDefaultGlobalHorizon);
}

TEST_CASE("preconditions") {
    NatSet A = make({1, 2}, 3);
    CHECK_THROWS_AS(lemma_extract(A, make({1}, 2), 3), InputError);   // k > |A|
    CHECK_THROWS_AS(lemma_extract(A, make({1}, 2), 0), InputError);   // k = 0
    CHECK_THROWS_AS(lemma_extract(A, NatSet(5), 1), InputError);      // empty B
    CHECK_THROWS_AS(lemma_extract(make({0, 1}, 2), make({0, 2}, 3), 1),
                    InputError);  // 0 in both sets breaks the C(s,k) denominator

    SUBCASE("the update cap rejects oversized instances") {
        // 30 choose 4 times 4000 shifts is past 10^8 updates.
        std::vector<uint64_t> a_values, b_values;
        for (uint64_t i = 1; i <= 30; ++i) a_values.push_back(i);
        for (uint64_t i = 1; i <= 4000; ++i) b_values.push_back(i);
        NatSet A = NatSet::from_elements(a_values, 31);
        NatSet B = NatSet::from_elements(b_values, 4001);
        CHECK_THROWS_WITH_AS(lemma_extract(A, B, 4), doctest::Contains("cap"),
                             InputError);
    }
}
