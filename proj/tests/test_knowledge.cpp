#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "rsv/knowledge.hpp"
#include "test_helpers.hpp"

using namespace rsv;
using namespace rsv::testing;

namespace {

// Digit-sum knowledge built by hand (no bit formula needed here).
knowledge sum_knowledge(int k, int b) {
    knowledge kn;
    kn.space = concept_space{k, b};
    kn.label_arity = {k * (b - 1) + 1};
    kn.slots = make_label_slots(kn.label_arity);
    kn.beta = [](const concept_vector& c) -> label_vector {
        return {std::accumulate(c.begin(), c.end(), 0)};
    };
    return kn;
}

}  // namespace

TEST_CASE("label_of") {
    knowledge add = sum_knowledge(2, 10);
    CHECK(label_of(add, {3, 4}) == label_vector{7});

    // System of two equations: y1 = 2*c1 + c2, y2 = c3 + c4.
    knowledge sys;
    sys.space = concept_space{4, 10};
    sys.label_arity = {28, 19};
    sys.slots = make_label_slots(sys.label_arity);
    sys.beta = [](const concept_vector& c) -> label_vector {
        return {2 * c[0] + c[1], c[2] + c[3]};
    };
    CHECK(label_of(sys, {2, 2, 3, 4}) == label_vector{6, 7});

    CHECK_THROWS_AS(label_of(add, {3, 14}), eval_error);
    CHECK_THROWS_AS(label_of(add, {3}), eval_error);

    SUBCASE("bit formula agrees with beta everywhere") {
        for (int k : {2, 3, 4}) {
            knowledge kn = parity_knowledge(k);
            for_each_vector(kn.space, [&](const concept_vector& c) {
                assignment a{onehot_encode(kn.space, c)};
                CHECK(eval(kn.bit_formula[0], a) == (kn.beta(c)[0] == 1));
            });
        }
    }
}

TEST_CASE("equivalence classes") {
    knowledge x3 = parity_knowledge(3);
    auto cls = equivalence_class(x3, {0, 0, 0});
    std::set<concept_vector> got(cls.begin(), cls.end());
    std::set<concept_vector> want = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    CHECK(got == want);

    knowledge a3 = and_knowledge(3);
    CHECK(equivalence_class(a3, {1, 1, 1}) == std::vector<concept_vector>{{1, 1, 1}});
    CHECK(equivalence_class(a3, {0, 0, 0}).size() == 7);

    SUBCASE("classes partition the space") {
        std::set<concept_vector> covered;
        for_each_vector(x3.space, [&](const concept_vector& c) {
            auto cl = equivalence_class(x3, c);
            CHECK(std::find(cl.begin(), cl.end(), c) != cl.end());
            auto first = equivalence_class(x3, cl.front());
            CHECK(first == cl);  // class of any member is the same set
            for (const auto& m : cl) covered.insert(m);
        });
        CHECK(covered.size() == 8);
    }
}

TEST_CASE("determinism checking") {
    // y <-> (c1 xor c2): one-hot bits 1..4, label bit 5.
    concept_space s2{2, 2};
    bool_expr rel_det = bool_expr::equivalence(
        bool_expr::atom(5), bool_expr::exclusive_or({bool_expr::atom(2), bool_expr::atom(4)}));
    CHECK(check_determinism(rel_det, s2, {2}));

    // y | c1 over a single concept: c1 = 1 admits both labels.
    concept_space s1{1, 2};
    bool_expr rel_loose = bool_expr::disjunction({bool_expr::atom(3), bool_expr::atom(2)});
    CHECK_FALSE(check_determinism(rel_loose, s1, {2}));

    SUBCASE("implications alone underdetermine the label") {
        // Reduced road-scene rules over (green, red, pedestrian) with only
        // (red | pedestrian) => stop: stop is free whenever the premise is
        // false.
        concept_space s3{3, 2};
        int red = onehot_atom(s3, 1, 1), ped = onehot_atom(s3, 2, 1);
        int stop = s3.onehot_bits() + 1;
        bool_expr rel = bool_expr::implication(
            bool_expr::disjunction({bool_expr::atom(red), bool_expr::atom(ped)}),
            bool_expr::atom(stop));
        CHECK_FALSE(check_determinism(rel, s3, {2}));

        // Closing the implication to a biconditional restores determinism.
        bool_expr closed = bool_expr::equivalence(
            bool_expr::atom(stop),
            bool_expr::disjunction({bool_expr::atom(red), bool_expr::atom(ped)}));
        CHECK(check_determinism(closed, s3, {2}));
    }
    SUBCASE("capacity bound") {
        concept_space big{30, 2};
        CHECK_THROWS_AS(check_determinism(rel_det, big, {2}), capacity_error);
    }
}

TEST_CASE("exhaustive support") {
    CHECK(exhaustive_support(parity_knowledge(3)).size() == 8);
    CHECK(exhaustive_support(sum_knowledge(2, 10)).size() == 100);

    knowledge x3 = parity_knowledge(3);
    support s = exhaustive_support(x3);
    SUBCASE("entries are label-consistent by construction") {
        for (const auto& e : s.entries) CHECK(e.label == label_of(x3, e.concepts));
    }
    SUBCASE("capacity error beyond the bound") {
        CHECK_THROWS_AS(exhaustive_support(sum_knowledge(2, 10), 50), capacity_error);
    }
    SUBCASE("make_support deduplicates and keeps order") {
        support m = make_support(x3, {{1, 0, 0}, {0, 0, 0}, {1, 0, 0}});
        REQUIRE(m.size() == 2);
        CHECK(m.entries[0].concepts == concept_vector{1, 0, 0});
        CHECK(m.entries[1].concepts == concept_vector{0, 0, 0});
    }
}

TEST_CASE("onehot layout") {
    concept_space s{3, 2};
    CHECK(onehot_atom(s, 0, 1) == 2);
    CHECK(onehot_atom(s, 2, 0) == 5);
    CHECK(onehot_encode(s, {0, 1, 1}) == std::vector<bool>{true, false, false, true, false, true});
    CHECK(onehot_decode(s, {true, false, false, true, false, true}) == concept_vector{0, 1, 1});
    CHECK_FALSE(onehot_decode(s, {true, true, false, true, false, true}).has_value());

    SUBCASE("code round trip") {
        concept_space q{4, 3};
        for_each_vector(q, [&](const concept_vector& c) {
            CHECK(vector_from_code(q, vector_code(q, c)) == c);
        });
        CHECK(vector_code(q, {0, 0, 1, 2}) == 5);  // big-endian positional code
    }
}
