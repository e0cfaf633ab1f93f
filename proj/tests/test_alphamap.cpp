#include <set>

#include "doctest.h"
#include "rsv/alphamap.hpp"
#include "test_helpers.hpp"

using namespace rsv;
using namespace rsv::testing;

namespace {

int count_stream(const concept_space& s, structure_mode mode) {
    int n = 0;
    if (mode == structure_mode::unrestricted)
        enumerate_alphas(s, [&](const unrestricted_alpha&) { ++n; });
    else
        enumerate_alphas(s, mode, [&](const alpha_map&) { ++n; });
    return n;
}

}  // namespace

TEST_CASE("alpha map application") {
    concept_space s{3, 2};
    std::vector<std::vector<int>> identity_maps(3, {0, 1});

    SUBCASE("identity reproduces the one-hot encoding") {
        alpha_map id = alpha_map::from_structure(s, {0, 1, 2}, identity_maps);
        for_each_vector(s, [&](const concept_vector& c) {
            CHECK(apply(id, s, c) == onehot_encode(s, c));
            CHECK(apply_decoded(id, s, c) == c);
        });
    }
    SUBCASE("block swap permutes decoded concepts") {
        concept_space s2{2, 2};
        alpha_map swap = alpha_map::from_structure(s2, {1, 0}, {{0, 1}, {0, 1}});
        for_each_vector(s2, [&](const concept_vector& c) {
            CHECK(apply_decoded(swap, s2, c) == concept_vector{c[1], c[0]});
        });
    }
    SUBCASE("per-block negation on the first block") {
        alpha_map neg = alpha_map::from_structure(s, {0, 1, 2}, {{1, 0}, {0, 1}, {0, 1}});
        CHECK(apply_decoded(neg, s, {0, 1, 1}) == concept_vector{1, 1, 1});
    }
    SUBCASE("merged blocks are reported as non-decodable") {
        concept_space s2{2, 2};
        // Both ground-truth concepts feed predicted block 0.
        alpha_map merge = alpha_map::from_structure(s2, {0, 0}, {{0, 1}, {0, 1}});
        CHECK_THROWS_AS(apply_decoded(merge, s2, {0, 1}), eval_error);
        auto bits = apply(merge, s2, {0, 1});
        CHECK(bits == std::vector<bool>{true, true, false, false});
    }
}

TEST_CASE("alpha enumeration sizes") {
    CHECK(count_stream({3, 2}, structure_mode::permutation) == 384);   // 3! * 4^3
    CHECK(count_stream({3, 2}, structure_mode::complete) == 1728);     // 3^3 * 4^3
    CHECK(count_stream({2, 2}, structure_mode::unrestricted) == 256);  // 4^4
    CHECK(*alpha_count({3, 2}, structure_mode::permutation) == 384);
    CHECK(*alpha_count({3, 2}, structure_mode::complete) == 1728);
    CHECK(*alpha_count({2, 2}, structure_mode::unrestricted) == 256);

    SUBCASE("each structurally valid map appears exactly once") {
        std::set<std::vector<std::uint8_t>> seen;
        enumerate_alphas({2, 2}, structure_mode::complete,
                         [&](const alpha_map& m) { CHECK(seen.insert(m.a).second); });
        CHECK(seen.size() == 64);  // 2^2 * 4^2
    }
    SUBCASE("capacity cap") {
        CHECK_THROWS_AS(count_stream({4, 10}, structure_mode::permutation), capacity_error);
        CHECK_THROWS_AS(count_stream({3, 2}, structure_mode::unrestricted) >= 0 &&
                            count_stream({4, 4}, structure_mode::unrestricted),
                        capacity_error);
    }
}

TEST_CASE("published shortcut counts by enumeration") {
    knowledge x3 = parity_knowledge(3);
    knowledge a3 = and_knowledge(3);
    support x_full = exhaustive_support(x3);
    support a_full = exhaustive_support(a3);

    CHECK(count_by_enumeration(x3, x_full, structure_mode::permutation) == 24);
    CHECK(count_by_enumeration(a3, a_full, structure_mode::permutation) == 6);
    CHECK(count_by_enumeration(x3, make_support(x3, {{1, 0, 0}}), structure_mode::permutation) == 192);
    CHECK(count_by_enumeration(a3, make_support(a3, {{1, 1, 1}}), structure_mode::permutation) == 48);
    CHECK(count_by_enumeration(a3, make_support(a3, {{0, 0, 0}}), structure_mode::permutation) == 336);

    SUBCASE("any single example gives the same count for these symmetric formulas") {
        CHECK(count_by_enumeration(x3, make_support(x3, {{0, 0, 0}}), structure_mode::permutation) ==
              192);
        CHECK(count_by_enumeration(a3, make_support(a3, {{0, 1, 1}}), structure_mode::permutation) ==
              336);
    }
}

TEST_CASE("closed-form count") {
    SUBCASE("injective knowledge over an exhaustive support admits only the identity") {
        knowledge inj = injective_knowledge({3, 2});
        CHECK(count_closed_form(inj, exhaustive_support(inj)) == 1);
    }
    SUBCASE("constant knowledge admits every map") {
        knowledge c3 = constant_knowledge({3, 2});
        mpz_class want;
        mpz_ui_pow_ui(want.get_mpz_t(), 8, 8);
        CHECK(count_closed_form(c3, exhaustive_support(c3)) == want);
    }
    SUBCASE("3-bit parity, exhaustive: 4^8, cross-checked by brute force") {
        knowledge x3 = parity_knowledge(3);
        support full = exhaustive_support(x3);
        CHECK(count_closed_form(x3, full) == 65536);
        CHECK(count_by_enumeration(x3, full, structure_mode::unrestricted) == 65536);
    }
    SUBCASE("matches unrestricted enumeration for partial supports") {
        knowledge x2 = parity_knowledge(2);
        for (auto vectors : std::vector<std::vector<concept_vector>>{
                 {}, {{0, 0}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 1}, {0, 0}}}) {
            support s = make_support(x2, vectors);
            CHECK(count_closed_form(x2, s) ==
                  count_by_enumeration(x2, s, structure_mode::unrestricted));
        }
    }
}

TEST_CASE("count ordering and identity membership") {
    // Random formula knowledges at k = 3, b = 2.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        knowledge kn = knowledge_from_cnf(random_lcnf(3, 1 + static_cast<int>(seed % 4), 2, seed));
        support full = exhaustive_support(kn);
        support partial = make_support(kn, {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}});
        for (const support& s : {full, partial}) {
            mpz_class perm = count_by_enumeration(kn, s, structure_mode::permutation);
            mpz_class comp = count_by_enumeration(kn, s, structure_mode::complete);
            mpz_class unre = count_by_enumeration(kn, s, structure_mode::unrestricted);
            CHECK(perm >= 1);  // the identity map is always consistent
            CHECK(perm <= comp);
            CHECK(comp <= unre);
        }
        SUBCASE("") {}
    }
}

TEST_CASE("shrinking the support never decreases a count") {
    for (std::uint64_t seed = 10; seed < 14; ++seed) {
        knowledge kn = knowledge_from_cnf(random_lcnf(3, 3, 2, seed));
        support full = exhaustive_support(kn);
        for (structure_mode mode :
             {structure_mode::permutation, structure_mode::complete, structure_mode::unrestricted}) {
            mpz_class prev = count_by_enumeration(kn, full, mode);
            std::vector<concept_vector> vectors;
            for (const auto& e : full.entries) vectors.push_back(e.concepts);
            while (!vectors.empty()) {
                vectors.pop_back();
                mpz_class cur = count_by_enumeration(kn, make_support(kn, vectors), mode);
                CHECK(cur >= prev);
                prev = cur;
            }
        }
    }
}
