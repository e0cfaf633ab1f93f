#include <set>

#include "doctest.h"
#include "rsv/counter.hpp"
#include "rsv/encode.hpp"
#include "rsv/rng.hpp"
#include "test_helpers.hpp"

using namespace rsv;
using namespace rsv::testing;

namespace {

mpz_class encoded_count(const knowledge& k, const support& s, structure_mode mode) {
    return count_models(build_counting_cnf(k, s, mode).cnf).value;
}

}  // namespace

TEST_CASE("exactly_one encoding") {
    SUBCASE("single variable is a unit clause") {
        auto cls = exactly_one({7});
        REQUIRE(cls.size() == 1);
        CHECK(cls[0] == clause{literal(7, true)});
    }
    SUBCASE("two variables") {
        auto cls = exactly_one({1, 2});
        REQUIRE(cls.size() == 2);
        cnf_formula f;
        f.num_vars = 2;
        f.clauses = cls;
        CHECK(count_exhaustive(f).value == 2);
    }
    SUBCASE("three variables: 3 of 8 assignments satisfy") {
        cnf_formula f;
        f.num_vars = 3;
        f.clauses = exactly_one({1, 2, 3});
        CHECK(count_exhaustive(f).value == 3);
    }
    SUBCASE("empty list is an error") { CHECK_THROWS_AS(exactly_one({}), eval_error); }
}

TEST_CASE("variable book layout") {
    knowledge x3 = parity_knowledge(3);
    counting_problem p = build_counting_cnf(x3, exhaustive_support(x3), structure_mode::permutation);
    const var_book& vb = p.book;
    // 9 O vars, then 36 A vars, then 8 examples x 6 chat vars.
    CHECK(vb.o_var(0, 0) == 1);
    CHECK(vb.o_var(2, 2) == 9);
    CHECK(vb.a_var(0, 0) == 10);
    CHECK(vb.a_var(5, 5) == 45);
    CHECK(vb.chat_var(0, 0) == 46);
    CHECK(vb.chat_var(7, 5) == 93);  // 8 examples x (k*b = 6) chat bits
    CHECK(vb.first_aux() == 94);
    CHECK(p.projection.size() == 36);
    CHECK(p.projection.front() == 10);
    CHECK(p.projection.back() == 45);
}

TEST_CASE("encoded model counts match the published values") {
    knowledge x3 = parity_knowledge(3);
    knowledge a3 = and_knowledge(3);
    CHECK(encoded_count(x3, exhaustive_support(x3), structure_mode::permutation) == 24);
    CHECK(encoded_count(a3, exhaustive_support(a3), structure_mode::permutation) == 6);
    CHECK(encoded_count(x3, make_support(x3, {{1, 0, 0}}), structure_mode::permutation) == 192);
    CHECK(encoded_count(a3, make_support(a3, {{1, 1, 1}}), structure_mode::permutation) == 48);
    CHECK(encoded_count(a3, make_support(a3, {{0, 0, 0}}), structure_mode::permutation) == 336);
}

TEST_CASE("encoder and enumeration oracle agree") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        int m = 1 + static_cast<int>(seed % 5);
        int l = 1 + static_cast<int>(seed % 3);
        knowledge kn = knowledge_from_cnf(random_lcnf(3, m, l, seed));
        support full = exhaustive_support(kn);
        std::vector<concept_vector> sub;
        for (std::size_t i = 0; i < full.size(); i += 1 + seed % 3) sub.push_back(full.entries[i].concepts);
        for (const support& s : {full, make_support(kn, sub)}) {
            for (structure_mode mode : {structure_mode::complete, structure_mode::permutation}) {
                CHECK(encoded_count(kn, s, mode) == count_by_enumeration(kn, s, mode));
            }
        }
    }
}

TEST_CASE("O, chat, and aux variables are functionally determined by A") {
    // Small instance: k=2, b=2, one support example; 25 variables total.
    knowledge x2 = parity_knowledge(2);
    support s = make_support(x2, {{1, 0}});
    counting_problem p = build_counting_cnf(x2, s, structure_mode::permutation);
    REQUIRE(p.cnf.num_vars <= 26);

    const int n_a = 16;
    // Every enumerated alpha's A matrix extends to exactly one model when it
    // is support-consistent and to none otherwise.
    std::vector<bool> expected{x2.slot_values(s.entries[0].label)[0]};
    int consistent = 0;
    enumerate_alphas(x2.space, structure_mode::permutation, [&](const alpha_map& m) {
        cnf_formula f = p.cnf;
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                f.clauses.push_back({literal(p.book.a_var(x, y), m.a_at(x, y))});
        std::vector<bool> chat = apply(m, x2.space, s.entries[0].concepts);
        bool want = eval(x2.bit_formula[0], assignment(chat)) == expected[0];
        mpz_class models = count_models(f).value;
        CHECK(models == (want ? 1 : 0));
        consistent += want;
    });
    CHECK(consistent == count_by_enumeration(x2, s, structure_mode::permutation));

    // Structurally invalid A assignments (sampled) admit no model at all.
    split_mix64 rng(99);
    std::set<std::vector<std::uint8_t>> valid;
    enumerate_alphas(x2.space, structure_mode::permutation,
                     [&](const alpha_map& m) { valid.insert(m.a); });
    int rejected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> bits(n_a);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.coin());
        if (valid.count(bits)) continue;
        cnf_formula f = p.cnf;
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                f.clauses.push_back({literal(p.book.a_var(x, y), bits[static_cast<std::size_t>(x * 4 + y)] != 0)});
        CHECK(count_models(f).value == 0);
        ++rejected;
    }
    CHECK(rejected > 150);
}

TEST_CASE("export format") {
    knowledge x3 = parity_knowledge(3);
    counting_problem p = build_counting_cnf(x3, exhaustive_support(x3), structure_mode::permutation);
    std::string text = export_problem(p);

    SUBCASE("leading projection line") {
        std::string first = text.substr(0, text.find('\n'));
        CHECK(first.substr(0, 6) == "c ind ");
        CHECK(first.substr(first.size() - 2) == " 0");
    }
    SUBCASE("re-parse gives the identical clause set") {
        cnf_formula parsed = parse_dimacs(text);
        CHECK(parsed == p.cnf);
        CHECK(count_models(parsed).value == 24);
    }
    SUBCASE("byte-identical across rebuilds") {
        counting_problem q =
            build_counting_cnf(x3, exhaustive_support(x3), structure_mode::permutation);
        CHECK(export_problem(q) == text);
    }
}

TEST_CASE("encode error paths") {
    knowledge x3 = parity_knowledge(3);
    support s = exhaustive_support(x3);
    CHECK_THROWS_AS(build_counting_cnf(x3, s, structure_mode::unrestricted), eval_error);
    CHECK_THROWS_AS(build_counting_cnf(x3, support{}, structure_mode::permutation), eval_error);
    knowledge no_formula = injective_knowledge({2, 2});
    CHECK_THROWS_AS(
        build_counting_cnf(no_formula, exhaustive_support(no_formula), structure_mode::permutation),
        eval_error);
}
