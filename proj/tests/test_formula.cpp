#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rsv/expr.hpp"
#include "rsv/formula.hpp"

using namespace rsv;

namespace {

assignment bits(std::initializer_list<bool> bs) { return assignment(std::vector<bool>(bs)); }

// Enumerates every total assignment over 1..n_vars.
template <typename Fn>
void for_each_assignment(int n_vars, Fn fn) {
    for (std::uint64_t m = 0; m < (1ULL << n_vars); ++m) {
        std::vector<bool> bs(static_cast<std::size_t>(n_vars));
        for (int v = 0; v < n_vars; ++v) bs[static_cast<std::size_t>(v)] = (m >> v) & 1;
        fn(assignment(bs));
    }
}

}  // namespace

TEST_CASE("dimacs parsing") {
    cnf_formula f = parse_dimacs("p cnf 2 2\n1 2 0\n1 -2 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == clause{literal(1, true), literal(2, true)});
    CHECK(f.clauses[1] == clause{literal(1, true), literal(2, false)});

    cnf_formula empty = parse_dimacs("p cnf 1 0\n");
    CHECK(empty.num_vars == 1);
    CHECK(empty.clauses.empty());

    SUBCASE("literal index above declared variable count") {
        CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n3 0\n"),
                             "line 2: literal index 3 exceeds declared variable count 2", parse_error);
    }
    SUBCASE("malformed header") {
        CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 0\n"), parse_error);
        CHECK_THROWS_AS(parse_dimacs("1 0\n"), parse_error);
    }
    SUBCASE("missing terminator") { CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), parse_error); }
    SUBCASE("clause count mismatch") {
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), parse_error);
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 0\n2 0\n"), parse_error);
    }
    SUBCASE("trailing garbage rejected") {
        CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n%\n"), parse_error);
    }
    SUBCASE("clauses may span lines") {
        cnf_formula g = parse_dimacs("p cnf 3 1\n1\n2\n3 0\n");
        REQUIRE(g.clauses.size() == 1);
        CHECK(g.clauses[0].size() == 3);
    }
    SUBCASE("comments are preserved") {
        cnf_formula g = parse_dimacs("c ind 1 2 0\np cnf 2 1\n1 2 0\n");
        REQUIRE(g.comments.size() == 1);
        CHECK(g.comments[0] == "ind 1 2 0");
    }
}

TEST_CASE("dimacs emission round-trips") {
    cnf_formula f = parse_dimacs("p cnf 2 2\n1 2 0\n1 -2 0\n");
    CHECK(parse_dimacs(emit_dimacs(f)) == f);

    cnf_formula empty;
    empty.num_vars = 4;
    CHECK(emit_dimacs(empty) == "p cnf 4 0\n");

    SUBCASE("projection comment comes first") {
        std::string text = emit_dimacs(f, {"ind 1 2 0"});
        CHECK(text.substr(0, text.find('\n')) == "c ind 1 2 0");
        CHECK(parse_dimacs(text) == f);
    }
    SUBCASE("random formulas round-trip") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            cnf_formula g = random_lcnf(6, 9, 3, seed);
            CHECK(parse_dimacs(emit_dimacs(g)) == g);
        }
    }
}

TEST_CASE("cnf evaluation") {
    cnf_formula f = parse_dimacs("p cnf 2 2\n1 2 0\n1 -2 0\n");
    CHECK_FALSE(eval(f, bits({false, true})));
    CHECK(eval(f, bits({true, false})));
    CHECK(eval(f, bits({true, true})));

    SUBCASE("an assignment satisfying every clause's first literal satisfies the formula") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            cnf_formula g = random_lcnf(8, 10, 3, seed);
            std::map<int, bool> wanted;
            bool consistent = true;
            for (const auto& c : g.clauses) {
                auto [it, inserted] = wanted.try_emplace(c[0].var, c[0].positive);
                if (!inserted && it->second != c[0].positive) consistent = false;
            }
            if (!consistent) continue;
            std::vector<bool> bs(8, false);
            for (auto [v, pos] : wanted) bs[static_cast<std::size_t>(v - 1)] = pos;
            CHECK(eval(g, assignment(bs)));
        }
    }
    SUBCASE("missing variable is an error") {
        CHECK_THROWS_AS(eval(f, bits({true})), eval_error);
    }
}

TEST_CASE("bool_expr evaluation") {
    // 3-bit XOR is a parity check.
    bool_expr x = bool_expr::exclusive_or({bool_expr::atom(1), bool_expr::atom(2), bool_expr::atom(3)});
    CHECK_FALSE(eval(x, bits({true, true, false})));
    CHECK(eval(x, bits({true, false, false})));

    bool_expr iff = bool_expr::equivalence(bool_expr::atom(1), bool_expr::atom(2));
    CHECK(eval(iff, bits({true, true})));
    CHECK(eval(iff, bits({false, false})));
    CHECK_FALSE(eval(iff, bits({true, false})));

    bool_expr eq = bool_expr::int_equality(int_term::symbol(1), int_term::symbol(2));
    CHECK_THROWS_AS(eval(eq, bits({true, true})), eval_error);
}

TEST_CASE("tseitin conversion") {
    SUBCASE("single atom introduces nothing") {
        tseitin_result t = tseitin(bool_expr::atom(3), 4);
        CHECK(t.aux_count == 0);
        CHECK(t.root == literal(3, true));
        CHECK(t.cnf.clauses.empty());
    }
    SUBCASE("negation folds into polarity") {
        tseitin_result t = tseitin(bool_expr::negation(bool_expr::atom(1)), 2);
        CHECK(t.aux_count == 0);
        CHECK(t.root == literal(1, false));
    }
    SUBCASE("conjunction models project onto the satisfying atom assignment") {
        bool_expr e = bool_expr::conjunction({bool_expr::atom(1), bool_expr::atom(2)});
        tseitin_result t = tseitin(e, 3);
        // Enumerate all assignments of the small CNF with the root asserted.
        cnf_formula f = t.cnf;
        f.clauses.push_back({t.root});
        std::set<std::pair<bool, bool>> projected;
        for_each_assignment(f.num_vars, [&](const assignment& a) {
            if (eval(f, a)) projected.insert({a.value(1), a.value(2)});
        });
        CHECK(projected == std::set<std::pair<bool, bool>>{{true, true}});
    }
    SUBCASE("equisatisfiability and unique extension, expressions over 4 atoms") {
        std::vector<bool_expr> exprs;
        auto a1 = bool_expr::atom(1), a2 = bool_expr::atom(2), a3 = bool_expr::atom(3),
             a4 = bool_expr::atom(4);
        exprs.push_back(bool_expr::exclusive_or({a1, a2, a3, a4}));
        exprs.push_back(bool_expr::disjunction(
            {bool_expr::conjunction({a1, a2}), bool_expr::conjunction({a3, a4})}));
        exprs.push_back(bool_expr::equivalence(bool_expr::negation(a1), bool_expr::disjunction({a2, a3})));
        exprs.push_back(bool_expr::conjunction(
            {bool_expr::disjunction({a1, bool_expr::negation(a2)}),
             bool_expr::exclusive_or({a3, a4}), bool_expr::negation(bool_expr::conjunction({a1, a4}))}));
        for (const auto& e : exprs) {
            tseitin_result t = tseitin(e, 5);
            for_each_assignment(4, [&](const assignment& atoms) {
                bool want = eval(e, atoms);
                // Exactly one extension to the auxiliaries satisfies the
                // definitional clauses, and under it the root matches eval.
                int extensions = 0;
                for_each_assignment(t.aux_count, [&](const assignment& aux) {
                    std::vector<bool> full;
                    for (int v = 1; v <= 4; ++v) full.push_back(atoms.value(v));
                    for (int v = 1; v <= t.aux_count; ++v) full.push_back(aux.value(v));
                    assignment fa{full};
                    if (!eval(t.cnf, fa)) return;
                    if (eval(clause{t.root}, fa) == want) ++extensions;
                });
                CHECK(extensions == 1);
            });
        }
    }
    SUBCASE("aux variables are contiguous from first_aux") {
        bool_expr e = bool_expr::conjunction(
            {bool_expr::disjunction({bool_expr::atom(1), bool_expr::atom(2)}), bool_expr::atom(3)});
        tseitin_result t = tseitin(e, 10);
        CHECK(t.aux_count == 2);
        CHECK(t.cnf.num_vars == 11);
        CHECK(t.root.var == 11);
    }
    SUBCASE("non-boolean nodes are rejected") {
        bool_expr eq = bool_expr::int_equality(int_term::symbol(1), int_term::constant(2));
        CHECK_THROWS_AS(tseitin(eq, 5), eval_error);
    }
}

TEST_CASE("random l-cnf generation") {
    SUBCASE("k=1, m=1, l=1 forces a unit clause over variable 1") {
        for (std::uint64_t seed : {0ULL, 1ULL, 7ULL}) {
            cnf_formula f = random_lcnf(1, 1, 1, seed);
            REQUIRE(f.clauses.size() == 1);
            REQUIRE(f.clauses[0].size() == 1);
            CHECK(f.clauses[0][0].var == 1);
        }
    }
    SUBCASE("same seed gives identical output") {
        CHECK(random_lcnf(3, 2, 3, 0) == random_lcnf(3, 2, 3, 0));
        CHECK(emit_dimacs(random_lcnf(9, 20, 3, 42)) == emit_dimacs(random_lcnf(9, 20, 3, 42)));
    }
    SUBCASE("clause structure") {
        // All 8 distinct width-3 clauses over 3 variables.
        cnf_formula f = random_lcnf(3, 8, 3, 0);
        std::set<clause> distinct;
        for (const auto& c : f.clauses) {
            CHECK(c.size() == 3);
            std::set<int> vars;
            for (const auto& l : c) vars.insert(l.var);
            CHECK(vars.size() == 3);  // distinct variables: no tautology possible
            distinct.insert(c);
        }
        CHECK(distinct.size() == 8);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(random_lcnf(2, 1, 3, 0), capacity_error);   // l > k
        CHECK_THROWS_AS(random_lcnf(3, 9, 3, 0), capacity_error);   // only 8 clauses exist
        CHECK_THROWS_AS(random_lcnf(3, 25, 2, 0), capacity_error);  // only 3*4=12 exist
    }
}
