#pragma once

#include <string>
#include <vector>

#include "rsv/alphamap.hpp"
#include "rsv/knowledge.hpp"

namespace rsv {

// Variable layout of a counting CNF.  Numbering is contiguous and
// deterministic: all O variables (row-major), then all A variables
// (row-major), then one block of chat variables per support example, then
// Tseitin auxiliaries.
struct var_book {
    int k = 0;
    int b = 2;
    int n_examples = 0;
    int aux_count = 0;

    int o_var(int i, int j) const { return 1 + i * k + j; }
    int a_var(int x, int y) const { return 1 + k * k + x * (k * b) + y; }
    int chat_var(int example, int x) const {
        return 1 + k * k + (k * b) * (k * b) + example * (k * b) + x;
    }
    int first_aux() const { return chat_var(n_examples, 0); }
    int total_vars() const { return first_aux() - 1 + aux_count; }
};

// CNF whose models are exactly the structurally valid maps consistent with
// the support; O, chat, and auxiliary variables are functionally determined
// by the A variables, which form the projection set.
struct counting_problem {
    cnf_formula cnf;
    std::vector<int> projection;  // the A variables, ascending
    var_book book;
    structure_mode mode;
};

// Pairwise exactly-one: one at-least-one clause plus all at-most-one pairs.
// No auxiliary variables.
std::vector<clause> exactly_one(const std::vector<int>& vars);

// Builds the counting CNF for complete or permutation mode.  Requires the
// knowledge's bit formula; its total model count equals
// count_by_enumeration(k, supp, mode).
counting_problem build_counting_cnf(const knowledge& k, const support& supp, structure_mode mode);

// DIMACS text with a leading `c ind v1 ... vn 0` projection line followed by
// comments documenting the variable ranges.  Byte-stable for fixed inputs.
std::string export_problem(const counting_problem& p);

}  // namespace rsv
