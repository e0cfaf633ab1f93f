#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rsv/formula.hpp"

namespace rsv {

// Integer-valued term over categorical symbols.  Symbols are 1-based
// positions; their values are supplied at evaluation time.  These terms only
// occur below `eq` nodes of bool_expr or as standalone equation entries in
// task definitions.
class int_term {
public:
    enum class node_kind { constant, symbol, add, mul };

    static int_term constant(long v);
    static int_term symbol(int index);  // index >= 1
    static int_term add(std::vector<int_term> terms);
    static int_term mul(std::vector<int_term> terms);

    node_kind kind() const { return node_->kind; }
    long const_value() const { return node_->value; }
    int symbol_index() const { return static_cast<int>(node_->value); }
    const std::vector<int_term>& children() const { return node_->children; }

    long eval(const std::function<long(int)>& symbol_value) const;
    int_term remap_symbols(const std::function<int(int)>& map) const;
    void collect_symbols(std::vector<int>& out) const;
    // Value interval under per-symbol [lo, hi] bounds.
    std::pair<long, long> bounds(const std::function<std::pair<long, long>(int)>& symbol_bounds) const;
    std::string to_string() const;

private:
    struct node {
        node_kind kind;
        long value = 0;  // constant value or symbol index
        std::vector<int_term> children;
    };
    std::shared_ptr<const node> node_;
    explicit int_term(std::shared_ptr<const node> n) : node_(std::move(n)) {}
};

// Boolean expression tree.  Atoms are 1-based propositional variables.
// `int_equality` nodes compare two integer terms; they appear only in task
// knowledge and are rejected by the propositional evaluator here (the tasks
// layer evaluates and lowers them).
class bool_expr {
public:
    enum class node_kind {
        constant,
        atom,
        negation,
        conjunction,
        disjunction,
        exclusive_or,  // n-ary parity
        equivalence,   // binary
        int_equality,
    };

    static bool_expr constant(bool v);
    static bool_expr atom(int index);  // index >= 1
    static bool_expr negation(bool_expr e);
    static bool_expr conjunction(std::vector<bool_expr> es);
    static bool_expr disjunction(std::vector<bool_expr> es);
    static bool_expr exclusive_or(std::vector<bool_expr> es);
    static bool_expr equivalence(bool_expr a, bool_expr b);
    static bool_expr implication(bool_expr a, bool_expr b);  // sugar: !a | b
    static bool_expr int_equality(int_term lhs, int_term rhs);

    node_kind kind() const { return node_->kind; }
    bool const_value() const { return node_->value; }
    int atom_index() const { return node_->atom; }
    const std::vector<bool_expr>& children() const { return node_->children; }
    const int_term& lhs_term() const { return node_->terms[0]; }
    const int_term& rhs_term() const { return node_->terms[1]; }

    bool is_pure_boolean() const;  // no int_equality anywhere
    int max_atom() const;
    void collect_symbols(std::vector<int>& out) const;  // atoms and eq-term symbols
    std::string to_string() const;

    // Substitutes every atom index through `map` (1-based -> 1-based).
    // int_equality nodes are left untouched.
    bool_expr remap_atoms(const std::function<int(int)>& map) const;

    // Substitutes atom indices and the symbols inside equality terms.
    bool_expr remap_symbols(const std::function<int(int)>& map) const;

    // Folds away constant subtrees; the result either is a constant node or
    // contains no constant nodes at all.
    bool_expr fold_constants() const;

private:
    struct node {
        node_kind kind;
        bool value = false;
        int atom = 0;
        std::vector<bool_expr> children;
        std::vector<int_term> terms;
    };
    std::shared_ptr<const node> node_;
    explicit bool_expr(std::shared_ptr<const node> n) : node_(std::move(n)) {}
};

// Standard two-valued semantics; exclusive_or is parity, equivalence is
// equality.  Throws eval_error on int_equality nodes or missing variables.
bool eval(const bool_expr& e, const assignment& a);

// Tseitin conversion of a pure boolean expression.  Negations fold into the
// polarity of the child literal and introduce no auxiliary variable, so for
// every total assignment of the atoms the definitional clauses have exactly
// one extension to the auxiliaries, under which `root` evaluates to the
// expression's value.  Auxiliaries are numbered contiguously from
// `first_aux_var`, which must exceed every atom index.  Constant expressions
// (after folding) are reported through `root_is_constant`.
struct tseitin_result {
    cnf_formula cnf;  // definitional clauses only; num_vars covers atoms and auxiliaries
    literal root{0, true};
    int aux_count = 0;
    bool root_is_constant = false;
    bool constant_value = false;
};
tseitin_result tseitin(const bool_expr& e, int first_aux_var);

// Deterministic random l-CNF: m distinct clauses, each over l distinct
// variables chosen uniformly from 1..k with uniform signs.  Distinct
// variables per clause rule out tautological and contradictory clauses.
// Output is a pure function of (k, m, l, seed).
cnf_formula random_lcnf(int k, int m, int l, std::uint64_t seed);

}  // namespace rsv
