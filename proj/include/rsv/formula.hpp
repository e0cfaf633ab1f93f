#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsv/errors.hpp"

namespace rsv {

// A propositional literal: variable index (>= 1) plus polarity.
struct literal {
    int var = 0;
    bool positive = true;

    literal() = default;
    literal(int v, bool pos) : var(v), positive(pos) {}

    // From the signed DIMACS convention (3 / -3).
    static literal from_dimacs(int code) { return literal(code < 0 ? -code : code, code > 0); }
    int to_dimacs() const { return positive ? var : -var; }
    literal operator-() const { return literal(var, !positive); }

    friend bool operator==(const literal& a, const literal& b) {
        return a.var == b.var && a.positive == b.positive;
    }
    friend bool operator<(const literal& a, const literal& b) {
        return a.var != b.var ? a.var < b.var : a.positive < b.positive;
    }
};

using clause = std::vector<literal>;

// CNF over variables 1..num_vars.  `comments` holds the text of every `c`
// line (without the leading "c ") so that annotations such as a projection
// line survive a parse/emit round trip.
struct cnf_formula {
    int num_vars = 0;
    std::vector<clause> clauses;
    std::vector<std::string> comments;

    friend bool operator==(const cnf_formula& a, const cnf_formula& b) {
        return a.num_vars == b.num_vars && a.clauses == b.clauses;
    }
};

// Total assignment over variables 1..size.
class assignment {
public:
    assignment() = default;
    explicit assignment(std::vector<bool> bits) : bits_(std::move(bits)) {}
    static assignment from_bits(const std::vector<bool>& bits) { return assignment(bits); }

    int size() const { return static_cast<int>(bits_.size()); }
    void push(bool v) { bits_.push_back(v); }

    bool value(int var) const {
        if (var < 1 || var > size())
            throw eval_error("assignment has no value for variable " + std::to_string(var));
        return bits_[static_cast<std::size_t>(var - 1)];
    }

private:
    std::vector<bool> bits_;
};

// Strict DIMACS reader: optional comment lines, a single `p cnf V C` header,
// clauses terminated by 0 (and allowed to span lines).  Literal indices must
// stay within V, the clause count must match C exactly, and anything beyond
// whitespace or comments after the last clause (e.g. a `%` trailer) is
// rejected.  Errors name the offending line.
cnf_formula parse_dimacs(std::istream& in);
cnf_formula parse_dimacs(const std::string& text);

// Writer; `extra_comments` are emitted first, then the formula's own stored
// comments, one `c ` line each.
std::string emit_dimacs(const cnf_formula& f, const std::vector<std::string>& extra_comments = {});

// Two-valued semantics under a total assignment.
bool eval(const clause& c, const assignment& a);
bool eval(const cnf_formula& f, const assignment& a);

}  // namespace rsv
