#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rsv/expr.hpp"

namespace rsv {

// Named symbols in declaration order; symbol i maps to atom / term index i+1.
struct symbol_table {
    std::vector<std::string> names;

    int index_of(const std::string& name) const;  // 1-based, 0 when unknown
    static symbol_table defaults(int k);          // c1, c2, ...
};

// One entry of a task's `logic`: a boolean formula (binary label) or an
// integer expression (categorical label).
using logic_entry = std::variant<bool_expr, int_term>;

// Parses a sympy-style expression: function forms And/Or/Not/Xor/Implies/
// Equivalent/Eq/Ne/Add/Mul, operators & | ~ ^ over booleans and + - * over
// integers, parentheses, integer literals, true/false, and the table's
// symbol names.  Symbols are integer-valued; a bare symbol in a boolean
// position is accepted here and later interpreted as "value = 1" by the task
// builder (only valid for two-valued concepts).
logic_entry parse_logic_entry(const std::string& text, const symbol_table& symbols);

// Convenience: parse and require a boolean entry.
bool_expr parse_bool_logic(const std::string& text, const symbol_table& symbols);

}  // namespace rsv
