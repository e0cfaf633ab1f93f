#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsv/knowledge.hpp"
#include "rsv/logic_parser.hpp"

namespace rsv {

enum class task_family {
    mnlogic,
    mnadd,
    mnadd_half,
    mnadd_evenodd,
    mnmath,
    kand,
    cle4evr,
    boia,
    boia_ood_emergency,
    custom_cnf,
};

const char* to_string(task_family f);
std::optional<task_family> family_from_string(const std::string& name);

// Family-specific parameters; unused fields are ignored by each builder.
struct task_spec {
    task_family family = task_family::mnlogic;

    // mnlogic / custom_cnf: k bits with K = (phi <-> y).
    int n_bits = 3;
    std::optional<bool_expr> formula;       // over atoms 1..n_bits; default XOR
    std::optional<cnf_formula> custom_cnf;  // custom_cnf family

    // mnadd family and mnmath: digits with b values each.
    int n_digits = 2;
    int digit_base = 10;
    std::vector<int> digit_values;  // allowed digits (support restriction); empty = all

    // mnmath: one entry per label; integer entries give the equation's value,
    // boolean entries (e.g. Eq(a+b, c+d)) give a binary label.
    std::vector<logic_entry> equations;

    // kand: figures x primitives, each with (shape, color), b values each.
    int n_figures = 3;
    int n_primitives = 3;
    std::vector<std::string> shape_names;  // default square/triangle/circle
    std::vector<std::string> color_names;  // default red/yellow/blue
    // Per-figure pattern over one figure's symbols plus an aggregator over
    // one boolean per figure; absent = the builtin same/pair/distinct pattern.
    std::optional<bool_expr> figure_logic;
    std::optional<bool_expr> aggregator_logic;

    // cle4evr: objects with (color, shape), b values each.
    int n_objects = 2;
    int n_values = 10;
    std::optional<bool_expr> object_logic;  // over all objects' symbols

    // mnlogic / kand / cle4evr: custom full-input formula (symbol indices
    // over the whole concept vector).
    std::optional<bool_expr> full_logic;
};

// A fully built task: knowledge plus naming and the family's canonical
// training restriction.
struct task_bundle {
    std::string name;
    concept_space space;
    knowledge know;
    std::vector<std::string> symbol_names;  // one per concept
    std::vector<std::string> label_names;   // one per label position
    // Family-level restriction on ground-truth vectors (e.g. digit subsets,
    // parity pairs).  Null when every vector may occur.
    std::function<bool(const concept_vector&)> allowed;

    bool restricted() const { return static_cast<bool>(allowed); }
};

// Builds the knowledge for a spec.  Bit formulas are constructed whenever
// the label structure allows it at the given enumeration bound; otherwise
// the knowledge carries only beta and the counting paths reject it.
task_bundle build_task(const task_spec& spec, std::uint64_t bound = default_enumeration_bound);

// The family's canonical support: the allowed subset of the space, or the
// exhaustive support when the family imposes no restriction.
support default_support(const task_bundle& task, std::uint64_t bound = default_enumeration_bound);

// Parses compact CLI task names: xor-K, and-K, random-K-M-L (seeded random
// l-CNF knowledge), mnadd-K, mnadd-half, mnadd-evenodd, mnmath, kand,
// cle4evr, boia, boia-emergency.
task_spec spec_from_name(const std::string& name, std::uint64_t seed = 0);

// DIMACS encoding of the knowledge itself: one-hot concept bits, then one
// variable per label slot, then Tseitin auxiliaries; models restricted to
// (concept, label) bits are exactly the graph of beta.
std::string export_knowledge_dimacs(const task_bundle& task);

// The 21 road-scene concept names in canonical order, and the 4 action names.
const std::vector<std::string>& boia_concept_names();
const std::vector<std::string>& boia_action_names();

}  // namespace rsv
