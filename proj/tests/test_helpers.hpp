#pragma once

#include <vector>

#include "rsv/knowledge.hpp"

namespace rsv::testing {

inline bool_expr parity_formula(int k) {
    std::vector<bool_expr> atoms;
    for (int i = 1; i <= k; ++i) atoms.push_back(bool_expr::atom(i));
    return bool_expr::exclusive_or(std::move(atoms));
}

inline bool_expr all_of_formula(int k) {
    std::vector<bool_expr> atoms;
    for (int i = 1; i <= k; ++i) atoms.push_back(bool_expr::atom(i));
    return bool_expr::conjunction(std::move(atoms));
}

// K = (xor(c1..ck) <-> y)
inline knowledge parity_knowledge(int k) { return knowledge_from_formula(k, parity_formula(k)); }

// K = (and(c1..ck) <-> y)
inline knowledge and_knowledge(int k) { return knowledge_from_formula(k, all_of_formula(k)); }

// Injective knowledge: the label is the vector's code (one categorical
// position with b^k values).  No bit formula.
inline knowledge injective_knowledge(const concept_space& space) {
    knowledge kn;
    kn.space = space;
    kn.label_arity = {static_cast<int>(*space.volume())};
    kn.slots = make_label_slots(kn.label_arity);
    kn.beta = [space](const concept_vector& c) -> label_vector {
        return {static_cast<int>(vector_code(space, c))};
    };
    return kn;
}

// Constant knowledge: every vector maps to label 1.
inline knowledge constant_knowledge(const concept_space& space) {
    knowledge kn;
    kn.space = space;
    kn.label_arity = {2};
    kn.slots = make_label_slots(kn.label_arity);
    kn.beta = [](const concept_vector&) -> label_vector { return {1}; };
    kn.bit_formula = {bool_expr::constant(true)};
    return kn;
}

}  // namespace rsv::testing
