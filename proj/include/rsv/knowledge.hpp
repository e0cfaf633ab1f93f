#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rsv/expr.hpp"

namespace rsv {

using concept_vector = std::vector<int>;  // length k, values in [0, b)
using label_vector = std::vector<int>;    // one value per label position

// k categorical concepts with a uniform number of values b per concept.
struct concept_space {
    int k = 0;
    int b = 2;

    int onehot_bits() const { return k * b; }
    bool contains(const concept_vector& c) const;
    // b^k, or nullopt when it does not fit 63 bits.
    std::optional<std::uint64_t> volume() const;

    friend bool operator==(const concept_space&, const concept_space&) = default;
};

// One-hot layout: concept j occupies bit positions [j*b, (j+1)*b), 0-based;
// within a block, bit v is set iff the concept's value is v.  The
// corresponding propositional atom index is bit position + 1.
inline int onehot_bit(const concept_space& s, int concept_idx, int value) {
    return concept_idx * s.b + value;
}
inline int onehot_atom(const concept_space& s, int concept_idx, int value) {
    return onehot_bit(s, concept_idx, value) + 1;
}
std::vector<bool> onehot_encode(const concept_space& s, const concept_vector& c);
// Decodes a raw bit vector if every block is exactly one-hot.
std::optional<concept_vector> onehot_decode(const concept_space& s, const std::vector<bool>& bits);

// Mixed-radix code with concept 0 most significant: sum_j c_j * b^(k-1-j).
// Also the enumeration order used throughout.
std::uint64_t vector_code(const concept_space& s, const concept_vector& c);
concept_vector vector_from_code(const concept_space& s, std::uint64_t code);
// Calls fn on every vector of the space in code order.
void for_each_vector(const concept_space& s, const std::function<void(const concept_vector&)>& fn);

// A binary indicator slot for one label position: binary positions (arity 2)
// contribute a single slot asserting value 1; categorical positions
// contribute one slot per value.
struct label_slot {
    int position = 0;
    int value = 1;
};

// Deterministic knowledge: a total map beta from concept vectors to label
// vectors.  When `bit_formula` is present it holds one pure boolean formula
// per label slot, over the one-hot atoms 1..k*b, and must agree with beta on
// every one-hot encoding; counting paths require it.
struct knowledge {
    concept_space space;
    std::vector<int> label_arity;                                // >= 2 per position
    std::function<label_vector(const concept_vector&)> beta;
    std::vector<label_slot> slots;
    std::vector<bool_expr> bit_formula;                          // parallel to slots, or empty

    bool has_bit_formula() const { return !bit_formula.empty(); }
    // Expected truth value of each slot under a concrete label vector.
    std::vector<bool> slot_values(const label_vector& y) const;
};

std::vector<label_slot> make_label_slots(const std::vector<int>& label_arity);

// beta(c), with a domain check.
label_vector label_of(const knowledge& k, const concept_vector& c);

// E(c, K) = all vectors of the space with the same label as c, in code order.
std::vector<concept_vector> equivalence_class(const knowledge& k, const concept_vector& c);

struct support_entry {
    concept_vector concepts;
    label_vector label;
};

// Ordered set of (concepts, label) pairs with distinct concept vectors;
// labels always equal beta(concepts) of the owning knowledge.
struct support {
    std::vector<support_entry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

inline constexpr std::uint64_t default_enumeration_bound = 1ULL << 20;

// Builds a support from concept vectors (deduplicated, kept in first-seen
// order); labels come from the knowledge.
support make_support(const knowledge& k, const std::vector<concept_vector>& vectors);

// All b^k vectors in code order; capacity error beyond `bound`.
support exhaustive_support(const knowledge& k, std::uint64_t bound = default_enumeration_bound);

// Lifts a boolean formula over atoms 1..k (concepts with b = 2) onto the
// one-hot layout: atom i becomes the value-1 bit of block i-1, and negation
// stays ordinary negation of that bit.
bool_expr lift_boolean(const bool_expr& e, const concept_space& space);

// Knowledge K = (phi <-> y) over k binary concepts with a single binary
// label; phi ranges over atoms 1..k.
knowledge knowledge_from_formula(int k, const bool_expr& phi);
// Same, with phi given as a CNF (e.g. parsed from DIMACS).
knowledge knowledge_from_cnf(const cnf_formula& f);

// True iff `rel` relates every concept vector to exactly one label vector.
// Atoms 1..k*b are the one-hot concept bits; the following atoms are the
// label slots for `label_arity` (categorical positions enumerate one-hot
// slot patterns).  Enumeration only: concept bits + slot bits are capped by
// `bit_bound`.
bool check_determinism(const bool_expr& rel, const concept_space& space,
                       const std::vector<int>& label_arity, int bit_bound = 24);

}  // namespace rsv
