#include "rsv/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace rsv {

bool concept_space::contains(const concept_vector& c) const {
    if (static_cast<int>(c.size()) != k) return false;
    for (int v : c)
        if (v < 0 || v >= b) return false;
    return true;
}

std::optional<std::uint64_t> concept_space::volume() const {
    std::uint64_t vol = 1;
    for (int i = 0; i < k; ++i) {
        if (vol > (1ULL << 62) / static_cast<std::uint64_t>(b)) return std::nullopt;
        vol *= static_cast<std::uint64_t>(b);
    }
    return vol;
}

std::vector<bool> onehot_encode(const concept_space& s, const concept_vector& c) {
    std::vector<bool> bits(static_cast<std::size_t>(s.onehot_bits()), false);
    for (int j = 0; j < s.k; ++j) bits[static_cast<std::size_t>(onehot_bit(s, j, c[j]))] = true;
    return bits;
}

std::optional<concept_vector> onehot_decode(const concept_space& s, const std::vector<bool>& bits) {
    concept_vector c(static_cast<std::size_t>(s.k), 0);
    for (int j = 0; j < s.k; ++j) {
        int hits = 0;
        for (int v = 0; v < s.b; ++v) {
            if (bits[static_cast<std::size_t>(onehot_bit(s, j, v))]) {
                ++hits;
                c[static_cast<std::size_t>(j)] = v;
            }
        }
        if (hits != 1) return std::nullopt;
    }
    return c;
}

std::uint64_t vector_code(const concept_space& s, const concept_vector& c) {
    std::uint64_t code = 0;
    for (int j = 0; j < s.k; ++j)
        code = code * static_cast<std::uint64_t>(s.b) + static_cast<std::uint64_t>(c[j]);
    return code;
}

concept_vector vector_from_code(const concept_space& s, std::uint64_t code) {
    concept_vector c(static_cast<std::size_t>(s.k), 0);
    for (int j = s.k - 1; j >= 0; --j) {
        c[static_cast<std::size_t>(j)] = static_cast<int>(code % static_cast<std::uint64_t>(s.b));
        code /= static_cast<std::uint64_t>(s.b);
    }
    return c;
}

void for_each_vector(const concept_space& s, const std::function<void(const concept_vector&)>& fn) {
    concept_vector c(static_cast<std::size_t>(s.k), 0);
    while (true) {
        fn(c);
        int j = s.k - 1;
        while (j >= 0 && c[static_cast<std::size_t>(j)] == s.b - 1) c[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) return;
        ++c[static_cast<std::size_t>(j)];
    }
}

std::vector<label_slot> make_label_slots(const std::vector<int>& label_arity) {
    std::vector<label_slot> slots;
    for (std::size_t p = 0; p < label_arity.size(); ++p) {
        if (label_arity[p] < 2) throw eval_error("label arity must be >= 2");
        if (label_arity[p] == 2) {
            slots.push_back({static_cast<int>(p), 1});
        } else {
            for (int v = 0; v < label_arity[p]; ++v) slots.push_back({static_cast<int>(p), v});
        }
    }
    return slots;
}

std::vector<bool> knowledge::slot_values(const label_vector& y) const {
    std::vector<bool> out;
    out.reserve(slots.size());
    for (const auto& s : slots) {
        int val = y[static_cast<std::size_t>(s.position)];
        out.push_back(label_arity[static_cast<std::size_t>(s.position)] == 2 ? val == 1
                                                                             : val == s.value);
    }
    return out;
}

label_vector label_of(const knowledge& k, const concept_vector& c) {
    if (!k.space.contains(c)) throw eval_error("concept vector outside the knowledge's space");
    return k.beta(c);
}

std::vector<concept_vector> equivalence_class(const knowledge& k, const concept_vector& c) {
    label_vector target = label_of(k, c);
    auto vol = k.space.volume();
    if (!vol || *vol > default_enumeration_bound)
        throw capacity_error("equivalence_class: b^k exceeds the enumeration bound " +
                             std::to_string(default_enumeration_bound));
    std::vector<concept_vector> cls;
    for_each_vector(k.space, [&](const concept_vector& cand) {
        if (k.beta(cand) == target) cls.push_back(cand);
    });
    return cls;
}

support make_support(const knowledge& k, const std::vector<concept_vector>& vectors) {
    support s;
    std::set<concept_vector> seen;
    for (const auto& c : vectors) {
        if (!k.space.contains(c)) throw eval_error("support vector outside the knowledge's space");
        if (!seen.insert(c).second) continue;
        s.entries.push_back({c, label_of(k, c)});
    }
    return s;
}

support exhaustive_support(const knowledge& k, std::uint64_t bound) {
    auto vol = k.space.volume();
    if (!vol || *vol > bound)
        throw capacity_error("exhaustive_support: b^k exceeds the enumeration bound " +
                             std::to_string(bound));
    support s;
    s.entries.reserve(static_cast<std::size_t>(*vol));
    for_each_vector(k.space, [&](const concept_vector& c) { s.entries.push_back({c, k.beta(c)}); });
    return s;
}

bool_expr lift_boolean(const bool_expr& e, const concept_space& space) {
    if (space.b != 2) throw eval_error("lift_boolean requires b = 2");
    return e.remap_atoms([&](int atom) {
        if (atom < 1 || atom > space.k) throw eval_error("formula atom outside the concept space");
        return onehot_atom(space, atom - 1, 1);
    });
}

knowledge knowledge_from_formula(int k, const bool_expr& phi) {
    if (phi.max_atom() > k) throw eval_error("formula mentions atoms beyond the concept count");
    knowledge kn;
    kn.space = concept_space{k, 2};
    kn.label_arity = {2};
    kn.slots = make_label_slots(kn.label_arity);
    kn.beta = [phi](const concept_vector& c) -> label_vector {
        std::vector<bool> bits;
        bits.reserve(c.size());
        for (int v : c) bits.push_back(v == 1);
        return {eval(phi, assignment(bits)) ? 1 : 0};
    };
    kn.bit_formula = {lift_boolean(phi, kn.space)};
    return kn;
}

knowledge knowledge_from_cnf(const cnf_formula& f) {
    std::vector<bool_expr> conjuncts;
    for (const auto& c : f.clauses) {
        std::vector<bool_expr> lits;
        lits.reserve(c.size());
        for (const auto& l : c) {
            bool_expr a = bool_expr::atom(l.var);
            lits.push_back(l.positive ? a : bool_expr::negation(a));
        }
        conjuncts.push_back(bool_expr::disjunction(std::move(lits)));
    }
    bool_expr phi = conjuncts.empty() ? bool_expr::constant(true)
                                      : bool_expr::conjunction(std::move(conjuncts));
    return knowledge_from_formula(f.num_vars, phi);
}

bool check_determinism(const bool_expr& rel, const concept_space& space,
                       const std::vector<int>& label_arity, int bit_bound) {
    auto slots = make_label_slots(label_arity);
    double concept_bits = static_cast<double>(space.k) * std::log2(static_cast<double>(space.b));
    if (concept_bits + static_cast<double>(slots.size()) > static_cast<double>(bit_bound))
        throw capacity_error("check_determinism: concept and label bits exceed the bound " +
                             std::to_string(bit_bound));

    const int n_bits = space.onehot_bits() + static_cast<int>(slots.size());
    if (rel.max_atom() > n_bits) throw eval_error("check_determinism: relation mentions unknown atoms");

    // Enumerate label vectors once (as slot patterns).
    std::vector<label_vector> labels;
    label_vector y(label_arity.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
        if (p == label_arity.size()) {
            labels.push_back(y);
            return;
        }
        for (int v = 0; v < label_arity[p]; ++v) {
            y[p] = v;
            rec(p + 1);
        }
    };
    rec(0);

    knowledge probe;  // only for slot_values
    probe.label_arity = label_arity;
    probe.slots = slots;

    bool deterministic = true;
    for_each_vector(space, [&](const concept_vector& c) {
        if (!deterministic) return;
        std::vector<bool> bits = onehot_encode(space, c);
        int satisfying = 0;
        for (const auto& cand : labels) {
            std::vector<bool> full = bits;
            for (bool sv : probe.slot_values(cand)) full.push_back(sv);
            if (eval(rel, assignment(full))) ++satisfying;
            if (satisfying > 1) break;
        }
        if (satisfying != 1) deterministic = false;
    });
    return deterministic;
}

}  // namespace rsv
