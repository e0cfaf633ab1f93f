#include "rsv/alphamap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace rsv {

const char* to_string(structure_mode m) {
    switch (m) {
        case structure_mode::unrestricted: return "unrestricted";
        case structure_mode::complete: return "complete";
        case structure_mode::permutation: return "permutation";
    }
    return "?";
}

alpha_map alpha_map::from_structure(const concept_space& space, const std::vector<int>& block_target,
                                    const std::vector<std::vector<int>>& value_map) {
    alpha_map m;
    m.k = space.k;
    m.b = space.b;
    m.o.assign(static_cast<std::size_t>(space.k * space.k), 0);
    m.a.assign(static_cast<std::size_t>(space.onehot_bits()) * space.onehot_bits(), 0);
    for (int j = 0; j < space.k; ++j) {
        int i = block_target[static_cast<std::size_t>(j)];
        m.o[static_cast<std::size_t>(i * space.k + j)] = 1;
        for (int v = 0; v < space.b; ++v) {
            int row = i * space.b + value_map[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
            int col = j * space.b + v;
            m.a[static_cast<std::size_t>(row) * space.onehot_bits() + col] = 1;
        }
    }
    return m;
}

std::vector<bool> apply(const alpha_map& alpha, const concept_space& space, const concept_vector& c) {
    const int n = space.onehot_bits();
    std::vector<bool> chat(static_cast<std::size_t>(n), false);
    for (int j = 0; j < space.k; ++j) {
        int y = onehot_bit(space, j, c[static_cast<std::size_t>(j)]);
        for (int x = 0; x < n; ++x)
            if (alpha.a[static_cast<std::size_t>(x) * n + y]) chat[static_cast<std::size_t>(x)] = true;
    }
    return chat;
}

concept_vector apply_decoded(const alpha_map& alpha, const concept_space& space,
                             const concept_vector& c) {
    auto decoded = onehot_decode(space, apply(alpha, space, c));
    if (!decoded) throw eval_error("apply_decoded: remapped vector is not one-hot per block");
    return *decoded;
}

concept_vector apply(const unrestricted_alpha& alpha, const concept_space& space,
                     const concept_vector& c) {
    return vector_from_code(space, alpha.table[vector_code(space, c)]);
}

namespace {

// log2 of the structural map count, for cap checks without overflow.
double log2_alpha_count(const concept_space& s, structure_mode mode) {
    double bb = static_cast<double>(s.b) * std::log2(static_cast<double>(s.b));
    double log_k_fact = 0;
    for (int i = 2; i <= s.k; ++i) log_k_fact += std::log2(static_cast<double>(i));
    switch (mode) {
        case structure_mode::unrestricted: {
            double log_vol = static_cast<double>(s.k) * std::log2(static_cast<double>(s.b));
            return std::exp2(log_vol) * log_vol;  // (b^k) * log2(b^k)
        }
        case structure_mode::complete:
            return static_cast<double>(s.k) * std::log2(static_cast<double>(s.k)) +
                   static_cast<double>(s.k) * bb;
        case structure_mode::permutation: return log_k_fact + static_cast<double>(s.k) * bb;
    }
    return 0;
}

void check_cap(const concept_space& s, structure_mode mode, std::uint64_t cap) {
    if (log2_alpha_count(s, mode) > std::log2(static_cast<double>(cap)) + 1e-9)
        throw capacity_error(std::string("enumerate_alphas: ") + to_string(mode) +
                             " map count exceeds the cap " + std::to_string(cap));
}

// Odometer over per-block value maps; calls fn for each combination.
// value maps iterate lexicographically with block 0 most significant and
// h(0) most significant within a block.
class value_map_odometer {
public:
    value_map_odometer(int k, int b)
        : b_(b), maps_(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(b), 0)) {}

    const std::vector<std::vector<int>>& maps() const { return maps_; }

    bool advance() {
        for (int j = static_cast<int>(maps_.size()) - 1; j >= 0; --j) {
            auto& h = maps_[static_cast<std::size_t>(j)];
            for (int v = b_ - 1; v >= 0; --v) {
                if (h[static_cast<std::size_t>(v)] + 1 < b_) {
                    ++h[static_cast<std::size_t>(v)];
                    return true;
                }
                h[static_cast<std::size_t>(v)] = 0;
            }
        }
        return false;
    }

private:
    int b_;
    std::vector<std::vector<int>> maps_;
};

void enumerate_structured(const concept_space& space, structure_mode mode,
                          const std::function<void(const std::vector<int>&,
                                                   const std::vector<std::vector<int>>&)>& fn) {
    std::vector<int> target(static_cast<std::size_t>(space.k), 0);
    if (mode == structure_mode::permutation) std::iota(target.begin(), target.end(), 0);

    while (true) {
        value_map_odometer odo(space.k, space.b);
        do {
            fn(target, odo.maps());
        } while (odo.advance());

        if (mode == structure_mode::permutation) {
            if (!std::next_permutation(target.begin(), target.end())) return;
        } else {
            int j = space.k - 1;
            while (j >= 0 && target[static_cast<std::size_t>(j)] == space.k - 1)
                target[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) return;
            ++target[static_cast<std::size_t>(j)];
        }
    }
}

}  // namespace

std::optional<std::uint64_t> alpha_count(const concept_space& space, structure_mode mode) {
    double l = log2_alpha_count(space, mode);
    if (l > 62.0) return std::nullopt;
    long double exact = 1;
    auto vol = space.volume();
    switch (mode) {
        case structure_mode::unrestricted: {
            if (!vol) return std::nullopt;
            for (std::uint64_t i = 0; i < *vol; ++i) exact *= static_cast<long double>(*vol);
            break;
        }
        case structure_mode::complete:
        case structure_mode::permutation: {
            std::uint64_t structures = 1;
            if (mode == structure_mode::complete) {
                for (int i = 0; i < space.k; ++i) structures *= static_cast<std::uint64_t>(space.k);
            } else {
                for (int i = 2; i <= space.k; ++i) structures *= static_cast<std::uint64_t>(i);
            }
            std::uint64_t per_block = 1;
            for (int v = 0; v < space.b; ++v) per_block *= static_cast<std::uint64_t>(space.b);
            exact = static_cast<long double>(structures);
            for (int j = 0; j < space.k; ++j) exact *= static_cast<long double>(per_block);
            break;
        }
    }
    if (exact > static_cast<long double>(1ULL << 62)) return std::nullopt;
    return static_cast<std::uint64_t>(exact);
}

void enumerate_alphas(const concept_space& space, structure_mode mode,
                      const std::function<void(const alpha_map&)>& fn, std::uint64_t cap) {
    if (mode == structure_mode::unrestricted)
        throw eval_error("enumerate_alphas: unrestricted maps are streamed via the table overload");
    check_cap(space, mode, cap);
    enumerate_structured(space, mode,
                         [&](const std::vector<int>& target, const std::vector<std::vector<int>>& maps) {
                             fn(alpha_map::from_structure(space, target, maps));
                         });
}

void enumerate_alphas(const concept_space& space,
                      const std::function<void(const unrestricted_alpha&)>& fn, std::uint64_t cap) {
    check_cap(space, structure_mode::unrestricted, cap);
    const std::uint64_t vol = *space.volume();
    unrestricted_alpha alpha;
    alpha.table.assign(static_cast<std::size_t>(vol), 0);
    while (true) {
        fn(alpha);
        std::size_t i = alpha.table.size();
        while (i > 0 && alpha.table[i - 1] == vol - 1) alpha.table[--i] = 0;
        if (i == 0) return;
        ++alpha.table[i - 1];
    }
}

namespace {

// Shared semantics with the CNF encoding: evaluate each label slot's formula
// on the raw remapped bit vector and compare with the expected slot value.
bool consistent_on_support(const knowledge& k, const support& supp, const alpha_map& alpha,
                           const std::vector<std::vector<bool>>& expected_slots) {
    for (std::size_t d = 0; d < supp.entries.size(); ++d) {
        std::vector<bool> chat = apply(alpha, k.space, supp.entries[d].concepts);
        assignment a(chat);
        for (std::size_t s = 0; s < k.bit_formula.size(); ++s)
            if (eval(k.bit_formula[s], a) != expected_slots[d][s]) return false;
    }
    return true;
}

}  // namespace

mpz_class count_by_enumeration(const knowledge& k, const support& supp, structure_mode mode,
                               std::uint64_t cap) {
    if (mode == structure_mode::unrestricted) {
        check_cap(k.space, mode, cap);
        const std::uint64_t vol = *k.space.volume();
        // Valid-output mask per table slot: entries in the support may only
        // map into their equivalence class, all other slots are free.
        std::vector<std::vector<bool>> allowed(static_cast<std::size_t>(vol),
                                               std::vector<bool>(static_cast<std::size_t>(vol), true));
        std::vector<label_vector> label_by_code(static_cast<std::size_t>(vol));
        for_each_vector(k.space, [&](const concept_vector& c) {
            label_by_code[vector_code(k.space, c)] = k.beta(c);
        });
        std::vector<std::size_t> constrained;
        for (const auto& e : supp.entries) {
            std::size_t code = vector_code(k.space, e.concepts);
            constrained.push_back(code);
            for (std::uint64_t out = 0; out < vol; ++out)
                allowed[code][out] = label_by_code[out] == e.label;
        }

        mpz_class count = 0;
        enumerate_alphas(k.space, [&](const unrestricted_alpha& alpha) {
            for (std::size_t code : constrained)
                if (!allowed[code][alpha.table[code]]) return;
            ++count;
        }, cap);
        return count;
    }

    if (!k.has_bit_formula())
        throw eval_error("count_by_enumeration: knowledge has no bit formula");
    std::vector<std::vector<bool>> expected;
    expected.reserve(supp.entries.size());
    for (const auto& e : supp.entries) expected.push_back(k.slot_values(e.label));

    mpz_class count = 0;
    enumerate_alphas(k.space, mode, [&](const alpha_map& alpha) {
        if (consistent_on_support(k, supp, alpha, expected)) ++count;
    }, cap);
    return count;
}

mpz_class count_closed_form(const knowledge& k, const support& supp, std::uint64_t bound) {
    auto vol = k.space.volume();
    if (!vol || *vol > bound)
        throw capacity_error("count_closed_form: b^k exceeds the enumeration bound " +
                             std::to_string(bound));

    // Class sizes via one pass: bucket all vectors by label.
    std::map<label_vector, std::uint64_t> class_size;
    for_each_vector(k.space, [&](const concept_vector& c) { ++class_size[k.beta(c)]; });

    mpz_class count = 1;
    for (const auto& e : supp.entries) count *= mpz_class(static_cast<unsigned long>(class_size[e.label]));
    mpz_class free_choices;
    mpz_ui_pow_ui(free_choices.get_mpz_t(), static_cast<unsigned long>(*vol),
                  static_cast<unsigned long>(*vol - supp.size()));
    return count * free_choices;
}

}  // namespace rsv
