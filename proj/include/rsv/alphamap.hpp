#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

#include "rsv/knowledge.hpp"

namespace rsv {

// Structural restrictions on the concept remapping.
//   unrestricted: any table over concept vectors (closed form / brute force).
//   complete: each ground-truth concept feeds exactly one predicted concept
//     (exactly one positive entry per column of O).
//   permutation: additionally every predicted concept reads exactly one
//     ground-truth concept (O is a permutation matrix).
enum class structure_mode { unrestricted, complete, permutation };

const char* to_string(structure_mode m);

// Structured remapping: O is k x k over concept blocks, A is (k*b) x (k*b)
// over one-hot values.  Row indices of A are predicted bits, column indices
// ground-truth bits; block (i, j) of A covers rows [i*b, (i+1)*b) and
// columns [j*b, (j+1)*b).  Every column of A has exactly one positive entry
// and O[i][j] is set iff block (i, j) contains one.
struct alpha_map {
    int k = 0;
    int b = 2;
    std::vector<std::uint8_t> o;  // k*k, row-major
    std::vector<std::uint8_t> a;  // (k*b)*(k*b), row-major

    bool o_at(int i, int j) const { return o[static_cast<std::size_t>(i * k + j)] != 0; }
    bool a_at(int x, int y) const { return a[static_cast<std::size_t>(x * k * b + y)] != 0; }

    // Builds the matrices from the block structure: ground-truth concept j
    // feeds predicted concept block_target[j], routing value v to value
    // value_map[j][v].
    static alpha_map from_structure(const concept_space& space, const std::vector<int>& block_target,
                                    const std::vector<std::vector<int>>& value_map);
};

// An arbitrary table over the concept space, indexed by vector_code.
struct unrestricted_alpha {
    std::vector<std::uint64_t> table;  // table[code(c)] = code(alpha(c))
};

// chat = A (x) onehot(c), the boolean matrix-vector product.  The result is
// not one-hot per block in general (complete mode may merge blocks).
std::vector<bool> apply(const alpha_map& alpha, const concept_space& space, const concept_vector& c);
// Decoded form; requires a one-hot result (always the case in permutation mode).
concept_vector apply_decoded(const alpha_map& alpha, const concept_space& space,
                             const concept_vector& c);
concept_vector apply(const unrestricted_alpha& alpha, const concept_space& space,
                     const concept_vector& c);

inline constexpr std::uint64_t default_alpha_cap = 1ULL << 24;  // admits 8^8 at k=3, b=2

// Number of structurally valid maps for the mode, if it fits 63 bits.
std::optional<std::uint64_t> alpha_count(const concept_space& space, structure_mode mode);

// Streams every structurally valid map exactly once, in lexicographic order
// over (block structure, then per-block value maps with block 0 most
// significant).  Capacity error when the stream would exceed `cap`.
void enumerate_alphas(const concept_space& space, structure_mode mode,
                      const std::function<void(const alpha_map&)>& fn,
                      std::uint64_t cap = default_alpha_cap);
void enumerate_alphas(const concept_space& space,
                      const std::function<void(const unrestricted_alpha&)>& fn,
                      std::uint64_t cap = default_alpha_cap);

// Brute-force oracle: the exact number of structurally valid maps alpha such
// that relabelling every support entry through alpha reproduces its label.
// In complete/permutation mode the label check evaluates the knowledge's
// bit_formula on the raw remapped bit vector, mirroring the CNF encoding.
mpz_class count_by_enumeration(const knowledge& k, const support& supp, structure_mode mode,
                               std::uint64_t cap = default_alpha_cap);

// Closed form for the unrestricted mode:
//   prod_{c in supp} |E(c, K)|  *  prod_{c not in supp} b^k.
mpz_class count_closed_form(const knowledge& k, const support& supp,
                            std::uint64_t bound = default_enumeration_bound);

// A task admits reasoning shortcuts iff the optimal-map count exceeds one.
inline bool rs_affected(const mpz_class& count) { return count > 1; }

}  // namespace rsv
