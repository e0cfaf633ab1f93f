#include "rsv/encode.hpp"

#include <sstream>

namespace rsv {

std::vector<clause> exactly_one(const std::vector<int>& vars) {
    if (vars.empty()) throw eval_error("exactly_one over an empty variable list");
    std::vector<clause> out;
    clause at_least_one;
    at_least_one.reserve(vars.size());
    for (int v : vars) at_least_one.emplace_back(v, true);
    out.push_back(std::move(at_least_one));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            out.push_back({literal(vars[i], false), literal(vars[j], false)});
    return out;
}

namespace {

// var <-> (d1 | ... | dn), no auxiliaries.
void define_or(std::vector<clause>& clauses, int var, const std::vector<int>& disjuncts) {
    clause fwd{literal(var, false)};
    for (int d : disjuncts) {
        fwd.emplace_back(d, true);
        clauses.push_back({literal(d, false), literal(var, true)});
    }
    clauses.push_back(std::move(fwd));
}

}  // namespace

counting_problem build_counting_cnf(const knowledge& k, const support& supp, structure_mode mode) {
    if (mode == structure_mode::unrestricted)
        throw eval_error("build_counting_cnf: unrestricted mode has no matrix encoding; "
                         "use the closed form or brute-force enumeration");
    if (!k.has_bit_formula())
        throw eval_error("build_counting_cnf: knowledge has no bit formula");
    if (supp.empty()) throw eval_error("build_counting_cnf: empty support");

    counting_problem p;
    p.mode = mode;
    p.book.k = k.space.k;
    p.book.b = k.space.b;
    p.book.n_examples = static_cast<int>(supp.size());

    const var_book& vb = p.book;
    const int n = k.space.onehot_bits();
    std::vector<clause>& cls = p.cnf.clauses;

    // (a) O[i,j] <-> OR over block (i,j) of A.
    for (int i = 0; i < vb.k; ++i) {
        for (int j = 0; j < vb.k; ++j) {
            std::vector<int> block;
            block.reserve(static_cast<std::size_t>(vb.b) * vb.b);
            for (int x = i * vb.b; x < (i + 1) * vb.b; ++x)
                for (int y = j * vb.b; y < (j + 1) * vb.b; ++y) block.push_back(vb.a_var(x, y));
            define_or(cls, vb.o_var(i, j), block);
        }
    }

    // (b) exactly one positive entry per column of A.
    for (int y = 0; y < n; ++y) {
        std::vector<int> column;
        column.reserve(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) column.push_back(vb.a_var(x, y));
        for (auto& c : exactly_one(column)) cls.push_back(std::move(c));
    }

    // (c) chat_d[x] <-> OR over the set columns of the example's one-hot
    // vector (support constants folded in).
    for (int d = 0; d < vb.n_examples; ++d) {
        const concept_vector& cstar = supp.entries[static_cast<std::size_t>(d)].concepts;
        std::vector<int> set_cols;
        set_cols.reserve(static_cast<std::size_t>(vb.k));
        for (int j = 0; j < vb.k; ++j)
            set_cols.push_back(onehot_bit(k.space, j, cstar[static_cast<std::size_t>(j)]));
        for (int x = 0; x < n; ++x) {
            std::vector<int> disjuncts;
            disjuncts.reserve(set_cols.size());
            for (int y : set_cols) disjuncts.push_back(vb.a_var(x, y));
            define_or(cls, vb.chat_var(d, x), disjuncts);
        }
    }

    // (d) per example and label slot, the slot formula over chat bits is
    // asserted with the polarity of the example's label (constants folded).
    int next_aux = vb.first_aux();
    for (int d = 0; d < vb.n_examples; ++d) {
        std::vector<bool> expected = k.slot_values(supp.entries[static_cast<std::size_t>(d)].label);
        for (std::size_t s = 0; s < k.bit_formula.size(); ++s) {
            bool_expr remapped = k.bit_formula[s].remap_atoms(
                [&](int atom) { return vb.chat_var(d, atom - 1); });
            tseitin_result t = tseitin(remapped, next_aux);
            if (t.root_is_constant) {
                if (t.constant_value != expected[s]) {
                    // Unsatisfiable slot: pin the first variable both ways.
                    cls.push_back({literal(1, true)});
                    cls.push_back({literal(1, false)});
                }
                continue;
            }
            next_aux += t.aux_count;
            for (auto& c : t.cnf.clauses) cls.push_back(std::move(c));
            cls.push_back({expected[s] ? t.root : -t.root});
        }
    }
    p.book.aux_count = next_aux - vb.first_aux();

    // (e) completeness: exactly one positive entry per column of O.
    for (int j = 0; j < vb.k; ++j) {
        std::vector<int> column;
        for (int i = 0; i < vb.k; ++i) column.push_back(vb.o_var(i, j));
        for (auto& c : exactly_one(column)) cls.push_back(std::move(c));
    }

    // (f) permutation additionally requires exactly one per row of O.
    if (mode == structure_mode::permutation) {
        for (int i = 0; i < vb.k; ++i) {
            std::vector<int> row;
            for (int j = 0; j < vb.k; ++j) row.push_back(vb.o_var(i, j));
            for (auto& c : exactly_one(row)) cls.push_back(std::move(c));
        }
    }

    p.cnf.num_vars = p.book.total_vars();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) p.projection.push_back(vb.a_var(x, y));
    return p;
}

std::string export_problem(const counting_problem& p) {
    std::ostringstream ind;
    ind << "ind";
    for (int v : p.projection) ind << ' ' << v;
    ind << " 0";

    const var_book& vb = p.book;
    std::vector<std::string> comments;
    comments.push_back(ind.str());
    comments.push_back("counting problem: mode=" + std::string(to_string(p.mode)) +
                       " k=" + std::to_string(vb.k) + " b=" + std::to_string(vb.b) +
                       " support=" + std::to_string(vb.n_examples));
    comments.push_back("o vars " + std::to_string(vb.o_var(0, 0)) + ".." +
                       std::to_string(vb.o_var(vb.k - 1, vb.k - 1)) + " (row-major k x k)");
    comments.push_back("a vars " + std::to_string(vb.a_var(0, 0)) + ".." +
                       std::to_string(vb.a_var(vb.k * vb.b - 1, vb.k * vb.b - 1)) +
                       " (row-major kb x kb, projection set)");
    if (vb.n_examples > 0)
        comments.push_back("chat vars " + std::to_string(vb.chat_var(0, 0)) + ".." +
                           std::to_string(vb.chat_var(vb.n_examples - 1, vb.k * vb.b - 1)) +
                           " (kb per example)");
    comments.push_back(vb.aux_count > 0 ? "aux vars " + std::to_string(vb.first_aux()) + ".." +
                                              std::to_string(vb.total_vars())
                                        : "aux vars none");
    return emit_dimacs(p.cnf, comments);
}

}  // namespace rsv
