#include "rsv/expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "rsv/rng.hpp"

namespace rsv {

// ---------------------------------------------------------------------------
// int_term
// ---------------------------------------------------------------------------

int_term int_term::constant(long v) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::constant;
    n->value = v;
    return int_term(std::move(n));
}

int_term int_term::symbol(int index) {
    if (index < 1) throw eval_error("symbol index must be >= 1");
    auto n = std::make_shared<node>();
    n->kind = node_kind::symbol;
    n->value = index;
    return int_term(std::move(n));
}

int_term int_term::add(std::vector<int_term> terms) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::add;
    n->children = std::move(terms);
    return int_term(std::move(n));
}

int_term int_term::mul(std::vector<int_term> terms) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::mul;
    n->children = std::move(terms);
    return int_term(std::move(n));
}

long int_term::eval(const std::function<long(int)>& symbol_value) const {
    switch (kind()) {
        case node_kind::constant: return node_->value;
        case node_kind::symbol: return symbol_value(static_cast<int>(node_->value));
        case node_kind::add: {
            long s = 0;
            for (const auto& c : node_->children) s += c.eval(symbol_value);
            return s;
        }
        case node_kind::mul: {
            long p = 1;
            for (const auto& c : node_->children) p *= c.eval(symbol_value);
            return p;
        }
    }
    throw eval_error("unreachable int_term kind");
}

int_term int_term::remap_symbols(const std::function<int(int)>& map) const {
    switch (kind()) {
        case node_kind::constant: return *this;
        case node_kind::symbol: return symbol(map(static_cast<int>(node_->value)));
        case node_kind::add:
        case node_kind::mul: {
            std::vector<int_term> kids;
            kids.reserve(node_->children.size());
            for (const auto& c : node_->children) kids.push_back(c.remap_symbols(map));
            return kind() == node_kind::add ? add(std::move(kids)) : mul(std::move(kids));
        }
    }
    throw eval_error("unreachable int_term kind");
}

void int_term::collect_symbols(std::vector<int>& out) const {
    if (kind() == node_kind::symbol) {
        out.push_back(static_cast<int>(node_->value));
        return;
    }
    for (const auto& c : node_->children) c.collect_symbols(out);
}

std::pair<long, long> int_term::bounds(
    const std::function<std::pair<long, long>(int)>& symbol_bounds) const {
    switch (kind()) {
        case node_kind::constant: return {node_->value, node_->value};
        case node_kind::symbol: return symbol_bounds(static_cast<int>(node_->value));
        case node_kind::add: {
            long lo = 0, hi = 0;
            for (const auto& c : node_->children) {
                auto [l, h] = c.bounds(symbol_bounds);
                lo += l;
                hi += h;
            }
            return {lo, hi};
        }
        case node_kind::mul: {
            long lo = 1, hi = 1;
            for (const auto& c : node_->children) {
                auto [l, h] = c.bounds(symbol_bounds);
                long cand[4] = {lo * l, lo * h, hi * l, hi * h};
                lo = *std::min_element(cand, cand + 4);
                hi = *std::max_element(cand, cand + 4);
            }
            return {lo, hi};
        }
    }
    throw eval_error("unreachable int_term kind");
}

std::string int_term::to_string() const {
    switch (kind()) {
        case node_kind::constant: return std::to_string(node_->value);
        case node_kind::symbol: return "s" + std::to_string(node_->value);
        case node_kind::add:
        case node_kind::mul: {
            std::ostringstream out;
            out << '(';
            for (std::size_t i = 0; i < node_->children.size(); ++i) {
                if (i) out << (kind() == node_kind::add ? " + " : " * ");
                out << node_->children[i].to_string();
            }
            out << ')';
            return out.str();
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// bool_expr
// ---------------------------------------------------------------------------

bool_expr bool_expr::constant(bool v) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::constant;
    n->value = v;
    return bool_expr(std::move(n));
}

bool_expr bool_expr::atom(int index) {
    if (index < 1) throw eval_error("atom index must be >= 1");
    auto n = std::make_shared<node>();
    n->kind = node_kind::atom;
    n->atom = index;
    return bool_expr(std::move(n));
}

bool_expr bool_expr::negation(bool_expr e) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::negation;
    n->children.push_back(std::move(e));
    return bool_expr(std::move(n));
}

bool_expr bool_expr::conjunction(std::vector<bool_expr> es) {
    if (es.empty()) throw eval_error("conjunction needs at least one operand");
    if (es.size() == 1) return es[0];
    auto n = std::make_shared<node>();
    n->kind = node_kind::conjunction;
    n->children = std::move(es);
    return bool_expr(std::move(n));
}

bool_expr bool_expr::disjunction(std::vector<bool_expr> es) {
    if (es.empty()) throw eval_error("disjunction needs at least one operand");
    if (es.size() == 1) return es[0];
    auto n = std::make_shared<node>();
    n->kind = node_kind::disjunction;
    n->children = std::move(es);
    return bool_expr(std::move(n));
}

bool_expr bool_expr::exclusive_or(std::vector<bool_expr> es) {
    if (es.empty()) throw eval_error("exclusive_or needs at least one operand");
    if (es.size() == 1) return es[0];
    auto n = std::make_shared<node>();
    n->kind = node_kind::exclusive_or;
    n->children = std::move(es);
    return bool_expr(std::move(n));
}

bool_expr bool_expr::equivalence(bool_expr a, bool_expr b) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::equivalence;
    n->children.push_back(std::move(a));
    n->children.push_back(std::move(b));
    return bool_expr(std::move(n));
}

bool_expr bool_expr::implication(bool_expr a, bool_expr b) {
    return disjunction({negation(std::move(a)), std::move(b)});
}

bool_expr bool_expr::int_equality(int_term lhs, int_term rhs) {
    auto n = std::make_shared<node>();
    n->kind = node_kind::int_equality;
    n->terms.push_back(std::move(lhs));
    n->terms.push_back(std::move(rhs));
    return bool_expr(std::move(n));
}

bool bool_expr::is_pure_boolean() const {
    if (kind() == node_kind::int_equality) return false;
    for (const auto& c : children())
        if (!c.is_pure_boolean()) return false;
    return true;
}

int bool_expr::max_atom() const {
    int m = kind() == node_kind::atom ? node_->atom : 0;
    for (const auto& c : children()) m = std::max(m, c.max_atom());
    return m;
}

void bool_expr::collect_symbols(std::vector<int>& out) const {
    switch (kind()) {
        case node_kind::atom: out.push_back(node_->atom); return;
        case node_kind::int_equality:
            lhs_term().collect_symbols(out);
            rhs_term().collect_symbols(out);
            return;
        default:
            for (const auto& c : children()) c.collect_symbols(out);
    }
}

bool_expr bool_expr::remap_atoms(const std::function<int(int)>& map) const {
    switch (kind()) {
        case node_kind::constant:
        case node_kind::int_equality: return *this;
        case node_kind::atom: return atom(map(node_->atom));
        default: {
            std::vector<bool_expr> kids;
            kids.reserve(children().size());
            for (const auto& c : children()) kids.push_back(c.remap_atoms(map));
            auto n = std::make_shared<node>();
            n->kind = kind();
            n->children = std::move(kids);
            return bool_expr(std::move(n));
        }
    }
}

bool_expr bool_expr::remap_symbols(const std::function<int(int)>& map) const {
    switch (kind()) {
        case node_kind::constant: return *this;
        case node_kind::atom: return atom(map(node_->atom));
        case node_kind::int_equality:
            return int_equality(lhs_term().remap_symbols(map), rhs_term().remap_symbols(map));
        default: {
            std::vector<bool_expr> kids;
            kids.reserve(children().size());
            for (const auto& c : children()) kids.push_back(c.remap_symbols(map));
            auto n = std::make_shared<node>();
            n->kind = kind();
            n->children = std::move(kids);
            return bool_expr(std::move(n));
        }
    }
}

bool_expr bool_expr::fold_constants() const {
    switch (kind()) {
        case node_kind::constant:
        case node_kind::atom:
        case node_kind::int_equality: return *this;
        case node_kind::negation: {
            bool_expr c = children()[0].fold_constants();
            if (c.kind() == node_kind::constant) return constant(!c.const_value());
            return negation(std::move(c));
        }
        case node_kind::conjunction:
        case node_kind::disjunction: {
            const bool is_and = kind() == node_kind::conjunction;
            std::vector<bool_expr> kids;
            for (const auto& c : children()) {
                bool_expr f = c.fold_constants();
                if (f.kind() == node_kind::constant) {
                    if (f.const_value() != is_and) return constant(!is_and);  // absorbing element
                    continue;                                                 // neutral element
                }
                kids.push_back(std::move(f));
            }
            if (kids.empty()) return constant(is_and);
            if (kids.size() == 1) return kids[0];
            auto n = std::make_shared<node>();
            n->kind = kind();
            n->children = std::move(kids);
            return bool_expr(std::move(n));
        }
        case node_kind::exclusive_or: {
            bool parity = false;
            std::vector<bool_expr> kids;
            for (const auto& c : children()) {
                bool_expr f = c.fold_constants();
                if (f.kind() == node_kind::constant)
                    parity ^= f.const_value();
                else
                    kids.push_back(std::move(f));
            }
            if (kids.empty()) return constant(parity);
            bool_expr body = kids.size() == 1 ? kids[0] : exclusive_or(std::move(kids));
            return parity ? negation(std::move(body)) : body;
        }
        case node_kind::equivalence: {
            bool_expr a = children()[0].fold_constants();
            bool_expr b = children()[1].fold_constants();
            if (a.kind() == node_kind::constant && b.kind() == node_kind::constant)
                return constant(a.const_value() == b.const_value());
            if (a.kind() == node_kind::constant)
                return a.const_value() ? b : negation(std::move(b));
            if (b.kind() == node_kind::constant)
                return b.const_value() ? a : negation(std::move(a));
            return equivalence(std::move(a), std::move(b));
        }
    }
    throw eval_error("unreachable bool_expr kind");
}

std::string bool_expr::to_string() const {
    switch (kind()) {
        case node_kind::constant: return const_value() ? "true" : "false";
        case node_kind::atom: return "x" + std::to_string(node_->atom);
        case node_kind::negation: return "~" + children()[0].to_string();
        case node_kind::int_equality:
            return "Eq(" + lhs_term().to_string() + ", " + rhs_term().to_string() + ")";
        default: {
            const char* op = kind() == node_kind::conjunction    ? " & "
                             : kind() == node_kind::disjunction  ? " | "
                             : kind() == node_kind::exclusive_or ? " ^ "
                                                                 : " <-> ";
            std::ostringstream out;
            out << '(';
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i) out << op;
                out << children()[i].to_string();
            }
            out << ')';
            return out.str();
        }
    }
}

bool eval(const bool_expr& e, const assignment& a) {
    switch (e.kind()) {
        case bool_expr::node_kind::constant: return e.const_value();
        case bool_expr::node_kind::atom: return a.value(e.atom_index());
        case bool_expr::node_kind::negation: return !eval(e.children()[0], a);
        case bool_expr::node_kind::conjunction:
            for (const auto& c : e.children())
                if (!eval(c, a)) return false;
            return true;
        case bool_expr::node_kind::disjunction:
            for (const auto& c : e.children())
                if (eval(c, a)) return true;
            return false;
        case bool_expr::node_kind::exclusive_or: {
            bool p = false;
            for (const auto& c : e.children()) p ^= eval(c, a);
            return p;
        }
        case bool_expr::node_kind::equivalence:
            return eval(e.children()[0], a) == eval(e.children()[1], a);
        case bool_expr::node_kind::int_equality:
            throw eval_error("int_equality is not evaluable as a propositional formula");
    }
    throw eval_error("unreachable bool_expr kind");
}

// ---------------------------------------------------------------------------
// Tseitin conversion
// ---------------------------------------------------------------------------

namespace {

class tseitin_builder {
public:
    explicit tseitin_builder(int first_aux) : next_var_(first_aux) {}

    literal compile(const bool_expr& e) {
        using k = bool_expr::node_kind;
        switch (e.kind()) {
            case k::atom: return literal(e.atom_index(), true);
            case k::negation: return -compile(e.children()[0]);
            case k::conjunction: {
                std::vector<literal> kids = compile_children(e);
                literal t = fresh();
                // t <-> (l1 & ... & ln)
                clause back{t};
                for (const auto& l : kids) {
                    clauses_.push_back({-t, l});
                    back.push_back(-l);
                }
                clauses_.push_back(std::move(back));
                return t;
            }
            case k::disjunction: {
                std::vector<literal> kids = compile_children(e);
                literal t = fresh();
                // t <-> (l1 | ... | ln)
                clause fwd{-t};
                for (const auto& l : kids) {
                    clauses_.push_back({t, -l});
                    fwd.push_back(l);
                }
                clauses_.push_back(std::move(fwd));
                return t;
            }
            case k::exclusive_or: {
                std::vector<literal> kids = compile_children(e);
                literal acc = kids[0];
                for (std::size_t i = 1; i < kids.size(); ++i) acc = define_xor(acc, kids[i]);
                return acc;
            }
            case k::equivalence: {
                literal a = compile(e.children()[0]);
                literal b = compile(e.children()[1]);
                return -define_xor(a, b);
            }
            case k::constant:
            case k::int_equality:
                throw eval_error("tseitin requires a constant-folded pure boolean expression");
        }
        throw eval_error("unreachable bool_expr kind");
    }

    std::vector<clause>& clauses() { return clauses_; }
    int next_var() const { return next_var_; }

private:
    std::vector<literal> compile_children(const bool_expr& e) {
        std::vector<literal> out;
        out.reserve(e.children().size());
        for (const auto& c : e.children()) out.push_back(compile(c));
        return out;
    }

    literal fresh() { return literal(next_var_++, true); }

    // t <-> (a ^ b)
    literal define_xor(literal a, literal b) {
        literal t = fresh();
        clauses_.push_back({-t, a, b});
        clauses_.push_back({-t, -a, -b});
        clauses_.push_back({t, -a, b});
        clauses_.push_back({t, a, -b});
        return t;
    }

    int next_var_;
    std::vector<clause> clauses_;
};

}  // namespace

tseitin_result tseitin(const bool_expr& e, int first_aux_var) {
    if (!e.is_pure_boolean()) throw eval_error("tseitin: expression contains non-boolean nodes");
    bool_expr folded = e.fold_constants();

    tseitin_result res;
    if (folded.kind() == bool_expr::node_kind::constant) {
        res.root_is_constant = true;
        res.constant_value = folded.const_value();
        res.cnf.num_vars = first_aux_var - 1;
        return res;
    }
    if (folded.max_atom() >= first_aux_var)
        throw eval_error("tseitin: first_aux_var must exceed every atom index");

    tseitin_builder builder(first_aux_var);
    res.root = builder.compile(folded);
    res.aux_count = builder.next_var() - first_aux_var;
    res.cnf.num_vars = first_aux_var - 1 + res.aux_count;
    res.cnf.clauses = std::move(builder.clauses());
    return res;
}

// ---------------------------------------------------------------------------
// Random l-CNF
// ---------------------------------------------------------------------------

namespace {

// Number of width-l clauses over k variables, saturating at 2^63-1.
double log2_num_clauses(int k, int l) {
    double log_choose = 0;
    for (int i = 0; i < l; ++i)
        log_choose += std::log2(static_cast<double>(k - i)) - std::log2(static_cast<double>(i + 1));
    return log_choose + l;
}

}  // namespace

cnf_formula random_lcnf(int k, int m, int l, std::uint64_t seed) {
    if (k < 1 || m < 1 || l < 1) throw capacity_error("random_lcnf: k, m, l must all be positive");
    if (l > k)
        throw capacity_error("random_lcnf: clause width " + std::to_string(l) +
                             " exceeds variable count " + std::to_string(k));
    if (log2_num_clauses(k, l) < 62.0) {
        double count = std::exp2(log2_num_clauses(k, l));
        if (static_cast<double>(m) > count)
            throw capacity_error("random_lcnf: requested " + std::to_string(m) +
                                 " distinct clauses but only " +
                                 std::to_string(static_cast<long long>(count)) + " exist");
    }

    split_mix64 rng(seed);
    cnf_formula f;
    f.num_vars = k;
    std::set<clause> seen;
    while (static_cast<int>(f.clauses.size()) < m) {
        // Draw l distinct variables by rejection, then signs.
        std::set<int> vars;
        while (static_cast<int>(vars.size()) < l)
            vars.insert(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
        clause c;
        for (int v : vars) c.emplace_back(v, rng.coin());
        if (!seen.insert(c).second) continue;  // duplicate clause, reject
        f.clauses.push_back(std::move(c));
    }
    return f;
}

}  // namespace rsv
