#include "rsv/tasks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rsv {

const char* to_string(task_family f) {
    switch (f) {
        case task_family::mnlogic: return "mnlogic";
        case task_family::mnadd: return "mnadd";
        case task_family::mnadd_half: return "mnadd-half";
        case task_family::mnadd_evenodd: return "mnadd-evenodd";
        case task_family::mnmath: return "mnmath";
        case task_family::kand: return "kand";
        case task_family::cle4evr: return "cle4evr";
        case task_family::boia: return "boia";
        case task_family::boia_ood_emergency: return "boia-emergency";
        case task_family::custom_cnf: return "custom-cnf";
    }
    return "?";
}

std::optional<task_family> family_from_string(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '_', '-');
    if (n == "mnlogic") return task_family::mnlogic;
    if (n == "mnadd") return task_family::mnadd;
    if (n == "mnadd-half") return task_family::mnadd_half;
    if (n == "mnadd-evenodd") return task_family::mnadd_evenodd;
    if (n == "mnmath") return task_family::mnmath;
    if (n == "kand" || n == "kand-logic") return task_family::kand;
    if (n == "cle4evr") return task_family::cle4evr;
    if (n == "boia") return task_family::boia;
    if (n == "boia-emergency" || n == "boia-ood-emergency") return task_family::boia_ood_emergency;
    if (n == "custom-cnf") return task_family::custom_cnf;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Task-level expression evaluation and lowering
// ---------------------------------------------------------------------------

namespace {

// Evaluates a task formula against a concept vector; bare atoms read value 1
// of the concept and are only meaningful for two-valued concepts.
bool eval_over_concepts(const bool_expr& e, const concept_vector& c, int b) {
    using k = bool_expr::node_kind;
    switch (e.kind()) {
        case k::constant: return e.const_value();
        case k::atom:
            if (b != 2) throw eval_error("bare symbol used as boolean with b != 2");
            return c[static_cast<std::size_t>(e.atom_index() - 1)] == 1;
        case k::negation: return !eval_over_concepts(e.children()[0], c, b);
        case k::conjunction:
            for (const auto& ch : e.children())
                if (!eval_over_concepts(ch, c, b)) return false;
            return true;
        case k::disjunction:
            for (const auto& ch : e.children())
                if (eval_over_concepts(ch, c, b)) return true;
            return false;
        case k::exclusive_or: {
            bool p = false;
            for (const auto& ch : e.children()) p ^= eval_over_concepts(ch, c, b);
            return p;
        }
        case k::equivalence:
            return eval_over_concepts(e.children()[0], c, b) ==
                   eval_over_concepts(e.children()[1], c, b);
        case k::int_equality: {
            auto value = [&](int s) { return static_cast<long>(c[static_cast<std::size_t>(s - 1)]); };
            return e.lhs_term().eval(value) == e.rhs_term().eval(value);
        }
    }
    throw eval_error("unreachable bool_expr kind");
}

long eval_int_over_concepts(const int_term& t, const concept_vector& c) {
    return t.eval([&](int s) { return static_cast<long>(c[static_cast<std::size_t>(s - 1)]); });
}

constexpr std::uint64_t joint_enum_cap = 100'000;

// Structural lowering of a task formula to the one-hot atom layout.
// Equality nodes are expanded by joint enumeration over the symbols they
// mention; returns nullopt when that is infeasible (the caller then falls
// back to whole-space enumeration).
std::optional<bool_expr> lower_structural(const bool_expr& e, const concept_space& space) {
    using k = bool_expr::node_kind;
    switch (e.kind()) {
        case k::constant: return e;
        case k::atom:
            if (space.b != 2) return std::nullopt;
            return bool_expr::atom(onehot_atom(space, e.atom_index() - 1, 1));
        case k::int_equality: {
            std::vector<int> syms;
            e.collect_symbols(syms);
            std::sort(syms.begin(), syms.end());
            syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
            double combos = std::pow(static_cast<double>(space.b), static_cast<double>(syms.size()));
            if (combos > static_cast<double>(joint_enum_cap)) return std::nullopt;

            std::vector<bool_expr> minterms;
            std::vector<int> values(syms.size(), 0);
            while (true) {
                auto value = [&](int s) -> long {
                    auto it = std::lower_bound(syms.begin(), syms.end(), s);
                    return values[static_cast<std::size_t>(it - syms.begin())];
                };
                if (e.lhs_term().eval(value) == e.rhs_term().eval(value)) {
                    std::vector<bool_expr> lits;
                    for (std::size_t i = 0; i < syms.size(); ++i)
                        lits.push_back(bool_expr::atom(
                            onehot_atom(space, syms[i] - 1, values[i])));
                    minterms.push_back(bool_expr::conjunction(std::move(lits)));
                }
                std::size_t j = values.size();
                while (j > 0 && values[j - 1] == space.b - 1) values[--j] = 0;
                if (j == 0) break;
                ++values[j - 1];
            }
            if (minterms.empty()) return bool_expr::constant(false);
            return bool_expr::disjunction(std::move(minterms));
        }
        default: {
            std::vector<bool_expr> kids;
            for (const auto& ch : e.children()) {
                auto low = lower_structural(ch, space);
                if (!low) return std::nullopt;
                kids.push_back(std::move(*low));
            }
            switch (e.kind()) {
                case k::negation: return bool_expr::negation(kids[0]);
                case k::conjunction: return bool_expr::conjunction(std::move(kids));
                case k::disjunction: return bool_expr::disjunction(std::move(kids));
                case k::exclusive_or: return bool_expr::exclusive_or(std::move(kids));
                case k::equivalence: return bool_expr::equivalence(kids[0], kids[1]);
                default: return std::nullopt;
            }
        }
    }
}

bool_expr space_minterm(const concept_space& space, const concept_vector& c) {
    std::vector<bool_expr> lits;
    lits.reserve(static_cast<std::size_t>(space.k));
    for (int j = 0; j < space.k; ++j)
        lits.push_back(bool_expr::atom(onehot_atom(space, j, c[static_cast<std::size_t>(j)])));
    return bool_expr::conjunction(std::move(lits));
}

// Builds one formula per label slot.  Binary labels with a lowerable
// structural formula use it; everything else falls back to indicator DNFs
// from a single pass over the space.  Returns empty when enumeration would
// be needed but the space exceeds the bound.
std::vector<bool_expr> build_bit_formulas(
    const concept_space& space, const std::vector<int>& label_arity,
    const std::function<label_vector(const concept_vector&)>& beta,
    const std::vector<std::optional<bool_expr>>& structural, std::uint64_t bound) {
    auto slots = make_label_slots(label_arity);
    std::vector<std::optional<bool_expr>> out(slots.size());
    std::vector<std::size_t> enum_slots;

    for (std::size_t s = 0; s < slots.size(); ++s) {
        int p = slots[s].position;
        if (label_arity[static_cast<std::size_t>(p)] == 2 &&
            static_cast<std::size_t>(p) < structural.size() && structural[static_cast<std::size_t>(p)]) {
            auto low = lower_structural(*structural[static_cast<std::size_t>(p)], space);
            if (low) {
                out[s] = std::move(*low);
                continue;
            }
        }
        enum_slots.push_back(s);
    }

    if (!enum_slots.empty()) {
        auto vol = space.volume();
        if (!vol || *vol > bound) return {};
        std::vector<std::vector<bool_expr>> buckets(slots.size());
        for_each_vector(space, [&](const concept_vector& c) {
            label_vector y = beta(c);
            for (std::size_t s : enum_slots) {
                const label_slot& slot = slots[s];
                int val = y[static_cast<std::size_t>(slot.position)];
                bool hit = label_arity[static_cast<std::size_t>(slot.position)] == 2
                               ? val == 1
                               : val == slot.value;
                if (hit) buckets[s].push_back(space_minterm(space, c));
            }
        });
        for (std::size_t s : enum_slots)
            out[s] = buckets[s].empty() ? bool_expr::constant(false)
                                        : bool_expr::disjunction(std::move(buckets[s]));
    }

    std::vector<bool_expr> formulas;
    formulas.reserve(out.size());
    for (auto& f : out) formulas.push_back(std::move(*f));
    return formulas;
}

std::vector<std::string> default_symbols(const std::string& prefix, int k) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

bool_expr default_parity(int k) {
    std::vector<bool_expr> atoms;
    for (int i = 1; i <= k; ++i) atoms.push_back(bool_expr::atom(i));
    return bool_expr::exclusive_or(std::move(atoms));
}

bool_expr formula_from_spec_cnf(const cnf_formula& f) {
    std::vector<bool_expr> conjuncts;
    for (const auto& c : f.clauses) {
        std::vector<bool_expr> lits;
        for (const auto& l : c) {
            bool_expr a = bool_expr::atom(l.var);
            lits.push_back(l.positive ? a : bool_expr::negation(a));
        }
        conjuncts.push_back(bool_expr::disjunction(std::move(lits)));
    }
    if (conjuncts.empty()) return bool_expr::constant(true);
    return bool_expr::conjunction(std::move(conjuncts));
}

// ---------------------------------------------------------------------------
// Family builders
// ---------------------------------------------------------------------------

task_bundle build_formula_task(const std::string& name, int k, const bool_expr& phi,
                               std::vector<std::string> symbols) {
    if (phi.max_atom() > k)
        throw config_error("formula mentions symbol " + std::to_string(phi.max_atom()) +
                           " but the task has only " + std::to_string(k) + " concepts");
    task_bundle t;
    t.name = name;
    t.space = concept_space{k, 2};
    concept_space space = t.space;
    t.know.space = space;
    t.know.label_arity = {2};
    t.know.slots = make_label_slots(t.know.label_arity);
    t.know.beta = [phi, space](const concept_vector& c) -> label_vector {
        return {eval_over_concepts(phi, c, space.b) ? 1 : 0};
    };
    auto low = lower_structural(phi, space);
    if (!low) throw config_error("formula cannot be lowered to the one-hot layout");
    t.know.bit_formula = {std::move(*low)};
    t.symbol_names = symbols.empty() ? default_symbols("c", k) : std::move(symbols);
    t.label_names = {"y"};
    return t;
}

task_bundle build_mnadd(const task_spec& spec, std::uint64_t bound) {
    const int k = spec.n_digits, b = spec.digit_base;
    if (k < 2) throw config_error("sum tasks need at least two digits", "n_digits");
    if (b < 2) throw config_error("digit base must be at least 2", "digit_base");

    task_bundle t;
    t.name = to_string(spec.family);
    t.space = concept_space{k, b};
    t.know.space = t.space;
    t.know.label_arity = {k * (b - 1) + 1};
    t.know.slots = make_label_slots(t.know.label_arity);
    t.know.beta = [](const concept_vector& c) -> label_vector {
        return {std::accumulate(c.begin(), c.end(), 0)};
    };
    t.know.bit_formula =
        build_bit_formulas(t.space, t.know.label_arity, t.know.beta, {}, bound);
    t.symbol_names = default_symbols("digit", k);
    t.label_names = {"sum"};

    std::vector<int> digits = spec.digit_values;
    if (spec.family == task_family::mnadd_half && digits.empty()) digits = {0, 1, 2, 3, 4};
    for (int d : digits)
        if (d < 0 || d >= b) throw config_error("digit value out of range", "digit_values");

    if (spec.family == task_family::mnadd_evenodd) {
        // Training pairs are all-even or all-odd.
        t.allowed = [](const concept_vector& c) {
            int parity = c[0] % 2;
            return std::all_of(c.begin(), c.end(), [parity](int v) { return v % 2 == parity; });
        };
    } else if (!digits.empty()) {
        std::set<int> allowed_digits(digits.begin(), digits.end());
        t.allowed = [allowed_digits](const concept_vector& c) {
            return std::all_of(c.begin(), c.end(),
                               [&](int v) { return allowed_digits.count(v) > 0; });
        };
    }
    return t;
}

task_bundle build_mnmath(const task_spec& spec, std::uint64_t bound) {
    const int k = spec.n_digits, b = spec.digit_base;
    std::vector<logic_entry> equations = spec.equations;
    if (equations.empty())
        throw config_error("an equation system needs at least one entry", "logic");

    task_bundle t;
    t.name = to_string(spec.family);
    t.space = concept_space{k, b};
    t.know.space = t.space;

    std::vector<std::optional<bool_expr>> structural;
    for (const auto& entry : equations) {
        if (const auto* term = std::get_if<int_term>(&entry)) {
            auto [lo, hi] = term->bounds([&](int s) -> std::pair<long, long> {
                if (s < 1 || s > k) throw config_error("equation mentions an unknown symbol", "logic");
                return {0, b - 1};
            });
            if (lo < 0)
                throw config_error("equation can take negative values; labels must be non-negative",
                                   "logic");
            t.know.label_arity.push_back(static_cast<int>(hi) + 1);
            structural.emplace_back(std::nullopt);
        } else {
            const auto& phi = std::get<bool_expr>(entry);
            std::vector<int> syms;
            phi.collect_symbols(syms);
            for (int s : syms)
                if (s < 1 || s > k) throw config_error("equation mentions an unknown symbol", "logic");
            t.know.label_arity.push_back(2);
            structural.emplace_back(phi);
        }
    }
    t.know.slots = make_label_slots(t.know.label_arity);

    const int base = b;
    t.know.beta = [equations, base](const concept_vector& c) -> label_vector {
        label_vector y;
        for (const auto& entry : equations) {
            if (const auto* term = std::get_if<int_term>(&entry))
                y.push_back(static_cast<int>(eval_int_over_concepts(*term, c)));
            else
                y.push_back(eval_over_concepts(std::get<bool_expr>(entry), c, base) ? 1 : 0);
        }
        return y;
    };
    t.know.bit_formula =
        build_bit_formulas(t.space, t.know.label_arity, t.know.beta, structural, bound);
    t.symbol_names = default_symbols("digit", k);
    t.label_names = default_symbols("eq", static_cast<int>(equations.size()));

    if (!spec.digit_values.empty()) {
        for (int d : spec.digit_values)
            if (d < 0 || d >= b) throw config_error("digit value out of range", "digit_values");
        std::set<int> allowed_digits(spec.digit_values.begin(), spec.digit_values.end());
        t.allowed = [allowed_digits](const concept_vector& c) {
            return std::all_of(c.begin(), c.end(),
                               [&](int v) { return allowed_digits.count(v) > 0; });
        };
    }
    return t;
}

// Pairwise predicates over one figure: all-same, all-different, and the
// leftover "exactly a pair" case.
bool_expr attribute_predicate(const std::vector<int>& symbols, bool same) {
    std::vector<bool_expr> parts;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        for (std::size_t j = i + 1; j < symbols.size(); ++j) {
            bool_expr eq =
                bool_expr::int_equality(int_term::symbol(symbols[i]), int_term::symbol(symbols[j]));
            parts.push_back(same ? eq : bool_expr::negation(eq));
        }
    }
    return bool_expr::conjunction(std::move(parts));
}

task_bundle build_kand(const task_spec& spec, std::uint64_t bound) {
    const int nf = spec.n_figures, np = spec.n_primitives;
    if (nf < 1 || np < 2) throw config_error("kand needs >= 1 figures and >= 2 primitives");
    std::vector<std::string> shapes =
        spec.shape_names.empty() ? std::vector<std::string>{"square", "triangle", "circle"}
                                 : spec.shape_names;
    std::vector<std::string> colors =
        spec.color_names.empty() ? std::vector<std::string>{"red", "yellow", "blue"}
                                 : spec.color_names;
    if (shapes.size() != colors.size())
        throw config_error("shape and color lists must have the same length (uniform cardinality)",
                           "shapes");
    const int b = static_cast<int>(shapes.size());
    const int k = nf * np * 2;

    task_bundle t;
    t.name = to_string(spec.family);
    t.space = concept_space{k, b};
    t.know.space = t.space;
    t.know.label_arity = {2};
    t.know.slots = make_label_slots(t.know.label_arity);

    // Symbol order: figures outermost, then primitives, shape before color.
    for (int f = 1; f <= nf; ++f)
        for (int p = 1; p <= np; ++p) {
            std::string tag = nf > 1 ? std::to_string(f) + "_" + std::to_string(p)
                                     : std::to_string(p);
            t.symbol_names.push_back("shape_" + tag);
            t.symbol_names.push_back("color_" + tag);
        }
    t.label_names = {"pattern"};

    bool_expr full = bool_expr::constant(false);
    if (spec.full_logic) {
        full = *spec.full_logic;
    } else if (spec.figure_logic) {
        // Instantiate the per-figure pattern on each figure, then aggregate.
        std::vector<bool_expr> instances;
        for (int f = 0; f < nf; ++f) {
            int offset = f * np * 2;
            instances.push_back(spec.figure_logic->remap_symbols(
                [offset, np](int s) {
                    if (s < 1 || s > 2 * np)
                        throw config_error("figure pattern mentions a symbol outside one figure",
                                           "logic");
                    return s + offset;
                }));
        }
        if (spec.aggregator_logic) {
            // Aggregator atoms 1..nf name the per-figure outcomes.
            std::function<bool_expr(const bool_expr&)> subst = [&](const bool_expr& e) -> bool_expr {
                using kk = bool_expr::node_kind;
                switch (e.kind()) {
                    case kk::atom: {
                        int f = e.atom_index();
                        if (f < 1 || f > nf)
                            throw config_error("aggregator mentions an unknown figure", "aggregator_logic");
                        return instances[static_cast<std::size_t>(f - 1)];
                    }
                    case kk::constant: return e;
                    case kk::int_equality:
                        throw config_error("aggregator must be a boolean formula", "aggregator_logic");
                    case kk::negation: return bool_expr::negation(subst(e.children()[0]));
                    default: {
                        std::vector<bool_expr> kids;
                        for (const auto& ch : e.children()) kids.push_back(subst(ch));
                        if (e.kind() == kk::conjunction) return bool_expr::conjunction(std::move(kids));
                        if (e.kind() == kk::disjunction) return bool_expr::disjunction(std::move(kids));
                        if (e.kind() == kk::exclusive_or)
                            return bool_expr::exclusive_or(std::move(kids));
                        return bool_expr::equivalence(kids[0], kids[1]);
                    }
                }
            };
            full = subst(*spec.aggregator_logic);
        } else {
            full = bool_expr::conjunction(instances);
        }
    } else {
        // Builtin pattern: all figures agree on one of the six attribute
        // profiles (same / exactly-a-pair / all-different, per attribute).
        std::vector<bool_expr> disjuncts;
        for (int attr = 0; attr < 2; ++attr) {  // 0 = shape, 1 = color
            std::vector<std::vector<int>> per_figure;
            for (int f = 0; f < nf; ++f) {
                std::vector<int> syms;
                for (int p = 0; p < np; ++p) syms.push_back((f * np + p) * 2 + 1 + attr);
                per_figure.push_back(std::move(syms));
            }
            for (int profile = 0; profile < 3; ++profile) {  // same, two, different
                std::vector<bool_expr> per_fig;
                for (const auto& syms : per_figure) {
                    bool_expr same = attribute_predicate(syms, true);
                    bool_expr diff = attribute_predicate(syms, false);
                    if (profile == 0)
                        per_fig.push_back(same);
                    else if (profile == 2)
                        per_fig.push_back(diff);
                    else
                        per_fig.push_back(bool_expr::conjunction(
                            {bool_expr::negation(same), bool_expr::negation(diff)}));
                }
                disjuncts.push_back(bool_expr::conjunction(std::move(per_fig)));
            }
        }
        full = bool_expr::disjunction(std::move(disjuncts));
    }

    if (full.max_atom() > k)
        throw config_error("pattern mentions a symbol outside the concept vector", "logic");
    concept_space space = t.space;
    t.know.beta = [full, space](const concept_vector& c) -> label_vector {
        return {eval_over_concepts(full, c, space.b) ? 1 : 0};
    };
    t.know.bit_formula = build_bit_formulas(t.space, t.know.label_arity, t.know.beta,
                                            {std::optional<bool_expr>(full)}, bound);
    return t;
}

task_bundle build_cle4evr(const task_spec& spec, std::uint64_t bound) {
    const int n = spec.n_objects;
    if (n < 2) throw config_error("cle4evr needs at least two objects", "n_objects");
    std::vector<std::string> colors = spec.color_names, shapes = spec.shape_names;
    int b = spec.n_values;
    if (!colors.empty() || !shapes.empty()) {
        if (colors.size() != shapes.size())
            throw config_error("color and shape lists must have the same length", "colors");
        b = static_cast<int>(colors.size());
    }
    if (b < 2) throw config_error("cle4evr needs at least two attribute values", "n_values");

    task_bundle t;
    t.name = to_string(spec.family);
    t.space = concept_space{2 * n, b};
    t.know.space = t.space;
    t.know.label_arity = {2};
    t.know.slots = make_label_slots(t.know.label_arity);
    for (int i = 1; i <= n; ++i) {
        t.symbol_names.push_back("color_" + std::to_string(i));
        t.symbol_names.push_back("shape_" + std::to_string(i));
    }
    t.label_names = {"match"};

    bool_expr full = bool_expr::constant(false);
    if (spec.full_logic || spec.object_logic) {
        full = spec.full_logic ? *spec.full_logic : *spec.object_logic;
    } else {
        // Positive iff some two objects share color and shape.
        std::vector<bool_expr> pairs;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                int ci = 2 * i + 1, si = 2 * i + 2, cj = 2 * j + 1, sj = 2 * j + 2;
                pairs.push_back(bool_expr::conjunction(
                    {bool_expr::int_equality(int_term::symbol(ci), int_term::symbol(cj)),
                     bool_expr::int_equality(int_term::symbol(si), int_term::symbol(sj))}));
            }
        }
        full = bool_expr::disjunction(std::move(pairs));
    }
    if (full.max_atom() > t.space.k)
        throw config_error("condition mentions a symbol outside the concept vector", "logic");

    concept_space space = t.space;
    t.know.beta = [full, space](const concept_vector& c) -> label_vector {
        return {eval_over_concepts(full, c, space.b) ? 1 : 0};
    };
    t.know.bit_formula = build_bit_formulas(t.space, t.know.label_arity, t.know.beta,
                                            {std::optional<bool_expr>(full)}, bound);
    return t;
}

}  // namespace

const std::vector<std::string>& boia_concept_names() {
    static const std::vector<std::string> names = {
        "red_light",      "green_light",      "car",
        "person",         "rider",            "other_obstacle",
        "follow",         "stop_sign",        "left_lane",
        "left_green_light", "left_follow",    "no_left_lane",
        "left_obstacle",  "left_solid_line",  "right_lane",
        "right_green_light", "right_follow",  "no_right_lane",
        "right_obstacle", "right_solid_line", "clear",
    };
    return names;
}

const std::vector<std::string>& boia_action_names() {
    static const std::vector<std::string> names = {"forward", "stop", "left", "right"};
    return names;
}

namespace {

task_bundle build_boia(const task_spec& spec, std::uint64_t bound) {
    const bool emergency = spec.family == task_family::boia_ood_emergency;
    task_bundle t;
    t.name = to_string(spec.family);
    t.symbol_names = boia_concept_names();
    if (emergency) t.symbol_names.push_back("emergency");
    const int k = static_cast<int>(t.symbol_names.size());
    t.space = concept_space{k, 2};
    t.know.space = t.space;
    t.know.label_arity = {2, 2, 2, 2};
    t.know.slots = make_label_slots(t.know.label_arity);
    t.label_names = boia_action_names();

    auto sym = [&](const std::string& name) {
        for (std::size_t i = 0; i < t.symbol_names.size(); ++i)
            if (t.symbol_names[i] == name) return bool_expr::atom(static_cast<int>(i) + 1);
        throw eval_error("unknown road-scene concept " + name);
    };

    // Enabling concepts per action from the annotation categories, closed to
    // biconditionals so that concepts determine every action; an emergency
    // waives red lights and solid-line restrictions.
    bool_expr obstacle =
        bool_expr::disjunction({sym("car"), sym("person"), sym("rider"), sym("other_obstacle")});
    bool_expr red = emergency
                        ? bool_expr::conjunction({sym("red_light"),
                                                  bool_expr::negation(sym("emergency"))})
                        : sym("red_light");
    bool_expr stop = bool_expr::disjunction({red, sym("stop_sign"), obstacle});
    bool_expr forward = bool_expr::conjunction(
        {bool_expr::disjunction({sym("green_light"), sym("follow"), sym("clear")}),
         bool_expr::negation(stop)});

    auto turn = [&](const std::string& side) {
        bool_expr enable = bool_expr::disjunction(
            {sym(side + "_lane"), sym(side + "_green_light"), sym(side + "_follow")});
        bool_expr solid = emergency
                              ? bool_expr::conjunction({sym(side + "_solid_line"),
                                                        bool_expr::negation(sym("emergency"))})
                              : sym(side + "_solid_line");
        bool_expr blocked =
            bool_expr::disjunction({sym("no_" + side + "_lane"), sym(side + "_obstacle"), solid});
        return bool_expr::conjunction({enable, bool_expr::negation(blocked)});
    };

    std::vector<bool_expr> actions{forward, stop, turn("left"), turn("right")};
    concept_space space = t.space;
    t.know.beta = [actions, space](const concept_vector& c) -> label_vector {
        label_vector y;
        for (const auto& a : actions) y.push_back(eval_over_concepts(a, c, space.b) ? 1 : 0);
        return y;
    };
    std::vector<std::optional<bool_expr>> structural;
    for (const auto& a : actions) structural.emplace_back(a);
    t.know.bit_formula =
        build_bit_formulas(t.space, t.know.label_arity, t.know.beta, structural, bound);
    return t;
}

}  // namespace

task_bundle build_task(const task_spec& spec, std::uint64_t bound) {
    switch (spec.family) {
        case task_family::mnlogic: {
            bool_expr phi = spec.formula ? *spec.formula
                                         : (spec.full_logic ? *spec.full_logic
                                                            : default_parity(spec.n_bits));
            return build_formula_task("mnlogic", spec.n_bits, phi, {});
        }
        case task_family::custom_cnf: {
            if (!spec.custom_cnf) throw config_error("custom-cnf task needs a CNF", "cnf");
            return build_formula_task("custom-cnf", spec.custom_cnf->num_vars,
                                      formula_from_spec_cnf(*spec.custom_cnf), {});
        }
        case task_family::mnadd:
        case task_family::mnadd_half:
        case task_family::mnadd_evenodd: return build_mnadd(spec, bound);
        case task_family::mnmath: return build_mnmath(spec, bound);
        case task_family::kand: return build_kand(spec, bound);
        case task_family::cle4evr: return build_cle4evr(spec, bound);
        case task_family::boia:
        case task_family::boia_ood_emergency: return build_boia(spec, bound);
    }
    throw config_error("unknown task family");
}

support default_support(const task_bundle& task, std::uint64_t bound) {
    if (!task.restricted()) return exhaustive_support(task.know, bound);
    auto vol = task.space.volume();
    if (!vol || *vol > bound)
        throw capacity_error("default support: b^k exceeds the enumeration bound " +
                             std::to_string(bound));
    std::vector<concept_vector> keep;
    for_each_vector(task.space, [&](const concept_vector& c) {
        if (task.allowed(c)) keep.push_back(c);
    });
    return make_support(task.know, keep);
}

task_spec spec_from_name(const std::string& name, std::uint64_t seed) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(n.begin(), n.end(), '_', '-');

    auto split_ints = [](const std::string& s) {
        std::vector<int> out;
        std::string cur;
        for (char ch : s + "-") {
            if (ch == '-') {
                if (cur.empty()) return std::vector<int>{};
                out.push_back(std::stoi(cur));
                cur.clear();
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                cur.push_back(ch);
            } else {
                return std::vector<int>{};
            }
        }
        return out;
    };

    task_spec spec;
    if (n.rfind("xor-", 0) == 0 || n.rfind("and-", 0) == 0) {
        auto parts = split_ints(n.substr(4));
        if (parts.size() != 1 || parts[0] < 1) throw config_error("bad task name: " + name);
        spec.family = task_family::mnlogic;
        spec.n_bits = parts[0];
        if (n[0] == 'x') {
            spec.formula = default_parity(spec.n_bits);
        } else {
            std::vector<bool_expr> atoms;
            for (int i = 1; i <= spec.n_bits; ++i) atoms.push_back(bool_expr::atom(i));
            spec.formula = bool_expr::conjunction(std::move(atoms));
        }
        return spec;
    }
    if (n.rfind("random-", 0) == 0) {
        auto parts = split_ints(n.substr(7));
        if (parts.size() != 3) throw config_error("random task name needs k-m-l: " + name);
        spec.family = task_family::mnlogic;
        spec.n_bits = parts[0];
        cnf_formula phi = random_lcnf(parts[0], parts[1], parts[2], seed);
        spec.formula = formula_from_spec_cnf(phi);
        return spec;
    }
    if (n.rfind("mnadd-", 0) == 0) {
        auto parts = split_ints(n.substr(6));
        if (parts.size() == 1 && parts[0] >= 2) {
            spec.family = task_family::mnadd;
            spec.n_digits = parts[0];
            return spec;
        }
    }
    if (auto family = family_from_string(n)) {
        spec.family = *family;
        if (spec.family == task_family::mnmath) {
            // Default system: y1 = 2*c1 + c2, y2 = c3 + c4.
            spec.n_digits = 4;
            spec.equations = {
                int_term::add({int_term::mul({int_term::constant(2), int_term::symbol(1)}),
                               int_term::symbol(2)}),
                int_term::add({int_term::symbol(3), int_term::symbol(4)})};
        }
        return spec;
    }
    throw config_error("unknown task name: " + name);
}

std::string export_knowledge_dimacs(const task_bundle& task) {
    const knowledge& kn = task.know;
    if (!kn.has_bit_formula())
        throw eval_error("knowledge has no bit formula; it cannot be exported as CNF");

    const int n_bits = kn.space.onehot_bits();
    const int n_slots = static_cast<int>(kn.slots.size());
    cnf_formula f;
    std::vector<clause>& cls = f.clauses;

    // One-hot validity per concept block.
    for (int j = 0; j < kn.space.k; ++j) {
        std::vector<int> block;
        for (int v = 0; v < kn.space.b; ++v) block.push_back(onehot_atom(kn.space, j, v));
        for (auto& c : exactly_one_clauses(block)) cls.push_back(std::move(c));
    }

    // Label slot variables tied to their formulas.
    int next_aux = n_bits + n_slots + 1;
    for (int s = 0; s < n_slots; ++s) {
        int slot_var = n_bits + 1 + s;
        tseitin_result t = tseitin(kn.bit_formula[static_cast<std::size_t>(s)], next_aux);
        if (t.root_is_constant) {
            cls.push_back({literal(slot_var, t.constant_value)});
            continue;
        }
        next_aux += t.aux_count;
        for (auto& c : t.cnf.clauses) cls.push_back(std::move(c));
        cls.push_back({-t.root, literal(slot_var, true)});
        cls.push_back({t.root, literal(slot_var, false)});
    }
    f.num_vars = next_aux - 1;

    std::vector<std::string> comments;
    comments.push_back("knowledge for task " + task.name + " (k=" + std::to_string(kn.space.k) +
                       " b=" + std::to_string(kn.space.b) + ")");
    for (int j = 0; j < kn.space.k; ++j)
        comments.push_back("concept " + task.symbol_names[static_cast<std::size_t>(j)] + " bits " +
                           std::to_string(onehot_atom(kn.space, j, 0)) + ".." +
                           std::to_string(onehot_atom(kn.space, j, kn.space.b - 1)));
    for (int s = 0; s < n_slots; ++s) {
        const label_slot& slot = kn.slots[static_cast<std::size_t>(s)];
        std::string name = task.label_names[static_cast<std::size_t>(slot.position)];
        if (kn.label_arity[static_cast<std::size_t>(slot.position)] > 2)
            name += "=" + std::to_string(slot.value);
        comments.push_back("label " + name + " var " + std::to_string(n_bits + 1 + s));
    }
    if (f.num_vars > n_bits + n_slots)
        comments.push_back("aux vars " + std::to_string(n_bits + n_slots + 1) + ".." +
                           std::to_string(f.num_vars));
    return emit_dimacs(f, comments);
}

}  // namespace rsv
