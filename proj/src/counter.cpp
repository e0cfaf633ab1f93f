#include "rsv/counter.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace rsv {

namespace {

// Internal clause form: DIMACS-signed literals, sorted by (var, sign).
using iclause = std::vector<int>;
using clause_set = std::vector<iclause>;

int var_of(int lit) { return lit < 0 ? -lit : lit; }

std::vector<int> vars_of(const clause_set& cs) {
    std::set<int> vs;
    for (const auto& c : cs)
        for (int l : c) vs.insert(var_of(l));
    return {vs.begin(), vs.end()};
}

// Canonical form: sorted, deduplicated clauses.  The count of a clause set
// depends only on this form, so it doubles as the cache key.
clause_set canonical(clause_set cs) {
    for (auto& c : cs) std::sort(c.begin(), c.end(), [](int a, int b) {
        return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
    });
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

struct clause_set_hash {
    std::size_t operator()(const clause_set& cs) const {
        std::size_t h = cs.size();
        for (const auto& c : cs) {
            h ^= c.size() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            for (int l : c) h ^= static_cast<std::size_t>(l) * 0x100000001b3ULL + (h << 5);
        }
        return h;
    }
};

mpz_class pow2(std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r;
}

class search {
public:
    search(const counter_config& cfg) : cfg_(cfg) {}

    counter_stats stats;

    // Counts assignments over vars(cs) satisfying cs (cs need not be canonical).
    mpz_class count(const clause_set& cs) {
        if (cs.empty()) return 1;

        // Unit propagation to fixpoint.
        std::size_t n_vars_before = vars_of(cs).size();
        std::map<int, bool> forced;  // var -> value
        clause_set cur = cs;
        while (true) {
            int unit = 0;
            for (const auto& c : cur) {
                if (c.empty()) return 0;
                if (c.size() == 1) {
                    unit = c[0];
                    break;
                }
            }
            if (unit == 0) break;
            ++stats.propagations;
            forced[var_of(unit)] = unit > 0;
            clause_set next;
            next.reserve(cur.size());
            bool conflict = false;
            for (const auto& c : cur) {
                bool satisfied = false;
                iclause reduced;
                for (int l : c) {
                    if (l == unit) {
                        satisfied = true;
                        break;
                    }
                    if (l != -unit) reduced.push_back(l);
                }
                if (satisfied) continue;
                if (reduced.empty()) {
                    conflict = true;
                    break;
                }
                next.push_back(std::move(reduced));
            }
            if (conflict) return 0;
            cur = std::move(next);
        }

        std::vector<int> rest_vars = vars_of(cur);
        std::uint64_t vanished =
            static_cast<std::uint64_t>(n_vars_before - forced.size() - rest_vars.size());
        mpz_class result = pow2(vanished);
        if (cur.empty()) return result;

        for (auto& comp : split_components(cur)) result *= count_component(std::move(comp));
        return result;
    }

private:
    // Connected components under the shared-variable relation.
    std::vector<clause_set> split_components(const clause_set& cs) {
        std::map<int, int> var_comp;  // var -> component root (index of first clause)
        std::vector<int> parent(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i) parent[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

        std::map<int, int> var_first;  // var -> first clause index containing it
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (int l : cs[i]) {
                auto [it, inserted] = var_first.try_emplace(var_of(l), static_cast<int>(i));
                if (!inserted) unite(static_cast<int>(i), it->second);
            }
        }
        std::map<int, clause_set> by_root;
        for (std::size_t i = 0; i < cs.size(); ++i)
            by_root[find(static_cast<int>(i))].push_back(cs[i]);
        std::vector<clause_set> out;
        out.reserve(by_root.size());
        for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
        return out;
    }

    mpz_class count_component(clause_set comp) {
        clause_set key = canonical(std::move(comp));
        if (cfg_.component_caching) {
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++stats.cache_hits;
                return it->second;
            }
        }

        std::vector<int> vars = vars_of(key);
        mpz_class result;
        if (static_cast<int>(vars.size()) <= cfg_.exhaustive_fallback_threshold) {
            result = brute_force(key, vars);
        } else {
            if (stats.decisions >= cfg_.decision_cap)
                throw budget_error("model counter exceeded its decision budget of " +
                                       std::to_string(cfg_.decision_cap),
                                   stats.decisions, stats.propagations);
            ++stats.decisions;
            int v = pick_branch_var(key, vars);
            clause_set pos = key;
            pos.push_back({v});
            clause_set neg = key;
            neg.push_back({-v});
            result = count(pos) + count(neg);
        }

        if (cfg_.component_caching) {
            cache_.emplace(std::move(key), result);
            stats.cached_components = cache_.size();
        }
        return result;
    }

    int pick_branch_var(const clause_set& cs, const std::vector<int>& vars) {
        if (cfg_.branching == counter_config::branching_rule::fixed_order) return vars.front();
        std::map<int, int> freq;
        for (const auto& c : cs)
            for (int l : c) ++freq[var_of(l)];
        int best = vars.front(), best_count = -1;
        for (int v : vars) {
            int f = freq[v];
            if (f > best_count) {
                best = v;
                best_count = f;
            }
        }
        return best;
    }

    mpz_class brute_force(const clause_set& cs, const std::vector<int>& vars) {
        std::map<int, int> pos_of;
        for (std::size_t i = 0; i < vars.size(); ++i) pos_of[vars[i]] = static_cast<int>(i);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;  // (pos, neg) per clause
        masks.reserve(cs.size());
        for (const auto& c : cs) {
            std::uint64_t pos = 0, neg = 0;
            for (int l : c) {
                std::uint64_t bit = 1ULL << pos_of[var_of(l)];
                (l > 0 ? pos : neg) |= bit;
            }
            masks.emplace_back(pos, neg);
        }
        const std::uint64_t total = 1ULL << vars.size();
        std::uint64_t n = 0;
        for (std::uint64_t a = 0; a < total; ++a) {
            bool ok = true;
            for (const auto& [pos, neg] : masks) {
                if ((pos & a) == 0 && (neg & ~a) == 0) {
                    ok = false;
                    break;
                }
            }
            n += ok;
        }
        return mpz_class(static_cast<unsigned long>(n));
    }

    counter_config cfg_;
    std::unordered_map<clause_set, mpz_class, clause_set_hash> cache_;
};

// Drops tautological clauses and duplicate literals; empty clause -> false.
bool preprocess(const cnf_formula& f, clause_set& out) {
    for (const auto& c : f.clauses) {
        iclause ic;
        std::set<int> seen;
        bool tautology = false;
        for (const auto& l : c) {
            int code = l.to_dimacs();
            if (seen.count(-code)) {
                tautology = true;
                break;
            }
            if (seen.insert(code).second) ic.push_back(code);
        }
        if (tautology) continue;
        if (ic.empty()) return false;
        out.push_back(std::move(ic));
    }
    return true;
}

}  // namespace

model_count count_models(const cnf_formula& f, const counter_config& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    model_count out;

    clause_set cs;
    if (!preprocess(f, cs)) {
        out.value = 0;
        return out;
    }
    std::size_t used = vars_of(cs).size();
    std::uint64_t free_vars = static_cast<std::uint64_t>(f.num_vars) - used;

    search s(cfg);
    out.value = s.count(cs) * pow2(free_vars);
    out.stats = s.stats;
    out.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

model_count count_exhaustive(const cnf_formula& f) {
    if (f.num_vars > 26)
        throw capacity_error("count_exhaustive supports at most 26 variables, got " +
                             std::to_string(f.num_vars));
    auto t0 = std::chrono::steady_clock::now();

    std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
    masks.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        std::uint32_t pos = 0, neg = 0;
        for (const auto& l : c) {
            std::uint32_t bit = 1u << (l.var - 1);
            (l.positive ? pos : neg) |= bit;
        }
        masks.emplace_back(pos, neg);
    }

    const std::uint64_t total = 1ULL << f.num_vars;
    std::uint64_t n = 0;
    for (std::uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (const auto& [pos, neg] : masks) {
            if ((pos & a) == 0 && (neg & static_cast<std::uint32_t>(~a)) == 0) {
                ok = false;
                break;
            }
        }
        n += ok;
    }

    model_count out;
    out.value = mpz_class(static_cast<unsigned long>(n));
    out.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace rsv
