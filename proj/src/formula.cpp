#include "rsv/formula.hpp"

#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

namespace rsv {

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool parse_int(const std::string& tok, long& out) {
    if (tok.empty()) return false;
    std::size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size()) return false;
    long v = 0;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
        v = v * 10 + (tok[i] - '0');
        if (v > 1000000000L) return false;
    }
    out = tok[0] == '-' ? -v : v;
    return true;
}

}  // namespace

cnf_formula parse_dimacs(std::istream& in) {
    cnf_formula f;
    bool have_header = false;
    long declared_clauses = 0;
    long line_no = 0;

    clause current;
    std::set<std::pair<int, bool>> seen_in_clause;
    bool in_clause = false;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == 'c') {
            f.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
            continue;
        }
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (toks[0] == "p") {
            if (have_header) throw parse_error("duplicate problem header", line_no);
            long v = 0, c = 0;
            if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], v) || !parse_int(toks[3], c) ||
                v < 0 || c < 0)
                throw parse_error("malformed header, expected `p cnf V C`", line_no);
            f.num_vars = static_cast<int>(v);
            declared_clauses = c;
            have_header = true;
            continue;
        }

        if (!have_header) throw parse_error("clause data before `p cnf` header", line_no);

        for (const auto& tok : toks) {
            long lit = 0;
            if (!parse_int(tok, lit))
                throw parse_error("unexpected token `" + tok + "`", line_no);
            if (lit == 0) {
                if (current.empty()) throw parse_error("empty clause", line_no);
                f.clauses.push_back(std::move(current));
                current.clear();
                seen_in_clause.clear();
                in_clause = false;
                if (static_cast<long>(f.clauses.size()) > declared_clauses)
                    throw parse_error("more clauses than declared in header", line_no);
                continue;
            }
            long var = lit < 0 ? -lit : lit;
            if (var > f.num_vars)
                throw parse_error("literal index " + std::to_string(var) + " exceeds declared variable count " +
                                      std::to_string(f.num_vars),
                                  line_no);
            literal l = literal::from_dimacs(static_cast<int>(lit));
            if (!seen_in_clause.insert({l.var, l.positive}).second)
                throw parse_error("duplicate literal " + tok + " in clause", line_no);
            current.push_back(l);
            in_clause = true;
        }
    }

    if (in_clause) throw parse_error("missing clause terminator 0 at end of input", line_no);
    if (!have_header) throw parse_error("missing `p cnf` header", line_no);
    if (static_cast<long>(f.clauses.size()) != declared_clauses)
        throw parse_error("header declares " + std::to_string(declared_clauses) + " clauses but found " +
                              std::to_string(f.clauses.size()),
                          line_no);
    return f;
}

cnf_formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

std::string emit_dimacs(const cnf_formula& f, const std::vector<std::string>& extra_comments) {
    std::ostringstream out;
    for (const auto& c : extra_comments) out << "c " << c << '\n';
    for (const auto& c : f.comments) out << "c " << c << '\n';
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) {
        for (const auto& l : cl) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

bool eval(const clause& c, const assignment& a) {
    for (const auto& l : c)
        if (a.value(l.var) == l.positive) return true;
    return false;
}

bool eval(const cnf_formula& f, const assignment& a) {
    if (a.size() < f.num_vars)
        throw eval_error("assignment covers " + std::to_string(a.size()) + " of " +
                         std::to_string(f.num_vars) + " variables");
    for (const auto& c : f.clauses)
        if (!eval(c, a)) return false;
    return true;
}

}  // namespace rsv
