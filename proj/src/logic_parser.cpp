#include "rsv/logic_parser.hpp"

#include <cctype>

namespace rsv {

int symbol_table::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i) + 1;
    return 0;
}

symbol_table symbol_table::defaults(int k) {
    symbol_table t;
    for (int i = 1; i <= k; ++i) t.names.push_back("c" + std::to_string(i));
    return t;
}

namespace {

struct token {
    enum class kind { name, number, op, lparen, rparen, comma, end };
    kind k;
    std::string text;
    long value = 0;
};

class lexer {
public:
    explicit lexer(const std::string& text) : text_(text) { advance(); }

    const token& peek() const { return cur_; }
    token take() {
        token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ >= text_.size()) {
            cur_ = {token::kind::end, "", 0};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            cur_ = {token::kind::number, text_.substr(start, pos_ - start), v};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            cur_ = {token::kind::name, text_.substr(start, pos_ - start), 0};
            return;
        }
        switch (c) {
            case '(': cur_ = {token::kind::lparen, "(", 0}; break;
            case ')': cur_ = {token::kind::rparen, ")", 0}; break;
            case ',': cur_ = {token::kind::comma, ",", 0}; break;
            case '&':
            case '|':
            case '~':
            case '^':
            case '+':
            case '-':
            case '*': cur_ = {token::kind::op, std::string(1, c), 0}; break;
            case '=':
            case '!':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    cur_ = {token::kind::op, std::string(1, c) + "=", 0};
                    ++pos_;
                    break;
                }
                [[fallthrough]];
            default: throw parse_error("unexpected character `" + std::string(1, c) + "` in logic");
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    token cur_;
};

// Parsed value: boolean formula, integer term, or a bare symbol that can
// still become either.
struct value {
    enum class kind { boolean, integer, symbol };
    kind k;
    bool_expr b = bool_expr::constant(false);
    int_term t = int_term::constant(0);
    int symbol = 0;
};

class parser {
public:
    parser(const std::string& text, const symbol_table& symbols) : lex_(text), symbols_(symbols) {}

    value parse_full() {
        value v = parse_or();
        if (lex_.peek().k != token::kind::end)
            throw parse_error("trailing input after logic expression: `" + lex_.peek().text + "`");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg); }

    bool_expr to_bool(const value& v) {
        switch (v.k) {
            case value::kind::boolean: return v.b;
            case value::kind::symbol: return bool_expr::atom(v.symbol);
            case value::kind::integer: fail("integer expression used where a formula is required");
        }
        fail("unreachable");
    }

    int_term to_int(const value& v) {
        switch (v.k) {
            case value::kind::integer: return v.t;
            case value::kind::symbol: return int_term::symbol(v.symbol);
            case value::kind::boolean: fail("formula used where an integer expression is required");
        }
        fail("unreachable");
    }

    static value boolean(bool_expr e) { return {value::kind::boolean, std::move(e), int_term::constant(0), 0}; }
    static value integer(int_term t) { return {value::kind::integer, bool_expr::constant(false), std::move(t), 0}; }

    value parse_or() {
        value v = parse_xor();
        while (lex_.peek().k == token::kind::op && lex_.peek().text == "|") {
            lex_.take();
            v = boolean(bool_expr::disjunction({to_bool(v), to_bool(parse_xor())}));
        }
        return v;
    }

    value parse_xor() {
        value v = parse_and();
        while (lex_.peek().k == token::kind::op && lex_.peek().text == "^") {
            lex_.take();
            v = boolean(bool_expr::exclusive_or({to_bool(v), to_bool(parse_and())}));
        }
        return v;
    }

    value parse_and() {
        value v = parse_not();
        while (lex_.peek().k == token::kind::op && lex_.peek().text == "&") {
            lex_.take();
            v = boolean(bool_expr::conjunction({to_bool(v), to_bool(parse_not())}));
        }
        return v;
    }

    value parse_not() {
        if (lex_.peek().k == token::kind::op && lex_.peek().text == "~") {
            lex_.take();
            return boolean(bool_expr::negation(to_bool(parse_not())));
        }
        return parse_comparison();
    }

    value parse_comparison() {
        value v = parse_additive();
        if (lex_.peek().k == token::kind::op &&
            (lex_.peek().text == "==" || lex_.peek().text == "!=")) {
            std::string op = lex_.take().text;
            value rhs = parse_additive();
            bool_expr eq = bool_expr::int_equality(to_int(v), to_int(rhs));
            return boolean(op == "==" ? eq : bool_expr::negation(eq));
        }
        return v;
    }

    value parse_additive() {
        value v = parse_multiplicative();
        while (lex_.peek().k == token::kind::op &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            std::string op = lex_.take().text;
            value rhs = parse_multiplicative();
            if (op == "+") {
                v = integer(int_term::add({to_int(v), to_int(rhs)}));
            } else {
                v = integer(int_term::add(
                    {to_int(v), int_term::mul({int_term::constant(-1), to_int(rhs)})}));
            }
        }
        return v;
    }

    value parse_multiplicative() {
        value v = parse_unary();
        while (lex_.peek().k == token::kind::op && lex_.peek().text == "*") {
            lex_.take();
            v = integer(int_term::mul({to_int(v), to_int(parse_unary())}));
        }
        return v;
    }

    value parse_unary() {
        if (lex_.peek().k == token::kind::op && lex_.peek().text == "-") {
            lex_.take();
            return integer(int_term::mul({int_term::constant(-1), to_int(parse_unary())}));
        }
        return parse_primary();
    }

    value parse_primary() {
        token t = lex_.take();
        switch (t.k) {
            case token::kind::number: return integer(int_term::constant(t.value));
            case token::kind::lparen: {
                value v = parse_or();
                expect_rparen();
                return v;
            }
            case token::kind::name: {
                if (lex_.peek().k == token::kind::lparen) return parse_call(t.text);
                if (t.text == "true" || t.text == "True") return boolean(bool_expr::constant(true));
                if (t.text == "false" || t.text == "False")
                    return boolean(bool_expr::constant(false));
                int idx = symbols_.index_of(t.text);
                if (idx == 0) fail("unknown symbol `" + t.text + "`");
                return {value::kind::symbol, bool_expr::constant(false), int_term::constant(0), idx};
            }
            default: fail("unexpected token `" + t.text + "`");
        }
    }

    value parse_call(const std::string& name) {
        lex_.take();  // lparen
        std::vector<value> args;
        if (lex_.peek().k != token::kind::rparen) {
            args.push_back(parse_or());
            while (lex_.peek().k == token::kind::comma) {
                lex_.take();
                args.push_back(parse_or());
            }
        }
        expect_rparen();

        auto bool_args = [&](std::size_t min_n) {
            if (args.size() < min_n)
                fail(name + " needs at least " + std::to_string(min_n) + " arguments");
            std::vector<bool_expr> out;
            for (const auto& a : args) out.push_back(to_bool(a));
            return out;
        };
        auto int_args = [&](std::size_t n) {
            if (args.size() != n) fail(name + " needs exactly " + std::to_string(n) + " arguments");
            std::vector<int_term> out;
            for (const auto& a : args) out.push_back(to_int(a));
            return out;
        };

        if (name == "And") return boolean(bool_expr::conjunction(bool_args(1)));
        if (name == "Or") return boolean(bool_expr::disjunction(bool_args(1)));
        if (name == "Xor") return boolean(bool_expr::exclusive_or(bool_args(1)));
        if (name == "Not") {
            auto a = bool_args(1);
            if (a.size() != 1) fail("Not takes one argument");
            return boolean(bool_expr::negation(a[0]));
        }
        if (name == "Implies") {
            auto a = bool_args(2);
            if (a.size() != 2) fail("Implies takes two arguments");
            return boolean(bool_expr::implication(a[0], a[1]));
        }
        if (name == "Equivalent") {
            auto a = bool_args(2);
            if (a.size() != 2) fail("Equivalent takes two arguments");
            return boolean(bool_expr::equivalence(a[0], a[1]));
        }
        if (name == "Eq") {
            auto a = int_args(2);
            return boolean(bool_expr::int_equality(a[0], a[1]));
        }
        if (name == "Ne") {
            auto a = int_args(2);
            return boolean(bool_expr::negation(bool_expr::int_equality(a[0], a[1])));
        }
        if (name == "Add") {
            if (args.size() < 2) fail("Add needs at least two arguments");
            std::vector<int_term> out;
            for (const auto& a : args) out.push_back(to_int(a));
            return integer(int_term::add(std::move(out)));
        }
        if (name == "Mul") {
            if (args.size() < 2) fail("Mul needs at least two arguments");
            std::vector<int_term> out;
            for (const auto& a : args) out.push_back(to_int(a));
            return integer(int_term::mul(std::move(out)));
        }
        fail("unknown function `" + name + "`");
    }

    void expect_rparen() {
        if (lex_.take().k != token::kind::rparen) fail("expected `)`");
    }

    lexer lex_;
    const symbol_table& symbols_;
};

}  // namespace

logic_entry parse_logic_entry(const std::string& text, const symbol_table& symbols) {
    parser p(text, symbols);
    value v = p.parse_full();
    switch (v.k) {
        case value::kind::boolean: return v.b;
        case value::kind::integer: return v.t;
        case value::kind::symbol: return bool_expr::atom(v.symbol);
    }
    throw parse_error("unreachable");
}

bool_expr parse_bool_logic(const std::string& text, const symbol_table& symbols) {
    logic_entry e = parse_logic_entry(text, symbols);
    if (auto* b = std::get_if<bool_expr>(&e)) return *b;
    throw parse_error("expected a boolean formula, got an integer expression: " + text);
}

}  // namespace rsv
