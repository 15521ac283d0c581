#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace finquo::fm {

struct Span {
    int line = 0;
    int col = 0;
};

enum class TermKind { Zero, One, Var, Meet, Join, Comp, Apow };
enum class FormKind { Eq, Le, Not, And, Or, Implies, Exists, Forall };

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
    TermKind kind = TermKind::Zero;
    std::string var;
    std::int64_t k = 0; // Apow exponent
    TermPtr a, b;
    Span span;
};

struct Formula {
    FormKind kind = FormKind::And;
    TermPtr lhs, rhs;              // Eq, Le
    std::vector<FormulaPtr> kids;  // Not (1), And/Or (n), Implies (2), quantifiers (1)
    std::string var;               // quantifiers
    Span span;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, Span at)
        : std::runtime_error(std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg)
        , where(at)
    {
    }
    Span where;
};

// ---- construction ---------------------------------------------------------

namespace build {

inline TermPtr zero() { return std::make_shared<Term>(Term{TermKind::Zero}); }
inline TermPtr one() { return std::make_shared<Term>(Term{TermKind::One}); }
inline TermPtr var(std::string name)
{
    Term t{TermKind::Var};
    t.var = std::move(name);
    return std::make_shared<Term>(std::move(t));
}
inline TermPtr meet(TermPtr a, TermPtr b)
{
    Term t{TermKind::Meet};
    t.a = std::move(a);
    t.b = std::move(b);
    return std::make_shared<Term>(std::move(t));
}
inline TermPtr join(TermPtr a, TermPtr b)
{
    Term t{TermKind::Join};
    t.a = std::move(a);
    t.b = std::move(b);
    return std::make_shared<Term>(std::move(t));
}
inline TermPtr comp(TermPtr a)
{
    Term t{TermKind::Comp};
    t.a = std::move(a);
    return std::make_shared<Term>(std::move(t));
}
inline TermPtr apow(std::int64_t k, TermPtr a)
{
    Term t{TermKind::Apow};
    t.k = k;
    t.a = std::move(a);
    return std::make_shared<Term>(std::move(t));
}
inline TermPtr alpha(TermPtr a) { return apow(1, std::move(a)); }

inline TermPtr join_all(const std::vector<TermPtr>& ts)
{
    if (ts.empty())
        return zero();
    TermPtr acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i)
        acc = join(acc, ts[i]);
    return acc;
}

inline FormulaPtr eq(TermPtr a, TermPtr b)
{
    Formula f{FormKind::Eq};
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr le(TermPtr a, TermPtr b)
{
    Formula f{FormKind::Le};
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr not_(FormulaPtr a)
{
    Formula f{FormKind::Not};
    f.kids = {std::move(a)};
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr neq(TermPtr a, TermPtr b) { return not_(eq(std::move(a), std::move(b))); }
inline FormulaPtr and_(std::vector<FormulaPtr> ks)
{
    Formula f{FormKind::And};
    f.kids = std::move(ks);
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr or_(std::vector<FormulaPtr> ks)
{
    Formula f{FormKind::Or};
    f.kids = std::move(ks);
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b)
{
    Formula f{FormKind::Implies};
    f.kids = {std::move(a), std::move(b)};
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr exists(std::string v, FormulaPtr body)
{
    Formula f{FormKind::Exists};
    f.var = std::move(v);
    f.kids = {std::move(body)};
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr forall(std::string v, FormulaPtr body)
{
    Formula f{FormKind::Forall};
    f.var = std::move(v);
    f.kids = {std::move(body)};
    return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr exists_all(const std::vector<std::string>& vs, FormulaPtr body)
{
    for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = exists(*it, std::move(body));
    return body;
}
inline FormulaPtr truth() { return and_({}); }
inline FormulaPtr falsity() { return or_({}); }

} // namespace build

// ---- printing -------------------------------------------------------------

inline std::string print(const TermPtr& t)
{
    switch (t->kind) {
    case TermKind::Zero: return "0";
    case TermKind::One: return "1";
    case TermKind::Var: return t->var;
    case TermKind::Meet: return "(meet " + print(t->a) + " " + print(t->b) + ")";
    case TermKind::Join: return "(join " + print(t->a) + " " + print(t->b) + ")";
    case TermKind::Comp: return "(comp " + print(t->a) + ")";
    case TermKind::Apow:
        if (t->k == 1)
            return "(a " + print(t->a) + ")";
        if (t->k == -1)
            return "(ainv " + print(t->a) + ")";
        return "(apow " + std::to_string(t->k) + " " + print(t->a) + ")";
    }
    return "?";
}

inline std::string print(const FormulaPtr& f)
{
    auto list = [&](const char* head) {
        std::string s = std::string("(") + head;
        for (const auto& k : f->kids)
            s += " " + print(k);
        return s + ")";
    };
    switch (f->kind) {
    case FormKind::Eq: return "(= " + print(f->lhs) + " " + print(f->rhs) + ")";
    case FormKind::Le: return "(le " + print(f->lhs) + " " + print(f->rhs) + ")";
    case FormKind::Not: return list("not");
    case FormKind::And: return list("and");
    case FormKind::Or: return list("or");
    case FormKind::Implies: return list("implies");
    case FormKind::Exists: return "(exists " + f->var + " " + print(f->kids[0]) + ")";
    case FormKind::Forall: return "(forall " + f->var + " " + print(f->kids[0]) + ")";
    }
    return "?";
}

// ---- structural queries ---------------------------------------------------

inline bool same(const TermPtr& x, const TermPtr& y)
{
    if (x->kind != y->kind || x->var != y->var || x->k != y->k)
        return false;
    if (static_cast<bool>(x->a) != static_cast<bool>(y->a) || static_cast<bool>(x->b) != static_cast<bool>(y->b))
        return false;
    return (!x->a || same(x->a, y->a)) && (!x->b || same(x->b, y->b));
}

/// Structural equality, ignoring source spans.
inline bool same(const FormulaPtr& x, const FormulaPtr& y)
{
    if (x->kind != y->kind || x->var != y->var || x->kids.size() != y->kids.size())
        return false;
    if (x->lhs && !(same(x->lhs, y->lhs) && same(x->rhs, y->rhs)))
        return false;
    for (std::size_t i = 0; i < x->kids.size(); ++i)
        if (!same(x->kids[i], y->kids[i]))
            return false;
    return true;
}

inline int quantifier_rank(const FormulaPtr& f)
{
    int r = 0;
    for (const auto& k : f->kids)
        r = std::max(r, quantifier_rank(k));
    if (f->kind == FormKind::Exists || f->kind == FormKind::Forall)
        ++r;
    return r;
}

/// Largest |net α-exponent| from a term root to a variable occurrence.
inline std::int64_t alpha_reach(const TermPtr& t, std::int64_t acc = 0)
{
    switch (t->kind) {
    case TermKind::Zero:
    case TermKind::One: return 0;
    case TermKind::Var: return acc < 0 ? -acc : acc;
    case TermKind::Apow: return alpha_reach(t->a, acc + t->k);
    case TermKind::Comp: return alpha_reach(t->a, acc);
    default: return std::max(alpha_reach(t->a, acc), alpha_reach(t->b, acc));
    }
}

inline std::int64_t alpha_reach(const FormulaPtr& f)
{
    std::int64_t r = 0;
    if (f->lhs)
        r = std::max(alpha_reach(f->lhs), alpha_reach(f->rhs));
    for (const auto& k : f->kids)
        r = std::max(r, alpha_reach(k));
    return r;
}

inline void collect_free(const TermPtr& t, const std::set<std::string>& bound, std::set<std::string>& out)
{
    if (t->kind == TermKind::Var && !bound.count(t->var))
        out.insert(t->var);
    if (t->a)
        collect_free(t->a, bound, out);
    if (t->b)
        collect_free(t->b, bound, out);
}

inline void collect_free(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out)
{
    if (f->lhs) {
        collect_free(f->lhs, bound, out);
        collect_free(f->rhs, bound, out);
    }
    if (f->kind == FormKind::Exists || f->kind == FormKind::Forall)
        bound.insert(f->var);
    for (const auto& k : f->kids)
        collect_free(k, bound, out);
}

inline std::set<std::string> free_variables(const FormulaPtr& f)
{
    std::set<std::string> out;
    collect_free(f, {}, out);
    return out;
}

inline bool is_sentence(const FormulaPtr& f) { return free_variables(f).empty(); }

// ---- parsing --------------------------------------------------------------

namespace detail {

struct Token {
    enum Kind { LParen, RParen, Atom, End } kind;
    std::string text;
    Span at;
};

class Lexer {
public:
    explicit Lexer(const std::string& s)
        : s_(s)
    {
    }

    Token next()
    {
        skip();
        Span at{line_, col_};
        if (i_ >= s_.size())
            return {Token::End, "", at};
        const char c = s_[i_];
        if (c == '(' || c == ')') {
            advance();
            return {c == '(' ? Token::LParen : Token::RParen, std::string(1, c), at};
        }
        std::string text;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
               s_[i_] != ')' && s_[i_] != ';') {
            text += s_[i_];
            advance();
        }
        return {Token::Atom, text, at};
    }

private:
    void advance()
    {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip()
    {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                advance();
            } else if (s_[i_] == ';') {
                while (i_ < s_.size() && s_[i_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

inline bool is_reserved(const std::string& s)
{
    static const std::set<std::string> words = {"meet", "join", "comp", "apow", "ainv", "le", "not",
                                                "and",  "or",   "implies", "exists", "forall"};
    return words.count(s) != 0;
}

class Parser {
public:
    explicit Parser(const std::string& text)
        : lex_(text)
    {
        tok_ = lex_.next();
    }

    FormulaPtr parse_top()
    {
        auto f = formula();
        if (tok_.kind != Token::End)
            throw ParseError("unexpected trailing input '" + tok_.text + "'", tok_.at);
        return f;
    }

private:
    Token take()
    {
        Token t = tok_;
        tok_ = lex_.next();
        return t;
    }
    void expect_rparen()
    {
        if (tok_.kind != Token::RParen)
            throw ParseError(tok_.kind == Token::End ? "unexpected end of input, expected ')'"
                                                     : "expected ')' but found '" + tok_.text + "'",
                             tok_.at);
        take();
    }
    Token expect_atom(const char* what)
    {
        if (tok_.kind != Token::Atom)
            throw ParseError(std::string("expected ") + what, tok_.at);
        return take();
    }

    TermPtr term()
    {
        if (tok_.kind == Token::Atom) {
            auto t = take();
            Term out;
            out.span = t.at;
            if (t.text == "0") {
                out.kind = TermKind::Zero;
            } else if (t.text == "1") {
                out.kind = TermKind::One;
            } else if (is_identifier(t.text) && !is_reserved(t.text)) {
                out.kind = TermKind::Var;
                out.var = t.text;
            } else {
                throw ParseError("invalid term '" + t.text + "'", t.at);
            }
            return std::make_shared<Term>(std::move(out));
        }
        if (tok_.kind != Token::LParen)
            throw ParseError(tok_.kind == Token::End ? "unexpected end of input, expected a term" : "expected a term",
                             tok_.at);
        const Span at = take().at;
        auto head = expect_atom("term operator");
        Term out;
        out.span = at;
        if (head.text == "meet" || head.text == "join") {
            out.kind = head.text == "meet" ? TermKind::Meet : TermKind::Join;
            out.a = term();
            out.b = term();
        } else if (head.text == "comp") {
            out.kind = TermKind::Comp;
            out.a = term();
        } else if (head.text == "a" || head.text == "ainv") {
            out.kind = TermKind::Apow;
            out.k = head.text == "a" ? 1 : -1;
            out.a = term();
        } else if (head.text == "apow") {
            out.kind = TermKind::Apow;
            auto k = expect_atom("integer exponent");
            try {
                std::size_t used = 0;
                out.k = std::stoll(k.text, &used);
                if (used != k.text.size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("invalid exponent '" + k.text + "'", k.at);
            }
            out.a = term();
        } else {
            throw ParseError("unknown term operator '" + head.text + "'", head.at);
        }
        expect_rparen();
        return std::make_shared<Term>(std::move(out));
    }

    FormulaPtr formula()
    {
        if (tok_.kind != Token::LParen)
            throw ParseError(tok_.kind == Token::End ? "unexpected end of input, expected a formula"
                                                     : "expected '(' to start a formula",
                             tok_.at);
        const Span at = take().at;
        auto head = expect_atom("formula operator");
        Formula out;
        out.span = at;
        const auto& h = head.text;
        if (h == "=" || h == "le") {
            out.kind = h == "=" ? FormKind::Eq : FormKind::Le;
            out.lhs = term();
            out.rhs = term();
        } else if (h == "not") {
            out.kind = FormKind::Not;
            out.kids.push_back(formula());
        } else if (h == "and" || h == "or") {
            out.kind = h == "and" ? FormKind::And : FormKind::Or;
            while (tok_.kind == Token::LParen)
                out.kids.push_back(formula());
        } else if (h == "implies") {
            out.kind = FormKind::Implies;
            out.kids.push_back(formula());
            out.kids.push_back(formula());
        } else if (h == "exists" || h == "forall") {
            out.kind = h == "exists" ? FormKind::Exists : FormKind::Forall;
            auto v = expect_atom("bound variable");
            if (!is_identifier(v.text) || is_reserved(v.text))
                throw ParseError("invalid variable name '" + v.text + "'", v.at);
            out.var = v.text;
            out.kids.push_back(formula());
        } else {
            throw ParseError("unknown formula operator '" + h + "'", head.at);
        }
        expect_rparen();
        return std::make_shared<Formula>(std::move(out));
    }

    Lexer lex_;
    Token tok_;
};

inline void check_bound(const TermPtr& t, const std::vector<std::string>& scope)
{
    if (t->kind == TermKind::Var && std::find(scope.begin(), scope.end(), t->var) == scope.end())
        throw ParseError("unbound variable '" + t->var + "'", t->span);
    if (t->a)
        check_bound(t->a, scope);
    if (t->b)
        check_bound(t->b, scope);
}

inline void check_bound(const FormulaPtr& f, std::vector<std::string>& scope)
{
    if (f->lhs) {
        check_bound(f->lhs, scope);
        check_bound(f->rhs, scope);
    }
    const bool q = f->kind == FormKind::Exists || f->kind == FormKind::Forall;
    if (q)
        scope.push_back(f->var);
    for (const auto& k : f->kids)
        check_bound(k, scope);
    if (q)
        scope.pop_back();
}

} // namespace detail

/// Parse an S-expression formula. Free variables are rejected unless listed in `free`.
inline FormulaPtr parse_formula(const std::string& text, std::vector<std::string> free = {})
{
    detail::Parser p(text);
    auto f = p.parse_top();
    detail::check_bound(f, free);
    return f;
}

} // namespace finquo::fm
