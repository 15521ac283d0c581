#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finquo/fmcheck/formula.hpp"
#include "finquo/fmcheck/structure.hpp"

namespace finquo::fm {

struct EvalOptions {
    bool symmetry = true;
    Budget budget;
};

struct EvalResult {
    bool value = false;
    /// values of the leading existential block when the sentence holds
    std::vector<std::pair<std::string, Elem>> witness;
};

inline void check_budget(const FiniteDynSys& M, int rank, const Budget& b)
{
    if (rank == 0)
        return;
    if (M.size() > b.max_points)
        throw BudgetExceeded("universe 2^" + std::to_string(M.size()) + " exceeds the limit 2^" +
                             std::to_string(b.max_points));
    const double steps = std::pow(2.0, static_cast<double>(M.size()) * rank);
    if (steps > b.max_steps)
        throw BudgetExceeded("evaluation needs (2^" + std::to_string(M.size()) + ")^" + std::to_string(rank) +
                             " steps, over the budget of " + std::to_string(b.max_steps));
}

/// Formula compiled against slot numbers.
class Compiled {
public:
    Compiled(const FormulaPtr& f, const std::vector<std::string>& free)
    {
        std::vector<std::string> scope = free;
        slots_ = static_cast<int>(free.size());
        root_ = form(f, scope);
    }

    int root() const { return root_; }
    int slots() const { return slots_; }

    bool eval(const FiniteDynSys& M, const std::vector<Elem>& domain, const std::vector<Elem>& reps, int node,
              Elem* env) const
    {
        const CForm& f = forms_[node];
        switch (f.kind) {
        case FormKind::Eq: return term(M, f.lhs, env) == term(M, f.rhs, env);
        case FormKind::Le: return (term(M, f.lhs, env) & ~term(M, f.rhs, env)) == 0;
        case FormKind::Not: return !eval(M, domain, reps, f.kids[0], env);
        case FormKind::And:
            for (int k : f.kids)
                if (!eval(M, domain, reps, k, env))
                    return false;
            return true;
        case FormKind::Or:
            for (int k : f.kids)
                if (eval(M, domain, reps, k, env))
                    return true;
            return false;
        case FormKind::Implies: return !eval(M, domain, reps, f.kids[0], env) || eval(M, domain, reps, f.kids[1], env);
        case FormKind::Exists:
        case FormKind::Forall: {
            const bool want = f.kind == FormKind::Exists;
            const auto& dom = f.closed && !reps.empty() ? reps : domain;
            for (Elem x : dom) {
                env[f.slot] = x;
                if (eval(M, domain, reps, f.kids[0], env) == want)
                    return want;
            }
            return !want;
        }
        }
        return false;
    }

    /// Evaluate, recording the first witness of a leading existential block.
    bool eval_with_witness(const FiniteDynSys& M, const std::vector<Elem>& domain, const std::vector<Elem>& reps,
                           int node, Elem* env, std::vector<std::pair<std::string, Elem>>& out) const
    {
        const CForm& f = forms_[node];
        if (f.kind != FormKind::Exists)
            return eval(M, domain, reps, node, env);
        const auto& dom = f.closed && !reps.empty() ? reps : domain;
        for (Elem x : dom) {
            env[f.slot] = x;
            std::vector<std::pair<std::string, Elem>> inner;
            if (eval_with_witness(M, domain, reps, f.kids[0], env, inner)) {
                out.emplace_back(f.name, x);
                out.insert(out.end(), inner.begin(), inner.end());
                return true;
            }
        }
        return false;
    }

    Elem term(const FiniteDynSys& M, int id, const Elem* env) const
    {
        const CTerm& t = terms_[id];
        switch (t.kind) {
        case TermKind::Zero: return 0;
        case TermKind::One: return M.full();
        case TermKind::Var: return env[t.slot];
        case TermKind::Meet: return term(M, t.a, env) & term(M, t.b, env);
        case TermKind::Join: return term(M, t.a, env) | term(M, t.b, env);
        case TermKind::Comp: return ~term(M, t.a, env) & M.full();
        case TermKind::Apow: return M.apow(term(M, t.a, env), t.k);
        }
        return 0;
    }

private:
    struct CTerm {
        TermKind kind;
        int slot = -1;
        std::int64_t k = 0;
        int a = -1, b = -1;
    };
    struct CForm {
        FormKind kind;
        int lhs = -1, rhs = -1;
        std::vector<int> kids;
        int slot = -1;
        bool closed = false;
        std::string name;
    };

    int tm(const TermPtr& t, const std::vector<std::string>& scope)
    {
        CTerm c{t->kind};
        c.k = t->k;
        if (t->kind == TermKind::Var) {
            auto it = std::find(scope.rbegin(), scope.rend(), t->var);
            if (it == scope.rend())
                throw ParseError("unbound variable '" + t->var + "'", t->span);
            c.slot = static_cast<int>(scope.rend() - it) - 1;
        }
        if (t->a)
            c.a = tm(t->a, scope);
        if (t->b)
            c.b = tm(t->b, scope);
        terms_.push_back(c);
        return static_cast<int>(terms_.size()) - 1;
    }

    int form(const FormulaPtr& f, std::vector<std::string>& scope)
    {
        CForm c{f->kind};
        if (f->lhs) {
            c.lhs = tm(f->lhs, scope);
            c.rhs = tm(f->rhs, scope);
        }
        const bool q = f->kind == FormKind::Exists || f->kind == FormKind::Forall;
        if (q) {
            auto fv = free_variables(f);
            c.closed = fv.empty();
            c.name = f->var;
            scope.push_back(f->var);
            c.slot = static_cast<int>(scope.size()) - 1;
            slots_ = std::max(slots_, c.slot + 1);
        }
        for (const auto& k : f->kids)
            c.kids.push_back(form(k, scope));
        if (q)
            scope.pop_back();
        forms_.push_back(std::move(c));
        return static_cast<int>(forms_.size()) - 1;
    }

    std::vector<CTerm> terms_;
    std::vector<CForm> forms_;
    int root_ = -1;
    int slots_ = 0;
};

inline std::vector<Elem> universe(const FiniteDynSys& M)
{
    std::vector<Elem> u(std::size_t{1} << M.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = i;
    return u;
}

/// M ⊨ φ[bindings] by exhaustive quantifier expansion.
inline EvalResult eval(const FormulaPtr& f, const FiniteDynSys& M, const EvalOptions& opt = {},
                       const std::vector<std::pair<std::string, Elem>>& bindings = {})
{
    const int rank = quantifier_rank(f);
    check_budget(M, rank, opt.budget);
    std::vector<std::string> names;
    for (const auto& b : bindings)
        names.push_back(b.first);
    Compiled c(f, names);
    std::vector<Elem> env(static_cast<std::size_t>(std::max(c.slots(), 1)), 0);
    for (std::size_t i = 0; i < bindings.size(); ++i)
        env[i] = bindings[i].second & M.full();
    std::vector<Elem> dom, reps;
    if (rank > 0) {
        dom = universe(M);
        if (opt.symmetry)
            reps = M.orbit_representatives();
    }
    EvalResult r;
    r.value = c.eval_with_witness(M, dom, reps, c.root(), env.data(), r.witness);
    if (!r.value)
        r.witness.clear();
    return r;
}

} // namespace finquo::fm
