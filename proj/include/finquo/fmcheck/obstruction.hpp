#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finquo/fmcheck/eval.hpp"
#include "finquo/fmcheck/formula.hpp"
#include "finquo/sequence.hpp"
#include "finquo/tri.hpp"

namespace finquo::fm {

// ---- formulas -------------------------------------------------------------

/// cov(x) = 1: every α-fixed element above x is the top.
inline FormulaPtr cov_is_top(const TermPtr& x)
{
    using namespace build;
    return forall("z", implies(and_({le(x, var("z")), eq(alpha(var("z")), var("z"))}), eq(var("z"), one())));
}

/// Every proper part of x has a strictly smaller cover.
inline FormulaPtr small(const TermPtr& x)
{
    using namespace build;
    auto y = var("y"), w = var("w");
    return forall("y", implies(and_({le(y, x), neq(y, x)}),
                               exists("w", and_({le(y, w), eq(alpha(w), w), not_(le(x, w))}))));
}

inline std::vector<std::string> obstruction_variables(std::uint64_t m, std::uint64_t j)
{
    std::vector<std::string> v;
    for (std::uint64_t l = 0; l < m; ++l)
        v.push_back("b" + std::to_string(l));
    for (std::uint64_t l = 0; l < j; ++l)
        v.push_back("a" + std::to_string(l));
    return v;
}

/// Matrix of the mod-m sentence over free variables b0..b{m-1}, a0..a{j-1}.
inline FormulaPtr obstruction_matrix(std::uint64_t m, std::uint64_t j)
{
    using namespace build;
    if (m == 0 || j >= m)
        throw std::invalid_argument("obstruction formula needs m >= 1 and 0 <= j < m");
    auto b = [](std::uint64_t l) { return var("b" + std::to_string(l)); };
    auto a = [](std::uint64_t l) { return var("a" + std::to_string(l)); };
    std::vector<TermPtr> all;
    for (std::uint64_t l = 0; l < m; ++l)
        all.push_back(b(l));
    for (std::uint64_t l = 0; l < j; ++l)
        all.push_back(a(l));

    std::vector<FormulaPtr> cl;
    for (const auto& x : all)
        cl.push_back(neq(x, zero()));
    cl.push_back(eq(join_all(all), one()));
    for (std::size_t p = 0; p < all.size(); ++p)
        for (std::size_t q = p + 1; q < all.size(); ++q)
            cl.push_back(eq(meet(all[p], all[q]), zero()));
    for (const auto& x : all)
        cl.push_back(cov_is_top(x));
    for (std::uint64_t l = 0; l < j; ++l)
        cl.push_back(small(a(l)));
    for (std::uint64_t l = 0; l + 1 < m; ++l)
        cl.push_back(eq(alpha(b(l)), b(l + 1)));
    for (std::uint64_t l = 0; l + 1 < j; ++l)
        cl.push_back(eq(alpha(a(l)), a(l + 1)));
    if (j == 0) {
        cl.push_back(eq(alpha(b(m - 1)), b(0)));
    } else {
        cl.push_back(eq(join(alpha(b(m - 1)), alpha(a(j - 1))), join(a(0), b(0))));
        cl.push_back(le(alpha(a(j - 1)), b(0)));
    }
    return and_(std::move(cl));
}

/// Sentence true in the rotary algebra of n̄ (eventually n_k >= m) iff
/// eventually n_k ≡ j (mod m).
inline FormulaPtr obstruction_formula(std::uint64_t m, std::uint64_t j)
{
    return build::exists_all(obstruction_variables(m, j), obstruction_matrix(m, j));
}

/// Sentence for sequences that are eventually below m: eventually n_k = j.
inline FormulaPtr obstruction_below(std::uint64_t m, std::uint64_t j)
{
    using namespace build;
    if (m == 0 || j >= m)
        throw std::invalid_argument("obstruction formula needs m >= 1 and 0 <= j < m");
    if (j == 0)
        return falsity();
    std::vector<FormulaPtr> moving{neq(var("z"), zero()), le(var("z"), var("y"))};
    for (std::uint64_t i = 1; i < j; ++i)
        moving.push_back(neq(apow(static_cast<std::int64_t>(i), var("z")), var("z")));
    return and_({forall("x", eq(apow(static_cast<std::int64_t>(j), var("x")), var("x"))),
                 forall("y", implies(neq(var("y"), zero()), exists("z", and_(std::move(moving)))))});
}

namespace detail {

inline void names_in(const FormulaPtr& f, std::set<std::string>& out);
inline void names_in(const TermPtr& t, std::set<std::string>& out)
{
    if (t->kind == TermKind::Var)
        out.insert(t->var);
    if (t->a)
        names_in(t->a, out);
    if (t->b)
        names_in(t->b, out);
}
inline void names_in(const FormulaPtr& f, std::set<std::string>& out)
{
    if (!f->var.empty())
        out.insert(f->var);
    if (f->lhs) {
        names_in(f->lhs, out);
        names_in(f->rhs, out);
    }
    for (const auto& k : f->kids)
        names_in(k, out);
}

inline TermPtr relativize_term(const TermPtr& t, const TermPtr& c)
{
    using namespace build;
    switch (t->kind) {
    case TermKind::One: return c;
    case TermKind::Comp: return meet(c, comp(relativize_term(t->a, c)));
    case TermKind::Meet: return meet(relativize_term(t->a, c), relativize_term(t->b, c));
    case TermKind::Join: return join(relativize_term(t->a, c), relativize_term(t->b, c));
    case TermKind::Apow: return apow(t->k, relativize_term(t->a, c));
    default: return t;
    }
}

inline FormulaPtr relativize_body(const FormulaPtr& f, const TermPtr& c)
{
    using namespace build;
    std::vector<FormulaPtr> kids;
    for (const auto& k : f->kids)
        kids.push_back(relativize_body(k, c));
    switch (f->kind) {
    case FormKind::Eq: return eq(relativize_term(f->lhs, c), relativize_term(f->rhs, c));
    case FormKind::Le: return le(relativize_term(f->lhs, c), relativize_term(f->rhs, c));
    case FormKind::Not: return not_(kids[0]);
    case FormKind::And: return and_(kids);
    case FormKind::Or: return or_(kids);
    case FormKind::Implies: return implies(kids[0], kids[1]);
    case FormKind::Exists: return exists(f->var, and_({le(var(f->var), c), kids[0]}));
    case FormKind::Forall: return forall(f->var, implies(le(var(f->var), c), kids[0]));
    }
    return f;
}

} // namespace detail

/// χ^c: χ evaluated in the relative algebra below the α-fixed element named c
/// (true outright when c = 0).
inline FormulaPtr relativize(const FormulaPtr& f, const std::string& c)
{
    std::set<std::string> used;
    detail::names_in(f, used);
    if (used.count(c))
        throw std::invalid_argument("relativization variable '" + c + "' occurs in the formula");
    using namespace build;
    return or_({eq(var(c), zero()), detail::relativize_body(f, var(c))});
}

struct ObstructionFormulas {
    FormulaPtr at_least_m;   // the sentence for eventually n_k >= m
    FormulaPtr below_m;      // the sentence for eventually n_k < m
    FormulaPtr eventual;     // split c ∨ d = 1, valid for every sequence
    FormulaPtr infinitely;   // some nonzero fixed c satisfies the eventual sentence relativized
};

inline ObstructionFormulas obstruction_formulas(std::uint64_t m, std::uint64_t j)
{
    using namespace build;
    ObstructionFormulas o;
    o.at_least_m = obstruction_formula(m, j);
    o.below_m = obstruction_below(m, j);
    auto c = var("c"), d = var("d");
    o.eventual = exists("c", exists("d", and_({eq(alpha(c), c), eq(alpha(d), d), eq(join(c, d), one()),
                                               relativize(o.below_m, "c"), relativize(o.at_least_m, "d")})));
    auto e = var("e");
    o.infinitely = exists("e", and_({eq(alpha(e), e), neq(e, zero()), relativize(o.eventual, "e")}));
    return o;
}

// ---- deciding the residue condition on a descriptor ------------------------

enum class ObstructionMode { eventual, infinitelyOften };

inline Tri obstruction_truth(const SequenceDescriptor& s, std::uint64_t m, std::uint64_t j, ObstructionMode mode)
{
    if (m == 0 || j >= m)
        throw std::invalid_argument("obstruction needs m >= 1 and 0 <= j < m");
    const bool eventual = mode == ObstructionMode::eventual;
    const std::string what = "n_k = " + std::to_string(j) + " (mod " + std::to_string(m) + ") " +
                             (eventual ? "for all but finitely many k" : "for infinitely many k");
    if (!s.has_tail()) {
        if (eventual)
            return Tri::yes("arithmetic-mod-m", "finite sequence: " + what + " holds vacuously");
        return Tri::no("arithmetic-mod-m", "finite sequence: " + what + " fails");
    }
    std::vector<std::uint64_t> recurring;
    std::string pattern;
    if (auto rt = std::get_if<ResidueTail>(&s.tail())) {
        if (rt->m % m != 0)
            return Tri::unknown("residue-underdetermined", "residue table modulo " + std::to_string(rt->m) +
                                                               " does not determine residues modulo " +
                                                               std::to_string(m));
        for (auto t : rt->table)
            recurring.push_back(t % m);
        pattern = "table residues";
    } else {
        auto p = s.tail_residues(m);
        recurring = p.cycle;
        pattern = "tail residues after " + std::to_string(p.onset()) + " terms";
    }
    pattern += " mod " + std::to_string(m) + ": [";
    for (std::size_t i = 0; i < recurring.size(); ++i)
        pattern += (i ? "," : "") + std::to_string(recurring[i]);
    pattern += "] repeating";
    bool all = true, any = false;
    for (auto r : recurring) {
        all = all && r == j;
        any = any || r == j;
    }
    const bool holds = eventual ? all : any;
    return holds ? Tri::yes("arithmetic-mod-m", what + "; " + pattern)
                 : Tri::no("arithmetic-mod-m", "not " + what + "; " + pattern);
}

// ---- window-exact cov / small ---------------------------------------------

using PointSet = std::vector<bool>;

/// Concatenated intervals I_0, I_1, ... of the given lengths.
class RotaryWindow {
public:
    explicit RotaryWindow(std::vector<std::size_t> lengths)
        : lengths_(std::move(lengths))
    {
        for (auto L : lengths_) {
            if (L == 0)
                throw std::invalid_argument("interval length must be positive");
            starts_.push_back(total_);
            for (std::size_t t = 0; t < L; ++t)
                owner_.push_back(starts_.size() - 1);
            total_ += L;
        }
    }

    std::size_t size() const { return total_; }
    std::size_t intervals() const { return lengths_.size(); }
    std::size_t start(std::size_t k) const { return starts_[k]; }
    std::size_t length(std::size_t k) const { return lengths_[k]; }
    std::size_t interval_of(std::size_t p) const { return owner_[p]; }
    const std::vector<std::size_t>& lengths() const { return lengths_; }

    std::size_t alpha(std::size_t p) const
    {
        const auto k = owner_[p];
        return starts_[k] + (p - starts_[k] + 1) % lengths_[k];
    }

    PointSet image(const PointSet& x) const
    {
        PointSet out(total_, false);
        for (std::size_t p = 0; p < total_; ++p)
            if (x[p])
                out[alpha(p)] = true;
        return out;
    }

    /// Union of the intervals x touches.
    PointSet cov(const PointSet& x) const
    {
        PointSet out(total_, false);
        for (std::size_t k = 0; k < lengths_.size(); ++k) {
            bool hit = false;
            for (std::size_t t = 0; t < lengths_[k] && !hit; ++t)
                hit = x[starts_[k] + t];
            if (hit)
                for (std::size_t t = 0; t < lengths_[k]; ++t)
                    out[starts_[k] + t] = true;
        }
        return out;
    }

    /// x meets every interval it touches in exactly one point.
    bool small(const PointSet& x) const
    {
        for (std::size_t k = 0; k < lengths_.size(); ++k) {
            std::size_t c = 0;
            for (std::size_t t = 0; t < lengths_[k]; ++t)
                c += x[starts_[k] + t];
            if (c > 1)
                return false;
        }
        return true;
    }

    FiniteDynSys structure() const
    {
        std::vector<std::uint32_t> c;
        for (auto L : lengths_)
            c.push_back(static_cast<std::uint32_t>(L));
        return FiniteDynSys(std::move(c));
    }

private:
    std::vector<std::size_t> lengths_;
    std::vector<std::size_t> starts_;
    std::vector<std::size_t> owner_;
    std::size_t total_ = 0;
};

inline Elem to_elem(const PointSet& x)
{
    if (x.size() > 64)
        throw std::invalid_argument("point set too large for a machine word");
    Elem e = 0;
    for (std::size_t p = 0; p < x.size(); ++p)
        if (x[p])
            e |= Elem{1} << p;
    return e;
}

// ---- witness construction -------------------------------------------------

struct NamedSet {
    std::string name;
    std::vector<std::size_t> points;
};

struct WitnessReport {
    bool ok = false;
    std::string failure;
    std::optional<std::size_t> offending_interval;
    std::vector<NamedSet> sets;
    std::vector<std::pair<std::string, bool>> checks;
    /// set when the window is small enough to evaluate the formula matrix directly
    std::optional<bool> matrix_holds;
};

/// Builds A_0..A_{j-1} (the last j points of each interval, in order) and
/// B_0..B_{m-1} (the rest of each interval by offset mod m), then checks every
/// clause of the matrix on the window.
inline WitnessReport witness_partition(const std::vector<std::size_t>& lengths, std::uint64_t m, std::uint64_t j,
                                       const Budget& budget = {})
{
    WitnessReport r;
    if (m == 0 || j >= m)
        throw std::invalid_argument("witness_partition needs m >= 1 and 0 <= j < m");
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if (lengths[k] < m || lengths[k] % m != j) {
            r.failure = "precondition fails at k = " + std::to_string(k) + ": length " + std::to_string(lengths[k]) +
                        (lengths[k] < m ? " < m" : " is not " + std::to_string(j) + " mod " + std::to_string(m));
            r.offending_interval = k;
            return r;
        }
    }
    if (lengths.empty()) {
        r.failure = "empty window";
        return r;
    }
    RotaryWindow W(lengths);
    const std::size_t N = W.size();
    std::vector<PointSet> B(m, PointSet(N, false)), A(j, PointSet(N, false));
    for (std::size_t k = 0; k < W.intervals(); ++k) {
        const std::size_t s = W.start(k), L = W.length(k);
        for (std::size_t t = 0; t + j < L; ++t)
            B[t % m][s + t] = true;
        for (std::size_t l = 0; l < j; ++l)
            A[l][s + L - j + l] = true;
    }
    std::vector<const PointSet*> all;
    for (std::uint64_t l = 0; l < m; ++l) {
        r.sets.push_back({"b" + std::to_string(l), {}});
        all.push_back(&B[l]);
    }
    for (std::uint64_t l = 0; l < j; ++l) {
        r.sets.push_back({"a" + std::to_string(l), {}});
        all.push_back(&A[l]);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t p = 0; p < N; ++p)
            if ((*all[i])[p])
                r.sets[i].points.push_back(p);

    auto check = [&](std::string name, bool v) { r.checks.emplace_back(std::move(name), v); };
    {
        bool part = true;
        for (std::size_t p = 0; p < N; ++p) {
            int c = 0;
            for (auto* x : all)
                c += (*x)[p];
            part = part && c == 1;
        }
        check("partition of unity", part);
    }
    {
        bool nz = true, cv = true;
        const PointSet top(N, true);
        for (auto* x : all) {
            nz = nz && std::find(x->begin(), x->end(), true) != x->end();
            cv = cv && W.cov(*x) == top;
        }
        check("all parts nonzero", nz);
        check("cov of every part is the top", cv);
    }
    {
        bool sm = true;
        for (auto& a : A)
            sm = sm && W.small(a);
        check("a-parts small", sm);
    }
    {
        bool ok = true;
        for (std::uint64_t l = 0; l + 1 < m; ++l)
            ok = ok && W.image(B[l]) == B[l + 1];
        check("alpha(b_l) = b_{l+1}", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t l = 0; l + 1 < j; ++l)
            ok = ok && W.image(A[l]) == A[l + 1];
        check("alpha(a_l) = a_{l+1}", ok);
    }
    if (j == 0) {
        check("alpha(b_{m-1}) = b_0", W.image(B[m - 1]) == B[0]);
    } else {
        auto lhs = W.image(B[m - 1]);
        auto ia = W.image(A[j - 1]);
        PointSet rhs(N, false);
        bool below = true;
        for (std::size_t p = 0; p < N; ++p) {
            lhs[p] = lhs[p] || ia[p];
            rhs[p] = A[0][p] || B[0][p];
            below = below && (!ia[p] || B[0][p]);
        }
        check("alpha(b_{m-1}) v alpha(a_{j-1}) = a_0 v b_0", lhs == rhs);
        check("alpha(a_{j-1}) <= b_0", below);
    }
    {
        bool eq = true;
        for (std::size_t k = 0; k < W.intervals(); ++k) {
            std::vector<std::size_t> cnt(m, 0);
            for (std::size_t t = 0; t < W.length(k); ++t)
                for (std::uint64_t l = 0; l < m; ++l)
                    cnt[l] += B[l][W.start(k) + t];
            for (auto c : cnt)
                eq = eq && c == cnt[0];
        }
        check("|B^k_0| = ... = |B^k_{m-1}| in every interval", eq);
    }
    if (N <= budget.max_points) {
        std::vector<std::pair<std::string, Elem>> bind;
        for (std::size_t i = 0; i < all.size(); ++i)
            bind.emplace_back(r.sets[i].name, to_elem(*all[i]));
        r.matrix_holds = eval(obstruction_matrix(m, j), W.structure(), {}, bind).value;
        check("formula matrix evaluates true", *r.matrix_holds);
    }
    r.ok = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.second; });
    if (!r.ok)
        for (const auto& c : r.checks)
            if (!c.second) {
                r.failure = "check failed: " + c.first;
                break;
            }
    return r;
}

// ---- exhaustive search over partitions ------------------------------------

struct MatrixSearchResult {
    bool satisfiable = false;
    /// label of each point: 0..m-1 for b_l, m..m+j-1 for a_l
    std::vector<int> witness;
    std::uint64_t nodes = 0;
    /// complete labelings handed to the evaluator
    std::uint64_t complete = 0;
};

/// Searches every assignment of the window points to the parts b_0..b_{m-1},
/// a_0..a_{j-1} (the partition clauses force one part per point). Partial
/// labelings are pruned as soon as an α clause fails on an assigned pair, and
/// complete ones by window-exact cov and smallness; survivors are checked
/// against the matrix itself via the evaluator.
inline MatrixSearchResult search_matrix(const std::vector<std::size_t>& lengths, std::uint64_t m, std::uint64_t j,
                                        const Budget& budget = {})
{
    if (m == 0 || j >= m)
        throw std::invalid_argument("search needs m >= 1 and 0 <= j < m");
    RotaryWindow W(lengths);
    const std::size_t N = W.size();
    if (N > budget.max_points)
        throw BudgetExceeded("partition search limited to " + std::to_string(budget.max_points) + " points");
    const int parts = static_cast<int>(m + j);
    const auto matrix = obstruction_matrix(m, j);
    const auto M = W.structure();
    const auto names = obstruction_variables(m, j);

    // successor labels permitted by the α clauses
    auto allowed = [&](int from, int to) {
        const int mm = static_cast<int>(m), jj = static_cast<int>(j);
        if (from < mm - 1)
            return to == from + 1;
        if (from == mm - 1)
            return jj == 0 ? to == 0 : (to == 0 || to == mm);
        if (from < mm + jj - 1)
            return to == from + 1;
        return to == 0;
    };
    std::vector<std::size_t> pred(N);
    for (std::size_t p = 0; p < N; ++p)
        pred[W.alpha(p)] = p;

    MatrixSearchResult res;
    std::vector<int> label(N, -1);
    std::function<bool(std::size_t)> go = [&](std::size_t p) -> bool {
        ++res.nodes;
        if (p == N) {
            std::vector<PointSet> sets(parts, PointSet(N, false));
            for (std::size_t q = 0; q < N; ++q)
                sets[label[q]][q] = true;
            const PointSet top(N, true);
            for (int l = 0; l < parts; ++l) {
                if (W.cov(sets[l]) != top) // also rules out empty parts
                    return false;
                if (l >= static_cast<int>(m) && !W.small(sets[l]))
                    return false;
            }
            ++res.complete;
            std::vector<std::pair<std::string, Elem>> bind;
            for (int l = 0; l < parts; ++l)
                bind.emplace_back(names[l], to_elem(sets[l]));
            return eval(matrix, M, {}, bind).value;
        }
        for (int l = 0; l < parts; ++l) {
            label[p] = l;
            const auto nx = W.alpha(p), pv = pred[p];
            bool ok = true;
            if (label[nx] >= 0)
                ok = allowed(l, label[nx]);
            if (ok && label[pv] >= 0)
                ok = allowed(label[pv], l);
            if (ok && go(p + 1))
                return true;
        }
        label[p] = -1;
        return false;
    };
    res.satisfiable = go(0);
    if (res.satisfiable)
        res.witness = label;
    return res;
}

} // namespace finquo::fm
