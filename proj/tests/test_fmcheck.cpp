#include <gtest/gtest.h>

#include <map>
#include <random>
#include <thread>

#include "finquo/fmcheck/eval.hpp"
#include "finquo/fmcheck/hintikka.hpp"
#include "finquo/fmcheck/limits.hpp"
#include "finquo/fmcheck/obstruction.hpp"

using namespace finquo;
using namespace finquo::fm;

namespace {

const char* kSwap = "(exists x (and (not (= x 0)) (= (meet x (a x)) 0) (= (join x (a x)) 1)))";

// Direct recursive interpretation of the AST over name->value maps.
struct Naive {
    std::uint32_t n;
    Elem full() const { return n == 64 ? ~Elem{0} : (Elem{1} << n) - 1; }
    Elem rot(Elem x, std::int64_t k) const
    {
        Elem out = 0;
        for (std::uint32_t p = 0; p < n; ++p)
            if ((x >> p) & 1)
                out |= Elem{1} << static_cast<std::uint32_t>((((static_cast<std::int64_t>(p) + k) % n) + n) % n);
        return out;
    }
    Elem term(const TermPtr& t, std::map<std::string, Elem>& env) const
    {
        switch (t->kind) {
        case TermKind::Zero: return 0;
        case TermKind::One: return full();
        case TermKind::Var: return env.at(t->var);
        case TermKind::Meet: return term(t->a, env) & term(t->b, env);
        case TermKind::Join: return term(t->a, env) | term(t->b, env);
        case TermKind::Comp: return full() & ~term(t->a, env);
        case TermKind::Apow: return rot(term(t->a, env), t->k);
        }
        return 0;
    }
    bool holds(const FormulaPtr& f, std::map<std::string, Elem>& env) const
    {
        switch (f->kind) {
        case FormKind::Eq: return term(f->lhs, env) == term(f->rhs, env);
        case FormKind::Le: return (term(f->lhs, env) | term(f->rhs, env)) == term(f->rhs, env);
        case FormKind::Not: return !holds(f->kids[0], env);
        case FormKind::And:
            for (auto& k : f->kids)
                if (!holds(k, env))
                    return false;
            return true;
        case FormKind::Or:
            for (auto& k : f->kids)
                if (holds(k, env))
                    return true;
            return false;
        case FormKind::Implies: return !holds(f->kids[0], env) || holds(f->kids[1], env);
        case FormKind::Exists:
        case FormKind::Forall: {
            const bool ex = f->kind == FormKind::Exists;
            auto saved = env.count(f->var) ? std::optional<Elem>(env[f->var]) : std::nullopt;
            bool result = !ex;
            for (Elem x = 0; x <= full(); ++x) {
                env[f->var] = x;
                if (holds(f->kids[0], env) == ex) {
                    result = ex;
                    break;
                }
            }
            if (saved)
                env[f->var] = *saved;
            else
                env.erase(f->var);
            return result;
        }
        }
        return false;
    }
    bool holds(const FormulaPtr& f) const
    {
        std::map<std::string, Elem> env;
        return holds(f, env);
    }
};

// Random sentences of quantifier rank <= maxRank with α-reach <= 2.
struct SentenceGen {
    std::mt19937_64 rng;
    explicit SentenceGen(std::uint64_t seed)
        : rng(seed)
    {
    }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    TermPtr term(const std::vector<std::string>& vars, int depth, int reach)
    {
        using namespace build;
        int c = pick(depth > 0 ? 7 : 3);
        if (vars.empty() && c == 2)
            c = 0;
        switch (c) {
        case 0: return zero();
        case 1: return one();
        case 2: return var(vars[pick(static_cast<int>(vars.size()))]);
        case 3: return meet(term(vars, depth - 1, reach), term(vars, depth - 1, reach));
        case 4: return join(term(vars, depth - 1, reach), term(vars, depth - 1, reach));
        case 5: return comp(term(vars, depth - 1, reach));
        default: {
            if (reach == 0)
                return comp(term(vars, depth - 1, reach));
            const int k = pick(2) ? 1 : -1;
            return apow(k, term(vars, depth - 1, reach - 1));
        }
        }
    }

    FormulaPtr atom(const std::vector<std::string>& vars)
    {
        using namespace build;
        auto a = term(vars, 2, 2), b = term(vars, 2, 2);
        return pick(2) ? eq(a, b) : le(a, b);
    }

    FormulaPtr formula(std::vector<std::string>& vars, int rank, int size)
    {
        using namespace build;
        const int c = pick(size > 0 ? 6 : 1);
        if (c == 0 || (size <= 0 && rank == 0))
            return atom(vars);
        if (rank > 0 && (c >= 4 || size <= 0)) {
            const std::string v = "v" + std::to_string(vars.size());
            vars.push_back(v);
            auto body = formula(vars, rank - 1, size - 1);
            vars.pop_back();
            return c % 2 ? exists(v, body) : forall(v, body);
        }
        switch (c) {
        case 1: return not_(formula(vars, rank, size - 1));
        case 2: return and_({formula(vars, rank, size - 1), formula(vars, rank, size - 1)});
        case 3: return or_({formula(vars, rank, size - 1), formula(vars, rank, size - 1)});
        default: return implies(formula(vars, rank, size - 1), formula(vars, rank, size - 1));
        }
    }

    FormulaPtr sentence(int maxRank)
    {
        std::vector<std::string> vars;
        return formula(vars, maxRank, 4);
    }
};

} // namespace

// ---- parser ---------------------------------------------------------------

TEST(Parser, ExamplesAndRank)
{
    auto f = parse_formula(kSwap);
    EXPECT_EQ(quantifier_rank(f), 1);
    EXPECT_TRUE(is_sentence(f));
    auto g = parse_formula("(forall x (= (a (a x)) x))");
    EXPECT_EQ(quantifier_rank(g), 1);
    EXPECT_EQ(alpha_reach(g), 2);
    auto h = parse_formula("; comment\n(forall x (exists y (le (apow -3 x) (ainv y))))");
    EXPECT_EQ(quantifier_rank(h), 2);
}

TEST(Parser, RoundTrip)
{
    for (const char* text : {kSwap, "(forall x (= (a (a x)) x))", "(and)", "(or (= 0 1) (not (le 1 0)))",
                             "(forall x (implies (le x (comp x)) (= x 0)))"}) {
        auto f = parse_formula(text);
        EXPECT_EQ(print(f), text);
        EXPECT_TRUE(same(parse_formula(print(f)), f));
    }
    SentenceGen gen(7);
    for (int i = 0; i < 100; ++i) {
        auto f = gen.sentence(2);
        EXPECT_TRUE(same(parse_formula(print(f)), f)) << print(f);
    }
}

TEST(Parser, Errors)
{
    EXPECT_THROW(parse_formula("(exists x"), ParseError);
    EXPECT_THROW(parse_formula("(exists x (= x y))"), ParseError);
    EXPECT_THROW(parse_formula("(frob x)"), ParseError);
    EXPECT_THROW(parse_formula("(= 0 1) extra"), ParseError);
    try {
        parse_formula("(and\n  (= x 0))");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.where.line, 2);
        EXPECT_NE(std::string(e.what()).find("unbound"), std::string::npos);
    }
    EXPECT_NO_THROW(parse_formula("(= x 0)", {"x"}));
}

// ---- evaluator ------------------------------------------------------------

TEST(Eval, SwapSentence)
{
    auto f = parse_formula(kSwap);
    auto r2 = eval(f, FiniteDynSys::single(2));
    EXPECT_TRUE(r2.value);
    ASSERT_EQ(r2.witness.size(), 1u);
    EXPECT_EQ(r2.witness[0].first, "x");
    EXPECT_EQ(r2.witness[0].second, 1u);
    EXPECT_FALSE(eval(f, FiniteDynSys::single(3)).value);
}

TEST(Eval, AlphaOrder)
{
    for (std::uint32_t n = 1; n <= 9; ++n) {
        for (std::uint32_t k = 1; k <= n; ++k) {
            auto f = parse_formula("(forall x (= (apow " + std::to_string(k) + " x) x))");
            EXPECT_EQ(eval(f, FiniteDynSys::single(n)).value, k == n) << n << " " << k;
        }
    }
}

TEST(Eval, BooleanAlgebraLaws)
{
    SentenceGen gen(11);
    for (std::uint32_t n = 1; n <= 8; ++n) {
        for (int i = 0; i < 6; ++i) {
            auto t = gen.term({"x", "y"}, 3, 2);
            auto u = gen.term({"x", "y"}, 3, 2);
            using namespace build;
            auto laws = and_({eq(meet(t, u), meet(u, t)), eq(comp(comp(t)), t),
                              eq(alpha(meet(t, u)), meet(alpha(t), alpha(u))),
                              eq(alpha(comp(t)), comp(alpha(t))), eq(join(t, comp(t)), one())});
            auto f = forall("x", forall("y", laws));
            EXPECT_TRUE(eval(f, FiniteDynSys::single(n)).value) << n << " " << print(f);
        }
    }
}

TEST(Eval, SymmetryMatchesNaive)
{
    SentenceGen gen(2024);
    EvalOptions plain;
    plain.symmetry = false;
    for (int i = 0; i < 80; ++i) {
        auto f = gen.sentence(2);
        for (std::uint32_t n = 1; n <= 6; ++n) {
            const bool truth = Naive{n}.holds(f);
            EXPECT_EQ(eval(f, FiniteDynSys::single(n)).value, truth) << n << " " << print(f);
            EXPECT_EQ(eval(f, FiniteDynSys::single(n), plain).value, truth) << n << " " << print(f);
        }
    }
}

TEST(Eval, MultiCycleStructure)
{
    FiniteDynSys M({2, 3});
    EXPECT_EQ(M.size(), 5u);
    EXPECT_EQ(M.apow(0b00001, 1), 0b00010u);
    EXPECT_EQ(M.apow(0b00010, 1), 0b00001u);
    EXPECT_EQ(M.apow(0b10000, 1), 0b00100u);
    EXPECT_EQ(M.apow(0b00100, -1), 0b10000u);
    EXPECT_TRUE(eval(parse_formula("(forall x (= (apow 6 x) x))"), M).value);
    EXPECT_FALSE(eval(parse_formula("(forall x (= (apow 3 x) x))"), M).value);
}

TEST(Eval, Budget)
{
    auto f = parse_formula(kSwap);
    EXPECT_THROW(eval(f, FiniteDynSys::single(20)), BudgetExceeded);
    Budget b;
    b.max_steps = 100;
    EXPECT_THROW(eval(parse_formula("(forall x (forall y (= x x)))"), FiniteDynSys::single(5), {true, b}),
                 BudgetExceeded);
    // quantifier-free sentences need no universe
    EXPECT_TRUE(eval(parse_formula("(= (a 1) 1)"), FiniteDynSys::single(60)).value);
}

// ---- Hintikka types -------------------------------------------------------

TEST(Hintikka, RankZeroConstant)
{
    auto t = hintikka_type(1, 0);
    for (std::uint32_t n = 2; n <= 6; ++n)
        EXPECT_EQ(hintikka_type(n, 0), t);
}

TEST(Hintikka, SwapSeparates)
{
    EXPECT_NE(hintikka_type(2, 1), hintikka_type(3, 1));
    EXPECT_FALSE(ef_equal(2, 3, 1));
    EXPECT_EQ(hintikka_type(4, 2), hintikka_type(4, 2));
    EXPECT_TRUE(ef_equal(5, 5, 2));
    const auto h = hintikka_type(3, 1).hash();
    EXPECT_EQ(h.rfind("ht:D2:r1:", 0), 0u);
    EXPECT_EQ(h.size(), std::string("ht:D2:r1:").size() + 16);
}

TEST(Hintikka, Soundness)
{
    std::map<std::pair<std::uint32_t, int>, HintikkaType> types;
    for (std::uint32_t n = 1; n <= 6; ++n)
        for (int d = 0; d <= 2; ++d)
            types[{n, d}] = hintikka_type(n, d);
    SentenceGen gen(99);
    int checked = 0;
    for (int i = 0; i < 250; ++i) {
        auto f = gen.sentence(2);
        ASSERT_LE(alpha_reach(f), default_term_depth);
        const int d = quantifier_rank(f);
        std::vector<bool> truth;
        for (std::uint32_t n = 1; n <= 6; ++n)
            truth.push_back(eval(f, FiniteDynSys::single(n)).value);
        for (std::uint32_t n = 1; n <= 6; ++n)
            for (std::uint32_t m = n + 1; m <= 6; ++m)
                if (types[{n, d}] == types[{m, d}]) {
                    ++checked;
                    EXPECT_EQ(truth[n - 1], truth[m - 1]) << n << " " << m << " " << print(f);
                }
    }
    EXPECT_GT(checked, 0);
}

TEST(Hintikka, Refinement)
{
    for (int d = 0; d < 2; ++d)
        for (std::uint32_t n = 1; n <= 6; ++n)
            for (std::uint32_t m = 1; m <= 6; ++m)
                if (ef_equal(n, m, d + 1))
                    EXPECT_TRUE(ef_equal(n, m, d)) << n << " " << m << " " << d;
}

TEST(Hintikka, ConcurrentInterningIsDeterministic)
{
    std::vector<std::vector<std::uint32_t>> ids(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::uint32_t n = 1; n <= 7; ++n)
                ids[t].push_back(hintikka_type(n, 2, 1).id);
        });
    for (auto& th : pool)
        th.join();
    for (int t = 1; t < 4; ++t)
        EXPECT_EQ(ids[t], ids[0]);
}

TEST(Hintikka, BudgetAndArguments)
{
    EXPECT_THROW(hintikka_type(15, 1), BudgetExceeded);
    EXPECT_THROW(hintikka_type(13, 3), BudgetExceeded);
    EXPECT_NO_THROW(hintikka_type(40, 0));
    EXPECT_THROW(hintikka_type(3, -1), std::invalid_argument);
}

// ---- limit types ----------------------------------------------------------

TEST(Limits, ConstantTail)
{
    auto l = limit_type_set(SequenceDescriptor::constant(5), 1);
    EXPECT_EQ(l.certificate, CertificateKind::PeriodicTail);
    EXPECT_EQ(l.period, 1u);
    ASSERT_EQ(l.types.size(), 1u);
    EXPECT_EQ(l.types[0], hintikka_type(5, 1));
}

TEST(Limits, PrefixIgnored)
{
    auto l = limit_type_set(SequenceDescriptor::constant(4, {2, 3}), 1);
    ASSERT_EQ(l.types.size(), 1u);
    EXPECT_EQ(l.types[0], hintikka_type(4, 1));
    EXPECT_EQ(l.window_begin, 2u);
}

TEST(Limits, GrowingTailIsWindowOnly)
{
    auto l = limit_type_set(SequenceDescriptor::affine(1, 1), 1);
    EXPECT_EQ(l.certificate, CertificateKind::WindowOnly);
    EXPECT_FALSE(l.types.empty());
}

TEST(Limits, AlternatingResidues)
{
    auto s = SequenceDescriptor::residue(4, {2, 3});
    ASSERT_EQ(s.take(4), (std::vector<BigInt>{2, 3, 2, 3}));
    auto l = limit_type_set(s, 1);
    EXPECT_EQ(l.certificate, CertificateKind::PeriodicTail);
    EXPECT_EQ(l.period, 2u);
    EXPECT_EQ(l.types.size(), 2u);
}

TEST(Limits, ReducedProduct)
{
    using S = SequenceDescriptor;
    EXPECT_TRUE(reduced_product_ee(S::constant(3), S::constant(3), 1).is_yes());
    EXPECT_TRUE(reduced_product_ee(S::residue(4, {2, 3}), S::residue(4, {2, 3}), 1).is_yes());
    auto no = reduced_product_ee(S::constant(2), S::constant(3), 1);
    EXPECT_TRUE(no.is_no());
    EXPECT_EQ(no.kind, "rank-d-type");
    // the alternating tail has both types, the constant tail one of them
    EXPECT_TRUE(reduced_product_ee(S::residue(4, {2, 3}), S::constant(2), 1).is_no());
    // rank 0 cannot tell anything apart
    EXPECT_TRUE(reduced_product_ee(S::constant(2), S::constant(3), 0).is_yes());
    auto big = reduced_product_ee(S::geometric(1, 4), S::geometric(2, 4), 1);
    EXPECT_TRUE(big.is_unknown());
    EXPECT_EQ(big.kind, "budget");
    EXPECT_TRUE(reduced_product_ee(S::affine(1, 1), S::affine(1, 1), 1).is_unknown());
    EXPECT_TRUE(reduced_product_ee(S::finite({2}), S::finite({3, 4}), 1).is_yes());
    EXPECT_TRUE(reduced_product_ee(S::finite({2}), S::constant(2), 1).is_no());
}

TEST(Limits, Ghasemi)
{
    using S = SequenceDescriptor;
    auto c = ghasemi_subsequence(S::constant(3), 1, 0, 10);
    EXPECT_EQ(c.classes.size(), 1u);
    EXPECT_EQ(c.indices.size(), 10u);

    auto alt = ghasemi_subsequence(S::residue(4, {2, 3}), 1, 0, 10);
    ASSERT_EQ(alt.classes.size(), 2u);
    EXPECT_EQ(alt.classes[0].indices, (std::vector<std::size_t>{0, 2, 4, 6, 8}));
    EXPECT_EQ(alt.classes[1].indices, (std::vector<std::size_t>{1, 3, 5, 7, 9}));
    EXPECT_EQ(alt.indices, alt.classes[0].indices);

    auto d0 = ghasemi_subsequence(S::finite({1, 2, 3, 4, 5, 6, 7}), 0, 0, 100);
    EXPECT_EQ(d0.classes.size(), 1u);
    EXPECT_EQ(d0.indices.size(), 7u);

    // along a class every rank-1 sentence has a constant truth value
    auto g = ghasemi_subsequence(S::affine(1, 1), 1, 0, 8);
    SentenceGen gen(5);
    for (int i = 0; i < 30; ++i) {
        auto f = gen.sentence(1);
        for (const auto& cls : g.classes) {
            const bool first = eval(f, FiniteDynSys::single(static_cast<std::uint32_t>(cls.indices[0] + 1))).value;
            for (auto k : cls.indices)
                EXPECT_EQ(eval(f, FiniteDynSys::single(static_cast<std::uint32_t>(k + 1))).value, first);
        }
    }
}

// ---- obstruction formulas -------------------------------------------------

namespace {

// the worst-case step bound is far above the real cost of these short-circuiting sentences
EvalOptions roomy()
{
    EvalOptions o;
    o.budget.max_steps = 1e30;
    return o;
}

int leading_existentials(const FormulaPtr& f)
{
    int c = 0;
    auto g = f;
    while (g->kind == FormKind::Exists) {
        ++c;
        g = g->kids[0];
    }
    return c;
}

bool all_conform(const std::vector<std::uint32_t>& lengths, std::uint64_t m, std::uint64_t j)
{
    for (auto L : lengths)
        if (L % m != j)
            return false;
    return true;
}

} // namespace

TEST(Obstruction, Shape)
{
    auto f = obstruction_formula(3, 1);
    EXPECT_EQ(leading_existentials(f), 4);
    EXPECT_TRUE(is_sentence(f));
    auto g = obstruction_formula(1, 0);
    EXPECT_EQ(leading_existentials(g), 1);
    EXPECT_TRUE(is_sentence(g));
    EXPECT_EQ(obstruction_variables(4, 2), (std::vector<std::string>{"b0", "b1", "b2", "b3", "a0", "a1"}));
    for (auto [m, j] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 1}, {4, 3}}) {
        auto o = obstruction_formulas(m, j);
        for (const auto& h : {o.at_least_m, o.below_m, o.eventual, o.infinitely}) {
            EXPECT_TRUE(is_sentence(h));
            EXPECT_TRUE(same(parse_formula(print(h)), h));
        }
    }
    EXPECT_THROW(obstruction_formula(3, 3), std::invalid_argument);
    EXPECT_THROW(relativize(obstruction_formula(2, 1), "b0"), std::invalid_argument);
}

TEST(Obstruction, SingleCycleTruth)
{
    // on one cycle of length n: the part ≥ m holds iff n = j (mod m) and n ≥ m + j,
    // the part < m iff n = j, the split and relativized forms iff n = j (mod m)
    for (std::uint64_t m = 1; m <= 3; ++m)
        for (std::uint64_t j = 0; j < m; ++j) {
            auto o = obstruction_formulas(m, j);
            const std::uint32_t top = m + j > 3 ? 4 : 6;
            for (std::uint32_t n = 1; n <= top; ++n) {
                const auto M = FiniteDynSys::single(n);
                EXPECT_EQ(eval(o.at_least_m, M, roomy()).value, n % m == j && n >= m + j) << m << j << n;
                EXPECT_EQ(eval(o.below_m, M, roomy()).value, n == j) << m << j << n;
                EXPECT_EQ(eval(o.eventual, M, roomy()).value, n % m == j) << m << j << n;
                EXPECT_EQ(eval(o.infinitely, M, roomy()).value, n % m == j) << m << j << n;
            }
        }
}

TEST(Obstruction, MultiCycleTruth)
{
    // finite analogue: the split form needs every cycle = j (mod m), the
    // relativized form one such cycle
    const std::vector<std::vector<std::uint32_t>> windows{{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 3}, {1, 1, 2}, {2, 4}};
    for (std::uint64_t m = 2; m <= 3; ++m)
        for (std::uint64_t j = 0; j < m; ++j) {
            if (m + j > 3)
                continue;
            auto o = obstruction_formulas(m, j);
            for (const auto& w : windows) {
                const FiniteDynSys M(w);
                bool any = false;
                for (auto L : w)
                    any = any || L % m == j;
                EXPECT_EQ(eval(o.eventual, M, roomy()).value, all_conform(w, m, j)) << m << j << M.describe();
                EXPECT_EQ(eval(o.infinitely, M, roomy()).value, any) << m << j << M.describe();
            }
        }
}

TEST(Obstruction, TruthExamples)
{
    using S = SequenceDescriptor;
    auto ev = ObstructionMode::eventual;
    auto io = ObstructionMode::infinitelyOften;
    EXPECT_TRUE(obstruction_truth(S::geometric(1, 4), 3, 1, ev).is_yes());
    auto no = obstruction_truth(S::geometric(2, 4), 3, 1, ev);
    EXPECT_TRUE(no.is_no());
    EXPECT_TRUE(obstruction_truth(S::geometric(2, 4), 3, 2, ev).is_yes());
    EXPECT_TRUE(obstruction_truth(S::factorial(0), 5, 0, ev).is_yes());
    EXPECT_TRUE(obstruction_truth(S::affine(1, 0 + 1), 2, 0, ev).is_no());
    EXPECT_TRUE(obstruction_truth(S::affine(1, 1), 2, 0, io).is_yes());
    EXPECT_TRUE(obstruction_truth(S::finite({5}), 3, 1, ev).is_yes());
    EXPECT_TRUE(obstruction_truth(S::finite({5}), 3, 1, io).is_no());
    EXPECT_TRUE(obstruction_truth(S::constant(4, {2, 2, 2}), 3, 1, ev).is_yes());
    EXPECT_TRUE(obstruction_truth(S::residue(6, {1, 4}), 3, 1, ev).is_yes());
    auto u = obstruction_truth(S::residue(4, {1, 2}), 3, 1, ev);
    EXPECT_TRUE(u.is_unknown());
    EXPECT_EQ(u.kind, "residue-underdetermined");
}

TEST(Obstruction, TruthAgreesWithValues)
{
    std::mt19937_64 rng(31);
    auto U = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<BigInt> prefix;
        for (int i = U(0, 3); i > 0; --i)
            prefix.push_back(U(1, 30));
        SequenceDescriptor s;
        switch (trial % 5) {
        case 0: s = SequenceDescriptor::constant(U(1, 40), prefix); break;
        case 1: s = SequenceDescriptor::affine(U(0, 7), U(1, 9), prefix); break;
        case 2: s = SequenceDescriptor::geometric(U(1, 5), U(2, 7), prefix); break;
        case 3: s = SequenceDescriptor::factorial(U(0, 4), prefix); break;
        default: {
            const auto M = static_cast<std::uint64_t>(U(1, 12));
            std::vector<std::uint64_t> t;
            for (int i = U(1, 4); i > 0; --i)
                t.push_back(static_cast<std::uint64_t>(U(0, static_cast<int>(M) - 1)));
            s = SequenceDescriptor::residue(M, t, U(1, 20), prefix);
        }
        }
        // residues of the first 1000 values; factorials by running product
        std::vector<BigInt> vals;
        if (auto f = std::get_if<FactorialTail>(&s.tail())) {
            vals = prefix;
            BigInt acc = finquo::detail::factorial(f->offset);
            for (std::size_t t = 0; vals.size() < 1000; ++t) {
                if (t > 0)
                    acc *= t + f->offset;
                vals.push_back(acc);
            }
        } else {
            vals = s.take(1000);
        }
        for (std::uint64_t m = 1; m <= 7; ++m)
            for (std::uint64_t j = 0; j < m; ++j) {
                bool all = true, any = false;
                for (std::size_t k = 500; k < 1000; ++k) {
                    const bool hit = mod_u64(vals[k], m) == j;
                    all = all && hit;
                    any = any || hit;
                }
                auto ev = obstruction_truth(s, m, j, ObstructionMode::eventual);
                auto io = obstruction_truth(s, m, j, ObstructionMode::infinitelyOften);
                if (ev.is_unknown()) {
                    auto rt = std::get_if<ResidueTail>(&s.tail());
                    ASSERT_TRUE(rt && rt->m % m != 0) << s.describe();
                    continue;
                }
                ++checked;
                EXPECT_EQ(ev.is_yes(), all) << s.describe() << " m=" << m << " j=" << j;
                EXPECT_EQ(io.is_yes(), any) << s.describe() << " m=" << m << " j=" << j;
            }
    }
    EXPECT_GT(checked, 1000);
}

// ---- window cov / small ---------------------------------------------------

TEST(Window, CovAndSmall)
{
    RotaryWindow W({3, 4});
    PointSet x(7, false);
    x[0] = true;
    EXPECT_EQ(W.cov(x), (PointSet{true, true, true, false, false, false, false}));
    EXPECT_TRUE(W.small(x));
    x[5] = true;
    EXPECT_TRUE(W.small(x));
    x[1] = true;
    EXPECT_FALSE(W.small(x));
    EXPECT_EQ(W.alpha(2), 0u);
    EXPECT_EQ(W.alpha(6), 3u);
}

TEST(Window, MatchesFormulaDefinitions)
{
    using namespace build;
    auto cov_top = cov_is_top(var("x"));
    auto sm = small(var("x"));
    for (const auto& lengths : std::vector<std::vector<std::size_t>>{{2, 3}, {1, 2, 2}, {4}, {3, 3}}) {
        RotaryWindow W(lengths);
        const auto M = W.structure();
        const PointSet top(W.size(), true);
        for (Elem e = 0; e <= M.full(); ++e) {
            PointSet x(W.size());
            for (std::size_t p = 0; p < W.size(); ++p)
                x[p] = (e >> p) & 1;
            EXPECT_EQ(eval(cov_top, M, {}, {{"x", e}}).value, W.cov(x) == top);
            EXPECT_EQ(eval(sm, M, {}, {{"x", e}}).value, W.small(x));
        }
    }
}

// ---- witness partition ----------------------------------------------------

TEST(Witness, Examples)
{
    auto r = witness_partition({7, 10}, 3, 1);
    EXPECT_TRUE(r.ok) << r.failure;
    EXPECT_FALSE(r.matrix_holds.has_value());
    ASSERT_EQ(r.sets.size(), 4u);
    EXPECT_EQ(r.sets[3].name, "a0");
    EXPECT_EQ(r.sets[3].points, (std::vector<std::size_t>{6, 16}));
    EXPECT_EQ(r.sets[0].points, (std::vector<std::size_t>{0, 3, 7, 10, 13}));

    auto bad = witness_partition({7}, 3, 2);
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.offending_interval, std::optional<std::size_t>(0));

    auto late = witness_partition({5, 8, 4}, 3, 2);
    EXPECT_EQ(late.offending_interval, std::optional<std::size_t>(2));
}

TEST(Witness, MinimalIntervals)
{
    for (std::uint64_t m = 1; m <= 4; ++m)
        for (std::uint64_t j = 0; j < m; ++j) {
            auto r = witness_partition({m + j}, m, j);
            EXPECT_TRUE(r.ok) << m << " " << j << " " << r.failure;
            ASSERT_TRUE(r.matrix_holds.has_value());
            EXPECT_TRUE(*r.matrix_holds);
        }
    auto two = witness_partition({5, 8}, 3, 2);
    EXPECT_TRUE(two.ok) << two.failure;
    ASSERT_TRUE(two.matrix_holds.has_value());
    EXPECT_TRUE(*two.matrix_holds);
}

TEST(Witness, RandomConforming)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
        const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
        std::vector<std::size_t> lengths;
        for (int k = std::uniform_int_distribution<int>(1, 5)(rng); k > 0; --k) {
            const auto tmax = (14 - j) / m;
            lengths.push_back(j + m * std::uniform_int_distribution<std::uint64_t>(1, tmax)(rng));
        }
        auto r = witness_partition(lengths, m, j);
        EXPECT_TRUE(r.ok) << r.failure;
    }
}

// ---- exhaustive partition search -----------------------------------------

TEST(Search, AgreesWithConformity)
{
    const std::vector<std::vector<std::size_t>> windows{{4},    {5},    {7},       {3, 4},    {4, 4},
                                                        {2, 5}, {6},    {4, 7},    {3, 3, 3}, {5, 6},
                                                        {1, 4}, {8, 2}, {3, 5, 2}, {9},       {10, 2}};
    for (const auto& w : windows)
        for (std::uint64_t m = 1; m <= 4; ++m)
            for (std::uint64_t j = 0; j < m; ++j) {
                bool conform = true;
                for (auto L : w)
                    conform = conform && L % m == j && L >= m + j;
                auto r = search_matrix(w, m, j);
                EXPECT_EQ(r.satisfiable, conform) << "m=" << m << " j=" << j << " size " << w.size();
                if (r.satisfiable) {
                    ASSERT_EQ(r.witness.size(), RotaryWindow(w).size());
                }
            }
}

TEST(Search, AgreesWithSentenceOnTinyWindows)
{
    for (const auto& w : std::vector<std::vector<std::uint32_t>>{{2}, {3}, {4}, {2, 2}, {1, 3}, {2, 3}, {5}})
        for (std::uint64_t m = 1; m <= 3; ++m)
            for (std::uint64_t j = 0; j < m; ++j) {
                if (m + j > 3)
                    continue;
                std::vector<std::size_t> lw(w.begin(), w.end());
                EXPECT_EQ(search_matrix(lw, m, j).satisfiable,
                          eval(obstruction_formula(m, j), FiniteDynSys(w), roomy()).value);
            }
}

TEST(Search, Budget)
{
    EXPECT_THROW(search_matrix({8, 8}, 2, 0), BudgetExceeded);
}
