// One line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "finquo/finquo.hpp"
#include "generators.hpp"

using namespace finquo;
using namespace finquo::fm;
using namespace finquo::coarse;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            note << "first failure: " << what << "; ";
        }
    }
};

// independent bitset semantics, α rotates each point forward
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
            return apow(pick(2) ? 1 : -1, term(vars, depth - 1, reach - 1));
        }
        }
    }

    FormulaPtr atom(const std::vector<std::string>& vars)
    {
        auto a = term(vars, 2, 2), b = term(vars, 2, 2);
        return pick(2) ? build::eq(a, b) : build::le(a, b);
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

std::vector<std::size_t> random_lengths(std::mt19937_64& rng, std::size_t max_points)
{
    std::uniform_int_distribution<std::size_t> len(1, 40);
    std::vector<std::size_t> ls;
    std::size_t total = 0;
    while (true) {
        auto L = len(rng);
        if (total + L > max_points)
            break;
        ls.push_back(L);
        total += L;
    }
    if (ls.empty())
        ls.push_back(1);
    return ls;
}

// ---------------------------------------------------------------------------

void orbit_calculus(Outcome& o)
{
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> kd(-4, 4);
    std::uniform_int_distribution<std::size_t> nd(12, 64);
    std::size_t compositions = 0, layouts = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t N = nd(rng);
        auto F = gen::random_shift_perm(rng, kd(rng), N - 10);
        auto G = gen::random_shift_perm(rng, kd(rng), N - 10);
        auto f = gen::restrict_shift_perm(F, N), g = gen::restrict_shift_perm(G, N);
        const auto ifg = index(compose(f, g)).value;
        o.require(index(f).value == F.k && index(g).value == G.k, "index of a restriction");
        o.require(ifg == index(f).value + index(g).value, "index additivity at N=" + std::to_string(N));
        ++compositions;
    }
    for (int t = 0; t < 1000; ++t) {
        auto L = gen::random_layout(rng, 64);
        const auto P = provisional_spectrum(L.map);
        const auto d = decompose(P);
        OrbitSpectrum target;
        target.cycles = P.cycles;
        target.nLike = d.sPart > 0 ? static_cast<std::uint64_t>(d.sPart) : 0;
        target.revNLike = d.sPart < 0 ? static_cast<std::uint64_t>(-d.sPart) : 0;
        target.zLike = d.zPart;
        auto w = realize_window(target);
        o.require(spectrum_of_window(w).spectrum.cycles == spectrum_of_window(L.map).spectrum.cycles,
                  "spectrum preserved");
        o.require(index(w).value == static_cast<std::int64_t>(L.nLike) - static_cast<std::int64_t>(L.revNLike),
                  "index preserved");
        o.require(decompose(provisional_spectrum(w)) == d, "decomposition preserved");
        ++layouts;
    }
    o.note << compositions << " compositions, " << layouts << " rearrangements";
}

void parity_catalog(Outcome& o)
{
    std::vector<SequenceDescriptor> cycles = {SequenceDescriptor{}, SequenceDescriptor::finite({3, 5}),
                                              SequenceDescriptor::constant(2), SequenceDescriptor::geometric(1, 4)};
    std::vector<Card> zs = {Card::finite(0), Card::finite(1), Card::finite(2), Card::finite(3), Card::infinite()};
    std::size_t count = 0, exceptions = 0;
    for (std::uint64_t n = 0; n <= 3; ++n)
        for (std::uint64_t r = 0; r <= 3; ++r)
            for (const auto& z : zs)
                for (const auto& c : cycles) {
                    OrbitSpectrum s;
                    s.nLike = n;
                    s.revNLike = r;
                    s.zLike = z;
                    s.cycles = c;
                    const bool even = (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(r)) % 2 == 0;
                    ++count;
                    if (star_property(s) != even || (parity(s) == 0) != even)
                        ++exceptions;
                }
    o.require(exceptions == 0, std::to_string(exceptions) + " exceptions");
    o.note << count << " spectra, " << exceptions << " exceptions";
}

void checker_soundness(Outcome& o)
{
    std::map<std::pair<std::uint32_t, int>, HintikkaType> types;
    for (std::uint32_t n = 1; n <= 6; ++n)
        for (int d = 0; d <= 2; ++d)
            types[{n, d}] = hintikka_type(n, d);
    SentenceGen gen(2024);
    std::size_t pairs = 0, sentences = 0;
    for (int i = 0; i < 240; ++i) {
        auto f = gen.sentence(2);
        const int d = quantifier_rank(f);
        if (d > 2 || alpha_reach(f) > default_term_depth)
            continue;
        ++sentences;
        std::vector<bool> truth;
        for (std::uint32_t n = 1; n <= 6; ++n) {
            const bool slow = Naive{n}.holds(f);
            o.require(eval(f, FiniteDynSys::single(n)).value == slow, "evaluator vs naive on " + print(f));
            truth.push_back(slow);
        }
        for (std::uint32_t n = 1; n <= 6; ++n)
            for (std::uint32_t m = n + 1; m <= 6; ++m)
                if (types[{n, d}] == types[{m, d}]) {
                    ++pairs;
                    o.require(truth[n - 1] == truth[m - 1], "fingerprint " + std::to_string(n) + "~" +
                                                                std::to_string(m) + " on " + print(f));
                }
    }
    o.require(sentences >= 200, "too few sentences");
    const auto swap = parse_formula("(exists x (and (not (= x 0)) (= (meet x (a x)) 0) (= (join x (a x)) 1)))");
    const bool on2 = Naive{2}.holds(swap), on3 = Naive{3}.holds(swap);
    o.require(!ef_equal(2, 3, 1), "ef_equal(2,3,1)");
    o.require(on2 && !on3 && quantifier_rank(swap) == 1, "swap sentence separates 2 from 3");
    o.note << sentences << " sentences, " << pairs << " type-equal pairs checked, ef_equal(2,3,1)=false";
}

void obstruction_both_ways(Outcome& o)
{
    std::mt19937_64 rng(404);
    std::size_t passed = 0;
    for (int t = 0; t < 100; ++t) {
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
        const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
        std::vector<std::size_t> lengths;
        const auto tmax = (14 - j) / m;
        for (int k = std::uniform_int_distribution<int>(1, 14)(rng); k > 0; --k)
            lengths.push_back(j + m * std::uniform_int_distribution<std::uint64_t>(1, tmax)(rng));
        auto r = witness_partition(lengths, m, j);
        o.require(r.ok, "witness on m=" + std::to_string(m) + " j=" + std::to_string(j) + ": " + r.failure);
        passed += r.ok;
    }
    std::size_t refuted = 0, tried = 0;
    while (tried < 20) {
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(2, 4)(rng);
        const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
        std::vector<std::size_t> lengths;
        std::size_t total = 0;
        for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k) {
            const auto L = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
            if (total + L > 12)
                break;
            lengths.push_back(L);
            total += L;
        }
        bool conform = !lengths.empty();
        for (auto L : lengths)
            conform = conform && L % m == j && L >= m + j;
        if (lengths.empty() || conform)
            continue;
        ++tried;
        try {
            auto s = search_matrix(lengths, m, j);
            o.require(!s.satisfiable, "search found a partition on a non-conforming window");
            refuted += !s.satisfiable;
        } catch (const BudgetExceeded& e) {
            o.require(false, std::string("search budget: ") + e.what());
        }
    }
    o.note << passed << "/100 witnesses, " << refuted << "/20 refutations";
}

void residue_constants(Outcome& o)
{
    const auto even = SequenceDescriptor::geometric(1, 4), odd = SequenceDescriptor::geometric(2, 4);
    const auto a = obstruction_truth(even, 3, 1, ObstructionMode::eventual);
    const auto b = obstruction_truth(odd, 3, 2, ObstructionMode::eventual);
    o.require(a.is_yes(), "2^{2i} residue 1: " + a.detail);
    o.require(b.is_yes(), "2^{2i+1} residue 2: " + b.detail);
    const auto rep = scenario::biembeddable(4, even, odd);
    std::uint64_t violations = 0;
    for (const char* key : {"embed_m_into_n", "embed_n_into_m"}) {
        const auto& r = rep.results.at(key);
        o.require(r.value("ok", false), std::string(key) + " not verified");
        if (r.contains("checks"))
            for (const auto& c : r.at("checks"))
                violations += c.at("violations").get<std::uint64_t>();
    }
    o.require(violations == 0, std::to_string(violations) + " intertwining violations");
    o.require(rep.ok(), "scenario checks");
    o.note << "3|1 on 4^i: " << to_string(a.verdict) << ", 3|2 on 2*4^i: " << to_string(b.verdict)
           << ", 4 intervals each way, " << violations << " violations";
}

void coarse_geometry(Outcome& o)
{
    std::mt19937_64 rng(66);
    std::uint64_t triangle = 0, ball_fail = 0;
    for (int t = 0; t < 100; ++t) {
        auto w = MetricWindow::cycles(random_lengths(rng, 200));
        auto c = check_metric(w);
        triangle += c.triangle_violations + c.symmetry_violations + c.identity_violations;
        for (const auto& r : ball_growth(w, {0, 1, 2, 3, 4, 6, 9, 15, 25}))
            ball_fail += !r.ok;
    }
    o.require(triangle == 0, std::to_string(triangle) + " metric violations");
    o.require(ball_fail == 0, std::to_string(ball_fail) + " ball bound failures");

    auto eq = coarse_equivalent_rotary(SequenceDescriptor::geometric(1, 2), SequenceDescriptor::geometric(2, 2));
    o.require(eq.verdict.is_yes() && eq.witness && eq.witness->K == Rational(2) && eq.window_violations == 0,
              "2^i vs 2*2^i");
    // independent check of the K = 2 witness on a long window
    for (std::size_t i = 0; i < 200 && eq.witness; ++i) {
        const BigInt m = BigInt(1) << i, n = BigInt(2) << i;
        o.require(m * 2 >= n && m <= 2 * n, "witness inequality at " + std::to_string(i));
    }
    auto div = coarse_equivalent_rotary(SequenceDescriptor::factorial(0), SequenceDescriptor::geometric(1, 2));
    o.require(div.verdict.is_no() && div.verdict.kind == "divergence" && !div.verdict.detail.empty(),
              "i! vs 2^i: " + div.verdict.kind);

    std::size_t pairs = 0, worst = 0;
    for (std::size_t L = 1; L <= 100; ++L)
        for (std::size_t k = 0; k <= 12; ++k) {
            auto r = asdim_cover(std::vector<std::size_t>{L}, k);
            std::vector<std::size_t> piece(L);
            for (std::size_t p = 0; p < r.pieces.size(); ++p)
                for (auto x : r.pieces[p].points)
                    piece[x] = p;
            std::size_t here = 0;
            const long R = static_cast<long>(std::min(k, L)), l = static_cast<long>(L);
            for (long x = 0; x < l; ++x) {
                std::set<std::size_t> met;
                for (long d = -R; d <= R; ++d)
                    met.insert(piece[static_cast<std::size_t>(((x + d) % l + l) % l)]);
                here = std::max(here, met.size());
            }
            o.require(here <= 2 && here == r.max_multiplicity,
                      "cover multiplicity at L=" + std::to_string(L) + " k=" + std::to_string(k));
            worst = std::max(worst, here);
            ++pairs;
        }
    o.note << "100 windows, 0 metric violations, K=" << (eq.witness ? to_string(eq.witness->K) : "-")
           << ", i! vs 2^i " << div.verdict.kind << ", " << pairs << " cover pairs max multiplicity " << worst;
}

void propagation_reconstruction(Outcome& o)
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> v(-1000, 1000);
    std::size_t exact = 0;
    for (std::vector<std::size_t> ls : {std::vector<std::size_t>{256}, {128, 128}, {1, 2, 3, 4, 50, 196},
                                        {7, 9, 11, 13, 100}, std::vector<std::size_t>(16, 16)}) {
        GammaWindow g(ls);
        const std::size_t n = g.size();
        Matrix<BigInt> T(n, std::vector<BigInt>(n, 0));
        for (auto& row : T)
            for (auto& x : row)
                x = v(rng);
        auto d = propagation_decompose(T, g);
        o.require(reconstruct(d, g) == T, "integer reconstruction on " + std::to_string(n) + " points");
        exact += reconstruct(d, g) == T;
    }
    std::normal_distribution<double> nd;
    double worst = 0;
    std::uniform_int_distribution<std::size_t> sz(1, 128);
    for (int t = 0; t < 20; ++t) {
        auto ls = random_lengths(rng, sz(rng));
        if (t == 0)
            ls = {128};
        GammaWindow g(ls);
        const std::size_t n = g.size();
        Matrix<double> T(n, std::vector<double>(n));
        for (auto& row : T)
            for (auto& x : row)
                x = nd(rng);
        auto d = propagation_decompose(T, g);
        worst = std::max(worst, relative_frobenius(T, reconstruct(d, g)));
    }
    o.require(worst < 1e-10, "double error " + std::to_string(worst));
    o.note << exact << " exact integer windows (N <= 256), worst double error " << worst;
}

void conjugacy_decisions(Outcome& o)
{
    for (int d = 0; d <= 2; ++d) {
        auto t = potentially_conjugate(OrbitSpectrum::sigma(), OrbitSpectrum::sigma_inverse(), d);
        o.require(t.is_yes(), "sigma vs inverse at rank " + std::to_string(d) + ": " + t.detail);
    }
    auto triv = trivially_conjugate(OrbitSpectrum::sigma(), OrbitSpectrum::sigma_inverse());
    o.require(triv.is_no() && triv.kind == "index", "trivial conjugacy: " + triv.kind);
    o.require(parity(OrbitSpectrum::sigma()) == parity(OrbitSpectrum::sigma_inverse()), "parities agree");
    auto a = OrbitSpectrum::rotary(SequenceDescriptor::geometric(1, 4));
    auto b = OrbitSpectrum::rotary(SequenceDescriptor::geometric(2, 4));
    for (int d = 0; d <= 3; ++d) {
        auto t = potentially_conjugate(a, b, d);
        o.require(t.is_no() && t.kind == "arithmetic-mod-m" && t.detail.find("m=3") != std::string::npos,
                  "4^i vs 2*4^i at rank " + std::to_string(d) + ": " + t.kind);
    }
    o.note << "sigma~sigma^-1 potentially (d<=2), trivially " << to_string(triv.verdict) << " (" << triv.kind
           << "), 4^i vs 2*4^i " << "no (mod 3)";
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double limit_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> all = {
        {1, "orbit calculus", 10, orbit_calculus},
        {2, "parity catalog", 1, parity_catalog},
        {3, "model checker soundness", 300, checker_soundness},
        {4, "obstruction both directions", 600, obstruction_both_ways},
        {5, "residue constants and biembedding", 30, residue_constants},
        {6, "coarse geometry", 60, coarse_geometry},
        {7, "propagation decomposition", 30, propagation_reconstruction},
        {8, "conjugacy decisions", 10, conjugacy_decisions},
    };
    int failures = 0;
    for (const auto& c : all) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << "exception: " << e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s >= c.limit_s) {
            o.ok = false;
            o.note << "; over the " << c.limit_s << " s limit";
        }
        failures += !o.ok;
        std::printf("criterion %d: %s %s (%.2f s) %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, s,
                    o.note.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
