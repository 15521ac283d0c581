#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "finquo/finquo.hpp"

using namespace finquo;
using io::Json;

namespace {

struct Globals {
    std::optional<double> budget;
    bool json = false;
    std::uint64_t seed = 1;
};

struct Outcome {
    Json report;
    int code = 0;
};

Json stamp(Json j, const std::string& command)
{
    Json out = {{"schema_version", io::schema_version}, {"command", command}};
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = it.value();
    return out;
}

Outcome tri_outcome(const Tri& t, Json extra = Json::object())
{
    Json r = io::to_json(t);
    for (auto it = extra.begin(); it != extra.end(); ++it)
        r[it.key()] = it.value();
    return {r, exit_code(t.verdict)};
}

fm::Budget fm_budget(const Globals& g)
{
    fm::Budget b;
    if (g.budget)
        b.max_steps = *g.budget;
    return b;
}

void print_human(const Json& j, const std::string& indent = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object()) {
            std::cout << indent << it.key() << ":\n";
            print_human(v, indent + "  ");
        } else if (v.is_string()) {
            std::cout << indent << it.key() << ": " << v.get<std::string>() << "\n";
        } else {
            std::cout << indent << it.key() << ": " << v.dump() << "\n";
        }
    }
}

Json orbit_json(const Orbit& o)
{
    Json k = {{"kind", to_string(o.kind.tag)}};
    if (o.kind.tag == OrbitKindTag::FiniteCycle || o.kind.tag == OrbitKindTag::FinitePath)
        k["length"] = o.kind.length;
    if (o.kind.tag == OrbitKindTag::Censored) {
        k["forward_open"] = o.kind.forward_open;
        k["backward_open"] = o.kind.backward_open;
    }
    return {{"points", o.points}, {"kind", k}};
}

Json decomposition_json(const Decomposition& d)
{
    return {{"rotary", io::to_json(d.rotary)}, {"sPart", describe_s_part(d.sPart)}, {"sIndex", d.sPart},
            {"zPart", io::to_json(d.zPart)}};
}

std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoul(item));
    return out;
}

/// Window lengths from a JSON file or an inline comma list.
std::vector<std::size_t> lengths_arg(const std::string& s)
{
    if (s.find_first_not_of("0123456789, ") == std::string::npos)
        return parse_list(s);
    return io::lengths_from_json(io::read_json(s));
}

struct App {
    CLI::App cli{"Decision procedures for trivial automorphisms of P(N)/Fin"};
    Globals g;
    std::function<Outcome()> action;
    std::string command;

    template <class F>
    CLI::App* op(CLI::App* module, const std::string& name, const std::string& help, F&& f)
    {
        auto* sub = module->add_subcommand(name, help);
        sub->callback([this, module, name, f = std::forward<F>(f)] {
            command = module->get_name() + " " + name;
            action = f;
        });
        return sub;
    }

    App()
    {
        cli.require_subcommand(1);
        cli.add_option("--budget", g.budget, "evaluation step or search-node budget");
        cli.add_flag("--json", g.json, "emit the JSON report");
        cli.add_option("--seed", g.seed, "seed for sampled checks");
        build_aperm();
        build_canon();
        build_fmcheck();
        build_digraph();
        build_coarse();
        build_scenario();
    }

    // ---- aperm --------------------------------------------------------------
    std::string f_path, g_path, a_path, b_path, spectrum_path;
    std::size_t threshold = 0;

    void build_aperm()
    {
        auto* m = cli.add_subcommand("aperm", "almost permutations on finite windows")->require_subcommand(1);
        auto* c = op(m, "compose", "h(i) = g(f(i))", [this] {
            auto h = compose(io::window_from_json(io::read_json(f_path)), io::window_from_json(io::read_json(g_path)));
            return Outcome{{{"result", io::to_json(h)}}};
        });
        c->add_option("--f", f_path)->required();
        c->add_option("--g", g_path)->required();
        auto* inv = op(m, "inverse", "inverse window map", [this] {
            return Outcome{{{"result", io::to_json(inverse(io::window_from_json(io::read_json(f_path))))}}};
        });
        inv->add_option("--f", f_path)->required();
        auto idx = [this] {
            return [this] {
                if (!spectrum_path.empty()) {
                    auto s = io::spectrum_from_json(io::read_json(spectrum_path));
                    return Outcome{{{"index", index(s)}, {"parity", parity(s)}}};
                }
                auto w = index(io::window_from_json(io::read_json(f_path)));
                Json r = {{"index", w.value}, {"parity", ((w.value % 2) + 2) % 2}, {"censored", w.censored}};
                return Outcome{r};
            };
        };
        for (const char* name : {"index", "parity"}) {
            auto* s = op(m, name, "index N+ - N- and its parity", idx());
            s->add_option("--window", f_path, "WindowMap JSON");
            s->add_option("--spectrum", spectrum_path, "OrbitSpectrum JSON");
        }
        auto* ae = op(m, "almost-equal", "disagreement count within a threshold", [this] {
            auto f = io::window_from_json(io::read_json(f_path));
            auto h = io::window_from_json(io::read_json(g_path));
            return Outcome{{{"almost_equal", almost_equal(f, h, threshold)},
                            {"disagreements", disagreement_count(f, h)},
                            {"separating_set", separating_set(f, h)}}};
        });
        ae->add_option("--f", f_path)->required();
        ae->add_option("--g", g_path)->required();
        ae->add_option("--threshold", threshold);
        auto* orb = op(m, "orbits", "classify the orbits of a window", [this] {
            Json os = Json::array();
            for (const auto& o : classify_orbits(io::window_from_json(io::read_json(f_path))))
                os.push_back(orbit_json(o));
            return Outcome{{{"orbits", os}}};
        });
        orb->add_option("--window", f_path)->required();
        auto* sp = op(m, "spectrum", "spectrum of the orbits closing inside a window", [this] {
            auto w = spectrum_of_window(io::window_from_json(io::read_json(f_path)));
            return Outcome{{{"spectrum", io::to_json(w.spectrum)}, {"censored", w.censored}}};
        });
        sp->add_option("--window", f_path)->required();
        auto* sum = op(m, "sum", "direct sum of two spectra", [this] {
            auto s = direct_sum(io::spectrum_from_json(io::read_json(a_path)),
                                io::spectrum_from_json(io::read_json(b_path)));
            return Outcome{{{"spectrum", io::to_json(s)}}};
        });
        sum->add_option("--a", a_path)->required();
        sum->add_option("--b", b_path)->required();
    }

    // ---- canon --------------------------------------------------------------
    std::string mode = "trivial";
    int rank = 1;
    std::uint64_t max_modulus = 12;

    void build_canon()
    {
        auto* m = cli.add_subcommand("canon", "canonical decomposition and conjugacy")->require_subcommand(1);
        auto* d = op(m, "decompose", "R + Z + S decomposition", [this] {
            auto s = io::spectrum_from_json(io::read_json(spectrum_path));
            Json r = decomposition_json(decompose(s));
            r["components"] = io::to_json(component_count(s));
            r["star"] = star_property(s);
            r["parity"] = parity(s);
            r["ch_normal_form"] = io::to_json(ch_normal_form(s));
            return Outcome{r};
        });
        d->add_option("--spectrum", spectrum_path)->required();
        auto* c = op(m, "conjugate", "trivial or potential conjugacy", [this] {
            auto a = io::spectrum_from_json(io::read_json(a_path));
            auto b = io::spectrum_from_json(io::read_json(b_path));
            if (mode == "trivial")
                return tri_outcome(trivially_conjugate(a, b), {{"mode", mode}});
            PotentialOptions opt;
            opt.max_modulus = max_modulus;
            opt.limits.budget = fm_budget(g);
            return tri_outcome(potentially_conjugate(a, b, rank, opt), {{"mode", mode}, {"rank", rank}});
        });
        c->add_option("--a", a_path)->required();
        c->add_option("--b", b_path)->required();
        c->add_option("--mode", mode)->check(CLI::IsMember({"trivial", "potential"}));
        c->add_option("--rank", rank)->check(CLI::Range(0, 4));
        c->add_option("--max-modulus", max_modulus);
        auto* r = op(m, "rotary", "equality of cycle multisets modulo finite", [this] {
            return tri_outcome(rotary_equivalent(io::sequence_from_json(io::read_json(a_path)),
                                                 io::sequence_from_json(io::read_json(b_path))));
        });
        r->add_option("--a", a_path)->required();
        r->add_option("--b", b_path)->required();
        auto* s = op(m, "saturation", "saturation class", [this] {
            auto sp = io::spectrum_from_json(io::read_json(spectrum_path));
            return Outcome{{{"class", to_string(saturation_class(sp))}}};
        });
        s->add_option("--spectrum", spectrum_path)->required();
    }

    // ---- fmcheck ------------------------------------------------------------
    std::uint32_t n = 0, m2 = 0;
    std::string formula_path, lengths_text, seq_path, seq_b_path, obs_mode = "eventual";
    std::uint64_t om = 3, oj = 1;
    std::size_t begin = 0, end = 0;
    int depth = fm::default_term_depth;
    bool search = false;
    bool depth_set = false;

    fm::FiniteDynSys structure_arg() const
    {
        if (!lengths_text.empty()) {
            std::vector<std::uint32_t> ls;
            for (auto L : lengths_arg(lengths_text))
                ls.push_back(static_cast<std::uint32_t>(L));
            return fm::FiniteDynSys(ls);
        }
        if (n == 0)
            throw std::invalid_argument("give --n or --lengths");
        return fm::FiniteDynSys::single(n);
    }

    fm::LimitOptions limit_opts() const
    {
        fm::LimitOptions o;
        o.begin = begin;
        o.end = end;
        o.depth = depth;
        o.budget = fm_budget(g);
        return o;
    }

    static Json limit_json(const fm::LimitTypeSet& l)
    {
        Json types = Json::array();
        for (const auto& t : l.types)
            types.push_back(t.hash());
        return {{"certificate", fm::to_string(l.certificate)}, {"types", types},       {"period", l.period},
                {"onset", l.onset},                           {"window", {l.window_begin, l.window_end}},
                {"note", l.note}};
    }

    void build_fmcheck()
    {
        auto* m = cli.add_subcommand("fmcheck", "finite model checking of rotary systems")->require_subcommand(1);
        auto* e = op(m, "eval", "evaluate a sentence on P(n) or a multi-cycle window", [this] {
            auto f = fm::parse_formula(io::read_text(formula_path));
            fm::EvalOptions opt;
            opt.budget = fm_budget(g);
            auto r = fm::eval(f, structure_arg(), opt);
            Json w = Json::object();
            for (const auto& [name, x] : r.witness)
            {
                std::vector<std::size_t> pts;
                for (std::size_t p = 0; p < 64; ++p)
                    if ((x >> p) & 1)
                        pts.push_back(p);
                w[name] = pts;
            }
            return Outcome{{{"formula", fm::print(f)}, {"rank", fm::quantifier_rank(f)}, {"value", r.value},
                            {"witness", w}},
                           r.value ? 0 : 1};
        });
        e->add_option("--formula", formula_path, "S-expression file")->required();
        e->add_option("--n", n);
        e->add_option("--lengths", lengths_text);
        auto* fp = op(m, "fingerprint", "rank-d Hintikka fingerprint", [this] {
            auto t = fm::hintikka_type(structure_arg(), rank, depth, fm_budget(g));
            return Outcome{{{"rank", rank}, {"depth", depth}, {"fingerprint", t.hash()}}};
        });
        fp->add_option("--n", n);
        fp->add_option("--lengths", lengths_text);
        fp->add_option("--rank", rank);
        fp->add_option("--depth", depth);
        auto* ef = op(m, "ef", "rank-d equivalence of P(n) and P(m)", [this] {
            const bool eq = fm::ef_equal(n, m2, rank, depth, fm_budget(g));
            return Outcome{{{"n", n}, {"m", m2}, {"rank", rank}, {"equal", eq}}, eq ? 0 : 1};
        });
        ef->add_option("--n", n)->required();
        ef->add_option("--m", m2)->required();
        ef->add_option("--rank", rank);
        ef->add_option("--depth", depth);
        auto* lt = op(m, "limits", "limit type set of a sequence", [this] {
            return Outcome{limit_json(fm::limit_type_set(io::sequence_from_json(io::read_json(seq_path)), rank,
                                                         limit_opts()))};
        });
        lt->add_option("--seq", seq_path)->required();
        lt->add_option("--rank", rank);
        lt->add_option("--begin", begin);
        lt->add_option("--end", end);
        auto* ee = op(m, "ee", "rank-d equivalence of two reduced products", [this] {
            auto a = io::sequence_from_json(io::read_json(seq_path));
            auto b = io::sequence_from_json(io::read_json(seq_b_path));
            return tri_outcome(fm::reduced_product_ee(a, b, rank, limit_opts(), limit_opts()), {{"rank", rank}});
        });
        ee->add_option("--seq-a", seq_path)->required();
        ee->add_option("--seq-b", seq_b_path)->required();
        ee->add_option("--rank", rank);
        auto* gh = op(m, "ghasemi", "largest rank-d type class in a window", [this] {
            auto s = io::sequence_from_json(io::read_json(seq_path));
            auto r = fm::ghasemi_subsequence(s, rank, begin, end ? end : begin + 12, depth, fm_budget(g));
            Json cls = Json::array();
            for (const auto& c : r.classes)
                cls.push_back({{"type", c.type.hash()}, {"indices", c.indices}});
            return Outcome{{{"indices", r.indices}, {"classes", cls}}};
        });
        gh->add_option("--seq", seq_path)->required();
        gh->add_option("--rank", rank);
        gh->add_option("--begin", begin);
        gh->add_option("--end", end);
        auto* ob = op(m, "obstruction", "residue sentences: print, decide on a sequence, or witness on a window",
                      [this] {
                          auto fs = fm::obstruction_formulas(om, oj);
                          Json r = {{"m", om}, {"j", oj}, {"phi", fm::print(fs.eventual)},
                                    {"psi", fm::print(fs.infinitely)}};
                          int code = 0;
                          if (!seq_path.empty()) {
                              auto md = obs_mode == "eventual" ? fm::ObstructionMode::eventual
                                                               : fm::ObstructionMode::infinitelyOften;
                              auto t = fm::obstruction_truth(io::sequence_from_json(io::read_json(seq_path)), om,
                                                             oj, md);
                              r["mode"] = obs_mode;
                              r["truth"] = io::to_json(t);
                              code = exit_code(t.verdict);
                          }
                          if (!lengths_text.empty()) {
                              auto ls = lengths_arg(lengths_text);
                              auto w = fm::witness_partition(ls, om, oj, fm_budget(g));
                              Json sets = Json::object();
                              for (const auto& s : w.sets)
                                  sets[s.name] = s.points;
                              Json checks = Json::object();
                              for (const auto& [name, ok] : w.checks)
                                  checks[name] = ok;
                              r["witness"] = {{"ok", w.ok}, {"failure", w.failure}, {"sets", sets},
                                              {"checks", checks}};
                              if (w.offending_interval)
                                  r["witness"]["offending_interval"] = *w.offending_interval;
                              if (w.matrix_holds)
                                  r["witness"]["matrix_holds"] = *w.matrix_holds;
                              if (search) {
                                  auto s = fm::search_matrix(ls, om, oj, fm_budget(g));
                                  r["search"] = {{"satisfiable", s.satisfiable}, {"labels", s.witness},
                                                 {"nodes", s.nodes}, {"complete", s.complete}};
                              }
                              if (code == 0 && !w.ok)
                                  code = 1;
                          }
                          return Outcome{r, code};
                      });
        ob->add_option("--m", om)->required();
        ob->add_option("--j", oj)->required();
        ob->add_option("--seq", seq_path);
        ob->add_option("--mode", obs_mode)->check(CLI::IsMember({"eventual", "infinitely"}));
        ob->add_option("--window", lengths_text, "cycle lengths for witness_partition");
        ob->add_flag("--search", search, "also search the window exhaustively for a matrix witness");
    }

    // ---- digraph ------------------------------------------------------------
    std::string graph_path, f_spec = "id";
    std::size_t min_intervals = 2, size_bound = 2;

    void build_digraph()
    {
        auto* m = cli.add_subcommand("digraph", "hitting digraphs and embeddings")->require_subcommand(1);
        auto* r = op(m, "represent", "is G a hitting digraph on the window", [this] {
            RepresentOptions opt;
            opt.min_intervals = min_intervals;
            if (g.budget)
                opt.max_nodes = static_cast<std::uint64_t>(*g.budget);
            auto rep = digraph_represented(io::digraph_from_json(io::read_json(graph_path)), lengths_arg(lengths_text),
                                           opt);
            return tri_outcome(rep.verdict, {{"witness", rep.witness},
                                             {"nodes", rep.nodes},
                                             {"required_intervals", rep.required_intervals}});
        });
        r->add_option("--graph", graph_path)->required();
        r->add_option("--window", lengths_text)->required();
        r->add_option("--min-intervals", min_intervals);
        auto* cmp = op(m, "compare", "existential evidence between two windows", [this] {
            RepresentOptions opt;
            if (g.budget)
                opt.max_nodes = static_cast<std::uint64_t>(*g.budget);
            auto t = exists_theory_compare(lengths_arg(a_path), lengths_arg(b_path), size_bound, opt);
            Json an = Json::array(), bn = Json::array();
            for (auto i : t.a_not_b)
                an.push_back(io::to_json(t.digraphs[i]));
            for (auto i : t.b_not_a)
                bn.push_back(io::to_json(t.digraphs[i]));
            return Outcome{{{"digraphs", t.digraphs.size()}, {"a_not_b", an}, {"b_not_a", bn}, {"scope", t.scope}}};
        });
        cmp->add_option("--a", a_path)->required();
        cmp->add_option("--b", b_path)->required();
        cmp->add_option("--size", size_bound);
        auto* e = op(m, "embed", "interval-wrapping embedding and its checks", [this] {
            auto ms = io::sequence_from_json(io::read_json(a_path));
            auto ns = io::sequence_from_json(io::read_json(b_path));
            auto rep = build_embedding(ms, ns, IndexMap::parse(f_spec), begin, end ? end : begin + 4, g.seed);
            Json r = scenario::detail::embedding_json(rep);
            r["f"] = f_spec;
            return Outcome{r, rep.ok() ? 0 : 1};
        });
        e->add_option("--m", a_path)->required();
        e->add_option("--n", b_path)->required();
        e->add_option("--f", f_spec, "id or shift:k");
        e->add_option("--begin", begin);
        e->add_option("--end", end);
    }

    // ---- coarse -------------------------------------------------------------
    std::size_t points = 0, k = 1;
    std::string radii = "0,1,2,3", csv_path, matrix_path, gamma_text, K_text = "1", policy = "wide";
    bool literal = false;
    double tol = 1e-12;

    coarse::MetricWindow window_arg() const
    {
        const auto rule = literal ? coarse::CrossRule::literal : coarse::CrossRule::inclusive;
        if (!spectrum_path.empty())
            return coarse::metric_window(io::spectrum_from_json(io::read_json(spectrum_path)), points, rule);
        return coarse::MetricWindow::cycles(lengths_arg(lengths_text), rule);
    }

    void build_coarse()
    {
        auto* m = cli.add_subcommand("coarse", "coarse geometry of rotary spaces")->require_subcommand(1);
        auto* mt = op(m, "metric", "distance matrix of a window", [this] {
            auto w = window_arg();
            auto c = coarse::check_metric(w);
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                out << io::to_csv(w.matrix());
            }
            Json r = {{"points", w.size()},
                      {"order", w.order_note()},
                      {"rule", literal ? "literal" : "inclusive"},
                      {"triangle_violations", c.triangle_violations},
                      {"symmetry_violations", c.symmetry_violations},
                      {"identity_violations", c.identity_violations}};
            if (!c.example.empty())
                r["example"] = c.example;
            if (csv_path.empty() && w.size() <= 64)
                r["dist"] = w.matrix();
            return Outcome{r, c.ok() ? 0 : 1};
        });
        mt->add_option("--lengths", lengths_text);
        mt->add_option("--spectrum", spectrum_path);
        mt->add_option("--points", points);
        mt->add_option("--csv", csv_path, "write the distance matrix as CSV");
        mt->add_flag("--literal", literal, "cross distance without the diameter of the later component");
        auto* bl = op(m, "balls", "ball growth against the local finiteness bound", [this] {
            Json rows = Json::array();
            bool ok = true;
            for (const auto& r : coarse::ball_growth(window_arg(), parse_list(radii))) {
                rows.push_back({{"radius", r.radius}, {"max_ball", r.max_ball}, {"bound", r.bound}, {"ok", r.ok}});
                ok = ok && r.ok;
            }
            return Outcome{{{"rows", rows}}, ok ? 0 : 1};
        });
        bl->add_option("--lengths", lengths_text);
        bl->add_option("--spectrum", spectrum_path);
        bl->add_option("--points", points);
        bl->add_option("--radii", radii);
        auto* eq = op(m, "equiv", "coarse equivalence of two rotary spaces", [this] {
            auto r = coarse::coarse_equivalent_rotary(io::sequence_from_json(io::read_json(a_path)),
                                                      io::sequence_from_json(io::read_json(b_path)),
                                                      end ? end : 32);
            Json extra = Json::object();
            if (r.witness) {
                extra["K"] = coarse::to_string(r.witness->K);
                extra["gamma_shift"] = r.witness->shift;
                extra["onset"] = r.witness->onset;
                extra["window"] = {r.window_begin, r.window_end};
                extra["window_violations"] = r.window_violations;
            }
            return tri_outcome(r.verdict, extra);
        });
        eq->add_option("--m", a_path)->required();
        eq->add_option("--n", b_path)->required();
        eq->add_option("--window", end, "indices verified past the onset");
        auto* mp = op(m, "maps", "interval-splitting coarse maps on a window", [this] {
            auto ml = lengths_arg(a_path), nl = lengths_arg(b_path);
            std::vector<std::size_t> gamma = gamma_text.empty() ? std::vector<std::size_t>{} : parse_list(gamma_text);
            if (gamma.empty())
                for (std::size_t i = 0; i < ml.size(); ++i)
                    gamma.push_back(i);
            const auto slash = K_text.find('/');
            coarse::Rational K = slash == std::string::npos
                                     ? coarse::Rational(parse_bigint(K_text))
                                     : coarse::Rational(parse_bigint(K_text.substr(0, slash)),
                                                        parse_bigint(K_text.substr(slash + 1)));
            auto rep = coarse::build_coarse_maps(ml, nl, gamma, K);
            return Outcome{{{"f", rep.maps.f},
                            {"g", rep.maps.g},
                            {"k", rep.maps.k},
                            {"f_modulus", rep.f_modulus},
                            {"g_modulus", rep.g_modulus},
                            {"modulus_bound", rep.modulus_bound},
                            {"gf_displacement", rep.gf_displacement},
                            {"fg_displacement", rep.fg_displacement},
                            {"cross_f_ratio", coarse::to_string(rep.cross_f_ratio)},
                            {"cross_g_ratio", coarse::to_string(rep.cross_g_ratio)},
                            {"failures", rep.failures},
                            {"ok", rep.ok()}},
                           rep.ok() ? 0 : 1};
        });
        mp->add_option("--m", a_path, "m window lengths")->required();
        mp->add_option("--n", b_path, "n window lengths")->required();
        mp->add_option("--gamma", gamma_text, "comma list pairing m components with n components");
        mp->add_option("--K", K_text, "ratio bound, integer or p/q");
        auto* cv = op(m, "cover", "asymptotic-dimension-one cover", [this] {
            auto rep = coarse::asdim_cover(window_arg(), k,
                                           policy == "literal" ? coarse::CoverPolicy::literal : coarse::CoverPolicy::wide);
            Json pieces = Json::array();
            for (const auto& p : rep.pieces)
                pieces.push_back({{"component", p.component}, {"points", p.points}, {"diameter", p.diameter}});
            return Outcome{{{"k", k},
                            {"policy", policy},
                            {"pieces", pieces},
                            {"max_multiplicity", rep.max_multiplicity},
                            {"global_multiplicity", rep.global_multiplicity},
                            {"max_diameter", rep.max_diameter},
                            {"short_components", rep.short_components},
                            {"diameter_exceeded", rep.diameter_exceeded},
                            {"order", rep.order_note}},
                           rep.multiplicity_ok() ? 0 : 1};
        });
        cv->add_option("--lengths", lengths_text);
        cv->add_option("--spectrum", spectrum_path);
        cv->add_option("--points", points);
        cv->add_option("--k", k);
        cv->add_option("--policy", policy)->check(CLI::IsMember({"wide", "literal"}));
        auto* bd = op(m, "bands", "propagation and band decomposition of a matrix", [this] {
            auto T = io::read_matrix(matrix_path);
            auto ls = lengths_text.empty() ? std::vector<std::size_t>{T.size()} : lengths_arg(lengths_text);
            coarse::GammaWindow gw(ls);
            auto zero = coarse::default_zero(T, tol);
            auto d = coarse::propagation_decompose(T, gw, zero);
            const double err = coarse::relative_frobenius(T, coarse::reconstruct(d, gw));
            Json bands = Json::object();
            for (const auto& [kk, diag] : d.bands)
                bands[std::to_string(kk)] = diag;
            bool residual = false;
            for (const auto& row : d.residual)
                for (double v : row)
                    residual = residual || !zero(v);
            return Outcome{{{"propagation", d.propagation},
                            {"bands", bands},
                            {"cross_component_entries", residual},
                            {"reconstruction_error", err}}};
        });
        bd->add_option("--matrix", matrix_path, "CSV or JSON matrix")->required();
        bd->add_option("--lengths", lengths_text, "cycle window (default: one cycle)");
        bd->add_option("--tol", tol, "relative zero tolerance");
    }

    // ---- scenarios ----------------------------------------------------------
    std::size_t intervals = 6, count = 2;

    void build_scenario()
    {
        auto* m = cli.add_subcommand("scenario", "named constructions")->require_subcommand(1);
        auto report = [](const scenario::Report& r) { return Outcome{r.json(), r.ok() ? 0 : 1}; };
        auto* b = op(m, "biembeddable", "bi-embeddable but not elementarily equivalent", [this, report] {
            auto ms = a_path.empty() ? SequenceDescriptor::geometric(1, 4) : io::sequence_from_json(io::read_json(a_path));
            auto ns = b_path.empty() ? SequenceDescriptor::geometric(2, 4) : io::sequence_from_json(io::read_json(b_path));
            return report(scenario::biembeddable(intervals, ms, ns, g.seed));
        });
        b->add_option("--intervals", intervals);
        b->add_option("--m", a_path);
        b->add_option("--n", b_path);
        auto* f = op(m, "family", "almost-disjoint family sharing rank-d types", [this, report] {
            auto base = seq_path.empty() ? SequenceDescriptor::affine(1, 1) : io::sequence_from_json(io::read_json(seq_path));
            return report(scenario::nonconjugate_family(count, rank, base, end ? end : 14, depth == 2 && !depth_set ? 1 : depth));
        });
        f->add_option("--count", count);
        f->add_option("--rank", rank);
        f->add_option("--base", seq_path, "base sequence descriptor");
        f->add_option("--window", end, "indices scanned for the type class (default 14)");
        f->add_option("--term-depth", depth, "term depth of the types (default 1)")->each([this](const std::string&) { depth_set = true; });
        op(m, "parity", "index parity table", [report] { return report(scenario::parity_table()); });
    }
};

} // namespace

int main(int argc, char** argv)
{
    App app;
    try {
        app.cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.cli.exit(e) == 0 ? 0 : 2;
    }
    try {
        Outcome out = app.action();
        Json report = out.report.contains("schema_version") ? out.report : stamp(out.report, app.command);
        if (app.g.json)
            std::cout << report.dump(2) << "\n";
        else
            print_human(report);
        return out.code;
    } catch (const fm::BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
