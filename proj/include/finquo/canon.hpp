#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finquo/sequence.hpp"
#include "finquo/spectrum.hpp"
#include "finquo/tri.hpp"

namespace finquo {

/// f ~ R(f) ⊕ Z(f) ⊕ S(f).
struct Decomposition {
    SequenceDescriptor rotary;
    /// k > 0: k N-like orbits; k < 0: |k| reverse N-like orbits
    std::int64_t sPart = 0;
    Card zPart;

    bool operator==(const Decomposition&) const = default;
};

inline Decomposition decompose(const OrbitSpectrum& s)
{
    Decomposition d;
    if (s.cycles.has_tail())
        d.rotary = s.cycles;
    d.sPart = index(s);
    d.zPart = s.zLike + Card::finite(std::min(s.nLike, s.revNLike));
    return d;
}

inline std::string describe_s_part(std::int64_t k)
{
    if (k == 0)
        return "empty";
    if (k > 0)
        return "s_{" + std::to_string(k) + "N}";
    return "s_{" + std::to_string(-k) + "N}^-1";
}

/// Representative of a tail that is unchanged by deleting finitely many
/// initial terms. Residue tails are returned as they are.
inline Tail canonical_tail(const Tail& t)
{
    if (auto c = std::get_if<ConstantTail>(&t))
        return AffineTail{0, c->c};
    if (auto a = std::get_if<AffineTail>(&t)) {
        if (a->a == 0)
            return *a;
        return AffineTail{a->a, ((a->b - 1) % a->a) + 1};
    }
    if (auto g = std::get_if<GeometricTail>(&t)) {
        BigInt c = g->a;
        while (c % g->r == 0)
            c /= g->r;
        return GeometricTail{c, g->r};
    }
    if (std::holds_alternative<FactorialTail>(t))
        return FactorialTail{0};
    return t;
}

inline std::string describe_tail(const Tail& t)
{
    return SequenceDescriptor({}, t).describe().substr(3);
}

namespace detail {

enum class Growth { bounded, linear, exponential, factorial };

inline Growth growth_of(const Tail& t)
{
    if (std::holds_alternative<AffineTail>(t))
        return std::get<AffineTail>(t).a == 0 ? Growth::bounded : Growth::linear;
    if (std::holds_alternative<GeometricTail>(t))
        return Growth::exponential;
    if (std::holds_alternative<FactorialTail>(t))
        return Growth::factorial;
    return Growth::bounded;
}

inline const char* growth_name(Growth g)
{
    switch (g) {
    case Growth::bounded: return "bounded";
    case Growth::linear: return "linear";
    case Growth::exponential: return "exponential";
    case Growth::factorial: return "factorial";
    }
    return "?";
}

/// Residues mod m occurring infinitely often along the tail.
inline std::set<std::uint64_t> recurring_residues(const SequenceDescriptor& s, std::uint64_t m)
{
    auto p = s.tail_residues(m);
    return {p.cycle.begin(), p.cycle.end()};
}

} // namespace detail

/// Equality of cycle-length multisets modulo finitely many entries.
inline Tri rotary_equivalent(const SequenceDescriptor& a, const SequenceDescriptor& b)
{
    if (!a.has_tail() && !b.has_tail())
        return Tri::yes("finite", "both cycle multisets are finite");
    if (a.has_tail() != b.has_tail())
        return Tri::no("cardinality", "one cycle multiset is finite, the other infinite");
    if (a.tail() == b.tail())
        return Tri::yes("identical-tail", describe_tail(a.tail()));

    const bool ra = std::holds_alternative<ResidueTail>(a.tail());
    const bool rb = std::holds_alternative<ResidueTail>(b.tail());
    if (ra || rb) {
        // every table entry recurs infinitely often, so a residue the other side
        // hits only finitely often separates the multisets
        const auto& rt = std::get<ResidueTail>(ra ? a.tail() : b.tail());
        const auto& rs = ra ? a : b;
        const auto& other = ra ? b : a;
        const bool other_rt = std::holds_alternative<ResidueTail>(other.tail());
        if (!other_rt || std::get<ResidueTail>(other.tail()).m % rt.m == 0) {
            auto mine = detail::recurring_residues(rs, rt.m);
            auto theirs = detail::recurring_residues(other, rt.m);
            if (mine != theirs)
                return Tri::no("arithmetic-mod-m",
                               "recurring residues mod " + std::to_string(rt.m) + " differ between " +
                                   describe_tail(a.tail()) + " and " + describe_tail(b.tail()));
        }
        return Tri::unknown("residue-underdetermined", "residue table underdetermines values");
    }

    const Tail ca = canonical_tail(a.tail());
    const Tail cb = canonical_tail(b.tail());
    if (ca == cb)
        return Tri::yes("canonical-tail", "shift-invariant forms agree: " + describe_tail(ca));

    const auto ga = detail::growth_of(ca);
    const auto gb = detail::growth_of(cb);
    if (ga != gb)
        return Tri::no("growth", std::string("growth classes differ: ") + detail::growth_name(ga) + " vs " +
                                     detail::growth_name(gb));
    switch (ga) {
    case detail::Growth::bounded:
        return Tri::no("value-set", "distinct constants recur infinitely often: " + describe_tail(ca) + " vs " +
                                        describe_tail(cb));
    case detail::Growth::linear: {
        const auto& x = std::get<AffineTail>(ca);
        const auto& y = std::get<AffineTail>(cb);
        if (x.a != y.a)
            return Tri::no("density", "slopes differ: " + to_string(x.a) + " vs " + to_string(y.a));
        return Tri::no("arithmetic-mod-m", "residue classes mod " + to_string(x.a) + " differ");
    }
    case detail::Growth::exponential: {
        const auto& x = std::get<GeometricTail>(ca);
        const auto& y = std::get<GeometricTail>(cb);
        if (x.r != y.r)
            return Tri::no("ratio", "consecutive ratios differ: " + to_string(x.r) + " vs " + to_string(y.r));
        return Tri::no("value-set", "value sets disjoint above a finite prefix: " + describe_tail(ca) + " vs " +
                                        describe_tail(cb));
    }
    case detail::Growth::factorial: break;
    }
    return Tri::unknown("incomparable", "tail generators incomparable");
}

inline Tri trivially_conjugate(const OrbitSpectrum& a, const OrbitSpectrum& b)
{
    const auto da = decompose(a);
    const auto db = decompose(b);
    Tri s = da.sPart == db.sPart
                ? Tri::yes("s-part", describe_s_part(da.sPart))
                : Tri::no("index", "S parts differ: " + describe_s_part(da.sPart) + " vs " + describe_s_part(db.sPart));
    Tri z = da.zPart == db.zPart
                ? Tri::yes("z-part", "Z part " + da.zPart.str())
                : Tri::no("z-part", "Z parts differ: " + da.zPart.str() + " vs " + db.zPart.str());
    return tri_and(tri_and(s, z), rotary_equivalent(da.rotary, db.rotary));
}

inline Card component_count(const OrbitSpectrum& s)
{
    return Card::finite(s.nLike + s.revNLike) + 2 * s.zLike;
}

/// Components pair up exactly when the index is even.
inline bool star_property(const OrbitSpectrum& s)
{
    const bool star = parity(s) == 0;
    const auto c = component_count(s);
    if (c.is_finite() && (c.k % 2 == 0) != star)
        throw std::logic_error("component count parity disagrees with index parity");
    return star;
}

/// Reduct with S part in {empty, s}: reverse N-like orbits become N-like and
/// pairs of one-sided orbits merge into Z-like ones.
inline OrbitSpectrum ch_normal_form(const OrbitSpectrum& s)
{
    const auto d = decompose(s);
    const std::uint64_t k = static_cast<std::uint64_t>(d.sPart < 0 ? -d.sPart : d.sPart);
    OrbitSpectrum r;
    r.cycles = s.cycles;
    r.nLike = k % 2;
    r.zLike = d.zPart + Card::finite(k / 2);
    return r;
}

enum class SaturationClass { Saturated, NotSaturated };

inline const char* to_string(SaturationClass c)
{
    return c == SaturationClass::Saturated ? "Saturated" : "NotSaturated";
}

inline SaturationClass saturation_class(const OrbitSpectrum& s)
{
    return decompose(s).zPart.omega ? SaturationClass::NotSaturated : SaturationClass::Saturated;
}

/// Cycle positions to keep: a subset of the prefix and an arithmetic
/// progression start, start+step, ... of tail positions.
struct OrbitSelector {
    std::vector<std::size_t> prefix;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> tail;

    static OrbitSelector all(const SequenceDescriptor& s)
    {
        OrbitSelector sel;
        sel.prefix.resize(s.prefix().size());
        std::iota(sel.prefix.begin(), sel.prefix.end(), std::size_t{0});
        if (s.has_tail())
            sel.tail = std::pair<std::uint64_t, std::uint64_t>{0, 1};
        return sel;
    }
};

class SelectorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline SequenceDescriptor restrict_sequence(const SequenceDescriptor& s, const OrbitSelector& sel)
{
    std::vector<BigInt> prefix;
    std::set<std::size_t> picked(sel.prefix.begin(), sel.prefix.end());
    for (auto i : picked) {
        if (i >= s.prefix().size())
            throw SelectorError("selector prefix index " + std::to_string(i) + " beyond prefix");
        prefix.push_back(s.prefix()[i]);
    }
    if (!sel.tail || !s.has_tail())
        return SequenceDescriptor::finite(std::move(prefix));
    const auto [start, step] = *sel.tail;
    if (step == 0)
        throw SelectorError("selector step must be positive");
    Tail t = std::visit(
        [&](const auto& tl) -> Tail {
            using T = std::decay_t<decltype(tl)>;
            if constexpr (std::is_same_v<T, ConstantTail>) {
                return tl;
            } else if constexpr (std::is_same_v<T, AffineTail>) {
                return AffineTail{tl.a * step, tl.a * start + tl.b};
            } else if constexpr (std::is_same_v<T, GeometricTail>) {
                return GeometricTail{tl.a * bigpow(tl.r, start), bigpow(tl.r, step)};
            } else if constexpr (std::is_same_v<T, FactorialTail>) {
                if (step != 1)
                    throw SelectorError("factorial tail supports only contiguous selection (step 1)");
                return FactorialTail{tl.offset + start};
            } else if constexpr (std::is_same_v<T, ResidueTail>) {
                const std::size_t L = tl.table.size();
                const std::size_t period = L / std::gcd(L, static_cast<std::size_t>(step % L == 0 ? L : step % L));
                ResidueTail r{tl.m, {}, tl.floor};
                for (std::size_t u = 0; u < period; ++u)
                    r.table.push_back(tl.table[(start + step * u) % L]);
                return r;
            } else {
                return tl;
            }
        },
        s.tail());
    return {std::move(prefix), std::move(t)};
}

/// Restriction of a rotary map to an invariant union of its cycles.
inline OrbitSpectrum restrict_to_orbits(const OrbitSpectrum& s, const OrbitSelector& sel)
{
    if (!s.pure_rotary())
        throw SelectorError("restrict_to_orbits requires a pure rotary spectrum");
    return OrbitSpectrum::rotary(restrict_sequence(s.cycles, sel));
}

} // namespace finquo
