#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finquo/fmcheck/hintikka.hpp"
#include "finquo/sequence.hpp"
#include "finquo/tri.hpp"

namespace finquo::fm {

enum class CertificateKind { PeriodicTail, WindowOnly, Finite };

inline const char* to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::PeriodicTail: return "PeriodicTail";
    case CertificateKind::WindowOnly: return "WindowOnly";
    case CertificateKind::Finite: return "Finite";
    }
    return "?";
}

struct LimitTypeSet {
    int rank = 0;
    int depth = default_term_depth;
    /// distinct types, ordered by content hash
    std::vector<HintikkaType> types;
    CertificateKind certificate = CertificateKind::WindowOnly;
    std::size_t period = 0;
    std::size_t onset = 0;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
    /// type observed at each window index
    std::vector<std::pair<std::size_t, HintikkaType>> observed;
    std::string note;
};

struct LimitOptions {
    std::size_t begin = 0;
    /// 0 selects |prefix| + max(12, 3 * value period)
    std::size_t end = 0;
    int depth = default_term_depth;
    Budget budget;
};

namespace detail {

inline std::size_t auto_window_end(const SequenceDescriptor& s)
{
    const std::size_t P = s.value_period().value_or(1);
    return s.prefix().size() + std::max<std::size_t>(12, 3 * P);
}

inline HintikkaType type_at(const SequenceDescriptor& s, std::size_t k, int d, const LimitOptions& opt)
{
    auto v = s.value_u64(k);
    if (!v || *v > 64)
        throw BudgetExceeded("value at index " + std::to_string(k) + " (" + s.value(k).str() +
                             ") is too large for a rank-" + std::to_string(d) + " type");
    return hintikka_type(static_cast<std::uint32_t>(*v), d, opt.depth, opt.budget);
}

inline std::size_t minimal_period(const std::vector<std::uint32_t>& ids)
{
    for (std::size_t p = 1; p <= ids.size(); ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < ids.size() && ok; ++i)
            ok = ids[i] == ids[i + p];
        if (ok)
            return p;
    }
    return ids.size();
}

inline void sort_types(std::vector<HintikkaType>& ts)
{
    std::sort(ts.begin(), ts.end(), [](const HintikkaType& a, const HintikkaType& b) {
        return a.content != b.content ? a.content < b.content : a.id < b.id;
    });
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

} // namespace detail

/// Rank-d types recurring along the tail of a cycle-length sequence.
inline LimitTypeSet limit_type_set(const SequenceDescriptor& s, int d, const LimitOptions& opt = {})
{
    LimitTypeSet r;
    r.rank = d;
    r.depth = opt.depth;
    if (!s.has_tail()) {
        r.certificate = CertificateKind::Finite;
        r.note = "finite sequence: no limit points";
        return r;
    }
    const std::size_t onset = s.prefix().size();
    r.window_begin = std::max(opt.begin, onset);
    r.window_end = opt.end ? opt.end : detail::auto_window_end(s);
    if (r.window_end <= r.window_begin)
        throw std::invalid_argument("window contains no tail positions");
    std::vector<std::uint32_t> ids;
    for (std::size_t k = r.window_begin; k < r.window_end; ++k) {
        auto t = detail::type_at(s, k, d, opt);
        r.observed.emplace_back(k, t);
        r.types.push_back(t);
        ids.push_back(t.id);
    }
    detail::sort_types(r.types);
    const std::size_t p = detail::minimal_period(ids);
    const std::size_t len = ids.size();
    r.onset = onset;

    if (d == 0) {
        if (r.types.size() != 1)
            throw std::logic_error("rank-0 empty-tuple types differ along the window");
        r.certificate = CertificateKind::PeriodicTail;
        r.period = 1;
        r.note = "rank-0 type of the empty tuple is the same for every n >= 1";
        return r;
    }
    if (auto P = s.value_period()) {
        if (*P % p == 0 && len >= std::max(3 * p, *P)) {
            r.certificate = CertificateKind::PeriodicTail;
            r.period = p;
            r.note = "type period " + std::to_string(p) + " divides the tail value period " + std::to_string(*P) +
                     " and was observed over " + std::to_string(len / p) +
                     " repetitions (engineering criterion, not a proof of the limit)";
            return r;
        }
        r.certificate = CertificateKind::WindowOnly;
        r.note = "window too short to confirm a period compatible with the tail";
        return r;
    }
    r.certificate = CertificateKind::WindowOnly;
    r.note = "growing tail: types of unboundedly large factors cannot be certified from a window";
    return r;
}

inline std::string describe_types(const std::vector<HintikkaType>& ts)
{
    std::string s = "{";
    for (std::size_t i = 0; i < ts.size(); ++i)
        s += (i ? "," : "") + ts[i].hash();
    return s + "}";
}

/// Rank-d elementary equivalence of the reduced products mod Fin.
inline Tri reduced_product_ee(const SequenceDescriptor& a, const SequenceDescriptor& b, int d,
                              const LimitOptions& opt_a = {}, const LimitOptions& opt_b = {})
{
    LimitTypeSet la, lb;
    try {
        la = limit_type_set(a, d, opt_a);
        lb = limit_type_set(b, d, opt_b);
    } catch (const BudgetExceeded& e) {
        return Tri::unknown("budget", e.what());
    }
    using K = CertificateKind;
    const bool fa = la.certificate == K::Finite, fb = lb.certificate == K::Finite;
    if (fa && fb)
        return Tri::yes("limit-types", "both sequences finite");
    if (fa || fb)
        return Tri::no("limit-types", "only one sequence has limit types");
    if (la.certificate == K::PeriodicTail && lb.certificate == K::PeriodicTail) {
        if (la.types == lb.types)
            return Tri::yes("limit-types", "rank-" + std::to_string(d) + " limit types agree: " +
                                               describe_types(la.types));
        for (const auto& t : la.types)
            if (std::find(lb.types.begin(), lb.types.end(), t) == lb.types.end())
                return Tri::no("rank-d-type", "type " + t.hash() + " recurs in the first tail only");
        for (const auto& t : lb.types)
            if (std::find(la.types.begin(), la.types.end(), t) == la.types.end())
                return Tri::no("rank-d-type", "type " + t.hash() + " recurs in the second tail only");
    }
    return Tri::unknown("window-only", "limit type sets lack periodic-tail certificates");
}

struct GhasemiClass {
    HintikkaType type;
    std::vector<std::size_t> indices;
};

struct GhasemiResult {
    std::vector<std::size_t> indices;
    std::vector<GhasemiClass> classes;
};

/// Pigeonhole window indices by rank-d type; the largest class is returned
/// (ties go to the class met first).
inline GhasemiResult ghasemi_subsequence(const SequenceDescriptor& s, int d, std::size_t begin, std::size_t end,
                                         int depth = default_term_depth, const Budget& budget = {})
{
    if (auto L = s.length())
        end = std::min(end, *L);
    if (end <= begin)
        throw std::invalid_argument("empty window");
    LimitOptions opt;
    opt.depth = depth;
    opt.budget = budget;
    GhasemiResult r;
    std::map<std::uint32_t, std::size_t> where;
    for (std::size_t k = begin; k < end; ++k) {
        auto t = detail::type_at(s, k, d, opt);
        auto it = where.find(t.id);
        if (it == where.end()) {
            where[t.id] = r.classes.size();
            r.classes.push_back({t, {k}});
        } else {
            r.classes[it->second].indices.push_back(k);
        }
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < r.classes.size(); ++c)
        if (r.classes[c].indices.size() > r.classes[best].indices.size())
            best = c;
    r.indices = r.classes[best].indices;
    return r;
}

} // namespace finquo::fm
