#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "finquo/fmcheck/structure.hpp"

namespace finquo::fm {

/// Hash-consed rank-d type of a structure with a tuple. Equal content gets
/// the same id, so comparing types is comparing ids.
struct HintikkaType {
    std::uint32_t id = 0;
    int rank = 0;
    int depth = 0;
    std::uint64_t content = 0;

    std::string hash() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(content));
        return "ht:D" + std::to_string(depth) + ":r" + std::to_string(rank) + ":" + buf;
    }
    bool operator==(const HintikkaType& o) const { return id == o.id; }
    bool operator!=(const HintikkaType& o) const { return id != o.id; }
};

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

class TypeTable {
public:
    struct Key {
        int rank;
        int depth;
        int arity;
        std::vector<std::uint64_t> payload;
        bool operator<(const Key& o) const
        {
            return std::tie(rank, depth, arity, payload) < std::tie(o.rank, o.depth, o.arity, o.payload);
        }
    };

    /// Atomic insert-if-absent.
    HintikkaType intern(Key key, std::uint64_t content)
    {
        {
            std::shared_lock lock(mu_);
            auto it = ids_.find(key);
            if (it != ids_.end())
                return entries_[it->second];
        }
        std::unique_lock lock(mu_);
        auto it = ids_.find(key);
        if (it != ids_.end())
            return entries_[it->second];
        HintikkaType t{static_cast<std::uint32_t>(entries_.size()), key.rank, key.depth, content};
        ids_.emplace(std::move(key), t.id);
        entries_.push_back(t);
        return t;
    }

    HintikkaType get(std::uint32_t id) const
    {
        std::shared_lock lock(mu_);
        return entries_.at(id);
    }

    std::size_t size() const
    {
        std::shared_lock lock(mu_);
        return entries_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::map<Key, std::uint32_t> ids_;
    std::vector<HintikkaType> entries_;
};

inline TypeTable& type_table()
{
    static TypeTable table;
    return table;
}

class TypeBuilder {
public:
    TypeBuilder(const FiniteDynSys& M, int depth)
        : M_(M)
        , depth_(depth)
    {
    }

    HintikkaType of(std::vector<Elem>& tuple, int rank)
    {
        if (rank == 0)
            return atomic(tuple);
        std::vector<std::uint32_t> ids;
        std::vector<std::uint64_t> contents;
        const auto& dom = tuple.empty() ? reps() : universe();
        tuple.push_back(0);
        for (Elem x : dom) {
            tuple.back() = x;
            auto t = of(tuple, rank - 1);
            ids.push_back(t.id);
        }
        tuple.pop_back();
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        auto& table = type_table();
        for (auto id : ids)
            contents.push_back(table.get(id).content);
        std::sort(contents.begin(), contents.end());
        std::uint64_t h = 14695981039346656037ull;
        h = fnv1a(h, static_cast<std::uint64_t>(rank));
        h = fnv1a(h, static_cast<std::uint64_t>(depth_));
        h = fnv1a(h, tuple.size());
        for (auto c : contents)
            h = fnv1a(h, c);
        TypeTable::Key key{rank, depth_, static_cast<int>(tuple.size()), {ids.begin(), ids.end()}};
        return table.intern(std::move(key), h);
    }

private:
    const std::vector<Elem>& universe()
    {
        if (universe_.empty())
            for (std::size_t x = 0; x < (std::size_t{1} << M_.size()); ++x)
                universe_.push_back(x);
        return universe_;
    }
    const std::vector<Elem>& reps()
    {
        if (reps_.empty())
            reps_ = M_.orbit_representatives();
        return reps_;
    }

    /// Set of point signatures: bit (j, i) says the point lies in α^i(tuple[j]), |i| <= depth.
    HintikkaType atomic(const std::vector<Elem>& tuple)
    {
        std::vector<Elem> shifted;
        for (Elem a : tuple)
            for (int i = -depth_; i <= depth_; ++i)
                shifted.push_back(M_.apow(a, i));
        std::vector<std::uint64_t> sigs;
        sigs.reserve(M_.size());
        for (std::uint32_t p = 0; p < M_.size(); ++p) {
            std::uint64_t s = 0;
            for (std::size_t b = 0; b < shifted.size(); ++b)
                s |= ((shifted[b] >> p) & 1u) << b;
            sigs.push_back(s);
        }
        std::sort(sigs.begin(), sigs.end());
        sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());
        std::uint64_t h = 14695981039346656037ull;
        h = fnv1a(h, 0);
        h = fnv1a(h, static_cast<std::uint64_t>(depth_));
        h = fnv1a(h, tuple.size());
        for (auto s : sigs)
            h = fnv1a(h, s);
        TypeTable::Key key{0, depth_, static_cast<int>(tuple.size()), std::move(sigs)};
        return type_table().intern(std::move(key), h);
    }

    const FiniteDynSys& M_;
    int depth_;
    std::vector<Elem> universe_;
    std::vector<Elem> reps_;
};

} // namespace detail

constexpr int default_term_depth = 2;

/// Rank-d type of M with the empty tuple; term depth bounds the α-reach of atomic facts.
inline HintikkaType hintikka_type(const FiniteDynSys& M, int d, int depth = default_term_depth,
                                  const Budget& budget = {})
{
    if (d < 0 || depth < 0)
        throw std::invalid_argument("rank and term depth must be non-negative");
    if (d > 0) {
        if (M.size() > budget.max_points)
            throw BudgetExceeded("universe 2^" + std::to_string(M.size()) + " exceeds the limit 2^" +
                                 std::to_string(budget.max_points));
        if (std::pow(2.0, static_cast<double>(M.size()) * d) > budget.max_steps)
            throw BudgetExceeded("type computation needs (2^" + std::to_string(M.size()) + ")^" +
                                 std::to_string(d) + " extensions, over budget");
    }
    if (static_cast<std::uint64_t>(d) * (2 * depth + 1) > 64)
        throw std::invalid_argument("rank * (2*depth+1) must be at most 64");
    detail::TypeBuilder b(M, depth);
    std::vector<Elem> tuple;
    return b.of(tuple, d);
}

inline HintikkaType hintikka_type(std::uint32_t n, int d, int depth = default_term_depth, const Budget& budget = {})
{
    return hintikka_type(FiniteDynSys::single(n), d, depth, budget);
}

inline bool ef_equal(std::uint32_t n, std::uint32_t m, int d, int depth = default_term_depth,
                     const Budget& budget = {})
{
    return hintikka_type(n, d, depth, budget) == hintikka_type(m, d, depth, budget);
}

} // namespace finquo::fm
