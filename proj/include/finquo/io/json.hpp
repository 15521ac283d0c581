#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "finquo/digraph.hpp"
#include "finquo/spectrum.hpp"
#include "finquo/tri.hpp"
#include "finquo/window_map.hpp"

namespace finquo::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact integers travel as JSON numbers up to 2^53 and as decimal strings beyond.
inline Json big_to_json(const BigInt& v)
{
    if (v >= 0 && v <= BigInt(1) << 53)
        return static_cast<std::uint64_t>(v);
    return v.str();
}

inline BigInt big_from_json(const Json& j)
{
    if (j.is_number_unsigned())
        return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer())
        return BigInt(j.get<std::int64_t>());
    if (j.is_string())
        return parse_bigint(j.get<std::string>());
    throw FormatError("expected an integer, got " + j.dump());
}

inline std::uint64_t u64_from_json(const Json& j, const char* what)
{
    auto v = to_u64(big_from_json(j));
    if (!v)
        throw FormatError(std::string(what) + " must fit 64 bits");
    return *v;
}

inline Json to_json(const SequenceDescriptor& s)
{
    Json prefix = Json::array();
    for (const auto& v : s.prefix())
        prefix.push_back(big_to_json(v));
    Json tail = std::visit(
        [](const auto& t) -> Json {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, EmptyTail>)
                return {{"kind", "Empty"}};
            else if constexpr (std::is_same_v<T, ConstantTail>)
                return {{"kind", "Constant"}, {"c", big_to_json(t.c)}};
            else if constexpr (std::is_same_v<T, AffineTail>)
                return {{"kind", "Affine"}, {"a", big_to_json(t.a)}, {"b", big_to_json(t.b)}};
            else if constexpr (std::is_same_v<T, GeometricTail>)
                return {{"kind", "Geometric"}, {"a", big_to_json(t.a)}, {"r", big_to_json(t.r)}};
            else if constexpr (std::is_same_v<T, FactorialTail>)
                return {{"kind", "Factorial"}, {"offset", t.offset}};
            else
                return {{"kind", "ResidueTable"}, {"m", t.m}, {"table", t.table}, {"floor", big_to_json(t.floor)}};
        },
        s.tail());
    return {{"prefix", prefix}, {"tail", tail}};
}

inline SequenceDescriptor sequence_from_json(const Json& j)
{
    if (j.is_array()) {
        std::vector<BigInt> vs;
        for (const auto& x : j)
            vs.push_back(big_from_json(x));
        return SequenceDescriptor::finite(std::move(vs));
    }
    if (!j.is_object())
        throw FormatError("sequence descriptor must be an object or an array");
    std::vector<BigInt> prefix;
    if (j.contains("prefix"))
        for (const auto& x : j.at("prefix"))
            prefix.push_back(big_from_json(x));
    if (!j.contains("tail"))
        return SequenceDescriptor::finite(std::move(prefix));
    const auto& t = j.at("tail");
    const auto kind = t.at("kind").get<std::string>();
    Tail tail;
    if (kind == "Empty")
        tail = EmptyTail{};
    else if (kind == "Constant")
        tail = ConstantTail{big_from_json(t.at("c"))};
    else if (kind == "Affine")
        tail = AffineTail{big_from_json(t.at("a")), big_from_json(t.at("b"))};
    else if (kind == "Geometric")
        tail = GeometricTail{big_from_json(t.at("a")), big_from_json(t.at("r"))};
    else if (kind == "Factorial")
        tail = FactorialTail{t.contains("offset") ? u64_from_json(t.at("offset"), "offset") : 0};
    else if (kind == "ResidueTable") {
        ResidueTail r;
        r.m = u64_from_json(t.at("m"), "m");
        for (const auto& x : t.at("table"))
            r.table.push_back(u64_from_json(x, "table entry"));
        if (t.contains("floor"))
            r.floor = big_from_json(t.at("floor"));
        tail = r;
    } else
        throw FormatError("unknown tail kind '" + kind + "'");
    return SequenceDescriptor(std::move(prefix), std::move(tail));
}

inline Json to_json(const Card& c)
{
    if (c.omega)
        return "omega";
    return c.k;
}

inline Card card_from_json(const Json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "omega")
            return Card::infinite();
        throw FormatError("cardinal must be a natural or \"omega\"");
    }
    return Card::finite(u64_from_json(j, "cardinal"));
}

inline Json to_json(const OrbitSpectrum& s)
{
    return {{"cycles", to_json(s.cycles)},
            {"nLike", s.nLike},
            {"revNLike", s.revNLike},
            {"zLike", to_json(s.zLike)},
            {"finitePaths", s.finitePaths}};
}

inline OrbitSpectrum spectrum_from_json(const Json& j)
{
    OrbitSpectrum s;
    if (j.contains("cycles"))
        s.cycles = sequence_from_json(j.at("cycles"));
    if (j.contains("nLike"))
        s.nLike = u64_from_json(j.at("nLike"), "nLike");
    if (j.contains("revNLike"))
        s.revNLike = u64_from_json(j.at("revNLike"), "revNLike");
    if (j.contains("zLike"))
        s.zLike = card_from_json(j.at("zLike"));
    if (j.contains("finitePaths"))
        for (const auto& x : j.at("finitePaths"))
            s.finitePaths.push_back(u64_from_json(x, "path length"));
    return s;
}

inline Json to_json(const WindowMap& f)
{
    Json pairs = Json::array();
    for (auto [i, j] : f.pairs())
        pairs.push_back({i, j});
    Json out = {{"n", f.size()}, {"map", pairs}};
    if (!f.exits().empty())
        out["exits"] = f.exits();
    if (!f.entries().empty())
        out["entries"] = f.entries();
    return out;
}

inline WindowMap window_from_json(const Json& j)
{
    const auto n = j.at("n").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& p : j.at("map")) {
        if (!p.is_array() || p.size() != 2)
            throw FormatError("map entries are [i, j] pairs");
        pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
    }
    std::vector<std::size_t> exits, entries;
    if (j.contains("exits"))
        exits = j.at("exits").get<std::vector<std::size_t>>();
    if (j.contains("entries"))
        entries = j.at("entries").get<std::vector<std::size_t>>();
    return WindowMap(n, pairs, exits, entries);
}

inline Json to_json(const Digraph& g)
{
    Json edges = Json::array();
    for (auto [a, b] : g.edges())
        edges.push_back({a, b});
    return {{"vertices", g.size()}, {"edges", edges}};
}

inline Digraph digraph_from_json(const Json& j)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    return Digraph(j.at("vertices").get<std::size_t>(), edges);
}

inline Json to_json(const Tri& t)
{
    return {{"verdict", std::string(to_string(t.verdict))}, {"kind", t.kind}, {"detail", t.detail}};
}

/// Window lengths as a bare array or {"lengths": [...]}.
inline std::vector<std::size_t> lengths_from_json(const Json& j)
{
    const Json& a = j.is_object() ? j.at("lengths") : j;
    auto v = a.get<std::vector<std::size_t>>();
    for (auto L : v)
        if (L == 0)
            throw FormatError("window lengths must be positive");
    return v;
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json read_json(const std::string& path)
{
    try {
        return Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

/// Real matrix from CSV rows or a JSON array of arrays.
inline std::vector<std::vector<double>> read_matrix(const std::string& path)
{
    const auto text = read_text(path);
    std::vector<std::vector<double>> M;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        M = Json::parse(text).get<std::vector<std::vector<double>>>();
    } else {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            std::vector<double> row;
            std::istringstream cells(line);
            std::string cell;
            while (std::getline(cells, cell, ','))
                row.push_back(std::stod(cell));
            M.push_back(std::move(row));
        }
    }
    for (const auto& row : M)
        if (row.size() != M.size())
            throw FormatError(path + ": matrix is not square");
    return M;
}

template <class Row>
std::string to_csv(const std::vector<Row>& rows)
{
    std::ostringstream out;
    out.precision(17);
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << r[i];
        out << "\n";
    }
    return out.str();
}

} // namespace finquo::io
