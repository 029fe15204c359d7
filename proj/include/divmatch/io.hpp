#pragma once

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "graph.hpp"

namespace divmatch {

/// A malformed graph or matching file. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

namespace detail {

inline bool blank_or_comment(const std::string& s) {
    auto pos = s.find_first_not_of(" \t\r");
    return pos == std::string::npos || s[pos] == '#';
}

/// Reads exactly `count` integers from the line, nothing else allowed.
inline bool read_ints(const std::string& line, long long* out, int count) {
    std::istringstream in(line);
    for (int i = 0; i < count; ++i) {
        if (!(in >> out[i])) return false;
    }
    std::string rest;
    return !(in >> rest);
}

}  // namespace detail

/**
 * Graph file: '#' comment lines and blank lines are ignored anywhere; the
 * first data line is "n m", followed by exactly m lines "u v" with 1-based
 * vertex indices.
 */
inline BipartiteGraph parse_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    long long header[2];
    bool have_header = false;
    std::size_t expected = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank_or_comment(line)) continue;
        if (!have_header) {
            if (!detail::read_ints(line, header, 2)) throw ParseError(lineno, "expected header \"n m\"");
            if (header[0] < 0) throw ParseError(lineno, "n must be non-negative");
            if (header[1] < 0 || header[1] > header[0] * header[0]) {
                throw ParseError(lineno, "edge count " + std::to_string(header[1]) + " is outside [0, n^2]");
            }
            have_header = true;
            expected = static_cast<std::size_t>(header[1]);
            edges.reserve(expected);
            continue;
        }
        if (edges.size() == expected) throw ParseError(lineno, "unexpected data after " + std::to_string(expected) + " edges");
        long long uv[2];
        if (!detail::read_ints(line, uv, 2)) throw ParseError(lineno, "expected edge \"u v\"");
        if (uv[0] < 1 || uv[0] > header[0] || uv[1] < 1 || uv[1] > header[0]) {
            throw ParseError(lineno, "vertex index out of range [1, " + std::to_string(header[0]) + "]");
        }
        Edge e{static_cast<Vertex>(uv[0] - 1), static_cast<Vertex>(uv[1] - 1)};
        if (!seen.insert(e).second) {
            throw ParseError(lineno, "duplicate edge (" + std::to_string(uv[0]) + ", " + std::to_string(uv[1]) + ")");
        }
        edges.push_back(e);
    }
    if (!have_header) throw ParseError(lineno, "missing header \"n m\"");
    if (edges.size() != expected) {
        throw ParseError(lineno, "expected " + std::to_string(expected) + " edges, found " + std::to_string(edges.size()));
    }
    return BipartiteGraph(static_cast<Vertex>(header[0]), std::move(edges));
}

inline BipartiteGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline BipartiteGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open graph file '" + path + "'");
    return parse_graph(in);
}

inline std::string serialize_graph(const BipartiteGraph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

/// 1-based [[u, v], ...] list.
inline nlohmann::ordered_json pairs_json(const Matching& m) {
    auto arr = nlohmann::ordered_json::array();
    for (Vertex u = 0; u < m.n(); ++u) arr.push_back({u + 1, m.assign[u] + 1});
    return arr;
}

inline nlohmann::ordered_json matching_json(const Matching& m) {
    nlohmann::ordered_json j;
    j["n"] = m.n();
    j["pairs"] = pairs_json(m);
    return j;
}

inline std::string serialize_matching(const Matching& m) { return matching_json(m).dump() + "\n"; }

/**
 * Matching document: {"n": <int>, "pairs": [[u, v], ...]} with 1-based
 * indices. Each u may appear at most once; U-vertices that never appear stay
 * kUnassigned so validate_matching can report them.
 */
inline Matching parse_matching(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("matching document is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw ParseError(0, "matching document needs an integer field \"n\"");
    }
    if (!j.contains("pairs") || !j["pairs"].is_array()) throw ParseError(0, "matching document needs an array field \"pairs\"");
    long long n = j["n"].get<long long>();
    if (n < 0) throw ParseError(0, "\"n\" must be non-negative");
    std::vector<Vertex> assign(static_cast<std::size_t>(n), kUnassigned);
    for (const auto& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
            throw ParseError(0, "each pair must be [u, v] with integer entries");
        }
        long long u = p[0].get<long long>(), v = p[1].get<long long>();
        if (u < 1 || u > n || v < 1 || v > n) {
            throw ParseError(0, "pair [" + std::to_string(u) + ", " + std::to_string(v) + "] is out of range");
        }
        if (assign[u - 1] != kUnassigned) throw ParseError(0, "u" + std::to_string(u) + " appears in more than one pair");
        assign[u - 1] = static_cast<Vertex>(v - 1);
    }
    return Matching(std::move(assign));
}

inline Matching load_matching(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open matching file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matching(buf.str());
}

}  // namespace divmatch
