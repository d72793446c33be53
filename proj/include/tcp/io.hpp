/**
 * Serialization: instance / solution / fractional-assignment JSON, segment and
 * polyline CSV, interval lists. Rationals travel as "p/q" strings.
 */
#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcp/arrangement.hpp"
#include "tcp/ip_model.hpp"
#include "tcp/text.hpp"

namespace tcp {

using json = nlohmann::ordered_json;

namespace detail {

inline Rational json_rational(const json& j, const char* what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw error(errc::parse_error, std::string("expected a rational string for ") + what);
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw error(errc::parse_error, e.what());
    }
}

}  // namespace detail

inline json to_json(const Instance& instance) {
    json j;
    j["name"] = instance.name();
    json nodes = json::array();
    for (std::size_t v = 0; v < instance.node_count(); ++v) {
        json node{{"id", v}};
        if (const auto& p = instance.point(static_cast<NodeId>(v))) {
            node["x"] = to_string(p->x);
            node["y"] = to_string(p->y);
        }
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const Edge& e : instance.edges()) edges.push_back(json::array({e.u, e.v, to_string(e.weight)}));
    j["edges"] = std::move(edges);
    json trajectories = json::array();
    for (const Trajectory& t : instance.trajectories()) trajectories.push_back(t.nodes);
    j["trajectories"] = std::move(trajectories);
    if (!instance.overrides().empty()) {
        json ov = json::array();
        for (const auto& [key, w] : instance.overrides()) ov.push_back(json::array({key.first, key.second, to_string(w)}));
        j["weight_overrides"] = std::move(ov);
    }
    if (!instance.meta().empty()) j["meta"] = instance.meta();
    return j;
}

inline Instance instance_from_json(const json& j) {
    return detail::guarded([&] {
        if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") || !j.contains("trajectories"))
            throw error(errc::parse_error, "instance JSON needs nodes, edges and trajectories");
        const auto& nodes = j.at("nodes");
        std::vector<std::optional<Point>> points(nodes.size());
        std::vector<char> seen(nodes.size(), 0);
        for (const auto& node : nodes) {
            const auto id = node.at("id").get<long long>();
            if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || seen[static_cast<std::size_t>(id)])
                throw error(errc::invalid_input, "node ids must be dense and unique");
            seen[static_cast<std::size_t>(id)] = 1;
            if (node.contains("x") != node.contains("y")) throw error(errc::invalid_input, "node with only one coordinate");
            if (node.contains("x"))
                points[static_cast<std::size_t>(id)] =
                    Point{detail::json_rational(node.at("x"), "x"), detail::json_rational(node.at("y"), "y")};
        }
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw error(errc::parse_error, "edge must be [u, v, weight]");
            edges.push_back(Edge{e[0].get<NodeId>(), e[1].get<NodeId>(), detail::json_rational(e[2], "edge weight")});
        }
        std::vector<std::vector<NodeId>> trajectories;
        for (const auto& t : j.at("trajectories")) trajectories.push_back(t.get<std::vector<NodeId>>());
        WeightOverrides overrides;
        if (j.contains("weight_overrides"))
            for (const auto& o : j.at("weight_overrides"))
                overrides[{o.at(0).get<TrajId>(), o.at(1).get<std::int32_t>()}] = detail::json_rational(o.at(2), "override");
        std::map<std::string, std::string> meta;
        if (j.contains("meta")) meta = j.at("meta").get<std::map<std::string, std::string>>();
        return Instance(j.value("name", std::string("instance")), std::move(points), std::move(edges),
                        std::move(trajectories), std::move(overrides), std::move(meta));
    });
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot open " + path);
    return detail::guarded([&] { return json::parse(in); });
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::io_error, "cannot write " + path);
    out << text;
    if (!out) throw error(errc::io_error, "failed writing " + path);
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

inline void save_instance(const Instance& instance, const std::string& path) {
    write_text_file(path, to_json(instance).dump(2) + "\n");
}

/// Solution JSON with the context needed to re-evaluate it.
struct SolutionRecord {
    std::string instance;
    int k = 0;
    std::vector<NodeId> portals;
    Rational value{0};
    bool optimal = false;
    std::string algorithm;
    std::optional<std::uint64_t> seed;
};

inline json to_json(const SolutionRecord& r) {
    json j{{"instance", r.instance}, {"k", r.k}, {"portals", r.portals}, {"value", to_string(r.value)},
           {"optimal", r.optimal}, {"algorithm", r.algorithm}};
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

inline SolutionRecord solution_from_json(const json& j) {
    return detail::guarded([&] {
        SolutionRecord r;
        r.portals = j.at("portals").get<std::vector<NodeId>>();
        r.instance = j.value("instance", std::string());
        r.k = j.value("k", static_cast<int>(r.portals.size()));
        if (j.contains("value")) r.value = detail::json_rational(j.at("value"), "value");
        r.optimal = j.value("optimal", false);
        r.algorithm = j.value("algorithm", std::string());
        if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    });
}

inline json to_json(const FractionalAssignment& a) {
    json y = json::object(), x = json::object();
    for (const auto& [v, value] : a.y) y[std::to_string(v)] = to_string(value);
    for (const auto& [key, value] : a.x) x[std::to_string(key.first) + ":" + std::to_string(key.second)] = to_string(value);
    return json{{"y", std::move(y)}, {"x", std::move(x)}};
}

inline FractionalAssignment assignment_from_json(const json& j) {
    return detail::guarded([&] {
        FractionalAssignment a;
        if (j.contains("y"))
            for (const auto& [key, value] : j.at("y").items()) a.y[std::stoi(key)] = detail::json_rational(value, "y");
        if (j.contains("x"))
            for (const auto& [key, value] : j.at("x").items()) {
                const auto colon = key.find(':');
                if (colon == std::string::npos) throw error(errc::parse_error, "x keys look like \"tid:edgeIdx\"");
                a.x[{std::stoi(key.substr(0, colon)), std::stoi(key.substr(colon + 1))}] = detail::json_rational(value, "x");
            }
        return a;
    });
}

inline json to_json(const FractionalCheck& c) {
    return json{{"feasible", c.feasible}, {"objective", to_string(c.objective)}, {"violated", c.violated}};
}

/// Segment CSV: "x1,y1,x2,y2" per line. A non-numeric first line is a header;
/// blank lines and lines starting with '#' are skipped.
inline std::vector<Segment> read_segments_csv(std::istream& in) {
    std::vector<Segment> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto f = detail::split_csv(line);
        if (first && (f.empty() || !detail::parses_as_rational(f[0]))) {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 4) throw error(errc::parse_error, "segment line needs 4 fields: " + line);
        out.push_back({{parse_rational(f[0]), parse_rational(f[1])}, {parse_rational(f[2]), parse_rational(f[3])}});
    }
    return out;
}

/// Polyline CSV "trace_id,lat,lon[,timestamp]"; x = lon, y = lat. Rows of a trace
/// keep file order; traces are ordered by first appearance.
inline std::vector<Polyline> read_polylines_csv(std::istream& in) {
    std::vector<Polyline> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto f = detail::split_csv(line);
        if (first && (f.size() < 3 || !detail::parses_as_rational(f[1]))) {
            first = false;
            continue;
        }
        first = false;
        if (f.size() < 3 || f.size() > 4) throw error(errc::parse_error, "polyline line needs 3 or 4 fields: " + line);
        auto [it, inserted] = index.emplace(f[0], out.size());
        if (inserted) out.emplace_back();
        out[it->second].push_back(Point{parse_rational(f[2]), parse_rational(f[1])});
    }
    return out;
}

inline json intervals_to_json(const std::vector<Interval1D>& intervals) {
    json list = json::array();
    for (const auto& iv : intervals) list.push_back(json::array({to_string(iv.a), to_string(iv.b)}));
    return json{{"intervals", std::move(list)}};
}

inline std::vector<Interval1D> intervals_from_json(const json& j) {
    return detail::guarded([&] {
        std::vector<Interval1D> out;
        for (const auto& iv : j.at("intervals"))
            out.push_back({detail::json_rational(iv.at(0), "a"), detail::json_rational(iv.at(1), "b")});
        return out;
    });
}

}  // namespace tcp
