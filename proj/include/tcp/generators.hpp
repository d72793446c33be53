/**
 * Instance generators: random segment families, 1D intervals and the gadgets
 * from the hardness and integrality-gap constructions. Every generator is a
 * deterministic function of its arguments.
 */
#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tcp/arrangement.hpp"
#include "tcp/random.hpp"
#include "tcp/text.hpp"

namespace tcp {

struct GenConfig {
    int n_seeds = 35;
    Rational connect_probability{1, 10};
    std::uint64_t seed = 0;
    bool incremental_intersections = false;
    std::optional<std::string> seed_points_file;
    /// Cap on the seed pool in incremental mode; 0 means twice the initial pool.
    std::size_t max_seed_pool = 0;
    int max_retries = 16;
};

/// Reads one "x,y" point per line ('#' starts a comment); fields are decimals or
/// p/q. A first line that does not parse as a point is taken as a header.
inline std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot open " + path);
    std::vector<Point> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = detail::split_csv(line);
        const bool header = first && (fields.size() != 2 || !detail::parses_as_rational(fields[0]));
        first = false;
        if (header) continue;
        if (fields.size() != 2) throw error(errc::parse_error, "expected x,y in " + path);
        out.push_back(Point{parse_rational(fields[0]), parse_rational(fields[1])});
    }
    return out;
}

namespace detail {

/// True with probability p, decided exactly on integers.
template <class URBG>
bool bernoulli(URBG& rng, const Rational& p) {
    if (p >= 1) return true;
    if (!p.get_den().fits_ulong_p()) throw error(errc::invalid_input, "probability denominator too large");
    const auto den = p.get_den().get_ui();
    return uniform_below(rng, den) < p.get_num().get_ui();
}

inline std::string meta_rational(const Rational& r) { return to_string(r); }

}  // namespace detail

/// Random points joined by random segments, turned into their arrangement.
inline Instance gen_probabilistic(const GenConfig& config) {
    if (!(config.connect_probability > 0 && config.connect_probability <= 1))
        throw error(errc::invalid_input, "connect probability must lie in (0,1]");
    std::vector<Point> file_points;
    if (config.seed_points_file) {
        file_points = read_points_file(*config.seed_points_file);
        std::sort(file_points.begin(), file_points.end());
        file_points.erase(std::unique(file_points.begin(), file_points.end()), file_points.end());
        if (file_points.size() < 2) throw error(errc::invalid_input, "seed file needs at least two distinct points");
    } else if (config.n_seeds < 2) {
        throw error(errc::invalid_input, "need at least two seed points");
    }

    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
        Rng rng = make_rng(config.seed, {0x9e, static_cast<std::uint64_t>(attempt)});
        std::vector<Point> pool = file_points;
        if (pool.empty()) {
            std::set<Point> seen;
            while (static_cast<int>(pool.size()) < config.n_seeds) {
                Point p{Rational(static_cast<long>(uniform_below(rng, 1'000'001)), 1'000'000),
                        Rational(static_cast<long>(uniform_below(rng, 1'000'001)), 1'000'000)};
                p.x.canonicalize();
                p.y.canonicalize();
                if (seen.insert(p).second) pool.push_back(std::move(p));
            }
        }
        const std::size_t cap = config.max_seed_pool ? config.max_seed_pool : 2 * pool.size();

        std::vector<Segment> segments;
        if (!config.incremental_intersections) {
            for (std::size_t i = 0; i < pool.size(); ++i)
                for (std::size_t j = i + 1; j < pool.size(); ++j)
                    if (detail::bernoulli(rng, config.connect_probability)) segments.push_back({pool[i], pool[j]});
        } else {
            std::set<Point> known(pool.begin(), pool.end());
            std::vector<std::pair<std::size_t, std::size_t>> queue;
            for (std::size_t j = 1; j < pool.size(); ++j)
                for (std::size_t i = 0; i < j; ++i) queue.emplace_back(i, j);
            for (std::size_t q = 0; q < queue.size(); ++q) {
                auto [i, j] = queue[q];
                if (!detail::bernoulli(rng, config.connect_probability)) continue;
                Segment s{pool[i], pool[j]};
                for (const Segment& other : segments) {
                    auto hit = segment_intersection(s, other);
                    std::vector<Point> found;
                    if (auto* p = std::get_if<Point>(&hit)) found.push_back(*p);
                    if (auto* o = std::get_if<Segment>(&hit)) found = {o->p, o->q};
                    for (Point& p : found) {
                        if (pool.size() >= cap || !known.insert(p).second) continue;
                        pool.push_back(std::move(p));
                        for (std::size_t a = 0; a + 1 < pool.size(); ++a) queue.emplace_back(a, pool.size() - 1);
                    }
                }
                segments.push_back(std::move(s));
            }
        }
        if (segments.empty()) continue;

        std::map<std::string, std::string> meta{
            {"generator", "probabilistic"},
            {"seed", std::to_string(config.seed)},
            {"attempt", std::to_string(attempt)},
            {"connect_probability", detail::meta_rational(config.connect_probability)},
            {"incremental_intersections", config.incremental_intersections ? "true" : "false"},
            {"seed_points", std::to_string(config.seed_points_file ? file_points.size() : static_cast<std::size_t>(config.n_seeds))},
            {"segments", std::to_string(segments.size())},
        };
        return build_arrangement(segments, "probabilistic-" + std::to_string(config.seed), std::move(meta));
    }
    throw error(errc::invalid_input, "no segment drawn after " + std::to_string(config.max_retries) + " attempts");
}

/// Two axis-parallel segments that lie on one line and share more than a point.
inline bool collinear_overlap(const Segment& a, const Segment& b) {
    auto hit = segment_intersection(a, b);
    return std::holds_alternative<Segment>(hit);
}

/// Random axis-parallel segments with integer endpoints on a grid of side
/// max(8, 4n). Segments on a common line never share more than one point.
template <class URBG>
std::vector<Segment> axis_parallel_segments(int n, URBG& rng, std::int64_t grid = 0) {
    if (n < 1) throw error(errc::invalid_input, "need at least one segment");
    if (grid <= 0) grid = std::max<std::int64_t>(8, 4 * static_cast<std::int64_t>(n));
    const std::int64_t max_len = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(0.29 * static_cast<double>(grid))));
    std::vector<Segment> out;
    std::int64_t rejected = 0;
    const std::int64_t budget = 1000 * static_cast<std::int64_t>(n);
    while (static_cast<int>(out.size()) < n) {
        const bool vertical = uniform_below(rng, 2) == 1;
        const std::int64_t len = uniform_int(rng, 1, max_len);
        const std::int64_t fixed = uniform_int(rng, 0, grid);
        const std::int64_t from = uniform_int(rng, 0, grid - len);
        Segment s = vertical ? Segment{{Rational(fixed), Rational(from)}, {Rational(fixed), Rational(from + len)}}
                             : Segment{{Rational(from), Rational(fixed)}, {Rational(from + len), Rational(fixed)}};
        bool ok = true;
        for (const Segment& other : out)
            if (collinear_overlap(s, other)) {
                ok = false;
                break;
            }
        if (ok) {
            out.push_back(std::move(s));
        } else if (++rejected > budget) {
            throw error(errc::invalid_input, "rejection budget exhausted; use a larger coordinate range");
        }
    }
    return out;
}

template <class URBG>
Instance gen_axis_parallel(int n, URBG& rng, std::int64_t grid = 0, std::string name = "axis-parallel",
                           std::map<std::string, std::string> meta = {}) {
    auto segments = axis_parallel_segments(n, rng, grid);
    meta["generator"] = "axis-parallel";
    meta["segments"] = std::to_string(n);
    return build_arrangement(segments, std::move(name), std::move(meta));
}

inline Instance gen_axis_parallel(int n, std::uint64_t seed, std::int64_t grid = 0) {
    Rng rng = make_rng(seed, {0xa9});
    return gen_axis_parallel(n, rng, grid, "axis-parallel-" + std::to_string(seed), {{"seed", std::to_string(seed)}});
}

/// n random intervals with integer endpoints lo <= a < b <= hi.
inline std::vector<Interval1D> gen_1d(int n, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
    if (n < 1) throw error(errc::invalid_input, "need at least one interval");
    if (hi <= lo) throw error(errc::invalid_input, "coordinate range needs two distinct values");
    Rng rng = make_rng(seed, {0x1d});
    std::vector<Interval1D> out;
    for (int i = 0; i < n; ++i) {
        std::int64_t a = uniform_int(rng, lo, hi), b = uniform_int(rng, lo, hi);
        while (a == b) b = uniform_int(rng, lo, hi);
        if (a > b) std::swap(a, b);
        out.push_back({Rational(static_cast<long>(a)), Rational(static_cast<long>(b))});
    }
    return out;
}

inline Instance gen_square_gadget() {
    const Point a{0, 0}, b{1, 0}, c{1, 1}, d{0, 1};
    return build_arrangement({{a, b}, {b, c}, {c, d}, {d, a}}, "square", {{"generator", "square"}});
}

struct CircleGadget {
    Instance instance;
    std::vector<Point> boundary;  // the n points on the circle, in angular order
    double max_deviation = 0.0;   // largest distance to the evenly spaced ideal point
};

/// All chords between n points on the circle of diameter 1 centered at (1/2, 1/2).
/// The points come from the rational parameterization
/// ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)) with t a rounded tan(theta / 2), and
/// antipodal points use t' = -1/t so diameters are exact.
inline CircleGadget gen_circle_gadget(int n, const Rational& tolerance = Rational(1, 100)) {
    if (n < 4 || n % 4 != 0) throw error(errc::invalid_input, "n must be a positive multiple of 4");
    const double pi = std::numbers::pi;
    for (long denominator = 100;; denominator *= 10) {
        std::vector<Rational> ts(static_cast<std::size_t>(n));
        for (int i = 0; i < n / 2; ++i) {
            const double theta = 2 * pi * (i + 0.5) / n;
            Rational t(std::lround(std::tan(theta / 2) * static_cast<double>(denominator)), denominator);
            t.canonicalize();
            if (t == 0) t = Rational(1, denominator);
            ts[static_cast<std::size_t>(i)] = t;
            ts[static_cast<std::size_t>(i + n / 2)] = -1 / t;
        }
        CircleGadget g;
        for (int i = 0; i < n; ++i) {
            const Rational& t = ts[static_cast<std::size_t>(i)];
            const Rational den = 1 + t * t;
            Point p{Rational(1, 2) + (1 - t * t) / (2 * den), Rational(1, 2) + t / den};
            const double theta = 2 * pi * (i + 0.5) / n;
            const double dx = p.x.get_d() - (0.5 + 0.5 * std::cos(theta));
            const double dy = p.y.get_d() - (0.5 + 0.5 * std::sin(theta));
            g.max_deviation = std::max(g.max_deviation, std::hypot(dx, dy));
            g.boundary.push_back(std::move(p));
        }
        if (g.max_deviation > tolerance.get_d() && denominator < 1'000'000'000L) continue;
        std::vector<Segment> chords;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                chords.push_back({g.boundary[static_cast<std::size_t>(i)], g.boundary[static_cast<std::size_t>(j)]});
        std::ostringstream dev;
        dev.precision(6);
        dev << g.max_deviation;
        g.instance = build_arrangement(chords, "circle-" + std::to_string(n),
                                       {{"generator", "circle"},
                                        {"n", std::to_string(n)},
                                        {"tolerance", to_string(tolerance)},
                                        {"max_deviation", dev.str()}});
        return g;
    }
}

/// 3-CNF formula; literals are +v or -v for variables 1..variables.
struct Cnf {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;
};

inline Cnf parse_dimacs(std::istream& in) {
    Cnf cnf;
    std::string line;
    bool header = false;
    std::vector<int> pending;
    int declared_clauses = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first == "c" || first == "%") continue;
        if (first == "p") {
            std::string fmt;
            if (!(ls >> fmt >> cnf.variables >> declared_clauses) || fmt != "cnf")
                throw error(errc::parse_error, "bad DIMACS header");
            header = true;
            continue;
        }
        if (!header) throw error(errc::parse_error, "clause before DIMACS header");
        ls.clear();
        ls.str(line);
        int lit = 0;
        while (ls >> lit) {
            if (lit != 0) {
                pending.push_back(lit);
                continue;
            }
            if (pending.size() != 3) throw error(errc::invalid_input, "every clause needs exactly 3 literals");
            cnf.clauses.push_back({pending[0], pending[1], pending[2]});
            pending.clear();
        }
        if (!ls.eof()) throw error(errc::parse_error, "bad DIMACS clause line");
    }
    if (!pending.empty()) throw error(errc::parse_error, "unterminated DIMACS clause");
    if (!header) throw error(errc::parse_error, "missing DIMACS header");
    return cnf;
}

struct SatGadget {
    Instance instance;
    std::vector<Segment> segments;  // clause, variable, then chain segments
    int clause_segments = 0;
    int variable_segments = 0;
    int chain_segments = 0;
    int budget = 0;
    Rational threshold;        // n(m+1) + 2n^2 m + n m^2 - 1/2
    Rational epsilon;
    Rational epsilon_bound;    // nominal - (2n-1) m eps - 2 n eps
    std::vector<std::vector<Point>> chain_dots;  // index 2i + s, s = 0 true / 1 false
    std::vector<Point> clause_tops;
    std::vector<Point> variable_bottoms;
};

/// The hardness construction. Clause j (1..m) is the segment x = j, 0 <= y <= nm.
/// Variable i (0-based) has chains at heights 2i eps (true) and (2i+1) eps (false);
/// each chain has m+2 dots at x = -(i+1) eps, then j or j + eps for j = 1..m (j
/// exactly when the chain's literal occurs in clause j), then m+1+(i+1) eps.
/// The variable segments x = -(i+1) eps and x = m+1+(i+1) eps span nm down from
/// height (2i+1) eps.
inline SatGadget gen_3sat_gadget(const Cnf& cnf, std::optional<Rational> epsilon = std::nullopt) {
    const int n = cnf.variables;
    const int m = static_cast<int>(cnf.clauses.size());
    if (n < 1 || m < 1) throw error(errc::invalid_input, "formula needs variables and clauses");
    for (const auto& c : cnf.clauses) {
        for (int lit : c)
            if (lit == 0 || std::abs(lit) > n) throw error(errc::invalid_input, "literal out of range");
        if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) throw error(errc::invalid_input, "repeated literal in clause");
    }
    const Rational eps = epsilon.value_or(Rational(1, 4 * m * n));
    if (!(eps > 0) || !(eps * 4 * m * n <= 1)) throw error(errc::invalid_input, "epsilon must lie in (0, 1/(4mn)]");
    const Rational nm(n * m);

    SatGadget g;
    g.epsilon = eps;
    for (int j = 1; j <= m; ++j) {
        g.segments.push_back({{Rational(j), Rational(0)}, {Rational(j), nm}});
        g.clause_tops.push_back({Rational(j), nm});
    }
    g.clause_segments = m;
    for (int i = 0; i < n; ++i) {
        const Rational top = (2 * i + 1) * eps;
        const Rational left = -(i + 1) * eps, right = m + 1 + (i + 1) * eps;
        g.segments.push_back({{left, top - nm}, {left, top}});
        g.segments.push_back({{right, top - nm}, {right, top}});
        g.variable_bottoms.push_back({left, top - nm});
        g.variable_bottoms.push_back({right, top - nm});
    }
    g.variable_segments = 2 * n;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 2; ++s) {
            const Rational y = (2 * i + s) * eps;
            const int literal = s == 0 ? i + 1 : -(i + 1);
            std::vector<Point> dots{{-(i + 1) * eps, y}};
            for (int j = 1; j <= m; ++j) {
                const auto& c = cnf.clauses[static_cast<std::size_t>(j - 1)];
                const bool on = std::find(c.begin(), c.end(), literal) != c.end();
                dots.push_back({on ? Rational(j) : Rational(j) + eps, y});
            }
            dots.push_back({m + 1 + (i + 1) * eps, y});
            for (std::size_t d = 1; d < dots.size(); ++d) g.segments.push_back({dots[d - 1], dots[d]});
            g.chain_dots.push_back(std::move(dots));
        }
    g.chain_segments = 2 * n * (m + 1);
    g.budget = 4 * n + m + n * m;
    const Rational nominal = Rational(n * (m + 1) + 2 * n * n * m + n * m * m);
    g.threshold = nominal - Rational(1, 2);
    g.epsilon_bound = nominal - (2 * n - 1) * m * eps - 2 * n * eps;
    g.instance = build_arrangement(g.segments, "3sat",
                                   {{"generator", "3sat"},
                                    {"variables", std::to_string(n)},
                                    {"clauses", std::to_string(m)},
                                    {"epsilon", to_string(eps)},
                                    {"budget", std::to_string(g.budget)},
                                    {"threshold", to_string(g.threshold)},
                                    {"epsilon_bound", to_string(g.epsilon_bound)}});
    return g;
}

/// Portal set induced by a truth assignment (assignment[i] for variable i+1):
/// clause tops, variable-segment bottoms and every dot of the chosen chains.
inline std::vector<NodeId> sat_assignment_portals(const SatGadget& g, const std::vector<bool>& assignment) {
    std::map<Point, NodeId> ids;
    for (std::size_t v = 0; v < g.instance.node_count(); ++v)
        ids.emplace(*g.instance.point(static_cast<NodeId>(v)), static_cast<NodeId>(v));
    std::vector<NodeId> out;
    for (const Point& p : g.clause_tops) out.push_back(ids.at(p));
    for (const Point& p : g.variable_bottoms) out.push_back(ids.at(p));
    for (std::size_t i = 0; i < assignment.size(); ++i)
        for (const Point& p : g.chain_dots[2 * i + (assignment[i] ? 0 : 1)]) out.push_back(ids.at(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Random 3-CNF with distinct variables per clause.
inline Cnf random_cnf(int variables, int clauses, std::uint64_t seed) {
    if (variables < 3) throw error(errc::invalid_input, "need at least 3 variables");
    Rng rng = make_rng(seed, {0x3c});
    Cnf cnf{variables, {}};
    for (int c = 0; c < clauses; ++c) {
        std::array<int, 3> lits{};
        for (int l = 0; l < 3; ++l) {
            int v;
            do v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(variables))) + 1;
            while (std::find(lits.begin(), lits.begin() + l, v) != lits.begin() + l ||
                   std::find(lits.begin(), lits.begin() + l, -v) != lits.begin() + l);
            lits[static_cast<std::size_t>(l)] = uniform_below(rng, 2) ? v : -v;
        }
        cnf.clauses.push_back(lits);
    }
    return cnf;
}

}  // namespace tcp
