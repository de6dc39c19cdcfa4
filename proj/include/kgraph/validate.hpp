#ifndef KGRAPH_VALIDATE_HPP
#define KGRAPH_VALIDATE_HPP

#include <set>
#include <string>
#include <vector>

#include <kgraph/path.hpp>

namespace kgraph {

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = true;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
        pass = pass && ok;
    }
};

namespace detail {

// All words reachable from `word` by adjacent bicolored swaps.
inline std::set<std::vector<EdgeId>> swap_closure(const KGraph& g, const std::vector<EdgeId>& word) {
    std::set<std::vector<EdgeId>> seen{word};
    std::vector<std::vector<EdgeId>> frontier{word};
    while (!frontier.empty()) {
        std::vector<std::vector<EdgeId>> next;
        for (const auto& w : frontier) {
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                if (g.edge(w[i]).color == g.edge(w[i + 1]).color) continue;
                EdgePair out;
                if (!g.swap_pair(w[i], w[i + 1], out)) continue;
                std::vector<EdgeId> w2 = w;
                w2[i] = out.first;
                w2[i + 1] = out.second;
                if (seen.insert(w2).second) next.push_back(std::move(w2));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

} // namespace detail

// Checks that the square data presents a genuine k-graph: per color pair the
// squares give a bijection between the two composable orders, tricolored
// triples rewrite consistently (k >= 3), and vertex matrices commute.
inline ValidationReport validate_kgraph(const KGraph& g) {
    ValidationReport report;

    // Square bijectivity: every composable bicolored pair is covered exactly once.
    {
        std::set<EdgePair> lhs_seen, rhs_seen;
        for (const auto& sq : g.squares()) {
            lhs_seen.insert({sq.lhs0, sq.lhs1});
            rhs_seen.insert({sq.rhs0, sq.rhs1});
        }
        std::vector<std::string> missing;
        for (int a = 0; a < g.edge_count(); ++a) {
            for (int b = 0; b < g.edge_count(); ++b) {
                const Edge& ea = g.edge(a);
                const Edge& eb = g.edge(b);
                if (ea.color == eb.color || ea.source != eb.range) continue;
                bool ascending = ea.color < eb.color;
                const auto& side = ascending ? lhs_seen : rhs_seen;
                if (!side.count({a, b}))
                    missing.push_back("(" + ea.id + "," + eb.id + ")");
            }
        }
        std::string detail;
        if (!missing.empty()) {
            detail = "IncompleteBijection: uncovered pairs";
            for (const auto& m : missing) detail += " " + m;
        }
        report.add("square_bijection", missing.empty(), detail);
    }

    // Hexagon condition: tricolored triples reach a unique sorted word.
    if (g.k() >= 3) {
        bool ok = true;
        std::string detail;
        for (int a = 0; a < g.edge_count() && ok; ++a) {
            for (int b = 0; b < g.edge_count() && ok; ++b) {
                for (int c = 0; c < g.edge_count() && ok; ++c) {
                    const Edge& ea = g.edge(a);
                    const Edge& eb = g.edge(b);
                    const Edge& ec = g.edge(c);
                    if (ea.color == eb.color || eb.color == ec.color || ea.color == ec.color) continue;
                    if (ea.source != eb.range || eb.source != ec.range) continue;
                    auto closure = detail::swap_closure(g, {a, b, c});
                    int sorted_count = 0;
                    for (const auto& w : closure) {
                        if (g.edge(w[0]).color < g.edge(w[1]).color && g.edge(w[1]).color < g.edge(w[2]).color)
                            ++sorted_count;
                    }
                    if (sorted_count != 1) {
                        ok = false;
                        detail = "triple (" + ea.id + "," + eb.id + "," + ec.id + ") reaches " +
                                 std::to_string(sorted_count) + " sorted words";
                    }
                }
            }
        }
        report.add("hexagon", ok, detail);
    } else {
        report.add("hexagon", true, "vacuous for k < 3");
    }

    // A_i A_j = A_j A_i, exact integer arithmetic.
    {
        bool ok = true;
        std::string detail;
        int n = g.vertex_count();
        auto mul = [&](const auto& x, const auto& y) {
            std::vector<std::vector<std::int64_t>> z(n, std::vector<std::int64_t>(n, 0));
            for (int r = 0; r < n; ++r)
                for (int m = 0; m < n; ++m)
                    if (x[r][m])
                        for (int s = 0; s < n; ++s) z[r][s] += x[r][m] * y[m][s];
            return z;
        };
        for (Color i = 1; i <= g.k() && ok; ++i) {
            auto ai = g.vertex_matrix(i);
            for (Color j = i + 1; j <= g.k() && ok; ++j) {
                auto aj = g.vertex_matrix(j);
                if (mul(ai, aj) != mul(aj, ai)) {
                    ok = false;
                    detail = "A_" + std::to_string(i) + " and A_" + std::to_string(j) + " do not commute";
                }
            }
        }
        report.add("commuting_vertex_matrices", ok, detail);
    }

    return report;
}

} // namespace kgraph

#endif // KGRAPH_VALIDATE_HPP
