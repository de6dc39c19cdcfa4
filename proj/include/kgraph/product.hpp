#ifndef KGRAPH_PRODUCT_HPP
#define KGRAPH_PRODUCT_HPP

#include <string>
#include <vector>

#include <kgraph/graph.hpp>

namespace kgraph {

inline std::string product_vertex_id(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }
// Factor-1 edge lifted at a factor-2 vertex, and vice versa.
inline std::string product_edge1_id(const std::string& e, const std::string& v2) { return e + "." + v2; }
inline std::string product_edge2_id(const std::string& v1, const std::string& e) { return v1 + ":" + e; }

// Product (k1+k2)-graph: vertices are pairs, each factor edge is copied once
// per vertex of the other factor, mixed color pairs commute by definition and
// same-factor squares are inherited.
inline KGraph product_graph(const KGraph& g1, const KGraph& g2) {
    GraphBuilder b(g1.k() + g2.k());
    for (const auto& v1 : g1.vertices())
        for (const auto& v2 : g2.vertices()) b.vertex(product_vertex_id(v1.id, v2.id));

    for (const auto& e : g1.edges()) {
        for (const auto& v2 : g2.vertices()) {
            b.edge(product_edge1_id(e.id, v2.id), e.color, product_vertex_id(g1.vertex(e.source).id, v2.id),
                   product_vertex_id(g1.vertex(e.range).id, v2.id));
        }
    }
    for (const auto& e : g2.edges()) {
        for (const auto& v1 : g1.vertices()) {
            b.edge(product_edge2_id(v1.id, e.id), g1.k() + e.color,
                   product_vertex_id(v1.id, g2.vertex(e.source).id),
                   product_vertex_id(v1.id, g2.vertex(e.range).id));
        }
    }

    // Mixed squares: lambda^1_{r(nu)} nu^2_{s(lambda)} = nu^2_{r(lambda)} lambda^1_{s(nu)}.
    for (const auto& lam : g1.edges()) {
        for (const auto& nu : g2.edges()) {
            const std::string rl = g1.vertex(lam.range).id, sl = g1.vertex(lam.source).id;
            const std::string rn = g2.vertex(nu.range).id, sn = g2.vertex(nu.source).id;
            b.square(product_edge1_id(lam.id, rn), product_edge2_id(sl, nu.id), product_edge2_id(rl, nu.id),
                     product_edge1_id(lam.id, sn));
        }
    }
    // Inherited factor-1 squares at every factor-2 vertex.
    for (const auto& sq : g1.squares()) {
        for (const auto& v2 : g2.vertices()) {
            b.square(product_edge1_id(g1.edge(sq.lhs0).id, v2.id), product_edge1_id(g1.edge(sq.lhs1).id, v2.id),
                     product_edge1_id(g1.edge(sq.rhs0).id, v2.id), product_edge1_id(g1.edge(sq.rhs1).id, v2.id));
        }
    }
    // Inherited factor-2 squares at every factor-1 vertex.
    for (const auto& sq : g2.squares()) {
        for (const auto& v1 : g1.vertices()) {
            b.square(product_edge2_id(v1.id, g2.edge(sq.lhs0).id), product_edge2_id(v1.id, g2.edge(sq.lhs1).id),
                     product_edge2_id(v1.id, g2.edge(sq.rhs0).id), product_edge2_id(v1.id, g2.edge(sq.rhs1).id));
        }
    }
    return b.build();
}

} // namespace kgraph

#endif // KGRAPH_PRODUCT_HPP
