#ifndef KGRAPH_SBFS_LIBRARY_HPP
#define KGRAPH_SBFS_LIBRARY_HPP

#include <kgraph/library.hpp>
#include <kgraph/sbfs_geometric.hpp>

namespace kgraph {

// Interval system on (0,1) for the three-vertex graph: thirds as vertex
// domains, slope +-1 maps for a/d edges and slope +-1/2 maps for b/c edges.
inline GeometricSBFS interval_system_three_vertex(const KGraph& g) {
    GeometricSBFS s;
    s.graph = &g;
    s.dimension = 1;

    auto third = [](int a, int b) { return Region::d1(Region1D::interval(Rat(a, 3), Rat(b, 3))); };
    s.domains[g.vertex_by_id("u")] = third(0, 1);
    s.domains[g.vertex_by_id("v")] = third(1, 2);
    s.domains[g.vertex_by_id("w")] = third(2, 3);

    auto put = [&](const std::string& edge, const std::string& src, const Rat& a, const Rat& b, const Rat& rlo,
                   const Rat& rhi) {
        EdgeId e = g.edge_by_id(edge);
        MapPiece piece;
        piece.domain = s.domains.at(g.vertex_by_id(src));
        piece.fx = Poly2::affine(a, b);
        s.maps[e] = PiecewiseMap{{piece}};
        s.ranges[e] = Region::d1(Region1D::interval(rlo, rhi));
    };

    // blue edges
    put("a0", "v", Rat(1), Rat(-1, 3), Rat(0), Rat(1, 3));
    put("a1", "v", Rat(1), Rat(1, 3), Rat(2, 3), Rat(1));
    put("c0", "u", Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(2, 3));
    put("c1", "w", Rat(1, 2), Rat(0), Rat(1, 3), Rat(1, 2));
    // red edges
    put("d0", "v", Rat(-1), Rat(2, 3), Rat(0), Rat(1, 3));
    put("d1", "v", Rat(-1), Rat(4, 3), Rat(2, 3), Rat(1));
    put("b0", "u", Rat(-1, 2), Rat(1, 2), Rat(1, 3), Rat(1, 2));
    put("b1", "w", Rat(-1, 2), Rat(1), Rat(1, 2), Rat(2, 3));

    return s;
}

// Square system on (0,1)^2 for the one-vertex graph, with the non-constant
// derivatives: f1 -> (x, x+y-xy), f2 -> (x, xy), e -> (1-x, 1-y).
inline GeometricSBFS square_system_one_vertex(const KGraph& g) {
    GeometricSBFS s;
    s.graph = &g;
    s.dimension = 2;

    Region2D unit = Region2D::box(Rat(0), Rat(1), Rat(0), Rat(1));
    VertexId v = g.vertex_by_id("v");
    s.domains[v] = Region::d2(unit);

    Poly2 x = Poly2::x(), y = Poly2::y();

    auto put = [&](const std::string& edge, const Poly2& fx, const Poly2& fy, Region2D range) {
        EdgeId e = g.edge_by_id(edge);
        MapPiece piece;
        piece.domain = Region::d2(unit);
        piece.fx = fx;
        piece.fy = fy;
        s.maps[e] = PiecewiseMap{{piece}};
        s.ranges[e] = Region::d2(std::move(range));
    };

    PolyCell upper; // y > x
    upper.bbox = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
    upper.constraints = {{y - x, true}};
    upper.declared_area = Rat(1, 2);
    PolyCell lower; // y < x
    lower.bbox = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
    lower.constraints = {{x - y, true}};
    lower.declared_area = Rat(1, 2);

    put("f1", x, x + y - x * y, Region2D::cell(upper));
    put("f2", x, x * y, Region2D::cell(lower));
    put("e", Poly2(Rat(1)) - x, Poly2(Rat(1)) - y, unit);

    return s;
}

} // namespace kgraph

#endif // KGRAPH_SBFS_LIBRARY_HPP
