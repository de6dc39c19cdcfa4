#ifndef KGRAPH_SBFS_GEOMETRIC_HPP
#define KGRAPH_SBFS_GEOMETRIC_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <kgraph/graph.hpp>
#include <kgraph/path.hpp>
#include <kgraph/product.hpp>
#include <kgraph/region.hpp>

namespace kgraph {

// One injective piece of a prefixing map. 1D systems use fx only (affine);
// 2D systems use a pair of bivariate polynomials of total degree <= 2.
struct MapPiece {
    Region domain;
    Poly2 fx;
    Poly2 fy;
};

struct PiecewiseMap {
    std::vector<MapPiece> pieces;
};

// Edge-level semibranching data on a Lebesgue space: domains D_v per vertex,
// a prefixing map and a declared range R_e per edge.
struct GeometricSBFS {
    const KGraph* graph = nullptr;
    int dimension = 1;
    std::map<VertexId, Region> domains;
    std::map<EdgeId, PiecewiseMap> maps;
    std::map<EdgeId, Region> ranges;
};

// ---- Radon-Nikodym derivative ----------------------------------------------

// |slope| in 1D, |det Jacobian| in 2D, at a rational interior point.
inline Rat rn_derivative_geometric(int dimension, const PiecewiseMap& map, const Rat& px, const Rat& py = 0) {
    for (const auto& piece : map.pieces) {
        bool inside = dimension == 1 ? piece.domain.r1.contains(px) : piece.domain.r2.contains(px, py);
        if (!inside) continue;
        if (dimension == 1) {
            Rat a = piece.fx.coeff(1, 0);
            if (a == 0) fail(ErrorCode::DegeneratePiece, "affine piece has zero slope");
            return rat_abs(a);
        }
        Poly2 det = piece.fx.d_dx() * piece.fy.d_dy() - piece.fx.d_dy() * piece.fy.d_dx();
        Rat v = det.eval(px, py);
        if (v == 0) fail(ErrorCode::DegeneratePiece, "Jacobian vanishes at the sample point");
        return rat_abs(v);
    }
    fail(ErrorCode::OnBoundary, "point is not interior to any piece");
}

// ---- condition report -------------------------------------------------------

struct ConditionEntry {
    std::string name;
    bool pass = true;
    bool sampled = false; // verified on a deterministic grid, not exactly
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;
    bool pass = true;

    void add(const std::string& name, bool ok, bool sampled, const std::string& detail = "") {
        entries.push_back({name, ok, sampled, detail});
        pass = pass && ok;
    }
    const ConditionEntry* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

namespace geo_detail {

inline Region1D piece_union_1d(const PiecewiseMap& m) {
    Region1D u;
    for (const auto& p : m.pieces) u = unite(u, p.domain.r1);
    return u;
}

// Deterministic interior sample points of a 1D region.
inline std::vector<Rat> sample_points_1d(const Region1D& r, int per_part) {
    std::vector<Rat> out;
    for (const auto& part : r.parts()) {
        for (int i = 1; i <= per_part; ++i) {
            Rat t(2 * i - 1, 2 * per_part);
            out.push_back(part.lo + t * (part.hi - part.lo));
        }
    }
    return out;
}

inline std::vector<std::pair<Rat, Rat>> grid_points_2d(const Box& b, int side) {
    std::vector<std::pair<Rat, Rat>> out;
    for (int i = 1; i <= side; ++i) {
        Rat tx(2 * i - 1, 2 * side);
        for (int j = 1; j <= side; ++j) {
            Rat ty(2 * j - 1, 2 * side);
            out.push_back({b.x.lo + tx * (b.x.hi - b.x.lo), b.y.lo + ty * (b.y.hi - b.y.lo)});
        }
    }
    return out;
}

// Evaluate a piecewise map at a rational point; nullopt off the pieces.
inline std::optional<std::pair<Rat, Rat>> eval_map(int dim, const PiecewiseMap& m, const Rat& x, const Rat& y) {
    for (const auto& p : m.pieces) {
        bool inside = dim == 1 ? p.domain.r1.contains(x) : p.domain.r2.contains(x, y);
        if (!inside) continue;
        return std::pair<Rat, Rat>{p.fx.eval(x, y), dim == 1 ? Rat(0) : p.fy.eval(x, y)};
    }
    return std::nullopt;
}

inline bool region_contains(int dim, const Region& r, const Rat& x, const Rat& y) {
    return dim == 1 ? r.r1.contains(x) : r.r2.contains(x, y);
}

// Inverse of a map piece at a point of its image. Exact when the components
// are separately affine in their own coordinate; Newton iteration otherwise.
inline std::optional<std::pair<Rat, Rat>> invert_piece(int dim, const MapPiece& p, const Rat& qx, const Rat& qy,
                                                       bool& exact) {
    if (dim == 1) {
        Rat a = p.fx.coeff(1, 0), b = p.fx.coeff(0, 0);
        if (a == 0) return std::nullopt;
        exact = true;
        return std::pair<Rat, Rat>{(qx - b) / a, Rat(0)};
    }
    bool fx_x_only = !p.fx.depends_on_y() && p.fx.is_affine();
    bool fy_y_only = !p.fy.depends_on_x() && p.fy.is_affine();
    if (fx_x_only && fy_y_only) {
        Rat ax = p.fx.coeff(1, 0), bx = p.fx.coeff(0, 0);
        Rat ay = p.fy.coeff(0, 1), by = p.fy.coeff(0, 0);
        if (ax == 0 || ay == 0) return std::nullopt;
        exact = true;
        return std::pair<Rat, Rat>{(qx - bx) / ax, (qy - by) / ay};
    }
    // Newton with the symbolic Jacobian, seeded from a coarse scan.
    exact = false;
    Box bb = p.domain.r2.bounding_box();
    double tx = to_double(qx), ty = to_double(qy);
    double bestx = 0, besty = 0, best = 1e300;
    for (const auto& [sx, sy] : grid_points_2d(bb, 9)) {
        double gx = to_double(sx), gy = to_double(sy);
        double rx = p.fx.eval(gx, gy) - tx, ry = p.fy.eval(gx, gy) - ty;
        double r = rx * rx + ry * ry;
        if (r < best) {
            best = r;
            bestx = gx;
            besty = gy;
        }
    }
    Poly2 jxx = p.fx.d_dx(), jxy = p.fx.d_dy(), jyx = p.fy.d_dx(), jyy = p.fy.d_dy();
    double ux = bestx, uy = besty;
    for (int it = 0; it < 60; ++it) {
        double rx = p.fx.eval(ux, uy) - tx, ry = p.fy.eval(ux, uy) - ty;
        double a = jxx.eval(ux, uy), b = jxy.eval(ux, uy), c = jyx.eval(ux, uy), d = jyy.eval(ux, uy);
        double det = a * d - b * c;
        if (std::abs(det) < 1e-14) break;
        ux -= (d * rx - b * ry) / det;
        uy -= (-c * rx + a * ry) / det;
    }
    double rx = p.fx.eval(ux, uy) - tx, ry = p.fy.eval(ux, uy) - ty;
    if (rx * rx + ry * ry > 1e-24) return std::nullopt;
    return std::pair<Rat, Rat>{rat_from_double(ux), rat_from_double(uy)};
}

// Coding map for one color: locate the edge whose declared range contains the
// point and invert its map there.
inline std::optional<std::pair<Rat, Rat>> coding_eval(const GeometricSBFS& s, Color color, const Rat& qx,
                                                      const Rat& qy, bool& exact) {
    const KGraph& g = *s.graph;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).color != color) continue;
        if (!region_contains(s.dimension, s.ranges.at(e), qx, qy)) continue;
        for (const auto& piece : s.maps.at(e).pieces) {
            auto inv = invert_piece(s.dimension, piece, qx, qy, exact);
            if (!inv) continue;
            bool inside = s.dimension == 1 ? piece.domain.r1.contains(inv->first)
                                           : piece.domain.r2.contains(inv->first, inv->second);
            if (!inside) continue;
            // confirm round trip
            if (s.dimension == 1) {
                if (piece.fx.eval(inv->first, Rat(0)) != qx && exact) continue;
            }
            return inv;
        }
    }
    return std::nullopt;
}

// Overlap of two 2D regions, exact for boxes, grid-sampled when cells appear.
inline bool overlap_null_2d(const Region2D& a, const Region2D& b, bool& sampled) {
    if (!a.has_cells() && !b.has_cells()) {
        for (const auto& p : a.boxes())
            for (const auto& q : b.boxes()) {
                Rat lx = std::max(p.x.lo, q.x.lo), hx = std::min(p.x.hi, q.x.hi);
                Rat ly = std::max(p.y.lo, q.y.lo), hy = std::min(p.y.hi, q.y.hi);
                if (lx < hx && ly < hy) return false;
            }
        return true;
    }
    sampled = true;
    Box bb = a.bounding_box();
    for (const auto& [x, y] : grid_points_2d(bb, 64))
        if (a.contains(x, y) && b.contains(x, y)) return false;
    return true;
}

// Is a contained in b up to measure zero?
inline bool contained_2d(const Region2D& a, const Region2D& b, bool& sampled) {
    sampled = true;
    Box bb = a.bounding_box();
    for (const auto& [x, y] : grid_points_2d(bb, 64))
        if (a.contains(x, y) && !b.contains(x, y)) return false;
    return true;
}

} // namespace geo_detail

// Checks conditions (i)-(v) of the edge-level semibranching characterization.
// Exact wherever 1D interval arithmetic or symbolic polynomial identities
// apply; grid-sampled checks are labeled as such in the report.
inline ConditionReport validate_sbfs_conditions(const GeometricSBFS& s) {
    const KGraph& g = *s.graph;
    ConditionReport rep;
    using namespace geo_detail;

    // (i) edge map domains agree with D_{s(e)}; every D_v has positive measure.
    {
        bool ok = true, sampled = false;
        std::string detail;
        for (int e = 0; e < g.edge_count() && ok; ++e) {
            const Region& dv = s.domains.at(g.edge(e).source);
            if (s.dimension == 1) {
                if (piece_union_1d(s.maps.at(e)) != dv.r1) {
                    ok = false;
                    detail = "edge " + g.edge(e).id + " domain differs from D_{s(e)}";
                }
            } else {
                Region2D u;
                Rat area = 0;
                for (const auto& p : s.maps.at(e).pieces) area += p.domain.r2.area();
                if (area != dv.r2.area()) {
                    ok = false;
                    detail = "edge " + g.edge(e).id + " domain area differs from D_{s(e)}";
                }
                for (const auto& p : s.maps.at(e).pieces) {
                    bool smp = false;
                    if (!contained_2d(p.domain.r2, dv.r2, smp)) {
                        ok = false;
                        detail = "edge " + g.edge(e).id + " piece domain leaves D_{s(e)}";
                    }
                    sampled = sampled || smp;
                }
            }
        }
        for (VertexId v = 0; v < g.vertex_count() && ok; ++v) {
            Rat m = s.dimension == 1 ? s.domains.at(v).r1.measure() : s.domains.at(v).r2.area();
            if (!(m > 0)) {
                ok = false;
                detail = "D_" + g.vertex(v).id + " has zero measure";
            }
        }
        rep.add("i_shared_domains_positive", ok, sampled, detail);
    }

    // (ii) domains of distinct vertices intersect in measure zero.
    {
        bool ok = true, sampled = false;
        std::string detail;
        for (VertexId v = 0; v < g.vertex_count() && ok; ++v) {
            for (VertexId w = v + 1; w < g.vertex_count() && ok; ++w) {
                if (s.dimension == 1) {
                    Rat m = intersect(s.domains.at(v).r1, s.domains.at(w).r1).measure();
                    if (m != 0) {
                        ok = false;
                        detail = "D_" + g.vertex(v).id + " and D_" + g.vertex(w).id + " overlap with measure " +
                                 rat_to_string(m);
                    }
                } else {
                    bool smp = false;
                    if (!overlap_null_2d(s.domains.at(v).r2, s.domains.at(w).r2, smp)) {
                        ok = false;
                        detail = "D_" + g.vertex(v).id + " and D_" + g.vertex(w).id + " overlap";
                    }
                    sampled = sampled || smp;
                }
            }
        }
        rep.add("ii_disjoint_domains", ok, sampled, detail);
    }

    // (iii) squares commute symbolically; ranges nest into domains.
    {
        bool ok = true, sampled = false;
        std::string detail;
        for (const auto& sq : g.squares()) {
            const PiecewiseMap& l0 = s.maps.at(sq.lhs0);
            const PiecewiseMap& l1 = s.maps.at(sq.lhs1);
            const PiecewiseMap& r0 = s.maps.at(sq.rhs0);
            const PiecewiseMap& r1 = s.maps.at(sq.rhs1);
            if (l0.pieces.size() == 1 && l1.pieces.size() == 1 && r0.pieces.size() == 1 && r1.pieces.size() == 1) {
                // tau_{l0} o tau_{l1} vs tau_{r0} o tau_{r1}, exact composition
                const MapPiece& a = l0.pieces[0];
                const MapPiece& b = l1.pieces[0];
                const MapPiece& c = r0.pieces[0];
                const MapPiece& d = r1.pieces[0];
                Poly2 bfy = s.dimension == 1 ? Poly2::y() : b.fy;
                Poly2 dfy = s.dimension == 1 ? Poly2::y() : d.fy;
                bool same = a.fx.compose(b.fx, bfy) == c.fx.compose(d.fx, dfy);
                if (s.dimension == 2) same = same && a.fy.compose(b.fx, b.fy) == c.fy.compose(d.fx, d.fy);
                if (!same) {
                    ok = false;
                    detail = "square (" + g.edge(sq.lhs0).id + "," + g.edge(sq.lhs1).id + ") maps disagree";
                }
            } else {
                // piecewise: compare on interior samples
                sampled = true;
                auto check = [&](const Rat& x, const Rat& y) {
                    auto inner_l = eval_map(s.dimension, l1, x, y);
                    auto inner_r = eval_map(s.dimension, r1, x, y);
                    if (!inner_l || !inner_r) return true;
                    auto out_l = eval_map(s.dimension, l0, inner_l->first, inner_l->second);
                    auto out_r = eval_map(s.dimension, r0, inner_r->first, inner_r->second);
                    if (!out_l || !out_r) return true;
                    return *out_l == *out_r;
                };
                const Region& dom = s.domains.at(g.edge(sq.lhs1).source);
                if (s.dimension == 1) {
                    for (const Rat& x : sample_points_1d(dom.r1, 25))
                        if (!check(x, Rat(0))) ok = false;
                } else {
                    for (const auto& [x, y] : grid_points_2d(dom.r2.bounding_box(), 16))
                        if (!check(x, y)) ok = false;
                }
                if (!ok && detail.empty())
                    detail = "square (" + g.edge(sq.lhs0).id + "," + g.edge(sq.lhs1).id + ") sampled mismatch";
            }
            // R_{l1} subset D_{l0} and R_{r1} subset D_{r0}
            auto nest = [&](EdgeId inner, EdgeId outer) {
                if (s.dimension == 1) {
                    if (measure_minus(s.ranges.at(inner).r1, s.domains.at(g.edge(outer).source).r1) != 0) {
                        ok = false;
                        detail = "R_" + g.edge(inner).id + " is not inside D_" +
                                 g.vertex(g.edge(outer).source).id;
                    }
                } else {
                    bool smp = false;
                    if (!contained_2d(s.ranges.at(inner).r2, s.domains.at(g.edge(outer).source).r2, smp)) {
                        ok = false;
                        detail = "R_" + g.edge(inner).id + " is not inside the outer domain";
                    }
                    sampled = sampled || smp;
                }
            };
            nest(sq.lhs1, sq.lhs0);
            nest(sq.rhs1, sq.rhs0);
        }
        rep.add("iii_squares_commute", ok, sampled, detail);
    }

    // (iv) coding maps commute.
    {
        bool ok = true, sampled = false, all_exact = true;
        std::string detail;
        double worst = 0;
        int used = 0;
        auto run_point = [&](const Rat& x, const Rat& y) {
            for (Color i = 1; i <= g.k() && ok; ++i) {
                for (Color j = i + 1; j <= g.k() && ok; ++j) {
                    bool e1 = true, e2 = true, e3 = true, e4 = true;
                    auto a1 = coding_eval(s, j, x, y, e1);
                    auto a2 = a1 ? coding_eval(s, i, a1->first, a1->second, e2) : std::nullopt;
                    auto b1 = coding_eval(s, i, x, y, e3);
                    auto b2 = b1 ? coding_eval(s, j, b1->first, b1->second, e4) : std::nullopt;
                    if (!a2 || !b2) continue;
                    ++used;
                    bool exact_here = e1 && e2 && e3 && e4;
                    all_exact = all_exact && exact_here;
                    if (exact_here) {
                        if (*a2 != *b2) {
                            ok = false;
                            detail = "coding maps disagree at an exact sample";
                        }
                    } else {
                        double dx = to_double(a2->first - b2->first);
                        double dy = to_double(a2->second - b2->second);
                        worst = std::max(worst, std::hypot(dx, dy));
                    }
                }
            }
        };
        if (s.dimension == 1) {
            Region1D all;
            for (VertexId v = 0; v < g.vertex_count(); ++v) all = unite(all, s.domains.at(v).r1);
            for (const Rat& x : sample_points_1d(all, 40)) run_point(x, Rat(0));
        } else {
            Box bb{{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
            bool have = false;
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                const Region2D& r = s.domains.at(v).r2;
                if (!have) {
                    bb = r.bounding_box();
                    have = true;
                }
            }
            for (const auto& [x, y] : grid_points_2d(bb, 100)) run_point(x, y);
        }
        sampled = true; // pointwise by construction; exact pieces still sample points
        if (!all_exact && worst >= 1e-9) {
            ok = false;
            detail = "coding commutation residual " + std::to_string(worst);
        }
        rep.add("iv_coding_maps_commute", ok && used > 0, sampled,
                ok && used > 0 ? "" : (used == 0 ? "no usable sample points" : detail));
    }

    // (v) ranges of each color tile each domain.
    {
        bool ok = true, sampled = false;
        std::string detail;
        for (VertexId v = 0; v < g.vertex_count() && ok; ++v) {
            for (Color i = 1; i <= g.k() && ok; ++i) {
                auto edges = g.edges_with_range(v, i);
                if (s.dimension == 1) {
                    Region1D u;
                    for (EdgeId e : edges) u = unite(u, s.ranges.at(e).r1);
                    Rat defect = measure_minus(s.domains.at(v).r1, u);
                    if (defect != 0) {
                        ok = false;
                        detail = "D_" + g.vertex(v).id + " minus color-" + std::to_string(i) +
                                 " ranges has measure " + rat_to_string(defect);
                    }
                } else {
                    Rat total = 0;
                    for (EdgeId e : edges) total += s.ranges.at(e).r2.area();
                    if (total != s.domains.at(v).r2.area()) {
                        ok = false;
                        detail = "color-" + std::to_string(i) + " ranges do not fill D_" + g.vertex(v).id;
                    }
                    for (std::size_t a = 0; a < edges.size() && ok; ++a) {
                        bool smp = false;
                        if (!contained_2d(s.ranges.at(edges[a]).r2, s.domains.at(v).r2, smp)) {
                            ok = false;
                            detail = "R_" + g.edge(edges[a]).id + " leaves D_" + g.vertex(v).id;
                        }
                        sampled = sampled || smp;
                        for (std::size_t b2 = a + 1; b2 < edges.size() && ok; ++b2) {
                            bool smp2 = false;
                            if (!overlap_null_2d(s.ranges.at(edges[a]).r2, s.ranges.at(edges[b2]).r2, smp2)) {
                                ok = false;
                                detail = "R_" + g.edge(edges[a]).id + " overlaps R_" + g.edge(edges[b2]).id;
                            }
                            sampled = sampled || smp2;
                        }
                    }
                }
            }
        }
        rep.add("v_ranges_tile_domains", ok, sampled, detail);
    }

    return rep;
}

// Product system on X1 x X2 per the product-graph construction: factor-1 maps
// act on the first coordinate, factor-2 maps on the second.
inline GeometricSBFS product_sbfs(const GeometricSBFS& s1, const GeometricSBFS& s2, const KGraph& pg) {
    if (s1.dimension != 1 || s2.dimension != 1) fail(ErrorCode::InvalidInput, "product factors must be 1D");
    if (!validate_sbfs_conditions(s1).pass || !validate_sbfs_conditions(s2).pass)
        fail(ErrorCode::InvalidInput, "both factors must pass validation");
    const KGraph& g1 = *s1.graph;
    const KGraph& g2 = *s2.graph;

    GeometricSBFS out;
    out.graph = &pg;
    out.dimension = 2;

    for (VertexId v1 = 0; v1 < g1.vertex_count(); ++v1) {
        for (VertexId v2 = 0; v2 < g2.vertex_count(); ++v2) {
            VertexId pv = pg.vertex_by_id(product_vertex_id(g1.vertex(v1).id, g2.vertex(v2).id));
            out.domains[pv] = Region::d2(region_product(s1.domains.at(v1).r1, s2.domains.at(v2).r1));
        }
    }
    for (int e = 0; e < g1.edge_count(); ++e) {
        for (VertexId v2 = 0; v2 < g2.vertex_count(); ++v2) {
            EdgeId pe = pg.edge_by_id(product_edge1_id(g1.edge(e).id, g2.vertex(v2).id));
            PiecewiseMap pm;
            for (const auto& piece : s1.maps.at(e).pieces) {
                MapPiece mp;
                mp.domain = Region::d2(region_product(piece.domain.r1, s2.domains.at(v2).r1));
                mp.fx = piece.fx;
                mp.fy = Poly2::y();
                pm.pieces.push_back(mp);
            }
            out.maps[pe] = pm;
            out.ranges[pe] = Region::d2(region_product(s1.ranges.at(e).r1, s2.domains.at(v2).r1));
        }
    }
    for (int e = 0; e < g2.edge_count(); ++e) {
        for (VertexId v1 = 0; v1 < g1.vertex_count(); ++v1) {
            EdgeId pe = pg.edge_by_id(product_edge2_id(g1.vertex(v1).id, g2.edge(e).id));
            PiecewiseMap pm;
            for (const auto& piece : s2.maps.at(e).pieces) {
                MapPiece mp;
                mp.domain = Region::d2(region_product(s1.domains.at(v1).r1, piece.domain.r1));
                mp.fx = Poly2::x();
                // the factor map acts on y
                Rat a = piece.fx.coeff(1, 0), b = piece.fx.coeff(0, 0);
                mp.fy = Poly2::monomial(0, 1, a) + Poly2(b);
                pm.pieces.push_back(mp);
            }
            out.maps[pe] = pm;
            out.ranges[pe] = Region::d2(region_product(s1.domains.at(v1).r1, s2.ranges.at(e).r1));
        }
    }
    return out;
}

} // namespace kgraph

#endif // KGRAPH_SBFS_GEOMETRIC_HPP
