#ifndef KGRAPH_GRAPH_HPP
#define KGRAPH_GRAPH_HPP

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <kgraph/degree.hpp>
#include <kgraph/errors.hpp>

namespace kgraph {

using VertexId = int;
using EdgeId = int;
using Color = int; // 1-based

struct Vertex {
    std::string id;
};

struct Edge {
    std::string id;
    Color color = 1;
    VertexId source = -1;
    VertexId range = -1;
};

// One factorization rule: lhs is the (lower color, higher color) composable
// pair, rhs the (higher, lower) pair it is identified with.
struct FactorizationSquare {
    EdgeId lhs0 = -1, lhs1 = -1;
    EdgeId rhs0 = -1, rhs1 = -1;
};

using EdgePair = std::pair<EdgeId, EdgeId>;

// Finite k-colored graph with factorization squares. Immutable once built;
// all path operations live in path.hpp and take the graph by const reference.
class KGraph {
public:
    KGraph(int k, std::vector<Vertex> vertices, std::vector<Edge> edges,
           std::vector<FactorizationSquare> squares)
        : k_(k), vertices_(std::move(vertices)), edges_(std::move(edges)), squares_(std::move(squares)) {
        if (k_ < 1) fail(ErrorCode::BadArgument, "k must be >= 1");
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
            if (!vertex_index_.emplace(vertices_[v].id, v).second)
                fail(ErrorCode::BadArgument, "duplicate vertex id '" + vertices_[v].id + "'");
        }
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            const Edge& ed = edges_[e];
            if (!edge_index_.emplace(ed.id, e).second)
                fail(ErrorCode::BadArgument, "duplicate edge id '" + ed.id + "'");
            if (ed.color < 1 || ed.color > k_)
                fail(ErrorCode::ColorOutOfRange, "edge '" + ed.id + "' has color " + std::to_string(ed.color));
            if (ed.source < 0 || ed.source >= static_cast<int>(vertices_.size()) || ed.range < 0 ||
                ed.range >= static_cast<int>(vertices_.size()))
                fail(ErrorCode::DanglingReference, "edge '" + ed.id + "' cites unknown vertex");
        }
        for (const auto& sq : squares_) {
            check_square_shape(sq);
            if (!swap_.emplace(EdgePair{sq.lhs0, sq.lhs1}, EdgePair{sq.rhs0, sq.rhs1}).second)
                fail(ErrorCode::DuplicateSquare,
                     "two squares share lhs (" + edges_[sq.lhs0].id + "," + edges_[sq.lhs1].id + ")");
            if (!swap_.emplace(EdgePair{sq.rhs0, sq.rhs1}, EdgePair{sq.lhs0, sq.lhs1}).second)
                fail(ErrorCode::DuplicateSquare,
                     "two squares share rhs (" + edges_[sq.rhs0].id + "," + edges_[sq.rhs1].id + ")");
        }
    }

    int k() const { return k_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<FactorizationSquare>& squares() const { return squares_; }

    const Vertex& vertex(VertexId v) const { return vertices_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    VertexId vertex_by_id(const std::string& id) const {
        auto it = vertex_index_.find(id);
        if (it == vertex_index_.end()) fail(ErrorCode::DanglingReference, "unknown vertex '" + id + "'");
        return it->second;
    }
    EdgeId edge_by_id(const std::string& id) const {
        auto it = edge_index_.find(id);
        if (it == edge_index_.end()) fail(ErrorCode::DanglingReference, "unknown edge '" + id + "'");
        return it->second;
    }
    bool has_vertex_id(const std::string& id) const { return vertex_index_.count(id) > 0; }
    bool has_edge_id(const std::string& id) const { return edge_index_.count(id) > 0; }

    // Edges of a given color with the given range vertex, in id order.
    std::vector<EdgeId> edges_with_range(VertexId v, Color c) const {
        std::vector<EdgeId> out;
        for (int e = 0; e < edge_count(); ++e)
            if (edges_[e].range == v && edges_[e].color == c) out.push_back(e);
        return out;
    }

    // The square partner of a composable bicolored pair. Returns false when no
    // square covers the pair (an invalid presentation).
    bool swap_pair(EdgeId first, EdgeId second, EdgePair& out) const {
        auto it = swap_.find(EdgePair{first, second});
        if (it == swap_.end()) return false;
        out = it->second;
        return true;
    }

    // A_i(v, w) = number of color-i edges with range v and source w.
    std::vector<std::vector<std::int64_t>> vertex_matrix(Color i) const {
        if (i < 1 || i > k_) fail(ErrorCode::ColorOutOfRange, "color " + std::to_string(i));
        std::vector<std::vector<std::int64_t>> a(vertex_count(), std::vector<std::int64_t>(vertex_count(), 0));
        for (const Edge& e : edges_)
            if (e.color == i) a[e.range][e.source] += 1;
        return a;
    }

    struct StructuralFlags {
        bool strongly_connected = false;
        bool has_sources = false;
        bool row_finite = true;
    };

    StructuralFlags structural_flags() const {
        StructuralFlags f;
        f.row_finite = true;
        f.strongly_connected = strongly_connected();
        f.has_sources = false;
        for (VertexId v = 0; v < vertex_count(); ++v) {
            for (Color c = 1; c <= k_; ++c) {
                if (edges_with_range(v, c).empty()) {
                    f.has_sources = true;
                    break;
                }
            }
            if (f.has_sources) break;
        }
        return f;
    }

    bool strongly_connected() const {
        // vLw nonempty for all v,w <=> the digraph source -> range is strongly connected.
        int n = vertex_count();
        if (n == 0) return false;
        auto reach = [&](bool forward) {
            std::vector<bool> seen(n, false);
            std::queue<VertexId> q;
            seen[0] = true;
            q.push(0);
            while (!q.empty()) {
                VertexId u = q.front();
                q.pop();
                for (const Edge& e : edges_) {
                    VertexId from = forward ? e.source : e.range;
                    VertexId to = forward ? e.range : e.source;
                    if (from == u && !seen[to]) {
                        seen[to] = true;
                        q.push(to);
                    }
                }
            }
            for (bool b : seen)
                if (!b) return false;
            return true;
        };
        return reach(true) && reach(false);
    }

    friend bool operator==(const KGraph& a, const KGraph& b) {
        if (a.k_ != b.k_ || a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size())
            return false;
        for (std::size_t i = 0; i < a.vertices_.size(); ++i)
            if (a.vertices_[i].id != b.vertices_[i].id) return false;
        for (std::size_t i = 0; i < a.edges_.size(); ++i) {
            const Edge& x = a.edges_[i];
            const Edge& y = b.edges_[i];
            if (x.id != y.id || x.color != y.color || x.source != y.source || x.range != y.range) return false;
        }
        auto key = [](const KGraph& g) {
            std::set<std::pair<EdgePair, EdgePair>> s;
            for (const auto& q : g.squares_) s.insert({{q.lhs0, q.lhs1}, {q.rhs0, q.rhs1}});
            return s;
        };
        return key(a) == key(b);
    }
    friend bool operator!=(const KGraph& a, const KGraph& b) { return !(a == b); }

private:
    void check_square_shape(const FactorizationSquare& sq) const {
        for (EdgeId e : {sq.lhs0, sq.lhs1, sq.rhs0, sq.rhs1})
            if (e < 0 || e >= edge_count()) fail(ErrorCode::DanglingReference, "square cites unknown edge");
        const Edge& l0 = edges_[sq.lhs0];
        const Edge& l1 = edges_[sq.lhs1];
        const Edge& r0 = edges_[sq.rhs0];
        const Edge& r1 = edges_[sq.rhs1];
        if (!(l0.color < l1.color) || l0.color != r1.color || l1.color != r0.color)
            fail(ErrorCode::BadArgument, "square color pattern must be (i,j)=(j,i) with i<j");
        if (l0.source != l1.range || r0.source != r1.range)
            fail(ErrorCode::NotComposable, "square side not composable");
        if (l0.range != r0.range || l1.source != r1.source)
            fail(ErrorCode::BadArgument, "square sides have different range/source");
    }

    int k_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<FactorizationSquare> squares_;
    std::map<std::string, VertexId> vertex_index_;
    std::map<std::string, EdgeId> edge_index_;
    std::map<EdgePair, EdgePair> swap_;
};

// Convenience builder used by the library graphs, JSON loading and tests.
class GraphBuilder {
public:
    explicit GraphBuilder(int k) : k_(k) {}

    GraphBuilder& vertex(const std::string& id) {
        vertices_.push_back({id});
        return *this;
    }
    GraphBuilder& edge(const std::string& id, Color color, const std::string& source, const std::string& range) {
        pending_edges_.push_back({id, color, source, range});
        return *this;
    }
    // lhs = (lower color, higher color), rhs the swapped pair.
    GraphBuilder& square(const std::string& l0, const std::string& l1, const std::string& r0,
                         const std::string& r1) {
        pending_squares_.push_back({l0, l1, r0, r1});
        return *this;
    }

    KGraph build() const {
        std::map<std::string, VertexId> vidx;
        for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) vidx[vertices_[i].id] = i;
        std::vector<Edge> edges;
        std::map<std::string, EdgeId> eidx;
        for (const auto& pe : pending_edges_) {
            auto s = vidx.find(pe.source);
            auto r = vidx.find(pe.range);
            if (s == vidx.end() || r == vidx.end())
                fail(ErrorCode::DanglingReference, "edge '" + pe.id + "' cites unknown vertex");
            eidx[pe.id] = static_cast<int>(edges.size());
            edges.push_back({pe.id, pe.color, s->second, r->second});
        }
        std::vector<FactorizationSquare> squares;
        for (const auto& ps : pending_squares_) {
            FactorizationSquare sq;
            sq.lhs0 = lookup(eidx, ps.l0);
            sq.lhs1 = lookup(eidx, ps.l1);
            sq.rhs0 = lookup(eidx, ps.r0);
            sq.rhs1 = lookup(eidx, ps.r1);
            squares.push_back(sq);
        }
        return KGraph(k_, vertices_, edges, squares);
    }

private:
    static EdgeId lookup(const std::map<std::string, EdgeId>& idx, const std::string& id) {
        auto it = idx.find(id);
        if (it == idx.end()) fail(ErrorCode::DanglingReference, "square cites unknown edge '" + id + "'");
        return it->second;
    }

    struct PendingEdge {
        std::string id;
        Color color;
        std::string source, range;
    };
    struct PendingSquare {
        std::string l0, l1, r0, r1;
    };

    int k_;
    std::vector<Vertex> vertices_;
    std::vector<PendingEdge> pending_edges_;
    std::vector<PendingSquare> pending_squares_;
};

} // namespace kgraph

#endif // KGRAPH_GRAPH_HPP
