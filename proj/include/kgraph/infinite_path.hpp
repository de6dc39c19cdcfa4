#ifndef KGRAPH_INFINITE_PATH_HPP
#define KGRAPH_INFINITE_PATH_HPP

#include <vector>

#include <kgraph/path.hpp>

namespace kgraph {

// Eventually periodic infinite path: prefix followed by the cycle repeated
// forever. Both degrees are multiples of (1,...,1); the cycle's is positive.
struct InfinitePathSpec {
    Path prefix; // may be a vertex path
    Path cycle;

    InfinitePathSpec(const KGraph& g, Path prefix_, Path cycle_) : prefix(std::move(prefix_)), cycle(std::move(cycle_)) {
        Degree dp = degree_of(g, prefix);
        Degree dc = degree_of(g, cycle);
        if (!dp.is_square()) fail(ErrorCode::BadArgument, "prefix degree must be a multiple of (1,...,1)");
        if (!dc.is_square() || dc.total() == 0)
            fail(ErrorCode::BadArgument, "cycle degree must be a positive multiple of (1,...,1)");
        if (range(g, cycle) != source(g, cycle))
            fail(ErrorCode::BadArgument, "cycle must return to its range vertex");
        if (source(g, prefix) != range(g, cycle))
            fail(ErrorCode::NotComposable, "prefix source must equal cycle range");
    }

    int prefix_levels(const KGraph& g) const { return degree_of(g, prefix)[0]; }
    int cycle_levels(const KGraph& g) const { return degree_of(g, cycle)[0]; }
};

inline InfinitePathSpec cyclic_infinite_path(const KGraph& g, const Path& cycle) {
    return InfinitePathSpec(g, vertex_path(range(g, cycle)), cycle);
}

// Raw edge word covering at least `levels` square levels of x.
inline std::vector<EdgeId> word_to_level(const KGraph& g, const InfinitePathSpec& x, int levels) {
    std::vector<EdgeId> w = x.prefix.edges;
    int have = x.prefix_levels(g);
    int step = x.cycle_levels(g);
    while (have < levels) {
        w.insert(w.end(), x.cycle.edges.begin(), x.cycle.edges.end());
        have += step;
    }
    return w;
}

inline VertexId range_of(const KGraph& g, const InfinitePathSpec& x) { return range(g, x.prefix); }

// x(0, n*(1,...,1)) in normal form.
inline Path path_prefix(const KGraph& g, const InfinitePathSpec& x, int n) {
    if (n < 0) fail(ErrorCode::BadArgument, "negative prefix level");
    if (n == 0) return vertex_path(range_of(g, x));
    auto word = word_to_level(g, x, n);
    Degree target(g.k(), n);
    return split_word(g, word, target, range_of(g, x)).first;
}

// Segment x_i of degree (1,...,1), stages starting at 1.
inline Path segment(const KGraph& g, const InfinitePathSpec& x, int i) {
    if (i < 1) fail(ErrorCode::BadArgument, "segment index must be >= 1");
    auto word = word_to_level(g, x, i);
    auto [head, rest] = split_word(g, word, Degree(g.k(), i - 1), range_of(g, x));
    (void)head;
    return split(g, rest, Degree::ones(g.k())).first;
}

// x(a, b) for arbitrary degrees a <= b (componentwise).
inline Path segment_between(const KGraph& g, const InfinitePathSpec& x, const Degree& a, const Degree& b) {
    int levels = b.max_entry();
    auto word = word_to_level(g, x, levels);
    auto [head, rest] = split_word(g, word, a, range_of(g, x));
    (void)head;
    return split(g, rest, b - a).first;
}

// Vertex of x at degree (i,...,i); stage-i base vertex is at (i-1,...,i-1).
inline VertexId vertex_at_level(const KGraph& g, const InfinitePathSpec& x, int i) {
    if (i == 0) return range_of(g, x);
    return source(g, path_prefix(g, x, i));
}

// sigma^m(x) as a new spec, m an arbitrary degree. The new prefix runs from m
// to the first square level inside the periodic zone; unique factorization
// makes the cycle block independent of which repetition it is cut from.
inline InfinitePathSpec shift(const KGraph& g, const InfinitePathSpec& x, const Degree& m) {
    if (!m.is_square()) fail(ErrorCode::BadArgument, "spec shift needs a multiple of (1,...,1)");
    int p = x.prefix_levels(g);
    int c = x.cycle_levels(g);
    int end_level = std::max(p, m.max_entry());
    Degree end(g.k(), end_level);
    Path new_prefix = segment_between(g, x, m, end);
    Path new_cycle = segment_between(g, x, end, Degree(g.k(), end_level + c));
    return InfinitePathSpec(g, new_prefix, new_cycle);
}

// Verifies sigma^m(x) = sigma^n(y) on `levels` square levels past the shifts.
inline bool tails_agree(const KGraph& g, const InfinitePathSpec& x, const Degree& m, const InfinitePathSpec& y,
                        const Degree& n, int levels) {
    int lx = m.max_entry() + levels;
    int ly = n.max_entry() + levels;
    Degree ex(g.k(), lx), ey(g.k(), ly);
    Path sx = segment_between(g, x, m, ex);
    Path sy = segment_between(g, y, n, ey);
    // Both have degree levels*(1,...,1) plus the respective offsets; compare
    // the common square part.
    Degree common(g.k(), levels);
    Path tx = split(g, sx, common).first;
    Path ty = split(g, sy, common).first;
    return tx == ty;
}

} // namespace kgraph

#endif // KGRAPH_INFINITE_PATH_HPP
