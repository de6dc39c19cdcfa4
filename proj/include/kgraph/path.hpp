#ifndef KGRAPH_PATH_HPP
#define KGRAPH_PATH_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <kgraph/graph.hpp>

namespace kgraph {

// A finite morphism in canonical normal form: edge colors non-decreasing left
// to right, composition read range-to-source. `base` is the range vertex and
// is what remains when the edge list is empty (a vertex morphism).
struct Path {
    VertexId base = -1;
    std::vector<EdgeId> edges;

    bool is_vertex() const { return edges.empty(); }

    friend bool operator==(const Path& a, const Path& b) { return a.base == b.base && a.edges == b.edges; }
    friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.edges < b.edges;
    }
};

inline Path vertex_path(VertexId v) { return Path{v, {}}; }

inline VertexId range(const KGraph& g, const Path& p) {
    return p.edges.empty() ? p.base : g.edge(p.edges.front()).range;
}
inline VertexId source(const KGraph& g, const Path& p) {
    return p.edges.empty() ? p.base : g.edge(p.edges.back()).source;
}

inline Degree degree_of(const KGraph& g, const std::vector<EdgeId>& word) {
    Degree d(g.k());
    std::vector<int> counts(g.k(), 0);
    for (EdgeId e : word) counts[g.edge(e).color - 1] += 1;
    return Degree(counts);
}
inline Degree degree_of(const KGraph& g, const Path& p) { return degree_of(g, p.edges); }

inline void check_word_composable(const KGraph& g, const std::vector<EdgeId>& word) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (g.edge(word[i]).source != g.edge(word[i + 1]).range)
            fail(ErrorCode::NotComposable, "edges '" + g.edge(word[i]).id + "' and '" + g.edge(word[i + 1]).id +
                                               "' do not compose");
}

namespace detail {

// Swap the adjacent bicolored pair at positions (i, i+1) using the square data.
inline void swap_adjacent(const KGraph& g, std::vector<EdgeId>& word, std::size_t i) {
    EdgePair out;
    if (!g.swap_pair(word[i], word[i + 1], out))
        fail(ErrorCode::IncompleteBijection, "no square for pair (" + g.edge(word[i]).id + "," +
                                                 g.edge(word[i + 1]).id + ")");
    word[i] = out.first;
    word[i + 1] = out.second;
}

} // namespace detail

// Unique color-sorted representative of a composable edge word. Well-defined
// exactly when the square data passes validation (bijection, hexagon).
inline Path normal_form(const KGraph& g, std::vector<EdgeId> word, VertexId base_if_empty = -1) {
    check_word_composable(g, word);
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (g.edge(word[i]).color > g.edge(word[i + 1]).color) {
                detail::swap_adjacent(g, word, i);
                moved = true;
            }
        }
    }
    Path p;
    p.edges = std::move(word);
    if (p.edges.empty()) {
        if (base_if_empty < 0) fail(ErrorCode::BadArgument, "empty word needs a base vertex");
        p.base = base_if_empty;
    } else {
        p.base = g.edge(p.edges.front()).range;
    }
    return p;
}

inline Path compose(const KGraph& g, const Path& a, const Path& b) {
    if (source(g, a) != range(g, b))
        fail(ErrorCode::NotComposable, "source/range mismatch in composition");
    std::vector<EdgeId> word = a.edges;
    word.insert(word.end(), b.edges.begin(), b.edges.end());
    return normal_form(g, std::move(word), range(g, a));
}

namespace detail {

// Removes the unique leading edge of the given color from the word, rewriting
// with squares as needed. The word is consumed left-to-right.
inline EdgeId pull_front_edge(const KGraph& g, std::vector<EdgeId>& word, Color c) {
    std::size_t j = word.size();
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (g.edge(word[i]).color == c) {
            j = i;
            break;
        }
    }
    if (j == word.size()) fail(ErrorCode::BadArgument, "word has no color-" + std::to_string(c) + " edge");
    while (j > 0) {
        swap_adjacent(g, word, j - 1);
        --j;
    }
    EdgeId out = word.front();
    word.erase(word.begin());
    return out;
}

} // namespace detail

// Unique factorization word = mu * rest with d(mu) = m.
inline std::pair<Path, Path> split_word(const KGraph& g, std::vector<EdgeId> word, const Degree& m,
                                        VertexId base_if_empty = -1) {
    Degree total = degree_of(g, word);
    if (!leq(m, total)) fail(ErrorCode::BadArgument, "cannot split: degree too large");
    VertexId base = word.empty() ? base_if_empty : g.edge(word.front()).range;
    std::vector<EdgeId> head;
    for (Color c = 1; c <= g.k(); ++c)
        for (int t = 0; t < m[c - 1]; ++t) head.push_back(detail::pull_front_edge(g, word, c));
    Path mu;
    mu.edges = std::move(head);
    mu.base = mu.edges.empty() ? base : g.edge(mu.edges.front()).range;
    VertexId mid = mu.edges.empty() ? base : g.edge(mu.edges.back()).source;
    Path rest = normal_form(g, std::move(word), mid);
    return {mu, rest};
}

inline std::pair<Path, Path> split(const KGraph& g, const Path& p, const Degree& m) {
    return split_word(g, p.edges, m, p.base);
}

// The segment p(a, b) of a path, range side at degree a.
inline Path subpath(const KGraph& g, const Path& p, const Degree& a, const Degree& b) {
    auto [head, rest] = split(g, p, a);
    (void)head;
    return split(g, rest, b - a).first;
}

// All normal-form paths of degree n, optionally restricted to a given range
// vertex. Deterministic order (range vertex, then edge ids).
inline std::vector<Path> paths_of_degree(const KGraph& g, const Degree& n, VertexId range_filter = -1) {
    if (n.rank() != g.k()) fail(ErrorCode::BadArgument, "degree rank mismatch");
    std::vector<Path> current;
    if (range_filter >= 0) {
        current.push_back(vertex_path(range_filter));
    } else {
        for (VertexId v = 0; v < g.vertex_count(); ++v) current.push_back(vertex_path(v));
    }
    for (Color c = 1; c <= g.k(); ++c) {
        for (int t = 0; t < n[c - 1]; ++t) {
            std::vector<Path> next;
            for (const Path& p : current) {
                VertexId tail = source(g, p);
                for (int e = 0; e < g.edge_count(); ++e) {
                    if (g.edge(e).color == c && g.edge(e).range == tail) {
                        Path q = p;
                        q.edges.push_back(e);
                        next.push_back(std::move(q));
                    }
                }
            }
            current = std::move(next);
        }
    }
    return current;
}

// Minimal common extensions: pairs (alpha, beta) with lambda*alpha =
// eta*beta of degree d(lambda) v d(eta).
inline std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& lambda, const Path& eta) {
    std::vector<std::pair<Path, Path>> out;
    if (range(g, lambda) != range(g, eta)) return out;
    Degree dl = degree_of(g, lambda), de = degree_of(g, eta);
    Degree top = join(dl, de);
    auto alphas = paths_of_degree(g, top - dl, source(g, lambda));
    auto betas = paths_of_degree(g, top - de, source(g, eta));
    for (const Path& a : alphas) {
        Path la = compose(g, lambda, a);
        for (const Path& b : betas) {
            if (la == compose(g, eta, b)) out.push_back({a, b});
        }
    }
    return out;
}

inline std::string path_str(const KGraph& g, const Path& p) {
    if (p.is_vertex()) return "(" + g.vertex(p.base).id + ")";
    std::string s;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) s += ".";
        s += g.edge(p.edges[i]).id;
    }
    return s;
}

} // namespace kgraph

#endif // KGRAPH_PATH_HPP
