#ifndef KGRAPH_LIBRARY_HPP
#define KGRAPH_LIBRARY_HPP

#include <string>
#include <vector>

#include <kgraph/graph.hpp>

namespace kgraph {

// One vertex, blue loops f1,f2, red loop e, rules ef1 = f2e and ef2 = f1e.
inline KGraph make_one_vertex_fefe() {
    GraphBuilder b(2);
    b.vertex("v");
    b.edge("f1", 1, "v", "v").edge("f2", 1, "v", "v").edge("e", 2, "v", "v");
    b.square("f1", "e", "e", "f2");
    b.square("f2", "e", "e", "f1");
    return b.build();
}

// Three vertices u,v,w; blue a0,a1,c0,c1 and red b0,b1,d0,d1 with the six
// squares a_i b_j = d_i c_j (i,j in {0,1}), c0 d0 = b1 a1, c1 d1 = b0 a0.
inline KGraph make_three_vertex_eight_edge() {
    GraphBuilder b(2);
    b.vertex("u").vertex("v").vertex("w");
    b.edge("a0", 1, "v", "u").edge("a1", 1, "v", "w").edge("c0", 1, "u", "v").edge("c1", 1, "w", "v");
    b.edge("d0", 2, "v", "u").edge("d1", 2, "v", "w").edge("b0", 2, "u", "v").edge("b1", 2, "w", "v");
    b.square("a0", "b0", "d0", "c0");
    b.square("a1", "b1", "d1", "c1");
    b.square("a1", "b0", "d1", "c0");
    b.square("a0", "b1", "d0", "c1");
    b.square("c0", "d0", "b1", "a1");
    b.square("c1", "d1", "b0", "a0");
    return b.build();
}

inline std::string lambda2n_peripheral_name(int N, int i) { // i in 1..2N
    return i <= N ? "u" + std::to_string(i) : "w" + std::to_string(i - N);
}

// Star-shaped 2-graph with center v and 2N peripheral vertices, one blue and
// one red edge in each direction. The permutation phi (1-based, phi[i-1] is
// the image of i) fixes the squares at v: the red-blue loop through Q_i equals
// the blue-red loop through Q_{phi(i)}. Squares through a peripheral vertex
// pair are forced.
inline KGraph make_lambda_2n(int N, const std::vector<int>& phi) {
    if (N < 1) fail(ErrorCode::BadArgument, "N must be >= 1");
    int n = 2 * N;
    if (static_cast<int>(phi.size()) != n) fail(ErrorCode::InvalidPermutation, "phi must have 2N entries");
    std::vector<bool> hit(n, false);
    for (int v : phi) {
        if (v < 1 || v > n || hit[v - 1]) fail(ErrorCode::InvalidPermutation, "phi is not a permutation of 1..2N");
        hit[v - 1] = true;
    }

    GraphBuilder b(2);
    b.vertex("v");
    for (int i = 1; i <= n; ++i) b.vertex(lambda2n_peripheral_name(N, i));
    auto q = [&](int i) { return lambda2n_peripheral_name(N, i); };
    for (int i = 1; i <= n; ++i) {
        b.edge("b_" + q(i) + "_v", 1, q(i), "v"); // blue Q_i -> v
        b.edge("b_v_" + q(i), 1, "v", q(i));      // blue v -> Q_i
        b.edge("r_" + q(i) + "_v", 2, q(i), "v"); // red Q_i -> v
        b.edge("r_v_" + q(i), 2, "v", q(i));      // red v -> Q_i
    }
    // Loops at v: blue-red through Q_phi(i) = red-blue through Q_i.
    for (int i = 1; i <= n; ++i) {
        int j = phi[i - 1];
        b.square("b_" + q(j) + "_v", "r_v_" + q(j), "r_" + q(i) + "_v", "b_v_" + q(i));
    }
    // Paths Q_i -> v -> Q_j: the two colorings are identified.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            b.square("b_v_" + q(i), "r_" + q(j) + "_v", "r_v_" + q(i), "b_" + q(j) + "_v");
    return b.build();
}

inline KGraph standard_library(const std::string& name, int N = 0, const std::vector<int>& phi = {}) {
    if (name == "one_vertex_fefe") return make_one_vertex_fefe();
    if (name == "three_vertex_eight_edge") return make_three_vertex_eight_edge();
    if (name == "lambda_2N") return make_lambda_2n(N, phi);
    fail(ErrorCode::BadArgument, "unknown library graph '" + name + "'");
}

} // namespace kgraph

#endif // KGRAPH_LIBRARY_HPP
