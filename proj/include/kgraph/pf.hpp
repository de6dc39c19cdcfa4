#ifndef KGRAPH_PF_HPP
#define KGRAPH_PF_HPP

#include <cmath>
#include <vector>

#include <kgraph/graph.hpp>
#include <kgraph/rational.hpp>

namespace kgraph {

// Perron-Frobenius data: spectral radii of the vertex matrices and the common
// unimodular eigenvector. Exact when every vertex matrix has constant row
// sums (then rho_i is that integer and kappa is uniform); floating point with
// power iteration otherwise.
struct PFData {
    std::vector<double> rho;
    std::vector<double> kappa;
    bool exact = false;
    std::vector<Rat> rho_q;   // filled when exact
    std::vector<Rat> kappa_q; // filled when exact
};

namespace detail {

// Largest eigenvalue and positive eigenvector of an irreducible non-negative
// matrix. Iterates on A + I so periodic matrices converge too.
inline std::pair<double, std::vector<double>> power_iteration(const std::vector<std::vector<std::int64_t>>& a,
                                                              double tol = 1e-13, int max_iter = 100000) {
    int n = static_cast<int>(a.size());
    std::vector<double> v(n, 1.0), w(n, 0.0);
    double lambda = 0.0, prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = v[i]; // the +I shift
            for (int j = 0; j < n; ++j) acc += static_cast<double>(a[i][j]) * v[j];
            w[i] = acc;
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += w[i];
        for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
        lambda = norm; // Rayleigh-like: sum since v is 1-normalized on entry
        if (prev >= 0 && std::abs(lambda - prev) <= tol * std::abs(lambda)) break;
        prev = lambda;
    }
    return {lambda - 1.0, v};
}

inline bool constant_row_sums(const std::vector<std::vector<std::int64_t>>& a, std::int64_t& sum) {
    sum = 0;
    for (std::size_t j = 0; j < a.size(); ++j) sum += a.empty() ? 0 : a[0][j];
    for (const auto& row : a) {
        std::int64_t s = 0;
        for (auto x : row) s += x;
        if (s != sum) return false;
    }
    return true;
}

} // namespace detail

inline PFData pf_data(const KGraph& g) {
    if (!g.strongly_connected()) fail(ErrorCode::NotStronglyConnected, "PF data needs a strongly connected graph");

    PFData out;
    int n = g.vertex_count();

    bool all_constant = true;
    std::vector<std::int64_t> sums(g.k());
    for (Color i = 1; i <= g.k(); ++i) {
        auto a = g.vertex_matrix(i);
        if (!detail::constant_row_sums(a, sums[i - 1])) {
            all_constant = false;
            break;
        }
    }
    if (all_constant) {
        out.exact = true;
        for (Color i = 1; i <= g.k(); ++i) {
            out.rho_q.push_back(Rat(sums[i - 1]));
            out.rho.push_back(static_cast<double>(sums[i - 1]));
        }
        for (int v = 0; v < n; ++v) {
            out.kappa_q.push_back(Rat(1, n));
            out.kappa.push_back(1.0 / n);
        }
        return out;
    }

    auto a1 = g.vertex_matrix(1);
    auto [rho1, kappa] = detail::power_iteration(a1);
    out.rho.push_back(rho1);
    out.kappa = kappa;
    for (Color i = 2; i <= g.k(); ++i) out.rho.push_back(detail::power_iteration(g.vertex_matrix(i)).first);

    // kappa must be the common eigenvector of every vertex matrix.
    for (Color i = 1; i <= g.k(); ++i) {
        auto a = g.vertex_matrix(i);
        for (int r = 0; r < n; ++r) {
            double acc = 0;
            for (int c = 0; c < n; ++c) acc += static_cast<double>(a[r][c]) * out.kappa[c];
            if (std::abs(acc - out.rho[i - 1] * out.kappa[r]) > 1e-10)
                fail(ErrorCode::NoCommonEigenvector,
                     "A_" + std::to_string(i) + " does not fix the Perron eigenvector of A_1");
        }
    }
    return out;
}

} // namespace kgraph

#endif // KGRAPH_PF_HPP
