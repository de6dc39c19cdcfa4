#ifndef KGRAPH_HELLINGER_HPP
#define KGRAPH_HELLINGER_HPP

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <kgraph/measure.hpp>

namespace kgraph {

// H_n = sum over square level-n cylinders of sqrt(mass1 * mass2), computed by
// a joint transfer recursion over (vertex, state1, state2) so deep levels stay
// cheap. Monotone non-increasing and in [0,1] for probability measures.
inline std::vector<double> hellinger_profile(const CylinderMeasure& m1, const CylinderMeasure& m2, int depth) {
    if (!(m1.graph() == m2.graph())) fail(ErrorCode::GraphMismatch, "measures live on different graphs");
    if (depth < 1) fail(ErrorCode::BadArgument, "depth must be >= 1");
    const KGraph& g = m1.graph();

    using Key = std::tuple<VertexId, int, int>;
    std::map<Key, double> cur;
    {
        std::map<VertexId, std::pair<int, double>> r2;
        for (const auto& r : m2.dp_roots()) r2[r.vertex] = {r.state, r.mass};
        for (const auto& r : m1.dp_roots()) {
            auto it = r2.find(r.vertex);
            if (it == r2.end()) continue;
            cur[{r.vertex, r.state, it->second.first}] += std::sqrt(r.mass * it->second.second);
        }
    }

    std::vector<std::vector<Path>> units(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) units[v] = paths_of_degree(g, Degree::ones(g.k()), v);

    std::vector<double> profile;
    for (int level = 1; level <= depth; ++level) {
        std::map<Key, double> next;
        for (const auto& [key, w] : cur) {
            auto [v, s1, s2] = key;
            for (const Path& u : units[v]) {
                auto [w1, t1] = m1.dp_step(level, s1, u);
                auto [w2, t2] = m2.dp_step(level, s2, u);
                next[{source(g, u), t1, t2}] += w * std::sqrt(w1 * w2);
            }
        }
        cur = std::move(next);
        double h = 0;
        for (const auto& [key, w] : cur) h += w;
        profile.push_back(h);
    }
    return profile;
}

enum class Verdict { Equivalent, Singular, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Singular: return "singular";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct EquivalenceEvidence {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> profile;
    double last_ratio = 1.0;
    double limit = 0.0;
    bool converged = false;
    bool positive = false;
};

// Numeric Kakutani-dichotomy probe: singular when the per-level Hellinger
// ratio stays below 1 - eps over the last half of the run, equivalent when
// the profile has converged to a positive limit and both measures stay
// positive on the probed cylinders.
inline EquivalenceEvidence equivalence_verdict(const CylinderMeasure& m1, const CylinderMeasure& m2, int depth) {
    constexpr double kRatioEps = 1e-6;
    constexpr double kConvergeEps = 1e-9;
    constexpr double kPositiveLimit = 1e-6;

    EquivalenceEvidence ev;
    ev.profile = hellinger_profile(m1, m2, depth);
    const auto& h = ev.profile;
    int n = static_cast<int>(h.size());
    ev.last_ratio = n >= 2 ? h[n - 1] / h[n - 2] : 1.0;
    ev.limit = h.back();
    ev.converged = n >= 2 && std::abs(h[n - 1] - h[n - 2]) < kConvergeEps;
    ev.positive = m1.positive_to_depth(depth) && m2.positive_to_depth(depth);

    bool ratio_small = n >= 2;
    for (int i = std::max(1, n - depth / 2); i < n && ratio_small; ++i) {
        if (h[i - 1] <= 0 || h[i] / h[i - 1] > 1.0 - kRatioEps) ratio_small = false;
    }
    if (ratio_small) {
        ev.verdict = Verdict::Singular;
    } else if (ev.converged && ev.limit > kPositiveLimit && ev.positive) {
        ev.verdict = Verdict::Equivalent;
    } else {
        ev.verdict = Verdict::Inconclusive;
    }
    return ev;
}

} // namespace kgraph

#endif // KGRAPH_HELLINGER_HPP
