#ifndef KGRAPH_INDUCTIVE_HPP
#define KGRAPH_INDUCTIVE_HPP

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <kgraph/infinite_path.hpp>
#include <kgraph/rational.hpp>

namespace kgraph {

// Canonical basis point of the inductive-limit space: stage i and a path mu
// with source v_i that does not end in the segment x_{i-1}.
struct InductiveBasisElement {
    int stage = 1;
    Path mu;

    friend bool operator==(const InductiveBasisElement& a, const InductiveBasisElement& b) {
        return a.stage == b.stage && a.mu == b.mu;
    }
    friend bool operator!=(const InductiveBasisElement& a, const InductiveBasisElement& b) { return !(a == b); }
    friend bool operator<(const InductiveBasisElement& a, const InductiveBasisElement& b) {
        if (a.stage != b.stage) return a.stage < b.stage;
        return a.mu < b.mu;
    }
};

template <class C> using InductiveVector = std::map<InductiveBasisElement, C>;

inline VertexId stage_vertex(const KGraph& g, const InfinitePathSpec& x, int stage) {
    return vertex_at_level(g, x, stage - 1);
}

// Strips the maximal trailing product x_l ... x_{i-1} from mu.
inline InductiveBasisElement canonical_rep(const KGraph& g, const InfinitePathSpec& x, int stage, Path mu) {
    if (stage < 1) fail(ErrorCode::BadArgument, "stage must be >= 1");
    if (source(g, mu) != stage_vertex(g, x, stage))
        fail(ErrorCode::SourceMismatch, "mu must have source r(x_stage)");
    Degree one = Degree::ones(g.k());
    while (stage >= 2) {
        Degree d = degree_of(g, mu);
        if (!leq(one, d)) break;
        auto [head, tail] = split(g, mu, d - one);
        if (tail != segment(g, x, stage - 1)) break;
        mu = head;
        --stage;
    }
    return {stage, mu};
}

inline bool is_canonical(const KGraph& g, const InfinitePathSpec& x, const InductiveBasisElement& b) {
    return canonical_rep(g, x, b.stage, b.mu) == b;
}

// T_lambda on a basis element; empty when the ranges do not match.
inline std::optional<InductiveBasisElement> apply_T(const KGraph& g, const InfinitePathSpec& x, const Path& lambda,
                                                    const InductiveBasisElement& b) {
    if (source(g, lambda) != range(g, b.mu)) return std::nullopt;
    return canonical_rep(g, x, b.stage, compose(g, lambda, b.mu));
}

// T*_lambda on a basis element: append enough segments of x to cover
// d(lambda), then test whether lambda is the degree-d(lambda) prefix.
inline std::optional<InductiveBasisElement> apply_T_adjoint(const KGraph& g, const InfinitePathSpec& x,
                                                            const Path& lambda, const InductiveBasisElement& b) {
    Degree dl = degree_of(g, lambda);
    Degree dm = degree_of(g, b.mu);
    int extra = 0;
    for (int c = 0; c < g.k(); ++c) extra = std::max(extra, dl[c] - dm[c]);
    Path mu = b.mu;
    int stage = b.stage;
    for (int t = 0; t < extra; ++t) {
        mu = compose(g, mu, segment(g, x, stage));
        ++stage;
    }
    if (range(g, mu) != range(g, lambda)) return std::nullopt;
    auto [head, rest] = split(g, mu, dl);
    if (head != lambda) return std::nullopt;
    return canonical_rep(g, x, stage, rest);
}

template <class C>
InductiveVector<C> apply_T_vec(const KGraph& g, const InfinitePathSpec& x, const Path& lambda,
                               const InductiveVector<C>& v, bool adjoint = false) {
    InductiveVector<C> out;
    for (const auto& [b, c] : v) {
        auto t = adjoint ? apply_T_adjoint(g, x, lambda, b) : apply_T(g, x, lambda, b);
        if (!t) continue;
        out[*t] += c;
        if (out[*t] == C(0)) out.erase(*t);
    }
    return out;
}

// ---- coding-map route (the discrete semibranching picture) ---------------

// tau^n on a basis point: append segments until the degree covers n, then
// drop the degree-n prefix.
inline InductiveBasisElement coding_map(const KGraph& g, const InfinitePathSpec& x, const Degree& n,
                                        const InductiveBasisElement& b) {
    Degree d = degree_of(g, b.mu);
    int extra = 0;
    for (int c = 0; c < g.k(); ++c) extra = std::max(extra, n[c] - d[c]);
    Path mu = b.mu;
    int stage = b.stage;
    for (int t = 0; t < extra; ++t) {
        mu = compose(g, mu, segment(g, x, stage));
        ++stage;
    }
    auto [head, rest] = split(g, mu, n);
    (void)head;
    return {stage, rest};
}

// Membership in R_lambda: lambda is the initial degree-d(lambda) factor of
// mu extended along x.
inline bool in_prefix_range(const KGraph& g, const InfinitePathSpec& x, const Path& lambda,
                            const InductiveBasisElement& b) {
    if (range(g, b.mu) != range(g, lambda)) return false;
    Degree dl = degree_of(g, lambda);
    Degree dm = degree_of(g, b.mu);
    int extra = 0;
    for (int c = 0; c < g.k(); ++c) extra = std::max(extra, dl[c] - dm[c]);
    Path mu = b.mu;
    int stage = b.stage;
    for (int t = 0; t < extra; ++t) {
        mu = compose(g, mu, segment(g, x, stage));
        ++stage;
    }
    return split(g, mu, dl).first == lambda;
}

// S_lambda delta_b computed through the coding map, as in the discrete
// semibranching function system; used as an independent cross-check of
// apply_T.
inline std::optional<InductiveBasisElement> apply_S_via_coding(const KGraph& g, const InfinitePathSpec& x,
                                                               const Path& lambda, const InductiveBasisElement& b,
                                                               const std::vector<InductiveBasisElement>& probe) {
    for (const auto& nu : probe) {
        if (!in_prefix_range(g, x, lambda, nu)) continue;
        InductiveBasisElement img = coding_map(g, x, degree_of(g, lambda), nu);
        InductiveBasisElement canon = canonical_rep(g, x, img.stage, img.mu);
        if (canon == b) return nu;
    }
    return std::nullopt;
}

// ---- enumeration ----------------------------------------------------------

// Canonical basis elements with stage <= stage_bound and |d(mu)| <= degree_bound.
inline std::vector<InductiveBasisElement> enumerate_basis(const KGraph& g, const InfinitePathSpec& x,
                                                          int degree_bound, int stage_bound) {
    std::vector<InductiveBasisElement> out;
    for (int i = 1; i <= stage_bound; ++i) {
        VertexId vi = stage_vertex(g, x, i);
        Degree cap(g.k(), degree_bound);
        for (const Degree& d : degrees_up_to(cap)) {
            if (d.total() > degree_bound) continue;
            for (const Path& p : paths_of_degree(g, d)) {
                if (source(g, p) != vi) continue;
                InductiveBasisElement b{i, p};
                if (is_canonical(g, x, b)) out.push_back(b);
            }
        }
    }
    return out;
}

inline std::vector<Path> paths_up_to_total(const KGraph& g, int degree_bound) {
    std::vector<Path> out;
    for (const Degree& d : degrees_up_to(Degree(g.k(), degree_bound))) {
        if (d.total() > degree_bound) continue;
        for (const Path& p : paths_of_degree(g, d)) out.push_back(p);
    }
    return out;
}

// ---- verification reports -------------------------------------------------

struct InductiveCKReport {
    struct Relation {
        std::string name;
        long cases = 0;
        long failures = 0;
    };
    std::vector<Relation> relations;
    bool pass = true;

    void add(const std::string& name, long cases, long failures) {
        relations.push_back({name, cases, failures});
        pass = pass && failures == 0;
    }
};

// CK1-CK4 checked exactly on the canonical basis; coefficients stay integral
// so equality is literal.
inline InductiveCKReport verify_ck_inductive(const KGraph& g, const InfinitePathSpec& x, int degree_bound,
                                             int stage_bound) {
    if (degree_bound < 1 || stage_bound < 1) fail(ErrorCode::BadArgument, "bounds must be >= 1");
    InductiveCKReport rep;
    auto basis = enumerate_basis(g, x, degree_bound, stage_bound);
    auto lambdas = paths_up_to_total(g, degree_bound);

    { // CK1: vertex operators are orthogonal idempotents
        long cases = 0, failures = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (VertexId w = 0; w < g.vertex_count(); ++w) {
                for (const auto& b : basis) {
                    ++cases;
                    auto inner = apply_T(g, x, vertex_path(w), b);
                    std::optional<InductiveBasisElement> lhs;
                    if (inner) lhs = apply_T(g, x, vertex_path(v), *inner);
                    std::optional<InductiveBasisElement> rhs;
                    if (v == w) rhs = apply_T(g, x, vertex_path(v), b);
                    if (lhs != rhs) ++failures;
                }
            }
        }
        rep.add("CK1_vertex_projections", cases, failures);
    }
    { // CK2
        long cases = 0, failures = 0;
        for (const Path& a : lambdas) {
            for (const Path& c : lambdas) {
                if (source(g, a) != range(g, c)) continue;
                Path ac = compose(g, a, c);
                for (const auto& b : basis) {
                    ++cases;
                    auto inner = apply_T(g, x, c, b);
                    std::optional<InductiveBasisElement> lhs;
                    if (inner) lhs = apply_T(g, x, a, *inner);
                    if (lhs != apply_T(g, x, ac, b)) ++failures;
                }
            }
        }
        rep.add("CK2_composition", cases, failures);
    }
    { // CK3
        long cases = 0, failures = 0;
        for (const Path& a : lambdas) {
            Path sv = vertex_path(source(g, a));
            for (const auto& b : basis) {
                ++cases;
                auto inner = apply_T(g, x, a, b);
                std::optional<InductiveBasisElement> lhs;
                if (inner) lhs = apply_T_adjoint(g, x, a, *inner);
                if (lhs != apply_T(g, x, sv, b)) ++failures;
            }
        }
        rep.add("CK3_isometry", cases, failures);
    }
    { // CK4: sum over vL^n of T T* equals T_v, with integer coefficients
        long cases = 0, failures = 0;
        for (const Degree& n : degrees_up_to(Degree(g.k(), degree_bound))) {
            if (n.total() > degree_bound) continue;
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                auto terms = paths_of_degree(g, n, v);
                for (const auto& b : basis) {
                    ++cases;
                    InductiveVector<long> total;
                    for (const Path& lam : terms) {
                        auto down = apply_T_adjoint(g, x, lam, b);
                        if (!down) continue;
                        auto up = apply_T(g, x, lam, *down);
                        if (up) total[*up] += 1;
                    }
                    InductiveVector<long> expect;
                    if (auto t = apply_T(g, x, vertex_path(v), b)) expect[*t] = 1;
                    if (total != expect) ++failures;
                }
            }
        }
        rep.add("CK4_sum", cases, failures);
    }
    return rep;
}

// ---- gauge action ----------------------------------------------------------

struct GaugePoint {
    std::vector<std::complex<double>> z;
};

inline std::complex<double> gauge_weight(const GaugePoint& z, const Degree& d, int shift) {
    std::complex<double> out(1.0, 0.0);
    for (int c = 0; c < d.rank(); ++c) {
        int e = d[c] - shift;
        std::complex<double> base = e >= 0 ? z.z[c] : std::conj(z.z[c]);
        for (int t = 0; t < std::abs(e); ++t) out *= base;
    }
    return out;
}

struct GaugeReport {
    long conjugation_cases = 0;
    long well_defined_cases = 0;
    double max_defect = 0;
    bool pass = true;
};

// U_z T_lambda U_z* = z^{d(lambda)} T_lambda on the sampled basis, plus
// well-definedness of U_z across the gluing relation.
inline GaugeReport gauge_check(const KGraph& g, const InfinitePathSpec& x, const GaugePoint& z, int degree_bound,
                               int stage_bound, double tol = 1e-12) {
    if (static_cast<int>(z.z.size()) != g.k()) fail(ErrorCode::BadArgument, "gauge point must have k entries");
    for (const auto& c : z.z)
        if (std::abs(std::abs(c) - 1.0) > 1e-12) fail(ErrorCode::NotUnimodular, "|z_j| must be 1");
    GaugeReport rep;
    auto basis = enumerate_basis(g, x, degree_bound, stage_bound);
    auto lambdas = paths_up_to_total(g, degree_bound);
    auto weight = [&](const InductiveBasisElement& b) {
        return gauge_weight(z, degree_of(g, b.mu), b.stage);
    };
    for (const auto& b : basis) {
        for (const Path& lam : lambdas) {
            auto t = apply_T(g, x, lam, b);
            if (!t) continue;
            ++rep.conjugation_cases;
            std::complex<double> lhs = std::conj(weight(b)) * weight(*t);
            std::complex<double> rhs = gauge_weight(z, degree_of(g, lam), 0);
            rep.max_defect = std::max(rep.max_defect, std::abs(lhs - rhs));
        }
        // value on (i, mu) equals value on (i+1, mu x_i)
        ++rep.well_defined_cases;
        InductiveBasisElement pushed{b.stage + 1, compose(g, b.mu, segment(g, x, b.stage))};
        rep.max_defect = std::max(rep.max_defect, std::abs(weight(b) - weight(pushed)));
    }
    rep.pass = rep.max_defect <= tol;
    return rep;
}

// ---- shift-tail intertwiner -------------------------------------------------

struct IntertwinerReport {
    bool tails_ok = false;
    long probed = 0;
    long well_defined_failures = 0;
    long intertwine_cases = 0;
    long intertwine_failures = 0;
    bool injective = true;
    long y_probed = 0;
    long y_hit = 0;
    bool pass = false;
};

// phi([xi^i_mu]_x) = [xi^j_{mu lambda}]_y where lambda is the common segment
// of x and y between the stage-i vertex of x and the stage-j vertex of y,
// j minimal subject to the segment having non-negative degree.
inline InductiveBasisElement intertwine_image(const KGraph& g, const InfinitePathSpec& x, const Degree& m,
                                              const InfinitePathSpec& y, const Degree& n,
                                              const InductiveBasisElement& b) {
    int i0 = std::max(b.stage, m.max_entry() + 1);
    Path mu = b.mu;
    for (int t = b.stage; t < i0; ++t) mu = compose(g, mu, segment(g, x, t));
    // smallest j with (j-1)*(1,..,1) >= n and (j-1)*(1,..,1) - n >= (i0-1)*(1,..,1) - m
    int jm1 = 0;
    for (int c = 0; c < g.k(); ++c) {
        jm1 = std::max(jm1, n[c]);
        jm1 = std::max(jm1, (i0 - 1) - m[c] + n[c]);
    }
    int j = jm1 + 1;
    Degree a = n + (Degree(g.k(), i0 - 1) - m);
    Path lambda = segment_between(g, y, a, Degree(g.k(), jm1));
    Path img = compose(g, mu, lambda);
    return canonical_rep(g, y, j, img);
}

inline IntertwinerReport shift_tail_intertwiner(const KGraph& g, const InfinitePathSpec& x, const Degree& m,
                                                const InfinitePathSpec& y, const Degree& n, int degree_bound,
                                                int stage_bound) {
    IntertwinerReport rep;
    int check_levels = stage_bound + degree_bound + 2;
    rep.tails_ok = tails_agree(g, x, m, y, n, check_levels);
    if (!rep.tails_ok) fail(ErrorCode::TailMismatch, "sigma^m(x) != sigma^n(y) on the probed prefix");

    auto basis = enumerate_basis(g, x, degree_bound, stage_bound);
    auto lambdas = paths_up_to_total(g, degree_bound);

    std::map<InductiveBasisElement, InductiveBasisElement> image;
    std::set<InductiveBasisElement> seen;
    for (const auto& b : basis) {
        InductiveBasisElement img = intertwine_image(g, x, m, y, n, b);
        image[b] = img;
        if (!seen.insert(img).second) rep.injective = false;
        ++rep.probed;
        // well-definedness across the gluing relation
        InductiveBasisElement pushed{b.stage + 1, compose(g, b.mu, segment(g, x, b.stage))};
        if (intertwine_image(g, x, m, y, n, pushed) != img) ++rep.well_defined_failures;
    }
    for (const auto& b : basis) {
        for (const Path& lam : lambdas) {
            ++rep.intertwine_cases;
            auto tx = apply_T(g, x, lam, b);
            std::optional<InductiveBasisElement> lhs;
            if (tx) lhs = intertwine_image(g, x, m, y, n, *tx);
            auto rhs = apply_T(g, y, lam, image[b]);
            if (lhs != rhs) ++rep.intertwine_failures;
        }
    }
    auto y_basis = enumerate_basis(g, y, degree_bound, stage_bound);
    rep.y_probed = static_cast<long>(y_basis.size());
    for (const auto& yb : y_basis)
        if (seen.count(yb)) ++rep.y_hit;
    rep.pass = rep.tails_ok && rep.well_defined_failures == 0 && rep.injective && rep.intertwine_failures == 0;
    return rep;
}

// ---- direct sum over vertex-rooted summands ---------------------------------

struct DirectSumReport {
    long paths_checked = 0;
    long nonzero_failures = 0;
    bool summand_ck_pass = true;
    bool pass = false;
    std::vector<std::string> failures;
};

inline DirectSumReport direct_sum_nonzero_check(const KGraph& g,
                                                const std::map<VertexId, InfinitePathSpec>& choices,
                                                int degree_bound) {
    DirectSumReport rep;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto it = choices.find(v);
        if (it == choices.end()) fail(ErrorCode::BadChoice, "missing infinite path at vertex " + g.vertex(v).id);
        if (range_of(g, it->second) != v)
            fail(ErrorCode::BadChoice, "chosen path at " + g.vertex(v).id + " has the wrong range");
    }
    for (const Path& mu : paths_up_to_total(g, degree_bound)) {
        ++rep.paths_checked;
        const InfinitePathSpec& y = choices.at(source(g, mu));
        InductiveBasisElement unit{1, vertex_path(source(g, mu))};
        auto img = apply_T(g, y, mu, unit);
        bool ok = img.has_value() && img->stage == 1 && img->mu == mu;
        if (!ok) {
            ++rep.nonzero_failures;
            rep.failures.push_back(path_str(g, mu));
        }
    }
    for (const auto& [v, y] : choices) {
        auto ck = verify_ck_inductive(g, y, std::min(degree_bound, 2), 2);
        rep.summand_ck_pass = rep.summand_ck_pass && ck.pass;
    }
    rep.pass = rep.nonzero_failures == 0 && rep.summand_ck_pass;
    return rep;
}

} // namespace kgraph

#endif // KGRAPH_INDUCTIVE_HPP
