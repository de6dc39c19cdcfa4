#ifndef KGRAPH_REPR_L2_HPP
#define KGRAPH_REPR_L2_HPP

#include <functional>
#include <string>
#include <vector>

#include <kgraph/parallel.hpp>
#include <kgraph/step_function.hpp>

namespace kgraph {

struct OperatorLetter {
    Path path;
    bool starred = false;
};
using OperatorWord = std::vector<OperatorLetter>;

struct CKRelationResult {
    std::string name;
    long cases = 0;
    double max_defect = 0;
    bool pass = true;
};

struct CKReport {
    std::vector<CKRelationResult> relations;
    bool pass = true;
    bool exact = false;
    double tol = 0;
    int rn_depth = 0;
    double rn_error = 1.0; // certified multiplicative RN error at rn_depth

    const CKRelationResult* find(const std::string& name) const {
        for (const auto& r : relations)
            if (r.name == name) return &r;
        return nullptr;
    }
};

// Operators S_lambda of the semibranching representation acting on cylinder
// step functions. Radon-Nikodym values are consumed as cylinder-constant at
// `rn_depth` levels; exact for measures with a finite constancy depth,
// certified-approximate otherwise.
template <class Mode> class L2Rep {
public:
    using Coeff = typename Mode::Coeff;
    using Fn = StepFunction<Coeff>;

    L2Rep(const CylinderMeasure& m, int rn_depth) : m_(&m), g_(&m.graph()) {
        rn_depth_ = m.constancy_depth().value_or(rn_depth);
    }

    const KGraph& graph() const { return *g_; }
    int rn_depth() const { return rn_depth_; }

    // Phi_{sigma_lambda} evaluated on Z(base), as a mass ratio.
    typename Mode::Mass rn_value(const Path& lambda, const Path& base) const {
        typename Mode::Mass den = Mode::mass(*m_, base);
        if (den == typename Mode::Mass(0)) fail(ErrorCode::ZeroMassBase, "zero mass base");
        return Mode::mass(*m_, compose(*g_, lambda, base)) / den;
    }

    Fn apply_s(const Path& lambda, const Fn& f) const {
        Degree dl = degree_of(*g_, lambda);
        int base_level = std::max(f.level, rn_depth_);
        Fn out;
        out.level = base_level + dl.max_entry();
        Degree out_deg(g_->k(), out.level);
        for (const auto& [eta, c] : f.coeff) {
            if (range(*g_, eta) != source(*g_, lambda)) continue;
            for (const Path& mu : paths_of_degree(*g_, Degree(g_->k(), base_level - f.level), source(*g_, eta))) {
                Path base = compose(*g_, eta, mu);
                Coeff w = c * Mode::sqrt_mass(typename Mode::Mass(1) / rn_value(lambda, base));
                Path p = compose(*g_, lambda, base);
                for (const Path& fill : paths_of_degree(*g_, out_deg - degree_of(*g_, p), source(*g_, p)))
                    out.add_term(compose(*g_, p, fill), w);
            }
        }
        return out;
    }

    Fn apply_s_adjoint(const Path& lambda, const Fn& f) const {
        Degree dl = degree_of(*g_, lambda);
        // Every Lambda^min(lambda, eta) extension alpha has degree
        // join(dl, level) - dl, so one output level covers all terms.
        Degree top = join(dl, Degree(g_->k(), f.level));
        Degree da = top - dl;
        int out_level = std::max(da.max_entry(), rn_depth_);
        Fn out;
        out.level = out_level;
        for (const auto& [eta, c] : f.coeff) {
            for (const auto& [alpha, beta] : lambda_min(*g_, lambda, eta)) {
                (void)beta;
                for (const Path& mu :
                     paths_of_degree(*g_, Degree(g_->k(), out_level) - degree_of(*g_, alpha), source(*g_, alpha))) {
                    Path base = compose(*g_, alpha, mu);
                    out.add_term(base, c * Mode::sqrt_mass(rn_value(lambda, base)));
                }
            }
        }
        return out;
    }

    Fn apply_word(const OperatorWord& w, const Fn& f) const {
        Fn cur = f;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            cur = it->starred ? apply_s_adjoint(it->path, cur) : apply_s(it->path, cur);
        return cur;
    }

    // || f - h || in the measure 2-norm; exactly zero in exact mode when the
    // functions agree.
    double defect(const Fn& f, const Fn& h) const {
        int lvl = std::max(f.level, h.level);
        Fn a = refine(*g_, f, lvl);
        Fn b = refine(*g_, h, lvl);
        for (const auto& [p, c] : b.coeff) a.add_term(p, Coeff(0) - c);
        Coeff d2 = inner_product<Mode>(*m_, a, a);
        double v = Mode::to_double(d2);
        return v <= 0 ? 0.0 : std::sqrt(v);
    }

    const CylinderMeasure& measure() const { return *m_; }

private:
    const CylinderMeasure* m_;
    const KGraph* g_;
    int rn_depth_;
};

namespace detail {

template <class Mode>
CKReport verify_ck_impl(const CylinderMeasure& m, int level, const Degree& bound, double tol, int rn_depth) {
    const KGraph& g = m.graph();
    L2Rep<Mode> rep(m, rn_depth);
    using Fn = typename L2Rep<Mode>::Fn;

    CKReport report;
    report.exact = m.exact() && m.constancy_depth().has_value();
    report.rn_depth = rep.rn_depth();
    report.rn_error = m.tail_error(rep.rn_depth());
    // Without a finite constancy depth the operators are approximate; widen
    // the tolerance by the certified multiplicative error.
    report.tol = report.exact ? tol : std::max(tol, 10.0 * (report.rn_error - 1.0) + tol);

    std::vector<Fn> basis;
    for (const Path& p : paths_of_degree(g, Degree(g.k(), level))) basis.push_back(Fn::indicator(g, p));

    std::vector<Path> lambdas;
    for (const Degree& d : degrees_up_to(bound))
        for (const Path& p : paths_of_degree(g, d)) lambdas.push_back(p);

    // Cases are independent pure evaluations; they run under the
    // KGRAPH_THREADS cap and are reduced in index order.
    auto run = [&](const std::string& name, std::vector<std::function<double()>> cases) {
        CKRelationResult r;
        r.name = name;
        r.cases = static_cast<long>(cases.size());
        for (double d : evaluate_cases(cases)) r.max_defect = std::max(r.max_defect, d);
        r.pass = r.max_defect <= report.tol;
        report.pass = report.pass && r.pass;
        report.relations.push_back(r);
    };

    {
        std::vector<std::function<double()>> cases;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            for (VertexId w = 0; w < g.vertex_count(); ++w) {
                for (const Fn& b : basis) {
                    cases.push_back([&rep, &g, v, w, &b] {
                        Fn lhs = rep.apply_s(vertex_path(v), rep.apply_s(vertex_path(w), b));
                        Fn rhs;
                        rhs.level = lhs.level;
                        if (v == w) rhs = rep.apply_s(vertex_path(v), b); // projection, idempotent
                        return rep.defect(lhs, rhs);
                    });
                }
            }
        }
        run("CK1_vertex_projections", std::move(cases));
    }

    {
        std::vector<std::function<double()>> cases;
        for (const Path& a : lambdas) {
            for (const Path& b : lambdas) {
                if (source(g, a) != range(g, b)) continue;
                Path ab = compose(g, a, b);
                for (const Fn& f : basis) {
                    cases.push_back([&rep, a, b, ab, &f] {
                        return rep.defect(rep.apply_s(a, rep.apply_s(b, f)), rep.apply_s(ab, f));
                    });
                }
            }
        }
        run("CK2_composition", std::move(cases));
    }

    {
        std::vector<std::function<double()>> cases;
        for (const Path& a : lambdas) {
            Path sv = vertex_path(source(g, a));
            for (const Fn& f : basis) {
                cases.push_back([&rep, a, sv, &f] {
                    return rep.defect(rep.apply_s_adjoint(a, rep.apply_s(a, f)), rep.apply_s(sv, f));
                });
            }
        }
        run("CK3_isometry", std::move(cases));
    }

    {
        std::vector<std::function<double()>> cases;
        for (const Degree& n : degrees_up_to(bound)) {
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                auto terms = paths_of_degree(g, n, v);
                for (const Fn& f : basis) {
                    cases.push_back([&rep, &g, terms, v, &f] {
                        Fn total;
                        bool first = true;
                        for (const Path& lam : terms) {
                            Fn t = rep.apply_s(lam, rep.apply_s_adjoint(lam, f));
                            if (first) {
                                total = t;
                                first = false;
                            } else {
                                int lvl = std::max(total.level, t.level);
                                total = refine(g, total, lvl);
                                total += refine(g, t, lvl);
                            }
                        }
                        Fn rhs = rep.apply_s(vertex_path(v), f);
                        if (first) total.level = rhs.level;
                        return rep.defect(total, rhs);
                    });
                }
            }
        }
        run("CK4_sum", std::move(cases));
    }

    {
        std::vector<std::function<double()>> cases;
        for (const Path& a : lambdas) {
            for (const Path& e : lambdas) {
                for (const Fn& f : basis) {
                    cases.push_back([&rep, &g, a, e, &f] {
                        Fn lhs = rep.apply_s_adjoint(a, rep.apply_s(e, f));
                        Fn total;
                        bool first = true;
                        for (const auto& [alpha, beta] : lambda_min(g, a, e)) {
                            Fn t = rep.apply_s(alpha, rep.apply_s_adjoint(beta, f));
                            if (first) {
                                total = t;
                                first = false;
                            } else {
                                int lvl = std::max(total.level, t.level);
                                total = refine(g, total, lvl);
                                total += refine(g, t, lvl);
                            }
                        }
                        if (first) total.level = lhs.level;
                        return rep.defect(lhs, total);
                    });
                }
            }
        }
        run("eq_lambda_min_expansion", std::move(cases));
    }

    return report;
}

} // namespace detail

// Verifies (CK1)-(CK4) and the Lambda^min expansion of s*_lambda s_eta on all
// level-`level` basis indicators against paths of degree <= bound. Exact
// (tolerance 0) whenever the measure supports exact masses and a finite RN
// constancy depth.
inline CKReport verify_ck_l2(const CylinderMeasure& m, int level, const Degree& bound, double tol = -1,
                             int rn_depth = -1, bool force_exact = false) {
    bool exact = m.exact() && m.constancy_depth().has_value();
    if (force_exact && !exact)
        fail(ErrorCode::UnsupportedMeasure, "measure does not support exact CK verification");
    if (rn_depth < 0) rn_depth = level + bound.max_entry();
    if (tol < 0) tol = exact ? 0.0 : 1e-9;
    if (exact) return detail::verify_ck_impl<detail::ExactL2Mode>(m, level, bound, tol, rn_depth);
    return detail::verify_ck_impl<detail::FloatL2Mode>(m, level, bound, tol, rn_depth);
}

} // namespace kgraph

#endif // KGRAPH_REPR_L2_HPP
