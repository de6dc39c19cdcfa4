// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero when anything fails.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <kgraph/hellinger.hpp>
#include <kgraph/inductive.hpp>
#include <kgraph/library.hpp>
#include <kgraph/product.hpp>
#include <kgraph/repr_l2.hpp>
#include <kgraph/sbfs_library.hpp>
#include <kgraph/validate.hpp>

using namespace kgraph;

namespace {

struct Harness {
    int failures = 0;

    void run(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
};

bool require(bool cond, const std::string& what, std::string& detail) {
    if (!cond && detail.empty()) detail = what;
    return cond;
}

Path by_ids(const KGraph& g, std::initializer_list<const char*> ids) {
    std::vector<EdgeId> word;
    for (const char* id : ids) word.push_back(g.edge_by_id(id));
    return normal_form(g, word, 0);
}

double eigen_radius(const KGraph& g, Color c) {
    int n = g.vertex_count();
    Eigen::MatrixXd a(n, n);
    auto m = g.vertex_matrix(c);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) a(r, s) = static_cast<double>(m[r][s]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    double best = 0;
    for (int i = 0; i < n; ++i) best = std::max(best, es.eigenvalues()(i).real());
    return best;
}

} // namespace

int main() {
    Harness h;

    auto g1 = make_one_vertex_fefe();
    auto g2 = make_three_vertex_eight_edge();
    auto g3 = make_lambda_2n(1, {2, 1});
    auto x1 = cyclic_infinite_path(g1, by_ids(g1, {"e", "f1"}));
    auto x2 = cyclic_infinite_path(g2, by_ids(g2, {"a0", "b0"}));

    h.run(1, "library graphs validate with exactly commuting vertex matrices", [&](std::string& d) {
        bool ok = true;
        for (const KGraph* g : {&g1, &g2, &g3}) {
            auto rep = validate_kgraph(*g);
            ok = require(rep.pass, "validation failed", d) && ok;
            for (const auto& c : rep.checks)
                if (c.name == "commuting_vertex_matrices") ok = require(c.pass, "matrices do not commute", d) && ok;
        }
        return ok;
    });

    h.run(2, "Perron-Frobenius data, exact and against the eigen oracle", [&](std::string& d) {
        auto pf1 = pf_data(g1);
        bool ok = require(pf1.exact, "one-vertex PF data is not exact", d);
        ok = require(pf1.rho_q == std::vector<Rat>{Rat(2), Rat(1)}, "rho != (2,1)", d) && ok;
        ok = require(pf1.kappa_q == std::vector<Rat>{Rat(1)}, "kappa != (1)", d) && ok;

        auto pf2 = pf_data(g2);
        const double sqrt2 = std::sqrt(2.0);
        for (Color c = 1; c <= 2; ++c) {
            ok = require(std::abs(pf2.rho[c - 1] - sqrt2) < 1e-10, "rho is not sqrt(2) within 1e-10", d) && ok;
            ok = require(std::abs(pf2.rho[c - 1] - eigen_radius(g2, c)) < 1e-10, "eigen oracle disagrees", d) && ok;
            auto a = g2.vertex_matrix(c);
            for (int r = 0; r < 3; ++r) {
                double acc = 0;
                for (int s = 0; s < 3; ++s) acc += static_cast<double>(a[r][s]) * pf2.kappa[s];
                ok = require(std::abs(acc - pf2.rho[c - 1] * pf2.kappa[r]) < 1e-10, "A kappa != rho kappa", d) && ok;
            }
        }
        return ok;
    });

    h.run(3, "Kolmogorov consistency to depth 6 for every constructed measure", [&](std::string& d) {
        bool ok = true;
        std::vector<CylinderMeasure> exact_ms;
        exact_ms.push_back(CylinderMeasure::pf(g1));
        exact_ms.push_back(CylinderMeasure::markov_x(g1, Rat(3, 10)));
        exact_ms.push_back(CylinderMeasure::markov_x(g1, Rat(1, 2)));
        exact_ms.push_back(CylinderMeasure::markov_x(g1, Rat(6, 10)));
        exact_ms.push_back(CylinderMeasure::kakutani(g1, PerturbationSeq::geometric(Rat(1), Rat(1, 4))));
        exact_ms.push_back(CylinderMeasure::lambda2n_markov(g3, {1, {2, 1}, {{Rat(1, 3), Rat(2, 3)}}}));
        exact_ms.push_back(
            CylinderMeasure::product2n(g3, {1, {2, 1}, {PerturbationSeq::geometric(Rat(1, 2), Rat(1, 2))}}));
        for (const auto& m : exact_ms) {
            auto rep = m.check_kolmogorov(6);
            ok = require(rep.exact && rep.pass && rep.max_defect == 0.0,
                         std::string("exact defect for ") + measure_kind_name(m.kind()), d) &&
                 ok;
        }
        for (const KGraph* g : {&g2, &g3}) {
            auto rep = CylinderMeasure::pf(*g).check_kolmogorov(6);
            ok = require(rep.pass && rep.max_defect < 1e-12, "floating defect exceeds 1e-12", d) && ok;
        }
        return ok;
    });

    h.run(4, "Cuntz-Krieger relations in L2, exact and floating", [&](std::string& d) {
        auto repM = verify_ck_l2(CylinderMeasure::pf(g1), 2, Degree{2, 2}, -1, -1, true);
        bool ok = require(repM.exact && repM.pass, "one-vertex PF verification failed", d);
        for (const auto& r : repM.relations) ok = require(r.max_defect == 0.0, r.name + " defect nonzero", d) && ok;

        auto rep3 = verify_ck_l2(CylinderMeasure::markov_x(g1, Rat(3, 10)), 2, Degree{2, 2}, -1, -1, true);
        ok = require(rep3.exact && rep3.pass, "one-vertex markov verification failed", d) && ok;
        for (const auto& r : rep3.relations) ok = require(r.max_defect == 0.0, r.name + " defect nonzero", d) && ok;

        auto repF = verify_ck_l2(CylinderMeasure::pf(g2), 2, Degree{2, 2});
        ok = require(repF.pass, "three-vertex verification failed", d) && ok;
        for (const auto& r : repF.relations)
            ok = require(r.max_defect < 1e-9, r.name + " defect above 1e-9", d) && ok;

        for (const auto* rep : {&repM, &rep3, &repF}) {
            const auto* eq = rep->find("eq_lambda_min_expansion");
            ok = require(eq != nullptr && eq->pass && eq->cases > 0, "lambda_min expansion missing", d) && ok;
        }
        return ok;
    });

    h.run(5, "Markov Radon-Nikodym derivatives, exact values", [&](std::string& d) {
        Rat xv(3, 10);
        auto m = CylinderMeasure::markov_x(g1, xv);
        auto est_e = m.rn_at_point(by_ids(g1, {"e"}), x1, 6);
        bool ok = require(est_e.exact && est_e.value_q == Rat(1) && est_e.stabilized_at == 1, "sigma_e != 1", d);
        auto est_f1 = m.rn_at_point(by_ids(g1, {"f1"}), x1, 6);
        ok = require(est_f1.exact && est_f1.value_q == xv && est_f1.stabilized_at == 1, "sigma_f1 != T(2,2)", d) && ok;
        auto est_f2 = m.rn_at_point(by_ids(g1, {"f2"}), x1, 6);
        ok = require(est_f2.exact && est_f2.value_q == Rat(1) - xv, "sigma_f2 != T(1,2)", d) && ok;

        auto m3 = CylinderMeasure::lambda2n_markov(g3, {1, {2, 1}, {{Rat(1, 3), Rat(2, 3)}}});
        auto xi = cyclic_infinite_path(g3, by_ids(g3, {"r_u1_v", "b_v_u1"})); // b_1 = 1
        auto red = m3.rn_at_point(by_ids(g3, {"r_v_u1"}), xi, 5);             // range Q_1
        const auto& T = m3.lambda2n_matrix();
        ok = require(red.exact && red.value_q == T[0][1] && red.stabilized_at == 1, "red edge != T(1, phi(b1))", d) &&
             ok;
        auto zeta = cyclic_infinite_path(g3, by_ids(g3, {"r_v_u1", "b_u1_v"}));
        auto blue = m3.rn_at_point(by_ids(g3, {"b_u1_v"}), zeta, 5);
        ok = require(blue.exact && blue.value_q == Rat(1), "blue edge into v != 1", d) && ok;
        return ok;
    });

    h.run(6, "Kakutani measure equivalent to M with certified error", [&](std::string& d) {
        auto kk = CylinderMeasure::kakutani(g1, PerturbationSeq::geometric(Rat(1), Rat(1, 4)));
        auto M = CylinderMeasure::pf(g1);
        auto ev = equivalence_verdict(kk, M, 30);
        bool ok = require(ev.verdict == Verdict::Equivalent, "verdict is not equivalent", d);
        auto est = kk.rn_at_point(by_ids(g1, {"f1"}), x1, 12);
        ok = require(est.value > 0 && est.mult_error < 1.0001, "mult error not below 1.0001 at depth 12", d) && ok;
        ok = require(std::abs(ev.profile[29] - ev.profile[28]) < 1e-9, "profile not converged by n=30", d) && ok;
        return ok;
    });

    h.run(7, "Markov measures singular to M with the predicted Hellinger ratios", [&](std::string& d) {
        auto M = CylinderMeasure::pf(g1);
        auto m3 = CylinderMeasure::markov_x(g1, Rat(3, 10));
        auto m5 = CylinderMeasure::markov_x(g1, Rat(1, 2));
        auto m6 = CylinderMeasure::markov_x(g1, Rat(6, 10));

        auto ev3 = equivalence_verdict(m3, M, 40);
        bool ok = require(ev3.verdict == Verdict::Singular, "mu_0.3 vs M not singular", d);
        double want = (std::sqrt(0.3) + std::sqrt(0.7)) / std::sqrt(2.0);
        ok = require(std::abs(ev3.last_ratio - want) < 1e-6, "ratio != (sqrt(.3)+sqrt(.7))/sqrt(2)", d) && ok;

        auto ev36 = equivalence_verdict(m3, m6, 40);
        ok = require(ev36.verdict == Verdict::Singular, "mu_0.3 vs mu_0.6 not singular", d) && ok;
        double want36 = std::sqrt(0.18) + std::sqrt(0.28);
        ok = require(std::abs(ev36.last_ratio - want36) < 1e-6, "ratio != sqrt(.18)+sqrt(.28)", d) && ok;

        ok = require(equivalence_verdict(m5, M, 40).verdict == Verdict::Equivalent, "mu_0.5 vs M not equivalent", d) &&
             ok;
        return ok;
    });

    h.run(8, "geometric semibranching systems and their product", [&](std::string& d) {
        auto s2 = interval_system_three_vertex(g2);
        auto rep2 = validate_sbfs_conditions(s2);
        bool ok = require(rep2.pass, "interval system fails a condition", d);
        // derivative values per edge: 1/2 for b/c, 1 for a/d
        for (const char* e : {"c0", "b0"})
            ok = require(rn_derivative_geometric(1, s2.maps.at(g2.edge_by_id(e)), Rat(1, 6)) == Rat(1, 2),
                         std::string(e) + " derivative != 1/2", d) &&
                 ok;
        for (const char* e : {"c1", "b1"})
            ok = require(rn_derivative_geometric(1, s2.maps.at(g2.edge_by_id(e)), Rat(3, 4)) == Rat(1, 2),
                         std::string(e) + " derivative != 1/2", d) &&
                 ok;
        for (const char* e : {"a0", "a1", "d0", "d1"})
            ok = require(rn_derivative_geometric(1, s2.maps.at(g2.edge_by_id(e)), Rat(1, 2)) == Rat(1),
                         std::string(e) + " derivative != 1", d) &&
                 ok;

        auto s1 = square_system_one_vertex(g1);
        ok = require(validate_sbfs_conditions(s1).pass, "square system fails a condition", d) && ok;
        ok = require(rn_derivative_geometric(2, s1.maps.at(g1.edge_by_id("f1")), Rat(1, 4), Rat(1, 3)) == Rat(3, 4),
                     "Phi_f1 != 1-x", d) &&
             ok;
        ok = require(rn_derivative_geometric(2, s1.maps.at(g1.edge_by_id("f2")), Rat(1, 4), Rat(1, 3)) == Rat(1, 4),
                     "Phi_f2 != x", d) &&
             ok;
        ok = require(rn_derivative_geometric(2, s1.maps.at(g1.edge_by_id("e")), Rat(1, 4), Rat(1, 3)) == Rat(1),
                     "Phi_e != 1", d) &&
             ok;

        auto pg = product_graph(g2, g2);
        auto prod = product_sbfs(s2, interval_system_three_vertex(g2), pg);
        ok = require(validate_sbfs_conditions(prod).pass, "product system fails a condition", d) && ok;
        return ok;
    });

    h.run(9, "inductive-limit representation", [&](std::string& d) {
        bool ok = require(verify_ck_inductive(g1, x1, 2, 3).pass, "one-vertex CK failed", d);
        ok = require(verify_ck_inductive(g2, x2, 2, 3).pass, "three-vertex CK failed", d) && ok;

        std::map<VertexId, InfinitePathSpec> choices;
        choices.emplace(g2.vertex_by_id("u"), x2);
        choices.emplace(g2.vertex_by_id("v"), cyclic_infinite_path(g2, by_ids(g2, {"c0", "d0"})));
        choices.emplace(g2.vertex_by_id("w"), cyclic_infinite_path(g2, by_ids(g2, {"a1", "b1"})));
        auto ds = direct_sum_nonzero_check(g2, choices, 2);
        ok = require(ds.pass && ds.nonzero_failures == 0, "some T_mu vanished", d) && ok;
        std::map<VertexId, InfinitePathSpec> c1;
        c1.emplace(0, x1);
        ok = require(direct_sum_nonzero_check(g1, c1, 2).pass, "one-vertex direct sum failed", d) && ok;

        const std::complex<double> one(1, 0), i(0, 1);
        std::vector<GaugePoint> roots = {{{one, one}}, {{-one, one}}, {{i, one}},      {{-i, one}},
                                         {{one, i}},   {{i, i}},      {{-one, -one}}, {{-i, i}}};
        for (const auto& z : roots) {
            ok = require(gauge_check(g1, x1, z, 2, 3).pass, "gauge failed on the one-vertex graph", d) && ok;
            ok = require(gauge_check(g2, x2, z, 2, 3).pass, "gauge failed on the three-vertex graph", d) && ok;
        }

        auto y1 = shift(g1, x1, Degree{1, 1});
        auto it1 = shift_tail_intertwiner(g1, x1, Degree{1, 1}, y1, Degree{0, 0}, 2, 2);
        ok = require(it1.pass, "one-vertex intertwiner failed", d) && ok;
        auto y2 = shift(g2, x2, Degree{1, 1});
        auto it2 = shift_tail_intertwiner(g2, x2, Degree{1, 1}, y2, Degree{0, 0}, 2, 2);
        ok = require(it2.pass, "three-vertex intertwiner failed", d) && ok;
        return ok;
    });

    h.run(10, "creation operators agree with the coding-map formula", [&](std::string& d) {
        bool ok = true;
        struct Case {
            const KGraph* g;
            const InfinitePathSpec* x;
        };
        for (auto [gp, xp] : {Case{&g1, &x1}, Case{&g2, &x2}}) {
            const KGraph& g = *gp;
            const InfinitePathSpec& x = *xp;
            auto probe = enumerate_basis(g, x, 4, 5);
            std::set<InductiveBasisElement> probe_set(probe.begin(), probe.end());
            for (const auto& b : enumerate_basis(g, x, 2, 3)) {
                for (const Path& lam : paths_up_to_total(g, 2)) {
                    auto direct = apply_T(g, x, lam, b);
                    auto via = apply_S_via_coding(g, x, lam, b, probe);
                    if (direct && probe_set.count(*direct)) {
                        ok = require(via.has_value() && *via == *direct, "coding route disagrees", d) && ok;
                    } else if (!direct) {
                        ok = require(!via.has_value(), "coding route found a phantom image", d) && ok;
                    }
                }
            }
        }
        return ok;
    });

    if (h.failures == 0) {
        std::printf("all %d criteria passed\n", 10);
        return 0;
    }
    std::printf("%d criteria FAILED\n", h.failures);
    return 1;
}
