#include <catch2/catch_amalgamated.hpp>

#include <kgraph/library.hpp>
#include <kgraph/repr_l2.hpp>

using namespace kgraph;

namespace {

using ExactFn = StepFunction<RadicalSum>;
using ExactRep = L2Rep<detail::ExactL2Mode>;
using FloatRep = L2Rep<detail::FloatL2Mode>;

Path by_ids(const KGraph& g, std::initializer_list<const char*> ids) {
    std::vector<EdgeId> word;
    for (const char* id : ids) word.push_back(g.edge_by_id(id));
    return normal_form(g, word, 0);
}

} // namespace

TEST_CASE("refinement") {
    auto g = make_one_vertex_fefe();
    ExactFn chi_v = ExactFn::indicator(g, vertex_path(0));

    // refine(chi_{Z(v)}, 1) = chi_{Z(f1 e)} + chi_{Z(f2 e)}
    ExactFn fine = refine(g, chi_v, 1);
    REQUIRE(fine.coeff.size() == 2);
    CHECK(fine.coeff.at(by_ids(g, {"f1", "e"})) == RadicalSum(Rat(1)));
    CHECK(fine.coeff.at(by_ids(g, {"f2", "e"})) == RadicalSum(Rat(1)));

    // same level is the identity
    CHECK(refine(g, chi_v, 0).coeff == chi_v.coeff);
    CHECK_THROWS_AS(refine(g, fine, 0), Error);

    // linearity: refine(a f + b h) = a refine(f) + b refine(h)
    ExactFn f = ExactFn::indicator(g, by_ids(g, {"f1", "e"}));
    ExactFn h = ExactFn::indicator(g, by_ids(g, {"f2", "e"}));
    ExactFn combo = f.scaled(RadicalSum(Rat(2)));
    combo += h.scaled(RadicalSum(Rat(-3)));
    ExactFn lhs = refine(g, combo, 3);
    ExactFn rhs = refine(g, f, 3).scaled(RadicalSum(Rat(2)));
    rhs += refine(g, h, 3).scaled(RadicalSum(Rat(-3)));
    CHECK(lhs.coeff == rhs.coeff);
}

TEST_CASE("inner products under the PF measure") {
    auto g = make_one_vertex_fefe();
    auto M = CylinderMeasure::pf(g);
    ExactFn chi_v = ExactFn::indicator(g, vertex_path(0));
    ExactFn f1e = ExactFn::indicator(g, by_ids(g, {"f1", "e"}));
    ExactFn f2e = ExactFn::indicator(g, by_ids(g, {"f2", "e"}));

    auto ip = [&](const ExactFn& a, const ExactFn& b) { return inner_product<detail::ExactL2Mode>(M, a, b); };
    CHECK(ip(chi_v, chi_v) == RadicalSum(Rat(1)));
    CHECK(ip(f1e, f2e).is_zero());
    CHECK(ip(f1e, chi_v) == RadicalSum(Rat(1, 2)));

    // refinement invariance: any common level gives the same value
    ExactFn fine_a = refine(g, f1e, 4);
    ExactFn fine_b = refine(g, chi_v, 3);
    CHECK(ip(fine_a, fine_b) == RadicalSum(Rat(1, 2)));
}

TEST_CASE("standard representation acts by rho^{d/2} prefixing") {
    auto g = make_one_vertex_fefe();
    auto M = CylinderMeasure::pf(g);
    ExactRep rep(M, 0);

    Path eta = by_ids(g, {"f2", "e"});
    Path f1 = by_ids(g, {"f1"});
    ExactFn out = rep.apply_s(f1, ExactFn::indicator(g, eta));

    // expected: sqrt(rho_1) * chi_{Z(f1 . eta)} refined to the square level
    Path target = compose(g, f1, eta);
    ExactFn expect;
    expect.level = 2;
    for (const Path& fill : paths_of_degree(g, Degree(2, 2) - degree_of(g, target), source(g, target)))
        expect.add_term(compose(g, target, fill), RadicalSum::sqrt_of(Rat(2)));
    CHECK(rep.defect(out, expect) == 0.0);

    // vertex projection: identity on matching range, zero otherwise
    ExactFn same = rep.apply_s(vertex_path(0), ExactFn::indicator(g, eta));
    CHECK(rep.defect(same, ExactFn::indicator(g, eta)) == 0.0);
}

TEST_CASE("adjoint reduces along lambda_min") {
    auto g = make_one_vertex_fefe();
    auto M = CylinderMeasure::pf(g);
    ExactRep rep(M, 0);

    // S_e^* chi_{Z(f1 e)} = chi_{Z(f2)} (weight rho_2^{-1/2} = 1)
    ExactFn out = rep.apply_s_adjoint(by_ids(g, {"e"}), ExactFn::indicator(g, by_ids(g, {"f1", "e"})));
    ExactFn expect;
    expect.level = out.level;
    Path f2 = by_ids(g, {"f2"});
    for (const Path& fill :
         paths_of_degree(g, Degree(2, out.level) - degree_of(g, f2), source(g, f2)))
        expect.add_term(compose(g, f2, fill), RadicalSum(Rat(1)));
    CHECK(rep.defect(out, expect) == 0.0);

    // S_lambda^* S_lambda chi_{Z(eta)} = chi_{Z(eta)} on a matched cylinder
    Path lam = by_ids(g, {"f1", "e"});
    ExactFn eta = ExactFn::indicator(g, by_ids(g, {"f2", "e"}));
    ExactFn round = rep.apply_s_adjoint(lam, rep.apply_s(lam, eta));
    CHECK(rep.defect(round, eta) == 0.0);
}

TEST_CASE("markov representation weights") {
    auto g = make_one_vertex_fefe();
    Rat x(3, 10);
    auto m = CylinderMeasure::markov_x(g, x);
    ExactRep rep(m, 1);

    // S_{f_j} chi_{Z(e f_i)} = T(j+1, i+1)^{-1/2} chi_{Z(f_j e f_i)}
    Path eta = by_ids(g, {"e", "f1"}); // i = 1
    ExactFn out = rep.apply_s(by_ids(g, {"f1"}), ExactFn::indicator(g, eta)); // j = 1, T(2,2) = x
    Path target = compose(g, by_ids(g, {"f1"}), eta);
    ExactFn expect;
    expect.level = out.level;
    for (const Path& fill : paths_of_degree(g, Degree(2, out.level) - degree_of(g, target), source(g, target)))
        expect.add_term(compose(g, target, fill), RadicalSum::sqrt_of(Rat(1) / x));
    CHECK(rep.defect(out, expect) == 0.0);
}

TEST_CASE("adjoint pairing and isometry") {
    auto g1 = make_one_vertex_fefe();
    auto measures = std::vector<CylinderMeasure>{CylinderMeasure::pf(g1), CylinderMeasure::markov_x(g1, Rat(3, 10))};
    for (const auto& m : measures) {
        const KGraph& g = m.graph();
        ExactRep rep(m, 1);
        std::vector<Path> lambdas;
        for (const Degree& d : degrees_up_to(Degree(g.k(), 1)))
            for (const Path& p : paths_of_degree(g, d)) lambdas.push_back(p);
        auto basis2 = paths_of_degree(g, Degree(g.k(), 2));
        for (const Path& lam : lambdas) {
            for (const Path& a : basis2) {
                ExactFn fa = ExactFn::indicator(g, a);
                // isometry on the initial space
                RadicalSum lhs = inner_product<detail::ExactL2Mode>(m, rep.apply_s(lam, fa), rep.apply_s(lam, fa));
                RadicalSum rhs = inner_product<detail::ExactL2Mode>(
                    m, rep.apply_s(vertex_path(source(g, lam)), fa), fa);
                CHECK(lhs == rhs);
                for (const Path& b : basis2) {
                    ExactFn fb = ExactFn::indicator(g, b);
                    RadicalSum pair_l = inner_product<detail::ExactL2Mode>(m, rep.apply_s_adjoint(lam, fa), fb);
                    RadicalSum pair_r = inner_product<detail::ExactL2Mode>(m, fa, rep.apply_s(lam, fb));
                    CHECK(pair_l == pair_r);
                }
            }
        }
    }
}

TEST_CASE("adjoint pairing in floating point on the three-vertex graph") {
    auto g = make_three_vertex_eight_edge();
    auto M = CylinderMeasure::pf(g);
    FloatRep rep(M, 0);
    using FloatFn = StepFunction<double>;
    std::vector<Path> lambdas;
    for (const Degree& d : degrees_up_to(Degree{1, 1}))
        for (const Path& p : paths_of_degree(g, d)) lambdas.push_back(p);
    auto basis = paths_of_degree(g, Degree(2, 1));
    for (const Path& lam : lambdas) {
        for (const Path& a : basis) {
            FloatFn fa = FloatFn::indicator(g, a);
            for (const Path& b : basis) {
                FloatFn fb = FloatFn::indicator(g, b);
                double l = inner_product<detail::FloatL2Mode>(M, rep.apply_s_adjoint(lam, fa), fb);
                double r = inner_product<detail::FloatL2Mode>(M, fa, rep.apply_s(lam, fb));
                CHECK(std::abs(l - r) < 1e-10);
            }
        }
    }
}

TEST_CASE("operator words") {
    auto g = make_one_vertex_fefe();
    auto M = CylinderMeasure::pf(g);
    ExactRep rep(M, 0);
    ExactFn f = ExactFn::indicator(g, by_ids(g, {"f1", "e"}));

    // empty word is the identity
    CHECK(rep.defect(rep.apply_word({}, f), f) == 0.0);

    // t_lambda t_lambda^* t_lambda = t_lambda (partial isometry)
    Path lam = by_ids(g, {"f2"});
    OperatorWord w{{lam, false}, {lam, true}, {lam, false}};
    CHECK(rep.defect(rep.apply_word(w, f), rep.apply_s(lam, f)) == 0.0);
}

TEST_CASE("vertex words vanish across distinct vertices") {
    auto g = make_three_vertex_eight_edge();
    auto M = CylinderMeasure::pf(g);
    FloatRep rep(M, 0);
    using FloatFn = StepFunction<double>;
    OperatorWord w{{vertex_path(g.vertex_by_id("u")), false}, {vertex_path(g.vertex_by_id("v")), false}};
    for (const Path& p : paths_of_degree(g, Degree(2, 1))) {
        FloatFn out = rep.apply_word(w, FloatFn::indicator(g, p));
        CHECK(out.is_zero());
    }
}

TEST_CASE("full CK verification, exact") {
    auto g = make_one_vertex_fefe();

    auto repM = verify_ck_l2(CylinderMeasure::pf(g), 2, Degree{2, 2}, -1, -1, true);
    CHECK(repM.exact);
    CHECK(repM.pass);
    for (const auto& r : repM.relations) {
        INFO(r.name);
        CHECK(r.max_defect == 0.0);
    }

    auto rep3 = verify_ck_l2(CylinderMeasure::markov_x(g, Rat(3, 10)), 2, Degree{2, 2}, -1, -1, true);
    CHECK(rep3.exact);
    CHECK(rep3.pass);
    for (const auto& r : rep3.relations) CHECK(r.max_defect == 0.0);
}

TEST_CASE("full CK verification, floating point") {
    auto g = make_three_vertex_eight_edge();
    auto rep = verify_ck_l2(CylinderMeasure::pf(g), 2, Degree{2, 2});
    CHECK_FALSE(rep.exact);
    CHECK(rep.pass);
    for (const auto& r : rep.relations) {
        INFO(r.name);
        CHECK(r.max_defect < 1e-9);
    }
}

TEST_CASE("CK verification for a tail-dependent measure") {
    auto g = make_one_vertex_fefe();
    auto kk = CylinderMeasure::kakutani(g, PerturbationSeq::geometric(Rat(1), Rat(1, 4)));
    CHECK_THROWS_AS(verify_ck_l2(kk, 1, Degree{1, 1}, -1, -1, true), Error); // no exact mode
    auto rep = verify_ck_l2(kk, 1, Degree{1, 1}, -1, 8);
    CHECK_FALSE(rep.exact);
    CHECK(rep.rn_error > 1.0);
    CHECK(rep.pass);
}

TEST_CASE("CK verification on the lambda_2N markov measure") {
    auto g = make_lambda_2n(1, {2, 1});
    auto m = CylinderMeasure::lambda2n_markov(g, {1, {2, 1}, {{Rat(1, 3), Rat(2, 3)}}});
    auto rep = verify_ck_l2(m, 1, Degree{1, 1}, -1, -1, true);
    CHECK(rep.exact);
    CHECK(rep.pass);
    for (const auto& r : rep.relations) CHECK(r.max_defect == 0.0);
}
