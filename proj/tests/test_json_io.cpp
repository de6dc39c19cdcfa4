#include <catch2/catch_amalgamated.hpp>

#include <kgraph/json_io.hpp>
#include <kgraph/library.hpp>
#include <kgraph/sbfs_library.hpp>

using namespace kgraph;

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/10") == Rat(3, 10));
    CHECK(parse_rational("-7/2") == Rat(-7, 2));
    CHECK(parse_rational("42") == Rat(42));
    CHECK(parse_rational("0.3") == Rat(3, 10));
    CHECK(parse_rational("0.050000") == Rat(1, 20)); // leading zeros are decimal, not octal
    CHECK(parse_rational("-1.25") == Rat(-5, 4));
    CHECK(parse_rational("-0.25") == Rat(-1, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(rat_to_string(Rat(3, 10)) == "3/10");
    CHECK(rat_to_string(Rat(5)) == "5");
    CHECK(rat_from_double(0.5) == Rat(1, 2));
    CHECK(rat_from_double(0.1) != Rat(1, 10)); // 0.1 is not exactly representable
    CHECK(std::abs(to_double(rat_from_double(0.1)) - 0.1) == 0.0);
}

TEST_CASE("graph round trip") {
    for (const auto& g : {make_one_vertex_fefe(), make_three_vertex_eight_edge(), make_lambda_2n(2, {2, 1, 4, 3})}) {
        Json j = graph_to_json(g);
        KGraph back = graph_from_json(j);
        CHECK(back == g);
        CHECK(graph_to_json(back) == j);
    }
    CHECK_THROWS_AS(graph_from_json(Json::object()), Error);
}

TEST_CASE("path spec round trip") {
    auto g = make_one_vertex_fefe();
    auto x = cyclic_infinite_path(g, normal_form(g, {g.edge_by_id("f2"), g.edge_by_id("e")}));
    Json j = spec_to_json(g, x);
    auto back = spec_from_json(g, j);
    CHECK(back.prefix == x.prefix);
    CHECK(back.cycle == x.cycle);
}

TEST_CASE("measure specs") {
    auto g = make_one_vertex_fefe();

    Json pf = {{"kind", "pf"}};
    CHECK(measure_from_json(g, pf).kind() == MeasureKind::PF);

    Json markov = {{"kind", "markov"}, {"params", {{"x", "3/10"}}}};
    auto m = measure_from_json(g, markov);
    CHECK(m.kind() == MeasureKind::Markov);
    CHECK(m.markov_params().T[0][0] == Rat(3, 10));

    Json markov_full = {{"kind", "markov"},
                        {"params",
                         {{"T", Json::array({Json::array({"3/10", "7/10"}), Json::array({"7/10", "3/10"})})},
                          {"lambda", Json::array({"1", "1"})}}}};
    CHECK(measure_from_json(g, markov_full).markov_params().T[1][0] == Rat(7, 10));

    Json kak = {{"kind", "kakutani"},
                {"params", {{"gammas", {{"type", "geometric"}, {"c", "1"}, {"r", "1/4"}}}}}};
    CHECK(measure_from_json(g, kak).kind() == MeasureKind::Kakutani);

    Json kak_list = {{"kind", "kakutani"},
                     {"params",
                      {{"gammas",
                        {{"type", "list"}, {"values", Json::array({"1/4", "1/16"})}, {"tail_bound", "1/32"}}}}}};
    CHECK(measure_from_json(g, kak_list).kind() == MeasureKind::Kakutani);

    auto g3 = make_lambda_2n(1, {2, 1});
    Json l2n = {{"kind", "lambda2n"},
                {"params",
                 {{"N", 1}, {"phi", Json::array({2, 1})}, {"x", Json::array({Json::array({"1/3", "2/3"})})}}}};
    CHECK(measure_from_json(g3, l2n).kind() == MeasureKind::Lambda2NMarkov);

    Json p2n = {{"kind", "product2n"},
                {"params",
                 {{"N", 1},
                  {"phi", Json::array({2, 1})},
                  {"deltas", Json::array({Json{{"type", "geometric"}, {"c", "1/2"}, {"r", "1/2"}}})}}}};
    CHECK(measure_from_json(g3, p2n).kind() == MeasureKind::Product2N);

    CHECK_THROWS_AS(measure_from_json(g, Json{{"kind", "nope"}}), Error);
}

TEST_CASE("geometric system round trip") {
    auto g = make_three_vertex_eight_edge();
    auto s = interval_system_three_vertex(g);
    Json j = sbfs_to_json(s);
    auto back = sbfs_from_json(g, j);
    CHECK(validate_sbfs_conditions(back).pass);
    CHECK(sbfs_to_json(back) == j);

    auto g1 = make_one_vertex_fefe();
    auto s1 = square_system_one_vertex(g1);
    Json j1 = sbfs_to_json(s1);
    auto back1 = sbfs_from_json(g1, j1);
    CHECK(validate_sbfs_conditions(back1).pass);
    CHECK(sbfs_to_json(back1) == j1);
}

TEST_CASE("polynomial keys") {
    Poly2 p = Poly2::monomial(2, 0, Rat(1)) + Poly2::monomial(1, 1, Rat(-1)) + Poly2(Rat(1, 2));
    Json j = poly_to_json(p);
    CHECK(poly_from_json(j) == p);
    CHECK(poly_from_json(Json{{"x^1*y^1", "-1"}, {"1", "1/2"}, {"x^2", "1"}}) == p);
}

TEST_CASE("json reports are deterministic") {
    auto g = make_one_vertex_fefe();
    auto rep1 = validation_to_json(validate_kgraph(g));
    auto rep2 = validation_to_json(validate_kgraph(g));
    CHECK(rep1.dump() == rep2.dump());

    auto m = CylinderMeasure::markov_x(g, Rat(3, 10));
    CHECK(consistency_to_json(m.check_kolmogorov(4)).dump() == consistency_to_json(m.check_kolmogorov(4)).dump());
}
