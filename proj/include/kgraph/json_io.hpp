#ifndef KGRAPH_JSON_IO_HPP
#define KGRAPH_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include <kgraph/graph.hpp>
#include <kgraph/hellinger.hpp>
#include <kgraph/inductive.hpp>
#include <kgraph/infinite_path.hpp>
#include <kgraph/measure.hpp>
#include <kgraph/repr_l2.hpp>
#include <kgraph/sbfs_geometric.hpp>
#include <kgraph/validate.hpp>

namespace kgraph {

using Json = nlohmann::ordered_json;

// ---- rationals --------------------------------------------------------------

inline Rat json_to_rat(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float()) fail(ErrorCode::BadArgument, "rationals must be strings or integers, not floats");
    fail(ErrorCode::BadArgument, "expected a rational value");
}

inline Json rat_to_json(const Rat& q) { return rat_to_string(q); }

// ---- graphs -------------------------------------------------------------------

inline Json graph_to_json(const KGraph& g) {
    Json j;
    j["k"] = g.k();
    Json vs = Json::array();
    for (const auto& v : g.vertices()) vs.push_back(v.id);
    j["vertices"] = vs;
    Json es = Json::array();
    for (const auto& e : g.edges()) {
        es.push_back(Json{{"id", e.id},
                          {"color", e.color},
                          {"source", g.vertex(e.source).id},
                          {"range", g.vertex(e.range).id}});
    }
    j["edges"] = es;
    Json sq = Json::array();
    for (const auto& s : g.squares()) {
        sq.push_back(Json{{"lhs", Json::array({g.edge(s.lhs0).id, g.edge(s.lhs1).id})},
                          {"rhs", Json::array({g.edge(s.rhs0).id, g.edge(s.rhs1).id})}});
    }
    j["squares"] = sq;
    return j;
}

inline KGraph graph_from_json(const Json& j) {
    if (!j.contains("k")) fail(ErrorCode::BadArgument, "graph JSON needs a 'k' field");
    GraphBuilder b(j.at("k").get<int>());
    for (const auto& v : j.at("vertices")) b.vertex(v.get<std::string>());
    for (const auto& e : j.at("edges"))
        b.edge(e.at("id").get<std::string>(), e.at("color").get<int>(), e.at("source").get<std::string>(),
               e.at("range").get<std::string>());
    if (j.contains("squares")) {
        for (const auto& s : j.at("squares")) {
            const auto& l = s.at("lhs");
            const auto& r = s.at("rhs");
            b.square(l.at(0).get<std::string>(), l.at(1).get<std::string>(), r.at(0).get<std::string>(),
                     r.at(1).get<std::string>());
        }
    }
    return b.build();
}

// ---- paths and infinite paths ---------------------------------------------------

inline Json path_to_json(const KGraph& g, const Path& p) {
    Json ids = Json::array();
    for (EdgeId e : p.edges) ids.push_back(g.edge(e).id);
    if (p.is_vertex()) return Json{{"vertex", g.vertex(p.base).id}, {"edges", ids}};
    return Json{{"edges", ids}};
}

inline Path path_from_edge_ids(const KGraph& g, const std::vector<std::string>& ids, const std::string& vertex = "") {
    if (ids.empty()) {
        if (vertex.empty()) fail(ErrorCode::BadArgument, "empty path needs a vertex id");
        return vertex_path(g.vertex_by_id(vertex));
    }
    std::vector<EdgeId> word;
    for (const auto& id : ids) word.push_back(g.edge_by_id(id));
    return normal_form(g, std::move(word));
}

inline Json spec_to_json(const KGraph& g, const InfinitePathSpec& x) {
    Json pre = Json::array(), cyc = Json::array();
    for (EdgeId e : x.prefix.edges) pre.push_back(g.edge(e).id);
    for (EdgeId e : x.cycle.edges) cyc.push_back(g.edge(e).id);
    return Json{{"prefix", pre}, {"cycle", cyc}};
}

inline InfinitePathSpec spec_from_json(const KGraph& g, const Json& j) {
    std::vector<std::string> pre, cyc;
    if (j.contains("prefix"))
        for (const auto& e : j.at("prefix")) pre.push_back(e.get<std::string>());
    for (const auto& e : j.at("cycle")) cyc.push_back(e.get<std::string>());
    if (cyc.empty()) fail(ErrorCode::BadArgument, "path spec needs a nonempty cycle");
    Path cycle = path_from_edge_ids(g, cyc);
    Path prefix = pre.empty() ? vertex_path(range(g, cycle)) : path_from_edge_ids(g, pre);
    return InfinitePathSpec(g, prefix, cycle);
}

// ---- measures ---------------------------------------------------------------------

inline PerturbationSeq seq_from_json(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "geometric") return PerturbationSeq::geometric(json_to_rat(j.at("c")), json_to_rat(j.at("r")));
    if (type == "list") {
        std::vector<Rat> vals;
        for (const auto& v : j.at("values")) vals.push_back(json_to_rat(v));
        Rat tail = j.contains("tail_bound") ? json_to_rat(j.at("tail_bound")) : Rat(0);
        return PerturbationSeq::list(std::move(vals), tail);
    }
    fail(ErrorCode::BadArgument, "sequence type must be 'geometric' or 'list'");
}

inline Json seq_to_json(const PerturbationSeq& s) {
    if (s.is_geometric()) return Json{{"type", "geometric"}, {"c", rat_to_json(s.c())}, {"r", rat_to_json(s.r())}};
    Json vals = Json::array();
    for (const auto& v : s.values()) vals.push_back(rat_to_json(v));
    return Json{{"type", "list"}, {"values", vals}, {"tail_bound", rat_to_json(s.declared_tail_bound())}};
}

inline CylinderMeasure measure_from_json(const KGraph& g, const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    Json params = j.contains("params") ? j.at("params") : Json::object();
    if (kind == "pf") return CylinderMeasure::pf(g);
    if (kind == "kakutani") {
        bool summable = params.contains("summable") ? params.at("summable").get<bool>() : true;
        return CylinderMeasure::kakutani(g, seq_from_json(params.at("gammas")), summable);
    }
    if (kind == "markov") {
        if (params.contains("x")) return CylinderMeasure::markov_x(g, json_to_rat(params.at("x")));
        MarkovSpecParams p;
        for (const auto& row : params.at("T")) {
            std::vector<Rat> r;
            for (const auto& v : row) r.push_back(json_to_rat(v));
            p.T.push_back(std::move(r));
        }
        for (const auto& v : params.at("lambda")) p.lambda_vec.push_back(json_to_rat(v));
        return CylinderMeasure::markov(g, std::move(p));
    }
    if (kind == "lambda2n") {
        Lambda2NParams p;
        p.N = params.at("N").get<int>();
        for (const auto& v : params.at("phi")) p.phi.push_back(v.get<int>());
        for (const auto& row : params.at("x")) {
            std::vector<Rat> r;
            for (const auto& v : row) r.push_back(json_to_rat(v));
            p.xs.push_back(std::move(r));
        }
        return CylinderMeasure::lambda2n_markov(g, std::move(p));
    }
    if (kind == "product2n") {
        Product2NParams p;
        p.N = params.at("N").get<int>();
        for (const auto& v : params.at("phi")) p.phi.push_back(v.get<int>());
        for (const auto& d : params.at("deltas")) p.deltas.push_back(seq_from_json(d));
        return CylinderMeasure::product2n(g, std::move(p));
    }
    fail(ErrorCode::BadArgument, "unknown measure kind '" + kind + "'");
}

// ---- regions / polynomials / systems ----------------------------------------------

inline Json poly_to_json(const Poly2& p) {
    Json j = Json::object();
    for (const auto& [k, c] : p.coef()) {
        std::string key;
        if (k.first == 0 && k.second == 0) {
            key = "1";
        } else {
            if (k.first) key += "x^" + std::to_string(k.first);
            if (k.second) {
                if (!key.empty()) key += "*";
                key += "y^" + std::to_string(k.second);
            }
        }
        j[key] = rat_to_json(c);
    }
    return j;
}

inline Poly2 poly_from_json(const Json& j) {
    Poly2 out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = it.key();
        int dx = 0, dy = 0;
        if (key != "1") {
            std::size_t pos = 0;
            while (pos < key.size()) {
                char var = key[pos];
                int exp = 1;
                ++pos;
                if (pos < key.size() && key[pos] == '^') {
                    ++pos;
                    std::size_t end = key.find('*', pos);
                    if (end == std::string::npos) end = key.size();
                    exp = std::stoi(key.substr(pos, end - pos));
                    pos = end;
                }
                if (pos < key.size() && key[pos] == '*') ++pos;
                if (var == 'x')
                    dx += exp;
                else if (var == 'y')
                    dy += exp;
                else
                    fail(ErrorCode::BadArgument, "bad monomial key '" + key + "'");
            }
        }
        out = out + Poly2::monomial(dx, dy, json_to_rat(it.value()));
    }
    return out;
}

inline Json region_to_json(const Region& r) {
    Json j;
    j["dim"] = r.dimension;
    if (r.dimension == 1) {
        Json iv = Json::array();
        for (const auto& p : r.r1.parts()) iv.push_back(Json::array({rat_to_json(p.lo), rat_to_json(p.hi)}));
        j["intervals"] = iv;
        return j;
    }
    Json boxes = Json::array();
    for (const auto& b : r.r2.boxes())
        boxes.push_back(Json::array({Json::array({rat_to_json(b.x.lo), rat_to_json(b.x.hi)}),
                                     Json::array({rat_to_json(b.y.lo), rat_to_json(b.y.hi)})}));
    j["boxes"] = boxes;
    Json cells = Json::array();
    for (const auto& c : r.r2.cells()) {
        Json cons = Json::array();
        for (const auto& ct : c.constraints)
            cons.push_back(Json{{"poly", poly_to_json(ct.poly)}, {"sign", ct.positive ? ">" : "<"}});
        cells.push_back(Json{{"bbox", Json::array({Json::array({rat_to_json(c.bbox.x.lo), rat_to_json(c.bbox.x.hi)}),
                                                   Json::array({rat_to_json(c.bbox.y.lo), rat_to_json(c.bbox.y.hi)})})},
                             {"constraints", cons},
                             {"area", rat_to_json(c.declared_area)}});
    }
    j["cells"] = cells;
    return j;
}

inline Region region_from_json(const Json& j) {
    int dim = j.at("dim").get<int>();
    if (dim == 1) {
        std::vector<Interval> parts;
        for (const auto& iv : j.at("intervals")) parts.push_back({json_to_rat(iv.at(0)), json_to_rat(iv.at(1))});
        return Region::d1(Region1D(std::move(parts)));
    }
    if (dim != 2) fail(ErrorCode::MalformedRegion, "region dim must be 1 or 2");
    std::vector<Box> boxes;
    if (j.contains("boxes"))
        for (const auto& b : j.at("boxes"))
            boxes.push_back({{json_to_rat(b.at(0).at(0)), json_to_rat(b.at(0).at(1))},
                             {json_to_rat(b.at(1).at(0)), json_to_rat(b.at(1).at(1))}});
    Region2D r2 = Region2D::box_union(std::move(boxes));
    if (j.contains("cells")) {
        for (const auto& c : j.at("cells")) {
            PolyCell cell;
            cell.bbox = {{json_to_rat(c.at("bbox").at(0).at(0)), json_to_rat(c.at("bbox").at(0).at(1))},
                         {json_to_rat(c.at("bbox").at(1).at(0)), json_to_rat(c.at("bbox").at(1).at(1))}};
            for (const auto& ct : c.at("constraints"))
                cell.constraints.push_back({poly_from_json(ct.at("poly")), ct.at("sign").get<std::string>() == ">"});
            cell.declared_area = json_to_rat(c.at("area"));
            r2.add_cell(std::move(cell));
        }
    }
    return Region::d2(r2);
}

inline Json sbfs_to_json(const GeometricSBFS& s) {
    const KGraph& g = *s.graph;
    Json j;
    j["graph"] = graph_to_json(g);
    j["dimension"] = s.dimension;
    Json doms = Json::object();
    for (const auto& [v, r] : s.domains) doms[g.vertex(v).id] = region_to_json(r);
    j["domains"] = doms;
    Json maps = Json::object();
    for (const auto& [e, m] : s.maps) {
        Json pieces = Json::array();
        for (const auto& p : m.pieces) {
            Json piece = Json{{"domain", region_to_json(p.domain)}, {"fx", poly_to_json(p.fx)}};
            if (s.dimension == 2) piece["fy"] = poly_to_json(p.fy);
            pieces.push_back(piece);
        }
        maps[g.edge(e).id] = pieces;
    }
    j["maps"] = maps;
    Json ranges = Json::object();
    for (const auto& [e, r] : s.ranges) ranges[g.edge(e).id] = region_to_json(r);
    j["ranges"] = ranges;
    return j;
}

// The caller owns the graph; it must outlive the returned system.
inline GeometricSBFS sbfs_from_json(const KGraph& g, const Json& j) {
    GeometricSBFS s;
    s.graph = &g;
    s.dimension = j.at("dimension").get<int>();
    for (auto it = j.at("domains").begin(); it != j.at("domains").end(); ++it)
        s.domains[g.vertex_by_id(it.key())] = region_from_json(it.value());
    for (auto it = j.at("maps").begin(); it != j.at("maps").end(); ++it) {
        PiecewiseMap m;
        for (const auto& pj : it.value()) {
            MapPiece p;
            p.domain = region_from_json(pj.at("domain"));
            p.fx = poly_from_json(pj.at("fx"));
            if (pj.contains("fy")) p.fy = poly_from_json(pj.at("fy"));
            m.pieces.push_back(std::move(p));
        }
        s.maps[g.edge_by_id(it.key())] = std::move(m);
    }
    for (auto it = j.at("ranges").begin(); it != j.at("ranges").end(); ++it)
        s.ranges[g.edge_by_id(it.key())] = region_from_json(it.value());
    return s;
}

// ---- reports -----------------------------------------------------------------------

inline Json validation_to_json(const ValidationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return Json{{"pass", r.pass}, {"checks", checks}};
}

inline Json consistency_to_json(const ConsistencyReport& r) {
    return Json{{"depth", r.depth},        {"cylinders", r.cylinders_checked}, {"maxDefect", r.max_defect},
                {"exact", r.exact},        {"pass", r.pass},                   {"worst", r.worst}};
}

inline Json rn_to_json(const RNEstimate& e) {
    Json j{{"value", e.value}, {"multError", e.mult_error}, {"depth", e.depth}};
    if (e.exact) j["valueExact"] = rat_to_json(e.value_q);
    if (e.stabilized_at >= 0) j["stabilizedAt"] = e.stabilized_at;
    return j;
}

inline Json ck_to_json(const CKReport& r) {
    Json rels = Json::array();
    for (const auto& rel : r.relations)
        rels.push_back(
            Json{{"name", rel.name}, {"cases", rel.cases}, {"maxDefect", rel.max_defect}, {"pass", rel.pass}});
    return Json{{"pass", r.pass},   {"exact", r.exact},       {"tol", r.tol},
                {"rnDepth", r.rn_depth}, {"rnError", r.rn_error}, {"relations", rels}};
}

inline Json inductive_ck_to_json(const InductiveCKReport& r) {
    Json rels = Json::array();
    for (const auto& rel : r.relations)
        rels.push_back(Json{{"name", rel.name}, {"probedCases", rel.cases}, {"failures", rel.failures}});
    return Json{{"pass", r.pass}, {"relations", rels}};
}

inline Json gauge_to_json(const GaugeReport& r) {
    return Json{{"conjugationCases", r.conjugation_cases},
                {"wellDefinedCases", r.well_defined_cases},
                {"maxDefect", r.max_defect},
                {"pass", r.pass}};
}

inline Json intertwiner_to_json(const IntertwinerReport& r) {
    return Json{{"tailsAgree", r.tails_ok},
                {"probed", r.probed},
                {"wellDefinedFailures", r.well_defined_failures},
                {"injective", r.injective},
                {"intertwineCases", r.intertwine_cases},
                {"intertwineFailures", r.intertwine_failures},
                {"yProbed", r.y_probed},
                {"yHit", r.y_hit},
                {"pass", r.pass}};
}

inline Json direct_sum_to_json(const DirectSumReport& r) {
    Json fails = Json::array();
    for (const auto& f : r.failures) fails.push_back(f);
    return Json{{"pathsChecked", r.paths_checked},
                {"nonzeroFailures", r.nonzero_failures},
                {"summandCkPass", r.summand_ck_pass},
                {"pass", r.pass},
                {"failures", fails}};
}

inline Json condition_to_json(const ConditionReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"condition", e.name}, {"pass", e.pass}, {"sampled", e.sampled}, {"detail", e.detail}});
    return Json{{"pass", r.pass}, {"conditions", entries}};
}

inline Json verdict_to_json(const EquivalenceEvidence& e) {
    Json prof = Json::array();
    for (double h : e.profile) prof.push_back(h);
    return Json{{"verdict", verdict_name(e.verdict)}, {"lastRatio", e.last_ratio}, {"limit", e.limit},
                {"converged", e.converged},           {"positive", e.positive},   {"profile", prof}};
}

} // namespace kgraph

#endif // KGRAPH_JSON_IO_HPP
