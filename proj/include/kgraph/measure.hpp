#ifndef KGRAPH_MEASURE_HPP
#define KGRAPH_MEASURE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <kgraph/infinite_path.hpp>
#include <kgraph/library.hpp>
#include <kgraph/path.hpp>
#include <kgraph/pf.hpp>
#include <kgraph/rational.hpp>

namespace kgraph {

// Sequence generator for product-measure perturbations. Geometric:
// value_i = c * r^i (so the i-th term decays from |c*r| at i = 1); list:
// explicit leading values, zero beyond, with a declared bound on the absolute
// tail sum of whatever the list truncates.
class PerturbationSeq {
public:
    static PerturbationSeq geometric(const Rat& c, const Rat& r) {
        if (!(r > 0 && r < 1)) fail(ErrorCode::BadArgument, "geometric ratio must lie in (0,1)");
        PerturbationSeq s;
        s.geometric_ = true;
        s.c_ = c;
        s.r_ = r;
        return s;
    }
    static PerturbationSeq list(std::vector<Rat> values, const Rat& tail_bound) {
        if (tail_bound < 0) fail(ErrorCode::BadArgument, "tail bound must be non-negative");
        PerturbationSeq s;
        s.values_ = std::move(values);
        s.tail_bound_ = tail_bound;
        return s;
    }

    bool is_geometric() const { return geometric_; }
    const Rat& c() const { return c_; }
    const Rat& r() const { return r_; }
    const std::vector<Rat>& values() const { return values_; }
    const Rat& declared_tail_bound() const { return tail_bound_; }

    Rat at(int i) const { // i >= 0; measures pick their own index origins
        if (geometric_) return c_ * rat_pow(r_, i);
        if (i >= 1 && i <= static_cast<int>(values_.size())) return values_[i - 1];
        return Rat(0);
    }

    // Upper bound on sum_{i > from} |value_i|.
    Rat abs_tail_sum(int from) const {
        if (geometric_) return rat_abs(c_) * rat_pow(r_, from + 1) / (Rat(1) - r_);
        Rat s = tail_bound_;
        for (int i = from + 1; i <= static_cast<int>(values_.size()); ++i) s += rat_abs(values_[i - 1]);
        return s;
    }

    // Upper bound on sup_{i > from} |value_i|.
    Rat abs_sup(int from) const {
        if (geometric_) return rat_abs(c_) * rat_pow(r_, from + 1);
        Rat s = tail_bound_; // each tail term is at most the tail sum
        for (int i = from + 1; i <= static_cast<int>(values_.size()); ++i) s = std::max(s, rat_abs(values_[i - 1]));
        return s;
    }

private:
    bool geometric_ = false;
    Rat c_, r_;
    std::vector<Rat> values_;
    Rat tail_bound_ = 0;
};

struct MarkovSpecParams {
    std::vector<std::vector<Rat>> T;
    std::vector<Rat> lambda_vec;
};

struct Lambda2NParams {
    int N = 1;
    std::vector<int> phi;             // 1-based images
    std::vector<std::vector<Rat>> xs; // one row-stochastic vector per cycle of phi
};

struct Product2NParams {
    int N = 1;
    std::vector<int> phi;
    std::vector<PerturbationSeq> deltas; // one per peripheral pair, indexed by word position (from 0)
};

enum class MeasureKind { PF, Kakutani, Markov, Lambda2NMarkov, Product2N };

inline const char* measure_kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::PF: return "pf";
        case MeasureKind::Kakutani: return "kakutani";
        case MeasureKind::Markov: return "markov";
        case MeasureKind::Lambda2NMarkov: return "lambda2n";
        case MeasureKind::Product2N: return "product2n";
    }
    return "?";
}

struct RNEstimate {
    double value = 0;
    bool exact = false;
    Rat value_q;
    double mult_error = 1.0;
    int depth = 0;
    int stabilized_at = -1;
};

struct ConsistencyReport {
    int depth = 0;
    int cylinders_checked = 0;
    double max_defect = 0;
    bool exact = false;
    bool pass = false;
    std::string worst;
};

// Borel probability measure on the infinite path space, described by its
// values on square cylinder sets. Immutable; all queries are pure.
class CylinderMeasure {
public:
    static CylinderMeasure pf(const KGraph& g) {
        CylinderMeasure m(g, MeasureKind::PF);
        m.pf_ = pf_data(g);
        m.exact_ = m.pf_.exact;
        return m;
    }

    static CylinderMeasure kakutani(const KGraph& g, PerturbationSeq gammas, bool summable = true) {
        CylinderMeasure m(g, MeasureKind::Kakutani);
        m.resolve_one_vertex_roles();
        m.gammas_ = std::move(gammas);
        m.summable_ = summable;
        // alpha_i = 1/2 +- gamma_i must stay positive
        if (m.gammas_->is_geometric()) {
            if (rat_abs(m.gammas_->c() * m.gammas_->r()) >= Rat(1, 2))
                fail(ErrorCode::BadArgument, "|gamma_i| must be < 1/2");
        } else {
            for (const Rat& v : m.gammas_->values())
                if (rat_abs(v) >= Rat(1, 2)) fail(ErrorCode::BadArgument, "|gamma_i| must be < 1/2");
            if (m.gammas_->declared_tail_bound() >= Rat(1, 2))
                fail(ErrorCode::BadArgument, "declared tail bound must be < 1/2");
        }
        m.exact_ = true;
        return m;
    }

    static CylinderMeasure markov(const KGraph& g, MarkovSpecParams params) {
        CylinderMeasure m(g, MeasureKind::Markov);
        m.resolve_one_vertex_roles();
        if (params.T.size() != 2 || params.lambda_vec.size() != 2)
            fail(ErrorCode::BadArgument, "Markov spec on this graph needs a 2x2 matrix");
        validate_markov(params);
        m.markov_ = std::move(params);
        m.exact_ = true;
        return m;
    }

    // Skips the row-stochasticity validation so consistency checkers can be
    // exercised against deliberately broken data.
    static CylinderMeasure markov_unchecked(const KGraph& g, MarkovSpecParams params) {
        CylinderMeasure m(g, MeasureKind::Markov);
        m.resolve_one_vertex_roles();
        m.markov_ = std::move(params);
        m.exact_ = true;
        return m;
    }

    // Convenience for the T_x = [[x,1-x],[1-x,x]] family.
    static CylinderMeasure markov_x(const KGraph& g, const Rat& x) {
        MarkovSpecParams p;
        p.T = {{x, Rat(1) - x}, {Rat(1) - x, x}};
        p.lambda_vec = {Rat(1), Rat(1)};
        return markov(g, std::move(p));
    }

    static CylinderMeasure lambda2n_markov(const KGraph& g, Lambda2NParams params) {
        CylinderMeasure m(g, MeasureKind::Lambda2NMarkov);
        m.resolve_lambda2n_roles(params.N, params.phi);
        m.l2n_ = std::move(params);
        m.build_lambda2n_matrix();
        m.exact_ = true;
        return m;
    }

    static CylinderMeasure product2n(const KGraph& g, Product2NParams params) {
        CylinderMeasure m(g, MeasureKind::Product2N);
        m.resolve_lambda2n_roles(params.N, params.phi);
        if (static_cast<int>(params.deltas.size()) != params.N)
            fail(ErrorCode::BadArgument, "need one delta sequence per peripheral pair");
        m.p2n_ = std::move(params);
        m.exact_ = true;
        return m;
    }

    const KGraph& graph() const { return *g_; }
    MeasureKind kind() const { return kind_; }
    bool exact() const { return exact_; }
    const PFData& pf_values() const { return pf_; }
    const MarkovSpecParams& markov_params() const { return *markov_; }
    const std::vector<std::vector<Rat>>& lambda2n_matrix() const { return t2n_; }

    // Depth (in square levels) past which Radon-Nikodym ratios of prefixing
    // operators are constant on cylinders; nullopt when only tail bounds exist.
    std::optional<int> constancy_depth() const {
        switch (kind_) {
            case MeasureKind::PF: return 0;
            case MeasureKind::Markov:
            case MeasureKind::Lambda2NMarkov: return 1;
            default: return std::nullopt;
        }
    }

    Rat mass_q(const Path& p) const {
        if (!exact_) fail(ErrorCode::UnsupportedMeasure, "measure has no exact mode on this graph");
        return mass_impl<Rat>(p);
    }
    double mass_d(const Path& p) const {
        if (exact_) return to_double(mass_impl<Rat>(p));
        return mass_impl<double>(p);
    }

    // ---- Radon-Nikodym -------------------------------------------------

    // mass(lambda . base') / mass(base') with base' a deterministic extension
    // of base to at least `depth` square levels.
    RNEstimate rn_on_cylinder(const Path& lambda, const Path& base, int depth) const {
        if (source(*g_, lambda) != range(*g_, base))
            fail(ErrorCode::RangeMismatch, "s(lambda) must equal r(base)");
        int min_d = constancy_depth().value_or(depth);
        int lvl = std::max({depth, min_d, degree_of(*g_, base).max_entry()});
        Path ext = extend_to_level(base, lvl);
        RNEstimate est;
        est.depth = lvl;
        if (exact_) {
            Rat den = mass_q(ext);
            if (den == 0) fail(ErrorCode::ZeroMassBase, "base cylinder has zero mass");
            est.value_q = mass_q(compose(*g_, lambda, ext)) / den;
            est.value = to_double(est.value_q);
            est.exact = true;
        } else {
            double den = mass_d(ext);
            if (den == 0) fail(ErrorCode::ZeroMassBase, "base cylinder has zero mass");
            est.value = mass_d(compose(*g_, lambda, ext)) / den;
        }
        est.mult_error = tail_error(lvl);
        return est;
    }

    RNEstimate rn_at_point(const Path& lambda, const InfinitePathSpec& x, int depth) const {
        if (range_of(*g_, x) != source(*g_, lambda))
            fail(ErrorCode::RangeMismatch, "r(x) must equal s(lambda)");
        if (depth < 1) fail(ErrorCode::BadArgument, "depth must be >= 1");
        std::vector<RNEstimate> per_depth;
        for (int d = 1; d <= depth; ++d) per_depth.push_back(rn_on_cylinder(lambda, path_prefix(*g_, x, d), d));
        RNEstimate out = per_depth.back();
        int stab = depth;
        for (int d = depth - 1; d >= 1; --d) {
            bool same = out.exact ? (per_depth[d - 1].value_q == out.value_q)
                                  : (std::abs(per_depth[d - 1].value - out.value) <=
                                     1e-13 * std::max(1.0, std::abs(out.value)));
            if (same)
                stab = d;
            else
                break;
        }
        out.stabilized_at = stab;
        return out;
    }

    // Multiplicative tail bound for ratios computed at `level` square levels.
    double tail_error(int level) const {
        switch (kind_) {
            case MeasureKind::PF:
            case MeasureKind::Markov:
            case MeasureKind::Lambda2NMarkov: return 1.0;
            case MeasureKind::Kakutani: {
                // Each tail index contributes to numerator and denominator once;
                // |log(1 +- 2g)| <= 2|g|/(1-2|g|) per factor.
                Rat tail = gammas_->abs_tail_sum(level);
                Rat sup = gammas_->abs_sup(level);
                double t = to_double(tail), s = to_double(sup);
                if (s >= 0.5) return std::numeric_limits<double>::infinity();
                return std::exp(2.0 * (2.0 * t / (1.0 - 2.0 * s)));
            }
            case MeasureKind::Product2N: {
                // Word positions beyond 2*level are undetermined.
                double t = 0, s = 0;
                for (const auto& seq : p2n_->deltas) {
                    t += to_double(seq.abs_tail_sum(2 * level));
                    s = std::max(s, to_double(seq.abs_sup(2 * level)));
                }
                if (s >= 1.0) return std::numeric_limits<double>::infinity();
                return std::exp(2.0 * (t / (1.0 - s)));
            }
        }
        return 1.0;
    }

    // True when every cylinder probed up to `depth` levels has positive mass.
    bool positive_to_depth(int depth) const {
        switch (kind_) {
            case MeasureKind::PF: {
                for (double k : pf_.kappa)
                    if (!(k > 0)) return false;
                return true;
            }
            case MeasureKind::Markov:
            case MeasureKind::Lambda2NMarkov: return true; // positive entries enforced at construction
            case MeasureKind::Kakutani: {
                for (int i = 1; i <= depth; ++i)
                    if (rat_abs(gammas_->at(i)) >= Rat(1, 2)) return false;
                return true;
            }
            case MeasureKind::Product2N: {
                for (const auto& seq : p2n_->deltas)
                    for (int pos = 0; pos <= 2 * depth; ++pos)
                        if (rat_abs(seq.at(pos)) >= Rat(1)) return false;
                return true;
            }
        }
        return false;
    }

    // ---- Kolmogorov consistency ----------------------------------------

    ConsistencyReport check_kolmogorov(int depth) const {
        if (depth < 1) fail(ErrorCode::BadArgument, "depth must be >= 1");
        ConsistencyReport rep;
        rep.depth = depth;
        rep.exact = exact_;
        Rat worst_q = 0;
        double worst_d = 0;
        for (int n = 0; n <= depth; ++n) {
            for (const Path& p : paths_of_degree(*g_, Degree(g_->k(), n))) {
                ++rep.cylinders_checked;
                if (exact_) {
                    Rat total = 0;
                    for (const Path& u : paths_of_degree(*g_, Degree::ones(g_->k()), source(*g_, p)))
                        total += mass_q(compose(*g_, p, u));
                    Rat defect = rat_abs(mass_q(p) - total);
                    if (defect > worst_q) {
                        worst_q = defect;
                        rep.worst = path_str(*g_, p);
                    }
                } else {
                    double total = 0;
                    for (const Path& u : paths_of_degree(*g_, Degree::ones(g_->k()), source(*g_, p)))
                        total += mass_d(compose(*g_, p, u));
                    double defect = std::abs(mass_d(p) - total);
                    if (defect > worst_d) {
                        worst_d = defect;
                        rep.worst = path_str(*g_, p);
                    }
                }
            }
        }
        rep.max_defect = exact_ ? to_double(worst_q) : worst_d;
        rep.pass = exact_ ? (worst_q == 0) : (worst_d < 1e-12);
        return rep;
    }

    // ---- transfer kernel (used by the Hellinger profile) ----------------

    // State is a small integer; -1 marks "no memory yet". Units are degree
    // (1,...,1) paths whose range is the current vertex.
    struct Root {
        VertexId vertex;
        int state;
        double mass;
    };

    std::vector<Root> dp_roots() const {
        std::vector<Root> roots;
        switch (kind_) {
            case MeasureKind::PF:
                for (VertexId v = 0; v < g_->vertex_count(); ++v) roots.push_back({v, -1, pf_.kappa[v]});
                break;
            case MeasureKind::Kakutani: roots.push_back({0, -1, 1.0}); break;
            case MeasureKind::Markov: roots.push_back({0, -1, 1.0}); break;
            case MeasureKind::Lambda2NMarkov:
            case MeasureKind::Product2N: {
                roots.push_back({center_, -1, 0.5});
                int n2 = 2 * l2n_N();
                for (int c = 0; c < n2; ++c) {
                    double mass = kind_ == MeasureKind::Lambda2NMarkov
                                      ? 0.5 / n2
                                      : 0.5 * (1.0 + to_double(p2n_alpha(c, 0))) / n2;
                    roots.push_back({peripheral_[c], c, mass});
                }
                break;
            }
        }
        return roots;
    }

    // Conditional mass of the unit extension at square level `level` (1-based)
    // from `state`; returns the new state.
    std::pair<double, int> dp_step(int level, int state, const Path& unit) const {
        switch (kind_) {
            case MeasureKind::PF: {
                double w = 1.0;
                for (int i = 0; i < g_->k(); ++i) w /= pf_.rho[i];
                w *= pf_.kappa[source(*g_, unit)] / pf_.kappa[range(*g_, unit)];
                return {w, -1};
            }
            case MeasureKind::Kakutani: {
                int letter = one_vertex_unit_letter(unit);
                Rat a = letter == 0 ? Rat(1, 2) + gammas_->at(level) : Rat(1, 2) - gammas_->at(level);
                return {to_double(a), -1};
            }
            case MeasureKind::Markov: {
                int letter = one_vertex_unit_letter(unit);
                double w = state < 0 ? 0.5 : to_double(markov_->T[state][letter]);
                return {w, letter};
            }
            case MeasureKind::Lambda2NMarkov: {
                auto [from, to] = l2n_unit_labels(unit, state);
                double w = from < 0 ? 1.0 / (2 * l2n_N()) : to_double(t2n_[from][to]);
                return {w, to};
            }
            case MeasureKind::Product2N: {
                auto [from, to] = l2n_unit_labels(unit, state);
                bool at_center = range(*g_, unit) == center_;
                int pos = at_center ? 2 * level - 1 : 2 * level;
                double w = (1.0 + to_double(p2n_alpha(to, pos))) / (2 * l2n_N());
                (void)from;
                return {w, to};
            }
        }
        return {0.0, -1};
    }

private:
    CylinderMeasure(const KGraph& g, MeasureKind k) : g_(&g), kind_(k) {}

    static void validate_markov(const MarkovSpecParams& p) {
        std::size_t n = p.T.size();
        if (p.lambda_vec.size() != n) fail(ErrorCode::BadArgument, "lambda vector size mismatch");
        for (const auto& row : p.T) {
            if (row.size() != n) fail(ErrorCode::BadArgument, "T must be square");
            Rat s = 0;
            for (const Rat& x : row) {
                if (!(x > 0)) fail(ErrorCode::BadArgument, "T entries must be positive");
                s += x;
            }
            if (s != 1) fail(ErrorCode::BadArgument, "T rows must sum to 1");
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rat s = 0;
            for (std::size_t i = 0; i < n; ++i) s += p.lambda_vec[i] * p.T[i][j];
            if (rat_abs(s - p.lambda_vec[j]) * Rat(10000000000LL) > rat_abs(p.lambda_vec[j]))
                fail(ErrorCode::BadArgument, "lambda is not a left fixed vector of T");
        }
        for (const Rat& x : p.lambda_vec)
            if (!(x > 0)) fail(ErrorCode::BadArgument, "lambda entries must be positive");
    }

    // ---- graph role resolution ------------------------------------------

    void resolve_one_vertex_roles() {
        const KGraph& g = *g_;
        bool ok = g.k() == 2 && g.vertex_count() == 1 && g.edge_count() == 3;
        std::vector<EdgeId> blues, reds;
        if (ok) {
            for (int e = 0; e < g.edge_count(); ++e)
                (g.edge(e).color == 1 ? blues : reds).push_back(e);
            ok = blues.size() == 2 && reds.size() == 1;
        }
        if (ok) {
            // the squares must swap the blue letters across e
            EdgePair out;
            ok = g.swap_pair(blues[0], reds[0], out) && out == EdgePair{reds[0], blues[1]};
            ok = ok && g.swap_pair(blues[1], reds[0], out) && out == EdgePair{reds[0], blues[0]};
        }
        if (!ok)
            fail(ErrorCode::UnsupportedGraphForKind,
                 "this measure kind needs the one-vertex 2-graph with rules ef1=f2e, ef2=f1e");
        // letter 0 = lexicographically smaller blue id
        if (g.edge(blues[0]).id > g.edge(blues[1]).id) std::swap(blues[0], blues[1]);
        f_[0] = blues[0];
        f_[1] = blues[1];
        e_ = reds[0];
    }

    void resolve_lambda2n_roles(int N, const std::vector<int>& phi) {
        KGraph expected = make_lambda_2n(N, phi);
        if (!(expected == *g_))
            fail(ErrorCode::UnsupportedGraphForKind, "this measure kind needs the canonical lambda_2N graph");
        center_ = g_->vertex_by_id("v");
        peripheral_.clear();
        for (int i = 1; i <= 2 * N; ++i) peripheral_.push_back(g_->vertex_by_id(lambda2n_peripheral_name(N, i)));
        phi_ = phi;
    }

    int l2n_N() const { return static_cast<int>(peripheral_.size()) / 2; }

    int peripheral_index(VertexId v) const {
        for (std::size_t i = 0; i < peripheral_.size(); ++i)
            if (peripheral_[i] == v) return static_cast<int>(i);
        fail(ErrorCode::PathNotInGraph, "vertex is not peripheral");
    }

    void build_lambda2n_matrix() {
        const auto& prm = *l2n_;
        int n = 2 * prm.N;
        // cycles of phi, keyed by minimal element
        std::vector<int> cycle_of(n, -1);
        std::vector<int> mins;
        for (int i = 1; i <= n; ++i) {
            if (cycle_of[i - 1] >= 0) continue;
            int idx = static_cast<int>(mins.size());
            mins.push_back(i);
            int j = i;
            do {
                cycle_of[j - 1] = idx;
                j = prm.phi[j - 1];
            } while (j != i);
        }
        if (prm.xs.size() != mins.size())
            fail(ErrorCode::BadArgument, "need one x vector per cycle of phi (" + std::to_string(mins.size()) + ")");
        for (const auto& x : prm.xs) {
            if (static_cast<int>(x.size()) != n) fail(ErrorCode::BadArgument, "x vectors must have 2N entries");
            Rat s = 0;
            for (const Rat& v : x) {
                if (!(v > 0 && v < 1)) fail(ErrorCode::BadArgument, "x entries must lie in (0,1)");
                s += v;
            }
            if (s != 1) fail(ErrorCode::BadArgument, "x vectors must sum to 1");
        }
        // Row c_m = x^m, propagated along orbits by T(phi(i), phi(j)) = T(i, j).
        t2n_.assign(n, std::vector<Rat>(n, Rat(0)));
        std::vector<bool> done(n, false);
        for (std::size_t m = 0; m < mins.size(); ++m) {
            int i = mins[m];
            for (int j = 1; j <= n; ++j) t2n_[i - 1][j - 1] = prm.xs[m][j - 1];
            done[i - 1] = true;
            int cur = prm.phi[i - 1];
            int prev = i;
            while (cur != i) {
                for (int j = 1; j <= n; ++j) t2n_[cur - 1][prm.phi[j - 1] - 1] = t2n_[prev - 1][j - 1];
                done[cur - 1] = true;
                prev = cur;
                cur = prm.phi[cur - 1];
            }
        }
        for (bool b : done)
            if (!b) fail(ErrorCode::InvalidPermutation, "phi orbit did not cover all labels");
    }

    Rat p2n_alpha(int label0, int pos) const { // label0 in 0..2N-1
        int N = p2n_->N;
        const PerturbationSeq& seq = p2n_->deltas[label0 % N];
        Rat d = seq.at(pos);
        return label0 < N ? d : -d;
    }

    // ---- mass -----------------------------------------------------------

    template <class S> S scalar(const Rat& q) const;

    template <class S> S mass_impl(const Path& p) const {
        for (EdgeId e : p.edges)
            if (e < 0 || e >= g_->edge_count()) fail(ErrorCode::PathNotInGraph, "edge index out of range");
        if (kind_ == MeasureKind::PF) return pf_mass<S>(p);
        Degree d = degree_of(*g_, p);
        int t = d.max_entry();
        Degree target(g_->k(), t);
        if (d == target) return square_mass<S>(p.edges, t, range(*g_, p));
        S total{};
        for (const Path& u : paths_of_degree(*g_, target - d, source(*g_, p))) {
            std::vector<EdgeId> word = p.edges;
            word.insert(word.end(), u.edges.begin(), u.edges.end());
            total += square_mass<S>(word, t, range(*g_, p));
        }
        return total;
    }

    template <class S> S pf_mass(const Path& p) const {
        Degree d = degree_of(*g_, p);
        if constexpr (std::is_same_v<S, Rat>) {
            Rat out = pf_.kappa_q[source(*g_, p)];
            for (int i = 0; i < g_->k(); ++i) out /= rat_pow(pf_.rho_q[i], d[i]);
            return out;
        } else {
            double out = pf_.kappa[source(*g_, p)];
            for (int i = 0; i < g_->k(); ++i) out /= std::pow(pf_.rho[i], d[i]);
            return out;
        }
    }

    // letter of a degree-(1,1) one-vertex unit path: 0 or 1 after normalizing
    // to the red-first form
    int one_vertex_unit_letter(const Path& unit) const {
        std::vector<EdgeId> w = unit.edges;
        detail::pull_front_edge(*g_, w, 2);
        EdgeId f = detail::pull_front_edge(*g_, w, 1);
        return f == f_[0] ? 0 : 1;
    }

    // (previous label, new label) with labels 0-based; from = state for
    // peripheral walks, -1 at the center root
    std::pair<int, int> l2n_unit_labels(const Path& unit, int state) const {
        std::vector<EdgeId> w = unit.edges;
        if (range(*g_, unit) == center_) {
            EdgeId red = detail::pull_front_edge(*g_, w, 2);
            int label = peripheral_index(g_->edge(red).source);
            return {state, label};
        }
        detail::pull_front_edge(*g_, w, 2); // red back to the center
        EdgeId blue = detail::pull_front_edge(*g_, w, 1);
        int label = peripheral_index(g_->edge(blue).source);
        return {state, label};
    }

    template <class S> S square_mass(std::vector<EdgeId> word, int levels, VertexId root) const {
        switch (kind_) {
            case MeasureKind::Kakutani: {
                S out = scalar<S>(Rat(1));
                for (int i = 1; i <= levels; ++i) {
                    detail::pull_front_edge(*g_, word, 2);
                    EdgeId f = detail::pull_front_edge(*g_, word, 1);
                    Rat a = (f == f_[0]) ? Rat(1, 2) + gammas_->at(i) : Rat(1, 2) - gammas_->at(i);
                    out *= scalar<S>(a);
                }
                return out;
            }
            case MeasureKind::Markov: {
                S out = scalar<S>(Rat(1, 2));
                if (levels == 0) return scalar<S>(Rat(1));
                int prev = -1;
                for (int i = 1; i <= levels; ++i) {
                    detail::pull_front_edge(*g_, word, 2);
                    EdgeId f = detail::pull_front_edge(*g_, word, 1);
                    int letter = (f == f_[0]) ? 0 : 1;
                    if (prev >= 0) out *= scalar<S>(markov_->T[prev][letter]);
                    prev = letter;
                }
                return out;
            }
            case MeasureKind::Lambda2NMarkov:
            case MeasureKind::Product2N: {
                bool at_center = root == center_;
                std::vector<int> labels;
                if (!at_center) labels.push_back(peripheral_index(root));
                if (at_center) {
                    for (int i = 1; i <= levels; ++i) {
                        EdgeId red = detail::pull_front_edge(*g_, word, 2);
                        labels.push_back(peripheral_index(g_->edge(red).source));
                        detail::pull_front_edge(*g_, word, 1);
                    }
                } else if (levels > 0) {
                    detail::pull_front_edge(*g_, word, 2);
                    for (int i = 1; i <= levels; ++i) {
                        EdgeId blue = detail::pull_front_edge(*g_, word, 1);
                        labels.push_back(peripheral_index(g_->edge(blue).source));
                        if (i < levels) detail::pull_front_edge(*g_, word, 2);
                    }
                }
                int n2 = 2 * l2n_N();
                if (kind_ == MeasureKind::Lambda2NMarkov) {
                    S out = scalar<S>(at_center ? Rat(1, 2) : Rat(1, 2 * n2));
                    if (at_center && !labels.empty()) out *= scalar<S>(Rat(1, n2));
                    for (std::size_t i = 0; i + 1 < labels.size(); ++i)
                        out *= scalar<S>(t2n_[labels[i]][labels[i + 1]]);
                    return out;
                }
                S out = scalar<S>(Rat(1, 2));
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    int pos = at_center ? 2 * static_cast<int>(i) + 1 : 2 * static_cast<int>(i);
                    out *= scalar<S>((Rat(1) + p2n_alpha(labels[i], pos)) / n2);
                }
                return out;
            }
            default: fail(ErrorCode::UnsupportedMeasure, "square mass not defined for this kind");
        }
    }

    Path extend_to_level(const Path& base, int lvl) const {
        Degree d = degree_of(*g_, base);
        Degree target(g_->k(), lvl);
        if (d == target) return base;
        auto exts = paths_of_degree(*g_, target - d, source(*g_, base));
        if (exts.empty()) fail(ErrorCode::BadArgument, "base is not extendable to the requested depth");
        return compose(*g_, base, exts.front());
    }

    const KGraph* g_;
    MeasureKind kind_;
    bool exact_ = false;

    PFData pf_;

    EdgeId f_[2] = {-1, -1};
    EdgeId e_ = -1;
    std::optional<PerturbationSeq> gammas_;
    bool summable_ = true;

    std::optional<MarkovSpecParams> markov_;

    std::optional<Lambda2NParams> l2n_;
    std::optional<Product2NParams> p2n_;
    std::vector<std::vector<Rat>> t2n_;
    VertexId center_ = -1;
    std::vector<VertexId> peripheral_;
    std::vector<int> phi_;
};

template <> inline Rat CylinderMeasure::scalar<Rat>(const Rat& q) const { return q; }
template <> inline double CylinderMeasure::scalar<double>(const Rat& q) const { return to_double(q); }

} // namespace kgraph

#endif // KGRAPH_MEASURE_HPP
