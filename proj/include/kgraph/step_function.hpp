#ifndef KGRAPH_STEP_FUNCTION_HPP
#define KGRAPH_STEP_FUNCTION_HPP

#include <cmath>
#include <map>

#include <kgraph/measure.hpp>
#include <kgraph/radical.hpp>

namespace kgraph {

// Finite linear combination of square-cylinder indicators at a fixed level.
template <class C> struct StepFunction {
    int level = 0;
    std::map<Path, C> coeff;

    static StepFunction indicator(const KGraph& g, const Path& p) {
        Degree d = degree_of(g, p);
        if (!d.is_square()) fail(ErrorCode::BadArgument, "step functions live on square cylinders");
        StepFunction f;
        f.level = d.max_entry();
        f.coeff[p] = C(1);
        return f;
    }

    bool is_zero() const {
        for (const auto& [p, c] : coeff)
            if (!(c == C(0))) return false;
        return true;
    }

    StepFunction& operator+=(const StepFunction& o) {
        if (level != o.level) fail(ErrorCode::BadArgument, "cannot add step functions at different levels");
        for (const auto& [p, c] : o.coeff) add_term(p, c);
        return *this;
    }

    StepFunction scaled(const C& s) const {
        StepFunction out;
        out.level = level;
        for (const auto& [p, c] : coeff) {
            C v = c * s;
            if (!(v == C(0))) out.coeff[p] = v;
        }
        return out;
    }

    void add_term(const Path& p, const C& c) {
        if (c == C(0)) return;
        auto it = coeff.find(p);
        if (it == coeff.end()) {
            coeff[p] = c;
        } else {
            it->second += c;
            if (it->second == C(0)) coeff.erase(it);
        }
    }
};

// Pointwise-equal representative at a finer level: each coefficient is copied
// to every one-step extension, repeatedly.
template <class C> StepFunction<C> refine(const KGraph& g, const StepFunction<C>& f, int level) {
    if (level < f.level) fail(ErrorCode::LevelDecrease, "refinement level must not decrease");
    if (level == f.level) return f;
    StepFunction<C> out;
    out.level = level;
    Degree step(g.k(), level - f.level);
    for (const auto& [p, c] : f.coeff) {
        for (const Path& u : paths_of_degree(g, step, source(g, p))) out.add_term(compose(g, p, u), c);
    }
    return out;
}

namespace detail {

struct ExactL2Mode {
    using Mass = Rat;
    using Coeff = RadicalSum;
    static Mass mass(const CylinderMeasure& m, const Path& p) { return m.mass_q(p); }
    static Coeff coeff_of(const Mass& x) { return RadicalSum(x); }
    static Coeff sqrt_mass(const Mass& x) { return RadicalSum::sqrt_of(x); }
    static double to_double(const Coeff& c) { return c.to_double(); }
    static bool zero(const Coeff& c) { return c.is_zero(); }
};

struct FloatL2Mode {
    using Mass = double;
    using Coeff = double;
    static Mass mass(const CylinderMeasure& m, const Path& p) { return m.mass_d(p); }
    static Coeff coeff_of(const Mass& x) { return x; }
    static Coeff sqrt_mass(const Mass& x) { return std::sqrt(x); }
    static double to_double(const Coeff& c) { return c; }
    static bool zero(const Coeff& c) { return c == 0.0; }
};

} // namespace detail

// <f, h> under the measure: refine both to a common level and sum
// f(p) h(p) mass(Z(p)). Refinement-invariant beyond the larger level.
template <class Mode>
typename Mode::Coeff inner_product(const CylinderMeasure& m, const StepFunction<typename Mode::Coeff>& f,
                                   const StepFunction<typename Mode::Coeff>& h) {
    const KGraph& g = m.graph();
    int lvl = std::max(f.level, h.level);
    StepFunction<typename Mode::Coeff> a = refine(g, f, lvl);
    StepFunction<typename Mode::Coeff> b = refine(g, h, lvl);
    typename Mode::Coeff acc{};
    for (const auto& [p, c] : a.coeff) {
        auto it = b.coeff.find(p);
        if (it == b.coeff.end()) continue;
        acc += c * it->second * Mode::coeff_of(Mode::mass(m, p));
    }
    return acc;
}

} // namespace kgraph

#endif // KGRAPH_STEP_FUNCTION_HPP
