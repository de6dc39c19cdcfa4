#ifndef KGRAPH_REGION_HPP
#define KGRAPH_REGION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <kgraph/poly.hpp>

namespace kgraph {

// ---- 1D: finite unions of open intervals with rational endpoints ----------

struct Interval {
    Rat lo, hi; // open (lo, hi)
    Rat length() const { return hi - lo; }
};

class Region1D {
public:
    Region1D() = default;
    explicit Region1D(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }
    static Region1D interval(const Rat& lo, const Rat& hi) { return Region1D({{lo, hi}}); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    Rat measure() const {
        Rat s = 0;
        for (const auto& p : parts_) s += p.length();
        return s;
    }

    // Equality up to measure zero (touching intervals are merged on entry).
    friend bool operator==(const Region1D& a, const Region1D& b) {
        if (a.parts_.size() != b.parts_.size()) return false;
        for (std::size_t i = 0; i < a.parts_.size(); ++i)
            if (a.parts_[i].lo != b.parts_[i].lo || a.parts_[i].hi != b.parts_[i].hi) return false;
        return true;
    }
    friend bool operator!=(const Region1D& a, const Region1D& b) { return !(a == b); }

    friend Region1D intersect(const Region1D& a, const Region1D& b) {
        std::vector<Interval> out;
        for (const auto& p : a.parts_) {
            for (const auto& q : b.parts_) {
                Rat lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
                if (lo < hi) out.push_back({lo, hi});
            }
        }
        return Region1D(out);
    }

    friend Region1D unite(const Region1D& a, const Region1D& b) {
        std::vector<Interval> out = a.parts_;
        out.insert(out.end(), b.parts_.begin(), b.parts_.end());
        return Region1D(out);
    }

    // Measure of a \ b.
    friend Rat measure_minus(const Region1D& a, const Region1D& b) {
        return a.measure() - intersect(a, b).measure();
    }

    bool contains(const Rat& x) const {
        for (const auto& p : parts_)
            if (p.lo < x && x < p.hi) return true;
        return false;
    }

private:
    void normalize() {
        std::vector<Interval> keep;
        for (const auto& p : parts_)
            if (p.lo < p.hi) keep.push_back(p);
        std::sort(keep.begin(), keep.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        parts_.clear();
        for (const auto& p : keep) {
            if (!parts_.empty() && p.lo <= parts_.back().hi) {
                // overlapping or touching: merge (boundaries are measure zero)
                parts_.back().hi = std::max(parts_.back().hi, p.hi);
            } else {
                parts_.push_back(p);
            }
        }
    }

    std::vector<Interval> parts_;
};

// ---- 2D: boxes plus polynomial-inequality cells ----------------------------

struct Box {
    Interval x, y;
    Rat area() const { return x.length() * y.length(); }
    bool contains(const Rat& px, const Rat& py) const {
        return x.lo < px && px < x.hi && y.lo < py && py < y.hi;
    }
};

struct PolyConstraint {
    Poly2 poly;
    bool positive = true; // poly > 0 when true, poly < 0 when false
};

// Cell cut out of a bounding box by strict polynomial inequalities; its area
// is declared in closed form and certified by sampling.
struct PolyCell {
    Box bbox;
    std::vector<PolyConstraint> constraints;
    Rat declared_area;

    bool contains(const Rat& px, const Rat& py) const {
        if (!bbox.contains(px, py)) return false;
        for (const auto& c : constraints) {
            Rat v = c.poly.eval(px, py);
            if (c.positive ? !(v > 0) : !(v < 0)) return false;
        }
        return true;
    }
};

class Region2D {
public:
    Region2D() = default;
    static Region2D box(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
        Region2D r;
        r.boxes_.push_back({{x0, x1}, {y0, y1}});
        return r;
    }
    static Region2D box_union(std::vector<Box> boxes) {
        Region2D r;
        r.boxes_ = std::move(boxes);
        return r;
    }
    static Region2D cell(PolyCell c) {
        Region2D r;
        r.cells_.push_back(std::move(c));
        return r;
    }

    void add_box(Box b) { boxes_.push_back(std::move(b)); }
    void add_cell(PolyCell c) { cells_.push_back(std::move(c)); }

    const std::vector<Box>& boxes() const { return boxes_; }
    const std::vector<PolyCell>& cells() const { return cells_; }
    bool has_cells() const { return !cells_.empty(); }

    Rat area() const { // declared for cells, exact for boxes
        Rat s = 0;
        for (const auto& b : boxes_) s += b.area();
        for (const auto& c : cells_) s += c.declared_area;
        return s;
    }

    bool contains(const Rat& px, const Rat& py) const {
        for (const auto& b : boxes_)
            if (b.contains(px, py)) return true;
        for (const auto& c : cells_)
            if (c.contains(px, py)) return true;
        return false;
    }

    Box bounding_box() const {
        if (boxes_.empty() && cells_.empty()) fail(ErrorCode::MalformedRegion, "empty region has no bounding box");
        std::optional<Box> out;
        auto merge = [&](const Box& b) {
            if (!out) {
                out = b;
            } else {
                out->x.lo = std::min(out->x.lo, b.x.lo);
                out->x.hi = std::max(out->x.hi, b.x.hi);
                out->y.lo = std::min(out->y.lo, b.y.lo);
                out->y.hi = std::max(out->y.hi, b.y.hi);
            }
        };
        for (const auto& b : boxes_) merge(b);
        for (const auto& c : cells_) merge(c.bbox);
        return *out;
    }

private:
    std::vector<Box> boxes_;
    std::vector<PolyCell> cells_;
};

// Dimension-tagged region.
struct Region {
    int dimension = 1;
    Region1D r1;
    Region2D r2;

    static Region d1(Region1D r) { return {1, std::move(r), {}}; }
    static Region d2(Region2D r) { return {2, {}, std::move(r)}; }
};

// Cartesian product of two 1D regions as a union of boxes.
inline Region2D region_product(const Region1D& a, const Region1D& b) {
    std::vector<Box> boxes;
    for (const auto& pa : a.parts())
        for (const auto& pb : b.parts()) boxes.push_back({{pa.lo, pa.hi}, {pb.lo, pb.hi}});
    return Region2D::box_union(std::move(boxes));
}

} // namespace kgraph

#endif // KGRAPH_REGION_HPP
