#ifndef KGRAPH_DEGREE_HPP
#define KGRAPH_DEGREE_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <kgraph/errors.hpp>

namespace kgraph {

// Element of N^k: per-color edge counts of a path.
class Degree {
public:
    Degree() = default;
    explicit Degree(int k, int fill = 0) : entries_(k, fill) {
        if (k <= 0) fail(ErrorCode::BadArgument, "degree rank must be positive");
        if (fill < 0) fail(ErrorCode::BadArgument, "negative degree entry");
    }
    explicit Degree(std::vector<int> entries) : entries_(std::move(entries)) {
        for (int e : entries_)
            if (e < 0) fail(ErrorCode::BadArgument, "negative degree entry");
    }
    Degree(std::initializer_list<int> entries) : Degree(std::vector<int>(entries)) {}

    static Degree ones(int k) { return Degree(k, 1); }
    static Degree basis(int k, int color) {
        Degree d(k);
        if (color < 1 || color > k) fail(ErrorCode::ColorOutOfRange, "color " + std::to_string(color));
        d.entries_[color - 1] = 1;
        return d;
    }

    int rank() const { return static_cast<int>(entries_.size()); }
    int operator[](int i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    int total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
    int max_entry() const { return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end()); }
    bool is_zero() const { return total() == 0; }
    bool is_square() const {
        for (int e : entries_)
            if (e != entries_[0]) return false;
        return true;
    }

    friend Degree operator+(const Degree& a, const Degree& b) {
        check_rank(a, b);
        Degree out = a;
        for (int i = 0; i < a.rank(); ++i) out.entries_[i] += b.entries_[i];
        return out;
    }
    // Defined only when the result is non-negative.
    friend Degree operator-(const Degree& a, const Degree& b) {
        check_rank(a, b);
        Degree out = a;
        for (int i = 0; i < a.rank(); ++i) {
            out.entries_[i] -= b.entries_[i];
            if (out.entries_[i] < 0) fail(ErrorCode::BadArgument, "degree subtraction went negative");
        }
        return out;
    }

    friend Degree join(const Degree& a, const Degree& b) { // coordinatewise max
        check_rank(a, b);
        Degree out = a;
        for (int i = 0; i < a.rank(); ++i) out.entries_[i] = std::max(out.entries_[i], b.entries_[i]);
        return out;
    }

    friend bool operator==(const Degree& a, const Degree& b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
    friend bool operator<(const Degree& a, const Degree& b) { return a.entries_ < b.entries_; } // lexicographic, for maps

    friend bool leq(const Degree& a, const Degree& b) { // coordinatewise
        check_rank(a, b);
        for (int i = 0; i < a.rank(); ++i)
            if (a.entries_[i] > b.entries_[i]) return false;
        return true;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < rank(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        return s + ")";
    }

private:
    static void check_rank(const Degree& a, const Degree& b) {
        if (a.rank() != b.rank()) fail(ErrorCode::BadArgument, "degree rank mismatch");
    }

    std::vector<int> entries_;
};

// All degrees d with d <= bound coordinatewise, in lexicographic order.
inline std::vector<Degree> degrees_up_to(const Degree& bound) {
    std::vector<Degree> out;
    std::vector<int> cur(bound.rank(), 0);
    while (true) {
        out.push_back(Degree(cur));
        int i = bound.rank() - 1;
        while (i >= 0) {
            if (cur[i] < bound[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

} // namespace kgraph

#endif // KGRAPH_DEGREE_HPP
