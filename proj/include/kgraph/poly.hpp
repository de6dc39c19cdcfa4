#ifndef KGRAPH_POLY_HPP
#define KGRAPH_POLY_HPP

#include <map>
#include <string>
#include <utility>

#include <kgraph/rational.hpp>

namespace kgraph {

// Bivariate polynomial over Q, exact coefficient arithmetic. Univariate maps
// just ignore y.
class Poly2 {
public:
    using Key = std::pair<int, int>; // (x exponent, y exponent)

    Poly2() = default;
    /* implicit */ Poly2(const Rat& c) {
        if (c != 0) coef_[{0, 0}] = c;
    }

    static Poly2 x() { return monomial(1, 0, Rat(1)); }
    static Poly2 y() { return monomial(0, 1, Rat(1)); }
    static Poly2 monomial(int dx, int dy, const Rat& c) {
        Poly2 p;
        if (c != 0) p.coef_[{dx, dy}] = c;
        return p;
    }
    static Poly2 affine(const Rat& a, const Rat& b) { // a*x + b
        Poly2 p;
        if (a != 0) p.coef_[{1, 0}] = a;
        if (b != 0) p.coef_[{0, 0}] = b;
        return p;
    }

    const std::map<Key, Rat>& coef() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [k, c] : coef_) d = std::max(d, k.first + k.second);
        return d;
    }
    bool depends_on_x() const {
        for (const auto& [k, c] : coef_)
            if (k.first > 0) return true;
        return false;
    }
    bool depends_on_y() const {
        for (const auto& [k, c] : coef_)
            if (k.second > 0) return true;
        return false;
    }
    bool is_affine() const { return total_degree() <= 1; }

    Rat coeff(int dx, int dy) const {
        auto it = coef_.find({dx, dy});
        return it == coef_.end() ? Rat(0) : it->second;
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 out = a;
        for (const auto& [k, c] : b.coef_) out.add(k, c);
        return out;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 out = a;
        for (const auto& [k, c] : b.coef_) out.add(k, -c);
        return out;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 out;
        for (const auto& [ka, ca] : a.coef_)
            for (const auto& [kb, cb] : b.coef_) out.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return out;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat out = 0;
        for (const auto& [k, c] : coef_) out += c * rat_pow(x, k.first) * rat_pow(y, k.second);
        return out;
    }
    double eval(double x, double y) const {
        double out = 0;
        for (const auto& [k, c] : coef_) {
            double t = to_double(c);
            for (int i = 0; i < k.first; ++i) t *= x;
            for (int i = 0; i < k.second; ++i) t *= y;
            out += t;
        }
        return out;
    }

    // p(u(x,y), v(x,y)), exact.
    Poly2 compose(const Poly2& u, const Poly2& v) const {
        Poly2 out;
        for (const auto& [k, c] : coef_) {
            Poly2 term(c);
            for (int i = 0; i < k.first; ++i) term = term * u;
            for (int i = 0; i < k.second; ++i) term = term * v;
            out = out + term;
        }
        return out;
    }

    Poly2 d_dx() const {
        Poly2 out;
        for (const auto& [k, c] : coef_)
            if (k.first > 0) out.add({k.first - 1, k.second}, c * k.first);
        return out;
    }
    Poly2 d_dy() const {
        Poly2 out;
        for (const auto& [k, c] : coef_)
            if (k.second > 0) out.add({k.first, k.second - 1}, c * k.second);
        return out;
    }

    std::string str() const {
        if (coef_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : coef_) {
            if (!s.empty()) s += " + ";
            s += rat_to_string(c);
            if (k.first) s += "*x^" + std::to_string(k.first);
            if (k.second) s += "*y^" + std::to_string(k.second);
        }
        return s;
    }

private:
    void add(const Key& k, const Rat& c) {
        if (c == 0) return;
        auto it = coef_.find(k);
        if (it == coef_.end()) {
            coef_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) coef_.erase(it);
        }
    }

    std::map<Key, Rat> coef_;
};

} // namespace kgraph

#endif // KGRAPH_POLY_HPP
