#ifndef KGRAPH_RADICAL_HPP
#define KGRAPH_RADICAL_HPP

#include <map>
#include <cmath>

#include <kgraph/rational.hpp>

namespace kgraph {

namespace detail {

// Splits n > 0 as s^2 * m with m squarefree. Trial division; inputs here come
// from products of small numerators/denominators, so this stays cheap.
inline void square_part(const BigInt& n, BigInt& s, BigInt& m) {
    s = 1;
    m = 1;
    BigInt r = n;
    for (BigInt p = 2; p * p <= r; p += (p == 2 ? 1 : 2)) {
        if (r % p != 0) continue;
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) m *= p;
    }
    m *= r;
}

} // namespace detail

// Exact element of the real field generated by square roots of rationals:
// a finite sum  sum_i  c_i * sqrt(m_i)  with c_i rational and m_i squarefree
// positive integers (m = 1 carries the rational part).
class RadicalSum {
public:
    RadicalSum() = default;

    /* implicit */ RadicalSum(const Rat& q) {
        if (q != 0) terms_[BigInt(1)] = q;
    }
    /* implicit */ RadicalSum(long v) : RadicalSum(Rat(v)) {}

    // sqrt(q) for q >= 0, exactly.
    static RadicalSum sqrt_of(const Rat& q) {
        if (q < 0) fail(ErrorCode::BadArgument, "sqrt of negative rational");
        if (q == 0) return RadicalSum();
        BigInt a = numerator(q), b = denominator(q);
        // sqrt(a/b) = sqrt(a*b)/b
        BigInt s, m;
        detail::square_part(a * b, s, m);
        RadicalSum out;
        out.terms_[m] = Rat(s, b);
        return out;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }

    Rat rational_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_rational()) fail(ErrorCode::BadArgument, "RadicalSum is irrational");
        return terms_.begin()->second;
    }

    double to_double() const {
        double acc = 0;
        for (const auto& [m, c] : terms_) {
            double root = std::sqrt(m.template convert_to<double>());
            acc += kgraph::to_double(c) * root;
        }
        return acc;
    }

    RadicalSum& operator+=(const RadicalSum& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    RadicalSum& operator-=(const RadicalSum& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }

    friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
        RadicalSum out;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                // sqrt(ma)*sqrt(mb) = g*sqrt((ma/g)*(mb/g)) with g = gcd; the
                // cofactors are coprime and squarefree, so their product is too.
                BigInt g = boost::multiprecision::gcd(ma, mb);
                BigInt m = (ma / g) * (mb / g);
                out.add_term(m, ca * cb * Rat(g));
            }
        }
        return out;
    }

    RadicalSum& operator*=(const RadicalSum& o) { return *this = *this * o; }

    friend RadicalSum operator-(const RadicalSum& a) {
        RadicalSum out;
        for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
        return out;
    }

    bool operator==(const RadicalSum& o) const { return terms_ == o.terms_; }
    bool operator!=(const RadicalSum& o) const { return !(*this == o); }

    const std::map<BigInt, Rat>& terms() const { return terms_; }

private:
    void add_term(const BigInt& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<BigInt, Rat> terms_;
};

} // namespace kgraph

#endif // KGRAPH_RADICAL_HPP
