#ifndef KGRAPH_RATIONAL_HPP
#define KGRAPH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include <kgraph/errors.hpp>

namespace kgraph {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    long n = e;
    if (n < 0) {
        if (b == 0) fail(ErrorCode::BadArgument, "zero to negative power");
        b = Rat(denominator(b), numerator(b));
        n = -n;
    }
    Rat out(1);
    while (n > 0) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    return out;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Base-10 integer parser; cpp_int's own string constructor would read a
// leading zero as an octal prefix.
inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) fail(ErrorCode::BadArgument, "empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) fail(ErrorCode::BadArgument, "bad integer '" + s + "'");
    BigInt out = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail(ErrorCode::BadArgument, "bad integer '" + s + "'");
        out = out * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-out) : out;
}

// Accepts "p", "p/q", or a finite decimal like "-0.25".
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) fail(ErrorCode::BadArgument, "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_bigint(s.substr(0, slash));
        BigInt den = parse_bigint(s.substr(slash + 1));
        if (den == 0) fail(ErrorCode::BadArgument, "zero denominator in '" + s + "'");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(parse_bigint(s));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head = "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt whole = parse_bigint(head);
    if (whole < 0) whole = -whole;
    BigInt digits = frac.empty() ? BigInt(0) : parse_bigint(frac);
    BigInt num = whole * scale + digits;
    return Rat(neg ? BigInt(-num) : num, scale);
}

// Exact value of a finite double (every double is a dyadic rational).
inline Rat rat_from_double(double v) {
    if (!std::isfinite(v)) fail(ErrorCode::BadArgument, "cannot convert a non-finite double");
    int exp = 0;
    double m = std::frexp(v, &exp);
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    int e2 = exp - 53;
    Rat out(mant);
    if (e2 >= 0) return out * rat_pow(Rat(2), e2);
    return out / rat_pow(Rat(2), -e2);
}

inline std::string rat_to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace kgraph

#endif // KGRAPH_RATIONAL_HPP
