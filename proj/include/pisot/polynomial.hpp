#pragma once

#include "pisot/error.hpp"
#include "pisot/numbers.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pisot {

/// Integer polynomial, coefficient i multiplies x^i.
using IntPoly = std::vector<Integer>;
/// Rational polynomial, coefficient i multiplies x^i.
using RatPoly = std::vector<Rational>;

namespace poly {

template <typename T>
void trim(std::vector<T>& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

template <typename T>
int degree(const std::vector<T>& p)
{
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

inline RatPoly to_rational(const IntPoly& p) { return RatPoly(p.begin(), p.end()); }

inline IntPoly derivative(const IntPoly& p)
{
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

inline IntPoly reversed(IntPoly p)
{
    trim(p);
    std::reverse(p.begin(), p.end());
    trim(p);
    return p;
}

/// Remainder of a by b over Q.
inline RatPoly remainder(RatPoly a, const RatPoly& b)
{
    trim(a);
    int db = degree(b);
    if (db < 0) fail(errc::division_by_zero, "polynomial remainder by zero");
    const Rational& lead = b[static_cast<std::size_t>(db)];
    for (int da = degree(a); da >= db; da = degree(a)) {
        Rational f = a[static_cast<std::size_t>(da)] / lead;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] -= f * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    return a;
}

/// Quotient and remainder of a by b over Q.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b)
{
    trim(a);
    int db = degree(b);
    if (db < 0) fail(errc::division_by_zero, "polynomial division by zero");
    const Rational& lead = b[static_cast<std::size_t>(db)];
    RatPoly q(a.size() > static_cast<std::size_t>(db) ? a.size() - static_cast<std::size_t>(db) : 1, Rational(0));
    for (int da = degree(a); da >= db; da = degree(a)) {
        Rational f = a[static_cast<std::size_t>(da)] / lead;
        q[static_cast<std::size_t>(da - db)] = f;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] -= f * b[static_cast<std::size_t>(i)];
        trim(a);
    }
    trim(q);
    return {q, a};
}

/// Monic gcd over Q.
inline RatPoly gcd(RatPoly a, RatPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

/// Whether monic integer `divisor` divides `p` exactly in Z[x].
inline bool divides(const IntPoly& divisor, IntPoly p)
{
    trim(p);
    int dd = degree(divisor);
    if (dd < 0 || divisor[static_cast<std::size_t>(dd)] != 1) return false;
    for (int dp = degree(p); dp >= dd; dp = degree(p)) {
        Integer f = p[static_cast<std::size_t>(dp)];
        for (int i = 0; i <= dd; ++i)
            p[static_cast<std::size_t>(dp - dd + i)] -= f * divisor[static_cast<std::size_t>(i)];
        trim(p);
    }
    return p.empty();
}

/// Exact sign of p(num / 2^bits).
inline int sign_at_dyadic(const IntPoly& p, const Integer& num, unsigned long bits)
{
    // Horner on the homogenised form: acc_i = acc_{i+1} * num + p_i * 2^{bits (n - i)}.
    Integer acc = 0;
    Integer scale = 1;
    const Integer step = pow2(bits);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * num + p[i] * scale;
        scale *= step;
    }
    return sgn(acc);
}

/// Exact sign of p(q).
inline int sign_at(const IntPoly& p, const Rational& q)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * q + p[i];
    return sgn(acc);
}

namespace detail {

inline std::string strip_spaces(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    return s;
}

inline Integer parse_integer(const std::string& s, std::size_t& pos)
{
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(errc::parse_error, "expected digits at position " + std::to_string(start));
    return Integer(s.substr(start, pos - start));
}

inline IntPoly parse_json_array(const std::string& s)
{
    // [a_m, ..., a_0] leading coefficient first.
    std::vector<Integer> descending;
    std::size_t pos = 1;
    while (pos < s.size() && s[pos] != ']') {
        bool neg = false;
        if (s[pos] == '-' || s[pos] == '+') {
            neg = s[pos] == '-';
            ++pos;
        }
        Integer v = parse_integer(s, pos);
        descending.push_back(neg ? Integer(-v) : v);
        if (pos < s.size() && s[pos] == ',') ++pos;
        else if (pos < s.size() && s[pos] != ']')
            fail(errc::parse_error, "unexpected character in coefficient array");
    }
    if (pos >= s.size() || pos + 1 != s.size()) fail(errc::parse_error, "unterminated coefficient array");
    if (descending.empty()) fail(errc::parse_error, "empty coefficient array");
    return IntPoly(descending.rbegin(), descending.rend());
}

} // namespace detail

/// Parses "x^3-x^2-x-1" (any variable letter) or a JSON array "[1,-1,-1,-1]".
inline IntPoly parse(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    if (s.empty()) fail(errc::parse_error, "empty polynomial");
    if (s.front() == '[') return detail::parse_json_array(s);

    std::map<long, Integer> terms;
    std::size_t pos = 0;
    char var = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            fail(errc::parse_error, "expected '+' or '-' at position " + std::to_string(pos));
        }
        if (pos >= s.size()) fail(errc::parse_error, "dangling sign");
        Integer coeff = 1;
        bool has_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coeff = detail::parse_integer(s, pos);
            has_coeff = true;
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        long exponent = 0;
        if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            if (var != 0 && s[pos] != var) fail(errc::parse_error, "mixed variable names");
            var = s[pos++];
            exponent = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                Integer e = detail::parse_integer(s, pos);
                if (!e.fits_slong_p() || e > 1000) fail(errc::parse_error, "exponent too large");
                exponent = e.get_si();
            }
        } else if (!has_coeff) {
            fail(errc::parse_error, "expected a term at position " + std::to_string(pos));
        }
        terms[exponent] += sign * coeff;
    }
    long top = terms.empty() ? 0 : terms.rbegin()->first;
    IntPoly p(static_cast<std::size_t>(top + 1), Integer(0));
    for (const auto& [e, c] : terms) p[static_cast<std::size_t>(e)] = c;
    trim(p);
    if (p.empty()) fail(errc::parse_error, "zero polynomial");
    return p;
}

/// "x^3 - x^2 - x - 1" style rendering, leading term first.
inline std::string format(const IntPoly& p, char var = 'x')
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Integer& c = p[i];
        if (c == 0) continue;
        Integer a = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || a != 1) os << a;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
}

} // namespace poly
} // namespace pisot
