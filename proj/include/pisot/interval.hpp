#pragma once

#include "pisot/error.hpp"
#include "pisot/numbers.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

namespace pisot {

/// A closed interval [lo, hi] * 2^-bits with integer endpoints.
///
/// All operations round outward, so the true value of any expression built from
/// enclosures stays enclosed. `bits` is the absolute precision of the grid.
class CertifiedInterval {
public:
    CertifiedInterval() = default;

    CertifiedInterval(Integer lo, Integer hi, int bits)
        : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits)
    {
        if (lo_ > hi_) fail(errc::internal_inconsistency, "interval with lower > upper");
    }

    static CertifiedInterval point(const Integer& n) { return {n, n, 0}; }

    static CertifiedInterval enclose(const Rational& q, int bits)
    {
        Integer scaled_num = shift_left(q.get_num(), bits);
        return {floor_div(scaled_num, q.get_den()), ceil_div(scaled_num, q.get_den()), bits};
    }

    static CertifiedInterval enclose(const Rational& lo, const Rational& hi, int bits)
    {
        return {floor_div(shift_left(lo.get_num(), bits), lo.get_den()),
                ceil_div(shift_left(hi.get_num(), bits), hi.get_den()), bits};
    }

    int bits() const noexcept { return bits_; }
    const Integer& scaled_lower() const noexcept { return lo_; }
    const Integer& scaled_upper() const noexcept { return hi_; }

    Rational lower() const { return scaled(lo_); }
    Rational upper() const { return scaled(hi_); }
    Rational width() const { return scaled(hi_ - lo_); }
    Rational midpoint() const { return scaled(lo_ + hi_) / 2; }
    double approx() const { return midpoint().get_d(); }

    bool contains(const Rational& q) const { return lower() <= q && q <= upper(); }
    bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
    bool positive() const { return lo_ > 0; }
    bool negative() const { return hi_ < 0; }

    /// Floor of every point of the interval when it is the same integer.
    std::optional<Integer> floor() const
    {
        Integer a = shift_floor(lo_, bits_);
        Integer b = shift_floor(hi_, bits_);
        if (a == b) return a;
        return std::nullopt;
    }

    CertifiedInterval round_to(int bits) const
    {
        if (bits >= bits_) {
            auto k = static_cast<unsigned long>(bits - bits_);
            return {shift_left(lo_, k), shift_left(hi_, k), bits};
        }
        auto k = static_cast<unsigned long>(bits_ - bits);
        return {shift_floor(lo_, k), shift_ceil(hi_, k), bits};
    }

    CertifiedInterval operator-() const { return {-hi_, -lo_, bits_}; }

    friend CertifiedInterval operator+(const CertifiedInterval& a, const CertifiedInterval& b)
    {
        int bits = std::max(a.bits_, b.bits_);
        auto x = a.round_to(bits);
        auto y = b.round_to(bits);
        return {x.lo_ + y.lo_, x.hi_ + y.hi_, bits};
    }

    friend CertifiedInterval operator-(const CertifiedInterval& a, const CertifiedInterval& b)
    {
        return a + (-b);
    }

    /// Product rounded outward to the finer of the two grids.
    friend CertifiedInterval operator*(const CertifiedInterval& a, const CertifiedInterval& b)
    {
        int bits = std::max(a.bits_, b.bits_);
        Integer p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        Integer lo = std::min({p1, p2, p3, p4});
        Integer hi = std::max({p1, p2, p3, p4});
        return CertifiedInterval(std::move(lo), std::move(hi), a.bits_ + b.bits_).round_to(bits);
    }

    friend CertifiedInterval operator*(const CertifiedInterval& a, const Integer& n)
    {
        if (n >= 0) return {a.lo_ * n, a.hi_ * n, a.bits_};
        return {a.hi_ * n, a.lo_ * n, a.bits_};
    }

    friend CertifiedInterval operator*(const Integer& n, const CertifiedInterval& a) { return a * n; }

    /// Division by a nonzero integer, rounded outward.
    CertifiedInterval divided_by(const Integer& n) const
    {
        if (n == 0) fail(errc::division_by_zero, "interval divided by zero");
        if (n > 0) return {floor_div(lo_, n), ceil_div(hi_, n), bits_};
        return {floor_div(hi_, n), ceil_div(lo_, n), bits_};
    }

    /// Quotient by an interval excluding zero, on this interval's grid.
    friend CertifiedInterval operator/(const CertifiedInterval& a, const CertifiedInterval& b)
    {
        if (b.contains_zero()) fail(errc::division_by_zero, "interval divisor contains zero");
        int bits = std::max(a.bits_, b.bits_);
        Rational q1 = a.lower() / b.lower(), q2 = a.lower() / b.upper();
        Rational q3 = a.upper() / b.lower(), q4 = a.upper() / b.upper();
        return enclose(std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4}), bits);
    }

    CertifiedInterval square() const
    {
        Integer a = lo_ * lo_, b = hi_ * hi_;
        Integer lo = contains_zero() ? Integer(0) : std::min(a, b);
        Integer hi = std::max(a, b);
        return CertifiedInterval(std::move(lo), std::move(hi), 2 * bits_).round_to(bits_);
    }

    Rational magnitude_upper() const { return std::max(abs(lower()), abs(upper())); }

    /// Subtracts the floor of the lower endpoint, landing the interval near [0,1).
    CertifiedInterval reduce_mod_one() const
    {
        Integer n = shift_floor(lo_, bits_);
        Integer off = shift_left(n, bits_);
        return {lo_ - off, hi_ - off, bits_};
    }

    friend std::ostream& operator<<(std::ostream& os, const CertifiedInterval& x)
    {
        return os << '[' << x.lower().get_d() << ", " << x.upper().get_d() << "]@" << x.bits_;
    }

private:
    Rational scaled(const Integer& n) const
    {
        Rational q(n, pow2(static_cast<unsigned long>(bits_)));
        q.canonicalize();
        return q;
    }

    Integer lo_{0};
    Integer hi_{0};
    int bits_{0};
};

/// Upper bound on the circular distance between two points of R/Z enclosed by a and b.
inline Rational circle_distance_upper(const CertifiedInterval& a, const CertifiedInterval& b)
{
    CertifiedInterval d = a - b;
    Integer n = floor_of(d.midpoint() + Rational(1, 2));
    Rational lo = d.lower() - n, hi = d.upper() - n;
    Rational r = std::max(abs(lo), abs(hi));
    return r > Rational(1, 2) ? Rational(1, 2) : r;
}

/// Lower bound on the circular distance from an enclosed point to 0 in R/Z.
inline Rational circle_distance_lower_to_zero(const CertifiedInterval& a)
{
    if (a.width() >= 1) return 0;
    Integer n = floor_of(a.lower());
    Rational lo = a.lower() - n, hi = a.upper() - n;  // lo in [0,1)
    if (hi >= 1) return 0;                             // straddles an integer
    return std::min(lo, Rational(1 - hi));
}

/// Rectangle in the complex plane.
struct ComplexInterval {
    CertifiedInterval re;
    CertifiedInterval im;

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const Integer& n)
    {
        return {a.re * n, a.im * n};
    }

    CertifiedInterval norm_squared() const { return re.square() + im.square(); }
};

} // namespace pisot
