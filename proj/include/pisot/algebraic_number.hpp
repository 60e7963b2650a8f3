#pragma once

#include "pisot/pisot_polynomial.hpp"

#include <cmath>
#include <compare>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

namespace pisot {

/// Element of Q(beta) in the power basis 1, beta, ..., beta^{m-1}.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;

    AlgebraicNumber(PisotPolynomial field, std::vector<Rational> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs))
    {
        if (c_.size() > field_.size()) fail(errc::out_of_range, "more coefficients than the field degree");
        c_.resize(field_.size(), Rational(0));
        for (auto& x : c_) x.canonicalize();
    }

    static AlgebraicNumber from_integer(const PisotPolynomial& field, const Integer& n)
    {
        return AlgebraicNumber(field, {Rational(n)});
    }

    static AlgebraicNumber from_rational(const PisotPolynomial& field, const Rational& q)
    {
        return AlgebraicNumber(field, {q});
    }

    /// (num_0 + num_1 beta + ...) / den.
    static AlgebraicNumber from_numerators(const PisotPolynomial& field, std::span<const Integer> num,
                                           const Integer& den)
    {
        if (den == 0) fail(errc::division_by_zero, "zero denominator");
        std::vector<Rational> c;
        c.reserve(num.size());
        for (const auto& n : num) c.emplace_back(n, den);
        return AlgebraicNumber(field, std::move(c));
    }

    static AlgebraicNumber beta(const PisotPolynomial& field)
    {
        if (field.size() < 2) fail(errc::out_of_range, "degree < 2");
        return AlgebraicNumber(field, {Rational(0), Rational(1)});
    }

    /// beta^k for any integer k (beta is a unit).
    static AlgebraicNumber beta_power(const PisotPolynomial& field, long k)
    {
        AlgebraicNumber base = k >= 0 ? beta(field) : beta_inverse(field);
        return pow(base, static_cast<unsigned long>(k >= 0 ? k : -k));
    }

    /// beta^{-1} = km (beta^{m-1} - k1 beta^{m-2} - ... - k_{m-1}).
    static AlgebraicNumber beta_inverse(const PisotPolynomial& field)
    {
        const auto& k = field.recurrence();
        const std::size_t m = k.size();
        std::vector<Rational> c(m);
        c[m - 1] = k[m - 1];
        for (std::size_t j = 0; j + 1 < m; ++j) c[j] = -k[m - 1] * k[m - 2 - j];
        return AlgebraicNumber(field, std::move(c));
    }

    static AlgebraicNumber pow(AlgebraicNumber base, unsigned long e)
    {
        AlgebraicNumber r = from_integer(base.field_, 1);
        while (e > 0) {
            if (e & 1ul) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    const PisotPolynomial& field() const noexcept { return field_; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    /// Least common denominator of the coefficients.
    Integer denominator() const
    {
        Integer d = 1;
        for (const auto& x : c_) d = lcm(d, x.get_den());
        return d;
    }

    /// Integer coefficients after clearing the common denominator.
    std::vector<Integer> numerators() const
    {
        Integer d = denominator();
        std::vector<Integer> out;
        out.reserve(c_.size());
        for (const auto& x : c_) out.push_back(x.get_num() * (d / x.get_den()));
        return out;
    }

    /// Max |numerator| with the common denominator cleared.
    Integer height() const
    {
        Integer h = 0;
        for (const auto& n : numerators()) h = std::max(h, Integer(abs(n)));
        return h;
    }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// Value lies in Q (all non-constant coefficients vanish).
    bool is_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// All power-basis coefficients are integers, i.e. the element is in Z[beta].
    bool is_integral() const
    {
        for (const auto& x : c_)
            if (x.get_den() != 1) return false;
        return true;
    }

    AlgebraicNumber operator-() const
    {
        AlgebraicNumber r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        same_field(a, b);
        AlgebraicNumber r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        same_field(a, b);
        AlgebraicNumber r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        same_field(a, b);
        const std::size_t m = a.c_.size();
        const auto& k = a.field_.recurrence();
        std::vector<Rational> prod(2 * m - 1, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        // beta^j = sum_i k_i beta^{j-i} for j >= m.
        for (std::size_t j = 2 * m - 2; j >= m; --j) {
            if (prod[j] == 0) continue;
            Rational c = prod[j];
            prod[j] = 0;
            for (std::size_t i = 1; i <= m; ++i) prod[j - i] += c * k[i - 1];
        }
        prod.resize(m);
        AlgebraicNumber r;
        r.field_ = a.field_;
        r.c_ = std::move(prod);
        return r;
    }

    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const Rational& q)
    {
        AlgebraicNumber r = a;
        for (auto& x : r.c_) x *= q;
        return r;
    }

    friend AlgebraicNumber operator*(const Rational& q, const AlgebraicNumber& a) { return a * q; }

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const Rational& q)
    {
        AlgebraicNumber r = a;
        r.c_[0] += q;
        return r;
    }

    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const Rational& q) { return a + Rational(-q); }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo g.
    AlgebraicNumber inverse() const
    {
        if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
        RatPoly r0 = poly::to_rational(field_.coefficients());
        RatPoly r1 = c_;
        poly::trim(r1);
        RatPoly s0{}, s1{Rational(1)};
        while (poly::degree(r1) > 0) {
            auto [q, r] = poly::divmod(r0, r1);
            RatPoly qs1(q.size() + s1.size(), Rational(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
            RatPoly s2(std::max(s0.size(), qs1.size()), Rational(0));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
            for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
            poly::trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (poly::degree(r1) < 0) fail(errc::internal_inconsistency, "element shares a factor with g");
        Rational c = r1[0];
        // s1 may exceed degree m-1; reduce through multiplication by 1.
        std::vector<Rational> coeffs(s1.size());
        for (std::size_t i = 0; i < s1.size(); ++i) coeffs[i] = s1[i] / c;
        AlgebraicNumber result = from_integer(field_, 0);
        AlgebraicNumber power = from_integer(field_, 1);
        AlgebraicNumber b = beta(field_);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0) result = result + power * coeffs[i];
            power = power * b;
        }
        return result;
    }

    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b.inverse(); }

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    /// "(1 + 9b - 4b^2)/22".
    std::string to_string() const
    {
        Integer d = denominator();
        IntPoly num = numerators();
        std::string body = poly::format(num, 'b');
        if (d == 1) return body;
        return "(" + body + ")/" + d.get_str();
    }

private:
    static void same_field(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        if (!(a.field_ == b.field_)) fail(errc::mixed_fields, "operands belong to different fields");
    }

    PisotPolynomial field_;
    std::vector<Rational> c_;
};

namespace detail {

/// Enclosure of (sum num_i beta^i) / den with width at most about 2^-bits.
inline CertifiedInterval evaluate_scaled(const PisotPolynomial& f, std::span<const Integer> num, const Integer& den,
                                         int bits)
{
    std::size_t guard = 8 + bit_length(Integer(static_cast<long>(num.size())));
    for (const auto& c : num) guard = std::max(guard, 8 + bit_length(c));
    int work = bits + static_cast<int>(guard);
    const Rational target(1, pow2(static_cast<unsigned long>(bits)));
    for (int attempt = 0; attempt < 8; ++attempt, work += 64) {
        CertifiedInterval acc = CertifiedInterval::point(0).round_to(work);
        for (std::size_t i = 0; i < num.size(); ++i) {
            if (num[i] == 0) continue;
            acc = acc + f.beta_power(i, work) * num[i];
        }
        acc = acc.divided_by(den);
        if (acc.width() <= target) return acc;
    }
    fail(errc::precision_cap_exceeded, "evaluation did not reach requested width");
}

/// Floor decided in double arithmetic with a rigorous error bound, when it can be.
inline std::optional<Integer> fast_floor(const PisotPolynomial& f, std::span<const Integer> num, const Integer& den)
{
    constexpr double limit = 1125899906842624.0;  // 2^50
    if (!fits_int64(den)) return std::nullopt;
    const double dd = den.get_d();
    if (dd > limit) return std::nullopt;
    const auto& b = f.power_approx();
    const auto& e = f.power_error();
    double s = 0, mag = 0, err = 0;
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i] == 0) continue;
        if (!fits_int64(num[i])) return std::nullopt;
        double c = num[i].get_d();
        if (std::fabs(c) > limit) return std::nullopt;
        double t = c * b[i];
        s += t;
        mag += std::fabs(t);
        err += std::fabs(c) * e[i];
    }
    err += mag * 1e-14 + err * 1e-14;
    double lo = (s - err) / dd, hi = (s + err) / dd;
    lo -= std::fabs(lo) * 1e-14 + 1e-300;
    hi += std::fabs(hi) * 1e-14 + 1e-300;
    double fl = std::floor(lo), fh = std::floor(hi);
    if (fl != fh || std::fabs(fl) > limit) return std::nullopt;
    return Integer(static_cast<long>(fl));
}

/// Exact floor of (sum num_i beta^i) / den.
inline Integer floor_scaled(const PisotPolynomial& f, std::span<const Integer> num, const Integer& den)
{
    bool rational = true;
    for (std::size_t i = 1; i < num.size(); ++i)
        if (num[i] != 0) rational = false;
    if (rational) return floor_div(num[0], den);
    if (auto r = fast_floor(f, num, den)) return *r;
    // Irrational, so never an integer: refinement terminates below the cap.
    for (unsigned long bits = initial_precision; bits <= f.precision_cap(); bits *= 2) {
        auto iv = evaluate_scaled(f, num, den, static_cast<int>(bits));
        if (auto fl = iv.floor()) return *fl;
    }
    fail(errc::precision_cap_exceeded, "floor undecided at the precision cap");
}

} // namespace detail

/// Certified enclosure of a with width at most 2^-bits.
inline CertifiedInterval evaluate(const AlgebraicNumber& a, int bits)
{
    if (a.is_zero()) return CertifiedInterval::point(0).round_to(bits);
    auto num = a.numerators();
    return detail::evaluate_scaled(a.field(), num, a.denominator(), bits);
}

inline Integer floor_of(const AlgebraicNumber& a)
{
    auto num = a.numerators();
    return detail::floor_scaled(a.field(), num, a.denominator());
}

/// Sign of a, exact.
inline int sign(const AlgebraicNumber& a)
{
    if (a.is_rational()) return sgn(a[0]);
    for (unsigned long bits = initial_precision; bits <= a.field().precision_cap(); bits *= 2) {
        auto iv = evaluate(a, static_cast<int>(bits));
        if (iv.positive()) return 1;
        if (iv.negative()) return -1;
    }
    fail(errc::precision_cap_exceeded, "sign undecided at the precision cap");
}

inline std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    int s = sign(a - b);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline AlgebraicNumber fractional_part(const AlgebraicNumber& a) { return a - Rational(floor_of(a)); }

/// Nearest integer; exact half-integer ties are refused.
inline Integer nearest_integer(const AlgebraicNumber& a)
{
    AlgebraicNumber shifted = a + Rational(1, 2);
    if (shifted.is_rational() && shifted[0].get_den() == 1)
        fail(errc::out_of_range, "value is a half-integer; nearest integer is ambiguous");
    return floor_of(shifted);
}

/// p_j = Tr(beta^j) for j = 0..n, by Newton's identities.
inline std::vector<Integer> trace_powers(const PisotPolynomial& f, std::size_t n)
{
    const auto& k = f.recurrence();
    const std::size_t m = k.size();
    std::vector<Integer> p(n + 1);
    p[0] = static_cast<long>(m);
    for (std::size_t j = 1; j <= n; ++j) {
        Integer s = 0;
        if (j <= m) {
            for (std::size_t i = 1; i < j; ++i) s += k[i - 1] * p[j - i];
            s += k[j - 1] * static_cast<long>(j);
        } else {
            for (std::size_t i = 1; i <= m; ++i) s += k[i - 1] * p[j - i];
        }
        p[j] = s;
    }
    return p;
}

inline Rational trace_of(const AlgebraicNumber& a)
{
    auto p = trace_powers(a.field(), a.field().size());
    Rational t = 0;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i) t += a[i] * p[i];
    return t;
}

} // namespace pisot
