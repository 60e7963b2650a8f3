#pragma once

#include "pisot/interval.hpp"
#include "pisot/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace pisot {

/// Disc in C known to contain exactly one root of a polynomial.
struct RootEnclosure {
    Rational center_re;
    Rational center_im;
    Rational radius;
    bool is_real = false;
    /// For real roots, an interval of the real line with a sign change of the polynomial.
    Rational real_lower;
    Rational real_upper;
    Rational modulus_lower;
    Rational modulus_upper;

    ComplexInterval box(int bits) const
    {
        return {CertifiedInterval::enclose(center_re - radius, center_re + radius, bits),
                CertifiedInterval::enclose(center_im - radius, center_im + radius, bits)};
    }
};

namespace roots {

inline Rational sqrt_upper(const Rational& q, unsigned long bits)
{
    Integer scaled = ceil_of(q * Rational(pow2(2 * bits)));
    Rational r(isqrt_ceil(scaled), pow2(bits));
    r.canonicalize();
    return r;
}

inline Rational sqrt_lower(const Rational& q, unsigned long bits)
{
    Integer scaled = floor_of(q * Rational(pow2(2 * bits)));
    Rational r(isqrt_floor(scaled), pow2(bits));
    r.canonicalize();
    return r;
}

/// Simultaneous root approximation in long double (Aberth-Ehrlich).
inline std::vector<std::complex<long double>> approximate(const IntPoly& p)
{
    using C = std::complex<long double>;
    const int n = poly::degree(p);
    std::vector<long double> a(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) a[i] = static_cast<long double>(p[i].get_d());
    long double lead = a[static_cast<std::size_t>(n)];
    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(a[static_cast<std::size_t>(i)] / lead));
    bound += 1;

    std::vector<C> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long double angle = 2.0L * 3.14159265358979323846L * (i + 0.25L) / n + 0.4L;
        z[static_cast<std::size_t>(i)] = std::polar(bound * 0.9L, angle);
    }
    auto eval = [&](C x, C& dp) {
        C v = 0;
        dp = 0;
        for (int i = n; i >= 0; --i) {
            dp = dp * x + v;
            v = v * x + a[static_cast<std::size_t>(i)];
        }
        return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double max_step = 0;
        for (int i = 0; i < n; ++i) {
            C dp;
            C v = eval(z[static_cast<std::size_t>(i)], dp);
            if (v == C(0)) continue;
            C ratio = v / dp;
            C sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += C(1) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            C w = ratio / (C(1) - ratio * sum);
            z[static_cast<std::size_t>(i)] -= w;
            max_step = std::max(max_step, std::abs(w) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(i)])));
        }
        if (max_step < 1e-19L) break;
    }
    return z;
}

namespace detail {

/// Complex fixed-point number re/2^bits + i im/2^bits, approximate arithmetic.
struct Fixed {
    Integer re;
    Integer im;
};

inline Fixed mul(const Fixed& a, const Fixed& b, unsigned long bits)
{
    return {shift_floor(a.re * b.re - a.im * b.im, bits), shift_floor(a.re * b.im + a.im * b.re, bits)};
}

inline Fixed div(const Fixed& a, const Fixed& b, unsigned long bits)
{
    Integer den = b.re * b.re + b.im * b.im;
    if (den == 0) return {0, 0};
    return {floor_div(shift_left(a.re * b.re + a.im * b.im, bits), den),
            floor_div(shift_left(a.im * b.re - a.re * b.im, bits), den)};
}

inline Fixed from_ld(std::complex<long double> z, unsigned long bits)
{
    auto conv = [&](long double x) {
        int e = 0;
        long double m = std::frexp(x, &e);
        auto mant = static_cast<long long>(std::ldexp(m, 62));
        Integer r(static_cast<long>(mant));
        long shift = static_cast<long>(bits) + e - 62;
        return shift >= 0 ? shift_left(r, static_cast<unsigned long>(shift))
                          : shift_floor(r, static_cast<unsigned long>(-shift));
    };
    return {conv(z.real()), conv(z.imag())};
}

} // namespace detail

/// Durand-Kerner refinement of approximations to `bits` fractional bits.
inline std::vector<std::pair<Rational, Rational>> refine(const IntPoly& p,
                                                         const std::vector<std::complex<long double>>& start,
                                                         unsigned long bits)
{
    using detail::Fixed;
    const std::size_t n = start.size();
    std::vector<Fixed> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = detail::from_ld(start[i], bits);
    const Integer tol = pow2(8);
    for (int iter = 0; iter < 200; ++iter) {
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            Fixed v{0, 0};
            for (std::size_t k = p.size(); k-- > 0;) {
                v = detail::mul(v, z[i], bits);
                v.re += shift_left(p[k], bits);
            }
            Fixed prod{pow2(bits), 0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) prod = detail::mul(prod, Fixed{z[i].re - z[j].re, z[i].im - z[j].im}, bits);
            Fixed w = detail::div(v, prod, bits);
            z[i].re -= w.re;
            z[i].im -= w.im;
            if (abs(w.re) > tol || abs(w.im) > tol) converged = false;
        }
        if (converged) break;
    }
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& x : z) {
        Rational re(x.re, pow2(bits)), im(x.im, pow2(bits));
        re.canonicalize();
        im.canonicalize();
        out.emplace_back(re, im);
    }
    return out;
}

/// Exact complex value of p at a Gaussian rational.
inline std::pair<Rational, Rational> evaluate(const IntPoly& p, const Rational& re, const Rational& im)
{
    Rational vr = 0, vi = 0;
    for (std::size_t k = p.size(); k-- > 0;) {
        Rational nr = vr * re - vi * im + p[k];
        Rational ni = vr * im + vi * re;
        vr = std::move(nr);
        vi = std::move(ni);
    }
    return {vr, vi};
}

enum class Certification { ok, overlap, undecided_real };

/// Smith discs around the approximations; all discs disjoint means each holds exactly one root.
inline Certification certify(const IntPoly& p, const std::vector<std::pair<Rational, Rational>>& centers,
                             unsigned long bits, std::vector<RootEnclosure>& out)
{
    const std::size_t n = centers.size();
    const unsigned long sq_bits = bits + 16;
    out.assign(n, RootEnclosure{});
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [cr, ci] = centers[i];
        auto [vr, vi] = evaluate(p, cr, ci);
        Rational num = sqrt_upper(vr * vr + vi * vi, sq_bits) * static_cast<long>(n);
        Rational den = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Rational dr = cr - centers[j].first, di = ci - centers[j].second;
            Rational d = sqrt_lower(dr * dr + di * di, sq_bits);
            if (d == 0) return Certification::overlap;
            den *= d;
        }
        out[i].center_re = cr;
        out[i].center_im = ci;
        // Round the radius up to the grid to keep later rationals small.
        Rational r = num / den;
        Rational rr(ceil_of(r * Rational(pow2(sq_bits))) + 1, pow2(sq_bits));
        rr.canonicalize();
        out[i].radius = rr;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational dr = out[i].center_re - out[j].center_re, di = out[i].center_im - out[j].center_im;
            Rational s = out[i].radius + out[j].radius;
            if (s * s >= dr * dr + di * di) return Certification::overlap;
        }
    for (auto& e : out) {
        Rational m2 = e.center_re * e.center_re + e.center_im * e.center_im;
        e.modulus_upper = sqrt_upper(m2, sq_bits) + e.radius;
        Rational low = sqrt_lower(m2, sq_bits) - e.radius;
        e.modulus_lower = low > 0 ? low : Rational(0);
        Rational im_abs = abs(e.center_im);
        if (im_abs > e.radius) {
            e.is_real = false;
            continue;
        }
        Rational half = sqrt_lower(e.radius * e.radius - e.center_im * e.center_im, sq_bits);
        int s_lo = poly::sign_at(p, e.center_re - half);
        int s_hi = poly::sign_at(p, e.center_re + half);
        if (s_lo * s_hi < 0) {
            e.is_real = true;
            e.real_lower = e.center_re - half;
            e.real_upper = e.center_re + half;
        } else {
            return Certification::undecided_real;
        }
    }
    return Certification::ok;
}

/// Certified enclosure of the simple real root in [a, b] (sign change required) to `bits` bits.
inline CertifiedInterval refine_real_root(const IntPoly& p, const Rational& a, const Rational& b,
                                          unsigned long bits)
{
    const int sa = poly::sign_at(p, a);
    const int sb = poly::sign_at(p, b);
    if (sa * sb >= 0) fail(errc::internal_inconsistency, "real root bracket without sign change");
    const IntPoly dp = poly::derivative(p);

    auto eval_fixed = [](const IntPoly& q, const Integer& x, unsigned long k) {
        Integer acc = 0;
        for (std::size_t i = q.size(); i-- > 0;) acc = shift_floor(acc * x, k) + shift_left(q[i], k);
        return acc;
    };

    unsigned long cur = 64;
    Integer x = floor_of((a + b) / 2 * Rational(pow2(cur)));
    for (int guard = 0; guard < 64; ++guard) {
        for (int it = 0; it < 3; ++it) {
            Integer gv = eval_fixed(p, x, cur);
            Integer dv = eval_fixed(dp, x, cur);
            if (dv == 0) break;
            x -= floor_div(shift_left(gv, cur), dv);
        }
        if (cur >= bits) break;
        unsigned long next = std::min(bits, 2 * cur);
        x = shift_left(x, next - cur);
        cur = next;
    }
    Integer lo = x - 4, hi = x + 4;
    Rational lo_q(lo, pow2(bits)), hi_q(hi, pow2(bits));
    lo_q.canonicalize();
    hi_q.canonicalize();
    if (lo_q >= a && hi_q <= b && poly::sign_at_dyadic(p, lo, bits) == sa &&
        poly::sign_at_dyadic(p, hi, bits) == sb)
        return {lo, hi, static_cast<int>(bits)};

    // Newton wandered; bisect the certified bracket instead.
    Integer l = floor_of(a * Rational(pow2(bits))), h = ceil_of(b * Rational(pow2(bits)));
    while (h - l > 1) {
        Integer mid = floor_div(l + h, 2);
        int s = poly::sign_at_dyadic(p, mid, bits);
        if (s == 0) return {mid, mid, static_cast<int>(bits)};
        if (s == sa) l = mid;
        else h = mid;
    }
    return {l, h, static_cast<int>(bits)};
}

} // namespace roots
} // namespace pisot
