#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pisot {

using Integer = mpz_class;
using Rational = mpq_class;

/// Decimal digits of the beta-numeration alphabet.
using Digit = int;
using Word = std::vector<Digit>;

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer floor_of(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }
inline Integer ceil_of(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

/// 2^k as an Integer.
inline Integer pow2(unsigned long k)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

inline Integer shift_floor(const Integer& a, unsigned long k)
{
    Integer r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

inline Integer shift_ceil(const Integer& a, unsigned long k)
{
    Integer r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

inline Integer shift_left(const Integer& a, unsigned long k)
{
    Integer r;
    mpz_mul_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer isqrt_floor(const Integer& a)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Integer isqrt_ceil(const Integer& a)
{
    Integer r = isqrt_floor(a);
    if (r * r < a) ++r;
    return r;
}

inline std::size_t bit_length(const Integer& a)
{
    return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline bool fits_int64(const Integer& a) { return bit_length(a) <= 62; }

inline std::string to_string(const Integer& a) { return a.get_str(); }
inline std::string to_string(const Rational& a) { return a.get_str(); }

/// Hash over the low limbs and sign; collisions fall back to operator== in containers.
struct IntegerVectorHash {
    std::size_t operator()(const std::vector<Integer>& v) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& x : v) {
            const auto* z = x.get_mpz_t();
            std::size_t limb = z->_mp_size == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z, 0));
            limb ^= static_cast<std::size_t>(z->_mp_size) * 0x100000001b3ull;
            h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace pisot
