#pragma once

#include "pisot/pisot.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace pisot;

inline PisotPolynomial field_of(const char* text) { return parse_polynomial(text); }

inline AlgebraicNumber num(const PisotPolynomial& f, std::vector<Rational> c)
{
    return AlgebraicNumber(f, std::move(c));
}

inline AlgebraicNumber random_element(const PisotPolynomial& f, std::mt19937_64& rng, long height, long max_den = 1)
{
    std::uniform_int_distribution<long> coeff(-height, height);
    std::uniform_int_distribution<long> den(1, max_den);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < f.size(); ++i) c.emplace_back(coeff(rng), den(rng));
    for (auto& x : c) x.canonicalize();
    return AlgebraicNumber(f, std::move(c));
}

/// x = (a_0 + ... + a_{m-1} beta^{m-1}) / q in [0,1) with |a_i| <= height, 1 <= q <= height.
inline AlgebraicNumber random_unit_fraction(const PisotPolynomial& f, std::mt19937_64& rng, long height)
{
    std::uniform_int_distribution<long> coeff(-height, height);
    std::uniform_int_distribution<long> den(1, height);
    const auto one = AlgebraicNumber::from_integer(f, 1);
    for (;;) {
        std::vector<Integer> a;
        for (std::size_t i = 0; i < f.size(); ++i) a.emplace_back(coeff(rng));
        auto x = AlgebraicNumber::from_numerators(f, a, den(rng));
        if (sign(x) >= 0 && compare(x, one) < 0) return x;
    }
}

inline std::vector<long> to_longs(const std::vector<Integer>& v)
{
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

} // namespace testing_support
