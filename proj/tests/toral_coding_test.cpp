#include "oracles.hpp"
#include "test_support.hpp"

#include "pisot/toral_coding.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pisot;
using testing_support::field_of;

namespace {

errc error_code(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return errc::internal_inconsistency;
}

PeriodicWord word_of(const std::string& s)
{
    Word w;
    for (char c : s) w.push_back(c - '0');
    return PeriodicWord::from_word(w);
}

double frac(long double x) { return static_cast<double>(x - std::floor(x)); }

} // namespace

TEST(Companion, Examples)
{
    IntegerMatrix trib{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}};
    EXPECT_EQ(companion_matrix(field_of("x^3-x^2-x-1")), trib);
    for (long k = 1; k <= 6; ++k) {
        IntegerMatrix plus{{k, 1}, {1, 0}};
        EXPECT_EQ(companion_matrix(PisotPolynomial::from_recurrence({Integer(k), Integer(1)})), plus);
        if (k >= 3) {
            IntegerMatrix minus{{k, -1}, {1, 0}};
            EXPECT_EQ(companion_matrix(PisotPolynomial::from_recurrence({Integer(k), Integer(-1)})), minus);
        }
    }
    EXPECT_EQ(abs(companion_matrix(field_of("x^3-x-1")).determinant()), 1);
}

TEST(Companion, DeterminantAndEigenvector)
{
    for (const char* text : {"x^2-x-1", "x^2-3x+1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1", "x^3-3x^2+2x-1"}) {
        auto f = field_of(text);
        const auto& k = f.recurrence();
        long m = static_cast<long>(k.size());
        Integer expected = ((m - 1) % 2 == 0 ? 1 : -1) * k.back();
        EXPECT_EQ(companion_matrix(f).determinant(), expected) << text;
        EXPECT_TRUE(companion_eigenvector_holds(f, 128)) << text;
    }
}

TEST(EndomorphismA, QuadraticFamily)
{
    for (long k = 1; k <= 8; ++k)
        for (long s : {1L, -1L}) {
            if (s == -1 && k < 3) continue;
            auto f = PisotPolynomial::from_recurrence({Integer(k), Integer(s)});
            IntegerMatrix expected{{k, 2 * s}, {2, -k}};
            auto A = endomorphism_A(f);
            EXPECT_EQ(A, expected) << k << ' ' << s;
            EXPECT_EQ(A.determinant(), -discriminant(f));
        }
}

TEST(EndomorphismA, Cubics)
{
    auto t = field_of("x^3-x^2-x-1");
    IntegerMatrix expected{{3, 4, 1}, {1, 2, 3}, {3, -2, -1}};
    auto A = endomorphism_A(t);
    EXPECT_EQ(A, expected);
    EXPECT_EQ(A.determinant(), 44);
    EXPECT_EQ(A.determinant(), -discriminant(t));

    auto f = field_of("x^3-x-1");
    auto M = companion_matrix(f);
    auto B = M.power(2) + M.power(2) + M.power(2) + Integer(-1) * IntegerMatrix::identity(3);
    EXPECT_EQ(endomorphism_A(f), B);
    EXPECT_EQ(abs(B.determinant()), 23);
}

TEST(EndomorphismA, InverseOfGeneratorAction)
{
    // A is the companion action of 1/xi0, so A times the action of xi0 is the identity.
    for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1"}) {
        auto f = field_of(text);
        auto A = endomorphism_A(f);
        auto x = xi0(f);
        auto M = companion_matrix(f);
        RationalMatrix X(f.size(), std::vector<Rational>(f.size(), Rational(0)));
        auto P = IntegerMatrix::identity(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) {
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = 0; j < f.size(); ++j) X[i][j] += x[k] * P(i, j);
            P = P * M;
        }
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) {
                Rational s = 0;
                for (std::size_t l = 0; l < f.size(); ++l) s += A(i, l) * X[l][j];
                EXPECT_EQ(s, Rational(i == j ? 1 : 0)) << text;
            }
    }
}

TEST(Phi, Examples)
{
    auto f = field_of("x^3-x^2-x-1");
    auto map = CodingMap::phi(f);
    auto o = phi(map, BetaExpansion{}, 128);
    EXPECT_EQ(distance(o, TorusPoint::origin(3, 128)), 0);

    auto one = phi(map, BetaExpansion{{1}, {}, {}}, 128);
    long double beta = oracle::dominant({1, 1, 1});
    EXPECT_NEAR(one.coords[0].approx(), 0.0, 1e-15);
    EXPECT_NEAR(one.coords[1].approx(), frac(1 / beta), 1e-15);
    EXPECT_NEAR(one.coords[2].approx(), frac(1 / (beta * beta)), 1e-15);

    auto g = field_of("x^2-x-1");
    auto k = phi(CodingMap::phi(g), word_of("1000"), 128);
    EXPECT_EQ(distance(k, TorusPoint::origin(2, 128)), 0);
    EXPECT_LT(distance(phi_limit(CodingMap::phi(g), word_of("1000"), 128), TorusPoint::origin(2, 128)), tolerance(128));
}

TEST(Phi, RefusesInadmissible)
{
    auto g = field_of("x^2-x-1");
    auto map = CodingMap::phi(g);
    EXPECT_EQ(error_code([&] { (void)phi(map, BetaExpansion{{1, 1}, {}, {}}); }), errc::not_admissible);
    EXPECT_EQ(error_code([&] { (void)phi(map, word_of("10")); }), errc::not_admissible);
    EXPECT_EQ(error_code([&] { (void)CodingMap(testing_support::num(g, {Rational(1, 2)})); }), errc::not_in_pisot_group);
}

TEST(Phi, FiniteSequenceAgainstFloatingOracle)
{
    std::mt19937_64 rng(5);
    auto f = field_of("x^3-x^2-x-1");
    auto p = parry_sequence(f);
    long double beta = oracle::dominant({1, 1, 1});
    long double x0 = 1 / (3 * beta * beta - 2 * beta - 1);
    for (int i = 0; i < 20; ++i) {
        auto e = random_admissible_expansion(p, rng, 12, 3);
        long double x = 0;
        const long top = static_cast<long>(e.integer_part.size()) - 1;
        for (std::size_t j = 0; j < e.integer_part.size(); ++j) x += e.integer_part[j] * std::pow(beta, static_cast<long double>(top - static_cast<long>(j)));
        for (std::size_t j = 0; j < e.frac_pre.size(); ++j) x += e.frac_pre[j] * std::pow(beta, -static_cast<long double>(j + 1));
        auto t = phi(CodingMap::phi0(f), e, 128);
        for (std::size_t c = 0; c < 3; ++c) {
            double want = frac(x * x0 * std::pow(beta, -static_cast<long double>(c)));
            double got = t.coords[c].approx();
            double d = std::fabs(want - got);
            EXPECT_LT(std::min(d, 1 - d), 1e-12) << e.to_string();
        }
    }
}

TEST(Phi, ExactClosedFormMatchesLimit)
{
    std::mt19937_64 rng(9);
    for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x^2-3x+1", "x^4-x^3-1"}) {
        auto f = field_of(text);
        auto p = parry_sequence(f);
        for (auto map : {CodingMap::phi(f), CodingMap::phi0(f)})
            for (int i = 0; i < 10; ++i) {
                auto w = random_admissible_periodic(p, rng, 6);
                auto exact = phi(map, w, 128);
                auto lim = phi_limit(map, w, 128);
                EXPECT_LT(distance(exact, lim), tolerance(128)) << text << ' ' << w.to_string();
            }
    }
}

TEST(Kernel, GoldenMean)
{
    std::mt19937_64 rng(13);
    SymbolicGroup g(field_of("x^2-x-1"));
    auto r = verify_kernel(g, rng, 50);
    EXPECT_EQ(r.kernel_classes, 5u);
    EXPECT_EQ(r.classes, 5u);
    EXPECT_LT(r.max_error, tolerance(128));
    EXPECT_GT(r.non_kernel_checked, 0u);

    // 0.(100) is outside P_beta, so its image stays away from the origin.
    auto f = g.field();
    auto w = word_of("100");
    EXPECT_FALSE(is_in_pbeta(tail_value(f, w)));
    EXPECT_GE(distance_to_origin_lower(phi_limit(CodingMap::phi(f), w)), tolerance(128));
}

TEST(Kernel, Tribonacci)
{
    std::mt19937_64 rng(17);
    SymbolicGroup g(field_of("x^3-x^2-x-1"));
    auto r = verify_kernel(g, rng, 50);
    EXPECT_EQ(r.kernel_classes, 44u);
    EXPECT_GE(r.tails_checked, 46u);
}

TEST(Kernel, MembershipDecidedByTraceTest)
{
    std::mt19937_64 rng(19);
    for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^3-x-1"}) {
        auto f = field_of(text);
        auto p = parry_sequence(f);
        auto map = CodingMap::phi(f);
        for (int i = 0; i < 40; ++i) {
            auto w = random_admissible_periodic(p, rng, 8);
            bool member = is_in_pbeta(tail_value(f, w));
            auto pt = phi_limit(map, w);
            if (member) {
                EXPECT_LT(distance(pt, TorusPoint::origin(f.size(), 128)), tolerance(128)) << text << ' ' << w.to_string();
            } else {
                EXPECT_GE(distance_to_origin_lower(pt), tolerance(128)) << text << ' ' << w.to_string();
            }
        }
    }
}

TEST(Semiconjugacy, Examples)
{
    auto g = field_of("x^2-x-1");
    for (auto map : {CodingMap::phi(g), CodingMap::phi0(g)}) {
        auto z = verify_semiconjugacy(map, {BetaExpansion{}});
        EXPECT_EQ(z.max_error, 0);
        auto r = verify_semiconjugacy(map, {BetaExpansion{{1}, {}, {}}});
        EXPECT_LT(r.max_error, tolerance(128));
    }
}

TEST(Semiconjugacy, RandomWords)
{
    std::mt19937_64 rng(23);
    for (const char* text : {"x^3-x^2-x-1", "x^2-x-1", "x^3-x-1", "x^2-3x+1"}) {
        auto f = field_of(text);
        auto p = parry_sequence(f);
        std::vector<BetaExpansion> samples;
        for (int i = 0; i < 100; ++i) samples.push_back(random_admissible_expansion(p, rng, 30, 10));
        for (auto map : {CodingMap::phi(f), CodingMap::phi0(f)}) {
            auto r = verify_semiconjugacy(map, samples);
            EXPECT_EQ(r.samples, 100u);
            EXPECT_LT(r.max_error, tolerance(128)) << text;
        }
    }
}

TEST(ShiftExpansion, MultipliesByBeta)
{
    std::mt19937_64 rng(29);
    auto f = field_of("x^3-x^2-x-1");
    auto p = parry_sequence(f);
    auto b = AlgebraicNumber::beta(f);
    for (int i = 0; i < 30; ++i) {
        auto e = random_admissible_expansion(p, rng, 20, 5);
        EXPECT_EQ(evaluate_expansion(f, shift_expansion(e)), b * evaluate_expansion(f, e));
    }
    BetaExpansion periodic{{}, {}, {1, 0, 0}};
    EXPECT_EQ(evaluate_expansion(f, shift_expansion(periodic)), b * evaluate_expansion(f, periodic));
}

TEST(Factorization, Examples)
{
    std::mt19937_64 rng(31);
    for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1"}) {
        auto f = field_of(text);
        auto p = parry_sequence(f);
        EXPECT_EQ(verify_factorization(f, {BetaExpansion{}}).max_error, 0);
        std::vector<BetaExpansion> samples;
        for (int i = 0; i < 50; ++i) samples.push_back(random_admissible_expansion(p, rng, 30, 8));
        auto r = verify_factorization(f, samples);
        EXPECT_LT(r.max_error, tolerance(128)) << text;
    }
}

TEST(Preimages, FibreSizeIsDiscriminant)
{
    std::mt19937_64 rng(37);
    for (const char* text : {"x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x^2-2x-1"}) {
        auto f = field_of(text);
        auto r = sample_preimages(f, rng, 5);
        EXPECT_EQ(Integer(r.preimages_per_point), abs(discriminant(f))) << text;
        EXPECT_GT(r.min_separation, tolerance(128));
        EXPECT_LT(r.max_residual, tolerance(128));
    }
}

TEST(Preimages, PhiFibreOverOrigin)
{
    // Classes map to the origin, and there are exactly |D| of them.
    auto f = field_of("x^3-x^2-x-1");
    SymbolicGroup g(f);
    auto map = CodingMap::phi(f);
    std::size_t at_origin = 0;
    for (const auto& c : g.classes())
        if (distance(phi(map, c.canonical_tail), TorusPoint::origin(3, 128)) == 0) ++at_origin;
    EXPECT_EQ(Integer(at_origin), abs(discriminant(f)));
    // The A-preimages of the origin are the images under phi0 of the class tails.
    auto pre = a_preimages(endomorphism_A(f), TorusPoint::origin(3, 128));
    auto map0 = CodingMap::phi0(f);
    for (const auto& c : g.classes()) {
        auto q = phi(map0, c.canonical_tail);
        bool found = false;
        for (const auto& z : pre) found |= distance(z, q) < tolerance(128);
        EXPECT_TRUE(found) << c.canonical_tail.to_string();
    }
}
