// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include "oracles.hpp"
#include "test_support.hpp"

#include "pisot/io.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace pisot;
using testing_support::field_of;
using testing_support::num;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> failures;
    std::string summary;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

PeriodicWord word_of(const std::string& s)
{
    Word w;
    for (char c : s) w.push_back(c - '0');
    return PeriodicWord::from_word(w);
}

std::string str(const Integer& a) { return a.get_str(); }

std::string join(const std::vector<Integer>& v)
{
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
    return s;
}

// ---------------------------------------------------------------------------

void discriminants(Check& c)
{
    struct Case {
        const char* poly;
        long D;
        IntegerMatrix M;
    };
    const std::vector<Case> cases{{"x^2-x-1", 5, {{2, 1}, {1, 3}}},
                                  {"x^3-x^2-x-1", -44, {{3, 1, 3}, {1, 3, 7}, {3, 7, 11}}},
                                  {"x^3-x-1", -23, {{3, 0, 2}, {0, 2, 3}, {2, 3, 2}}}};
    for (const auto& k : cases) {
        auto s = group_structure(field_of(k.poly));
        c.require(s.D == k.D, std::string(k.poly) + " D = " + str(s.D));
        c.require(s.M_beta == k.M, std::string(k.poly) + " M_beta differs");
#ifdef PISOTLAB_BIN
        std::string cmd = std::string(PISOTLAB_BIN) + " analyze --format json --poly '" + k.poly + "'";
        FILE* p = popen(cmd.c_str(), "r");
        std::string out;
        std::array<char, 4096> buf{};
        while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
        int status = pclose(p);
        c.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("pisotlab analyze failed for ") + k.poly);
        auto j = io::json::parse(out);
        c.require(j["D"] == std::to_string(k.D), std::string("pisotlab D for ") + k.poly);
        c.require(j["M_beta"] == io::to_json(k.M), std::string("pisotlab M_beta for ") + k.poly);
#endif
    }
    c.summary = "D = 5, -44, -23 and trace matrices match, library and CLI";
}

void group_structures(Check& c)
{
    auto factors = [](const char* p) { return group_structure(field_of(p)).nontrivial_factors(); };
    c.require(factors("x^3-x-1") == std::vector<Integer>{23}, "x^3-x-1 factors " + join(factors("x^3-x-1")));
    c.require(factors("x^3-x^2-x-1") == std::vector<Integer>{2, 22}, "tribonacci factors " + join(factors("x^3-x^2-x-1")));
    std::size_t n = 0;
    for (long k = 1; k <= 12; ++k)
        for (long sgn : {1L, -1L}) {
            if (sgn == -1 && k < 3) continue;
            auto f = PisotPolynomial::from_recurrence({Integer(k), Integer(sgn)});
            auto s = group_structure(f);
            const Integer D = k * k + 4 * sgn;
            c.require(s.D == D, "D for k=" + std::to_string(k));
            std::vector<Integer> expected = k % 2 ? std::vector<Integer>{D} : std::vector<Integer>{2, D / 2};
            c.require(s.nontrivial_factors() == expected,
                      "k=" + std::to_string(k) + (sgn > 0 ? " +1" : " -1") + " factors " + join(s.nontrivial_factors()));
            ++n;
        }
    c.summary = "Z/23, Z/22 x Z/2 and " + std::to_string(n) + " quadratics k <= 12";
}

void xi0_identities(Check& c)
{
    std::size_t n = 0;
    for (const char* p : {"x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1", "x^3-3x^2+2x-1", "x^4-x^3-x^2-x-1",
                          "x^5-x^4-x^3-x^2-x-1", "x^5-2x^4-x^3-x^2-x-1", "x^2-7x+1"}) {
        auto f = field_of(p);
        auto x = xi0(f);
        c.require(x * derivative_at_beta(f) == AlgebraicNumber::from_integer(f, 1), std::string(p) + " xi0 g'(beta) != 1");
        c.require(!is_in_zbeta(x), std::string(p) + " xi0 in Z[beta]");
        ++n;
    }
    auto t = field_of("x^3-x^2-x-1");
    c.require(xi0(t) == num(t, {Rational(1, 22), Rational(9, 22), Rational(-4, 22)}), "tribonacci xi0 != (1+9b-4b^2)/22");
    c.summary = "xi0 g'(beta) = 1 on " + std::to_string(n) + " fields; tribonacci xi0 = (1+9b-4b^2)/22";
}

std::set<PeriodicWord> all_tails(const SymbolicGroup& g)
{
    std::set<PeriodicWord> out;
    for (const auto& cl : g.classes()) out.insert(cl.tails.begin(), cl.tails.end());
    return out;
}

void symbolic_enumeration(Check& c)
{
    SymbolicGroup golden(field_of("x^2-x-1"));
    std::set<PeriodicWord> want;
    for (const char* s : {"0000", "1000", "0100", "0010", "0001"}) want.insert(word_of(s));
    c.require(golden.size() == 5 && all_tails(golden) == want, "golden mean classes");

    SymbolicGroup silver(field_of("x^2-2x-1"));
    want.clear();
    for (const char* s : {"0000", "1010", "0101", "2000", "0200", "0020", "0002", "1111"}) want.insert(word_of(s));
    c.require(silver.size() == 8 && all_tails(silver) == want, "silver mean classes");
    for (const auto& cl : silver.classes()) {
        std::string w = cl.canonical_tail.to_string();
        Integer order = cl.is_zero() ? 1 : (w == "10" || w == "01" || w == "1") ? 2 : 4;
        c.require(cl.order == order, "silver order of " + w);
    }

    SymbolicGroup trib(field_of("x^3-x^2-x-1"));
    std::set<Word> necklaces, expected;
    for (const char* s : {"1000110000", "1010000110", "1001011000", "1001101100"}) expected.insert(word_of(s).canonical);
    std::size_t p10 = 0, p3 = 0, zero = 0;
    std::set<PeriodicWord> p2;
    for (const auto& cl : trib.classes()) {
        const auto& w = cl.canonical_tail;
        if (w.is_zero()) {
            ++zero;
        } else if (w.period() == 10) {
            ++p10;
            necklaces.insert(w.canonical);
        } else if (w.period() == 2) {
            p2.insert(w);
        } else if (w.period() == 3) {
            ++p3;
            c.require(cl.tails == std::set<PeriodicWord>{word_of("100"), word_of("010"), word_of("001")}, "period-3 class holds all shifts of 100");
        } else {
            c.require(false, "tribonacci tail of period " + std::to_string(w.period()));
        }
    }
    c.require(trib.size() == 44, "tribonacci has " + std::to_string(trib.size()) + " classes");
    c.require(p10 == 40 && necklaces == expected, "tribonacci period-10 classes");
    c.require(p2 == std::set<PeriodicWord>{word_of("01"), word_of("10")}, "tribonacci period-2 classes");
    c.require(p3 == 1 && zero == 1, "tribonacci period-3 and zero classes");
    c.summary = "golden 5, silver 8, tribonacci 44 = 40 (4 necklaces) + 2 + 1 + zero";
}

void prime_discriminant(Check& c)
{
    // The word is pinned by a floating greedy run on xi0, independent of the exact orbit code.
    const std::string pinned = "0000010000100000000100";
    const std::string printed = "10000100000000100000000";

    const long double beta = oracle::dominant({0, 1, 1});
    const long double x = 1 / (3 * beta * beta - 1);
    auto digits = oracle::greedy_digits(x, beta, 100);
    const std::size_t from = 30, p = pinned.size();
    bool periodic = true;
    for (std::size_t n = from; n + p < digits.size(); ++n) periodic &= digits[n] == digits[n + p];
    c.require(periodic, "floating oracle digits of xi0 are not 22-periodic");
    Word window(digits.begin() + from, digits.begin() + static_cast<long>(from + p));
    c.require(PeriodicWord::from_word(window).canonical == word_of(pinned).canonical, "oracle word differs from the pinned word");

    SymbolicGroup g(field_of("x^3-x-1"));
    std::set<PeriodicWord> nonzero;
    for (const auto& cl : g.classes()) {
        if (cl.is_zero()) continue;
        nonzero.insert(cl.canonical_tail);
        c.require(cl.canonical_tail.canonical == word_of(pinned).canonical, "class tail is not a shift of the pinned word");
    }
    c.require(nonzero.size() == 22, "x^3-x-1 has " + std::to_string(nonzero.size()) + " nonzero classes");
    c.require(tail_of_coset(xi0(g.field())).canonical == word_of(pinned).canonical, "xi0 tail differs");

    auto printed_word = word_of(printed);
    bool printed_found = false;
    for (const auto& w : nonzero) printed_found |= w.canonical == printed_word.canonical;
    std::size_t ones_printed = std::count(printed.begin(), printed.end(), '1');
    c.summary = "22 shifts of " + pinned + " (period 22); printed " + std::to_string(printed.size()) + "-symbol word " +
                printed + " has " + std::to_string(ones_printed) + " ones and is " + (printed_found ? "" : "not ") +
                "a class tail";
}

void coding_layer(Check& c)
{
    for (long k = 1; k <= 12; ++k)
        for (long sgn : {1L, -1L}) {
            if (sgn == -1 && k < 3) continue;
            auto f = PisotPolynomial::from_recurrence({Integer(k), Integer(sgn)});
            auto A = endomorphism_A(f);
            c.require(A == IntegerMatrix{{k, 2 * sgn}, {2, -k}}, "quadratic A for k=" + std::to_string(k));
            c.require(A.determinant() == -discriminant(f), "quadratic det A for k=" + std::to_string(k));
        }
    auto t = field_of("x^3-x^2-x-1");
    c.require(endomorphism_A(t) == IntegerMatrix{{3, 4, 1}, {1, 2, 3}, {3, -2, -1}}, "tribonacci A");
    c.require(endomorphism_A(t).determinant() == 44, "tribonacci det A");

    // Random finitary Pisot units of degree <= 5: descending recurrences and Akiyama cubics.
    std::mt19937_64 rng(2024);
    std::set<std::vector<Integer>> seen;
    std::size_t tested = 0, attempts = 0;
    while (tested < 20 && attempts++ < 10000) {
        std::vector<Integer> k;
        if (rng() % 3 == 0) {
            long k1 = static_cast<long>(rng() % 6);
            long k2 = -1 + static_cast<long>(rng() % static_cast<unsigned long>(k1 + 3));
            k = {Integer(k1), Integer(k2), Integer(1)};
        } else {
            std::size_t m = 2 + rng() % 4;
            std::vector<long> d(m);
            d[m - 1] = 1;
            for (std::size_t i = m - 1; i-- > 0;) d[i] = d[i + 1] + static_cast<long>(rng() % 3);
            for (long v : d) k.emplace_back(v);
        }
        if (!seen.insert(k).second) continue;
        try {
            auto f = PisotPolynomial::from_recurrence(k);
            if (finitary_classify(f).verdict != FinitaryVerdict::proven_finitary) continue;
            auto A = endomorphism_A(f);
            c.require(abs(A.determinant()) == abs(discriminant(f)), "|det A| != |D| for " + f.to_string());
            ++tested;
        } catch (const error& e) {
            if (e.code() == errc::determinant_mismatch) c.require(false, e.what());
        }
    }
    c.require(tested == 20, "only " + std::to_string(tested) + " random finitary units");
    c.summary = "quadratics k <= 12, tribonacci det 44, |det A| = |D| on " + std::to_string(tested) + " random finitary units";
}

void kernel(Check& c)
{
    std::mt19937_64 rng(7);
    const Rational tol(1, pow2(64));
    std::string counts;
    for (const char* p : {"x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1", "x^2-3x-1"}) {
        SymbolicGroup g(field_of(p));
        const auto& f = g.field();
        auto r = verify_kernel(g, rng, 100, 128);
        c.require(r.max_error < tol, std::string(p) + " kernel error above 2^-64");
        std::size_t at_origin = 0;
        const auto map = CodingMap::phi(f);
        for (const auto& cl : g.classes()) {
            bool zero = is_in_pbeta(tail_value(f, cl.canonical_tail)) &&
                        distance(phi_limit(map, cl.canonical_tail, 128), TorusPoint::origin(f.size(), 128)) < tol;
            at_origin += zero;
        }
        c.require(Integer(at_origin) == abs(discriminant(f)), std::string(p) + " kernel cardinality");
        counts += (counts.empty() ? "" : ", ") + std::to_string(at_origin);
    }
    c.summary = "kernel cardinalities " + counts + " = |D|, errors below 2^-64 at 128 bits";
}

void semiconjugacy(Check& c)
{
    std::mt19937_64 rng(11);
    const Rational tol(1, pow2(64));
    Rational worst = 0;
    std::size_t polys = 0;
    for (const char* p : {"x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1", "x^2-3x+1", "x^3-3x^2+2x-1"}) {
        auto f = field_of(p);
        auto par = parry_sequence(f);
        std::vector<BetaExpansion> samples;
        for (int i = 0; i < 100; ++i) samples.push_back(random_admissible_expansion(par, rng, 30, 10));
        for (const auto& map : {CodingMap::phi0(f), CodingMap::phi(f)}) {
            auto r = verify_semiconjugacy(map, samples, 128);
            c.require(r.samples >= 100 && r.max_error < tol, std::string(p) + " semiconjugacy");
            worst = std::max(worst, r.max_error);
        }
        auto r = verify_factorization(f, samples, 128);
        c.require(r.samples >= 100 && r.max_error < tol, std::string(p) + " factorization");
        worst = std::max(worst, r.max_error);
        ++polys;
    }
    std::ostringstream os;
    os << "100 samples on " << polys << " fields, worst error " << std::setprecision(3) << worst.get_d();
    c.summary = os.str();
}

void numeration(Check& c)
{
    std::mt19937_64 rng(13);
    std::size_t total = 0;
    for (const char* p : {"x^2-x-1", "x^2-2x-1", "x^3-x^2-x-1", "x^3-x-1", "x^4-x^3-1"}) {
        auto f = field_of(p);
        auto par = parry_sequence(f);
        for (int i = 0; i < 1000; ++i) {
            auto x = testing_support::random_unit_fraction(f, rng, 30);
            auto e = greedy_expand(x);
            c.require(evaluate_expansion(f, e) == x, std::string(p) + " round trip " + x.to_string());
            c.require(is_admissible(par, e), std::string(p) + " admissibility " + e.to_string());
            ++total;
        }
    }

    auto g = field_of("x^2-x-1");
    Integer a = 1, b = 2;
    for (long k = 1; k <= 30; ++k) {
        auto e = expand_positive(num(g, {Rational(a)}));
        std::vector<long> expected;
        const long last = k % 2 == 0 ? -k + 3 : -k + 1;
        for (long x = k - 1; x >= last; x -= 4) expected.push_back(x);
        if (k % 2 == 0) expected.push_back(-k);
        std::vector<long> got;
        const long top = static_cast<long>(e.integer_part.size()) - 1;
        for (std::size_t i = 0; i < e.integer_part.size(); ++i)
            if (e.integer_part[i]) got.push_back(top - static_cast<long>(i));
        for (std::size_t i = 0; i < e.frac_pre.size(); ++i)
            if (e.frac_pre[i]) got.push_back(-static_cast<long>(i) - 1);
        c.require(e.finite() && got == expected, "Fibonacci F_" + std::to_string(k));
        Integer s = a + b;
        a = b;
        b = s;
    }

    auto h = field_of("x^4-x^3-1");
    auto x = AlgebraicNumber::beta_power(h, -2) + AlgebraicNumber::beta_power(h, -3);
    auto e = greedy_expand(x);
    auto s = e.stream();
    std::string first;
    for (std::size_t i = 0; i < 20; ++i) first += char('0' + s.at(i));
    c.require(first == "10000100001000010000", "x^4=x^3+1 expansion starts " + first);
    c.require(e.frac_pre.empty() && e.frac_period == Word{1, 0, 0, 0, 0}, "x^4=x^3+1 expansion " + e.to_string());
    c.summary = std::to_string(total) + " round trips admissible; F_1..F_30 closed forms; b^-2+b^-3 = 0.(10000)";
}

void finitary(Check& c)
{
    for (const char* p : {"x^3-x^2-x-1", "x^3-x-1"})
        c.require(finitary_classify(field_of(p)).verdict == FinitaryVerdict::proven_finitary, std::string(p) + " not proven finitary");
    auto not_finitary = [&](const PisotPolynomial& f) {
        auto r = finitary_classify(f);
        bool ok = r.verdict == FinitaryVerdict::proven_not_finitary && r.witness && r.witness_expansion &&
                  is_in_zbeta(*r.witness) && !r.witness_expansion->finite() &&
                  evaluate_expansion(f, *r.witness_expansion) == *r.witness;
        c.require(ok, f.to_string() + " lacks a verified witness");
    };
    not_finitary(field_of("x^3-3x^2+2x-1"));
    for (long k = 3; k <= 5; ++k) not_finitary(PisotPolynomial::from_recurrence({Integer(k), Integer(-1)}));

    // Descending recurrences with unit constant term; the bounded search must agree with the criterion.
    std::size_t family = 0;
    std::function<void(std::vector<Integer>)> walk = [&](std::vector<Integer> k) {
        if (k.size() >= 2 && k.back() == 1) {
            auto f = PisotPolynomial::from_recurrence(k);
            c.require(finitary_classify(f).verdict == FinitaryVerdict::proven_finitary, f.to_string() + " not proven finitary");
            std::size_t checked = 0;
            c.require(!detail::search_counterexample(f, k.size() <= 3 ? 3 : 2, default_step_cap, checked), f.to_string() + " search found a witness");
            ++family;
        }
        if (k.size() == 4) return;
        for (long v = 1; v <= (k.empty() ? 3 : k.back().get_si()); ++v) {
            auto next = k;
            next.emplace_back(v);
            walk(next);
        }
    };
    walk({});
    c.summary = "tribonacci, x^3-x-1 finitary; 4 witnesses verified; " + std::to_string(family) + " descending units finitary";
}

void homomorphism(Check& c)
{
    std::size_t checks = 0;
    std::string fields;
    for (const char* p : {"x^2-x-1", "x^2-2x-1", "x^2-3x-1", "x^2-4x-1", "x^2-5x-1", "x^2-6x-1", "x^3-x^2-x-1", "x^3-x-1",
                          "x^3-2x^2-1", "x^3-2x^2-x-1"}) {
        auto f = field_of(p);
        if (abs(discriminant(f)) > 50) continue;
        SymbolicGroup g(f);
        for (const auto& a : g.classes())
            for (const auto& b : g.classes()) {
                const auto& s = g.add(a, b);
                c.require(s.index == g.group().index_of(a.rep + b.rep), std::string(p) + " class_add mismatch");
                ++checks;
            }
        fields += (fields.empty() ? "" : ", ") + std::to_string(g.size());
    }
    c.summary = std::to_string(checks) + " sums agree with coset addition (|D| = " + fields + ")";
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
        {"discriminants", discriminants},
        {"group structure", group_structures},
        {"xi0 identities", xi0_identities},
        {"symbolic group enumeration", symbolic_enumeration},
        {"prime discriminant x^3-x-1", prime_discriminant},
        {"coding layer", coding_layer},
        {"kernel", kernel},
        {"semiconjugacy and factorization", semiconjugacy},
        {"numeration properties", numeration},
        {"finitary classification", finitary},
        {"homomorphism table", homomorphism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %-32s %6.1fs  %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, c.summary.c_str());
        for (std::size_t k = 0; k < c.failures.size() && k < 10; ++k) std::printf("        - %s\n", c.failures[k].c_str());
        std::fflush(stdout);
        failed += !c.ok;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
