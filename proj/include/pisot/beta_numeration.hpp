#pragma once

#include "pisot/algebraic_number.hpp"

#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace pisot {

inline constexpr std::size_t default_step_cap = 1000000;
inline constexpr long default_height = 10;

/// Eventually periodic one-sided digit sequence pre (period)^infinity.
/// An empty period stands for a zero tail.
struct DigitSequence {
    Word pre;
    Word period;

    Digit at(std::size_t i) const
    {
        if (i < pre.size()) return pre[i];
        if (period.empty()) return 0;
        return period[(i - pre.size()) % period.size()];
    }

    std::size_t tail_period() const { return period.empty() ? 1 : period.size(); }
};

/// Expansion of 1: greedy digits d' and the quasi-greedy sequence d.
struct ParrySequence {
    /// Greedy digits of 1; when `finite`, `greedy.pre` holds d'_1..d'_k and the period is empty.
    DigitSequence greedy;
    bool finite = false;
    /// d, the sequence every admissible suffix must stay strictly below.
    DigitSequence quasi;

    Digit max_digit() const { return quasi.at(0); }
};

/// x = sum int_part[i] beta^{N-1-i} + sum frac_pre[k] beta^{-k-1} + periodic tail.
struct BetaExpansion {
    Word integer_part;
    Word frac_pre;
    Word frac_period;

    bool finite() const { return frac_period.empty(); }
    bool empty() const { return integer_part.empty() && frac_pre.empty() && frac_period.empty(); }

    /// Full one-sided digit stream starting at the most significant integer digit.
    DigitSequence stream() const
    {
        DigitSequence s;
        s.pre = integer_part;
        s.pre.insert(s.pre.end(), frac_pre.begin(), frac_pre.end());
        s.period = frac_period;
        return s;
    }

    /// "10.01" for finite, "0.0(1000)" with the period in parentheses.
    std::string to_string() const
    {
        std::string s;
        for (Digit d : integer_part) s += digit_text(d);
        if (integer_part.empty()) s += "0";
        if (frac_pre.empty() && frac_period.empty()) return s;
        s += ".";
        for (Digit d : frac_pre) s += digit_text(d);
        if (!frac_period.empty()) {
            s += "(";
            for (Digit d : frac_period) s += digit_text(d);
            s += ")";
        }
        return s;
    }

    friend bool operator==(const BetaExpansion&, const BetaExpansion&) = default;

private:
    static std::string digit_text(Digit d) { return d < 10 ? std::string(1, static_cast<char>('0' + d)) : "[" + std::to_string(d) + "]"; }
};

namespace detail {

/// Greedy orbit of x = (sum num_i beta^i)/den under y -> beta y - floor(beta y).
struct Orbit {
    Word digits;
    std::size_t preperiod = 0;
    /// Zero when the orbit reached 0 (finite expansion).
    std::size_t period = 0;
};

/// Multiplies the numerator vector by beta in place.
inline void times_beta(std::vector<Integer>& c, const std::vector<Integer>& k)
{
    const std::size_t m = c.size();
    Integer top = c[m - 1];
    for (std::size_t i = m - 1; i > 0; --i) c[i] = c[i - 1] + k[m - 1 - i] * top;
    c[0] = k[m - 1] * top;
}

inline bool all_zero(const std::vector<Integer>& c)
{
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

inline Orbit greedy_orbit(const PisotPolynomial& f, std::vector<Integer> c, const Integer& den, std::size_t max_steps,
                          errc on_cap)
{
    const auto& k = f.recurrence();
    std::unordered_map<std::vector<Integer>, std::size_t, IntegerVectorHash> seen;
    Orbit o;
    for (;;) {
        if (all_zero(c)) return o;
        auto [it, inserted] = seen.emplace(c, o.digits.size());
        if (!inserted) {
            o.preperiod = it->second;
            o.period = o.digits.size() - it->second;
            return o;
        }
        if (o.digits.size() >= max_steps)
            fail(on_cap, "no period found within " + std::to_string(max_steps) + " steps");
        times_beta(c, k);
        Integer d = detail::floor_scaled(f, c, den);
        c[0] -= d * den;
        o.digits.push_back(static_cast<Digit>(d.get_si()));
    }
}

inline Word rotate_left(const Word& w, std::size_t r)
{
    if (w.empty()) return w;
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[(i + r) % w.size()];
    return out;
}

/// Lexicographic comparison of eventually periodic sequences: -1, 0, 1.
inline int compare_sequences(const DigitSequence& a, std::size_t a_shift, const DigitSequence& b)
{
    const std::size_t pre_a = a.pre.size() > a_shift ? a.pre.size() - a_shift : 0;
    const std::size_t horizon = std::max(pre_a, b.pre.size()) + std::lcm(a.tail_period(), b.tail_period());
    for (std::size_t i = 0; i < horizon; ++i) {
        Digit x = a.at(a_shift + i), y = b.at(i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

} // namespace detail

/// Greedy expansion of 1 with the quasi-greedy adjustment when it is finite.
inline ParrySequence parry_sequence(const PisotPolynomial& f, std::size_t max_len = default_step_cap)
{
    std::vector<Integer> one(f.size(), Integer(0));
    one[0] = 1;
    auto o = detail::greedy_orbit(f, one, 1, max_len, errc::max_len_exceeded);
    ParrySequence p;
    if (o.period == 0) {
        p.finite = true;
        p.greedy.pre = o.digits;
        p.quasi.period = o.digits;
        p.quasi.period.back() -= 1;
    } else {
        p.greedy.pre.assign(o.digits.begin(), o.digits.begin() + static_cast<long>(o.preperiod));
        p.greedy.period.assign(o.digits.begin() + static_cast<long>(o.preperiod), o.digits.end());
        p.quasi = p.greedy;
    }
    return p;
}

namespace detail {

inline void check_digits(const ParrySequence& p, const Word& w)
{
    for (Digit d : w)
        if (d < 0 || d > p.max_digit())
            fail(errc::digit_out_of_range, "digit " + std::to_string(d) + " outside 0.." + std::to_string(p.max_digit()));
}

} // namespace detail

/// Every suffix of the eventually periodic sequence lies strictly below d.
inline bool is_admissible(const ParrySequence& p, const DigitSequence& s)
{
    detail::check_digits(p, s.pre);
    detail::check_digits(p, s.period);
    const std::size_t starts = s.pre.size() + s.tail_period();
    for (std::size_t n = 0; n < starts; ++n)
        if (detail::compare_sequences(s, n, p.quasi) >= 0) return false;
    return true;
}

/// Finite word followed by zeros.
inline bool is_admissible(const ParrySequence& p, const Word& w) { return is_admissible(p, DigitSequence{w, {}}); }

/// The bi-infinite repetition of w lies in the two-sided compactum.
inline bool is_admissible_periodic(const ParrySequence& p, const Word& w)
{
    if (w.empty()) return true;
    return is_admissible(p, DigitSequence{{}, w});
}

inline bool is_admissible(const ParrySequence& p, const BetaExpansion& e) { return is_admissible(p, e.stream()); }

/// Greedy expansion of x in [0,1).
inline BetaExpansion greedy_expand(const AlgebraicNumber& x, std::size_t max_steps = default_step_cap)
{
    if (sign(x) < 0 || compare(x, AlgebraicNumber::from_integer(x.field(), 1)) >= 0)
        fail(errc::out_of_range, x.to_string() + " is not in [0,1)");
    auto o = detail::greedy_orbit(x.field(), x.numerators(), x.denominator(), max_steps, errc::max_steps_exceeded);
    BetaExpansion e;
    if (o.period == 0) {
        e.frac_pre = o.digits;
    } else {
        e.frac_pre.assign(o.digits.begin(), o.digits.begin() + static_cast<long>(o.preperiod));
        e.frac_period.assign(o.digits.begin() + static_cast<long>(o.preperiod), o.digits.end());
    }
    return e;
}

/// Expansion of x >= 0 with integer-part digits, most significant first.
inline BetaExpansion expand_positive(const AlgebraicNumber& x, std::size_t max_steps = default_step_cap)
{
    const auto& f = x.field();
    int s = sign(x);
    if (s < 0) fail(errc::out_of_range, x.to_string() + " is negative");
    if (s == 0) return {};
    const AlgebraicNumber one = AlgebraicNumber::from_integer(f, 1);
    const AlgebraicNumber binv = AlgebraicNumber::beta_inverse(f);
    std::size_t N = 0;
    AlgebraicNumber y = x;
    while (compare(y, one) >= 0) {
        y = y * binv;
        ++N;
    }
    BetaExpansion g = greedy_expand(y, max_steps);
    BetaExpansion e;
    const std::size_t P = g.frac_pre.size();
    if (N <= P) {
        e.integer_part.assign(g.frac_pre.begin(), g.frac_pre.begin() + static_cast<long>(N));
        e.frac_pre.assign(g.frac_pre.begin() + static_cast<long>(N), g.frac_pre.end());
        e.frac_period = g.frac_period;
    } else if (g.finite()) {
        e.integer_part = g.frac_pre;
        e.integer_part.resize(N, 0);
    } else {
        DigitSequence st = g.stream();
        for (std::size_t i = 0; i < N; ++i) e.integer_part.push_back(st.at(i));
        e.frac_period = detail::rotate_left(g.frac_period, (N - P) % g.frac_period.size());
    }
    return e;
}

/// (sum w_j beta^{-j}) / (1 - beta^{-p}): value of the purely periodic fraction 0.(w).
inline AlgebraicNumber periodic_value(const PisotPolynomial& f, const Word& w)
{
    if (w.empty()) return AlgebraicNumber::from_integer(f, 0);
    const AlgebraicNumber binv = AlgebraicNumber::beta_inverse(f);
    AlgebraicNumber head = AlgebraicNumber::from_integer(f, 0);
    AlgebraicNumber pw = AlgebraicNumber::from_integer(f, 1);
    for (Digit d : w) {
        pw = pw * binv;
        if (d != 0) head = head + pw * Rational(d);
    }
    return head / (AlgebraicNumber::from_integer(f, 1) - pw);
}

/// Exact value of an expansion.
inline AlgebraicNumber evaluate_expansion(const PisotPolynomial& f, const BetaExpansion& e)
{
    const AlgebraicNumber b = AlgebraicNumber::beta(f);
    const AlgebraicNumber binv = AlgebraicNumber::beta_inverse(f);
    AlgebraicNumber v = AlgebraicNumber::from_integer(f, 0);
    for (Digit d : e.integer_part) v = v * b + Rational(d);
    AlgebraicNumber pw = AlgebraicNumber::from_integer(f, 1);
    for (Digit d : e.frac_pre) {
        pw = pw * binv;
        if (d != 0) v = v + pw * Rational(d);
    }
    if (!e.frac_period.empty()) v = v + pw * periodic_value(f, e.frac_period);
    return v;
}

inline BetaExpansion add_expansions(const PisotPolynomial& f, const BetaExpansion& a, const BetaExpansion& b,
                                    std::size_t max_steps = default_step_cap)
{
    return expand_positive(evaluate_expansion(f, a) + evaluate_expansion(f, b), max_steps);
}

inline BetaExpansion sub_expansions(const PisotPolynomial& f, const BetaExpansion& a, const BetaExpansion& b,
                                    std::size_t max_steps = default_step_cap)
{
    AlgebraicNumber diff = evaluate_expansion(f, a) - evaluate_expansion(f, b);
    if (sign(diff) < 0) fail(errc::negative_difference, "difference of the expansions is negative");
    return expand_positive(diff, max_steps);
}

/// Element of Z[beta] in [0,1) with coefficients c_1..c_{m-1} given; c_0 is forced.
inline AlgebraicNumber unit_interval_element(const PisotPolynomial& f, const std::vector<Integer>& upper)
{
    std::vector<Integer> c(f.size(), Integer(0));
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = upper[i - 1];
    Integer fl = detail::floor_scaled(f, c, 1);
    c[0] = -fl;
    return AlgebraicNumber::from_numerators(f, c, 1);
}

enum class FinitaryVerdict { proven_finitary, proven_not_finitary, no_counterexample };

inline std::string to_string(FinitaryVerdict v)
{
    switch (v) {
    case FinitaryVerdict::proven_finitary: return "ProvenFinitary";
    case FinitaryVerdict::proven_not_finitary: return "ProvenNotFinitary";
    case FinitaryVerdict::no_counterexample: return "NoCounterexampleUpTo";
    }
    return "?";
}

struct FinitaryReport {
    FinitaryVerdict verdict = FinitaryVerdict::no_counterexample;
    std::string criterion;
    /// Element of Z[beta] in [0,1) with an infinite expansion.
    std::optional<AlgebraicNumber> witness;
    std::optional<BetaExpansion> witness_expansion;
    long height = 0;
    std::size_t checked = 0;
};

namespace detail {

/// First x in Z[beta] n [0,1) of height <= H with an infinite expansion, by height shells.
inline std::optional<std::pair<AlgebraicNumber, BetaExpansion>> search_counterexample(const PisotPolynomial& f, long H,
                                                                                      std::size_t step_cap,
                                                                                      std::size_t& checked)
{
    const std::size_t free = f.size() - 1;
    for (long h = 0; h <= H; ++h) {
        std::vector<long> c(free, -h);
        for (;;) {
            long top = 0;
            for (long x : c) top = std::max(top, std::labs(x));
            if (top == h) {
                std::vector<Integer> upper(c.begin(), c.end());
                AlgebraicNumber x = unit_interval_element(f, upper);
                if (abs(x[0]) <= H) {
                    ++checked;
                    auto o = greedy_orbit(f, x.numerators(), 1, step_cap, errc::step_cap_exceeded);
                    if (o.period != 0) return std::make_pair(x, greedy_expand(x, step_cap));
                }
            }
            std::size_t i = free;
            while (i > 0 && c[i - 1] == h) c[--i] = -h;
            if (i == 0) break;
            ++c[i - 1];
        }
    }
    return std::nullopt;
}

inline bool descending(const std::vector<Integer>& k)
{
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] < k[i + 1]) return false;
    return k.back() >= 1;
}

} // namespace detail

/// Decides Fin(beta) = Z[beta] n [0,1) by the known criteria, else by bounded search.
inline FinitaryReport finitary_classify(const PisotPolynomial& f, long H = default_height,
                                        std::size_t step_cap = default_step_cap)
{
    const auto& k = f.recurrence();
    FinitaryReport r;
    r.height = H;
    auto attach_witness = [&](const std::string& criterion) {
        r.verdict = FinitaryVerdict::proven_not_finitary;
        r.criterion = criterion;
        if (auto w = detail::search_counterexample(f, H, step_cap, r.checked)) {
            r.witness = w->first;
            r.witness_expansion = w->second;
        }
        return r;
    };
    if (detail::descending(k)) {
        r.verdict = FinitaryVerdict::proven_finitary;
        r.criterion = "descending coefficients k1 >= ... >= km >= 1";
        return r;
    }
    if (k.size() == 2) {
        if (k[1] == 1) {
            r.verdict = FinitaryVerdict::proven_finitary;
            r.criterion = "quadratic with beta^2 = k beta + 1";
            return r;
        }
        // beta^2 = k beta - 1: 1 - beta^{-1} = beta - k + 1 = (k-2) beta^{-1} + (k-2) beta^{-2} + ...
        r.verdict = FinitaryVerdict::proven_not_finitary;
        r.criterion = "quadratic with beta^2 = k beta - 1";
        AlgebraicNumber w = AlgebraicNumber::beta(f) - Rational(k[0] - 1);
        auto e = greedy_expand(w, step_cap);
        if (e.finite()) fail(errc::internal_inconsistency, "quadratic witness has a finite expansion");
        r.witness = w;
        r.witness_expansion = e;
        return r;
    }
    if (k.size() == 3) {
        if (k[2] != 1) return attach_witness("cubic with k3 = -1");
        if (k[0] >= 0 && k[1] >= -1 && k[1] <= k[0] + 1) {
            r.verdict = FinitaryVerdict::proven_finitary;
            r.criterion = "cubic with k3 = 1, k1 >= 0 and -1 <= k2 <= k1 + 1";
            return r;
        }
        return attach_witness("cubic with k3 = 1 outside -1 <= k2 <= k1 + 1, k1 >= 0");
    }
    if (auto w = detail::search_counterexample(f, H, step_cap, r.checked)) {
        r.verdict = FinitaryVerdict::proven_not_finitary;
        r.criterion = "counterexample found by search";
        r.witness = w->first;
        r.witness_expansion = w->second;
        return r;
    }
    r.verdict = FinitaryVerdict::no_counterexample;
    r.criterion = "no infinite expansion in Z[beta] n [0,1) up to height " + std::to_string(H);
    return r;
}

/// Random element of Z[beta] n [0,1) with |c_i| <= H for i >= 1.
template <typename Rng>
AlgebraicNumber random_unit_interval_element(const PisotPolynomial& f, Rng& rng, long H)
{
    std::uniform_int_distribution<long> coeff(-H, H);
    std::vector<Integer> upper;
    for (std::size_t i = 1; i < f.size(); ++i) upper.emplace_back(coeff(rng));
    return unit_interval_element(f, upper);
}

/// Largest observed overshoot of x + y beyond the longest of the two finite expansions.
template <typename Rng>
std::size_t measure_carry_bound(const PisotPolynomial& f, std::size_t samples, long H, Rng& rng,
                                std::size_t max_steps = default_step_cap)
{
    std::size_t L = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        AlgebraicNumber x = random_unit_interval_element(f, rng, H);
        AlgebraicNumber y = random_unit_interval_element(f, rng, H);
        auto ex = greedy_expand(x, max_steps), ey = greedy_expand(y, max_steps);
        auto es = expand_positive(x + y, max_steps);
        if (!ex.finite() || !ey.finite() || !es.finite())
            fail(errc::not_finitary, "infinite expansion met while measuring the carry bound");
        std::size_t k = std::max(ex.frac_pre.size(), ey.frac_pre.size());
        if (es.frac_pre.size() > k) L = std::max(L, es.frac_pre.size() - k);
    }
    return L;
}

} // namespace pisot
