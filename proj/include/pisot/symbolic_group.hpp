#pragma once

#include "pisot/beta_numeration.hpp"
#include "pisot/lattice_group.hpp"

#include <algorithm>
#include <atomic>
#include <compare>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace pisot {

inline constexpr long default_extension_height = 6;

/// Purely periodic two-sided sequence, kept as its least rotation plus a phase.
/// word()[i] is the digit at position i+1, i.e. the coefficient of beta^{-i-1}.
struct PeriodicWord {
    Word canonical;
    std::size_t offset = 0;

    static PeriodicWord from_word(Word w)
    {
        PeriodicWord pw;
        if (w.empty() || std::all_of(w.begin(), w.end(), [](Digit d) { return d == 0; })) return pw;
        std::size_t p = w.size();
        for (std::size_t q = 1; q < p; ++q) {
            if (p % q != 0) continue;
            bool ok = true;
            for (std::size_t i = q; i < p && ok; ++i) ok = w[i] == w[i - q];
            if (ok) {
                p = q;
                break;
            }
        }
        w.resize(p);
        std::size_t best = 0;
        for (std::size_t r = 1; r < p; ++r)
            if (detail::rotate_left(w, r) < detail::rotate_left(w, best)) best = r;
        pw.canonical = detail::rotate_left(w, best);
        pw.offset = (p - best) % p;
        return pw;
    }

    std::size_t period() const { return canonical.empty() ? 1 : canonical.size(); }
    bool is_zero() const { return canonical.empty(); }
    Word word() const { return canonical.empty() ? Word{0} : detail::rotate_left(canonical, offset); }

    /// Left shift of the two-sided sequence by k places (multiplication by beta^k).
    PeriodicWord shifted(std::size_t k) const
    {
        PeriodicWord r = *this;
        if (!is_zero()) r.offset = (offset + k) % canonical.size();
        return r;
    }

    /// Digit at position k of the two-sided sequence.
    Digit at(long k) const
    {
        if (is_zero()) return 0;
        const long p = static_cast<long>(canonical.size());
        long i = ((k - 1) % p + p) % p;
        return canonical[static_cast<std::size_t>((i + static_cast<long>(offset)) % p)];
    }

    std::string to_string() const
    {
        std::string s;
        for (Digit d : word()) s += d < 10 ? std::string(1, static_cast<char>('0' + d)) : "[" + std::to_string(d) + "]";
        return s;
    }

    friend auto operator<=>(const PeriodicWord&, const PeriodicWord&) = default;
    friend bool operator==(const PeriodicWord&, const PeriodicWord&) = default;
};

/// Tail of an expansion aligned to the radix point.
inline PeriodicWord tail_of(const BetaExpansion& e)
{
    if (e.frac_period.empty()) return {};
    const std::size_t p = e.frac_period.size();
    return PeriodicWord::from_word(detail::rotate_left(e.frac_period, (p - e.frac_pre.size() % p) % p));
}

/// Closed-form value of 0.(w) for the phase-aligned word; congruent mod Z[beta] to any number with this tail.
inline AlgebraicNumber tail_value(const PisotPolynomial& f, const PeriodicWord& w)
{
    return w.is_zero() ? AlgebraicNumber::from_integer(f, 0) : periodic_value(f, w.word());
}

inline PeriodicWord tail_of_coset(const AlgebraicNumber& xi, std::size_t max_steps = default_step_cap)
{
    if (!is_in_pbeta(xi)) fail(errc::not_in_pisot_group, xi.to_string() + " is not in P_beta");
    return tail_of(greedy_expand(fractional_part(xi), max_steps));
}

/// The finite-to-the-left truncation (..., 0, s_{-N}, ..., s_0, s_1, ...).
inline BetaExpansion truncate_left(const PeriodicWord& w, std::size_t N)
{
    BetaExpansion e;
    for (long k = -static_cast<long>(N); k <= 0; ++k) e.integer_part.push_back(w.at(k));
    if (!w.is_zero()) e.frac_period = w.word();
    return e;
}

struct GroupClass {
    std::size_t index = 0;
    /// Canonical representative in [0,1).
    AlgebraicNumber rep;
    std::vector<Integer> coordinates;
    Integer order = 1;
    PeriodicWord canonical_tail;
    /// Tails of the nonnegative translates rep + l met within the extension height.
    std::set<PeriodicWord> tails;

    bool is_zero() const { return index == 0; }
};

namespace detail {

inline void for_each_translate(std::size_t m, long h, const std::function<void(const std::vector<Integer>&)>& fn)
{
    std::vector<long> c(m, -h);
    for (;;) {
        fn(std::vector<Integer>(c.begin(), c.end()));
        std::size_t i = m;
        while (i > 0 && c[i - 1] == h) c[--i] = -h;
        if (i == 0) return;
        ++c[i - 1];
    }
}

template <typename Fn>
void parallel_for(std::size_t n, Fn fn)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto run = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

/// The group of periodic two-sided sequences attached to P_beta / Z[beta].
class SymbolicGroup {
public:
    explicit SymbolicGroup(PisotPolynomial f, long extension_height = default_extension_height)
        : ext_height_(extension_height)
    {
        auto verdict = finitary_classify(f);
        if (verdict.verdict == FinitaryVerdict::proven_not_finitary)
            fail(errc::not_finitary, f.to_string() + " is not finitary (" + verdict.criterion + ")");
        group_ = PisotGroup(std::move(f));
        build();
    }

    const PisotPolynomial& field() const { return group_.field(); }
    const PisotGroup& group() const { return group_; }
    long extension_height() const { return ext_height_; }
    std::size_t size() const { return classes_.size(); }
    const std::vector<GroupClass>& classes() const { return classes_; }
    const GroupClass& operator[](std::size_t i) const { return classes_.at(i); }
    const GroupClass& zero() const { return classes_.front(); }

    const GroupClass& class_of(const AlgebraicNumber& xi) const { return classes_[group_.index_of(xi)]; }

    /// Class whose tail set holds w, found through the coset of the closed-form value.
    const GroupClass& class_of(const PeriodicWord& w) const { return class_of(tail_value(field(), w)); }

    const GroupClass& add(const GroupClass& a, const GroupClass& b) const
    {
        const GroupClass& r = class_of(a.rep + b.rep);
        const std::size_t N = 2 * std::lcm(a.canonical_tail.period(), b.canonical_tail.period()) + 2;
        auto sum = add_expansions(field(), truncate_left(a.canonical_tail, N), truncate_left(b.canonical_tail, N));
        if (class_of(tail_of(sum)).index != r.index)
            fail(errc::internal_inconsistency, "symbolic sum of tails leaves the coset of the sum");
        return r;
    }

    const GroupClass& neg(const GroupClass& a) const
    {
        const GroupClass& r = class_of(-a.rep);
        const std::size_t N = 2 * a.canonical_tail.period() + 2;
        BetaExpansion unit;
        unit.integer_part.assign(N + 2, 0);
        unit.integer_part.front() = 1;
        auto diff = sub_expansions(field(), unit, truncate_left(a.canonical_tail, N));
        if (class_of(tail_of(diff)).index != r.index)
            fail(errc::internal_inconsistency, "symbolic negation leaves the coset of -xi");
        return r;
    }

    const GroupClass& sub(const GroupClass& a, const GroupClass& b) const { return add(a, neg(b)); }

    /// Class of beta * rep; its canonical tail is the one-step shift of the tail of a, up to Z[beta].
    const GroupClass& shift(const GroupClass& a) const
    {
        const GroupClass& r = class_of(AlgebraicNumber::beta(field()) * a.rep);
        if (class_of(a.canonical_tail.shifted(1)).index != r.index)
            fail(errc::internal_inconsistency, "shifted tail is not in the class of beta * xi");
        return r;
    }

    const GroupClass& multiple(const GroupClass& a, long n) const { return class_of(a.rep * Rational(n)); }

private:
    void build()
    {
        const std::size_t n = group_.order();
        const auto& moduli = group_.moduli();
        classes_.assign(n, GroupClass{});
        detail::parallel_for(n, [&](std::size_t i) {
            GroupClass c;
            c.index = i;
            c.rep = group_.representative(i);
            c.coordinates = group_.coordinates(c.rep);
            for (std::size_t a = 0; a < moduli.size(); ++a)
                c.order = lcm(c.order, Integer(moduli[a] / gcd(c.coordinates[a], moduli[a])));
            c.canonical_tail = tail_of(greedy_expand(c.rep));
            c.tails.insert(c.canonical_tail);
            const auto& f = group_.field();
            detail::for_each_translate(f.size(), ext_height_, [&](const std::vector<Integer>& l) {
                AlgebraicNumber x = c.rep + AlgebraicNumber::from_numerators(f, l, 1);
                if (sign(x) < 0) return;
                c.tails.insert(tail_of(expand_positive(x)));
            });
            for (const auto& w : c.tails)
                if (group_.index_of(tail_value(f, w)) != i)
                    fail(errc::internal_inconsistency, "tail " + w.to_string() + " is not coset-related to its class");
            classes_[i] = std::move(c);
        });
        std::set<PeriodicWord> seen;
        for (const auto& c : classes_)
            for (const auto& w : c.tails)
                if (!seen.insert(w).second) fail(errc::internal_inconsistency, "tail " + w.to_string() + " in two classes");
    }

    long ext_height_ = default_extension_height;
    PisotGroup group_;
    std::vector<GroupClass> classes_;
};

inline SymbolicGroup enumerate_group(const PisotPolynomial& f, long extension_height = default_extension_height)
{
    return SymbolicGroup(f, extension_height);
}

struct RecurrentSequence {
    /// T_1, T_2, ...
    std::vector<Integer> terms;
    /// First n (1-based) from which T_{n+m} = k_1 T_{n+m-1} + ... + k_m T_n holds up to the end.
    std::optional<std::size_t> onset;
};

inline std::optional<std::size_t> recurrence_onset(const std::vector<Integer>& T, const PisotPolynomial& f)
{
    const auto& k = f.recurrence();
    const std::size_t m = k.size();
    if (T.size() <= m) return std::nullopt;
    std::size_t onset = T.size() - m - 1;  // 0-based start of the last relation
    auto holds = [&](std::size_t n) {
        Integer s = 0;
        for (std::size_t i = 0; i < m; ++i) s += k[i] * T[n + m - 1 - i];
        return s == T[n + m];
    };
    if (!holds(onset)) return std::nullopt;
    while (onset > 0 && holds(onset - 1)) --onset;
    return onset + 1;
}

/// T_n = nearest integer to xi beta^n, n = 1..n_max.
inline RecurrentSequence recurrent_sequence(const AlgebraicNumber& xi, std::size_t n_max)
{
    if (!is_in_pbeta(xi)) fail(errc::not_in_pisot_group, xi.to_string() + " is not in P_beta");
    const auto b = AlgebraicNumber::beta(xi.field());
    RecurrentSequence r;
    AlgebraicNumber y = xi;
    for (std::size_t n = 1; n <= n_max; ++n) {
        y = y * b;
        r.terms.push_back(nearest_integer(y));
    }
    r.onset = recurrence_onset(r.terms, xi.field());
    return r;
}

/// Exact xi with Tr(xi beta^n) = T_n from the onset on, checked by regenerating T.
inline AlgebraicNumber recognize_xi(const std::vector<Integer>& T, const PisotPolynomial& f)
{
    auto onset = recurrence_onset(T, f);
    if (!onset) fail(errc::not_recurrent, "sequence does not satisfy the recurrence at its end");
    const std::size_t m = f.size();
    const std::size_t n0 = *onset;
    auto inv = trace_matrix(f).inverse_rational();
    std::vector<Rational> a(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i] += inv[i][j] * T[n0 - 1 + j];
    AlgebraicNumber xi = AlgebraicNumber(f, a) * AlgebraicNumber::beta_power(f, -static_cast<long>(n0));
    if (!is_in_pbeta(xi)) fail(errc::reconstruction_failed, "recovered " + xi.to_string() + " is not in P_beta");
    auto again = recurrent_sequence(xi, T.size());
    for (std::size_t n = n0 - 1; n < T.size(); ++n)
        if (again.terms[n] != T[n])
            fail(errc::reconstruction_failed, "nearest integers of xi beta^n differ from T at n = " + std::to_string(n + 1));
    return xi;
}

/// Partial limits of the expansions of T_n, seen through the window of positions -W+1..W around the
/// radix point over the last third of the sequence. Limits that are not admissible two-sided
/// sequences are improper expansions of elements of Z[beta] and are reported as the zero word.
inline std::set<PeriodicWord> partial_limit_tails(const std::vector<Integer>& T, const PisotPolynomial& f,
                                                  std::size_t window = 32)
{
    auto onset = recurrence_onset(T, f);
    if (!onset) fail(errc::not_eventually_recurrent, "sequence does not satisfy the recurrence at its end");
    const std::size_t from = std::max(*onset - 1, T.size() - T.size() / 3);
    for (std::size_t n = from; n < T.size(); ++n)
        if (T[n] < 0) fail(errc::not_eventually_recurrent, "sequence is not eventually nonnegative");
    const auto parry = parry_sequence(f);
    const long W = static_cast<long>(window);
    std::set<Word> windows;
    for (std::size_t n = from; n < T.size(); ++n) {
        auto e = expand_positive(AlgebraicNumber::from_integer(f, T[n]));
        const DigitSequence frac{e.frac_pre, e.frac_period};
        const long L = static_cast<long>(e.integer_part.size());
        Word w;
        for (long k = -W + 1; k <= W; ++k) {
            if (k <= 0)
                w.push_back(L - 1 + k >= 0 ? e.integer_part[static_cast<std::size_t>(L - 1 + k)] : 0);
            else
                w.push_back(frac.at(static_cast<std::size_t>(k - 1)));
        }
        windows.insert(std::move(w));
    }
    std::set<PeriodicWord> out;
    for (const Word& w : windows) {
        std::optional<std::size_t> r;
        for (std::size_t c = 1; c <= window && !r; ++c) {
            bool ok = true;
            for (std::size_t j = c; j < w.size() && ok; ++j) ok = w[j] == w[j - c];
            if (ok) r = c;
        }
        if (!r) fail(errc::did_not_stabilize, "digit window is not periodic; extend the sequence or widen the window");
        auto pw = PeriodicWord::from_word(Word(w.begin() + W, w.begin() + W + static_cast<long>(*r)));
        out.insert(is_admissible_periodic(parry, pw.word()) ? pw : PeriodicWord{});
    }
    return out;
}

} // namespace pisot
