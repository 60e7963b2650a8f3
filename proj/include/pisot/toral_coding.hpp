#pragma once

#include "pisot/symbolic_group.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace pisot {

inline constexpr int default_coding_precision = 128;

/// Point of R^m / Z^m with certified coordinates in [0,1).
struct TorusPoint {
    std::vector<CertifiedInterval> coords;
    int bits = default_coding_precision;

    static TorusPoint origin(std::size_t m, int bits)
    {
        return {std::vector<CertifiedInterval>(m, CertifiedInterval::point(0).round_to(bits)), bits};
    }

    static TorusPoint from_rationals(const std::vector<Rational>& x, int bits)
    {
        TorusPoint t{{}, bits};
        for (const auto& q : x) {
            Rational r = q - Rational(floor_of(q));
            t.coords.push_back(CertifiedInterval::enclose(r, bits));
        }
        return t;
    }

    std::size_t size() const { return coords.size(); }

    std::vector<double> approx() const
    {
        std::vector<double> out;
        for (const auto& c : coords) out.push_back(c.approx());
        return out;
    }
};

/// Upper bound for the sup-norm distance on the torus.
inline Rational distance(const TorusPoint& a, const TorusPoint& b)
{
    if (a.size() != b.size()) fail(errc::out_of_range, "torus points of different dimension");
    Rational d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, circle_distance_upper(a.coords[i], b.coords[i]));
    return d;
}

/// Lower bound for the sup-norm distance to the origin.
inline Rational distance_to_origin_lower(const TorusPoint& a)
{
    Rational d = 0;
    for (const auto& c : a.coords) d = std::max(d, circle_distance_lower_to_zero(c));
    return d;
}

/// Integer matrix acting on the torus.
inline TorusPoint apply(const IntegerMatrix& M, const TorusPoint& x)
{
    TorusPoint r{{}, x.bits};
    for (std::size_t i = 0; i < M.rows(); ++i) {
        CertifiedInterval s = CertifiedInterval::point(0).round_to(x.bits);
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0) s = s + x.coords[j] * M(i, j);
        r.coords.push_back(s.reduce_mod_one());
    }
    return r;
}

inline Rational tolerance(int bits) { return Rational(1, pow2(static_cast<unsigned long>(bits / 2))); }

/// First row (k_1, ..., k_m), ones on the subdiagonal.
inline IntegerMatrix companion_matrix(const PisotPolynomial& f)
{
    const auto& k = f.recurrence();
    const std::size_t m = k.size();
    IntegerMatrix M(m, m);
    for (std::size_t j = 0; j < m; ++j) M(0, j) = k[j];
    for (std::size_t i = 1; i < m; ++i) M(i, i - 1) = 1;
    return M;
}

/// (1, beta^-1, ..., beta^{-m+1}) is a beta-eigenvector of the companion matrix at the given precision.
inline bool companion_eigenvector_holds(const PisotPolynomial& f, int bits)
{
    const std::size_t m = f.size();
    const auto M = companion_matrix(f);
    std::vector<CertifiedInterval> v;
    for (std::size_t i = 0; i < m; ++i) v.push_back(evaluate(AlgebraicNumber::beta_power(f, -static_cast<long>(i)), bits));
    const auto b = evaluate(AlgebraicNumber::beta(f), bits);
    for (std::size_t i = 0; i < m; ++i) {
        CertifiedInterval s = CertifiedInterval::point(0).round_to(bits);
        for (std::size_t j = 0; j < m; ++j)
            if (M(i, j) != 0) s = s + v[j] * M(i, j);
        auto diff = s - b * v[i];
        if (!diff.contains_zero()) return false;
    }
    return true;
}

/// A = sum a_k M^k where g'(beta) = 1/xi0 = sum a_k beta^k; |det A| = |D| is checked.
inline IntegerMatrix endomorphism_A(const PisotPolynomial& f)
{
    const auto gp = derivative_at_beta(f);
    const auto M = companion_matrix(f);
    const std::size_t m = f.size();
    IntegerMatrix A(m, m), P = IntegerMatrix::identity(m);
    for (std::size_t k = 0; k < m; ++k) {
        A = A + gp[k].get_num() * P;
        P = P * M;
    }
    if (abs(A.determinant()) != abs(discriminant(f)))
        fail(errc::determinant_mismatch, "|det A| = " + pisot::to_string(Integer(abs(A.determinant()))) + " differs from |D|");
    return A;
}

/// Homoclinic scaling of a coding map: xi = xi0 gives phi0, xi = 1 gives phi.
struct CodingMap {
    AlgebraicNumber xi;

    explicit CodingMap(AlgebraicNumber x) : xi(std::move(x))
    {
        if (!is_in_pbeta(xi)) fail(errc::not_in_pisot_group, "homoclinic scaling " + xi.to_string() + " is not in P_beta");
    }

    static CodingMap phi(const PisotPolynomial& f) { return CodingMap(AlgebraicNumber::from_integer(f, 1)); }
    static CodingMap phi0(const PisotPolynomial& f) { return CodingMap(xi0(f)); }

    const PisotPolynomial& field() const { return xi.field(); }
};

/// x * (xi, xi beta^-1, ..., xi beta^{-m+1}) mod Z^m.
inline TorusPoint project(const CodingMap& map, const AlgebraicNumber& x, int bits)
{
    const auto& f = map.field();
    TorusPoint t{{}, bits};
    AlgebraicNumber c = x * map.xi;
    const auto binv = AlgebraicNumber::beta_inverse(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        t.coords.push_back(evaluate(c, bits + 4).reduce_mod_one());
        c = c * binv;
    }
    return t;
}

/// Image of a sequence finite to the left (an expansion with integer part).
inline TorusPoint phi(const CodingMap& map, const BetaExpansion& e, int bits = default_coding_precision)
{
    const auto& f = map.field();
    if (!is_admissible(parry_sequence(f), e)) fail(errc::not_admissible, e.to_string() + " is not admissible");
    return project(map, evaluate_expansion(f, e), bits);
}

/// Exact image of a purely periodic two-sided sequence: the coordinates are Tr(xi alpha beta^-i) mod 1,
/// alpha the value of its right half.
inline std::vector<Rational> phi_exact(const CodingMap& map, const PeriodicWord& w)
{
    const auto& f = map.field();
    if (!w.is_zero() && !is_admissible_periodic(parry_sequence(f), w.word()))
        fail(errc::not_admissible, w.to_string() + " is not admissible as a two-sided sequence");
    AlgebraicNumber c = map.xi * tail_value(f, w);
    const auto binv = AlgebraicNumber::beta_inverse(f);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational t = trace_of(c);
        out.push_back(t - Rational(floor_of(t)));
        c = c * binv;
    }
    return out;
}

inline TorusPoint phi(const CodingMap& map, const PeriodicWord& w, int bits = default_coding_precision)
{
    return TorusPoint::from_rationals(phi_exact(map, w), bits);
}

/// Image of a purely periodic sequence from its truncation at -N, widened by a certified bound on the
/// omitted terms; N grows until that bound is below 2^-bits.
inline TorusPoint phi_limit(const CodingMap& map, const PeriodicWord& w, int bits = default_coding_precision)
{
    const auto& f = map.field();
    const std::size_t m = f.size();
    const Rational r = f.certificate().conjugate_modulus_bound();
    if (r >= 1) fail(errc::internal_inconsistency, "conjugate modulus bound is not below 1");
    Rational xi_mass = 0;
    for (const auto& c : map.xi.coefficients()) xi_mass += abs(c);
    Digit dmax = 0;
    for (Digit d : w.word()) dmax = std::max(dmax, d);
    // |omitted| <= dmax (m-1) |xi|_1 r^{N+2-m} / (1-r)
    const Rational scale = Rational(dmax) * static_cast<long>(m - 1) * xi_mass / (1 - r);
    const Rational target(1, pow2(static_cast<unsigned long>(bits)));
    const double rd = r.get_d();
    long N = static_cast<long>(m) + 1;
    if (scale > 0) {
        double need = (std::log2(scale.get_d()) + bits) / -std::log2(rd);
        N = std::max<long>(N, static_cast<long>(std::ceil(need)) + static_cast<long>(m));
    }
    Rational bound;
    for (;; N += 8) {
        Rational rp = 1;
        mpz_pow_ui(rp.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(N + 2 - static_cast<long>(m)));
        mpz_pow_ui(rp.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(N + 2 - static_cast<long>(m)));
        rp.canonicalize();
        bound = scale * rp;
        if (bound < target) break;
    }
    TorusPoint t = project(map, evaluate_expansion(f, truncate_left(w, static_cast<std::size_t>(N))), bits + 8);
    for (auto& c : t.coords) c = CertifiedInterval::enclose(c.lower() - bound, c.upper() + bound, bits + 8);
    t.bits = bits;
    return t;
}

/// The one-step shift tau: digit at position k+1 moves to position k, i.e. multiplication by beta.
inline BetaExpansion shift_expansion(BetaExpansion e)
{
    if (!e.frac_pre.empty()) {
        e.integer_part.push_back(e.frac_pre.front());
        e.frac_pre.erase(e.frac_pre.begin());
    } else if (!e.frac_period.empty()) {
        e.integer_part.push_back(e.frac_period.front());
        e.frac_period = detail::rotate_left(e.frac_period, 1);
    } else {
        e.integer_part.push_back(0);
    }
    while (!e.integer_part.empty() && e.integer_part.front() == 0) e.integer_part.erase(e.integer_part.begin());
    return e;
}

/// Random admissible finite word with `int_len` digits before the radix point.
template <typename Rng>
BetaExpansion random_admissible_expansion(const ParrySequence& p, Rng& rng, std::size_t length, std::size_t int_len)
{
    std::uniform_int_distribution<Digit> digit(0, p.max_digit());
    Word w;
    while (w.size() < length) {
        w.push_back(digit(rng));
        if (!is_admissible(p, w)) w.back() = 0;
    }
    BetaExpansion e;
    int_len = std::min(int_len, length);
    e.integer_part.assign(w.begin(), w.begin() + static_cast<long>(int_len));
    e.frac_pre.assign(w.begin() + static_cast<long>(int_len), w.end());
    while (!e.integer_part.empty() && e.integer_part.front() == 0) e.integer_part.erase(e.integer_part.begin());
    while (!e.frac_pre.empty() && e.frac_pre.back() == 0) e.frac_pre.pop_back();
    return e;
}

/// Random purely periodic word whose two-sided repetition is admissible.
template <typename Rng>
PeriodicWord random_admissible_periodic(const ParrySequence& p, Rng& rng, std::size_t max_period)
{
    std::uniform_int_distribution<std::size_t> len(1, max_period);
    std::uniform_int_distribution<Digit> digit(0, p.max_digit());
    for (;;) {
        Word w(len(rng));
        for (auto& d : w) d = digit(rng);
        auto pw = PeriodicWord::from_word(w);
        if (pw.is_zero() || is_admissible_periodic(p, pw.word())) return pw;
    }
}

struct KernelReport {
    std::size_t classes = 0;
    std::size_t kernel_classes = 0;
    std::size_t tails_checked = 0;
    Rational max_error = 0;
    std::size_t non_kernel_checked = 0;
    /// Smallest certified distance from the origin among sampled words outside P_beta.
    std::optional<Rational> non_kernel_min_distance;
};

/// Every tail of every class maps to the origin under phi (exactly and through the limit); sampled
/// periodic words outside P_beta stay away from it.
template <typename Rng>
KernelReport verify_kernel(const SymbolicGroup& g, Rng& rng, std::size_t samples = 100, int bits = default_coding_precision)
{
    const auto& f = g.field();
    const auto map = CodingMap::phi(f);
    const Rational tol = tolerance(bits);
    KernelReport r;
    r.classes = g.size();
    for (const auto& c : g.classes()) {
        for (const auto& w : c.tails) {
            ++r.tails_checked;
            if (!is_in_pbeta(tail_value(f, w)))
                fail(errc::kernel_violation, "tail " + w.to_string() + " has a value outside P_beta");
            for (const auto& q : phi_exact(map, w))
                if (q != 0) fail(errc::kernel_violation, "closed form of " + w.to_string() + " is not the origin");
            Rational d = distance(phi_limit(map, w, bits), TorusPoint::origin(f.size(), bits));
            r.max_error = std::max(r.max_error, d);
            if (d >= tol)
                fail(errc::kernel_violation, "phi(" + w.to_string() + ") is " + std::to_string(d.get_d()) + " from the origin");
        }
        ++r.kernel_classes;
    }
    const auto p = parry_sequence(f);
    for (std::size_t i = 0; i < samples; ++i) {
        auto w = random_admissible_periodic(p, rng, 8);
        bool in_kernel = is_in_pbeta(tail_value(f, w));
        auto pt = phi_limit(map, w, bits);
        if (in_kernel) {
            if (distance(pt, TorusPoint::origin(f.size(), bits)) >= tol)
                fail(errc::kernel_violation, "word " + w.to_string() + " in P_beta is not sent to the origin");
            continue;
        }
        ++r.non_kernel_checked;
        Rational d = distance_to_origin_lower(pt);
        if (d < tol) fail(errc::kernel_violation, "word " + w.to_string() + " outside P_beta is sent to the origin");
        if (!r.non_kernel_min_distance || d < *r.non_kernel_min_distance) r.non_kernel_min_distance = d;
    }
    return r;
}

struct SampleReport {
    std::size_t samples = 0;
    Rational max_error = 0;
};

/// phi(tau e) = M phi(e) on the torus for each sample.
inline SampleReport verify_semiconjugacy(const CodingMap& map, const std::vector<BetaExpansion>& samples,
                                         int bits = default_coding_precision)
{
    const auto M = companion_matrix(map.field());
    const Rational tol = tolerance(bits);
    std::vector<Rational> err(samples.size());
    detail::parallel_for(samples.size(), [&](std::size_t i) {
        auto lhs = phi(map, shift_expansion(samples[i]), bits);
        auto rhs = apply(M, phi(map, samples[i], bits));
        err[i] = distance(lhs, rhs);
        if (err[i] >= tol) fail(errc::semiconjugacy_violation, "phi(tau e) != M phi(e) for e = " + samples[i].to_string());
    });
    SampleReport r{samples.size(), 0};
    for (const auto& e : err) r.max_error = std::max(r.max_error, e);
    return r;
}

/// phi(e) = A phi0(e) on the torus for each sample.
inline SampleReport verify_factorization(const PisotPolynomial& f, const std::vector<BetaExpansion>& samples,
                                         int bits = default_coding_precision)
{
    const auto A = endomorphism_A(f);
    const auto ph = CodingMap::phi(f), ph0 = CodingMap::phi0(f);
    const Rational tol = tolerance(bits);
    std::vector<Rational> err(samples.size());
    detail::parallel_for(samples.size(), [&](std::size_t i) {
        err[i] = distance(phi(ph, samples[i], bits), apply(A, phi(ph0, samples[i], bits)));
        if (err[i] >= tol) fail(errc::factorization_violation, "phi(e) != A phi0(e) for e = " + samples[i].to_string());
    });
    SampleReport r{samples.size(), 0};
    for (const auto& e : err) r.max_error = std::max(r.max_error, e);
    return r;
}

/// All z with A z = y mod Z^m: z = A^{-1}(y + n) over representatives n of Z^m / A Z^m.
inline std::vector<TorusPoint> a_preimages(const IntegerMatrix& A, const TorusPoint& y)
{
    const std::size_t m = A.rows();
    auto snf = smith_normal_form(A);
    if (snf.singular) fail(errc::singular_input, "A is singular");
    auto Uinv_q = snf.U.inverse_rational();
    auto Ainv = A.inverse_rational();
    std::vector<std::vector<Integer>> reps{std::vector<Integer>(m, Integer(0))};
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::vector<Integer>> next;
        for (const auto& r : reps)
            for (Integer v = 0; v < snf.invariant_factors[a]; ++v) {
                auto s = r;
                s[a] = v;
                next.push_back(std::move(s));
            }
        reps = std::move(next);
    }
    const int bits = y.bits + 16;
    std::vector<TorusPoint> out;
    for (const auto& r : reps) {
        std::vector<CertifiedInterval> shifted = y.coords;
        for (std::size_t i = 0; i < m; ++i) {
            Rational n = 0;
            for (std::size_t j = 0; j < m; ++j) n += Uinv_q[i][j] * r[j];
            shifted[i] = shifted[i] + CertifiedInterval::enclose(n, bits);
        }
        TorusPoint z{{}, y.bits};
        for (std::size_t i = 0; i < m; ++i) {
            CertifiedInterval s = CertifiedInterval::point(0).round_to(bits);
            for (std::size_t j = 0; j < m; ++j)
                if (Ainv[i][j] != 0) s = s + shifted[j] * CertifiedInterval::enclose(Ainv[i][j], bits);
            z.coords.push_back(s.reduce_mod_one());
        }
        out.push_back(std::move(z));
    }
    return out;
}

struct PreimageReport {
    std::size_t points = 0;
    std::size_t preimages_per_point = 0;
    /// Smallest certified separation between two preimages of one point.
    Rational min_separation = 1;
    Rational max_residual = 0;
};

/// Fibre sizes of A over random torus points: A is |det A|-to-1, hence phi = A phi0 is |D|-to-1 a.e.
template <typename Rng>
PreimageReport sample_preimages(const PisotPolynomial& f, Rng& rng, std::size_t points, int bits = default_coding_precision)
{
    const auto A = endomorphism_A(f);
    const std::size_t m = f.size();
    std::uniform_int_distribution<unsigned long> coord(0, (1ul << 40) - 1);
    PreimageReport r;
    r.points = points;
    for (std::size_t k = 0; k < points; ++k) {
        std::vector<Rational> y;
        for (std::size_t i = 0; i < m; ++i) y.emplace_back(Integer(coord(rng)), Integer(1ul << 40));
        auto target = TorusPoint::from_rationals(y, bits);
        auto pre = a_preimages(A, target);
        r.preimages_per_point = pre.size();
        for (std::size_t i = 0; i < pre.size(); ++i) {
            r.max_residual = std::max(r.max_residual, distance(apply(A, pre[i]), target));
            for (std::size_t j = i + 1; j < pre.size(); ++j) {
                Rational d = 0;
                for (std::size_t c = 0; c < m; ++c) {
                    auto diff = pre[i].coords[c] - pre[j].coords[c];
                    d = std::max(d, circle_distance_lower_to_zero(diff));
                }
                r.min_separation = std::min(r.min_separation, d);
            }
        }
    }
    return r;
}

} // namespace pisot
