#pragma once

#include "pisot/interval.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/roots.hpp"

#include <bit>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pisot {

inline constexpr unsigned long default_precision_cap = 8192;
inline constexpr unsigned long initial_precision = 64;

/// Root data proving the Pisot-unit property of a polynomial.
struct PisotCertificate {
    std::vector<RootEnclosure> roots;
    std::size_t dominant = 0;
    unsigned long bits = 0;

    /// Largest certified modulus bound over the conjugates of the dominant root.
    Rational conjugate_modulus_bound() const
    {
        Rational best = 0;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (i != dominant && roots[i].modulus_upper > best) best = roots[i].modulus_upper;
        return best;
    }
};

namespace detail {

inline std::string describe(const RootEnclosure& r)
{
    return "root disc centre " + std::to_string(r.center_re.get_d()) + (r.center_im >= 0 ? "+" : "") +
           std::to_string(r.center_im.get_d()) + "i radius " + std::to_string(r.radius.get_d()) +
           " modulus in [" + std::to_string(r.modulus_lower.get_d()) + ", " +
           std::to_string(r.modulus_upper.get_d()) + "]";
}

enum class Tri { no, yes, unknown };

/// Looks for an integer factor whose roots are a proper subset of the certified roots.
inline Tri has_subset_factor(const IntPoly& g, const std::vector<RootEnclosure>& roots, unsigned long bits)
{
    const std::size_t n = roots.size();
    const int grid = static_cast<int>(bits) + 8;
    std::vector<ComplexInterval> boxes;
    for (const auto& r : roots) boxes.push_back(r.box(grid));
    bool unknown = false;
    for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
        auto size = static_cast<std::size_t>(std::popcount(mask));
        if (2 * size > n) continue;
        std::vector<ComplexInterval> prod{{CertifiedInterval::point(1), CertifiedInterval::point(0)}};
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1ul << i))) continue;
            std::vector<ComplexInterval> next(prod.size() + 1,
                                              {CertifiedInterval::point(0), CertifiedInterval::point(0)});
            for (std::size_t k = 0; k < prod.size(); ++k) {
                next[k + 1] = next[k + 1] + prod[k];
                next[k] = next[k] - boxes[i] * prod[k];
            }
            prod = std::move(next);
        }
        IntPoly candidate;
        bool possible = true, decided = true;
        for (const auto& c : prod) {
            if (!c.im.contains_zero()) {
                possible = false;
                break;
            }
            Integer lo = ceil_of(c.re.lower()), hi = floor_of(c.re.upper());
            if (lo > hi) {
                possible = false;
                break;
            }
            if (lo < hi) decided = false;
            candidate.push_back(lo);
        }
        if (!possible) continue;
        if (!decided) {
            unknown = true;
            continue;
        }
        if (poly::divides(candidate, g)) return Tri::yes;
    }
    return unknown ? Tri::unknown : Tri::no;
}

} // namespace detail

/// Certifies that the monic integer polynomial g (ascending coefficients) has a
/// unique real root > 1, all other roots of modulus < 1, and is irreducible.
inline PisotCertificate verify_pisot(const IntPoly& g_in, unsigned long precision_cap = default_precision_cap)
{
    IntPoly g = g_in;
    poly::trim(g);
    const int m = poly::degree(g);
    if (m < 2) fail(errc::not_pisot, "degree must be at least 2");
    if (g.back() != 1) fail(errc::not_monic, "leading coefficient is " + to_string(g.back()));
    if (abs(g.front()) != 1) fail(errc::not_unit, "constant term is " + to_string(g.front()));
    if (poly::degree(poly::gcd(poly::to_rational(g), poly::to_rational(poly::derivative(g)))) > 0)
        fail(errc::reducible, "polynomial has a repeated factor");

    const auto start = roots::approximate(g);
    PisotCertificate cert;
    bool separated = false;
    bool irreducibility_known = false;
    bool decided = false;
    for (unsigned long bits = initial_precision; bits <= precision_cap && !decided; bits *= 2) {
        auto centers = roots::refine(g, start, bits + 32);
        std::vector<RootEnclosure> trial;
        if (roots::certify(g, centers, bits, trial) != roots::Certification::ok) continue;
        separated = true;
        cert.roots = std::move(trial);
        cert.bits = bits;
        if (!irreducibility_known) {
            auto factor = detail::has_subset_factor(g, cert.roots, bits);
            if (factor == detail::Tri::yes) fail(errc::reducible, "integer factor found from a subset of roots");
            if (factor == detail::Tri::unknown) continue;
            irreducibility_known = true;
            IntPoly rev = poly::reversed(g);
            IntPoly neg_g = g;
            for (auto& c : neg_g) c = -c;
            if (rev == g || rev == neg_g) {
                // Irreducible and self-reciprocal: roots pair up as z, 1/z.
                if (m >= 3) fail(errc::not_pisot, "self-reciprocal polynomial of degree >= 3");
                if (g[1] * g[1] <= 4) fail(errc::not_pisot, "roots on the unit circle");
            }
        }
        decided = true;
        for (const auto& r : cert.roots)
            if (!(r.modulus_upper < 1 || r.modulus_lower > 1)) decided = false;
    }
    if (!separated) fail(errc::precision_cap_exceeded, "roots could not be separated");
    if (!irreducibility_known) fail(errc::precision_cap_exceeded, "irreducibility undecided");
    if (!decided) fail(errc::precision_cap_exceeded, "root moduli not separated from 1");

    std::size_t outside = 0;
    for (std::size_t i = 0; i < cert.roots.size(); ++i) {
        const auto& r = cert.roots[i];
        if (r.modulus_lower > 1) {
            ++outside;
            cert.dominant = i;
            if (!r.is_real || r.real_lower <= 1)
                fail(errc::not_pisot, "root outside the unit disc is not a real number > 1: " + detail::describe(r));
        } else if (!(r.modulus_upper < 1)) {
            fail(errc::not_pisot, "conjugate not inside the unit disc: " + detail::describe(r));
        }
    }
    if (outside != 1)
        fail(errc::not_pisot, std::to_string(outside) + " roots outside the unit disc");
    return cert;
}

/// A monic integer polynomial x^m - k1 x^{m-1} - ... - km whose dominant root is a Pisot unit.
///
/// Immutable and cheap to copy; the dominant root is enclosed once at construction
/// to a precision above the decision cap, so evaluations never mutate shared state.
class PisotPolynomial {
public:
    PisotPolynomial() = default;

    /// g given by ascending coefficients.
    static PisotPolynomial from_coefficients(IntPoly g, unsigned long precision_cap = default_precision_cap)
    {
        poly::trim(g);
        auto data = std::make_shared<Data>();
        data->cert = verify_pisot(g, precision_cap);
        data->cap = precision_cap;
        data->g = g;
        const std::size_t m = g.size() - 1;
        data->k.resize(m);
        for (std::size_t i = 1; i <= m; ++i) data->k[i - 1] = -g[m - i];

        data->full_bits = static_cast<int>(precision_cap + 2048);
        const auto& dom = data->cert.roots[data->cert.dominant];
        data->beta = roots::refine_real_root(g, dom.real_lower, dom.real_upper,
                                             static_cast<unsigned long>(data->full_bits));
        data->powers.push_back(CertifiedInterval::point(1));
        for (std::size_t i = 1; i < m; ++i) data->powers.push_back(data->powers.back() * data->beta);
        for (const auto& p : data->powers) {
            auto coarse = p.round_to(160);
            double b = coarse.midpoint().get_d();
            Rational err = std::max(Rational(abs(coarse.lower() - b)), Rational(abs(coarse.upper() - b)));
            data->approx.push_back(b);
            data->approx_err.push_back(err.get_d() * (1 + 1e-12) + 1e-300);
        }
        PisotPolynomial p;
        p.d_ = std::move(data);
        return p;
    }

    /// From recurrence coefficients k1..km of x^m = k1 x^{m-1} + ... + km.
    static PisotPolynomial from_recurrence(const std::vector<Integer>& k,
                                           unsigned long precision_cap = default_precision_cap)
    {
        IntPoly g(k.size() + 1);
        g[k.size()] = 1;
        for (std::size_t i = 1; i <= k.size(); ++i) g[k.size() - i] = -k[i - 1];
        return from_coefficients(std::move(g), precision_cap);
    }

    bool valid() const noexcept { return d_ != nullptr; }
    int degree() const { return static_cast<int>(d_->k.size()); }
    std::size_t size() const { return d_->k.size(); }
    /// k1..km.
    const std::vector<Integer>& recurrence() const { return d_->k; }
    /// Ascending coefficients of g.
    const IntPoly& coefficients() const { return d_->g; }
    const PisotCertificate& certificate() const { return d_->cert; }
    unsigned long precision_cap() const { return d_->cap; }
    int reserve_bits() const { return d_->full_bits; }

    /// Enclosure of the dominant root at the reserve precision.
    const CertifiedInterval& beta() const { return d_->beta; }

    /// Enclosure of beta^i, 0 <= i < m, on a grid of `bits` bits.
    CertifiedInterval beta_power(std::size_t i, int bits) const
    {
        if (bits > d_->full_bits) fail(errc::precision_cap_exceeded, "requested " + std::to_string(bits) + " bits");
        return d_->powers[i].round_to(bits);
    }

    /// Double approximations of beta^i with rigorous absolute error bounds.
    const std::vector<double>& power_approx() const { return d_->approx; }
    const std::vector<double>& power_error() const { return d_->approx_err; }

    std::string to_string() const { return poly::format(d_->g); }

    friend bool operator==(const PisotPolynomial& a, const PisotPolynomial& b)
    {
        if (a.d_ == b.d_) return true;
        if (!a.d_ || !b.d_) return false;
        return a.d_->g == b.d_->g;
    }

private:
    struct Data {
        IntPoly g;
        std::vector<Integer> k;
        PisotCertificate cert;
        unsigned long cap = default_precision_cap;
        int full_bits = 0;
        CertifiedInterval beta;
        std::vector<CertifiedInterval> powers;
        std::vector<double> approx;
        std::vector<double> approx_err;
    };
    std::shared_ptr<const Data> d_;
};

/// Parses and validates "x^3-x^2-x-1" or "[1,-1,-1,-1]".
inline PisotPolynomial parse_polynomial(std::string_view text, unsigned long precision_cap = default_precision_cap)
{
    return PisotPolynomial::from_coefficients(poly::parse(text), precision_cap);
}

} // namespace pisot
