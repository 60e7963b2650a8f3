#pragma once

#include "pisot/algebraic_number.hpp"
#include "pisot/integer_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace pisot {

/// (M_beta)_{ij} = Tr(beta^{i+j}), 0 <= i, j < m.
inline IntegerMatrix trace_matrix(const PisotPolynomial& f)
{
    const std::size_t m = f.size();
    auto p = trace_powers(f, 2 * m - 2);
    IntegerMatrix M(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) M(i, j) = p[i + j];
    return M;
}

/// D = det M_beta, the discriminant of g.
inline Integer discriminant(const PisotPolynomial& f) { return trace_matrix(f).determinant(); }

/// g'(beta) = m beta^{m-1} - (m-1) k1 beta^{m-2} - ... - k_{m-1}.
inline AlgebraicNumber derivative_at_beta(const PisotPolynomial& f)
{
    const auto& k = f.recurrence();
    const std::size_t m = k.size();
    std::vector<Rational> c(m);
    c[m - 1] = static_cast<long>(m);
    for (std::size_t i = 1; i < m; ++i) c[m - 1 - i] = -Rational(k[i - 1] * static_cast<long>(m - i));
    return AlgebraicNumber(f, std::move(c));
}

/// xi0 = 1 / g'(beta); P_beta = xi0 Z[beta].
inline AlgebraicNumber xi0(const PisotPolynomial& f) { return derivative_at_beta(f).inverse(); }

/// Matrix of multiplication by an element of Z[beta]; column j holds a * beta^j.
inline IntegerMatrix multiplication_matrix(const AlgebraicNumber& a)
{
    if (!a.is_integral()) fail(errc::out_of_range, "multiplication matrix needs an element of Z[beta]");
    const std::size_t m = a.field().size();
    IntegerMatrix A(m, m);
    AlgebraicNumber col = a;
    const AlgebraicNumber b = AlgebraicNumber::beta(a.field());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) A(i, j) = col[i].get_num();
        col = col * b;
    }
    return A;
}

inline bool is_in_zbeta(const AlgebraicNumber& a) { return a.is_integral(); }

/// Tr(a beta^j) in Z for j = 0..m-1.
inline bool is_in_pbeta(const AlgebraicNumber& a)
{
    const std::size_t m = a.field().size();
    auto p = trace_powers(a.field(), 2 * m - 2);
    for (std::size_t j = 0; j < m; ++j) {
        Rational t = 0;
        for (std::size_t i = 0; i < m; ++i) t += a[i] * p[i + j];
        if (t.get_den() != 1) return false;
    }
    return true;
}

inline bool coset_equal(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    if (!is_in_pbeta(a)) fail(errc::not_in_pisot_group, "first operand " + a.to_string() + " is not in P_beta");
    if (!is_in_pbeta(b)) fail(errc::not_in_pisot_group, "second operand " + b.to_string() + " is not in P_beta");
    return is_in_zbeta(a - b);
}

struct PisotGroupStructure {
    Integer D;
    IntegerMatrix M_beta;
    /// All m invariant factors, s_1 | ... | s_m, product |D|.
    std::vector<Integer> invariant_factors;
    Integer d;
    bool cyclic = false;
    /// Entries of D * M_beta^{-1} are coprime.
    bool coprime_adjugate = false;
    AlgebraicNumber xi0;
    /// SNF of multiplication by g'(beta), the presentation of P_beta / Z[beta].
    SmithDecomposition presentation;

    std::vector<Integer> nontrivial_factors() const
    {
        std::vector<Integer> out;
        for (const auto& s : invariant_factors)
            if (s != 1) out.push_back(s);
        return out;
    }
};

inline bool is_prime(const Integer& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

/// Group structure of P_beta / Z[beta] with the internal cross-checks.
inline PisotGroupStructure group_structure(const PisotPolynomial& f)
{
    PisotGroupStructure s;
    s.M_beta = trace_matrix(f);
    s.D = s.M_beta.determinant();
    s.xi0 = xi0(f);

    s.presentation = smith_normal_form(multiplication_matrix(derivative_at_beta(f)));
    auto dual = smith_normal_form(s.M_beta);
    if (s.presentation.invariant_factors != dual.invariant_factors)
        fail(errc::internal_inconsistency, "SNF of g'(beta) and of M_beta disagree");
    s.invariant_factors = s.presentation.invariant_factors;

    Integer product = 1;
    for (const auto& x : s.invariant_factors) product *= x;
    if (product != abs(s.D)) fail(errc::internal_inconsistency, "invariant factors do not multiply to |D|");

    auto inv = s.M_beta.inverse_rational();
    Integer d = 1, content = 0;
    for (const auto& row : inv)
        for (const auto& x : row) {
            d = lcm(d, x.get_den());
            content = gcd(content, Integer(x * s.D));
        }
    s.d = d;
    if (d != s.invariant_factors.back()) fail(errc::internal_inconsistency, "d differs from the largest invariant factor");

    s.cyclic = s.nontrivial_factors().size() <= 1;
    s.coprime_adjugate = content == 1;
    if (s.coprime_adjugate && !s.cyclic) fail(errc::internal_inconsistency, "coprime D*M^{-1} but group not cyclic");
    Integer absD = abs(s.D);
    if (d == absD && !s.cyclic) fail(errc::internal_inconsistency, "d = |D| but group not cyclic");
    if (absD % d == 0 && is_prime(absD / d)) {
        auto nt = s.nontrivial_factors();
        std::vector<Integer> expected{absD / d, d};
        if (nt != expected) fail(errc::internal_inconsistency, "group is not Z/d x Z/(|D|/d)");
    }
    return s;
}

/// Indexing of the cosets of Z[beta] in P_beta through Smith coordinates.
class PisotGroup {
public:
    PisotGroup() = default;

    explicit PisotGroup(PisotPolynomial f) : f_(std::move(f)), s_(group_structure(f_)), gp_(derivative_at_beta(f_))
    {
        const auto& U = s_.presentation.U;
        auto inv = U.inverse_rational();
        Uinv_ = IntegerMatrix(U.rows(), U.cols());
        for (std::size_t i = 0; i < U.rows(); ++i)
            for (std::size_t j = 0; j < U.cols(); ++j) {
                if (inv[i][j].get_den() != 1) fail(errc::internal_inconsistency, "U is not unimodular");
                Uinv_(i, j) = inv[i][j].get_num();
            }
        for (std::size_t i = 0; i < s_.invariant_factors.size(); ++i)
            if (s_.invariant_factors[i] != 1) {
                axes_.push_back(i);
                moduli_.push_back(s_.invariant_factors[i]);
            }
    }

    const PisotPolynomial& field() const { return f_; }
    const PisotGroupStructure& structure() const { return s_; }
    std::size_t order() const { return Integer(abs(s_.D)).get_ui(); }
    /// Nontrivial cyclic factors, in increasing divisibility order.
    const std::vector<Integer>& moduli() const { return moduli_; }

    /// Smith coordinates r_i in [0, s_i) of the coset of xi.
    std::vector<Integer> coordinates(const AlgebraicNumber& xi) const
    {
        AlgebraicNumber y = gp_ * xi;
        if (!y.is_integral()) fail(errc::not_in_pisot_group, xi.to_string() + " is not in P_beta");
        std::vector<Integer> v;
        for (const auto& c : y.coefficients()) v.push_back(c.get_num());
        auto Uy = s_.presentation.U.apply(v);
        std::vector<Integer> r;
        for (std::size_t a = 0; a < axes_.size(); ++a) {
            Integer x = Uy[axes_[a]] % moduli_[a];
            if (x < 0) x += moduli_[a];
            r.push_back(x);
        }
        return r;
    }

    /// Mixed-radix position of the coset of xi, first modulus most significant.
    std::size_t index_of(const AlgebraicNumber& xi) const
    {
        auto r = coordinates(xi);
        Integer idx = 0;
        for (std::size_t a = 0; a < r.size(); ++a) idx = idx * moduli_[a] + r[a];
        return idx.get_ui();
    }

    /// Canonical representative in [0,1) of the coset with the given index.
    AlgebraicNumber representative(std::size_t index) const
    {
        if (index >= order()) fail(errc::out_of_range, "coset index out of range");
        std::vector<Integer> coord(f_.size(), Integer(0));
        Integer rest = static_cast<unsigned long>(index);
        for (std::size_t a = axes_.size(); a-- > 0;) {
            coord[axes_[a]] = rest % moduli_[a];
            rest /= moduli_[a];
        }
        auto y = Uinv_.apply(coord);
        AlgebraicNumber xi = s_.xi0 * AlgebraicNumber::from_numerators(f_, y, 1);
        return xi - Rational(floor_of(xi));
    }

    std::vector<AlgebraicNumber> representatives() const
    {
        std::vector<AlgebraicNumber> out;
        for (std::size_t i = 0; i < order(); ++i) out.push_back(representative(i));
        return out;
    }

private:
    PisotPolynomial f_;
    PisotGroupStructure s_;
    AlgebraicNumber gp_;
    IntegerMatrix Uinv_;
    std::vector<std::size_t> axes_;
    std::vector<Integer> moduli_;
};

/// |D| representatives in [0,1), one per coset of Z[beta] in P_beta.
inline std::vector<AlgebraicNumber> coset_representatives(const PisotPolynomial& f)
{
    return PisotGroup(f).representatives();
}

} // namespace pisot
