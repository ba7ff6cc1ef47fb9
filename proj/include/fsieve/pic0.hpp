#pragma once

#include "fsieve/linalg.hpp"
#include "fsieve/localgeom.hpp"

#include <string>

namespace fsieve {

/// D is a sum of x-fibres: i-stable, with even multiplicity at every fixed point of i.
/// (R1 + R2 for two branch points is i-stable but not a fibre.)
template <class K>
bool is_fibral(const CurveOver<K> & C, const Divisor<K> & D)
{
    Divisor<K> I;
    for (const auto & [P, m] : D.terms) {
        CurvePoint<K> Q = quartic_involution(C, P);
        if (Q == P && m % 2 != 0)
            return false;
        I.terms.emplace_back(Q, m);
    }
    I.normalize();
    return I == D;
}

template <class K>
Divisor<K> involute(const CurveOver<K> & C, const Divisor<K> & D)
{
    Divisor<K> I;
    for (const auto & [P, m] : D.terms)
        I.terms.emplace_back(quartic_involution(C, P), m);
    I.normalize();
    return I;
}

namespace detail {

// Rows "coefficient of t^e vanishes" for every point of Z, for the functions whose
// local series are produced by `basis(branch)`; each point at infinity may carry a
// pole of order `pole`.
template <class K, class Basis>
Matrix<K> vanishing_rows(const CurveOver<K> & C, const Divisor<K> & Z, int pole, Basis && basis)
{
    Matrix<K> rows;
    for (const auto & [P, k] : Z.terms) {
        int allowance = P.is_affine() ? 0 : pole;
        int target = k - allowance; // ord_P(f) >= target
        int low = -allowance;
        Branch<K> b = local_branch(C, P, k + pole + 3);
        std::vector<TruncSeries<K>> fs = basis(b);
        for (int e = low; e < target; ++e) {
            std::vector<K> row;
            for (const auto & f : fs)
                row.push_back(f.coeff(e));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace detail

/// D ~ E for effective divisors of equal degree n >= 1 on a quartic model:
/// some nonzero a(x) + b(x) y with deg a <= n, deg b <= n - 2 vanishes on D + i(E).
template <class K>
bool lin_equiv_effective(const CurveOver<K> & C, const Divisor<K> & D, const Divisor<K> & E)
{
    if (!C.is_quartic())
        throw UsageError("linear equivalence test needs a quartic model");
    if (!D.is_effective() || !E.is_effective() || D.degree() != E.degree())
        throw UsageError("linear equivalence test needs effective divisors of equal degree");
    int n = D.degree();
    if (n == 0 || D == E)
        return true;
    Divisor<K> Z = D + involute(C, E);
    auto basis = [&](const Branch<K> & b) {
        using S = TruncSeries<K>;
        std::vector<S> fs;
        S xp = S::constant(one_like(C.like));
        for (int i = 0; i <= n; ++i) {
            fs.push_back(xp);
            if (i <= n - 2)
                fs.push_back(xp * b.y);
            xp = xp * b.x;
        }
        return fs;
    };
    Matrix<K> M = detail::vanishing_rows(C, Z, n, basis);
    return matrix_rank(M) < 2 * n;
}

/// D ~ E for effective degree-2 divisors on a quartic model.
template <class K>
bool lin_equiv_deg2(const CurveOver<K> & C, const Divisor<K> & D, const Divisor<K> & E)
{
    if (!C.is_quartic())
        throw UsageError("linear equivalence test needs a quartic model");
    if (!D.is_effective() || !E.is_effective() || D.degree() != 2 || E.degree() != 2)
        throw UsageError("lin_equiv_deg2 needs effective divisors of degree 2");
    if (D == E)
        return true;
    bool fd = is_fibral(C, D), fe = is_fibral(C, E);
    if (fd && fe)
        return true;
    if (fd != fe)
        return false;
    // y - (q0 + q1 x + q2 x^2) vanishing on D + i(E)
    Divisor<K> Z = D + involute(C, E);
    auto basis = [&](const Branch<K> & b) {
        using S = TruncSeries<K>;
        S one = S::constant(one_like(C.like));
        return std::vector<S>{one, b.x, b.x * b.x, b.y};
    };
    // columns q0, q1, q2; the y column is the right-hand side
    return system_consistent(detail::vanishing_rows(C, Z, 2, basis));
}

template <class K>
struct DivisorClass {
    Divisor<K> rep; // degree 0
};

template <class K>
DivisorClass<K> class_of(const Divisor<K> & D, const Divisor<K> & base)
{
    if (D.degree() != base.degree())
        throw UsageError("Abel-Jacobi map needs divisors of equal degree");
    return {D - base};
}

template <class K>
bool class_eq(const CurveOver<K> & C, const DivisorClass<K> & a, const DivisorClass<K> & b)
{
    if (a.rep.degree() != 0 || b.rep.degree() != 0)
        throw UsageError("classes must have degree 0");
    Divisor<K> d = a.rep - b.rep;
    return lin_equiv_effective(C, d.positive_part(), d.negative_part());
}

/// #Pic^0 over F_p, which is #X(F_p) in genus one.
long pic0_order(const CurveModel & C, const FiniteField & F);

/// Jacobian of y^2 = g(x) from the invariants I, J, as an integral model
/// minimized at 3.
CurveModel quartic_jacobian(const Poly<Rat> & g, const std::string & label = "Jac");

/// {num1/den, num2/den}, a basis of a Riemann-Roch pencil.
template <class K>
struct PencilBasis {
    Poly<K> num1, num2, den;
};

/// Pencil L(D) for an i-stable effective degree-2 divisor D.
template <class K>
PencilBasis<K> rr_pencil_basis(const CurveOver<K> & C, const Divisor<K> & D)
{
    if (!D.is_effective() || D.degree() != 2)
        throw UsageError("pencil needs an effective divisor of degree 2");
    if (!is_fibral(C, D))
        throw UsageError("pencil needs an involution-stable divisor");
    const K & z = C.like;
    K one = one_like(z);
    Poly<K> x = Poly<K>::x(z);
    const CurvePoint<K> & P = D.terms.front().first;
    if (!P.is_affine())
        return {Poly<K>::constant(one), x, Poly<K>::constant(one)};
    return {Poly<K>::constant(one), x, Poly<K>::linear_root(P.x)};
}

} // namespace fsieve
