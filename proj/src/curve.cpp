#include "fsieve/curve.hpp"

#include "fsieve/errors.hpp"

namespace fsieve {

CurveModel CurveModel::weierstrass(std::string label, const std::array<Rat, 5> & a)
{
    CurveModel C;
    C.kind = Kind::Weierstrass;
    C.label = std::move(label);
    C.a = a;
    if (C.discriminant().is_zero())
        throw GeometryError("singular Weierstrass model " + C.label);
    return C;
}

CurveModel CurveModel::quartic(std::string label, const Poly<Rat> & g)
{
    CurveModel C;
    C.kind = Kind::Quartic;
    C.label = std::move(label);
    C.g = g;
    if (g.degree() != 4)
        throw GeometryError("quartic model needs deg g = 4");
    if (fsieve::discriminant(g).is_zero())
        throw GeometryError("quartic g is not squarefree");
    return C;
}

Rat CurveModel::discriminant() const
{
    if (is_quartic())
        return fsieve::discriminant(g);
    const Rat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Rat b2 = a1 * a1 + Rat(4) * a2;
    Rat b4 = Rat(2) * a4 + a1 * a3;
    Rat b6 = a3 * a3 + Rat(4) * a6;
    Rat b8 = a1 * a1 * a6 + Rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - Rat(8) * b4 * b4 * b4 - Rat(27) * b6 * b6 + Rat(9) * b2 * b4 * b6;
}

bool is_good_reduction(const CurveModel & C, std::uint32_t p)
{
    if (p == 2)
        throw Unsupported("reduction at 2 is not supported");
    if (!is_prime(p))
        throw UsageError("reduction needs a prime");
    auto integral = [&](const Rat & r) { return !mpz_divisible_ui_p(r.den().get_mpz_t(), p); };
    if (C.is_quartic()) {
        for (const auto & c : C.g.coeffs())
            if (!integral(c))
                return false;
        if (C.g.lead().mod(p) == 0)
            return false;
    } else {
        for (const auto & c : C.a)
            if (!integral(c))
                return false;
    }
    Rat d = C.discriminant();
    if (!integral(d))
        return false;
    return d.mod(p) != 0;
}

std::vector<CurvePoint<FFElem>> enumerate_points(const CurveOver<FFElem> & C)
{
    using Pt = CurvePoint<FFElem>;
    const FiniteField & F = *C.like.field;
    std::vector<Pt> out;
    if (C.is_quartic()) {
        for (FFElem x : all_elements(F)) {
            FFElem s = C.g.eval(x);
            if (s.is_zero()) {
                out.push_back(Pt::affine(x, F.zero()));
                continue;
            }
            if (auto r = sqrt_in_field(s)) {
                out.push_back(Pt::affine(x, *r));
                out.push_back(Pt::affine(x, -*r));
            }
        }
        if (auto r = sqrt_in_field(C.lead)) {
            out.push_back(Pt::q_infinity(*r));
            out.push_back(Pt::q_infinity(-*r));
        }
    } else {
        out.push_back(Pt::w_infinity());
        FFElem two = F.from_int(2), four = F.from_int(4);
        FFElem half = ff_inverse(two);
        for (FFElem x : all_elements(F)) {
            FFElem b = C.a[0] * x + C.a[2];
            FFElem f = ((x + C.a[1]) * x + C.a[3]) * x + C.a[4];
            FFElem disc = b * b + four * f;
            auto r = sqrt_in_field(disc);
            if (!r)
                continue;
            out.push_back(Pt::affine(x, (-b + *r) * half));
            if (!r->is_zero())
                out.push_back(Pt::affine(x, (-b - *r) * half));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CurvePoint<FFElem>> enumerate_points(const CurveModel & C, const FiniteField & F)
{
    if (!is_good_reduction(C, F.p()))
        throw UsageError(C.label + " has bad reduction at " + std::to_string(F.p()));
    return enumerate_points(curve_over(C, F.zero()));
}

CurvePoint<FFElem> frobenius(const CurvePoint<FFElem> & P)
{
    CurvePoint<FFElem> Q = P;
    Q.x = frobenius(P.x);
    Q.y = frobenius(P.y);
    return Q;
}

CurvePoint<FFElem> embed_point(const CurvePoint<FFElem> & P, const FiniteField & F)
{
    CurvePoint<FFElem> Q = P;
    if (P.kind == CurvePoint<FFElem>::Kind::WInfinity)
        return Q;
    Q.x = F.embed(P.x);
    Q.y = F.embed(P.y);
    return Q;
}

CurvePoint<FFElem> reduce_point(const CurvePoint<Rat> & P, const FiniteField & F)
{
    using Kd = CurvePoint<Rat>::Kind;
    if (P.kind == Kd::WInfinity)
        return CurvePoint<FFElem>::w_infinity();
    CurvePoint<FFElem> Q;
    Q.kind = P.kind == Kd::Affine ? CurvePoint<FFElem>::Kind::Affine : CurvePoint<FFElem>::Kind::QInfinity;
    Q.x = F.from_rat(P.x);
    Q.y = F.from_rat(P.y);
    return Q;
}

namespace {

FFElem reduce_quad(const QuadElem & a, const FiniteField & F)
{
    FFElem r = F.from_rat(a.a());
    if (a.is_rational())
        return r;
    if (F.p() == 2 || a.d() % static_cast<long>(F.p()) == 0)
        throw ReductionError("prime ramifies in Q(sqrt " + std::to_string(a.d()) + ")");
    auto s = sqrt_in_field(F.from_int(a.d()));
    if (!s)
        throw ReductionError("sqrt " + std::to_string(a.d()) + " is not in " + F.name());
    return r + F.from_rat(a.b()) * *s;
}

} // namespace

CurvePoint<FFElem> reduce_point(const CurvePoint<QuadElem> & P, const FiniteField & F)
{
    using Kd = CurvePoint<QuadElem>::Kind;
    if (P.kind == Kd::WInfinity)
        return CurvePoint<FFElem>::w_infinity();
    CurvePoint<FFElem> Q;
    Q.kind = P.kind == Kd::Affine ? CurvePoint<FFElem>::Kind::Affine : CurvePoint<FFElem>::Kind::QInfinity;
    Q.x = reduce_quad(P.x, F);
    Q.y = reduce_quad(P.y, F);
    return Q;
}

Divisor<FFElem> reduce_divisor(const Divisor<Rat> & D, const FiniteField & F)
{
    Divisor<FFElem> R;
    for (const auto & [P, m] : D.terms)
        R.terms.emplace_back(reduce_point(P, F), m);
    R.normalize();
    return R;
}

Divisor<FFElem> reduce_divisor(const Divisor<QuadElem> & D, const FiniteField & F)
{
    Divisor<FFElem> R;
    for (const auto & [P, m] : D.terms)
        R.terms.emplace_back(reduce_point(P, F), m);
    R.normalize();
    return R;
}

Divisor<FFElem> reduce_divisor_mod_p(const CurveModel & C, const Divisor<Rat> & D, std::uint32_t p)
{
    if (!is_good_reduction(C, p))
        throw UsageError(C.label + " has bad reduction at " + std::to_string(p));
    return reduce_divisor(D, FiniteField::get(p, 1));
}

Divisor<FFElem> reduce_divisor_mod_p(const CurveModel & C, const Divisor<QuadElem> & D, std::uint32_t p)
{
    if (!is_good_reduction(C, p))
        throw UsageError(C.label + " has bad reduction at " + std::to_string(p));
    const FiniteField & Fp = FiniteField::get(p, 1);
    bool split = true;
    for (const auto & [P, m] : D.terms)
        for (const QuadElem * c : {&P.x, &P.y})
            if (!c->is_rational()) {
                if (c->d() % static_cast<long>(p) == 0)
                    throw ReductionError("prime ramifies in Q(sqrt " + std::to_string(c->d()) + ")");
                split = split && is_square(Fp.from_int(c->d()));
            }
    return reduce_divisor(D, split ? Fp : FiniteField::get(p, 2));
}

CurvePoint<QuadElem> to_quad(const CurvePoint<Rat> & P)
{
    CurvePoint<QuadElem> Q;
    Q.kind = static_cast<CurvePoint<QuadElem>::Kind>(P.kind);
    Q.x = QuadElem(P.x);
    Q.y = QuadElem(P.y);
    return Q;
}

} // namespace fsieve
