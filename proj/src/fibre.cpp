#include "fsieve/fibre.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace fsieve {

namespace {

using LocalFF = LocalExpansionData<FFElem>;

// Uses the first derivative of j when it already decides m = 1.
LocalFF local_data(const CurveOver<FFElem> & C, const JMapOver<FFElem> & J, const CurvePoint<FFElem> & P)
{
    if (P.is_affine()) {
        FFElem c = J.den.eval(P.x);
        if (!c.is_zero()) {
            FFElem a = J.num0.eval(P.x) + J.num1.eval(P.x) * P.y;
            FFElem fy = C.F.dy().eval(P.x, P.y);
            FFElem dj;
            UniformizerRule rule;
            if (!fy.is_zero()) {
                rule = UniformizerRule::XMinusX0;
                FFElem yp = -C.F.dx().eval(P.x, P.y) / fy;
                FFElem ap = J.num0.derivative().eval(P.x) + J.num1.derivative().eval(P.x) * P.y +
                            J.num1.eval(P.x) * yp;
                dj = (ap * c - a * J.den.derivative().eval(P.x)) / (c * c);
            } else {
                rule = UniformizerRule::YMinusY0;
                dj = J.num1.eval(P.x) / c;
            }
            if (!dj.is_zero()) {
                LocalFF L;
                L.P = P;
                L.gamma = {false, a / c};
                L.m = 1;
                L.eps = dj;
                L.rule = rule;
                return L;
            }
        }
    }
    return ram_data(C, J, P);
}

struct MemberField {
    CurveOver<FFElem> C;
    JMapOver<FFElem> J;
    std::vector<CurvePoint<FFElem>> pts;
    std::vector<ProjValue<FFElem>> jv;
    std::vector<std::optional<LocalFF>> loc;

    MemberField(const MemberDescriptor & d, const FiniteField & F)
        : C(curve_over(d.model, F.zero())), J(jmap_over(d.jmap, F.zero()))
    {
        pts = enumerate_points(C);
        jv.reserve(pts.size());
        for (const auto & P : pts)
            jv.push_back(j_value(C, J, P));
        loc.resize(pts.size());
    }
    const LocalFF & local(std::size_t i)
    {
        if (!loc[i])
            loc[i] = local_data(C, J, pts[i]);
        return *loc[i];
    }
};

std::uint64_t jkey(const ProjValue<FFElem> & v, const FiniteField & F)
{
    return v.infinite ? ~std::uint64_t(0) : F.index(v.value);
}

long field_of(const CurvePoint<QuadElem> & P)
{
    long d = 0;
    for (const QuadElem * c : {&P.x, &P.y})
        if (!c->is_rational())
            d = c->d();
    return d;
}

} // namespace

std::string fibre_point_str(const FibrePoint & T)
{
    return "(" + point_str(T.P1) + ", " + point_str(T.P2) + ", " + to_string(T.lambda) + ")";
}

std::vector<int> ramification_indices(const PairDescriptor & pair)
{
    std::set<int> idx;
    for (const MemberDescriptor * m : {&pair.m1, &pair.m2}) {
        BelyiProfile P = m->profile ? *m->profile : belyi_profile_quartic(*m);
        for (const auto & over : P.over)
            for (auto & [e, c] : over)
                idx.insert(e);
    }
    return {idx.begin(), idx.end()};
}

std::optional<std::string> prime_unusable(const PairDescriptor & pair, std::uint32_t p)
{
    if (!is_prime(p))
        return std::to_string(p) + " is not prime";
    if (p < 11)
        return "primes below 11 are excluded";
    for (const MemberDescriptor * m : {&pair.m1, &pair.m2})
        if (!is_good_reduction(m->model, p))
            return "bad reduction of " + m->label;
    for (int e : ramification_indices(pair))
        if (e % static_cast<long>(p) == 0)
            return "divides the ramification index " + std::to_string(e);
    return std::nullopt;
}

std::vector<FibrePoint> fibre_points_over(const PairDescriptor & pair, const FiniteField & F)
{
    if (auto why = prime_unusable(pair, F.p()))
        throw UsageError("prime " + std::to_string(F.p()) + " is not usable: " + *why);
    MemberField A(pair.m1, F), B(pair.m2, F);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_j;
    for (std::size_t i = 0; i < B.pts.size(); ++i)
        by_j[jkey(B.jv[i], F)].push_back(i);
    std::vector<FibrePoint> out;
    for (std::size_t i = 0; i < A.pts.size(); ++i) {
        auto it = by_j.find(jkey(A.jv[i], F));
        if (it == by_j.end())
            continue;
        const LocalFF & L1 = A.local(i);
        for (std::size_t j : it->second) {
            const LocalFF & L2 = B.local(j);
            int d = std::gcd(L1.m, L2.m);
            FFElem r = L1.eps / L2.eps;
            for (const FFElem & lam : dth_roots(r, d)) {
                FibrePoint T;
                T.P1 = A.pts[i];
                T.P2 = B.pts[j];
                T.lambda = lam;
                T.m = L1.m;
                T.n = L2.m;
                T.d = d;
                T.gamma = A.jv[i];
                out.push_back(std::move(T));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FibrePoint frobenius_on_fibre_point(const FibrePoint & T)
{
    FibrePoint S = T;
    S.P1 = frobenius(T.P1);
    S.P2 = frobenius(T.P2);
    S.lambda = frobenius(T.lambda);
    if (!T.gamma.infinite)
        S.gamma.value = frobenius(T.gamma.value);
    return S;
}

SymSquare sym_square_enumerate(const PairDescriptor & pair, std::uint32_t p)
{
    SymSquare S;
    S.p = p;
    S.points = fibre_points_over(pair, FiniteField::get(p, 2));
    const auto & pts = S.points;
    S.frob.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        FibrePoint T = frobenius_on_fibre_point(pts[i]);
        auto it = std::lower_bound(pts.begin(), pts.end(), T);
        if (it == pts.end() || !(*it == T))
            throw std::logic_error("Frobenius image of " + fibre_point_str(pts[i]) + " is missing");
        S.frob[i] = static_cast<std::uint32_t>(it - pts.begin());
        if (S.frob[i] == i)
            S.rational.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::size_t a = 0; a < S.rational.size(); ++a)
        for (std::size_t b = a; b < S.rational.size(); ++b)
            S.elems.emplace_back(S.rational[a], S.rational[b]);
    for (std::uint32_t i = 0; i < pts.size(); ++i)
        if (i < S.frob[i])
            S.elems.emplace_back(i, S.frob[i]);
    return S;
}

// ---- characteristic zero

std::string special_point_str(const SpecialPoint & s)
{
    std::string f = s.field == 0 ? "Q" : "Q(sqrt(" + std::to_string(s.field) + "))";
    return "(" + point_str(s.P1) + ", " + point_str(s.P2) + ", lambda=" + s.lambda.str() + ") over " + f +
           " above " + branch_name(s.branch) + " [m=" + std::to_string(s.m) + ", n=" + std::to_string(s.n) + "]";
}

namespace {

struct Candidate {
    CurvePoint<QuadElem> P;
    LocalExpansionData<QuadElem> L;
    long field = 0;
};

std::vector<mpz_class> divisors(mpz_class n)
{
    n = abs(n);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Exhaustive search for integer factors a x + c and a x^2 + b x + c of the primitive
// integral multiple of f (Gauss's lemma), with |b| bounded through Cauchy's root bound.
std::optional<std::string> no_small_factor(const Poly<Rat> & f)
{
    mpz_class L = 1;
    for (const auto & c : f.coeffs())
        L = lcm(L, c.den());
    std::vector<mpz_class> F;
    mpz_class g = 0;
    for (const auto & c : f.coeffs()) {
        F.push_back(c.num() * (L / c.den()));
        g = gcd(g, F.back());
    }
    for (auto & c : F)
        c /= g;
    const mpz_class & A = F.back();
    const mpz_class & C0 = F.front();
    if (C0 == 0)
        return std::nullopt;
    mpz_class cap("1000000000000");
    if (abs(A) > cap || abs(C0) > cap)
        return std::nullopt;
    mpz_class M = 0;
    for (const auto & c : F)
        M = std::max(M, mpz_class(abs(c)));
    mpz_class R = 1 + (M + abs(A) - 1) / abs(A); // ceiling of 1 + max |F_i / F_n|
    auto da = divisors(A), dc = divisors(C0);
    double work = 0;
    for (const auto & a : da)
        work += static_cast<double>(dc.size()) * 2 * (4 * a.get_d() * R.get_d() + 2);
    if (work > 2e6)
        return std::nullopt;
    std::vector<Rat> coeffs(F.begin(), F.end());
    Poly<Rat> P(coeffs, Rat(0));
    for (const auto & a : da)
        for (const auto & c0 : dc)
            for (int s : {1, -1}) {
                mpz_class c = s * c0;
                if (P.eval(Rat(-c, a)).is_zero())
                    return std::nullopt;
                mpz_class bmax = 2 * a * R;
                for (mpz_class b = -bmax; b <= bmax; ++b) {
                    Poly<Rat> q({Rat(c), Rat(b), Rat(a)}, Rat(0));
                    if ((P % q).is_zero())
                        return std::nullopt;
                }
            }
    return std::string("has no factor of degree <= 2 over Q (exhaustive integer search)");
}

// Roots of f in Q or in a quadratic field; nullopt when f has degree >= 3 and a prime
// certifies that it has no root in any quadratic field.
std::optional<std::vector<QuadElem>> small_roots(const Poly<Rat> & f, std::string & note, bool & certified)
{
    certified = true;
    if (f.degree() == 1)
        return std::vector<QuadElem>{QuadElem(-f[0] / f[1])};
    if (f.degree() == 2) {
        Rat disc = f[1] * f[1] - Rat(4) * f[2] * f[0];
        QuadElem s = QuadElem::sqrt_of(disc);
        QuadElem two_a(Rat(2) * f[2]);
        return std::vector<QuadElem>{(QuadElem(-f[1]) + s) / two_a, (QuadElem(-f[1]) - s) / two_a};
    }
    for (std::uint32_t p = 11; p < 200; p += 2) {
        if (!is_prime(p))
            continue;
        try {
            if (f.lead().num() % p == 0)
                continue;
            const FiniteField & F = FiniteField::get(p, 2);
            if (roots_in_field(lift_poly(f, F.zero())).empty()) {
                note = "factor of degree " + std::to_string(f.degree()) + " has no root in F_" + std::to_string(p) +
                       "^2";
                return std::nullopt;
            }
        } catch (const ReductionError &) {
        }
    }
    if (auto why = no_small_factor(f)) {
        note = "factor of degree " + std::to_string(f.degree()) + " " + *why;
        return std::nullopt;
    }
    certified = false;
    return std::nullopt;
}

} // namespace

SpecialPointReport classify_special_points(const PairDescriptor & pair, int field_degree_bound)
{
    if (field_degree_bound != 2)
        throw Unsupported("only rational and quadratic points are classified");
    SpecialPointReport rep;
    rep.pair = pair.label;
    std::array<std::array<std::vector<Candidate>, 3>, 2> cand;
    const MemberDescriptor * members[2] = {&pair.m1, &pair.m2};
    for (int k = 0; k < 2; ++k) {
        const MemberDescriptor & md = *members[k];
        auto C = curve_over(md.model, QuadElem());
        auto J = jmap_over(md.jmap, QuadElem());
        for (int b = 0; b < 3; ++b) {
            if (!md.special_fibres[b]) {
                rep.sufficient = false;
                rep.insufficient_reason = md.label + " has no fibre data above " + branch_name(b);
                return rep;
            }
            std::vector<CurvePoint<QuadElem>> pts;
            for (const auto & ff : *md.special_fibres[b]) {
                std::string note;
                bool certified = true;
                auto roots = small_roots(ff.factor, note, certified);
                if (!certified) {
                    rep.sufficient = false;
                    rep.insufficient_reason = md.label + ": no prime certifies the fibre factor " + ff.factor.str();
                    return rep;
                }
                if (!roots) {
                    rep.notes.push_back(md.label + " above " + branch_name(b) + ": " + note);
                    continue;
                }
                for (const QuadElem & x : *roots) {
                    std::optional<QuadElem> s;
                    QuadElem half_h(0), disc;
                    if (md.model.is_quartic()) {
                        disc = C.g.eval(x);
                    } else {
                        QuadElem h = C.a[0] * x + C.a[2];
                        QuadElem f = ((x + C.a[1]) * x + C.a[3]) * x + C.a[4];
                        disc = h * h + QuadElem(4) * f;
                        half_h = h / QuadElem(2);
                    }
                    if (disc.is_rational() && x.is_rational())
                        s = QuadElem::sqrt_of(disc.a());
                    else
                        s = quad_sqrt(disc, x.is_rational() ? 0 : x.d());
                    if (!s)
                        continue; // the point has degree 4
                    QuadElem half_s = *s / QuadElem(2);
                    if (!md.model.is_quartic()) {
                        pts.push_back(CurvePoint<QuadElem>::affine(x, -half_h + half_s));
                        if (!s->is_zero())
                            pts.push_back(CurvePoint<QuadElem>::affine(x, -half_h - half_s));
                    } else {
                        pts.push_back(CurvePoint<QuadElem>::affine(x, *s));
                        if (!s->is_zero())
                            pts.push_back(CurvePoint<QuadElem>::affine(x, -*s));
                    }
                }
            }
            if (md.model.is_quartic()) {
                QuadElem v = QuadElem::sqrt_of(md.model.g.lead());
                pts.push_back(CurvePoint<QuadElem>::q_infinity(v));
                pts.push_back(CurvePoint<QuadElem>::q_infinity(-v));
            } else {
                pts.push_back(CurvePoint<QuadElem>::w_infinity());
            }
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            for (const auto & P : pts) {
                Candidate c;
                c.P = P;
                c.field = field_of(P);
                c.L = ram_data(C, J, P, 8);
                bool hit = b == 2 ? c.L.gamma.infinite
                                  : (!c.L.gamma.infinite && c.L.gamma.value == QuadElem(b == 0 ? 0 : 1728));
                if (hit)
                    cand[k][b].push_back(std::move(c));
            }
        }
    }
    QuadElem omega(Rat(-1) / Rat(2), Rat(1) / Rat(2), -3);
    for (int b = 0; b < 3; ++b) {
        for (const auto & c1 : cand[0][b]) {
            for (const auto & c2 : cand[1][b]) {
                if (c1.field && c2.field && c1.field != c2.field)
                    continue;
                long K = c1.field ? c1.field : c2.field;
                int d = std::gcd(c1.L.m, c2.L.m);
                QuadElem r = c1.L.eps / c2.L.eps;
                std::vector<std::pair<QuadElem, long>> lams; // lambda and its field
                if (d == 1) {
                    lams.emplace_back(r, K);
                } else if (d == 2) {
                    std::optional<QuadElem> s;
                    if (K == 0) {
                        s = QuadElem::sqrt_of(r.a());
                    } else {
                        s = quad_sqrt(r, K);
                    }
                    if (s) {
                        long F = s->is_rational() ? K : s->d();
                        lams.emplace_back(*s, F);
                        lams.emplace_back(-*s, F);
                    }
                } else if (d == 3) {
                    auto c = quad_cbrt(r);
                    if (c) {
                        lams.emplace_back(*c, K);
                        if (K == 0 || K == -3) {
                            lams.emplace_back(*c * omega, -3);
                            lams.emplace_back(*c * omega * omega, -3);
                        }
                    }
                } else {
                    throw Unsupported("lambda equation of degree " + std::to_string(d));
                }
                for (const auto & [lam, F] : lams) {
                    SpecialPoint s;
                    s.branch = b;
                    s.P1 = c1.P;
                    s.P2 = c2.P;
                    s.lambda = lam;
                    s.m = c1.L.m;
                    s.n = c2.L.m;
                    s.d = d;
                    s.field = F;
                    (s.rational() ? rep.rational_count : rep.quadratic_count)[b] += 1;
                    rep.points.push_back(std::move(s));
                }
            }
        }
    }
    return rep;
}

} // namespace fsieve
