#include "fsieve/localgeom.hpp"

#include "fsieve/descriptors.hpp"

#include <numeric>
#include <sstream>

namespace fsieve {

int BelyiProfile::source_genus() const
{
    if (!consistent())
        throw UsageError("inconsistent ramification profile");
    int pts = points(0) + points(1) + points(2);
    int twice = 2 + degree - pts; // 2g = 2 - 2 deg + sum (deg - points)
    if (twice % 2)
        throw UsageError("profile violates Riemann-Hurwitz parity");
    return twice / 2;
}

std::string BelyiProfile::str() const
{
    std::ostringstream os;
    os << "degree " << degree;
    for (int b = 0; b < 3; ++b) {
        os << "; " << branch_name(b) << ":";
        bool first = true;
        for (auto it = over[b].rbegin(); it != over[b].rend(); ++it) {
            os << (first ? " " : " + ") << it->second << "x" << it->first;
            first = false;
        }
    }
    return os.str();
}

int rh_genus_fibre_product(const BelyiProfile & a, const BelyiProfile & b)
{
    if (!a.consistent() || !b.consistent())
        throw UsageError("inconsistent ramification profile");
    long N = static_cast<long>(a.degree) * b.degree;
    long pts = 0;
    for (int br = 0; br < 3; ++br)
        for (auto & [m, cm] : a.over[br])
            for (auto & [n, cn] : b.over[br])
                pts += static_cast<long>(std::gcd(m, n)) * cm * cn;
    long twice = 2 + N - pts;
    if (twice % 2)
        throw UsageError("fibre product violates Riemann-Hurwitz parity");
    return static_cast<int>(twice / 2);
}

std::array<Poly<Rat>, 3> fibre_polynomials(const CurveModel & C, const JMap & J)
{
    Poly<Rat> c1728 = Poly<Rat>::constant(Rat(1728));
    std::array<Poly<Rat>, 3> out;
    if (!J.involves_y()) {
        out[0] = J.num0;
        out[1] = J.num0 - c1728 * J.den;
        out[2] = J.den;
        return out;
    }
    if (C.is_quartic())
        throw Unsupported("y-dependent j-map on a quartic model");
    // norm of (A - gamma C) + B y down to Q[x]
    Poly<Rat> h({C.a[2], C.a[0]});
    Poly<Rat> f({C.a[4], C.a[3], C.a[1], Rat(1)});
    auto norm = [&](const Poly<Rat> & A, const Poly<Rat> & B) { return A * A - A * B * h - B * B * f; };
    out[0] = norm(J.num0, J.num1);
    out[1] = norm(J.num0 - c1728 * J.den, J.num1);
    out[2] = J.den;
    return out;
}

namespace {

void add_affine_fibre(std::map<int, int> & bucket, const Poly<Rat> & f, const Poly<Rat> & g, bool on_line)
{
    for (const auto & [h, e] : squarefree_decomposition(f)) {
        if (on_line) {
            bucket[e] += h.degree();
            continue;
        }
        int r = poly_gcd(h, g).degree();
        if (h.degree() - r > 0)
            bucket[e] += 2 * (h.degree() - r);
        if (r > 0)
            bucket[2 * e] += r;
    }
}

BelyiProfile profile_in_x(const Poly<Rat> & N, const Poly<Rat> & D, const Poly<Rat> * g)
{
    if (poly_gcd(N, D).degree() > 0)
        throw UsageError("j-map numerator and denominator share a factor");
    bool line = g == nullptr;
    int sheets = line ? 1 : 2;
    BelyiProfile P;
    P.degree = sheets * std::max(N.degree(), D.degree());
    Poly<Rat> c1728 = Poly<Rat>::constant(Rat(1728));
    Poly<Rat> N1 = N - c1728 * D;
    Poly<Rat> dummy;
    add_affine_fibre(P.over[0], N, line ? dummy : *g, line);
    add_affine_fibre(P.over[1], N1, line ? dummy : *g, line);
    add_affine_fibre(P.over[2], D, line ? dummy : *g, line);
    // points over x = infinity (x is unramified there on a quartic model)
    int dn = N.degree(), dd = D.degree();
    if (dn > dd)
        P.over[2][dn - dd] += sheets;
    else if (dn < dd)
        P.over[0][dd - dn] += sheets;
    else {
        Rat ginf = N.lead() / D.lead();
        if (ginf == Rat(1728))
            P.over[1][dd - N1.degree()] += sheets;
    }
    return P;
}

} // namespace

BelyiProfile belyi_profile_quartic(const CurveModel & C, const JMap & J)
{
    if (!C.is_quartic())
        throw UsageError("quartic profile needs a quartic model");
    if (J.involves_y())
        throw Unsupported("j-map depends on y; the profile must come from descriptor data");
    BelyiProfile P = profile_in_x(J.num0, J.den, &C.g);
    if (J.degree && J.degree != P.degree)
        throw UsageError("declared j-map degree " + std::to_string(J.degree) + " but the map has degree " +
                         std::to_string(P.degree));
    return P;
}

BelyiProfile belyi_profile_quartic(const MemberDescriptor & d)
{
    return belyi_profile_quartic(d.model, d.jmap);
}

BelyiProfile belyi_profile_rational(const Poly<Rat> & N, const Poly<Rat> & D)
{
    return profile_in_x(N, D, nullptr);
}

VerificationReport verify_profile(const MemberDescriptor & d, const std::vector<std::uint32_t> & primes)
{
    VerificationReport rep;
    rep.subject = d.label + " ramification profile";
    if (!d.profile) {
        rep.add("profile present", false, "descriptor has no profile");
        return rep;
    }
    const BelyiProfile & prof = *d.profile;
    rep.add("degree sums", prof.consistent(), prof.str());
    if (!prof.consistent())
        return rep;
    rep.add("degree matches j-map", prof.degree == d.jmap.degree,
            std::to_string(prof.degree) + " vs " + std::to_string(d.jmap.degree));
    int pts = prof.points(0) + prof.points(1) + prof.points(2);
    if ((prof.degree - pts) % 2 != 0) {
        rep.add("Riemann-Hurwitz parity", false, std::to_string(pts) + " points over a degree " +
                                                     std::to_string(prof.degree) + " cover");
        return rep;
    }
    int genus = prof.source_genus();
    rep.add("Riemann-Hurwitz genus 1", genus == 1, "genus " + std::to_string(genus));
    auto fib = fibre_polynomials(d.model, d.jmap);
    for (auto p : primes) {
        std::string tag = "p=" + std::to_string(p) + " ";
        try {
            if (!is_good_reduction(d.model, p)) {
                rep.add(tag + "good reduction", false, "bad reduction");
                continue;
            }
            const FiniteField & F = FiniteField::get(p, 4);
            auto C = curve_over(d.model, F.zero());
            auto J = jmap_over(d.jmap, F.zero());
            for (int b = 0; b < 3; ++b) {
                std::vector<CurvePoint<FFElem>> cand;
                Poly<FFElem> fp = lift_poly(fib[b], F.zero());
                if (fp.is_zero()) {
                    rep.add(tag + "fibre polynomial reduces", false, branch_name(b));
                    continue;
                }
                for (const FFElem & x0 : roots_in_field(fp)) {
                    if (C.is_quartic()) {
                        FFElem s = C.g.eval(x0);
                        if (auto r = sqrt_in_field(s)) {
                            cand.push_back(CurvePoint<FFElem>::affine(x0, *r));
                            if (!r->is_zero())
                                cand.push_back(CurvePoint<FFElem>::affine(x0, -*r));
                        }
                    } else {
                        FFElem hb = C.a[0] * x0 + C.a[2];
                        FFElem f = ((x0 + C.a[1]) * x0 + C.a[3]) * x0 + C.a[4];
                        if (auto r = sqrt_in_field(hb * hb + F.from_int(4) * f)) {
                            FFElem half = ff_inverse(F.from_int(2));
                            cand.push_back(CurvePoint<FFElem>::affine(x0, (-hb + *r) * half));
                            if (!r->is_zero())
                                cand.push_back(CurvePoint<FFElem>::affine(x0, (-hb - *r) * half));
                        }
                    }
                }
                if (C.is_quartic()) {
                    if (auto r = sqrt_in_field(C.lead)) {
                        cand.push_back(CurvePoint<FFElem>::q_infinity(*r));
                        cand.push_back(CurvePoint<FFElem>::q_infinity(-*r));
                    }
                } else {
                    cand.push_back(CurvePoint<FFElem>::w_infinity());
                }
                std::map<int, int> found;
                for (const auto & P : cand) {
                    auto e = ram_data(C, J, P);
                    bool hit = b == 2 ? e.gamma.infinite
                                      : (!e.gamma.infinite && e.gamma.value == F.from_int(b == 0 ? 0 : 1728));
                    if (hit)
                        found[e.m] += 1;
                }
                bool sub = true;
                int total = 0;
                std::string witness;
                for (auto & [m, c] : found) {
                    total += m * c;
                    auto it = prof.over[b].find(m);
                    int claimed = it == prof.over[b].end() ? 0 : it->second;
                    if (c > claimed) {
                        sub = false;
                        witness = std::to_string(c) + " points of index " + std::to_string(m) + " above " +
                                  branch_name(b) + ", profile allows " + std::to_string(claimed);
                    }
                }
                rep.add(tag + "fibre above " + branch_name(b) + " within profile", sub, witness);
                if (total == prof.degree)
                    rep.add(tag + "split fibre above " + branch_name(b) + " matches", found == prof.over[b],
                            "split over F_p^4");
            }
        } catch (const std::exception & ex) {
            rep.add(tag + "computation", false, ex.what());
        }
    }
    return rep;
}

} // namespace fsieve
