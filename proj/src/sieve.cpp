#include "fsieve/sieve.hpp"

#include "fsieve/ecgroup.hpp"

#include <map>
#include <atomic>
#include <mutex>
#include <thread>

namespace fsieve {

namespace {

Divisor<QuadElem> to_quad(const Divisor<Rat> & D)
{
    std::vector<std::pair<CurvePoint<QuadElem>, int>> t;
    for (const auto & [P, m] : D.terms)
        t.emplace_back(to_quad(P), m);
    return Divisor<QuadElem>(std::move(t));
}

CurvePoint<QuadElem> conj(const CurvePoint<QuadElem> & P)
{
    CurvePoint<QuadElem> Q = P;
    Q.x = P.x.conj();
    Q.y = P.y.conj();
    return Q;
}

std::optional<CurvePoint<Rat>> to_rat(const CurvePoint<QuadElem> & P)
{
    if (!P.x.is_rational() || !P.y.is_rational())
        return std::nullopt;
    CurvePoint<Rat> Q;
    Q.kind = static_cast<CurvePoint<Rat>::Kind>(P.kind);
    Q.x = P.x.a();
    Q.y = P.y.a();
    return Q;
}

// D - E ~ 0 for a degree-0 divisor difference, with D effective.
template <class K>
bool equiv_to_class(const CurveOver<K> & C, const Divisor<K> & D, const Divisor<K> & base_plus_rep)
{
    Divisor<K> pos = base_plus_rep.positive_part(), neg = base_plus_rep.negative_part();
    if (neg.empty() && pos.degree() == 2 && D.degree() == 2)
        return lin_equiv_deg2(C, D, pos);
    return lin_equiv_effective(C, D + neg, pos);
}

} // namespace

std::string j1_label(const CurvePoint<Rat> & P)
{
    return P.is_affine() ? "[" + point_str(P) + "-inf]" : "[0]";
}

std::string j2_label(const Divisor<Rat> & D)
{
    if (D.empty())
        return "[0]";
    std::string s;
    for (int sign : {1, -1})
        for (const auto & [P, m] : D.terms) {
            if (m * sign <= 0)
                continue;
            if (!s.empty() || sign < 0)
                s += sign > 0 ? "+" : "-";
            int am = m < 0 ? -m : m;
            if (am != 1)
                s += std::to_string(am) + "*";
            s += point_str(P);
        }
    return "[" + s + "]";
}

SieveGroups sieve_groups(const PairDescriptor & pair)
{
    SieveGroups G;
    auto C1 = curve_over(pair.m1.model, Rat(0));
    std::vector<CurvePoint<Rat>> gens;
    for (const auto & g : pair.m1.mw.generators)
        gens.push_back(g.divisor.positive_part().terms.at(0).first);
    auto span = ec_span(C1, gens);
    G.j1.push_back(CurvePoint<Rat>::w_infinity());
    for (const auto & P : span)
        if (P.is_affine())
            G.j1.push_back(P);
    auto C2 = curve_over(pair.m2.model, Rat(0));
    std::vector<Divisor<Rat>> elems{Divisor<Rat>{}};
    for (const auto & g : pair.m2.mw.generators) {
        std::vector<Divisor<Rat>> next;
        for (const auto & e : elems)
            for (long k = 0; k < g.order; ++k)
                next.push_back(e + static_cast<int>(k) * g.divisor);
        elems = std::move(next);
    }
    for (const auto & e : elems) {
        bool dup = false;
        for (const auto & f : G.j2)
            dup = dup || class_eq(C2, DivisorClass<Rat>{e}, DivisorClass<Rat>{f});
        if (!dup)
            G.j2.push_back(e);
    }
    for (const auto & P : G.j1)
        G.j1_labels.push_back(j1_label(P));
    for (const auto & D : G.j2)
        G.j2_labels.push_back(j2_label(D));
    return G;
}

PrimeResult alpha_image(const PairDescriptor & pair, const SieveGroups & G, std::uint32_t p)
{
    PrimeResult R;
    R.p = p;
    if (auto why = prime_unusable(pair, p)) {
        R.skip_reason = *why;
        return R;
    }
    const FiniteField & F = FiniteField::get(p, 2);
    auto C1 = curve_over(pair.m1.model, F.zero());
    auto C2 = curve_over(pair.m2.model, F.zero());
    std::map<CurvePoint<FFElem>, std::size_t> j1_index;
    std::vector<Divisor<FFElem>> targets;
    try {
        for (std::size_t i = 0; i < G.j1.size(); ++i)
            j1_index[reduce_point(G.j1[i], F)] = i;
        for (const auto & rep : G.j2)
            targets.push_back(reduce_divisor(pair.m2.base_divisor + rep, F));
    } catch (const ReductionError & e) {
        R.skip_reason = e.what();
        return R;
    }
    if (j1_index.size() != G.j1.size()) {
        R.skip_reason = "J1(Q) does not inject into the reduction";
        return R;
    }
    SymSquare S = sym_square_enumerate(pair, p);
    R.n1 = S.n1();
    R.n2 = S.n2();
    R.sym = S.elems.size();
    R.hit.assign(G.size(), 0);
    using Key = std::pair<CurvePoint<FFElem>, CurvePoint<FFElem>>;
    std::map<Key, long> j2_cache;
    const std::size_t nj2 = G.j2.size();
    for (const auto & [a, b] : S.elems) {
        const FibrePoint & T = S.points[a];
        const FibrePoint & U = S.points[b];
        auto it = j1_index.find(ec_add(C1, T.P1, U.P1));
        if (it == j1_index.end())
            continue;
        Key key = T.P2 < U.P2 ? Key{T.P2, U.P2} : Key{U.P2, T.P2};
        auto c = j2_cache.find(key);
        if (c == j2_cache.end()) {
            Divisor<FFElem> D({{T.P2, 1}, {U.P2, 1}});
            long found = -1;
            for (std::size_t k = 0; k < nj2 && found < 0; ++k)
                if (equiv_to_class(C2, D, targets[k]))
                    found = static_cast<long>(k);
            c = j2_cache.emplace(key, found).first;
        }
        if (c->second >= 0)
            R.hit[it->second * nj2 + static_cast<std::size_t>(c->second)] = 1;
    }
    R.used = true;
    return R;
}

std::optional<bool> alpha_membership(const PairDescriptor & pair, std::uint32_t p, const DivisorClass<Rat> & t1,
                                     const DivisorClass<Rat> & t2)
{
    SieveGroups G = sieve_groups(pair);
    auto C1 = curve_over(pair.m1.model, Rat(0));
    auto C2 = curve_over(pair.m2.model, Rat(0));
    CurvePoint<Rat> Q = CurvePoint<Rat>::w_infinity();
    for (const auto & [P, m] : t1.rep.terms)
        Q = ec_add(C1, Q, ec_mul(C1, P, m));
    auto i1 = std::find(G.j1.begin(), G.j1.end(), Q);
    if (i1 == G.j1.end())
        throw UsageError("t1 is not a class of J1(Q)");
    std::size_t i2 = G.j2.size();
    for (std::size_t k = 0; k < G.j2.size(); ++k)
        if (class_eq(C2, t2, DivisorClass<Rat>{G.j2[k]}))
            i2 = k;
    if (i2 == G.j2.size())
        throw UsageError("t2 is not a class of J2(Q)");
    PrimeResult R = alpha_image(pair, G, p);
    if (!R.used)
        return std::nullopt;
    return R.hit[static_cast<std::size_t>(i1 - G.j1.begin()) * G.j2.size() + i2] != 0;
}

std::vector<std::uint32_t> SieveReport::used_primes() const
{
    std::vector<std::uint32_t> out;
    for (const auto & r : primes)
        if (r.used)
            out.push_back(r.p);
    return out;
}

std::uint32_t SieveReport::eliminating_prime(std::size_t i1, std::size_t i2) const
{
    for (const auto & r : primes)
        if (r.used && !r.hit[i1 * groups.j2.size() + i2])
            return r.p;
    return 0;
}

SieveReport run_sieve(const PairDescriptor & pair, const SieveOptions & opt)
{
    if (opt.lo > opt.hi)
        throw UsageError("empty prime range");
    SieveReport rep;
    rep.pair = pair.label;
    rep.groups = sieve_groups(pair);
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t p = opt.lo; p <= opt.hi; ++p)
        if (is_prime(p))
            candidates.push_back(p);
    rep.primes.resize(candidates.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= candidates.size())
                return;
            try {
                rep.primes[i] = alpha_image(pair, rep.groups, candidates[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(candidates.size())));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < n; ++k)
            pool.emplace_back(work);
        for (auto & t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    if (rep.used_primes().empty())
        throw UsageError("no usable primes in [" + std::to_string(opt.lo) + ", " + std::to_string(opt.hi) + "]");
    for (std::size_t i1 = 0; i1 < rep.groups.j1.size(); ++i1)
        for (std::size_t i2 = 0; i2 < rep.groups.j2.size(); ++i2)
            if (rep.eliminating_prime(i1, i2) == 0)
                rep.survivors.emplace_back(i1, i2);
    return rep;
}

SieveReport run_sieve(const PairDescriptor & pair)
{
    SieveOptions opt;
    opt.lo = pair.prime_lo;
    opt.hi = pair.prime_hi;
    return run_sieve(pair, opt);
}

std::string pencil_str(const Poly<Rat> & h)
{
    if (h.degree() <= 0)
        return "{1, x}";
    std::string hs = h.str();
    return "{1/(" + hs + "), x/(" + hs + ")}";
}

std::vector<RationalJVerdict> rational_j_conclusion(const PairDescriptor & pair, const SieveReport & report)
{
    std::vector<RationalJVerdict> out;
    const auto & m2 = pair.m2;
    auto C = curve_over(m2.model, Rat(0));
    auto CK = curve_over(m2.model, QuadElem());
    QuadElem v = QuadElem::sqrt_of(m2.model.g.lead());
    Divisor<QuadElem> inf_fibre({{CurvePoint<QuadElem>::q_infinity(v), 1}, {CurvePoint<QuadElem>::q_infinity(-v), 1}});
    for (const auto & [i1, i2] : report.survivors) {
        RationalJVerdict V;
        V.i1 = i1;
        V.i2 = i2;
        Divisor<Rat> E = m2.base_divisor + report.groups.j2[i2];
        if (E.is_effective() && E.degree() == 2 && is_fibral(C, E)) {
            PencilBasis<Rat> B = rr_pencil_basis(C, E);
            Poly<Rat> h = B.den;
            mpz_class L = 1;
            for (const auto & c : h.coeffs())
                L = lcm(L, c.den());
            h = Rat(L) * h;
            mpz_class g = 0;
            for (const auto & c : h.coeffs())
                g = gcd(g, c.num());
            h = Rat(1, g) * h;
            if (h.lead().sign() < 0)
                h = -h;
            V.rational_j = true;
            V.representative = divisor_str(E);
            V.pencil_den = h;
        } else if (class_eq(CK, DivisorClass<QuadElem>{to_quad(E) - inf_fibre}, DivisorClass<QuadElem>{})) {
            V.rational_j = true;
            V.representative = divisor_str(inf_fibre);
            V.pencil_den = Poly<Rat>::constant(Rat(1));
        } else {
            V.note = "t2 + D2 is not linearly equivalent to an x-fibre; no involution-stable representative";
        }
        out.push_back(std::move(V));
    }
    return out;
}

bool CuspConsistencyReport::ok() const
{
    if (!special.sufficient)
        return false;
    for (const auto & v : values)
        if (!v.survives)
            return false;
    return true;
}

CuspConsistencyReport cusp_consistency_check(const PairDescriptor & pair, const SieveReport & report)
{
    CuspConsistencyReport out;
    out.special = classify_special_points(pair);
    if (!out.special.sufficient)
        return out;
    const auto & G = report.groups;
    auto C1 = curve_over(pair.m1.model, QuadElem());
    auto C2 = curve_over(pair.m2.model, QuadElem());
    std::vector<Divisor<QuadElem>> targets;
    for (const auto & rep : G.j2)
        targets.push_back(to_quad(pair.m2.base_divisor + rep));
    const auto & pts = out.special.points;
    std::vector<char> used(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i])
            continue;
        const SpecialPoint & s = pts[i];
        std::size_t partner = i;
        if (!s.rational()) {
            auto P1c = conj(s.P1), P2c = conj(s.P2);
            QuadElem lc = s.lambda.conj();
            for (std::size_t j = i + 1; j < pts.size() && partner == i; ++j)
                if (!used[j] && pts[j].P1 == P1c && pts[j].P2 == P2c && pts[j].lambda == lc)
                    partner = j;
            if (partner == i)
                throw std::logic_error("quadratic point without its conjugate: " + special_point_str(s));
        }
        used[i] = used[partner] = 1;
        const SpecialPoint & t = pts[partner];
        CuspAlpha A;
        A.branch = s.branch;
        A.divisor = special_point_str(s) + " + " + (partner == i ? "itself" : "conjugate");
        auto Q = to_rat(ec_add(C1, s.P1, t.P1));
        if (!Q)
            throw std::logic_error("sum of conjugate points is not rational");
        auto it = std::find(G.j1.begin(), G.j1.end(), *Q);
        if (it == G.j1.end())
            throw std::logic_error("alpha lands outside J1(Q)");
        A.i1 = static_cast<std::size_t>(it - G.j1.begin());
        Divisor<QuadElem> D({{s.P2, 1}, {t.P2, 1}});
        A.i2 = G.j2.size();
        for (std::size_t k = 0; k < targets.size() && A.i2 == G.j2.size(); ++k)
            if (equiv_to_class(C2, D, targets[k]))
                A.i2 = k;
        if (A.i2 == G.j2.size())
            throw std::logic_error("alpha lands outside J2(Q)");
        A.survives = std::find(report.survivors.begin(), report.survivors.end(), std::make_pair(A.i1, A.i2)) !=
                     report.survivors.end();
        out.values.push_back(std::move(A));
    }
    return out;
}

} // namespace fsieve
