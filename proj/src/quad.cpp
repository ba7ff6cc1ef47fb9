#include "fsieve/quad.hpp"

#include "fsieve/errors.hpp"

#include <vector>

namespace fsieve {

long squarefree_part(const mpz_class & n)
{
    if (n == 0)
        throw UsageError("squarefree part of zero");
    mpz_class m = abs(n);
    mpz_class out = 1;
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (q > 1000000)
            throw Unsupported("squarefree part: integer too large to factor by trial division");
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            m /= q;
            ++e;
        }
        if (e % 2)
            out *= q;
    }
    out *= m;
    if (n < 0)
        out = -out;
    if (!out.fits_slong_p())
        throw Unsupported("squarefree part does not fit a machine integer");
    return out.get_si();
}

QuadElem::QuadElem(const Rat & a, const Rat & b, long d) : a_(a), b_(b), d_(d)
{
    if (!b_.is_zero() && (d_ == 0 || d_ == 1))
        throw UsageError("Q(sqrt d) needs squarefree d != 0, 1");
}

QuadElem QuadElem::sqrt_of(const Rat & r)
{
    if (r.is_zero())
        return QuadElem();
    Rat root;
    if (rat_is_square(r, &root))
        return QuadElem(root);
    // r = num/den = num*den / den^2
    mpz_class nd = r.num() * r.den();
    long d = squarefree_part(nd);
    // num*den = d * s^2
    mpz_class s2 = nd / d;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
    return QuadElem(Rat(0), Rat(s, r.den()), d);
}

long QuadElem::join(const QuadElem & o) const
{
    if (d_ == o.d_ || o.d_ == 0)
        return d_;
    if (d_ == 0)
        return o.d_;
    if (!b_.is_zero() && !o.b_.is_zero())
        throw UsageError("mixing elements of Q(sqrt " + std::to_string(d_) + ") and Q(sqrt " +
                         std::to_string(o.d_) + ")");
    return b_.is_zero() ? o.d_ : d_;
}

QuadElem & QuadElem::operator+=(const QuadElem & o)
{
    d_ = join(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadElem & QuadElem::operator-=(const QuadElem & o)
{
    d_ = join(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadElem & QuadElem::operator*=(const QuadElem & o)
{
    long d = join(o);
    Rat a = a_ * o.a_ + (b_.is_zero() || o.b_.is_zero() ? Rat(0) : b_ * o.b_ * Rat(d));
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    d_ = d;
    return *this;
}

QuadElem QuadElem::operator-() const
{
    QuadElem r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

QuadElem QuadElem::conj() const
{
    QuadElem r = *this;
    r.b_ = -b_;
    return r;
}

Rat QuadElem::norm() const
{
    if (b_.is_zero())
        return a_ * a_;
    return a_ * a_ - b_ * b_ * Rat(d_);
}

Rat QuadElem::trace() const
{
    return a_ + a_;
}

QuadElem QuadElem::inverse() const
{
    if (is_zero())
        throw UsageError("inverse of zero in quadratic field");
    Rat n = norm();
    QuadElem c = conj();
    c.a_ /= n;
    c.b_ /= n;
    return c;
}

std::string QuadElem::str() const
{
    if (b_.is_zero())
        return a_.str();
    std::string s;
    if (!a_.is_zero())
        s = a_.str() + (b_.sign() > 0 ? "+" : "-");
    else if (b_.sign() < 0)
        s = "-";
    Rat ab = b_.sign() < 0 ? -b_ : b_;
    if (ab != Rat(1))
        s += ab.str() + "*";
    s += "sqrt(" + std::to_string(d_) + ")";
    return s;
}

std::optional<QuadElem> quad_sqrt(const QuadElem & x, long d_hint)
{
    if (x.is_zero())
        return QuadElem();
    if (x.is_rational()) {
        Rat r;
        if (rat_is_square(x.a(), &r))
            return QuadElem(r);
        long d = x.d() != 0 ? x.d() : d_hint;
        if (d == 0)
            return std::nullopt;
        // a = d * v^2  ->  sqrt(a) = v sqrt(d)
        Rat v;
        if (rat_is_square(x.a() / Rat(d), &v))
            return QuadElem(Rat(0), v, d);
        return std::nullopt;
    }
    // (u + v sqrt d)^2 = a + b sqrt d:  u^2 + d v^2 = a, 2uv = b
    Rat n;
    if (!rat_is_square(x.norm(), &n))
        return std::nullopt;
    for (int sgn : {1, -1}) {
        Rat u2 = (x.a() + Rat(sgn) * n) / Rat(2);
        Rat u;
        if (u2.is_zero() || !rat_is_square(u2, &u))
            continue;
        Rat v = x.b() / (Rat(2) * u);
        QuadElem r(u, v, x.d());
        if (r * r == x)
            return r;
    }
    return std::nullopt;
}

namespace {

// Integer roots of a monic integer cubic s^3 + c1 s + c0 (exact bisection on monotone pieces).
std::vector<mpz_class> monic_depressed_cubic_int_roots(const mpz_class & c1, const mpz_class & c0)
{
    auto f = [&](const mpz_class & s) { return s * s * s + c1 * s + c0; };
    std::vector<mpz_class> out;
    mpz_class bound = abs(c1) + abs(c0) + 1;
    std::vector<mpz_class> cuts = {-bound};
    if (c1 < 0) {
        // critical points at +- sqrt(-c1/3)
        mpz_class q = -c1 / 3, r;
        mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
        cuts.push_back(-r - 1);
        cuts.push_back(-r + 1);
        cuts.push_back(r - 1);
        cuts.push_back(r + 1);
    }
    cuts.push_back(bound);
    // check cut points themselves and bisect between consecutive cuts where f is monotone
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        mpz_class lo = cuts[i], hi = cuts[i + 1];
        if (lo > hi)
            continue;
        for (mpz_class s = lo; s <= hi && s <= lo + 2; ++s)
            if (f(s) == 0)
                out.push_back(s);
        mpz_class flo = f(lo), fhi = f(hi);
        if (sgn(flo) * sgn(fhi) >= 0)
            continue;
        while (hi - lo > 1) {
            mpz_class mid = (lo + hi) / 2;
            if (sgn(f(mid)) == sgn(flo))
                lo = mid;
            else
                hi = mid;
        }
        if (f(hi) == 0)
            out.push_back(hi);
        if (f(lo) == 0)
            out.push_back(lo);
    }
    std::vector<mpz_class> uniq;
    for (auto & s : out) {
        bool seen = false;
        for (auto & t : uniq)
            seen = seen || t == s;
        if (!seen)
            uniq.push_back(s);
    }
    return uniq;
}

} // namespace

std::optional<QuadElem> quad_cbrt(const QuadElem & x)
{
    if (x.is_zero())
        return QuadElem();
    if (x.is_rational()) {
        Rat r;
        if (rat_is_cube(x.a(), &r))
            return QuadElem(r);
        return std::nullopt;
    }
    // lambda = u + v sqrt d with lambda^3 = x. Then N(lambda) = n with n^3 = N(x) and
    // T = trace(lambda) solves T^3 - 3nT - trace(x) = 0.
    Rat n;
    if (!rat_is_cube(x.norm(), &n))
        return std::nullopt;
    Rat c1 = Rat(-3) * n;
    Rat c0 = -x.trace();
    // scale T = S / L to make the cubic monic with integer coefficients
    mpz_class L = lcm(c1.den(), c0.den());
    Rat Lr(L);
    Rat ic1 = c1 * Lr * Lr;
    Rat ic0 = c0 * Lr * Lr * Lr;
    for (const auto & s : monic_depressed_cubic_int_roots(ic1.num(), ic0.num())) {
        Rat T = Rat(s) / Lr;
        Rat u = T / Rat(2);
        // u^2 - d v^2 = n
        Rat v2 = (u * u - n) / Rat(x.d());
        Rat v;
        if (!rat_is_square(v2, &v))
            continue;
        for (int sg : {1, -1}) {
            QuadElem cand(u, Rat(sg) * v, x.d());
            if (cand * cand * cand == x)
                return cand;
        }
    }
    return std::nullopt;
}

} // namespace fsieve
