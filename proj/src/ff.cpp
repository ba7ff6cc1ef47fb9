#include "fsieve/ff.hpp"

#include "fsieve/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace fsieve {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using UPoly = std::vector<u64>; // coefficients mod p, lowest first

void utrim(UPoly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

u64 upow(u64 b, u64 e, u64 p)
{
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1)
            r = static_cast<u64>((static_cast<unsigned __int128>(r) * b) % p);
        b = static_cast<u64>((static_cast<unsigned __int128>(b) * b) % p);
        e >>= 1;
    }
    return r;
}

UPoly umod(UPoly a, const UPoly & m, u64 p)
{
    utrim(a);
    int dm = static_cast<int>(m.size()) - 1;
    u64 li = upow(m.back(), p - 2, p);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int da = static_cast<int>(a.size()) - 1;
        u64 f = a.back() * li % p;
        for (int j = 0; j <= dm; ++j)
            a[da - dm + j] = (a[da - dm + j] + p - f * m[j] % p) % p;
        utrim(a);
    }
    return a;
}

UPoly umulmod(const UPoly & a, const UPoly & b, const UPoly & m, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return umod(r, m, p);
}

UPoly ugcd(UPoly a, UPoly b, u64 p)
{
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = umod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^i) mod m
UPoly frob_power_x(const UPoly & m, u64 p, int i)
{
    UPoly r = umod(UPoly{0, 1}, m, p);
    for (int s = 0; s < i; ++s) {
        UPoly base = r, acc{1};
        u64 e = p;
        while (e) {
            if (e & 1)
                acc = umulmod(acc, base, m, p);
            base = umulmod(base, base, m, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

bool irreducible(const UPoly & f, u64 p)
{
    int k = static_cast<int>(f.size()) - 1;
    for (int i = 1; 2 * i <= k; ++i) {
        UPoly h = frob_power_x(f, p, i);
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        UPoly g = ugcd(f, h, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

const FiniteField & check_same(const FFElem & a, const FFElem & b)
{
    if (a.field && b.field && a.field != b.field)
        throw UsageError("mixing elements of " + a.field->name() + " and " + b.field->name());
    return a.field ? *a.field : *b.field;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

const FiniteField & FiniteField::get(std::uint32_t p, int k)
{
    static std::mutex mu;
    static std::map<std::pair<u32, int>, std::unique_ptr<FiniteField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it != registry.end())
        return *it->second;
    auto f = std::unique_ptr<FiniteField>(new FiniteField(p, k));
    const FiniteField & ref = *f;
    registry.emplace(key, std::move(f));
    return ref;
}

FiniteField::FiniteField(std::uint32_t p, int k) : p_(p), k_(k)
{
    if (k < 1 || k > 4)
        throw UsageError("extension degree must be between 1 and 4");
    if (p >= (1u << 31) || !is_prime(p))
        throw UsageError("field characteristic must be a prime below 2^31");
    q_ = 1;
    for (int i = 0; i < k; ++i)
        q_ *= p;
    if (k == 1) {
        mod_ = {0, 1};
    } else {
        // smallest monic irreducible by N = sum c_i p^i
        for (u64 N = 0;; ++N) {
            UPoly f(k + 1, 0);
            u64 n = N;
            for (int i = 0; i < k; ++i) {
                f[i] = n % p;
                n /= p;
            }
            f[k] = 1;
            if (f[0] == 0)
                continue;
            if (irreducible(f, p)) {
                mod_.assign(f.begin(), f.end());
                break;
            }
        }
    }
    if (q_ < (1u << 16))
        build_tables();
}

std::string FiniteField::name() const
{
    return k_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(k_);
}

FFElem FiniteField::from_int(long n) const
{
    FFElem r{this, {}};
    long m = n % static_cast<long>(p_);
    if (m < 0)
        m += p_;
    r.c[0] = static_cast<u32>(m);
    return r;
}

FFElem FiniteField::from_rat(const Rat & r) const
{
    FFElem e{this, {}};
    e.c[0] = static_cast<u32>(r.mod(p_));
    return e;
}

FFElem FiniteField::generator() const
{
    if (k_ == 1)
        throw UsageError("prime field has no power-basis generator");
    FFElem r{this, {}};
    r.c[1] = 1;
    return r;
}

FFElem FiniteField::from_coords(const std::array<std::uint32_t, 4> & c) const
{
    FFElem r{this, {}};
    for (int i = 0; i < k_; ++i)
        r.c[i] = c[i] % p_;
    return r;
}

FFElem FiniteField::from_index(std::uint64_t i) const
{
    FFElem r{this, {}};
    for (int j = 0; j < k_; ++j) {
        r.c[j] = static_cast<u32>(i % p_);
        i /= p_;
    }
    return r;
}

std::uint64_t FiniteField::index(const FFElem & a) const
{
    u64 i = 0;
    for (int j = k_ - 1; j >= 0; --j)
        i = i * p_ + a.c[j];
    return i;
}

FFElem FiniteField::embed(const FFElem & a) const
{
    if (a.field && a.field->k() != 1 && a.field != this)
        throw UsageError("only prime-field elements embed");
    if (a.field && a.field->p() != p_)
        throw UsageError("embedding across characteristics");
    FFElem r{this, {}};
    r.c[0] = a.c[0];
    return r;
}

bool FiniteField::in_prime_field(const FFElem & a) const
{
    return a.c[1] == 0 && a.c[2] == 0 && a.c[3] == 0;
}

void FiniteField::mul(FFElem & a, const FFElem & b) const
{
    if (k_ == 1) {
        a.c[0] = static_cast<u32>(static_cast<u64>(a.c[0]) * b.c[0] % p_);
        return;
    }
    u64 r[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < k_; ++i) {
        if (!a.c[i])
            continue;
        for (int j = 0; j < k_; ++j)
            r[i + j] = (r[i + j] + static_cast<u64>(a.c[i]) * b.c[j]) % p_;
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
        u64 f = r[i];
        if (!f)
            continue;
        for (int j = 0; j < k_; ++j)
            r[i - k_ + j] = (r[i - k_ + j] + (p_ - f) * mod_[j]) % p_;
        r[i] = 0;
    }
    for (int i = 0; i < k_; ++i)
        a.c[i] = static_cast<u32>(r[i]);
}

void FiniteField::build_tables()
{
    u64 n = q_ - 1;
    auto factors = prime_factors(n);
    for (u64 i = 2; i < q_ || q_ == 2; ++i) {
        if (q_ == 2) {
            exp_ = {1};
            log_ = {0, 0};
            return;
        }
        FFElem g = from_index(i);
        bool prim = true;
        for (u64 r : factors)
            if (ff_pow(g, n / r) == one()) {
                prim = false;
                break;
            }
        if (!prim)
            continue;
        exp_.assign(n, 0);
        log_.assign(q_, 0);
        FFElem x = one();
        for (u64 e = 0; e < n; ++e) {
            u64 idx = index(x);
            exp_[e] = static_cast<u32>(idx);
            log_[idx] = static_cast<u32>(e);
            mul(x, g);
        }
        return;
    }
}

std::uint64_t FiniteField::dlog(const FFElem & a) const
{
    if (a.is_zero())
        throw UsageError("discrete log of zero");
    return log_[index(a)];
}

FFElem FiniteField::exp(std::uint64_t e) const
{
    return from_index(exp_[e % (q_ - 1)]);
}

FFElem & FFElem::operator+=(const FFElem & o)
{
    const FiniteField & F = check_same(*this, o);
    if (!o.field)
        return *this;
    field = &F;
    for (int i = 0; i < F.k(); ++i) {
        u64 s = static_cast<u64>(c[i]) + o.c[i];
        c[i] = static_cast<u32>(s >= F.p() ? s - F.p() : s);
    }
    return *this;
}

FFElem & FFElem::operator-=(const FFElem & o)
{
    const FiniteField & F = check_same(*this, o);
    if (!o.field)
        return *this;
    field = &F;
    for (int i = 0; i < F.k(); ++i)
        c[i] = static_cast<u32>(c[i] >= o.c[i] ? c[i] - o.c[i] : static_cast<u64>(c[i]) + F.p() - o.c[i]);
    return *this;
}

FFElem & FFElem::operator*=(const FFElem & o)
{
    if (!field || !o.field) {
        check_same(*this, o);
        c = {};
        if (!field)
            field = o.field;
        return *this;
    }
    const FiniteField & F = check_same(*this, o);
    F.mul(*this, o);
    return *this;
}

FFElem & FFElem::operator/=(const FFElem & o)
{
    return *this *= ff_inverse(o);
}

FFElem FFElem::operator-() const
{
    FFElem r = *this;
    if (!field)
        return r;
    for (int i = 0; i < field->k(); ++i)
        r.c[i] = c[i] ? field->p() - c[i] : 0;
    return r;
}

FFElem one_like(const FFElem & a)
{
    if (!a.field)
        throw UsageError("one of an untyped finite-field zero");
    return a.field->one();
}

FFElem ff_pow(FFElem a, std::uint64_t e)
{
    if (!a.field) {
        if (e == 0)
            throw UsageError("0^0 without a field");
        return a;
    }
    FFElem r = a.field->one();
    while (e) {
        if (e & 1)
            r *= a;
        e >>= 1;
        if (e)
            a *= a;
    }
    return r;
}

FFElem ff_inverse(const FFElem & a)
{
    if (a.is_zero())
        throw UsageError("inverse of zero in a finite field");
    const FiniteField & F = *a.field;
    if (F.tabulated())
        return F.exp(F.order() - 1 - F.dlog(a));
    return ff_pow(a, F.order() - 2);
}

FFElem frobenius(const FFElem & a)
{
    if (!a.field || a.field->k() == 1)
        return a;
    return ff_pow(a, a.field->p());
}

bool is_square(const FFElem & a)
{
    if (a.is_zero())
        return true;
    const FiniteField & F = *a.field;
    if (F.p() == 2)
        return true;
    if (F.tabulated())
        return F.dlog(a) % 2 == 0;
    return ff_pow(a, (F.order() - 1) / 2) == F.one();
}

std::optional<FFElem> sqrt_in_field(const FFElem & a)
{
    if (a.is_zero())
        return a;
    const FiniteField & F = *a.field;
    if (F.p() == 2)
        throw Unsupported("square roots need odd characteristic");
    FFElem r;
    if (F.tabulated()) {
        u64 l = F.dlog(a);
        if (l % 2)
            return std::nullopt;
        r = F.exp(l / 2);
    } else {
        u64 q = F.order();
        if (ff_pow(a, (q - 1) / 2) != F.one())
            return std::nullopt;
        // Tonelli-Shanks
        u64 Q = q - 1;
        int S = 0;
        while (Q % 2 == 0) {
            Q /= 2;
            ++S;
        }
        FFElem z;
        for (u64 i = 2;; ++i) {
            z = F.from_index(i);
            if (ff_pow(z, (q - 1) / 2) != F.one())
                break;
        }
        int M = S;
        FFElem c = ff_pow(z, Q);
        FFElem t = ff_pow(a, Q);
        r = ff_pow(a, (Q + 1) / 2);
        while (t != F.one()) {
            int i = 0;
            FFElem tt = t;
            while (tt != F.one()) {
                tt *= tt;
                ++i;
            }
            FFElem b = c;
            for (int j = 0; j < M - i - 1; ++j)
                b *= b;
            M = i;
            c = b * b;
            t *= c;
            r *= b;
        }
    }
    FFElem s = -r;
    return s < r ? s : r;
}

std::vector<FFElem> dth_roots(const FFElem & a, long d)
{
    if (a.is_zero())
        throw UsageError("d-th roots of zero");
    if (d < 1)
        throw UsageError("d must be positive");
    const FiniteField & F = *a.field;
    std::vector<FFElem> out;
    if (d == 1)
        return {a};
    u64 n = F.order() - 1;
    u64 g = std::gcd(static_cast<u64>(d), n);
    if (F.tabulated()) {
        u64 L = F.dlog(a);
        if (L % g)
            return out;
        // d k = L (mod n): reduce by g and invert d/g modulo n/g
        u64 n2 = n / g, d2 = (static_cast<u64>(d) / g) % n2, L2 = L / g;
        u64 inv_d = 0;
        if (n2 == 1)
            inv_d = 0;
        else {
            // extended Euclid
            long long t0 = 0, t1 = 1, r0 = static_cast<long long>(n2), r1 = static_cast<long long>(d2);
            while (r1) {
                long long qq = r0 / r1;
                std::swap(t0, t1);
                t1 -= qq * t0;
                std::swap(r0, r1);
                r1 -= qq * r0;
            }
            inv_d = static_cast<u64>((t0 % static_cast<long long>(n2) + static_cast<long long>(n2)) %
                                     static_cast<long long>(n2));
        }
        u64 k0 = n2 == 1 ? 0 : (L2 % n2) * inv_d % n2;
        for (u64 j = 0; j < g; ++j)
            out.push_back(F.exp(k0 + j * n2));
    } else {
        if (ff_pow(a, n / g) != F.one())
            return out;
        std::vector<FFElem> c(static_cast<std::size_t>(d) + 1, F.zero());
        c[0] = -a;
        c[d] = F.one();
        out = roots_in_field(Poly<FFElem>(std::move(c), F.zero()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using FP = Poly<FFElem>;

FP powmod(FP base, u64 e, const FP & m)
{
    FP r = FP::constant(m.lead().field->one());
    base = base % m;
    while (e) {
        if (e & 1)
            r = (r * base) % m;
        e >>= 1;
        if (e)
            base = (base * base) % m;
    }
    return r;
}

void split_roots(const FP & g, std::vector<FFElem> & out)
{
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        out.push_back(-(g[0] / g[1]));
        return;
    }
    const FiniteField & F = *g.lead().field;
    u64 q = F.order();
    for (u64 i = 0; i < q; ++i) {
        FP xa = FP::linear_root(-F.from_index(i));
        FP w = powmod(xa, (q - 1) / 2, g) - FP::constant(F.one());
        FP u = poly_gcd(g, w);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            split_roots(u, out);
            split_roots(g / u, out);
            return;
        }
    }
    throw std::logic_error("root splitting did not terminate");
}

} // namespace

std::vector<FFElem> roots_in_field(const Poly<FFElem> & f)
{
    if (f.is_zero())
        throw UsageError("roots of the zero polynomial");
    std::vector<FFElem> out;
    if (f.degree() == 0)
        return out;
    const FiniteField & F = *f.lead().field;
    FP fm = f.monic();
    FP xq = powmod(FP::x(F.one()), F.order(), fm);
    FP g = poly_gcd(fm, xq - FP::x(F.one()));
    if (F.p() == 2) {
        for (auto e : all_elements(F))
            if (g.eval(e).is_zero())
                out.push_back(e);
    } else {
        split_roots(g, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const FFElem & a)
{
    if (!a.field || a.field->k() == 1)
        return std::to_string(a.c[0]);
    std::string s = "(";
    for (int i = 0; i < a.field->k(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + ")";
}

ElementRange::ElementRange(const FiniteField & F) : F_(&F)
{
    if (F.order() > kMaxElements)
        throw UsageError("field too large to iterate");
}

} // namespace fsieve
