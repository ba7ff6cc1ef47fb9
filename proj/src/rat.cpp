#include "fsieve/rat.hpp"

#include "fsieve/errors.hpp"

#include <cctype>

namespace fsieve {

Rat::Rat(const mpz_class & num, const mpz_class & den)
{
    if (den == 0)
        throw UsageError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text)
{
    auto bad = [&] { return DataError("malformed rational \"" + std::string(text) + "\""); };
    if (text.empty())
        throw bad();
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s, bool allow_sign) {
        if (s.empty())
            throw bad();
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+'))
            i = 1;
        if (i == s.size())
            throw bad();
        for (std::size_t k = i; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                throw bad();
        return mpz_class(std::string(s[0] == '+' ? s.substr(1) : s), 10);
    };
    if (slash == std::string_view::npos)
        return Rat(parse_int(text, true));
    mpz_class n = parse_int(text.substr(0, slash), true);
    mpz_class d = parse_int(text.substr(slash + 1), false);
    if (d == 0)
        throw bad();
    return Rat(n, d);
}

std::string Rat::str() const
{
    if (v_.get_den() == 1)
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat & Rat::operator/=(const Rat & o)
{
    if (o.is_zero())
        throw UsageError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inverse() const
{
    return Rat(1) / *this;
}

Rat Rat::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Rat r(1), b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::uint64_t Rat::mod(std::uint64_t p) const
{
    mpz_class P(static_cast<unsigned long>(p));
    mpz_class d = v_.get_den() % P;
    if (d == 0)
        throw ReductionError("denominator of " + str() + " divisible by " + std::to_string(p));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
    mpz_class n = v_.get_num() % P;
    if (n < 0)
        n += P;
    mpz_class r = (n * inv) % P;
    return r.get_ui();
}

std::ostream & operator<<(std::ostream & os, const Rat & r)
{
    return os << r.str();
}

namespace {
bool int_root(const mpz_class & n, unsigned k, mpz_class & out)
{
    if (n < 0) {
        if (k % 2 == 0)
            return false;
        mpz_class a = -n;
        if (!int_root(a, k, out))
            return false;
        out = -out;
        return true;
    }
    return mpz_root(out.get_mpz_t(), n.get_mpz_t(), k) != 0;
}
} // namespace

bool rat_is_square(const Rat & r, Rat * root)
{
    mpz_class a, b;
    if (!int_root(r.num(), 2, a) || !int_root(r.den(), 2, b))
        return false;
    if (root)
        *root = Rat(a, b);
    return true;
}

bool rat_is_cube(const Rat & r, Rat * root)
{
    mpz_class a, b;
    if (!int_root(r.num(), 3, a) || !int_root(r.den(), 3, b))
        return false;
    if (root)
        *root = Rat(a, b);
    return true;
}

} // namespace fsieve
