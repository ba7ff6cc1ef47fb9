#include "fsieve/descriptors.hpp"

#include "fsieve/ecgroup.hpp"
#include "fsieve/pic0.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace fsieve {

using nlohmann::json;

namespace {

// Strict access to one JSON object: every key must be consumed or declared optional.
class Obj {
  public:
    Obj(const json & j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail("expected an object");
    }

    const json & req(const std::string & k)
    {
        seen_.insert(k);
        auto it = j_.find(k);
        if (it == j_.end())
            throw DataError(path_ + ": missing key \"" + k + "\"");
        return *it;
    }
    const json * opt(const std::string & k)
    {
        seen_.insert(k);
        auto it = j_.find(k);
        return it == j_.end() ? nullptr : &*it;
    }
    std::string sub(const std::string & k) const { return path_ + "." + k; }
    const std::string & path() const { return path_; }

    void done() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw DataError(path_ + ": unknown key \"" + it.key() + "\"");
    }
    [[noreturn]] void fail(const std::string & msg) const { throw DataError(path_ + ": " + msg); }

  private:
    const json & j_;
    std::string path_;
    std::set<std::string> seen_;
};

[[noreturn]] void bad(const std::string & path, const std::string & msg) { throw DataError(path + ": " + msg); }

std::string get_str(const json & j, const std::string & path)
{
    if (!j.is_string())
        bad(path, "expected a string");
    return j.get<std::string>();
}

long get_int(const json & j, const std::string & path)
{
    if (!j.is_number_integer())
        bad(path, "expected an integer");
    return j.get<long>();
}

Rat get_rat(const json & j, const std::string & path)
{
    std::string s = get_str(j, path);
    Rat r;
    try {
        r = Rat::parse(s);
    } catch (const DataError & e) {
        bad(path, e.what());
    }
    if (r.str() != s)
        bad(path, "rational \"" + s + "\" is not in canonical lowest-terms form");
    return r;
}

const json & get_array(const json & j, const std::string & path)
{
    if (!j.is_array())
        bad(path, "expected an array");
    return j;
}

Poly<Rat> get_poly(const json & j, const std::string & path)
{
    std::vector<Rat> c;
    std::size_t i = 0;
    for (const auto & e : get_array(j, path))
        c.push_back(get_rat(e, path + "[" + std::to_string(i++) + "]"));
    if (!c.empty() && c.back().is_zero())
        bad(path, "leading coefficient is zero");
    return Poly<Rat>(c, Rat(0));
}

std::map<std::string, std::string> get_provenance(const json & j, const std::string & path)
{
    if (!j.is_object())
        bad(path, "expected an object of strings");
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = get_str(it.value(), path + "." + it.key());
    return out;
}

CurvePoint<Rat> get_point(const json & j, const std::string & path, const CurveModel & C)
{
    Obj o(j, path);
    CurvePoint<Rat> P;
    if (const json * inf = o.opt("inf")) {
        std::string s = get_str(*inf, o.sub("inf"));
        if (s == "O") {
            if (C.is_quartic())
                o.fail("\"O\" is the Weierstrass point at infinity");
            P = CurvePoint<Rat>::w_infinity();
        } else if (s == "quartic") {
            if (!C.is_quartic())
                o.fail("quartic point at infinity on a Weierstrass model");
            P = CurvePoint<Rat>::q_infinity(get_rat(o.req("v"), o.sub("v")));
        } else {
            o.fail("unknown point at infinity \"" + s + "\"");
        }
    } else {
        P = CurvePoint<Rat>::affine(get_rat(o.req("x"), o.sub("x")), get_rat(o.req("y"), o.sub("y")));
    }
    o.done();
    return P;
}

std::vector<CurvePoint<Rat>> get_points(const json & j, const std::string & path, const CurveModel & C)
{
    std::vector<CurvePoint<Rat>> out;
    std::size_t i = 0;
    for (const auto & e : get_array(j, path))
        out.push_back(get_point(e, path + "[" + std::to_string(i++) + "]", C));
    return out;
}

Divisor<Rat> get_divisor(const json & j, const std::string & path, const CurveModel & C)
{
    std::vector<std::pair<CurvePoint<Rat>, int>> terms;
    std::size_t i = 0;
    for (const auto & e : get_array(j, path)) {
        std::string p = path + "[" + std::to_string(i++) + "]";
        Obj o(e, p);
        auto P = get_point(o.req("point"), o.sub("point"), C);
        long m = get_int(o.req("mult"), o.sub("mult"));
        if (m == 0)
            o.fail("zero multiplicity");
        o.done();
        terms.emplace_back(P, static_cast<int>(m));
    }
    return Divisor<Rat>(std::move(terms));
}

BelyiProfile get_profile(const json & j, const std::string & path)
{
    Obj o(j, path);
    BelyiProfile P;
    P.degree = static_cast<int>(get_int(o.req("degree"), o.sub("degree")));
    for (int b = 0; b < 3; ++b) {
        std::string key = branch_name(b);
        std::size_t i = 0;
        for (const auto & e : get_array(o.req(key), o.sub(key))) {
            Obj t(e, o.sub(key) + "[" + std::to_string(i++) + "]");
            long idx = get_int(t.req("index"), t.sub("index"));
            long cnt = get_int(t.req("count"), t.sub("count"));
            if (idx < 1 || cnt < 1)
                t.fail("index and count must be positive");
            if (P.over[b].count(static_cast<int>(idx)))
                t.fail("repeated index");
            P.over[b][static_cast<int>(idx)] = static_cast<int>(cnt);
            t.done();
        }
    }
    o.done();
    return P;
}

CurveModel get_model(const json & j, const std::string & path, const std::string & label)
{
    Obj o(j, path);
    std::string type = get_str(o.req("type"), o.sub("type"));
    CurveModel C;
    try {
        if (type == "weierstrass") {
            const json & a = get_array(o.req("a"), o.sub("a"));
            if (a.size() != 5)
                o.fail("a Weierstrass model has five coefficients");
            std::array<Rat, 5> c;
            for (int i = 0; i < 5; ++i)
                c[i] = get_rat(a[i], o.sub("a") + "[" + std::to_string(i) + "]");
            C = CurveModel::weierstrass(label, c);
        } else if (type == "quartic") {
            C = CurveModel::quartic(label, get_poly(o.req("g"), o.sub("g")));
        } else {
            o.fail("unknown model type \"" + type + "\"");
        }
    } catch (const GeometryError & e) {
        o.fail(e.what());
    } catch (const UsageError & e) {
        o.fail(e.what());
    }
    o.done();
    return C;
}

json parse_json(const std::string & text, const std::string & origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error & e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw DataError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " +
                        e.what());
    }
}

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_header(Obj & o, const std::string & kind)
{
    long v = get_int(o.req("schema_version"), o.sub("schema_version"));
    if (v != kSchemaVersion)
        o.fail("unsupported schema_version " + std::to_string(v));
    std::string k = get_str(o.req("kind"), o.sub("kind"));
    if (k != kind)
        o.fail("expected kind \"" + kind + "\", found \"" + k + "\"");
}

// ---- serialization

json rat_json(const Rat & r) { return r.str(); }

json poly_json(const Poly<Rat> & p)
{
    json a = json::array();
    for (const auto & c : p.coeffs())
        a.push_back(rat_json(c));
    return a;
}

json point_json(const CurvePoint<Rat> & P)
{
    json o = json::object();
    switch (P.kind) {
    case CurvePoint<Rat>::Kind::WInfinity:
        o["inf"] = "O";
        break;
    case CurvePoint<Rat>::Kind::QInfinity:
        o["inf"] = "quartic";
        o["v"] = rat_json(P.y);
        break;
    default:
        o["x"] = rat_json(P.x);
        o["y"] = rat_json(P.y);
    }
    return o;
}

json points_json(const std::vector<CurvePoint<Rat>> & v)
{
    json a = json::array();
    for (const auto & P : v)
        a.push_back(point_json(P));
    return a;
}

json divisor_json(const Divisor<Rat> & D)
{
    json a = json::array();
    for (const auto & [P, m] : D.terms)
        a.push_back({{"mult", m}, {"point", point_json(P)}});
    return a;
}

json profile_json(const BelyiProfile & P)
{
    json o = json::object();
    o["degree"] = P.degree;
    for (int b = 0; b < 3; ++b) {
        json a = json::array();
        for (auto & [e, c] : P.over[b])
            a.push_back({{"count", c}, {"index", e}});
        o[branch_name(b)] = a;
    }
    return o;
}

std::string dump(const json & j) { return j.dump(2) + "\n"; }

std::vector<std::uint32_t> default_check_primes(const MemberDescriptor & d)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 11; p < 100; ++p)
        if (is_prime(p) && is_good_reduction(d.model, p))
            out.push_back(p);
    return out;
}

} // namespace

std::string point_json_str(const CurvePoint<Rat> & P) { return point_json(P).dump(); }

std::string data_dir()
{
    if (const char * e = std::getenv("FIBRE_SIEVE_DATA"); e && *e)
        return e;
    return FSIEVE_DATA_DIR;
}

MemberDescriptor parse_member(const std::string & text, const std::string & origin)
{
    json j = parse_json(text, origin);
    Obj o(j, origin);
    check_header(o, "member");
    MemberDescriptor d;
    d.path = origin;
    d.label = get_str(o.req("label"), o.sub("label"));
    d.cremona = get_str(o.req("cremona"), o.sub("cremona"));
    d.model = get_model(o.req("model"), o.sub("model"), d.label);
    {
        Obj jm(o.req("jmap"), o.sub("jmap"));
        d.jmap.num0 = get_poly(jm.req("num0"), jm.sub("num0"));
        d.jmap.num1 = get_poly(jm.req("num1"), jm.sub("num1"));
        d.jmap.den = get_poly(jm.req("den"), jm.sub("den"));
        d.jmap.degree = static_cast<int>(get_int(jm.req("degree"), jm.sub("degree")));
        if (d.jmap.den.is_zero())
            jm.fail("zero denominator");
        if (d.jmap.degree < 1)
            jm.fail("degree must be positive");
        if (d.model.is_quartic() && d.jmap.involves_y())
            jm.fail("quartic members take j-maps in x alone");
        jm.done();
    }
    std::size_t i = 0;
    for (const auto & e : get_array(o.req("bad_primes"), o.sub("bad_primes"))) {
        long p = get_int(e, o.sub("bad_primes") + "[" + std::to_string(i++) + "]");
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
            o.fail("bad_primes entry " + std::to_string(p) + " is not prime");
        d.bad_primes.push_back(static_cast<std::uint32_t>(p));
    }
    d.rational_points = get_points(o.req("rational_points"), o.sub("rational_points"), d.model);
    d.cusps = get_points(o.req("cusps"), o.sub("cusps"), d.model);
    d.non_cusps = get_points(o.req("non_cusps"), o.sub("non_cusps"), d.model);
    {
        Obj mw(o.req("mordell_weil"), o.sub("mordell_weil"));
        d.mw.assumed_rank = get_int(mw.req("assumed_rank"), mw.sub("assumed_rank"));
        d.mw.rank_provenance = get_str(mw.req("rank_provenance"), mw.sub("rank_provenance"));
        d.mw.provenance = get_str(mw.req("provenance"), mw.sub("provenance"));
        if (d.mw.rank_provenance.empty() || d.mw.provenance.empty())
            mw.fail("provenance strings are mandatory");
        std::size_t k = 0;
        for (const auto & e : get_array(mw.req("shape"), mw.sub("shape")))
            d.mw.shape.push_back(get_int(e, mw.sub("shape") + "[" + std::to_string(k++) + "]"));
        k = 0;
        for (const auto & e : get_array(mw.req("generators"), mw.sub("generators"))) {
            Obj g(e, mw.sub("generators") + "[" + std::to_string(k++) + "]");
            MWGenerator G;
            G.divisor = get_divisor(g.req("divisor"), g.sub("divisor"), d.model);
            G.order = get_int(g.req("order"), g.sub("order"));
            if (G.divisor.degree() != 0)
                g.fail("generator divisor must have degree 0");
            g.done();
            d.mw.generators.push_back(std::move(G));
        }
        mw.done();
    }
    d.base_divisor = get_divisor(o.req("base_divisor"), o.sub("base_divisor"), d.model);
    if (const json * bp = o.opt("belyi_profile"))
        d.profile = get_profile(*bp, o.sub("belyi_profile"));
    else if (!d.model.is_quartic())
        o.fail("Weierstrass members must supply belyi_profile");
    if (const json * sf = o.opt("special_fibres")) {
        Obj s(*sf, o.sub("special_fibres"));
        for (int b = 0; b < 3; ++b) {
            const json * arr = s.opt(branch_name(b));
            if (!arr)
                continue;
            std::string p = s.sub(branch_name(b));
            std::vector<FibreFactor> fs;
            std::size_t k = 0;
            for (const auto & e : get_array(*arr, p)) {
                Obj f(e, p + "[" + std::to_string(k++) + "]");
                FibreFactor F;
                F.factor = get_poly(f.req("factor"), f.sub("factor"));
                F.mult = static_cast<int>(get_int(f.req("mult"), f.sub("mult")));
                if (F.mult < 1 || F.factor.degree() < 1)
                    f.fail("factors must be nonconstant with positive multiplicity");
                f.done();
                fs.push_back(std::move(F));
            }
            d.special_fibres[b] = std::move(fs);
        }
        s.done();
    }
    d.provenance = get_provenance(o.req("provenance"), o.sub("provenance"));
    o.done();
    return d;
}

MemberDescriptor load_member(const std::string & path) { return parse_member(read_file(path), path); }

PairDescriptor parse_pair(const std::string & text, const std::string & origin)
{
    json j = parse_json(text, origin);
    Obj o(j, origin);
    check_header(o, "pair");
    PairDescriptor d;
    d.path = origin;
    d.label = get_str(o.req("label"), o.sub("label"));
    d.member1_file = get_str(o.req("member1"), o.sub("member1"));
    d.member2_file = get_str(o.req("member2"), o.sub("member2"));
    {
        Obj pr(o.req("primes"), o.sub("primes"));
        long lo = get_int(pr.req("lo"), pr.sub("lo"));
        long hi = get_int(pr.req("hi"), pr.sub("hi"));
        if (lo < 11 || hi < lo || hi >= (1L << 31))
            pr.fail("prime range must satisfy 11 <= lo <= hi < 2^31");
        d.prime_lo = static_cast<std::uint32_t>(lo);
        d.prime_hi = static_cast<std::uint32_t>(hi);
        pr.done();
    }
    d.provenance = get_provenance(o.req("provenance"), o.sub("provenance"));
    o.done();
    namespace fs = std::filesystem;
    fs::path base = fs::path(origin).parent_path();
    auto resolve = [&](const std::string & f) { return (base / f).lexically_normal().string(); };
    d.m1 = load_member(resolve(d.member1_file));
    d.m2 = load_member(resolve(d.member2_file));
    if (d.m1.model.is_quartic() || !d.m2.model.is_quartic())
        throw DataError(origin + ": member1 must be a Weierstrass member and member2 a quartic member");
    return d;
}

PairDescriptor load_pair(const std::string & path) { return parse_pair(read_file(path), path); }

LineFixture load_line_fixture(const std::string & path)
{
    json j = parse_json(read_file(path), path);
    Obj o(j, path);
    check_header(o, "line_fixture");
    LineFixture f;
    f.label = get_str(o.req("label"), o.sub("label"));
    Obj jm(o.req("jmap"), o.sub("jmap"));
    f.num = get_poly(jm.req("num"), jm.sub("num"));
    f.den = get_poly(jm.req("den"), jm.sub("den"));
    jm.done();
    f.provenance = get_provenance(o.req("provenance"), o.sub("provenance"));
    o.done();
    return f;
}

std::string serialize_member(const MemberDescriptor & d)
{
    json o = json::object();
    o["schema_version"] = kSchemaVersion;
    o["kind"] = "member";
    o["label"] = d.label;
    o["cremona"] = d.cremona;
    json model = json::object();
    if (d.model.is_quartic()) {
        model["type"] = "quartic";
        model["g"] = poly_json(d.model.g);
    } else {
        model["type"] = "weierstrass";
        json a = json::array();
        for (const auto & c : d.model.a)
            a.push_back(rat_json(c));
        model["a"] = a;
    }
    o["model"] = model;
    o["jmap"] = {{"num0", poly_json(d.jmap.num0)},
                 {"num1", poly_json(d.jmap.num1)},
                 {"den", poly_json(d.jmap.den)},
                 {"degree", d.jmap.degree}};
    o["bad_primes"] = d.bad_primes;
    o["rational_points"] = points_json(d.rational_points);
    o["cusps"] = points_json(d.cusps);
    o["non_cusps"] = points_json(d.non_cusps);
    json gens = json::array();
    for (const auto & g : d.mw.generators)
        gens.push_back({{"divisor", divisor_json(g.divisor)}, {"order", g.order}});
    o["mordell_weil"] = {{"assumed_rank", d.mw.assumed_rank},
                         {"rank_provenance", d.mw.rank_provenance},
                         {"shape", d.mw.shape},
                         {"generators", gens},
                         {"provenance", d.mw.provenance}};
    o["base_divisor"] = divisor_json(d.base_divisor);
    if (d.profile)
        o["belyi_profile"] = profile_json(*d.profile);
    bool any = false;
    json sf = json::object();
    for (int b = 0; b < 3; ++b) {
        if (!d.special_fibres[b])
            continue;
        any = true;
        json a = json::array();
        for (const auto & f : *d.special_fibres[b])
            a.push_back({{"factor", poly_json(f.factor)}, {"mult", f.mult}});
        sf[branch_name(b)] = a;
    }
    if (any)
        o["special_fibres"] = sf;
    o["provenance"] = d.provenance;
    return dump(o);
}

std::string serialize_pair(const PairDescriptor & d)
{
    json o = json::object();
    o["schema_version"] = kSchemaVersion;
    o["kind"] = "pair";
    o["label"] = d.label;
    o["member1"] = d.member1_file;
    o["member2"] = d.member2_file;
    o["primes"] = {{"lo", d.prime_lo}, {"hi", d.prime_hi}};
    o["provenance"] = d.provenance;
    return dump(o);
}

VerificationReport verify_mw_claim(const MemberDescriptor & d)
{
    VerificationReport rep;
    rep.subject = d.label + " Mordell-Weil claim";
    if (d.mw.assumed_rank != 0)
        throw Unsupported(d.label + ": assumed rank " + std::to_string(d.mw.assumed_rank) +
                          " is not 0; rank computation is out of scope");
    const auto & gens = d.mw.generators;
    AbelianGroupShape claimed{d.mw.shape};
    {
        bool chain = true;
        for (std::size_t i = 0; i < claimed.invariants.size(); ++i)
            if (claimed.invariants[i] < 2 || (i && claimed.invariants[i] % claimed.invariants[i - 1]))
                chain = false;
        rep.add("shape is a divisibility chain", chain, claimed.str());
        if (!chain)
            return rep;
    }
    long claimed_order = claimed.order();
    std::vector<std::uint32_t> primes = default_check_primes(d);

    if (!d.model.is_quartic()) {
        auto C = curve_over(d.model, Rat(0));
        std::vector<CurvePoint<Rat>> pts;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto & D = gens[i].divisor;
            std::string gs = "generator " + divisor_str(D);
            auto pos = D.positive_part(), neg = D.negative_part();
            bool form = pos.terms.size() == 1 && pos.terms[0].second == 1 && neg.terms.size() == 1 &&
                        neg.terms[0].second == 1 && neg.terms[0].first.kind == CurvePoint<Rat>::Kind::WInfinity;
            rep.add(gs + " has the form [P - inf]", form);
            if (!form)
                return rep;
            const auto & P = pos.terms[0].first;
            bool on = on_curve(C, P);
            rep.add(gs + " on curve", on, on ? "" : point_str(P));
            if (!on)
                return rep;
            auto ord = ec_point_order(C, P, std::max<long>(16, gens[i].order));
            bool ok = ord && *ord == gens[i].order;
            std::string w;
            if (!ok) {
                auto Q = ec_mul(C, P, gens[i].order);
                w = std::to_string(gens[i].order) + "*" + point_str(P) + " = " + point_str(Q) +
                    (ord ? ", true order " + std::to_string(*ord) : ", order exceeds the search bound");
            }
            rep.add(gs + " has order " + std::to_string(gens[i].order), ok, w);
            pts.push_back(P);
        }
        auto span = ec_span(C, pts);
        std::vector<long> orders;
        for (const auto & P : span)
            orders.push_back(*ec_point_order(C, P, static_cast<long>(span.size())));
        auto shape = AbelianGroupShape::from_element_orders(orders);
        rep.add("generated group has the claimed shape", shape == claimed, shape.str() + " vs " + claimed.str());
        std::set<CurvePoint<Rat>> listed(d.rational_points.begin(), d.rational_points.end());
        std::set<CurvePoint<Rat>> spanned(span.begin(), span.end());
        std::string w;
        for (const auto & P : listed)
            if (!spanned.count(P)) {
                w = point_str(P) + " is listed but not generated";
                break;
            }
        if (w.empty())
            for (const auto & P : spanned)
                if (!listed.count(P)) {
                    w = point_str(P) + " is generated but not listed";
                    break;
                }
        for (const auto & P : listed)
            for (const auto & Q : listed)
                if (w.empty() && !listed.count(ec_add(C, P, Q)))
                    w = point_str(P) + " + " + point_str(Q) + " leaves the list";
        rep.add("listed points closed under the group law", w.empty(), w);
        long bound = torsion_gcd_bound(d.model, primes);
        rep.add("order equals the torsion bound from reduction", bound == claimed_order,
                "gcd #E(F_p) = " + std::to_string(bound) + ", claimed " + std::to_string(claimed_order));
        return rep;
    }

    // quartic member: classes in Pic^0, compared by linear equivalence
    auto C = curve_over(d.model, Rat(0));
    for (const auto & g : gens) {
        std::string gs = "generator " + divisor_str(g.divisor);
        bool on = true;
        for (const auto & [P, m] : g.divisor.terms)
            on = on && on_curve(C, P);
        rep.add(gs + " on curve", on);
        if (!on)
            return rep;
        auto is_zero = [&](int k) { return class_eq(C, DivisorClass<Rat>{k * g.divisor}, DivisorClass<Rat>{}); };
        bool ok = g.order >= 1 && is_zero(static_cast<int>(g.order));
        std::string w;
        if (!ok)
            w = std::to_string(g.order) + "*[" + divisor_str(g.divisor) + "] is not principal";
        for (long k = 1; ok && k < g.order; ++k)
            if (g.order % k == 0 && is_zero(static_cast<int>(k))) {
                ok = false;
                w = std::to_string(k) + "*[" + divisor_str(g.divisor) + "] is already principal";
            }
        rep.add(gs + " has order " + std::to_string(g.order), ok, w);
        if (!ok)
            return rep;
    }
    // all combinations sum k_i g_i, 0 <= k_i < order_i
    std::vector<Divisor<Rat>> elems{Divisor<Rat>{}};
    for (const auto & g : gens) {
        std::vector<Divisor<Rat>> next;
        for (const auto & e : elems)
            for (long k = 0; k < g.order; ++k)
                next.push_back(e + static_cast<int>(k) * g.divisor);
        elems = std::move(next);
    }
    auto same = [&](const Divisor<Rat> & a, const Divisor<Rat> & b) {
        return class_eq(C, DivisorClass<Rat>{a}, DivisorClass<Rat>{b});
    };
    std::vector<Divisor<Rat>> distinct;
    for (const auto & e : elems) {
        bool dup = false;
        for (const auto & f : distinct)
            dup = dup || same(e, f);
        if (!dup)
            distinct.push_back(e);
    }
    std::vector<long> orders;
    for (const auto & e : distinct) {
        long o = 1;
        while (!same(static_cast<int>(o) * e, Divisor<Rat>{}))
            ++o;
        orders.push_back(o);
    }
    auto shape = AbelianGroupShape::from_element_orders(orders);
    rep.add("generated group has the claimed shape", shape == claimed, shape.str() + " vs " + claimed.str());
    std::string w;
    if (!d.rational_points.empty()) {
        const auto & P0 = d.rational_points.front();
        for (const auto & P : d.rational_points) {
            Divisor<Rat> c = Divisor<Rat>::point(P) - Divisor<Rat>::point(P0);
            bool in = false;
            for (const auto & e : distinct)
                in = in || same(c, e);
            if (!in) {
                w = "[" + point_str(P) + " - " + point_str(P0) + "] is not generated";
                break;
            }
        }
    }
    rep.add("listed points differ by generated classes", w.empty(), w);
    long bound = 0;
    for (auto p : primes)
        bound = std::gcd(bound, pic0_order(d.model, FiniteField::get(p)));
    rep.add("order equals the torsion bound from reduction", bound == claimed_order,
            "gcd #Pic0(F_p) = " + std::to_string(bound) + ", claimed " + std::to_string(claimed_order));
    return rep;
}

VerificationReport validate_descriptor(const MemberDescriptor & d)
{
    VerificationReport rep;
    rep.subject = d.label;
    auto C = curve_over(d.model, Rat(0));
    auto J = jmap_over(d.jmap, Rat(0));

    auto all_on = [&](const std::vector<CurvePoint<Rat>> & v, const std::string & what) {
        std::string w;
        for (const auto & P : v)
            if (w.empty() && !on_curve(C, P))
                w = point_str(P);
        rep.add(what + " on curve", w.empty(), w);
    };
    all_on(d.rational_points, "rational points");
    all_on(d.cusps, "cusps");
    all_on(d.non_cusps, "non-cusps");
    {
        std::set<CurvePoint<Rat>> listed(d.rational_points.begin(), d.rational_points.end());
        std::string w;
        for (const auto * v : {&d.cusps, &d.non_cusps})
            for (const auto & P : *v)
                if (w.empty() && !listed.count(P))
                    w = point_str(P) + " is marked but not listed";
        rep.add("marked points are listed", w.empty(), w);
    }

    {
        std::string w;
        std::set<std::uint32_t> bad(d.bad_primes.begin(), d.bad_primes.end());
        for (std::uint32_t p = 3; p < 100 && w.empty(); p += 2)
            if (is_prime(p) && bad.count(p) == is_good_reduction(d.model, p))
                w = "p=" + std::to_string(p) + (bad.count(p) ? " listed bad but reduction is good"
                                                            : " has bad reduction but is not listed");
        rep.add("bad primes below 100", w.empty(), w);
    }

    // j-values at marked points
    {
        std::string w;
        for (const auto & P : d.cusps)
            if (w.empty() && !j_value(C, J, P).infinite)
                w = "j" + point_str(P) + " is finite";
        for (const auto & P : d.non_cusps)
            if (w.empty() && j_value(C, J, P).infinite)
                w = "j" + point_str(P) + " is infinite";
        for (const auto & P : d.rational_points) {
            bool marked = std::find(d.cusps.begin(), d.cusps.end(), P) != d.cusps.end();
            if (w.empty() && !marked && j_value(C, J, P).infinite)
                w = point_str(P) + " is a cusp but not marked";
        }
        rep.add("cusp markers", w.empty(), w);
    }

    // ramification profile
    if (d.model.is_quartic()) {
        try {
            BelyiProfile P = belyi_profile_quartic(d);
            rep.add("j-map degree", P.degree == d.jmap.degree, P.str());
            rep.add("profile genus 1", P.consistent() && P.source_genus() == 1, P.str());
            if (d.profile)
                rep.add("declared profile matches computed", *d.profile == P,
                        d.profile->str() + " vs " + P.str());
        } catch (const std::exception & e) {
            rep.add("ramification profile", false, e.what());
        }
    } else {
        std::vector<std::uint32_t> few;
        for (std::uint32_t p : {11u, 13u, 17u})
            if (is_good_reduction(d.model, p))
                few.push_back(p);
        rep.merge(verify_profile(d, few), "profile: ");
    }

    // special fibres: product of listed factors is the fibre polynomial
    {
        auto fib = fibre_polynomials(d.model, d.jmap);
        for (int b = 0; b < 3; ++b) {
            if (!d.special_fibres[b])
                continue;
            Poly<Rat> prod = Poly<Rat>::constant(Rat(1));
            for (const auto & f : *d.special_fibres[b])
                prod = prod * f.factor.pow(f.mult);
            rep.add(std::string("special fibre factorization above ") + branch_name(b),
                    prod.monic() == fib[b].monic(), "");
        }
    }

    // base divisor
    {
        bool ok = d.base_divisor.is_effective() && d.base_divisor.degree() == 2;
        for (const auto & [P, m] : d.base_divisor.terms)
            ok = ok && on_curve(C, P);
        rep.add("base divisor effective of degree 2 on curve", ok, divisor_str(d.base_divisor));
    }

    try {
        rep.merge(verify_mw_claim(d), "mordell-weil: ");
    } catch (const Unsupported & e) {
        rep.add("mordell-weil", false, e.what());
    }
    return rep;
}

VerificationReport validate_pair(const PairDescriptor & d)
{
    VerificationReport rep;
    rep.subject = d.label;
    rep.merge(validate_descriptor(d.m1), d.m1.label + ": ");
    rep.merge(validate_descriptor(d.m2), d.m2.label + ": ");
    try {
        BelyiProfile a = *d.m1.profile;
        BelyiProfile b = d.m2.profile ? *d.m2.profile : belyi_profile_quartic(d.m2);
        int g = rh_genus_fibre_product(a, b);
        rep.add("fibre product genus", g >= 2, "genus " + std::to_string(g));
    } catch (const std::exception & e) {
        rep.add("fibre product genus", false, e.what());
    }
    return rep;
}

} // namespace fsieve
