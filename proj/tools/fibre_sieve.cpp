// fibre_sieve: command-line driver for the fsieve library.

#include "fsieve/sieve.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace fsieve;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kEmpty = 10 };

struct RunConfig {
    std::string descriptor;
    std::string primes = "11..99";
    bool primes_given = false;
    unsigned workers = 1;
    std::string format = "table";
    std::string out;
    std::uint32_t p = 0;
    int k = 1;
    bool list_points = false;
};

struct Failure {
    int code;
    std::string msg;
};

std::uint64_t fnv1a(const std::string & s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string & s)
{
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw Failure{kUsage, "--primes expects A..B, got '" + s + "'"};
    try {
        std::size_t n1 = 0, n2 = 0;
        long long a = std::stoll(s.substr(0, dots), &n1);
        long long b = std::stoll(s.substr(dots + 2), &n2);
        if (n1 != dots || n2 != s.size() - dots - 2)
            throw std::invalid_argument("trailing characters");
        if (a < 11 || b >= (1ll << 31) || a > b)
            throw Failure{kUsage, "--primes must satisfy 11 <= A <= B < 2^31"};
        return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    } catch (const std::logic_error &) {
        throw Failure{kUsage, "--primes expects A..B, got '" + s + "'"};
    }
}

// A path, or a bundled label looked up under pairs/, members/, fixtures/.
std::string resolve(const std::string & arg)
{
    if (fs::exists(arg))
        return arg;
    for (const char * sub : {"pairs", "members", "fixtures"}) {
        fs::path p = fs::path(data_dir()) / sub / (arg + ".json");
        if (fs::exists(p))
            return p.string();
    }
    throw Failure{kData, "no descriptor '" + arg + "' (looked in " + data_dir() + ")"};
}

std::string kind_of(const std::string & path)
{
    std::ifstream in(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception & e) {
        throw DataError(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw DataError(path + ": missing \"kind\"");
    return j["kind"].get<std::string>();
}

json profile_json(const BelyiProfile & P)
{
    json j;
    j["degree"] = P.degree;
    for (int b = 0; b < 3; ++b) {
        json arr = json::array();
        for (const auto & [e, c] : P.over[b])
            arr.push_back({{"index", e}, {"count", c}});
        j[branch_name(b)] = arr;
    }
    return j;
}

json report_json(const VerificationReport & R)
{
    json arr = json::array();
    for (const auto & c : R.checks)
        arr.push_back({{"check", c.name}, {"ok", c.ok}, {"witness", c.witness}});
    return {{"subject", R.subject}, {"ok", R.ok()}, {"checks", arr}};
}

void print_report(std::ostream & os, const VerificationReport & R)
{
    os << R.subject << ": " << (R.ok() ? "OK" : "FAILED") << "\n";
    for (const auto & c : R.checks) {
        os << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name;
        if (!c.witness.empty())
            os << "  (" << c.witness << ")";
        os << "\n";
    }
}

// Profile of a member: computed for quartics, declared and checked for Weierstrass models.
BelyiProfile member_profile(const MemberDescriptor & d, VerificationReport * check = nullptr)
{
    if (d.model.is_quartic())
        return belyi_profile_quartic(d);
    if (!d.profile)
        throw DataError(d.label + ": no declared ramification profile");
    VerificationReport R = verify_profile(d, {11, 13, 17});
    if (check)
        *check = R;
    if (!R.ok())
        throw DataError(d.label + ": declared profile fails: " + R.first_failure()->name + " " +
                        R.first_failure()->witness);
    return *d.profile;
}

class Driver {
public:
    explicit Driver(RunConfig cfg) : cfg_(std::move(cfg)) {}

    int enumerate();
    int torsion();
    int ramify();
    int genus();
    int sieve();
    int cusp_check();
    int validate();

private:
    RunConfig cfg_;
    std::ostringstream table_;

    bool machine() const { return cfg_.format == "machine"; }

    int emit(const std::string & command, json inputs, json results, int code)
    {
        std::string text;
        if (machine()) {
            json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["command"] = command;
            doc["inputs"] = std::move(inputs);
            doc["results"] = std::move(results);
            doc["content_hash"] = "fnv1a64:" + hex64(fnv1a(doc["results"].dump()));
            text = doc.dump(2) + "\n";
        } else {
            text = table_.str();
        }
        if (cfg_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(cfg_.out, std::ios::binary);
            if (!f)
                throw Failure{kUsage, "cannot write " + cfg_.out};
            f << text;
        }
        return code;
    }

    PairDescriptor pair(std::string * file = nullptr)
    {
        std::string f = resolve(cfg_.descriptor);
        if (kind_of(f) != "pair")
            throw Failure{kUsage, f + " is not a pair descriptor"};
        if (file)
            *file = f;
        return load_pair(f);
    }

    SieveOptions sieve_options(const PairDescriptor & P) const
    {
        SieveOptions opt;
        if (cfg_.primes_given) {
            auto [lo, hi] = parse_range(cfg_.primes);
            opt.lo = lo;
            opt.hi = hi;
        } else {
            opt.lo = P.prime_lo;
            opt.hi = P.prime_hi;
        }
        opt.workers = cfg_.workers;
        return opt;
    }
};

int Driver::enumerate()
{
    if (!is_prime(cfg_.p))
        throw Failure{kUsage, "--p must be a prime, got " + std::to_string(cfg_.p)};
    if (cfg_.k != 1 && cfg_.k != 2)
        throw Failure{kUsage, "--k must be 1 or 2"};
    std::string f = resolve(cfg_.descriptor);
    std::string kind = kind_of(f);
    std::vector<std::string> pts;
    std::string label;
    const FiniteField & F = FiniteField::get(cfg_.p, cfg_.k);
    if (kind == "member") {
        MemberDescriptor d = load_member(f);
        label = d.label;
        if (!is_good_reduction(d.model, cfg_.p))
            throw Failure{kData, d.label + " has bad reduction at " + std::to_string(cfg_.p)};
        for (const auto & P : enumerate_points(d.model, F))
            pts.push_back(point_str(P));
    } else if (kind == "pair") {
        PairDescriptor d = load_pair(f);
        label = d.label;
        if (auto why = prime_unusable(d, cfg_.p))
            throw Failure{kData, d.label + ": p = " + std::to_string(cfg_.p) + " unusable: " + *why};
        for (const auto & T : fibre_points_over(d, F))
            pts.push_back(fibre_point_str(T));
    } else {
        throw Failure{kUsage, f + ": enumerate needs a member or pair descriptor"};
    }
    std::sort(pts.begin(), pts.end());
    std::string joined;
    for (const auto & s : pts)
        joined += s + "\n";
    std::string hash = "fnv1a64:" + hex64(fnv1a(joined));
    table_ << "#" << label << "(F_" << cfg_.p << (cfg_.k == 2 ? "^2" : "") << ") = " << pts.size() << "\n";
    if (cfg_.list_points)
        for (const auto & s : pts)
            table_ << "  " << s << "\n";
    json res{{"count", pts.size()}, {"points_hash", hash}};
    if (cfg_.list_points)
        res["points"] = pts;
    return emit("enumerate", {{"descriptor", label}, {"p", cfg_.p}, {"k", cfg_.k}}, res, kOk);
}

int Driver::torsion()
{
    std::string f = resolve(cfg_.descriptor);
    if (kind_of(f) != "member")
        throw Failure{kUsage, f + " is not a member descriptor"};
    MemberDescriptor d = load_member(f);
    VerificationReport R = verify_mw_claim(d);
    print_report(table_, R);
    json shape = d.mw.shape;
    return emit("torsion", {{"descriptor", d.label}}, {{"shape", shape}, {"report", report_json(R)}},
                R.ok() ? kOk : kData);
}

int Driver::ramify()
{
    std::string f = resolve(cfg_.descriptor);
    std::string kind = kind_of(f);
    BelyiProfile P;
    std::string label, source;
    VerificationReport check;
    if (kind == "member") {
        MemberDescriptor d = load_member(f);
        label = d.label;
        P = member_profile(d, &check);
        source = d.model.is_quartic() ? "computed" : "declared, checked at 11, 13, 17";
    } else if (kind == "line_fixture") {
        LineFixture fx = load_line_fixture(f);
        label = fx.label;
        P = belyi_profile_rational(fx.num, fx.den);
        source = "computed";
    } else {
        throw Failure{kUsage, f + ": ramify needs a member or line fixture"};
    }
    int g = P.source_genus();
    table_ << label << ": " << P.str() << "\n  source genus " << g << " (" << source << ")\n";
    json res{{"profile", profile_json(P)}, {"source_genus", g}, {"source", source}};
    if (!check.checks.empty())
        res["check"] = report_json(check);
    return emit("ramify", {{"descriptor", label}}, res, kOk);
}

int Driver::genus()
{
    PairDescriptor d = pair();
    BelyiProfile a = member_profile(d.m1), b = member_profile(d.m2);
    int g = rh_genus_fibre_product(a, b);
    table_ << d.label << ": genus " << g << "\n";
    return emit("genus", {{"descriptor", d.label}}, {{"genus", g}}, kOk);
}

int Driver::sieve()
{
    PairDescriptor d = pair();
    SieveOptions opt = sieve_options(d);
    SieveReport R = run_sieve(d, opt);
    auto verdicts = rational_j_conclusion(d, R);
    const auto & G = R.groups;

    json per_prime = json::array();
    for (const auto & r : R.primes) {
        json e{{"p", r.p}, {"used", r.used}};
        if (!r.used) {
            e["skip_reason"] = r.skip_reason;
        } else {
            e["n1"] = r.n1;
            e["n2"] = r.n2;
            e["sym_square"] = r.sym;
            json rows = json::array();
            for (std::size_t i1 = 0; i1 < G.j1.size(); ++i1) {
                std::string row;
                for (std::size_t i2 = 0; i2 < G.j2.size(); ++i2)
                    row += r.hit[i1 * G.j2.size() + i2] ? '1' : '0';
                rows.push_back(row);
            }
            e["hit"] = rows;
        }
        per_prime.push_back(e);
    }
    json elim = json::array();
    for (std::size_t i1 = 0; i1 < G.j1.size(); ++i1)
        for (std::size_t i2 = 0; i2 < G.j2.size(); ++i2) {
            auto p = R.eliminating_prime(i1, i2);
            elim.push_back({{"j1", G.j1_labels[i1]}, {"j2", G.j2_labels[i2]},
                            {"eliminated_at", p ? json(p) : json(nullptr)}});
        }
    json surv = json::array();
    for (const auto & [i1, i2] : R.survivors)
        surv.push_back({{"j1", G.j1_labels[i1]}, {"j2", G.j2_labels[i2]}});
    json vj = json::array();
    for (const auto & v : verdicts) {
        json e{{"j1", G.j1_labels[v.i1]}, {"j2", G.j2_labels[v.i2]}, {"rational_j", v.rational_j}};
        if (v.rational_j) {
            e["representative"] = v.representative;
            e["pencil"] = pencil_str(v.pencil_den);
        } else {
            e["note"] = v.note;
        }
        vj.push_back(e);
    }
    json results{{"j1", G.j1_labels},       {"j2", G.j2_labels}, {"used_primes", R.used_primes()},
                 {"primes", per_prime},     {"elimination", elim}, {"survivors", surv},
                 {"rational_j", vj}};

    auto used = R.used_primes();
    table_ << d.label << ": sieve over " << used.size() << " primes in [" << opt.lo << ", " << opt.hi << "]\n";
    for (const auto & r : R.primes)
        if (!r.used)
            table_ << "  skipped p = " << r.p << ": " << r.skip_reason << "\n";
    table_ << "  J1(Q) x J2(Q): " << G.j1.size() << " x " << G.j2.size() << "\n";
    std::size_t w = 0;
    for (const auto & s : G.j1_labels)
        w = std::max(w, s.size());
    for (std::size_t i1 = 0; i1 < G.j1.size(); ++i1)
        for (std::size_t i2 = 0; i2 < G.j2.size(); ++i2) {
            auto p = R.eliminating_prime(i1, i2);
            table_ << "  " << std::left << std::setw(static_cast<int>(w)) << G.j1_labels[i1] << "  "
                   << G.j2_labels[i2] << "  " << (p ? "eliminated at " + std::to_string(p) : "survives") << "\n";
        }
    if (R.survivors.empty()) {
        table_ << "surviving set: empty\n";
    } else {
        table_ << "surviving set:\n";
        for (std::size_t k = 0; k < verdicts.size(); ++k) {
            const auto & v = verdicts[k];
            table_ << "  (" << G.j1_labels[v.i1] << ", " << G.j2_labels[v.i2] << ")";
            if (v.rational_j)
                table_ << "  rational j: " << v.representative << ", basis " << pencil_str(v.pencil_den);
            else
                table_ << "  inconclusive: " << v.note;
            table_ << "\n";
        }
    }
    json inputs{{"descriptor", d.label}, {"primes", std::to_string(opt.lo) + ".." + std::to_string(opt.hi)}};
    return emit("sieve", inputs, results, R.survivors.empty() ? kEmpty : kOk);
}

int Driver::cusp_check()
{
    PairDescriptor d = pair();
    SieveOptions opt = sieve_options(d);
    SieveReport R = run_sieve(d, opt);
    CuspConsistencyReport C = cusp_consistency_check(d, R);
    const auto & S = C.special;
    const auto & G = R.groups;
    json counts;
    for (int b = 0; b < 3; ++b)
        counts[branch_name(b)] = {{"rational", S.rational_count[b]}, {"quadratic", S.quadratic_count[b]}};
    json vals = json::array();
    for (const auto & v : C.values)
        vals.push_back({{"divisor", v.divisor},
                        {"above", branch_name(v.branch)},
                        {"j1", G.j1_labels[v.i1]},
                        {"j2", G.j2_labels[v.i2]},
                        {"survives", v.survives}});
    json pts = json::array();
    for (const auto & s : S.points)
        pts.push_back(special_point_str(s));
    json results{{"sufficient", S.sufficient}, {"counts", counts}, {"points", pts},
                 {"alpha", vals},            {"notes", S.notes}, {"ok", C.ok()}};
    if (!S.sufficient)
        results["insufficient_reason"] = S.insufficient_reason;

    table_ << d.label << ": special points\n";
    for (int b = 0; b < 3; ++b)
        table_ << "  above " << branch_name(b) << ": " << S.rational_count[b] << " rational, "
               << S.quadratic_count[b] << " quadratic\n";
    if (!S.sufficient)
        table_ << "  insufficient: " << S.insufficient_reason << "\n";
    for (const auto & v : C.values)
        table_ << "  alpha(" << v.divisor << ") = (" << G.j1_labels[v.i1] << ", " << G.j2_labels[v.i2] << ")  "
               << (v.survives ? "in surviving set" : "NOT in surviving set") << "\n";
    table_ << "consistency: " << (C.ok() ? "ok" : "FAILED") << "\n";
    json inputs{{"descriptor", d.label}, {"primes", std::to_string(opt.lo) + ".." + std::to_string(opt.hi)}};
    return emit("cusp-check", inputs, results, C.ok() ? kOk : kData);
}

int Driver::validate()
{
    std::string f = resolve(cfg_.descriptor);
    std::string kind = kind_of(f);
    VerificationReport R;
    std::string label;
    if (kind == "member") {
        MemberDescriptor d = load_member(f);
        label = d.label;
        R = validate_descriptor(d);
    } else if (kind == "pair") {
        PairDescriptor d = load_pair(f);
        label = d.label;
        R = validate_pair(d);
    } else if (kind == "line_fixture") {
        LineFixture fx = load_line_fixture(f);
        label = fx.label;
        R.subject = fx.label;
        BelyiProfile P = belyi_profile_rational(fx.num, fx.den);
        R.add("profile consistent", P.consistent(), P.str());
        R.add("genus 0 source", P.source_genus() == 0, "genus " + std::to_string(P.source_genus()));
    } else {
        throw Failure{kData, f + ": unknown kind '" + kind + "'"};
    }
    print_report(table_, R);
    return emit("validate", {{"descriptor", label}}, report_json(R), R.ok() ? kOk : kData);
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Symmetric-square fibre-product sieve for quadratic points on modular curves.", "fibre_sieve"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    RunConfig cfg;

    auto common = [&](CLI::App * sub, bool with_primes) {
        sub->add_option("descriptor", cfg.descriptor, "Descriptor file, or a bundled label (e.g. b3b5d7, d7, ns7)")
            ->required();
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"table", "machine"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "Write the report to PATH instead of stdout");
        if (with_primes) {
            sub->add_option("--primes", cfg.primes, "Prime range A..B (default: the pair's range, 11..99)");
            sub->add_option("--workers", cfg.workers, "Worker threads for per-prime work")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        }
    };

    auto * en = app.add_subcommand("enumerate", "Count points of a member or of the fibre product over F_p or F_p^2");
    common(en, false);
    en->add_option("--p", cfg.p, "Prime p")->required();
    en->add_option("--k", cfg.k, "Extension degree, 1 or 2")->capture_default_str();
    en->add_flag("--points", cfg.list_points, "Also list the points");

    auto * to = app.add_subcommand("torsion", "Verify the Mordell-Weil claim of a member descriptor");
    common(to, false);
    auto * ra = app.add_subcommand("ramify", "Ramification profile of a member j-map or a line fixture");
    common(ra, false);
    auto * ge = app.add_subcommand("genus", "Riemann-Hurwitz genus of the normalized fibre product of a pair");
    common(ge, false);
    auto * si = app.add_subcommand("sieve", "Run the symmetric-square sieve on a pair (exit 10 when nothing survives)");
    common(si, true);
    auto * cc = app.add_subcommand("cusp-check", "Compare alpha of the special quadratic points with the survivors");
    common(cc, true);
    auto * va = app.add_subcommand("validate", "Validate a member, pair or fixture descriptor");
    common(va, false);

    app.footer("Exit codes: 0 success, 10 empty surviving set, 2 usage error, 3 data or validation failure.\n"
               "FIBRE_SIEVE_DATA overrides the bundled data directory.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        app.exit(e);
        return kUsage;
    }
    for (auto * s : {si, cc})
        if (s->parsed())
            cfg.primes_given = s->count("--primes") > 0;

    Driver drv(cfg);
    try {
        if (en->parsed())
            return drv.enumerate();
        if (to->parsed())
            return drv.torsion();
        if (ra->parsed())
            return drv.ramify();
        if (ge->parsed())
            return drv.genus();
        if (si->parsed())
            return drv.sieve();
        if (cc->parsed())
            return drv.cusp_check();
        return drv.validate();
    } catch (const Failure & f) {
        std::cerr << "fibre_sieve: " << f.msg << "\n";
        return f.code;
    } catch (const UsageError & e) {
        std::cerr << "fibre_sieve: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception & e) {
        std::cerr << "fibre_sieve: " << e.what() << "\n";
        return kData;
    }
}
