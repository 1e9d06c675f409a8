// jacmax: command-line front end. Every subcommand prints one report
// {"tool", "version", "schema", "command", "seed", "wall_time_ms", "result", ...}.
//
// Exit codes: 0 certified/true, 1 checked and false, 2 inconclusive,
// 64 usage, 65 malformed input, 66 unreadable input, 70 internal error.

#include "jacmax/criterion.hpp"
#include "jacmax/divfields.hpp"
#include "jacmax/errors.hpp"
#include "jacmax/family.hpp"
#include "jacmax/groupforge.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

using namespace jacmax;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchema = 1;

enum Exit : int { Certified = 0, False = 1, Inconclusive = 2, Usage = 64, DataErr = 65, NoInput = 66, Software = 70 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    Json result;
    int code = Certified;
    std::vector<std::string> assumptions;
};

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "json";
    bool json = false;
    bool oracle = false;
};

Json load(const std::string& path)
{
    std::ifstream probe(path);
    if (!probe)
        throw IoError("cannot open " + path);
    return read_json_file(path);
}

std::vector<BigInt> parse_integer_list(const std::string& s)
{
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) {
            BigInt v;
            if (v.set_str(tok, 10) != 0)
                throw CLI::ValidationError("integer list", "not an integer: " + tok);
            out.push_back(v);
        }
    return out;
}

// Complete factorizations keyed by decimal value, persisted as JSON.
class FactorCache {
public:
    explicit FactorCache(const char* path) : path_(path ? path : "")
    {
        if (path_.empty())
            return;
        std::ifstream in(path_);
        if (!in)
            return;
        try {
            data_ = read_json_file(path_);
        } catch (const FormatError&) {
            data_ = Json::object();
        }
        if (!data_.is_object())
            data_ = Json::object();
    }

    BoundedFactorization factor(const BigInt& n)
    {
        const std::string key = n.get_str();
        if (data_.contains(key)) {
            BoundedFactorization f;
            for (const auto& pe : data_.at(key))
                f.primes.emplace_back(BigInt(pe.at(0).get<std::string>()), pe.at(1).get<unsigned long>());
            return f;
        }
        auto f = factor_bounded(n);
        if (!path_.empty() && f.cofactors.empty()) {
            Json entry = Json::array();
            for (const auto& [p, e] : f.primes)
                entry.push_back(Json::array({p.get_str(), e}));
            data_[key] = std::move(entry);
            std::ofstream out(path_);
            out << data_.dump() << "\n";
        }
        return f;
    }

private:
    std::string path_;
    Json data_ = Json::object();
};

Json factorization_json(const BoundedFactorization& f)
{
    Json primes = Json::array(), rest = Json::array();
    for (const auto& [p, e] : f.primes)
        primes.push_back(Json{{"p", p.get_str()}, {"e", e}});
    for (const auto& [c, e] : f.cofactors)
        rest.push_back(Json{{"n", c.get_str()}, {"e", e}});
    return Json{{"primes", std::move(primes)}, {"unfactored", std::move(rest)}};
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs {
    std::string curves;
    std::uint64_t bound = 1000;
    bool sn = false;
    std::uint64_t prime_bound = 10000;
};

Outcome run_certify(const CertifyArgs& a, const Globals& g)
{
    const Json doc = load(a.curves);
    const auto curves = curves_from_json(doc);
    if (g.oracle)
        for (const auto& c : curves)
            if (discriminant(c.f, ResultantMethod::Sylvester) != c.disc)
                throw ConsistencyError("discriminant cross-check failed for " + c.label);

    std::set<std::string> labels;
    for (const auto& c : curves)
        if (!labels.insert(c.label).second)
            throw FormatError("duplicate curve label " + c.label);

    const auto w = find_witnesses(curves, a.bound);
    std::vector<ClaimedWitness> claims;
    const bool explicit_claims = doc.contains("claims");
    if (explicit_claims) {
        for (const auto& c : doc.at("claims")) {
            if (!c.is_object() || !c.contains("curve") || !c.contains("ell") || !c.at("curve").is_number_unsigned())
                throw FormatError("claims: expected {\"curve\": index, \"ell\": prime}");
            claims.push_back({c.at("curve").get<std::size_t>(), bigint_from_json(c.at("ell"), "claims.ell")});
        }
    } else {
        for (const auto& cw : w.curves)
            if (cw.ell)
                claims.push_back({cw.index, BigInt(std::to_string(*cw.ell))});
    }
    const auto table = verify_witnesses(curves, claims);
    Outcome out;
    out.result = certify_report(curves, w, table);
    out.result["claims_source"] = explicit_claims ? "file" : "search";
    bool covered = true;
    {
        std::set<std::size_t> seen;
        for (const auto& c : claims)
            seen.insert(c.index);
        covered = seen.size() == curves.size();
    }
    if (a.sn) {
        Json certs = Json::array();
        bool all = true;
        for (const auto& c : curves) {
            const auto sn = sn_certificate(c.f, a.prime_bound, g.threads);
            all = all && sn.certificate.has_value();
            certs.push_back(Json{{"label", c.label},
                                 {"searched_bound", sn.searched_bound},
                                 {"certificate", sn.certificate ? to_json(*sn.certificate) : Json(nullptr)}});
        }
        out.result["sn_certificates"] = std::move(certs);
        covered = covered && all;
    }
    if (explicit_claims && !table.all_pass)
        out.code = False;
    else if (w.all_certified() && table.all_pass && covered)
        out.code = Certified;
    else
        out.code = Inconclusive;
    out.result["status"] = out.code == Certified ? "certified" : out.code == False ? "false" : "inconclusive";
    out.assumptions = criterion_assumptions(curves.size());
    return out;
}

// ---- family / family-verify -------------------------------------------------

struct FamilyArgs {
    std::string chain;
    unsigned pairs = 5;
    std::int64_t t_bound = 1000;
    std::uint64_t prime_bound = 100000;
};

Json table_json(const ChainTable& t)
{
    return Json{{"valuations", t.valuations}, {"checks", t.checks}, {"passed", t.passed()},
                {"total", t.checks.empty() ? 0 : t.checks.size() * t.checks[0].size()},
                {"all_pass", t.all_pass}};
}

Outcome run_family(const FamilyArgs& a, const Globals& g)
{
    const auto doc = chain_from_json(load(a.chain));
    const auto spec = build_family(doc.f, doc.N);
    FamilyChain chain = doc.chain;
    if (!chain.pairs.empty() && !chain_is_well_formed(spec, chain))
        throw FormatError("input chain is not well formed");
    ExtendOptions opt;
    opt.t_bound = a.t_bound;
    opt.prime_bound = a.prime_bound;
    opt.threads = g.threads;
    Json added = Json::array();
    std::size_t corrections = 0;
    bool exhausted = false;
    for (unsigned k = 0; k < a.pairs; ++k) {
        const auto r = extend_chain(spec, chain, opt);
        corrections += r.corrections.size();
        if (!r.added) {
            exhausted = true;
            break;
        }
        chain = r.chain;
        added.push_back(Json{{"t", r.added->t}, {"ell", r.added->ell}, {"via_correction", r.via_correction}});
    }
    const auto table = verify_chain(spec, chain);
    Outcome out;
    out.result = Json{{"delta_t_degree", spec.delta_t.degree()},
                      {"d_nonzero", spec.d != 0},
                      {"chain", chain_to_json(spec, chain)},
                      {"added", std::move(added)},
                      {"correction_events", corrections},
                      {"table", table_json(table)}};
    out.code = !table.all_pass ? False : exhausted ? Inconclusive : Certified;
    out.assumptions = criterion_assumptions(chain.pairs.size());
    return out;
}

struct VerifyArgs {
    std::string chain;
};

Outcome run_family_verify(const VerifyArgs& a, const Globals& g)
{
    const auto doc = chain_from_json(load(a.chain));
    const auto spec = build_family(doc.f, doc.N);
    const auto table = verify_chain(spec, doc.chain);
    if (g.oracle)
        for (std::size_t j = 0; j < doc.chain.pairs.size(); ++j) {
            const BigInt t(std::to_string(doc.chain.pairs[j].t));
            if (spec.delta_t.eval(t) != spec.delta_at(t))
                throw ConsistencyError("interpolated Delta(t) disagrees with the direct discriminant");
        }
    Outcome out;
    out.result = Json{{"pairs", doc.chain.pairs.size()},
                      {"well_formed", chain_is_well_formed(spec, doc.chain)},
                      {"table", table_json(table)}};
    out.code = table.all_pass ? Certified : False;
    out.assumptions = criterion_assumptions(doc.chain.pairs.size());
    return out;
}

// ---- discriminant -----------------------------------------------------------

struct DiscArgs {
    std::string poly_file;
    std::string coeffs;
    bool factor = false;
};

Outcome run_discriminant(const DiscArgs& a, const Globals& g)
{
    IntPoly f;
    if (!a.poly_file.empty())
        f = poly_from_json(load(a.poly_file));
    else {
        std::vector<BigInt> c = parse_integer_list(a.coeffs);
        if (c.empty())
            throw CLI::ValidationError("--coeffs", "empty coefficient list");
        f = IntPoly(std::move(c));
    }
    const BigInt d = discriminant(f);
    if (g.oracle && discriminant(f, ResultantMethod::Sylvester) != d)
        throw ConsistencyError("discriminant cross-check failed");
    Outcome out;
    out.result = Json{{"poly", poly_to_json(f)}, {"degree", f.degree()}, {"discriminant", d.get_str()}};
    if (f.degree() >= 3)
        out.result["genus"] = hyperelliptic_genus(f);
    if (a.factor && d != 0) {
        FactorCache cache(std::getenv("JACMAX_CACHE"));
        const auto fac = cache.factor(d);
        out.result["factorization"] = factorization_json(fac);
        if (!fac.cofactors.empty())
            out.code = Inconclusive;
    }
    return out;
}

// ---- divfield-intersect -----------------------------------------------------

struct DivArgs {
    std::uint32_t m1 = 1, m2 = 1;
    std::string deltas_a, deltas_b;
};

Outcome run_divfields(const DivArgs& a, const Globals& g)
{
    const auto da = parse_integer_list(a.deltas_a), db = parse_integer_list(a.deltas_b);
    const auto ka = field_from_data(a.m1, da), kb = field_from_data(a.m2, db);
    const auto k = intersect(ka, kb);
    if (g.oracle) {
        const std::uint32_t l = std::lcm(ka.level(), kb.level());
        auto gens = ka.lift(l).generators();
        for (auto x : kb.lift(l).generators())
            gens.push_back(x);
        if (!(AbelianField::from_generators(l, gens).canonicalize() == k))
            throw ConsistencyError("lcm-level join disagrees with the intersection");
    }
    Outcome out;
    out.result = Json{{"m1", a.m1},
                      {"m2", a.m2},
                      {"field_a", to_json(ka)},
                      {"field_b", to_json(kb)},
                      {"intersection", to_json(k)},
                      {"description", to_json(describe(k))}};
    return out;
}

// ---- grouplab ---------------------------------------------------------------

struct GroupArgs {
    std::string suite;
    std::vector<std::string> params;
    std::size_t trials = 0;
};

class Params {
public:
    explicit Params(const std::vector<std::string>& kv)
    {
        for (const auto& s : kv) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--params", "expected key=value, got " + s);
            m_[s.substr(0, eq)] = s.substr(eq + 1);
        }
    }
    std::string str(const std::string& k, const std::string& def) const
    {
        const auto it = m_.find(k);
        return it == m_.end() ? def : it->second;
    }
    unsigned long num(const std::string& k, unsigned long def) const
    {
        const auto it = m_.find(k);
        if (it == m_.end())
            return def;
        try {
            return std::stoul(it->second);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--params", k + " must be a non-negative integer");
        }
    }
    std::vector<unsigned> list(const std::string& k, const std::string& def) const
    {
        std::vector<unsigned> out;
        for (const auto& v : parse_integer_list(str(k, def)))
            out.push_back(static_cast<unsigned>(v.get_ui()));
        return out;
    }

private:
    std::map<std::string, std::string> m_;
};

Outcome suite_embedding(const Params& p, const Globals& g)
{
    const unsigned genus = static_cast<unsigned>(p.num("g", 2));
    const unsigned n = 2 * genus + 2;
    Outcome out;
    const BigInt sym = embedded_group(symmetric_generators(n), genus).order();
    const BigInt alt = embedded_group(alternating_generators(n), genus).order();
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    const ModMatrix om = ModMatrix::omega(2, genus);

    std::mt19937_64 rng(g.seed);
    std::size_t checked = 0, sign_ok = 0, form_ok = 0;
    std::unordered_set<ModMatrix, ModMatrixHash> images;
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    const bool exhaustive = n <= 8;
    auto visit = [&](const Permutation& s) {
        const ModMatrix m = embed_permutation(s, genus);
        ++checked;
        form_ok += m.transpose() * om * m == om;
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                inv += s[i] > s[j];
        sign_ok += sign_character(m, genus) == (inv % 2 ? -1 : 1);
        if (exhaustive)
            images.insert(m);
    };
    if (exhaustive) {
        do
            visit(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        for (int t = 0; t < 1000; ++t) {
            std::shuffle(perm.begin(), perm.end(), rng);
            visit(perm);
        }
    }
    const bool ok = sym == fact && alt * 2 == fact && form_ok == checked && sign_ok == checked &&
                    (!exhaustive || images.size() == checked);
    out.result = Json{{"g", genus},
                      {"symmetric_order", sym.get_str()},
                      {"alternating_order", alt.get_str()},
                      {"elements_checked", checked},
                      {"exhaustive", exhaustive},
                      {"form_preserved", form_ok},
                      {"sign_matches", sign_ok},
                      {"distinct_images", exhaustive ? Json(images.size()) : Json(nullptr)},
                      {"ok", ok}};
    out.code = ok ? Certified : False;
    return out;
}

Json lie_check_json(const LieCheck& c)
{
    return Json{{"ok", c.ok}, {"dimension", c.dimension}, {"expected", c.expected}, {"note", c.note}};
}

Outcome suite_lie(const Params& p, const Globals&)
{
    const auto genera = p.list("genera", "2");
    const auto ell = static_cast<std::uint32_t>(p.num("ell", 3));
    const unsigned m_max = static_cast<unsigned>(p.num("m", 2));
    Outcome out;
    const auto a2 = check_A2(genera, ell), a3 = check_A3(genera, ell);
    const auto a0 = check_A0(genera, ell, m_max);
    Json levels = Json::array();
    for (const auto& lv : a0.levels)
        levels.push_back(Json{{"m", lv.m},
                              {"span_ok", lv.span_ok},
                              {"lifts_ok", lv.lifts_ok},
                              {"dimension", lv.dimension},
                              {"order_ok", lv.order_ok ? Json(*lv.order_ok) : Json(nullptr)}});
    out.result = Json{{"genera", genera},
                      {"ell", ell},
                      {"A0", Json{{"ok", a0.ok}, {"levels", std::move(levels)}}},
                      {"A2", lie_check_json(a2)},
                      {"A3", lie_check_json(a3)}};
    if (genera.size() == 1) {
        const auto spaces = lie_spaces(genera[0], ell);
        out.result["dims"] = Json{{"gsp", spaces.gsp.dimension()}, {"sp", spaces.sp.dimension()}};
    }
    out.code = a0.ok && a2.ok && a3.ok ? Certified : False;
    if (ell == 2)
        out.code = Inconclusive;
    return out;
}

Outcome suite_lifting(const Params& p, const Globals& g, std::size_t trials)
{
    const std::string kind = p.str("kind", "sp");
    Outcome out;
    if (kind == "sp") {
        const auto r = check_lifting_lemma(static_cast<unsigned>(p.num("g", 2)),
                                           static_cast<std::uint32_t>(p.num("ell", 3)), trials ? trials : 100, g.seed);
        out.result = to_json(r);
        out.code = r.counterexamples ? False : r.hypothesis_met ? Certified : Inconclusive;
    } else if (kind == "s2m") {
        const auto r = check_S2m_lifting(static_cast<unsigned>(p.num("g", 2)), static_cast<unsigned>(p.num("m", 2)),
                                         trials ? trials : 100, g.seed);
        out.result = to_json(r);
        out.code = r.counterexamples ? False : r.hypothesis_met ? Certified : Inconclusive;
    } else if (kind == "pairs") {
        const std::string base = p.str("base", "sl2f5");
        if (base != "sl2f5" && base != "sp4f3")
            throw CLI::ValidationError("--params", "base must be sl2f5 or sp4f3");
        const auto r = check_pair_surjection(static_cast<unsigned>(p.num("copies", 3)),
                                             base == "sl2f5" ? PairBase::SL2F5 : PairBase::Sp4F3,
                                             trials ? trials : 200, g.seed);
        out.result = to_json(r);
        out.code = r.counterexamples ? False : r.hypothesis_met ? Certified : Inconclusive;
    } else {
        throw CLI::ValidationError("--params", "kind must be sp, s2m or pairs");
    }
    return out;
}

Outcome suite_goursat(const Params& p, const Globals&)
{
    const std::string example = p.str("example", "diagonal");
    const auto sl5 = sp_generators(1, 5);
    std::vector<ModMatrix> gens;
    std::uint32_t mod = 5;
    BigInt expected;
    if (example == "product") {
        for (std::size_t b = 0; b < 2; ++b)
            for (const auto& s : sl5)
                gens.push_back(embed_block(s, {1, 1}, b));
        expected = 1;
    } else if (example == "diagonal") {
        gens = product_generators({sl5, sl5});
        expected = 120;
    } else if (example == "twist") {
        mod = 2;
        const std::vector<ModMatrix> gl{ModMatrix(2, 2, {1, 1, 0, 1}), ModMatrix(2, 2, {0, 1, 1, 0})};
        std::vector<ModMatrix> tw;
        for (const auto& x : gl)
            tw.push_back(x.transpose().inverse());
        gens = product_generators({gl, tw});
        expected = 6;
    } else {
        throw CLI::ValidationError("--params", "example must be product, diagonal or twist");
    }
    const auto d = goursat_decompose(FiniteMatrixGroup(mod, 4, gens), 2);
    Outcome out;
    out.result = Json{{"example", example}, {"data", to_json(d)}, {"expected_quotient", expected.get_str()}};
    out.code = d.consistent && d.quotient == expected ? Certified : False;
    return out;
}

Outcome suite_serre(const Params& p, const Globals&)
{
    const unsigned genus = static_cast<unsigned>(p.num("g", 2));
    BigInt delta;
    if (delta.set_str(p.str("delta", "12"), 10) != 0)
        throw CLI::ValidationError("--params", "delta must be an integer");
    const auto r = serre_subgroup(genus, delta);
    Outcome out;
    out.result = to_json(r);
    bool surj = true;
    for (auto [d, ok] : r.divisor_surjective)
        surj = surj && ok;
    out.code = r.index == 2 && surj ? Certified : False;
    return out;
}

Outcome suite_simplicity(const Params& p, const Globals&)
{
    const std::string group = p.str("group", "psp4f3");
    SimplicityResult s;
    if (group == "psp4f3")
        s = simplicity_check(symplectic_group(2, 3), {ModMatrix::scalar(3, 4, 2)});
    else if (group == "psl2f3")
        s = simplicity_check(FiniteMatrixGroup(3, 2, sp_generators(1, 3)), {ModMatrix::scalar(3, 2, 2)});
    else if (group == "psl2f5")
        s = simplicity_check(FiniteMatrixGroup(5, 2, sp_generators(1, 5)), {ModMatrix::scalar(5, 2, 4)});
    else
        throw CLI::ValidationError("--params", "group must be psp4f3, psl2f3 or psl2f5");
    Outcome out;
    out.result = Json{{"group", group}, {"result", to_json(s)}};
    out.code = s.simple ? Certified : False;
    return out;
}

Outcome run_grouplab(const GroupArgs& a, const Globals& g)
{
    const Params p(a.params);
    if (a.suite == "embedding")
        return suite_embedding(p, g);
    if (a.suite == "lie")
        return suite_lie(p, g);
    if (a.suite == "lifting")
        return suite_lifting(p, g, a.trials);
    if (a.suite == "goursat")
        return suite_goursat(p, g);
    if (a.suite == "serre")
        return suite_serre(p, g);
    if (a.suite == "simplicity")
        return suite_simplicity(p, g);
    throw CLI::ValidationError("--suite", "unknown suite " + a.suite);
}

// ---- output -----------------------------------------------------------------

void print_text(const Json& j, const std::string& indent, std::ostream& os)
{
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << indent << k << ":\n";
            print_text(v, indent + "  ", os);
        } else {
            os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

const char* code_name(int code)
{
    switch (code) {
    case Certified: return "certified";
    case False: return "false";
    case Inconclusive: return "inconclusive";
    default: return "error";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Maximal Galois image certificates for hyperelliptic Jacobians"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomized suites");
    app.add_option("--threads", g.threads, "Worker threads for prime scans")->check(CLI::Range(1u, 256u));
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--json", g.json, "Same as --format json");
    app.add_flag("--oracle", g.oracle, "Run slow cross-checks");
    app.set_version_flag("--version", kVersion);

    CertifyArgs ca;
    auto* certify = app.add_subcommand("certify", "Witness primes and the valuation table for a list of curves");
    certify->add_option("--curves", ca.curves, "Curves JSON file")->required();
    certify->add_option("--bound", ca.bound, "Largest witness prime searched");
    certify->add_flag("--sn", ca.sn, "Also search mod-2 symmetric group certificates");
    certify->add_option("--prime-bound", ca.prime_bound, "Prime bound for --sn");

    FamilyArgs fa;
    auto* family = app.add_subcommand("family", "Extend a (t, l) chain in a one-parameter family");
    family->add_option("--chain", fa.chain, "Chain JSON file (pairs may be empty)")->required();
    family->add_option("--pairs", fa.pairs, "Number of pairs to add");
    family->add_option("--t-bound", fa.t_bound, "Largest t examined");
    family->add_option("--prime-bound", fa.prime_bound, "Largest l examined");

    VerifyArgs va;
    auto* verify = app.add_subcommand("family-verify", "Check every valuation of a chain");
    verify->add_option("--chain", va.chain, "Chain JSON file")->required();

    DiscArgs da;
    auto* disc = app.add_subcommand("discriminant", "Exact discriminant of an integer polynomial");
    auto* pf = disc->add_option("--poly", da.poly_file, "Polynomial JSON file");
    auto* pc = disc->add_option("--coeffs", da.coeffs, "Ascending coefficients, comma separated");
    pf->excludes(pc);
    disc->add_flag("--factor", da.factor, "Bounded factorization (cached via JACMAX_CACHE)");

    DivArgs dv;
    auto* div = app.add_subcommand("divfield-intersect", "Intersection of two abelian division-field candidates");
    div->add_option("--m1", dv.m1)->required()->check(CLI::PositiveNumber);
    div->add_option("--m2", dv.m2)->required()->check(CLI::PositiveNumber);
    div->add_option("--deltas-a", dv.deltas_a, "Comma-separated discriminants");
    div->add_option("--deltas-b", dv.deltas_b, "Comma-separated discriminants");

    GroupArgs ga;
    auto* group = app.add_subcommand("grouplab", "Finite symplectic group suites");
    group->add_option("--suite", ga.suite)
        ->required()
        ->check(CLI::IsMember({"embedding", "lie", "lifting", "goursat", "serre", "simplicity"}));
    group->add_option("--params", ga.params, "key=value pairs");
    group->add_option("--trials", ga.trials, "Trial count for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    }
    if (!pf->count() && !pc->count() && disc->parsed()) {
        std::cerr << "discriminant: one of --poly, --coeffs is required\n";
        return Usage;
    }
    if (g.json)
        g.format = "json";

    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    std::string command;
    try {
        if (certify->parsed())
            out = run_certify(ca, g), command = "certify";
        else if (family->parsed())
            out = run_family(fa, g), command = "family";
        else if (verify->parsed())
            out = run_family_verify(va, g), command = "family-verify";
        else if (disc->parsed())
            out = run_discriminant(da, g), command = "discriminant";
        else if (div->parsed())
            out = run_divfields(dv, g), command = "divfield-intersect";
        else
            out = run_grouplab(ga, g), command = "grouplab";
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return Usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NoInput;
    } catch (const FormatError& e) {
        std::cerr << "malformed input: " << e.what();
        if (e.position() != FormatError::npos)
            std::cerr << " (byte " << e.position() << ")";
        std::cerr << "\n";
        return DataErr;
    } catch (const InconclusiveError& e) {
        out.code = Inconclusive;
        out.result = Json{{"status", "inconclusive"}, {"reason", e.what()}, {"detail", e.detail()}};
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return DataErr;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Software;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    Json argv_echo = Json::array();
    for (int i = 1; i < argc; ++i)
        argv_echo.push_back(argv[i]);
    Json report{{"tool", "jacmax"},
                {"version", kVersion},
                {"schema", kSchema},
                {"command", command},
                {"argv", std::move(argv_echo)},
                {"seed", g.seed},
                {"exit_code", out.code},
                {"outcome", code_name(out.code)},
                {"wall_time_ms", ms.count()},
                {"result", std::move(out.result)}};
    if (!out.assumptions.empty())
        report["assumptions"] = out.assumptions;

    if (g.format == "json")
        std::cout << report.dump(2) << "\n";
    else
        print_text(report, "", std::cout);
    return out.code;
}
