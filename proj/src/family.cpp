#include "jacmax/family.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>

namespace jacmax {

BigInt FamilySpec::delta_at(const BigInt& t) const { return discriminant(member(t)); }

bool FamilySpec::hyperelliptic_model() const { return f.degree() >= 6 && f.degree() % 2 == 0; }

FamilySpec build_family(const IntPoly& f, const BigInt& N)
{
    if (f.degree() < 2)
        throw DomainError("build_family: degree below 2");
    if (N == 0)
        throw DomainError("build_family: N = 0");
    if (discriminant(f) == 0)
        throw DomainError("build_family: f is not separable");
    FamilySpec s;
    s.f = f;
    s.N = N;
    s.delta_t = interpolate_family_discriminant(f, N);
    if (s.delta_t.degree() < 1)
        throw DomainError("build_family: delta(t) is constant");
    s.d = discriminant(s.delta_t);
    if (s.d == 0)
        throw DomainError("build_family: delta(t) has a repeated root (d = 0)");
    return s;
}

namespace {

constexpr unsigned long kUndefinedOrd = std::numeric_limits<unsigned long>::max();

unsigned long ord_or_undefined(const BigInt& n, std::uint64_t p)
{
    return n == 0 ? kUndefinedOrd : valuation(n, BigInt(std::to_string(p)));
}

bool divides(std::uint64_t p, const BigInt& n) { return mpz_fdiv_ui(n.get_mpz_t(), p) == 0; }

std::vector<BigInt> deltas_for(const FamilySpec& spec, std::int64_t lo, std::int64_t hi, unsigned threads)
{
    std::vector<BigInt> out(static_cast<std::size_t>(hi - lo));
    auto work = [&](std::int64_t a, std::int64_t b) {
        for (std::int64_t t = a; t < b; ++t)
            out[static_cast<std::size_t>(t - lo)] = spec.delta_at(BigInt(std::to_string(t)));
    };
    if (threads <= 1) {
        work(lo, hi);
        return out;
    }
    std::vector<std::future<void>> jobs;
    const std::int64_t chunk = std::max<std::int64_t>(1, (hi - lo + threads - 1) / threads);
    for (std::int64_t a = lo; a < hi; a += chunk)
        jobs.push_back(std::async(std::launch::async, work, a, std::min(hi, a + chunk)));
    for (auto& j : jobs)
        j.get();
    return out;
}

} // namespace

ExtendOutcome extend_chain(const FamilySpec& spec, const FamilyChain& chain, const ExtendOptions& opt)
{
    ExtendOutcome out;
    out.chain = chain;
    std::int64_t start = chain.pairs.empty() ? 0 : chain.pairs.back().t + 1;
    if (opt.resume_from)
        start = std::max(start, *opt.resume_from);

    std::vector<BigInt> earlier;
    for (const auto& p : chain.pairs)
        earlier.push_back(spec.delta_at(BigInt(std::to_string(p.t))));

    std::vector<std::uint64_t> primes;
    for (std::uint32_t p : primes_up_to(opt.prime_bound)) {
        if (p == 2 || divides(p, spec.d))
            continue;
        if (std::any_of(earlier.begin(), earlier.end(), [&](const BigInt& D) { return divides(p, D); }))
            continue;
        primes.push_back(p);
    }
    const BigInt lc = spec.delta_t.leading();

    auto clean_at = [&](const BigInt& D) {
        return std::none_of(chain.pairs.begin(), chain.pairs.end(),
                            [&](const ChainPair& q) { return divides(q.ell, D); });
    };

    const std::int64_t block = std::max<std::int64_t>(8, 4 * static_cast<std::int64_t>(opt.threads));
    for (std::int64_t lo = start; lo <= opt.t_bound; lo += block) {
        const std::int64_t hi = std::min(opt.t_bound + 1, lo + block);
        const auto deltas = deltas_for(spec, lo, hi, opt.threads);
        for (std::int64_t t = lo; t < hi; ++t) {
            const BigInt& D = deltas[static_cast<std::size_t>(t - lo)];
            if (D == 0 || !clean_at(D))
                continue;
            for (std::uint64_t ell : primes) {
                if (!divides(ell, D))
                    continue;
                const unsigned long ord = valuation(D, BigInt(std::to_string(ell)));
                if (ord == 1) {
                    out.added = ChainPair{t, ell};
                    out.chain.pairs.push_back(*out.added);
                    out.resume_from = t + 1;
                    return out;
                }
                const BigInt shifted = spec.delta_at(BigInt(std::to_string(t)) + BigInt(std::to_string(ell)));
                out.corrections.push_back(
                    {t, ell, ord, ord_or_undefined(shifted, ell), divides(ell, lc)});
            }
        }
    }
    out.resume_from = opt.t_bound + 1;

    // shifted candidates beyond the scanned range, smallest (t + l, l) first
    std::vector<CorrectionEvent> ev = out.corrections;
    std::sort(ev.begin(), ev.end(), [](const CorrectionEvent& a, const CorrectionEvent& b) {
        const auto ta = a.t + static_cast<std::int64_t>(a.ell), tb = b.t + static_cast<std::int64_t>(b.ell);
        return ta != tb ? ta < tb : a.ell < b.ell;
    });
    for (const auto& e : ev) {
        const std::int64_t t2 = e.t + static_cast<std::int64_t>(e.ell);
        if (t2 <= opt.t_bound || e.ord_at_shift != 1)
            continue;
        const BigInt D = spec.delta_at(BigInt(std::to_string(t2)));
        if (!clean_at(D))
            continue;
        out.added = ChainPair{t2, e.ell};
        out.via_correction = true;
        out.chain.pairs.push_back(*out.added);
        return out;
    }
    return out;
}

std::size_t ChainTable::passed() const
{
    std::size_t n = 0;
    for (const auto& row : checks)
        n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    return n;
}

ChainTable verify_chain(const FamilySpec& spec, const FamilyChain& chain)
{
    ChainTable tab;
    std::vector<BigInt> deltas;
    for (const auto& p : chain.pairs)
        deltas.push_back(spec.delta_at(BigInt(std::to_string(p.t))));
    for (std::size_t i = 0; i < chain.pairs.size(); ++i) {
        const BigInt ell(std::to_string(chain.pairs[i].ell));
        std::vector<unsigned long> vals;
        std::vector<bool> ok;
        for (std::size_t j = 0; j < chain.pairs.size(); ++j) {
            const unsigned long v = deltas[j] == 0 ? kUndefinedOrd : valuation(deltas[j], ell);
            vals.push_back(v);
            ok.push_back(i == j ? v == 1 : v == 0);
            tab.all_pass = tab.all_pass && ok.back();
        }
        tab.valuations.push_back(std::move(vals));
        tab.checks.push_back(std::move(ok));
    }
    return tab;
}

bool chain_is_well_formed(const FamilySpec& spec, const FamilyChain& chain)
{
    std::set<std::uint64_t> ells;
    for (std::size_t i = 0; i < chain.pairs.size(); ++i) {
        const auto& p = chain.pairs[i];
        if (i > 0 && p.t <= chain.pairs[i - 1].t)
            return false;
        if (p.ell <= 2 || !is_prime_u64(p.ell) || !ells.insert(p.ell).second)
            return false;
        if (divides(p.ell, spec.d))
            return false;
    }
    return true;
}

Json chain_to_json(const FamilySpec& spec, const FamilyChain& chain)
{
    Json pairs = Json::array();
    for (const auto& p : chain.pairs)
        pairs.push_back(Json{{"t", p.t}, {"ell", p.ell}});
    return Json{{"family", Json{{"f", poly_to_json(spec.f)}, {"N", bigint_to_json(spec.N)}}},
                {"pairs", std::move(pairs)}};
}

ChainDocument chain_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("family") || !j.contains("pairs"))
        throw FormatError("chain: expected {\"family\", \"pairs\"}");
    const Json& fam = j.at("family");
    if (!fam.is_object() || !fam.contains("f") || !fam.contains("N"))
        throw FormatError("chain.family: expected {\"f\", \"N\"}");
    ChainDocument doc;
    doc.f = poly_from_json(fam.at("f"), "chain.family.f");
    doc.N = bigint_from_json(fam.at("N"), "chain.family.N");
    if (!j.at("pairs").is_array())
        throw FormatError("chain.pairs: expected an array");
    std::size_t k = 0;
    for (const auto& p : j.at("pairs")) {
        const std::string where = "chain.pairs[" + std::to_string(k++) + "]";
        if (!p.is_object() || !p.contains("t") || !p.contains("ell") || !p.at("t").is_number_integer() ||
            !p.at("ell").is_number_unsigned())
            throw FormatError(where + ": expected {\"t\": integer, \"ell\": positive integer}");
        doc.chain.pairs.push_back({p.at("t").get<std::int64_t>(), p.at("ell").get<std::uint64_t>()});
    }
    return doc;
}

} // namespace jacmax
