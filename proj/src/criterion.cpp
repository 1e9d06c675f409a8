#include "jacmax/criterion.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace jacmax {

int hyperelliptic_genus(const IntPoly& f)
{
    if (f.degree() < 1)
        throw DomainError("hyperelliptic_genus: constant polynomial");
    return (f.degree() - 1) / 2;
}

CurveInput CurveInput::make(std::string label, IntPoly f)
{
    if (f.degree() < 6 || f.degree() % 2 != 0)
        throw DomainError("curve " + label + ": degree must be even and at least 6");
    CurveInput c;
    c.disc = discriminant(f);
    if (c.disc == 0)
        throw DomainError("curve " + label + ": polynomial is not separable");
    c.genus = hyperelliptic_genus(f);
    c.label = std::move(label);
    c.f = std::move(f);
    return c;
}

bool PrimeWitnessSet::all_certified() const
{
    return !curves.empty() && std::all_of(curves.begin(), curves.end(), [](const CurveWitness& c) {
        return c.status == WitnessStatus::Certified;
    });
}

PrimeWitnessSet find_witnesses(const std::vector<CurveInput>& curves, std::uint64_t bound)
{
    if (curves.empty())
        throw DomainError("find_witnesses: no curves");
    std::set<std::string> labels;
    for (const auto& c : curves) {
        if (!labels.insert(c.label).second)
            throw DomainError("find_witnesses: duplicate label " + c.label);
        if (c.disc == 0)
            throw DomainError("find_witnesses: zero discriminant for " + c.label);
    }

    PrimeWitnessSet out;
    out.bound = bound;
    out.curves.resize(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        out.curves[i].index = i;
        out.curves[i].label = curves[i].label;
    }

    const std::size_t n = curves.size();
    for (std::uint32_t p : primes_up_to(bound)) {
        if (p == 2)
            continue;
        std::size_t hit = n;
        bool unique = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (mpz_fdiv_ui(curves[j].disc.get_mpz_t(), p) != 0)
                continue;
            if (hit != n) {
                unique = false;
                break;
            }
            hit = j;
        }
        if (hit == n || !unique)
            continue;
        const unsigned long sq = static_cast<unsigned long>(p) * p;
        if (mpz_fdiv_ui(curves[hit].disc.get_mpz_t(), sq) == 0)
            continue;
        auto& w = out.curves[hit];
        w.candidates.push_back(p);
        if (!w.ell) {
            w.ell = p;
            w.status = WitnessStatus::Certified;
            w.valuation_row.assign(n, 0);
            w.valuation_row[hit] = 1;
        }
    }
    return out;
}

WitnessTable verify_witnesses(const std::vector<CurveInput>& curves,
                              const std::vector<ClaimedWitness>& claimed)
{
    for (const auto& c : claimed) {
        if (c.ell <= 2)
            throw DomainError("verify_witnesses: witness primes must exceed 2");
        if (!is_probable_prime(c.ell))
            throw DomainError("verify_witnesses: " + c.ell.get_str() + " is not prime");
        if (c.index >= curves.size())
            throw DomainError("verify_witnesses: curve index out of range");
    }
    WitnessTable t;
    t.all_pass = true;
    for (const auto& c : claimed) {
        std::vector<unsigned long> vals;
        std::vector<bool> ok;
        for (std::size_t j = 0; j < curves.size(); ++j) {
            const unsigned long v = valuation(curves[j].disc, c.ell);
            vals.push_back(v);
            ok.push_back(j == c.index ? v == 1 : v == 0);
            t.all_pass = t.all_pass && ok.back();
        }
        t.valuations.push_back(std::move(vals));
        t.checks.push_back(std::move(ok));
    }
    return t;
}

int shape_sign(const FactorShape& s)
{
    const auto parts = static_cast<unsigned>(s.parts.size());
    return (s.total_degree() - parts) % 2 == 0 ? 1 : -1;
}

namespace {

bool jordan_interval_has_prime(unsigned n)
{
    for (unsigned q = n / 2 + 1; q + 2 < n; ++q)
        if (is_prime_u64(q))
            return true;
    return false;
}

bool is_full_cycle(const FactorShape& s, unsigned n)
{
    return s.parts.size() == 1 && s.parts[0] == std::make_pair(n, 1u);
}

bool is_jordan_cycle(const FactorShape& s, unsigned n)
{
    // exactly {q, 1, ..., 1}
    const auto d = s.degrees();
    if (d.empty())
        return false;
    const unsigned q = d[0];
    if (!(2 * q > n && q + 2 < n && is_prime_u64(q)))
        return false;
    return d.size() == 1 + n - q && d[1] == 1;
}

bool is_n_minus_one_cycle(const FactorShape& s, unsigned n)
{
    return s.degrees() == std::vector<unsigned>{n - 1, 1};
}

bool is_transposition_power(const FactorShape& s)
{
    unsigned twos = 0;
    for (unsigned d : s.degrees()) {
        if (d == 2)
            ++twos;
        else if (d % 2 == 0)
            return false;
    }
    return twos == 1;
}

} // namespace

SnOutcome sn_certificate(const IntPoly& f, std::uint64_t prime_bound, unsigned threads)
{
    const int deg = f.degree();
    if (deg < 5)
        throw DomainError("sn_certificate: degree below 5 unsupported");
    const unsigned n = static_cast<unsigned>(deg);
    const BigInt disc = discriminant(f);
    if (disc == 0)
        throw DomainError("sn_certificate: polynomial is not separable");
    const BigInt bad = disc * f.leading();
    const SnRoute route = jordan_interval_has_prime(n) ? SnRoute::Jordan : SnRoute::Transposition;

    std::vector<std::uint64_t> primes;
    for (std::uint32_t p : primes_up_to(prime_bound))
        if (p != 2 && mpz_fdiv_ui(bad.get_mpz_t(), p) != 0)
            primes.push_back(p);

    SnOutcome out;
    out.searched_bound = prime_bound;
    std::optional<ShapeWitness> irr, cyc, odd;
    std::set<std::vector<std::pair<unsigned, unsigned>>> seen;

    const unsigned workers = std::max(1u, threads);
    const std::size_t block = workers == 1 ? 16 : 64 * workers;
    for (std::size_t start = 0; start < primes.size(); start += block) {
        const std::size_t stop = std::min(primes.size(), start + block);
        std::vector<FactorShape> shapes(stop - start);
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k)
                shapes[k - start] = shape_of(reduce_mod(f, primes[k]));
        };
        if (workers == 1) {
            work(start, stop);
        } else {
            std::vector<std::future<void>> jobs;
            const std::size_t chunk = (stop - start + workers - 1) / workers;
            for (std::size_t lo = start; lo < stop; lo += chunk)
                jobs.push_back(std::async(std::launch::async, work, lo, std::min(stop, lo + chunk)));
            for (auto& j : jobs)
                j.get();
        }

        for (std::size_t k = start; k < stop; ++k) {
            const FactorShape& s = shapes[k - start];
            const ShapeWitness w{primes[k], s};
            if (seen.insert(s.parts).second)
                out.shapes_seen.push_back(w);
            if (!irr && is_full_cycle(s, n))
                irr = w;
            if (route == SnRoute::Jordan) {
                if (!cyc && is_jordan_cycle(s, n))
                    cyc = w;
                if (!odd && shape_sign(s) == -1)
                    odd = w;
            } else {
                if (!cyc && is_n_minus_one_cycle(s, n))
                    cyc = w;
                if (!odd && is_transposition_power(s))
                    odd = w;
            }
            if (irr && cyc && odd) {
                out.certificate = SnCertificate{route, *irr, *cyc, *odd, primes[k]};
                return out;
            }
        }
    }
    return out;
}

std::vector<std::string> criterion_assumptions(std::size_t curve_count)
{
    std::vector<std::string> a;
    a.push_back("maximal Galois image of each of the " + std::to_string(curve_count) +
                " Jacobians is assumed from the literature, not computed");
    a.push_back("the mod-2 image S_(2g+2) is only evidenced by an optional Frobenius-shape certificate");
    return a;
}

Json to_json(const FactorShape& s)
{
    Json parts = Json::array();
    for (auto [d, m] : s.parts)
        parts.push_back(Json::array({d, m}));
    return parts;
}

FactorShape factor_shape_from_json(const Json& j)
{
    if (!j.is_array())
        throw FormatError("shape: expected an array of [degree, multiplicity]");
    FactorShape s;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
            throw FormatError("shape: bad part");
        s.parts.emplace_back(p[0].get<unsigned>(), p[1].get<unsigned>());
    }
    return s;
}

namespace {

const char* status_name(WitnessStatus s)
{
    return s == WitnessStatus::Certified ? "certified" : "inconclusive";
}

WitnessStatus status_from(const std::string& s)
{
    if (s == "certified")
        return WitnessStatus::Certified;
    if (s == "inconclusive")
        return WitnessStatus::Inconclusive;
    throw FormatError("witness status: unknown value " + s);
}

Json shape_witness_json(const ShapeWitness& w)
{
    return Json{{"prime", w.prime}, {"shape", to_json(w.shape)}};
}

ShapeWitness shape_witness_from(const Json& j)
{
    return ShapeWitness{j.at("prime").get<std::uint64_t>(), factor_shape_from_json(j.at("shape"))};
}

} // namespace

Json to_json(const PrimeWitnessSet& w)
{
    Json list = Json::array();
    for (const auto& c : w.curves) {
        Json e{{"index", c.index},
               {"label", c.label},
               {"status", status_name(c.status)},
               {"ell", c.ell ? Json(*c.ell) : Json(nullptr)},
               {"candidates", c.candidates},
               {"valuations", c.valuation_row}};
        list.push_back(std::move(e));
    }
    return Json{{"bound", w.bound}, {"witnesses", std::move(list)}};
}

PrimeWitnessSet witness_set_from_json(const Json& j)
{
    try {
        PrimeWitnessSet w;
        w.bound = j.at("bound").get<std::uint64_t>();
        for (const auto& e : j.at("witnesses")) {
            CurveWitness c;
            c.index = e.at("index").get<std::size_t>();
            c.label = e.at("label").get<std::string>();
            c.status = status_from(e.at("status").get<std::string>());
            if (!e.at("ell").is_null())
                c.ell = e.at("ell").get<std::uint64_t>();
            c.candidates = e.at("candidates").get<std::vector<std::uint64_t>>();
            c.valuation_row = e.at("valuations").get<std::vector<unsigned long>>();
            w.curves.push_back(std::move(c));
        }
        return w;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("witness set: ") + e.what());
    }
}

Json to_json(const SnCertificate& c)
{
    return Json{{"route", c.route == SnRoute::Jordan ? "jordan" : "transposition"},
                {"irreducible", shape_witness_json(c.irreducible)},
                {"cycle", shape_witness_json(c.cycle)},
                {"odd", shape_witness_json(c.odd)},
                {"searched_bound", c.searched_bound}};
}

SnCertificate sn_certificate_from_json(const Json& j)
{
    try {
        SnCertificate c;
        const std::string r = j.at("route").get<std::string>();
        if (r == "jordan")
            c.route = SnRoute::Jordan;
        else if (r == "transposition")
            c.route = SnRoute::Transposition;
        else
            throw FormatError("certificate: unknown route " + r);
        c.irreducible = shape_witness_from(j.at("irreducible"));
        c.cycle = shape_witness_from(j.at("cycle"));
        c.odd = shape_witness_from(j.at("odd"));
        c.searched_bound = j.at("searched_bound").get<std::uint64_t>();
        return c;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("certificate: ") + e.what());
    }
}

Json to_json(const WitnessTable& t)
{
    return Json(t.checks);
}

std::vector<CurveInput> curves_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("curves") || !j.at("curves").is_array())
        throw FormatError("curves file: expected {\"curves\": [...]}");
    std::vector<CurveInput> out;
    std::size_t k = 0;
    for (const auto& c : j.at("curves")) {
        const std::string where = "curves[" + std::to_string(k++) + "]";
        if (!c.is_object() || !c.contains("poly"))
            throw FormatError(where + ": expected {\"label\", \"poly\"}");
        std::string label = where;
        if (c.contains("label")) {
            if (!c.at("label").is_string())
                throw FormatError(where + ".label: expected a string");
            label = c.at("label").get<std::string>();
        }
        out.push_back(CurveInput::make(std::move(label), poly_from_json(c.at("poly"), where + ".poly")));
    }
    return out;
}

Json curves_to_json(const std::vector<CurveInput>& curves)
{
    Json list = Json::array();
    for (const auto& c : curves)
        list.push_back(Json{{"label", c.label}, {"poly", poly_to_json(c.f)}});
    return Json{{"curves", std::move(list)}};
}

Json certify_report(const std::vector<CurveInput>& curves, const PrimeWitnessSet& w,
                    const WitnessTable& t)
{
    Json cs = Json::array();
    for (const auto& c : curves)
        cs.push_back(Json{{"label", c.label},
                          {"degree", c.f.degree()},
                          {"genus", c.genus},
                          {"disc", c.disc.get_str()},
                          {"disc_bits", mpz_sizeinbase(c.disc.get_mpz_t(), 2)}});
    const Json wj = to_json(w);
    const bool ok = w.all_certified() && t.all_pass;
    return Json{{"curves", std::move(cs)},
                {"bound", wj.at("bound")},
                {"witnesses", wj.at("witnesses")},
                {"table", to_json(t)},
                {"assumptions", criterion_assumptions(curves.size())},
                {"status", ok ? "certified" : "inconclusive"}};
}

} // namespace jacmax
