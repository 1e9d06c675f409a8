#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + JACMAX_BIN + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(JACMAX_DATA) + "/" + name; }

nlohmann::ordered_json payload(const Run& r)
{
    auto j = nlohmann::ordered_json::parse(r.out);
    j.erase("wall_time_ms");
    return j;
}

std::filesystem::path scratch(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("jacmax_cli_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST_CASE("certify")
{
    const auto r = run("certify --curves " + data("paper_examples.json"));
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"] == "certified");
    std::vector<std::uint64_t> found;
    for (const auto& w : j["result"]["witnesses"])
        for (const auto& c : w["candidates"])
            found.push_back(c.get<std::uint64_t>());
    for (std::uint64_t ell : {421u, 13u, 89u})
        CHECK(std::count(found.begin(), found.end(), ell) == 1);
    CHECK(j["assumptions"].size() > 0);

    CHECK(run("certify --curves " + data("duplicate_curve.json")).code == 2);
    CHECK(run("certify --curves " + data("paper_examples.json") + " --bound 100").code == 2);
}

TEST_CASE("claimed witnesses that fail are reported false")
{
    auto doc = nlohmann::ordered_json::parse(std::ifstream(data("paper_examples.json")));
    doc["claims"][0]["ell"] = "13";
    const auto path = scratch("claims.json");
    std::ofstream(path) << doc.dump();
    CHECK(run("certify --curves " + path.string()).code == 1);
    std::filesystem::remove(path);
}

TEST_CASE("family-verify and family")
{
    const auto r = run("family-verify --chain " + data("paper_chain.json"));
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["table"]["passed"] == 100);
    CHECK(j["result"]["table"]["total"] == 100);
    CHECK(run("family-verify --oracle --chain " + data("paper_chain.json")).code == 0);

    const auto f = run("family --chain " + data("f3_family.json") + " --pairs 3");
    CHECK(f.code == 0);
    const auto fj = nlohmann::json::parse(f.out);
    CHECK(fj["result"]["added"][0]["t"] == 0);
    CHECK(fj["result"]["added"][0]["ell"] == 89);
    CHECK(fj["result"]["table"]["all_pass"] == true);
    // nothing fits below t = 1, l = 50
    CHECK(run("family --chain " + data("f3_family.json") + " --pairs 1 --t-bound 1 --prime-bound 50").code == 2);
}

TEST_CASE("determinism")
{
    const std::vector<std::string> commands{
        "certify --curves " + data("paper_examples.json"),
        "grouplab --suite lifting --params kind=pairs --trials 20",
        "grouplab --suite lifting --params kind=sp g=1 ell=5 --trials 10",
        "family --chain " + data("f3_family.json") + " --pairs 2 --threads 2",
        "divfield-intersect --m1 4 --m2 12 --deltas-a 5,-3 --deltas-b 13",
    };
    for (const auto& args : commands) {
        CAPTURE(args);
        const auto a = run(args + " --seed 42"), b = run(args + " --seed 42");
        REQUIRE(a.code == b.code);
        CHECK(payload(a) == payload(b));
        CHECK(payload(a).dump() == payload(b).dump());
    }
    // thread count does not change the answer
    auto one = payload(run("certify --curves " + data("paper_examples.json") + " --sn --threads 1"));
    auto two = payload(run("certify --curves " + data("paper_examples.json") + " --sn --threads 3"));
    one.erase("argv");
    two.erase("argv");
    CHECK(one == two);
}

TEST_CASE("grouplab suites")
{
    CHECK(run("grouplab --suite embedding --params g=2").code == 0);
    CHECK(run("grouplab --suite lie --params genera=1,1 ell=3").code == 0);
    CHECK(run("grouplab --suite goursat --params example=diagonal").code == 0);
    CHECK(run("grouplab --suite serre --params delta=12").code == 0);
    CHECK(run("grouplab --suite simplicity --params group=psl2f3").code == 1);
    CHECK(run("grouplab --suite serre --params delta=-1019").code == 2);
    const auto r = run("grouplab --suite lifting --params kind=s2m --trials 5 --seed 3");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["seed"] == 3);
}

TEST_CASE("divfield-intersect")
{
    const auto r = run("divfield-intersect --m1 2 --m2 2 --deltas-a 5 --deltas-b 5 --json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out)["result"];
    CHECK(j["intersection"]["conductor"] == 5);
    CHECK(j["intersection"]["degree"] == 2);
    CHECK(j["description"]["quadratic_subfields"][0]["d"] == "5");
    CHECK(run("divfield-intersect --m1 9 --m2 15 --oracle").code == 0);
}

TEST_CASE("discriminant and the factor cache")
{
    const auto cache = scratch("cache.json");
    std::filesystem::remove(cache);
    const std::string env = "JACMAX_CACHE=" + cache.string();
    const auto a = run("discriminant --coeffs -1,-1,0,0,0,1 --factor", env);
    CHECK(a.code == 0);
    CHECK(nlohmann::json::parse(a.out)["result"]["discriminant"] == "2869");
    REQUIRE(std::filesystem::exists(cache));
    const auto cached = nlohmann::json::parse(std::ifstream(cache));
    CHECK(cached.contains("2869"));
    const auto b = run("discriminant --coeffs -1,-1,0,0,0,1 --factor", env);
    CHECK(payload(a)["result"] == payload(b)["result"]);
    std::filesystem::remove(cache);
}

TEST_CASE("usage and input errors")
{
    CHECK(run("").code == 64);
    CHECK(run("certify").code == 64);
    CHECK(run("grouplab --suite nope").code == 64);
    CHECK(run("divfield-intersect --m1 0 --m2 3").code == 64);
    CHECK(run("certify --curves /nonexistent/curves.json").code == 66);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << "{\"curves\": [{\"label\": \"a\", \"poly\": {\"coeffs\": [1, 2,]}}]}";
    CHECK(run("certify --curves " + bad.string()).code == 65);
    const std::string cmd = std::string(JACMAX_BIN) + " certify --curves " + bad.string() + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::array<char, 1024> buf{};
    const std::size_t n = fread(buf.data(), 1, buf.size(), p);
    pclose(p);
    CHECK(std::string(buf.data(), n).find("byte") != std::string::npos);

    std::ofstream(bad) << "{\"curves\": [{\"label\": \"a\", \"poly\": {\"coeffs\": [\"x\"]}}]}";
    CHECK(run("certify --curves " + bad.string()).code == 65);
    std::filesystem::remove(bad);
}
