#include "maysseq/cli.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "maysseq");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = maysseq::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string golden(const std::string& name)
{
    return read_file(std::filesystem::path(MAYSSEQ_GOLDEN_DIR) / name);
}

std::size_t count(const std::string& haystack, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("golden outputs")
{
    CHECK(run({"may-filtration", "--n", "4", "--k", "2"}).out == golden("may_filtration_n4_k2.txt"));
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "presentation"}).out == golden("s32_p3_presentation.txt"));
    CHECK(run({"--prime", "2", "--n", "2", "--k", "2", "--format", "json", "presentation"}).out ==
          golden("s22_p2_presentation.json"));
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "--format", "csv", "e2"}).out == golden("s32_p3_e2.csv"));
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "--refine", "t", "--smax", "2", "e2"}).out ==
          golden("s32_p3_e2_refine_t.txt"));
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "collapse"}).out == golden("s32_p3_collapse.txt"));
}

TEST_CASE("presentation command")
{
    auto small = run({"--prime", "7", "--n", "1", "--k", "1", "--format", "json", "presentation"});
    REQUIRE(small.code == 0);
    auto j = nlohmann::json::parse(small.out);
    REQUIRE(j["generators"].size() == 1);
    CHECK(j["generators"][0]["name"] == "h[1,0]");
    CHECK(j["s0"] == 1);

    auto s22 = nlohmann::json::parse(run({"--prime", "2", "--n", "2", "--k", "2", "--format", "json", "presentation"}).out);
    int poly = 0, ext = 0;
    for (const auto& g : s22["generators"])
        (g["parity"] == "polynomial" ? poly : ext)++;
    CHECK(poly == 2);
    CHECK(ext == 4);
}

TEST_CASE("invalid parameters exit with 1")
{
    auto r = run({"--prime", "4", "--n", "2", "--k", "1", "presentation"});
    CHECK(r.code == 1);
    CHECK(r.err.find("prime 4 is not prime") != std::string::npos);
    CHECK(run({"--prime", "3", "--n", "2", "--k", "3", "e2"}).code == 1);
    CHECK(run({"--format", "csv", "collapse"}).code == 1);
    CHECK(run({"--flavor", "T", "--prime", "2", "presentation"}).code == 1);
    CHECK(run({}).code != 0);
    CHECK(run({"bogus"}).code != 0);
}

TEST_CASE("e2 JSON round trip")
{
    for (std::vector<std::string> args :
         {std::vector<std::string>{"--prime", "3", "--n", "3", "--k", "2"},
          std::vector<std::string>{"--prime", "2", "--n", "2", "--k", "2", "--smax", "6"},
          std::vector<std::string>{"--prime", "3", "--n", "2", "--k", "1", "--smax", "5"}}) {
        args.insert(args.end(), {"--format", "json", "e2"});
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        std::vector<std::size_t> recomputed(j["poincare"].size(), 0);
        for (const auto& b : j["blocks"]) {
            recomputed.at(b["s"].get<std::size_t>()) += b["dim"].get<std::size_t>();
            CHECK(b["reps"].size() == b["dim"].get<std::size_t>());
        }
        CHECK(recomputed == j["poincare"].get<std::vector<std::size_t>>());
    }
}

TEST_CASE("output is deterministic")
{
    for (auto args : {std::vector<std::string>{"--prime", "3", "--n", "3", "--k", "2", "--format", "json", "e2"},
                      std::vector<std::string>{"--prime", "3", "--n", "3", "--k", "2", "--threads", "3", "--format",
                                               "json", "e2"},
                      std::vector<std::string>{"--prime", "2", "--n", "2", "--k", "2", "--smax", "10", "--format",
                                               "json", "collapse"}}) {
        CHECK(run(args).out == run(args).out);
    }
    auto one = run({"--prime", "3", "--n", "3", "--k", "2", "--format", "json", "e2"});
    auto three = run({"--prime", "3", "--n", "3", "--k", "2", "--threads", "3", "--format", "json", "e2"});
    CHECK(one.out == three.out);
}

TEST_CASE("e2 command")
{
    auto j = nlohmann::json::parse(run({"--prime", "5", "--n", "4", "--k", "2", "--smax", "16", "--format", "json", "e2"}).out);
    CHECK(j["poincare"][16] == 1);
    auto latex = run({"--prime", "3", "--n", "3", "--k", "2", "--format", "latex", "e2"});
    CHECK(latex.code == 0);
    CHECK(latex.out.find("\\begin{tabular}") != std::string::npos);
    auto csv = run({"--prime", "3", "--n", "3", "--k", "2", "--format", "csv", "e2"});
    CHECK(csv.out.rfind("s,t,M,dim\n", 0) == 0);
}

TEST_CASE("collapse command exit codes")
{
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "collapse"}).code == 0);
    CHECK(run({"--prime", "2", "--n", "2", "--k", "2", "--smax", "10", "collapse"}).code == 0);
    auto short_table = run({"--prime", "3", "--n", "3", "--k", "2", "--smax", "5", "collapse"});
    CHECK(short_table.code == 3);
    CHECK_FALSE(short_table.err.empty());
    auto j = nlohmann::json::parse(run({"--prime", "3", "--n", "3", "--k", "2", "--format", "json", "collapse"}).out);
    CHECK(j["status"] == "collapsed");
}

TEST_CASE("verify command")
{
    CHECK(run({"--prime", "3", "--n", "3", "--k", "3", "verify"}).code == 0);
    // the closed-form coproduct fails coassociativity at t_7 here
    auto r = run({"--prime", "3", "--n", "3", "--k", "2", "--format", "json", "verify"});
    CHECK(r.code == 2);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["d1"]["ok"] == true);
    CHECK(j["ext_truncated"]["b_representative"] == true);
    bool broken = false;
    for (const auto& row : j["coassociativity"])
        broken = broken || (row["ok"] == false && row["s"] == 7);
    CHECK(broken);
    CHECK(j["ok"] == false);
}

TEST_CASE("chart command")
{
    auto dir = std::filesystem::temp_directory_path() / "maysseq_cli_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "s32.svg").string();
    auto r = run({"--prime", "3", "--n", "3", "--k", "2", "chart", "--out", path});
    REQUIRE(r.code == 0);
    auto svg = read_file(path);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "data-s=\"9\"") == 1);
    CHECK(count(svg, "data-s=\"6\"") == 46);
    CHECK(count(svg, "class=\"class\"") == 288);

    auto s42 = run({"--prime", "5", "--n", "4", "--k", "2", "chart"});
    const std::vector<std::size_t> expected{1, 10, 48, 171, 461, 976, 1671, 2303, 2558};
    for (std::size_t s = 0; s < expected.size(); ++s)
        CHECK(count(s42.out, "data-s=\"" + std::to_string(s) + "\"") == expected[s]);

    auto empty = run({"--prime", "3", "--n", "3", "--k", "2", "--smax", "0", "chart"});
    CHECK(empty.code == 0);
    CHECK(empty.out.find("</svg>") != std::string::npos);
    CHECK(run({"--prime", "3", "--n", "3", "--k", "2", "chart", "--out", "/nonexistent/dir/x.svg"}).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("may-filtration command")
{
    auto j = nlohmann::json::parse(run({"--n", "4", "--k", "2", "--format", "json", "may-filtration"}).out);
    CHECK(j.dump().find("81") != std::string::npos);
    auto r = run({"--n", "4", "--k", "2", "may-filtration", "--primes", "7"});
    CHECK(r.code == 0);
    CHECK(run({"--n", "4", "--k", "2", "may-filtration", "--primes", "6"}).code == 1);
}
