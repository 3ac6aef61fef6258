#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bestchoice/exact.hpp"
#include "bestchoice/strategy_spec.hpp"

using namespace bestchoice;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/bestchoice_cli_out.txt";
    std::string cmd = std::string(BESTCHOICE_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::string write_temp_json(const std::string& name, const std::string& body) {
    std::string path = "/tmp/" + name;
    std::ofstream f(path);
    f << body;
    return path;
}

}  // namespace

TEST_CASE("eval: exact path") {
    auto r = run_cli("eval --strategy onee --n 7");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "n,win_prob");
    CHECK(ls[1].rfind("7,0.368", 0) == 0);

    auto r2 = run_cli("eval --strategy d:1 --n 5");
    CHECK(lines_of(r2.out)[1] == "5,0.2");
}

TEST_CASE("eval: monte carlo path matches the closed form") {
    auto r = run_cli(
        "eval --strategy restart:x=0.36787944117144233,y=0.18393972058572117 "
        "--n 10 --mc --trials 200000 --seed 1");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "n,win_prob,stderr");
    double est = 0.0, se = 0.0;
    std::sscanf(ls[1].c_str(), "10,%lf,%lf", &est, &se);
    auto truth = exact::win_prob(
        AnyStrategy{BranchingStrategy(0.18393972058572117, 0.36787944117144233,
                                      0.2679491924311227 * (1.0 - 0.18393972058572117) +
                                          0.18393972058572117)},
        10);
    CHECK(std::fabs(est - truth) <= 4.0 * se);
}

TEST_CASE("eval: mixture over a prior file") {
    auto path = write_temp_json("prior_two.json", R"({"support": [[1, 0.5], [4, 0.5]]})");
    auto r = run_cli("eval --strategy x:0 --dist " + path);
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "1,1");
    CHECK(ls[2] == "4,0.25");
    CHECK(ls[3] == "mixture,0.625");
}

TEST_CASE("compare verdicts") {
    auto r = run_cli("compare --a x:0.36787944117144233 --b x:0.5 --n-range 1..50");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    CHECK(ls.back() == "verdict,a dominates b,,");

    auto r2 = run_cli("compare --a onee --b onee --n-range 1..20");
    CHECK(lines_of(r2.out).back() == "verdict,equal,,");

    auto r3 = run_cli(
        "compare --a skipfirst:a1=1,x=0.36787944117144233 --b onee --n-range 1..50 --z 3..50");
    CHECK(lines_of(r3.out).back() == "verdict,a strongly dominates b on Z,,");
}

TEST_CASE("minimax table output") {
    auto r = run_cli("minimax --steps 3");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 12);
    CHECK(ls[0] == "n,w_n,p_1e,w_n_3dec,p_1e_3dec");
    CHECK(ls[1].rfind("4,", 0) == 0);
    CHECK(ls[1].find(",0.373,0.376") != std::string::npos);
    CHECK(ls[7].find(",0.380,0.368") != std::string::npos);  // n = 10
    CHECK(ls[11].rfind("cutoffs,0.632120558", 0) == 0);
}

TEST_CASE("dominate output") {
    auto r = run_cli("dominate --u 5");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[0] == "n,advantage");
    for (size_t i = 1; i < ls.size(); ++i) {
        double adv = 0.0;
        int n = 0;
        std::sscanf(ls[i].c_str(), "%d,%lf", &n, &adv);
        CHECK(adv > 0.0);
    }
}

TEST_CASE("game output") {
    auto r = run_cli("game example1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("b_star,0.449805151") != std::string::npos);
    CHECK(r.out.find("p_star,0.929507196") != std::string::npos);

    auto r2 = run_cli("game geometric --theta 0.3");
    CHECK(r2.out.find("x,0.178243273") != std::string::npos);
    CHECK(r2.out.find("value_identity_holds,1") != std::string::npos);
}

TEST_CASE("bestresponse output") {
    auto path = write_temp_json("prior_pm5.json", R"({"support": [[5, 1.0]]})");
    auto r = run_cli("bestresponse --dist " + path + " --grid 1000");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    CHECK(ls[0] == "k,t_start,t_end");
    CHECK(ls[1] == "3,0,1");
    CHECK(ls[2] == "4,0,1");
    CHECK(ls[3] == "5,0,1");
    CHECK(ls[4].rfind("value,0.43", 0) == 0);  // s(3,5) = 13/30
}

TEST_CASE("figure output") {
    auto r = run_cli("figure pnx --n-list 1,2,3,4,5 --grid 101");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 102);
    CHECK(ls[0] == "x,pn_1,pn_2,pn_3,pn_4,pn_5,limit");
    // p_1 column equals 1 - x; x = 0 row emits limit 0
    CHECK(ls[1].rfind("0,1,", 0) == 0);
    CHECK(ls[1].substr(ls[1].size() - 2) == ",0");
    double x = 0.0, p1 = 0.0;
    std::sscanf(ls[51].c_str(), "%lf,%lf", &x, &p1);
    CHECK(p1 == doctest::Approx(1.0 - x).epsilon(1e-12));
}

TEST_CASE("exit codes") {
    CHECK(run_cli("eval --strategy bogus --n 3").exit_code == 2);
    CHECK(run_cli("eval --strategy x:1.4 --n 3").exit_code == 2);
    // non-monotone cutoffs are not exactly evaluable without --mc
    CHECK(run_cli("eval --strategy \"cutoffs:0.2,0.8;tail=0.1\" --n 5").exit_code == 3);
    CHECK(run_cli("eval --strategy \"cutoffs:0.2,0.8;tail=0.1\" --n 5 --mc --trials 1000")
              .exit_code == 0);
    CHECK(run_cli("eval --strategy onee --n 3 --dist /nonexistent.json").exit_code == 2);
    CHECK(run_cli("bestresponse --dist /nonexistent.json").exit_code == 2);
}

TEST_CASE("strategy specs round-trip") {
    std::vector<std::string> specs = {
        "x:0.25",
        "d:4",
        "cutoffs:0.9,0.5,0.30000000000000004;tail=0.1",
        "skipfirst:a1=0.75,x=0.36787944117144233",
        "restart:x=0.4,y=0.25",
        "onee",
    };
    for (const auto& s : specs) {
        auto parsed = cli::parse_strategy(s);
        auto reparsed = cli::parse_strategy(cli::print_strategy(parsed));
        if (const auto* c = std::get_if<CutoffStrategy>(&parsed)) {
            const auto& d = std::get<CutoffStrategy>(reparsed);
            CHECK(c->cutoffs() == d.cutoffs());
            CHECK(c->tail() == d.tail());
        } else {
            const auto& b1 = std::get<BranchingStrategy>(parsed);
            const auto& b2 = std::get<BranchingStrategy>(reparsed);
            CHECK(b1.switch_time == b2.switch_time);
            CHECK(b1.if_nonempty == b2.if_nonempty);
            CHECK(b1.if_empty == b2.if_empty);
        }
    }
    CHECK_THROWS_AS(cli::parse_strategy("x:abc"), cli::parse_error);
    CHECK_THROWS_AS(cli::parse_strategy("cutoffs:0.5;tail"), cli::parse_error);
    CHECK_THROWS_AS(cli::parse_strategy("skipfirst:a1=0.2,x=0.4"), cli::parse_error);
}
