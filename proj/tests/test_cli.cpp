#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qgames/acceptance.hpp"
#include "qgames/cli.hpp"

using namespace qgames;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void check_input_error(const Run& r) {
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    const auto doc = nlohmann::json::parse(r.err);
    CHECK(doc.contains("error"));
    CHECK(doc.contains("message"));
}

}  // namespace

TEST_CASE("pd subcommand") {
    const auto r = run({"pd", "--alice", "eisert:0,pi/2", "--bob", "eisert:0,pi/2"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["game"] == "pd");
    CHECK(doc["payoffs"][0].get<double>() == doctest::Approx(3.0));
    CHECK(doc["payoffs"][1].get<double>() == doctest::Approx(3.0));

    const auto defect = nlohmann::json::parse(run({"pd", "--alice", "bit:1", "--bob", "bit:0"}).out);
    CHECK(defect["payoffs"][0].get<double>() == doctest::Approx(5.0));
    CHECK(defect["payoffs"][1].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("minority and kolkata subcommands") {
    const auto m = nlohmann::json::parse(run({"minority", "-n", "4", "--strategy", "full:pi/2,-pi/8,pi/8"}).out);
    REQUIRE(m["payoffs"].size() == 4);
    for (const auto& p : m["payoffs"]) CHECK(p.get<double>() == doctest::Approx(0.25));

    const auto k = run({"kolkata", "--strategy", "su3:table2", "--fidelity", "0.5"});
    REQUIRE(k.code == 0);
    const auto doc = nlohmann::json::parse(k.out);
    for (const auto& p : doc["payoffs"]) CHECK(p.get<double>() == doctest::Approx(5.0 / 9).epsilon(1e-9));
    double total = 0.0;
    for (const auto& [label, p] : doc["probabilities"].items()) total += p.get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    const auto table = nlohmann::json::parse(run({"kolkata", "--emit-table"}).out);
    CHECK(table["payoffs"]["012"] == nlohmann::json::array({1, 1, 1}));
}

TEST_CASE("input errors exit with code 2") {
    check_input_error(run({"pd", "--alice", "eisert:9,0", "--bob", "bit:0"}));
    check_input_error(run({"kolkata", "--strategy", "su3:table2", "--fidelity", "1.5"}));
    check_input_error(run({"minority", "--strategy", "full:0,0,0", "--bogus"}));
    check_input_error(run({"nonsense"}));
    check_input_error(run({"kolkata"}));
    check_input_error(run({"pd", "--alice", "bit:0"}));
    check_input_error(run({"search", "--game", "kolkata", "--strategy", "su3:table2", "--space", "full"}));
}

TEST_CASE("sweep CSV") {
    const auto r = run({"--format", "csv", "sweep", "--game", "kolkata", "--strategy", "su3:table2", "--points", "3"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "f,player1,player2,player3");
    CHECK(first.rfind("0,0.444444444444", 0) == 0);
}

TEST_CASE("search output is byte-identical across runs and thread counts") {
    const std::vector<std::string> args{"search", "--game", "minority", "-n", "4", "--strategy", "full:pi/2,-pi/8,pi/8",
                                        "--space", "full", "--seed", "3"};
    const auto a = run(args);
    const auto b = run(args);
    auto threaded = args;
    threaded.insert(threaded.begin(), {"--threads", "5"});
    const auto c = run(threaded);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["mode"] == "verify_nash");
    CHECK_FALSE(doc["config"].contains("threads"));
}

TEST_CASE("thread count from the environment") {
    const std::vector<std::string> args{"search", "--game", "pd", "--strategy", "eisert:0,pi/2", "--space", "eisert",
                                        "--entangler", "d"};
    const auto plain = run(args);
    ::setenv("QGAMES_THREADS", "4", 1);
    const auto env = run(args);
    ::setenv("QGAMES_THREADS", "zero", 1);
    const auto bad = run(args);
    ::unsetenv("QGAMES_THREADS");
    CHECK(plain.code == 0);
    CHECK(plain.out == env.out);
    check_input_error(bad);
    CHECK(nlohmann::json::parse(plain.out)["result"]["is_equilibrium"] == true);
}

TEST_CASE("verify reports one record per check") {
    const auto r = run({"verify", "--json"});
    CHECK((r.code == 0 || r.code == 1));
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    bool all_pass = true;
    for (const auto& c : doc) {
        for (const char* key : {"check", "expected", "observed", "tolerance", "pass"}) CHECK(c.contains(key));
        all_pass = all_pass && c["pass"].get<bool>();
    }
    CHECK(r.code == (all_pass ? 0 : 1));
}

TEST_CASE("a perturbed Kolkata strategy fails the Kolkata checks") {
    AcceptanceOptions options;
    options.kolkata_strategy.beta2 += 0.3;
    options.property_draws = 10;
    bool saw_payoff = false;
    for (const auto& c : run_acceptance(options)) {
        if (c.check.rfind("5b", 0) != 0) continue;
        saw_payoff = true;
        CHECK_FALSE(c.pass);
        CHECK(c.observed < 2.0 / 3);
    }
    CHECK(saw_payoff);
}
