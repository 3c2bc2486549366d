#include "doctest.h"
#include "cli.hpp"
#include "wzforge/catalog.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace wzforge;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// the installed binary, for the process-level exit status
Result spawn(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + WZFORGE_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    Result r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<Json> lines(const std::string& s) {
    std::vector<Json> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(Json::parse(line));
    return out;
}

std::string example(const char* name) { return std::string(WZFORGE_DATA_DIR) + "/../tests/terms/" + name; }

std::string write_tmp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/wzforge_cli_test_" + name;
    std::ofstream(path) << content;
    return path;
}

// th1, th2a and r_apery, with r_apery's rhs perturbed at 1e-21
std::string corrupted_catalog() {
    std::ifstream in(std::string(WZFORGE_DATA_DIR) + "/catalog.json");
    Json doc = Json::parse(in);
    Json keep = Json::array();
    for (auto& e : doc.at("entries")) {
        std::string id = e.at("id");
        if (id == "th1" || id == "th2a" || id == "r_apery") keep.push_back(e);
    }
    for (auto& e : keep)
        if (e.at("id") == "r_apery")
            e["rhs"] = (ConstantExpr::from_json(e.at("rhs")) + ConstantExpr::parse("1/1000000000000000000000")).to_json();
    doc["entries"] = keep;
    return write_tmp("catalog.json", doc.dump());
}

}  // namespace

TEST_CASE("verify th1 at 30 digits") {
    Result r = run_cli({"verify", "--id", "th1", "--digits", "30"});
    CHECK(r.code == 0);
    auto recs = lines(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].at("id") == "th1");
    CHECK(recs[0].at("passed") == true);
    CHECK(recs[0].at("symbolic_status") == "verified");
    CHECK(recs[0].at("digits") == 30);
    CHECK(recs[0].at("abs_diff").get<double>() <= 1e-30);
    CHECK(r.err.find("verifying th1") != std::string::npos);
}

TEST_CASE("output is deterministic apart from elapsed") {
    auto strip = [](std::string s) {
        Json j = Json::parse(s);
        j.erase("elapsed");
        return j.dump();
    };
    Result a = run_cli({"verify", "--id", "f7_d4"});
    Result b = run_cli({"verify", "--id", "f7_d4"});
    CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("text format") {
    Result r = run_cli({"--format", "text", "verify", "--id", "f11_d4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("f11_d4 PASS", 0) == 0);
    CHECK(r.out.find("resolution=") != std::string::npos);
}

TEST_CASE("mate of the th1 term") {
    std::string out = "/tmp/wzforge_cli_test_mate.json";
    std::remove(out.c_str());
    Result r = run_cli({"mate", "--term", example("th1_F.term"), "--var", "k", "--out", out});
    CHECK(r.code == 0);
    auto recs = lines(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].at("verified") == true);
    CHECK(recs[0].contains("mate_ratio"));
    std::ifstream f(out);
    REQUIRE(f.good());
    Json j = Json::parse(f);
    CHECK(j.at("verified") == true);
    CHECK(j.at("mate_ratio") == recs[0].at("mate_ratio"));
    // the reported G certifies against F
    WZCertificate c = verify_wz_pair(parse_term(Json::parse(std::ifstream(example("th1_F.term")))), parse_term(j.at("G")));
    CHECK(c.verified);
}

TEST_CASE("certify") {
    CHECK(run_cli({"certify", "--pair", "f7"}).code == 0);
    std::string F = example("f2_F.term");
    Result bad = run_cli({"certify", "--F", F, "--G", F});
    CHECK(bad.code == 1);
    CHECK(lines(bad.out).at(0).at("verified") == false);
    CHECK(run_cli({"certify", "--pair", "nope"}).code == 2);
    CHECK(run_cli({"certify"}).code == 2);
}

TEST_CASE("const dzeta against the stuffle relation") {
    Result r = run_cli({"const", "--name", "dzeta", "--args", "5,3", "--digits", "40"});
    CHECK(r.code == 0);
    Json v = lines(r.out).at(0).at("value");
    CHECK(v.at("error_bound").get<double>() <= 1e-40);
    const Precision prec{40, 20};
    PrecisionScope scope(prec.bits());
    Complex want = zeta(3, prec).value * zeta(5, prec).value - zeta(8, prec).value - double_zeta(3, 5, prec).value;
    Real got = Real::parse(v.at("re").get<std::string>());
    CHECK(abs(got - want.re).to_double() < 1e-38);

    CHECK(run_cli({"const", "--name", "pi", "--digits", "50"}).code == 0);
    CHECK(run_cli({"const", "--name", "L3", "--args", "2"}).code == 0);
    CHECK(run_cli({"const", "--name", "zeta"}).code == 2);
    CHECK(run_cli({"const", "--name", "zeta", "--args", "x"}).code == 2);
    CHECK(run_cli({"const", "--name", "gamma"}).code == 2);
}

TEST_CASE("eval") {
    Result r = run_cli({"eval", "--term", example("f7_summand.term"), "--k", "3"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(0).contains("value"));
    CHECK(run_cli({"eval", "--term", example("f7_summand.term"), "--k", "3", "--diff", "k", "--order", "2"}).code == 0);
    CHECK(run_cli({"eval", "--term", example("f7_summand.term"), "--order", "2"}).code == 2);
    CHECK(run_cli({"eval", "--term", example("f7_summand.term"), "--k", "1/x"}).code == 2);
}

TEST_CASE("list") {
    Result r = run_cli({"list"});
    CHECK(r.code == 0);
    auto recs = lines(r.out);
    CHECK(recs.size() == Catalog::bundled().entries().size());
    CHECK(recs.at(0).contains("id"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"verify"}).code == 2);
    CHECK(run_cli({"verify", "--id", "nope"}).code == 2);
    CHECK(run_cli({"verify", "--id", "th1", "--digits", "0"}).code == 2);
    CHECK(run_cli({"verify", "--id", "th1", "--digits", "61"}).code == 2);
    CHECK(run_cli({"verify", "--id", "th1", "--format", "xml"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"mate", "--term", example("th1_F.term"), "--var", "n"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("malformed term file exits 2") {
    std::string bad = write_tmp("bad.term", "{\"gammas\": [");
    CHECK(run_cli({"mate", "--term", bad}).code == 2);
    std::string wrong = write_tmp("wrong.term", "{\"gammas\": [{\"cn\": \"x\"}]}");
    CHECK(run_cli({"eval", "--term", wrong}).code == 2);
    CHECK(run_cli({"mate", "--term", "/nonexistent/file.term"}).code == 2);
    CHECK(spawn("mate --term " + bad).code == 2);
}

TEST_CASE("corrupted rhs exits 1") {
    std::string path = corrupted_catalog();
    Result r = run_cli({"--catalog", path, "verify-all", "--jobs", "2"});
    CHECK(r.code == 1);
    auto recs = lines(r.out);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].at("id") == "r_apery");
    CHECK(recs[0].at("passed") == false);
    CHECK(recs[1].at("passed") == true);
    CHECK(recs[2].at("passed") == true);
    CHECK(recs[3].at("summary").at("failed") == 1);
    CHECK(recs[3].at("summary").at("symbolic_verified") == 2);
    CHECK(r.err.find("[3/3]") != std::string::npos);

    CHECK(run_cli({"--catalog", path, "verify", "--id", "th1"}).code == 0);
    CHECK(spawn("--catalog " + path + " verify --id r_apery").code == 1);
    CHECK(run_cli({"--catalog", "/nonexistent.json", "list"}).code == 2);
}

TEST_CASE("engine errors exit 3") {
    CHECK(run_cli({"const", "--name", "zeta", "--args", "3", "--digits", "150"}).code == 3);
    CHECK(spawn("const --name zeta --args 3 --digits 150").code == 3);
    CHECK(spawn("const --name zeta --args 3 --digits 150", "WZFORGE_PRECISION_CAP=200").code == 0);
}

TEST_CASE("process exit status matches run") {
    Result r = spawn("verify --id th1 --digits 30");
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(0).at("passed") == true);
    CHECK(spawn("verify").code == 2);
}
