#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string cli_path() {
    const char* p = std::getenv("WORKBENCH_CLI_PATH");
    REQUIRE_MESSAGE(p != nullptr, "WORKBENCH_CLI_PATH must point at the built binary");
    return p;
}

std::string tmp_name(const std::string& tag) {
    return "/tmp/workbench_cli_" + std::to_string(getpid()) + "_" + tag;
}

int run(const std::string& args, const std::string& out_file = "/dev/null") {
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(run("--version") == 0);
    CHECK(run("--help") == 0);
    CHECK(run("graph \"[2,3,2^2]\" coeff") == 0);
    CHECK(run("graph \"[2,3,2^2]\" all") == 0);
    CHECK(run("graph \"[3\" coeff") == 2);
    CHECK(run("graph \"[2]\" frobnicate") == 2);
    CHECK(run("table e35") == 0);
    CHECK(run("table ksq") == 0);
    CHECK(run("table ksq --g 5") == 0);
    CHECK(run("table bogus") == 2);
    CHECK(run("table ksq --g 1") == 2);
    CHECK(run("search D2 --oracle") == 0);
    CHECK(run("search GEN-2") == 0);
    CHECK(run("search D9") == 2);
    CHECK(run("curves --char 0") == 0);
    CHECK(run("curves --char 3") == 0);
    CHECK(run("curves --char 4") == 2);
    CHECK(run("curves dance --char 0") == 2);
    CHECK(run("construct /nonexistent.cons") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("cli reports check failures with exit 1") {
    const std::string script = tmp_name("fail.cons");
    {
        std::ofstream out(script);
        out << "base hirzebruch 2\n"
            << "curve Eneg class 1 0 genus 0\n"
            << "contract Eneg\n"
            << "expect rank 2\n"
            << "expect ksq 8/1\n";
    }
    const std::string out_file = tmp_name("fail.out");
    CHECK(run("construct " + script, out_file) == 1);
    const std::string out = slurp(out_file);
    CHECK(out.find("FAIL  rank") != std::string::npos);
    CHECK(out.find("pass  ksq") != std::string::npos);
    std::remove(script.c_str());
    std::remove(out_file.c_str());
}

TEST_CASE("cli output is byte-identical across runs") {
    const std::string a = tmp_name("rep_a"), b = tmp_name("rep_b");
    CHECK(run("table e35", a) == 0);
    CHECK(run("table e35", b) == 0);
    const std::string ta = slurp(a);
    CHECK(!ta.empty());
    CHECK(ta == slurp(b));
    CHECK(run("--json search D1", a) == 0);
    CHECK(run("--json search D1", b) == 0);
    CHECK(slurp(a) == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("cli json is well-formed") {
    const std::string f = tmp_name("json");
    CHECK(run("--json graph \"[3,2]\" coeff", f) == 0);
    const auto j = nlohmann::json::parse(slurp(f));
    CHECK(j["version"] == "workbench 1.0");
    CHECK(j["checks"].is_array());
    CHECK(j["checks"][0]["actual"] == "2/5");
    CHECK(j["summary"]["fail"] == 0);
    std::remove(f.c_str());
}

TEST_CASE("cli construct runs the bundled fixtures") {
    const char* dir = std::getenv("WORKBENCH_FIXTURE_DIR");
    REQUIRE_MESSAGE(dir != nullptr, "WORKBENCH_FIXTURE_DIR must point at fixtures/");
    for (const char* f : {"charany.cons", "char2.cons", "cfg3_53.cons", "cfg3_63.cons",
                          "cfg3_54.cons", "nodal.cons", "f2fence.cons"})
        CHECK(run("construct " + std::string(dir) + "/" + f) == 0);
}
