#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run orw(const std::string& args) {
    Run r;
    std::string cmd = std::string(ORW_CLI) + " " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<nlohmann::json> json_lines(const std::string& out) {
    std::vector<nlohmann::json> v;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) v.push_back(nlohmann::json::parse(line));
    return v;
}

}  // namespace

TEST_CASE("cli normalize") {
    Run r = orw("normalize --preset XD --gens x,y --lambda 1 'D(x*y)'");
    CHECK(r.code == 0);
    CHECK(r.out == "D(x)*y + x*D(y) + D(x)*D(y)\n");
    Run j = orw("normalize --preset XP --gens x --json 'P(x)*P(x)'");
    CHECK(j.code == 0);
    auto v = json_lines(j.out);
    REQUIRE(v.size() == 1);
    CHECK(v[0]["normal_form"] == "P(x*x) + P(P(x)*x) + P(x*P(x))");
    Run path = orw("normalize --preset XI --path 'B(B(B(x)))'");
    CHECK(path.code == 0);
    CHECK(path.out.find("B(x)") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(orw("confluence --preset XP --bound 5").code == 0);
    Run bad = orw("confluence --preset X_DRB_pre --bound 5");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("D(P(") != std::string::npos);
    Run parse = orw("normalize --preset XD 'D(x'");
    CHECK(parse.code == 2);
    CHECK(parse.out.find("line 1, column 4") != std::string::npos);
    CHECK(orw("cp --preset XP").code == 2);
    CHECK(orw("normalize --preset XQ x").code == 2);
    CHECK(orw("squier --preset XP_reduced -n 3 --bound 6 --boundaries").code == 2);
    Run fuel = orw("normalize --preset XD --fuel 1 'D(x*x*x*x*x)'");
    CHECK(fuel.code == 1);
    CHECK(fuel.out.find("term:") != std::string::npos);
    CHECK(orw("unflatten --preset XD 'l:D x'").code == 2);
}

TEST_CASE("cli flat words and machines") {
    CHECK(orw("flatten --preset XD 'D(x)*x'").out == "l:D x r:D x\n");
    CHECK(orw("unflatten --preset XD 'l:D x r:D x'").out == "D(x)*x\n");
    Run t = orw("pda-accept --machine anbn --gens a,b 'a a b b' --trace");
    CHECK(t.code == 0);
    CHECK(t.out.find("[$00]") != std::string::npos);
    CHECK(orw("pda-accept --machine anbn --gens a,b 'a b a b'").code == 1);
    CHECK(orw("pda-accept --machine A_PD --preset XPD 'l:D l:P x r:P r:D'").code == 1);
    CHECK(orw("pda-accept --machine A_Omega --gens x --ops D,P 'l:D l:P x r:P r:D'").code == 0);
}

TEST_CASE("cli json output is stable") {
    const std::string cmd = "cp --preset XP --gens x --bound 6 --classify-families --json";
    Run a = orw(cmd), b = orw(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto v = json_lines(a.out);
    REQUIRE(v.size() > 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        REQUIRE(v[i]["type"] == "branching");
        REQUIRE(v[i]["joinable"] == true);
        REQUIRE(v[i].contains("family"));
    }
    CHECK(v.back()["type"] == "summary");
    CHECK(v.back()["pairs"] == v.size() - 1);
}

TEST_CASE("cli system files") {
    Run e = orw("export --preset XP --gens x");
    CHECK(e.code == 0);
    std::string path = "/tmp/orw_test_system.txt";
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f);
    fputs(e.out.c_str(), f);
    fclose(f);
    Run r = orw("normalize --system " + path + " 'P(x)*P(x)'");
    CHECK(r.code == 0);
    CHECK(r.out == orw("normalize --preset XP --gens x 'P(x)*P(x)'").out);
    std::remove(path.c_str());
    CHECK(orw("normalize --system /nonexistent/file x").code == 2);
}
