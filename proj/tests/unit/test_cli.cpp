#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "doctest.h"
#include "ewt/tree.hpp"
#include "json.hpp"

#ifndef EWT_CLI
#error "EWT_CLI must point at the command-line binary"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(EWT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kThree = "\"(y^2+x^3)*(y^3+x^4)*((y^3+x^4)^2+x^9)\"";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("tree emits the node data as JSON and DOT") {
    Run j = run(std::string("tree --field 'GF(5)' --format json ") + kThree);
    CHECK(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    std::vector<std::string> cs;
    for (const auto& n : doc["nodes"]) cs.push_back(n["c"].get<std::string>() + "/" + n["e"].get<std::string>());
    CHECK(std::count(cs.begin(), cs.end(), "4/3/4/3") == 1);
    CHECK(std::count(cs.begin(), cs.end(), "3/2/3/2") == 1);
    CHECK(std::count(cs.begin(), cs.end(), "3/2/11/6") == 1);
    CHECK(ewt::EggersWallTree::from_json(j.out).to_json() + "\n" == j.out);

    Run d = run(std::string("tree --field 'GF(5)' --format dot ") + kThree);
    CHECK(d.code == 0);
    CHECK(d.out.rfind("digraph", 0) == 0);
  }

  TEST_CASE("verify exits 2 when the decomposition fails") {
    Run r = run("verify --field 'GF(3)' 'y*(y^2+y^3+x^5)'");
    CHECK(r.code == 2);
    CHECK(r.out.find("E2 fails inside a segment") != std::string::npos);
    CHECK(r.out.find("verdict: fail") != std::string::npos);
    CHECK(run(std::string("verify --field 'GF(5)' ") + kThree).code == 0);
  }

  TEST_CASE("conditions reports the failing leaf") {
    Run r = run("conditions --field 'GF(2)' 'y*(y^2+x^3)' --format json");
    CHECK(r.code == 2);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["eggers"] == false);
    int failing = 0;
    for (const auto& p : doc["points"])
      if (!p["eggers"].get<bool>()) {
        ++failing;
        CHECK(p["point"] == "f2");
      }
    CHECK(failing == 1);
  }

  TEST_CASE("errors exit 1 with a message") {
    Run a = run("tree --field 'GF(6)' 'y^2+x^3'");
    CHECK(a.code == 1);
    Run b = run("tree 'y^2+'");
    CHECK(b.code == 1);
    CHECK(b.out.find("ParseError") != std::string::npos);
    CHECK(run("tree").code == 1);
    CHECK(run("nonsense").code == 1);
  }

  TEST_CASE("parametrization input") {
    Run r = run("tree --field 'GF(5)' --param 'x=t^2, y=2*t^3; x=t^3, y=t^4' --format json");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& n : doc["nodes"]) found = found || n["c"] == "4/3";
    CHECK(found);
  }

  TEST_CASE("corpus output is byte-identical for a fixed seed") {
    Run a = run("corpus --seed 4 --count 12 --format json");
    Run b = run("corpus --seed 4 --count 12 --jobs 3 --format json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
