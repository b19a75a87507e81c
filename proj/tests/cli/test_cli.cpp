// Runs the ginv executable and checks its output and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string fx(const std::string& name) { return std::string(GINV_FIXTURE_DIR) + "/" + name + ".json"; }

Run ginv(const std::string& args) {
  const std::string cmd = std::string(GINV_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string ex41 = "--matrix " + fx("ex41_A") + " --subspace " + fx("ex41_L");
const std::string ex51 = "--matrix " + fx("ex51_A") + " --subspace " + fx("ex51_L");

}  // namespace

TEST_CASE("compute bdd reproduces Example 5.1 [reference]") {
  const Run r = ginv("compute bdd " + ex51);
  REQUIRE(r.code == 0);
  std::ifstream f(fx("ex51_BDD"));
  CHECK(json::parse(r.out)["entries"] == json::parse(f)["entries"]);
}

TEST_CASE("compute output is byte-identical across runs") {
  const Run a = ginv("compute bdd " + ex41);
  const Run b = ginv("compute bdd " + ex41);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run fa = ginv("compute bdd " + ex41 + " --backend f64");
  const Run fb = ginv("compute bdd " + ex41 + " --backend f64");
  CHECK(fa.out == fb.out);
}

TEST_CASE("compute drazin on identity and mp on the ones matrix") {
  const Run d = ginv("compute drazin --matrix " + fx("identity3"));
  CHECK(json::parse(d.out)["entries"] == json::parse(R"([["1","0","0"],["0","1","0"],["0","0","1"]])"));
  const Run m = ginv("compute mp --matrix " + fx("ones2"));
  CHECK(json::parse(m.out)["entries"] == json::parse(R"([["1/4","1/4"],["1/4","1/4"]])"));
}

TEST_CASE("--out writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "ginv_cli_out.json";
  const Run r = ginv("compute bdd " + ex41 + " --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(json::parse(f)["entries"][1][0] == "1/24");
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(ginv("compute bd " + ex41).code == 3);                         // singular A P_L + P_L^perp
  CHECK(ginv("compute bdd --matrix " + fx("ex41_A")).code == 3);       // missing subspace
  CHECK(ginv("compute bdd --matrix /nonexistent.json --subspace " + fx("ex41_L")).code == 3);
  CHECK(ginv("compute pinv --matrix " + fx("ex41_A")).code == 3);      // usage error
  CHECK(ginv("solve constrained " + ex41 + " --rhs " + fx("ex41_b_bad")).code == 2);
  CHECK(ginv("solve constrained " + ex41 + " --rhs " + fx("ex41_b") + " --pnorm " + fx("singular_P")).code == 3);
  const auto amb = std::filesystem::temp_directory_path() / "ginv_cli_amb.json";
  std::ofstream(amb) << R"({"rows":2,"cols":2,"backend":"f64","entries":[[1,0],[0,2e-8]]})";
  CHECK(ginv("compute mp --backend f64 --tol 1e-8 --matrix " + amb.string()).code == 4);
  std::filesystem::remove(amb);
  CHECK(ginv("--help").code == 0);
}

TEST_CASE("verify thm4 with the Example 4.1 candidate [reference]") {
  const Run r = ginv("verify thm4 " + ex41 + " --candidate " + fx("ex41_X"));
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["facts"]["AX=P_{R((AP_L)^{k+1}),T}"] == "true");
  CHECK(j["facts"]["XA=P_{S,N((P_LA)^{k+1})}"] == "true");
  CHECK(j["facts"]["criteria holding"] == "0");
  std::size_t criteria = 0;
  for (const auto& [k, v] : j["facts"].items()) {
    if (k.rfind("Thm4.", 0) == 0) {
      ++criteria;
      CHECK(v.get<std::string>().rfind("fails at", 0) == 0);
    }
  }
  CHECK(criteria == 25);
}

TEST_CASE("verify thm31 on the identity witness") {
  const Run r = ginv("verify thm31 --matrix " + fx("identity3") + " --subspace " + fx("identity_L"));
  CHECK(r.code == 0);
  bool found = false;
  const json j = json::parse(r.out);
  for (const auto& e : j["entries"]) {
    if (e["status"] == "skipped") {
      found = true;
      CHECK(e["detail"].get<std::string>().rfind("skipped-by-theorem", 0) == 0);
    }
  }
  CHECK(found);
}

TEST_CASE("verify all --seed 7 --count 100") {
  const Run r = ginv("verify all --seed 7 --count 100 --parallel");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["pass"].get<int>() > 10000);
}

TEST_CASE("solve modes agree on Example 4.1 [reference]") {
  for (const char* mode : {"constrained", "cramer"}) {
    const Run r = ginv(std::string("solve ") + mode + " " + ex41 + " --rhs " + fx("ex41_b"));
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["x"]["entries"] == json::parse(R"([["1"],["1/2"],["1/2"],["0"]])"));
    CHECK(j["report"]["summary"]["fail"] == 0);
  }
  const Run r = ginv("solve restricted " + ex41 + " --rhs " + fx("ex41_b"));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).contains("y"));
}
