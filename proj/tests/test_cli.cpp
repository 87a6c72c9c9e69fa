// Subprocess tests for the command-line binary: pinned outputs, exit-code
// contract, JSON schema envelope, and byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + std::string(WMM_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  const int raw = pclose(pipe);
  result.status = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  return result;
}

nlohmann::json parse_json(const RunResult& result) {
  return nlohmann::json::parse(result.out);
}

}  // namespace

TEST_CASE("moment pinned example diag(1,2), v=(0,1)") {
  const RunResult res = run_cli("moment --cov builtin:diag:1,2 --v 0,1");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["schema"] == "wmm/moment/v1");
  CHECK(doc["command"] == "moment");
  CHECK(doc["parameters"]["v"] == "(0,1)");
  CHECK(doc["evaluated"]["r"] == 2);
  CHECK(doc["evaluated"]["entries"][0][0] == "5");
  CHECK(doc["evaluated"]["entries"][0][1] == "0");
  CHECK(doc["evaluated"]["entries"][1][1] == "28");
}

TEST_CASE("moment of a bare word is the covariance itself") {
  const RunResult res = run_cli("moment --cov builtin:I:3 --v 0");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["evaluated"]["r"] == 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(doc["evaluated"]["entries"][i][j] == (i == j ? "1" : "0"));
    }
  }
}

TEST_CASE("moment --oracle agrees on the fourth scalar moment") {
  const RunResult res = run_cli("moment --v 0,0 --cov builtin:I:1 --oracle");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["parameters"]["oracle"] == true);
  CHECK(doc["oracle_match"] == true);
  CHECK(doc["evaluated"]["entries"][0][0] == "3");
}

TEST_CASE("central pinned example diag(1,2), n=2") {
  const RunResult res = run_cli("central --cov builtin:diag:1,2 --n 2");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["schema"] == "wmm/central/v1");
  CHECK(doc["evaluated"]["entries"][0][0] == "4");
  CHECK(doc["evaluated"]["entries"][1][1] == "10");
  CHECK(doc["evaluated"]["entries"][0][1] == "0");
}

TEST_CASE("bell pinned example n=3 at scalar identity") {
  const RunResult res = run_cli("bell --n 3 --cov builtin:I:1");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["schema"] == "wmm/bell/v1");
  CHECK(doc["value"] == "15");
}

TEST_CASE("bell routes agree through the CLI") {
  const std::string a = run_cli("bell --n 4 --cov builtin:diag:1,2 --method bell").out;
  const auto va = nlohmann::json::parse(a)["value"];
  for (const char* method : {"recursion", "permutation"}) {
    const RunResult res =
        run_cli("bell --n 4 --cov builtin:diag:1,2 --method " + std::string(method));
    CHECK(res.status == 0);
    CHECK(parse_json(res)["value"] == va);
  }
}

TEST_CASE("weighted echoes tau and varpi") {
  const RunResult res = run_cli("weighted --m 2 --n 1 --cov builtin:I:1");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["schema"] == "wmm/weighted/v1");
  CHECK(doc["evaluated"]["varpi"] == "9");
  CHECK(doc["evaluated"]["W"]["entries"][0][0] == "9");
}

TEST_CASE("exit code 2 on parse problems") {
  CHECK(run_cli("nonsense").status == 2);
  CHECK(run_cli("moment --v 0 --cov builtin:frobnicate:2").status == 2);
  CHECK(run_cli("moment --v 0,x --cov builtin:I:1").status == 2);
  CHECK(run_cli("moment --v -1,0 --cov builtin:I:1").status == 2);
  CHECK(run_cli("mc --v 0 --cov builtin:I:1 --mode exact --samples 10").status == 2);
}

TEST_CASE("exit code 0 for help") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("moment --help").status == 0);
}

TEST_CASE("exit code 3 when a cap is exceeded") {
  const RunResult res =
      run_cli("moment --v 0,0,0,0 --cov builtin:I:1", "WMM_WORD_CAP=3 ");
  CHECK(res.status == 3);
}

TEST_CASE("verify micro-run passes and is byte-identical") {
  const RunResult a = run_cli("verify --max-m 1 --max-weight 1");
  CHECK(a.status == 0);
  const auto doc = parse_json(a);
  CHECK(doc["schema"] == "wmm/verify/v1");
  CHECK(doc["failures"] == 0);
  CHECK(doc["status"] == "pass");
  CHECK(doc["instances"].get<int>() > 0);
  const RunResult b = run_cli("verify --max-m 1 --max-weight 1");
  CHECK(a.out == b.out);
}

TEST_CASE("verify selftest-corrupt exits nonzero with a reproducer") {
  const RunResult res = run_cli("verify --max-m 1 --max-weight 1 --selftest-corrupt");
  CHECK(res.status == 1);
  const auto doc = parse_json(res);
  CHECK(doc["status"] == "fail");
  CHECK(doc["failures"].get<int>() >= 1);
  REQUIRE(doc.contains("first_failure"));
  CHECK(doc["first_failure"].contains("v"));
  CHECK(doc["first_failure"].contains("P"));
  CHECK(doc["first_failure"].contains("pair"));
}

TEST_CASE("inequalities tau-varpi reports the pinned discrepancy yet exits 0") {
  const RunResult res =
      run_cli("inequalities --suite tau-varpi --cov builtin:I:1 --max-m 1 --max-n 0");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["schema"] == "wmm/inequalities/v1");
  bool saw_violated = false;
  bool saw_corrected_pass = false;
  for (const auto& report : doc["reports"]) {
    if (report["name"] == "tau-varpi-comparison") {
      if (report["verdict"] == "violated-as-stated") saw_violated = true;
      for (const auto& inst : report["instances"]) {
        const std::string desc = inst["description"].get<std::string>();
        if (desc.find("corrected") != std::string::npos && inst["status"] == "pass") {
          saw_corrected_pass = true;
        }
      }
    }
  }
  CHECK(saw_violated);
  CHECK(saw_corrected_pass);
}

TEST_CASE("inequalities monotonicity micro-run passes") {
  const RunResult res =
      run_cli("inequalities --suite monotonicity --cov builtin:diag:1,2 --max-m 2 --max-n 2");
  CHECK(res.status == 0);
  const auto doc = parse_json(res);
  CHECK(doc["status"] == "pass");
}

TEST_CASE("mc is seeded, reports z-scores, and reruns byte-identically") {
  const std::string args = "mc --v 0,1 --cov builtin:diag:1,2 --samples 20000 --seed 7";
  const RunResult a = run_cli(args);
  CHECK(a.status == 0);
  const auto doc = parse_json(a);
  CHECK(doc["schema"] == "wmm/mc/v1");
  CHECK(doc["samples"] == 20000);
  REQUIRE(doc.contains("exact"));
  CHECK(doc["exact"]["entries"][0][0] == "5");
  REQUIRE(doc.contains("z_scores"));
  for (const auto& row : doc["z_scores"]) {
    for (const auto& z : row) {
      CHECK(std::abs(z.get<double>()) < 8.0);
    }
  }
  const RunResult b = run_cli(args);
  CHECK(a.out == b.out);
  // Thread count must not change the result, only the wall clock.
  const RunResult c = run_cli(args + " --threads 3");
  CHECK(parse_json(c)["estimate"] == doc["estimate"]);
}

TEST_CASE("mc with a different seed moves the estimate") {
  const auto a = parse_json(run_cli("mc --v 0 --cov builtin:I:2 --samples 5000 --seed 1"));
  const auto b = parse_json(run_cli("mc --v 0 --cov builtin:I:2 --samples 5000 --seed 2"));
  CHECK(a["estimate"] != b["estimate"]);
}

TEST_CASE("pretty output stays human-readable") {
  const RunResult res = run_cli("moment --cov builtin:diag:1,2 --v 0,1 --output pretty");
  CHECK(res.status == 0);
  CHECK(res.out.find("M(0,1)") != std::string::npos);
}

TEST_CASE("version is echoed in every JSON document") {
  for (const std::string cmd : {std::string("bell --n 1 --cov builtin:I:1"),
                                std::string("weighted --m 1 --n 0 --cov builtin:I:2")}) {
    const auto doc = parse_json(run_cli(cmd));
    CHECK(doc.contains("version"));
    CHECK(doc["version"] == "0.1.0");
  }
}
