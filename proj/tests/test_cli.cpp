#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seshadri/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = seshadri::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  auto path = std::filesystem::temp_directory_path() / ("seshadri_cli_" + name);
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("dim") {
  const auto r = run({"dim", "d: 35; mults: 10^11"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["virtual_dimension"] == "5");
  CHECK(j["expected_dimension"] == "5");
  CHECK(j["conditions"] == "660");
  CHECK(j["coefficients"] == "666");
}

TEST_CASE("bad input exits with 1") {
  auto r = run({"dim", "d: 3; mults: 2^"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"bound", "--r", "9", "--dmax", "10"}).code == 1);
  CHECK(run({"oracle", "d: 10; mults: 12^2", "--prime", "8"}).code == 1);
}

TEST_CASE("classify") {
  auto j = json::parse(run({"classify", "d: 2; mults: 2^2"}).out);
  CHECK(j["verdict"] == "Special");
  CHECK(j["rule"] == "table-n2");
}

TEST_CASE("prove exit codes") {
  auto r = run({"prove", "d: 2; mults: 2^2", "--deterministic"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["outcome"]["tag"] == "special");

  r = run({"prove", "d: 8; mults: 12^2"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["outcome"]["tag"] == "unknown");
}

TEST_CASE("prove, then verify the written certificate") {
  const auto path = temp_file("cert.json");
  auto r = run({"prove", "d: 10; mults: 12^2", "--out", path.string()});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verified"] == true);
  CHECK(j["outcome"]["certificate"]["rule"] == "cor34-split");

  r = run({"verify", path.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["valid"] == true);

  // Flip one witness value in the file.
  j = json::parse(std::ifstream(path));
  j["outcome"]["certificate"]["witness"]["b"] = "4";
  std::ofstream(path) << j.dump();
  r = run({"verify", path.string()});
  CHECK(r.code == 1);
  j = json::parse(r.out);
  CHECK(j["valid"] == false);
  CHECK(j.contains("diagnostic"));

  std::ofstream(path) << "{broken";
  CHECK(run({"verify", path.string()}).code == 1);
  std::filesystem::remove(path);
  CHECK(run({"verify", path.string()}).code == 1);
}

TEST_CASE("prove uses and updates a cache file") {
  const auto cache = temp_file("cache.jsonl");
  REQUIRE(run({"prove", "d: 10; mults: 12^2", "--cache", cache.string()}).code == 0);
  CHECK(std::filesystem::file_size(cache) > 0);
  const auto again = run({"prove", "d: 10; mults: 12^2", "--cache", cache.string(), "--deterministic"});
  CHECK(again.code == 0);
  CHECK(again.err.empty());
  std::filesystem::remove(cache);
}

TEST_CASE("oracle") {
  const auto r = run({"oracle", "d: 6; mults: 9^2", "--seed", "3", "--trials", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["seed"] == 3);
  CHECK(j["trials"] == 2);
  CHECK(j["semantics"] == "non-special certified");
}

TEST_CASE("intersect") {
  auto r = run({"intersect", "Prod[r=3]: 3F1+4F2-2E1-2E2-2E3", "Prod[r=3]: 2F2-E1-E2-E3"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"] == "0");
  r = run({"intersect", "P2[r=10]: 1H - 1/3*(E1..E10)"});
  CHECK(json::parse(r.out)["value"] == "-1/9");
  CHECK(run({"intersect", "P2[r=1]: H", "Prod[r=1]: F1"}).code == 1);
}

TEST_CASE("seshadri") {
  auto r = run({"seshadri", "--a", "3", "--b", "4"});
  CHECK(json::parse(r.out)["value"] == "3");
  r = run({"seshadri", "--a", "4", "--b", "3", "--mults", "1,1,1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["value"] == "3");
  r = run({"seshadri", "--a", "3", "--b", "4", "--mults", "2,2,2"});
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["error"] == "hypothesis-violated");
  CHECK(j["inequality"] == "Σ m_i ≤ max(a,b)");
}

TEST_CASE("table") {
  auto r = run({"table", "--s", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2/7") != std::string::npos);
  CHECK(r.out.find("6/23") != std::string::npos);
  CHECK(r.out.find("fallback 1/4 for offsets 5..7") != std::string::npos);
  const auto j = json::parse(run({"table", "--s", "3", "--json"}).out);
  CHECK(j["rows"][3]["eps_target"] == "6/23");
}

TEST_CASE("deterministic output is byte-identical") {
  const std::vector<std::string> args{"--deterministic", "bound", "--r", "11", "--dmax", "12", "--backend", "both"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("generated_at") == std::string::npos);

  auto threaded = args;
  threaded.insert(threaded.begin(), {"--threads", "4"});
  CHECK(run(threaded).out == a.out);

  CHECK(run({"bound", "--r", "11", "--dmax", "12"}).out.find("generated_at") != std::string::npos);
}
