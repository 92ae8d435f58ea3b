#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "epsnet_cli/cli.hpp"
#include "json.hpp"

namespace {

const std::filesystem::path kData = EPSNET_TEST_DATA;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = epsnet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

std::filesystem::path scratch(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "epsnet_cli_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("bounds for the flat plane") {
  const Result r = run({"bounds", "--K", "0", "--N", "2", "--D", "1", "--eps", "0.5", "--C", "2"});
  REQUIRE(r.code == epsnet::cli::kExitOk);
  const auto j = r.json();
  CHECK(j["n1"] == 16);
  CHECK(j["n2"] == 81);
  CHECK(j["n3"][0]["C"] == 2.0);
  CHECK(j["n3"][0]["n_prime"] == 81);
  CHECK(j["n3"][0]["n3"] == 160);
  CHECK(j["degree_bound"] == 81);
  CHECK(j["net_card_bound"] == 25);
  CHECK(j["doubling_C"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("bounds errors") {
  CHECK(run({"bounds", "--K", "1", "--N", "2", "--D", "3", "--eps", "0.1", "--r", "0.5"}).code ==
        epsnet::cli::kExitDomain);
  CHECK(run({"bounds", "--K", "1", "--N", "2", "--D", "3", "--eps", "0.1"}).code == epsnet::cli::kExitOk);
  CHECK(run({"bounds", "--K", "1", "--N", "2", "--D", "4", "--eps", "0.1"}).code != epsnet::cli::kExitOk);
  CHECK(run({"bounds", "--K", "0", "--N", "2", "--D", "1"}).code == epsnet::cli::kExitValidation);
  CHECK(run({"bounds", "--K", "0", "--N", "2", "--D", "1", "--eps", "-1"}).code == epsnet::cli::kExitValidation);
  CHECK(run({"nosuch"}).code == epsnet::cli::kExitValidation);
  CHECK(run({}).code == epsnet::cli::kExitValidation);
}

TEST_CASE("help exits cleanly") {
  const Result r = run({"--help"});
  CHECK(r.code == epsnet::cli::kExitOk);
  CHECK(r.out.find("bounds") != std::string::npos);
  CHECK(run({"net", "--help"}).code == epsnet::cli::kExitOk);
}

TEST_CASE("fisher-embed") {
  const Result r = run({"fisher-embed", "--p", "0.25,0.75"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["u"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["u"][1].get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(j["norm_squared"].get<double>() == doctest::Approx(4.0));
  const auto q = run({"fisher-embed", "--p", "0.5,0.5", "--q", "0.5,0.5"}).json();
  CHECK(q["fisher_distance"].get<double>() == doctest::Approx(0.0));
  CHECK(q["kl_pq"].get<double>() == doctest::Approx(0.0));
  const auto orth = run({"fisher-embed", "--p", "1,0", "--q", "0,1"});
  CHECK(orth.code == epsnet::cli::kExitValidation);
  const auto unit = run({"fisher-embed", "--p", "0.5,0.5", "--q", "0.9,0.1"}).json();
  CHECK(unit["fisher_distance"].get<double>() ==
        doctest::Approx(2 * std::acos(std::sqrt(0.45) + std::sqrt(0.05))));
  CHECK(run({"fisher-embed", "--p", "0.5,0.6"}).code == epsnet::cli::kExitValidation);
  CHECK(run({"fisher-embed", "--p", "0.5,0.5", "--q", "0.2,0.3,0.5"}).code == epsnet::cli::kExitValidation);
}

TEST_CASE("net requires a seed and is deterministic") {
  const std::vector<std::string> args{"net", "--space", data("sphere.json"), "--eps", "0.5", "--samples", "5000"};
  CHECK(run(args).code == epsnet::cli::kExitValidation);
  auto seeded = args;
  seeded.insert(seeded.end(), {"--seed", "4"});
  const Result a = run(seeded), b = run(seeded);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = seeded;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);
  const auto j = a.json();
  CHECK(j["size"].get<long long>() <= j["bounds"]["n1"].get<long long>());
  CHECK(j["bounds"]["size_within_n1"] == true);
  CHECK(j["bounds"]["overlap_within_n2"] == true);
  CHECK(j["centers"].size() == j["size"].get<std::size_t>());
  CHECK(j["covering"].get<double>() < 0.5);
  CHECK(j["separation"].get<double>() >= 0.5);
  CHECK(run({"net", "--space", data("missing.json"), "--eps", "0.5", "--samples", "10", "--seed", "1"}).code ==
        epsnet::cli::kExitValidation);
  CHECK(run({"net", "--space", data("sphere.json"), "--eps", "0.5", "--samples", "10", "--seed", "1",
             "--strategy", "best"})
            .code == epsnet::cli::kExitValidation);
}

TEST_CASE("output file") {
  const auto dir = scratch("output");
  const auto file = dir / "report.json";
  const Result r = run({"bounds", "--K", "0", "--N", "2", "--D", "1", "--eps", "0.5", "-o", file.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(file))["n1"] == 16);
}

TEST_CASE("triangulate writes a mesh") {
  const auto dir = scratch("tri");
  const Result r = run({"triangulate", "--space", data("sphere.json"), "--eps", "0.4", "--samples", "10000",
                        "--seed", "2", "--output-dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["artifact"]["format"] == "off");
  const std::string off = slurp(dir / "mesh.off");
  REQUIRE(off.rfind("OFF", 0) == 0);
  std::istringstream in(off.substr(3));
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  CHECK(nv == j["vertices"].get<std::size_t>());
  CHECK(nf == j["simplex_counts"][2].get<std::size_t>());
  const Result again = run({"triangulate", "--space", data("sphere.json"), "--eps", "0.4", "--samples", "10000",
                            "--seed", "2", "--output-dir", dir.string()});
  CHECK(again.out == r.out);
  CHECK(slurp(dir / "mesh.off") == off);
}

TEST_CASE("discretize writes edges and masses that round-trip through growth") {
  const auto dir = scratch("disc");
  const Result r = run({"discretize", "--space", data("box.json"), "--eps", "0.5", "--samples", "20000", "--seed",
                        "3", "--pairs", "2000", "--output-dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["rough_isometry"]["violations"] == 0);
  CHECK(j["rough_isometry"]["lower_bound_violations"] == 0);
  CHECK(j["total_mass"].get<double>() == doctest::Approx(36.0).epsilon(1e-12));
  CHECK(j["bounded_geometry"]["passed"] == true);
  std::ifstream masses(dir / "masses.csv");
  std::string line;
  std::getline(masses, line);
  CHECK(line == "index,mass");
  std::size_t rows = 0;
  while (std::getline(masses, line)) rows += !line.empty();
  CHECK(rows == j["vertices"].get<std::size_t>());
  const Result g = run({"growth", "--graph", (dir / "edges.txt").string(), "--rmax", "10"});
  REQUIRE(g.code == 0);
  CHECK(g.json()["source"] == "graph");
}

TEST_CASE("growth") {
  const Result cyc = run({"growth", "--graph", data("cycle6.txt"), "--rmax", "3"});
  REQUIRE(cyc.code == 0);
  CHECK(run({"growth", "--space", data("box.json"), "--rmax", "2"}).code == epsnet::cli::kExitValidation);
  CHECK(run({"growth", "--space", data("box.json"), "--graph", data("cycle6.txt"), "--rmax", "2", "--seed", "1"})
            .code == epsnet::cli::kExitValidation);
  CHECK(run({"growth", "--graph", data("cycle6.txt"), "--rmax", "3", "--r0", "1"}).code ==
        epsnet::cli::kExitValidation);
  const Result sp = run({"growth", "--space", data("hyperbolic.json"), "--rmax", "2.5", "--seed", "1", "--budget",
                         "20000", "--eps", "0.4"});
  REQUIRE(sp.code == 0);
  const auto j = sp.json();
  CHECK(j["radii"].size() == j["volumes"].size());
  CHECK(j.contains("graph"));
  CHECK(j.contains("agreement"));
}

TEST_CASE("verify-bg") {
  const Result r = run({"verify-bg", "--space", data("sphere.json"), "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["passed"] == true);
  for (const auto& phi : j["phi"]) CHECK(phi.get<double>() == doctest::Approx(2 * M_PI).epsilon(1e-12));
  const Result mc = run({"verify-bg", "--space", data("sphere.json"), "--seed", "1", "--mode", "monte-carlo",
                         "--budget", "20000"});
  REQUIRE(mc.code == 0);
  CHECK(mc.json()["standard_errors"].size() == mc.json()["radii"].size());
  CHECK(run({"verify-bg", "--space", data("sphere.json"), "--seed", "1", "--rmax", "4"}).code ==
        epsnet::cli::kExitDomain);
}

TEST_CASE("compare-patterns") {
  const std::vector<std::string> base{"compare-patterns", "--space", data("sphere.json"), "--eps", "0.5",
                                      "--samples", "5000", "--seed", "2"};
  const Result self = run(base);
  REQUIRE(self.code == 0);
  const auto j = self.json();
  CHECK(j["identical"] == true);
  CHECK(j["violations"].empty());
  CHECK(j["mode"] == "same-centers");
  auto cross = base;
  cross.insert(cross.end(), {"--space-b", data("box.json")});
  CHECK(run(cross).code == epsnet::cli::kExitValidation);
}
