#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/report.hpp"
#include "sdl/errors.hpp"

namespace fs = std::filesystem;
using namespace sdl;
using namespace sdl::runner;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sdlab-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_sdlab(const std::string& args) {
  const std::string cmd = std::string(SDLAB_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path only_file(const fs::path& dir, const std::string& ext) {
  fs::path found;
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ext) {
      found = e.path();
      ++n;
    }
  REQUIRE(n == 1);
  return found;
}

Config small_config() {
  Config c = Config::defaults();
  c.set("mesh.rings", "12");
  c.set("mesh.sectors", "16");
  c.set("mesh.r_min", "0.01");
  c.set("mesh.grading", "1.7");
  c.set("samples", "3");
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config defaults and typed access") {
  Config c = Config::defaults();
  CHECK(c.str("profile.kind") == "power");
  CHECK(c.num("profile.alpha") == 1.0);
  CHECK(c.integer("mesh.rings") == 32);
  CHECK(c.mode() == OriginMode::Split);
  CHECK(c.weight().family == WeightFamily::TwoQuadrant);
  CHECK(c.mesh().r_min == doctest::Approx(1e-3));
  CHECK(c.list("ladder.r_min").size() == 4);
  CHECK_FALSE(c.flag("bessel.reflect"));
  CHECK_THROWS_AS(c.set("mesh.ringz", "3"), ConfigurationError);
  CHECK_THROWS_AS(c.apply_override("mesh.rings"), ConfigurationError);
  c.apply_override("mesh.rings = 40");
  CHECK(c.integer("mesh.rings") == 40);
  c.set("mesh.rings", "forty");
  CHECK_THROWS_AS(c.integer("mesh.rings"), ConfigurationError);
  c.set("alpha", "-1");
  CHECK_THROWS_AS(c.positive("alpha"), ConfigurationError);
  c.set("alphas", "1,,2");
  CHECK_THROWS_AS(c.list("alphas"), ConfigurationError);
}

TEST_CASE("config files") {
  const fs::path dir = scratch_dir("cfg");
  {
    std::ofstream out(dir / "ok.conf");
    out << "# comment\n\n  profile.kind = log   # trailing\nprofile.alpha=2\nweight.family = two_quadrant\n";
  }
  Config c = Config::defaults();
  c.load_file((dir / "ok.conf").string());
  CHECK(c.profile().kind == ProfileKind::Log);
  CHECK(c.profile().alpha == 2.0);
  {
    std::ofstream out(dir / "bad.conf");
    out << "alpha = 1\nnot.a.key = 3\n";
  }
  try {
    Config::defaults().load_file((dir / "bad.conf").string());
    FAIL("unknown key accepted");
  } catch (const ConfigurationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.conf:2") != std::string::npos);
    CHECK(msg.find("not.a.key") != std::string::npos);
  }
  {
    std::ofstream out(dir / "noeq.conf");
    out << "alpha 1\n";
  }
  CHECK_THROWS_AS(Config::defaults().load_file((dir / "noeq.conf").string()), ConfigurationError);
  CHECK_THROWS_AS(Config::defaults().load_file((dir / "missing.conf").string()), ConfigurationError);
}

TEST_CASE("csv and json layout") {
  Report r;
  r.experiment = "demo";
  r.header = {"x", "n", "label"};
  r.rows.push_back({0.1, 3LL, std::string("a")});
  r.rows.push_back({1.0 / 3.0, -2LL, std::string("b")});
  r.results["value"] = 1.5;
  r.residuals["r"] = 1e-13;
  r.check(true, "fine");
  const std::string csv = to_csv(r);
  CHECK(csv == "x,n,label\n0.10000000000000001,3,a\n0.33333333333333331,-2,b\n");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(r.passed);
  r.check(false, "missed");
  CHECK_FALSE(r.passed);
  REQUIRE(r.failures.size() == 1);

  const nlohmann::json j = to_json(r, Config::defaults());
  std::set<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.insert(k);
  CHECK(keys == std::set<std::string>{"experiment", "schema_version", "config", "results", "residuals", "passed"});
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["passed"] == false);
  CHECK(j["config"]["mesh.rings"] == 32);
  CHECK(j["config"]["profile.kind"] == "power");
  const std::string ts = utc_timestamp();
  CHECK(ts.size() == 16);
  CHECK(ts[8] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("report files do not overwrite each other") {
  const fs::path dir = scratch_dir("write");
  Config c = Config::defaults();
  c.set("output.dir", dir.string());
  Report r;
  r.experiment = "demo";
  r.header = {"x"};
  r.rows.push_back({1.0});
  const WrittenFiles a = write_report(r, c, "20260101T000000Z");
  const WrittenFiles b = write_report(r, c, "20260101T000000Z");
  CHECK(a.csv != b.csv);
  CHECK(a.json != b.json);
  CHECK(fs::exists(a.csv));
  CHECK(fs::exists(b.json));
  CHECK(a.csv.filename().string() == "demo-20260101T000000Z.csv");
}

TEST_CASE("same configuration gives byte-identical reports") {
  for (const std::string& name : {std::string("two-point"), std::string("hitting-mc")}) {
    Config c = small_config();
    c.set("mc.paths", "400");
    c.set("mc.return_paths", "20");
    c.set("mc.return_steps", "2000");
    c.set("mc.annulus_lo", "0.02");
    c.set("mc.annulus_hi", "0.1");
    const Report a = run_experiment(name, c);
    const Report b = run_experiment(name, c);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_json(a, c).dump(2) == to_json(b, c).dump(2));
  }
}

TEST_CASE("experiment registry") {
  const auto& names = experiment_names();
  CHECK(names.size() == 10);
  CHECK_THROWS_AS(run_experiment("nope", Config::defaults()), ConfigurationError);
  Config c = small_config();
  c.set("weight.family", "unit_control");
  c.set("profile.kind", "unit");
  CHECK_THROWS_AS(run_experiment("dist", c), ConfigurationError);
}

TEST_CASE("sdlab exit codes and outputs") {
  const fs::path dir = scratch_dir("exe");
  const std::string conf = std::string(SDLAB_CONFIG_DIR);
  const std::string out = " --set output.dir=" + dir.string();

  CHECK(run_sdlab("two-point --config " + conf + "/default.conf" + out) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(only_file(dir, ".json")));
  CHECK(j["experiment"] == "two-point");
  CHECK(j["passed"] == true);
  const std::string csv = slurp(only_file(dir, ".csv"));
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');

  const fs::path dir2 = scratch_dir("exe2");
  CHECK(run_sdlab("check-assumptions --config " + conf + "/unit.conf --set output.dir=" + dir2.string()) == 2);
  CHECK(nlohmann::json::parse(slurp(only_file(dir2, ".json")))["passed"] == false);

  CHECK(run_sdlab("trace --config " + conf + "/default.conf --set bogus.key=1" + out) == 1);
  CHECK(run_sdlab("trace --config " + (dir / "absent.conf").string() + out) == 1);
  CHECK(run_sdlab("dist --config " + conf + "/unit.conf" + out) == 1);
  CHECK(run_sdlab("trace") != 0);
  CHECK(run_sdlab("") != 0);
}

}  // TEST_SUITE
