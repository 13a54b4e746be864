// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "boolgrow/json_io.hpp"

using namespace boolgrow;
using nlohmann::json;

namespace {

ProcessSpec spec_of(const std::string& gate, int n, bool neg, bool c0, bool c1) {
  return ProcessSpec{SupportSpec{n, neg, c0, c1}, preset_connective(gate)};
}

std::string temp_path(const std::string& stem) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path();
  return (dir / (stem + "." + std::to_string(getpid()) + "." +
                 std::to_string(counter++)))
      .string();
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string capture = temp_path("boolgrow_cli");
  std::string cmd = std::string(BOOLGROW_CLI_PATH) + " " + args + " >" +
                    capture + " 2>&1";
  int rc = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream f(capture);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(capture);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("domain names") {
  CHECK(domain_name(Domain::General) == "general");
  CHECK(domain_name(Domain::Linear) == "linear");
  CHECK(domain_from_name("general") == Domain::General);
  CHECK(domain_from_name("linear") == Domain::Linear);
  CHECK_THROWS(domain_from_name("affine"));
}

TEST_CASE("distribution json round trip") {
  Distribution d = iterate_exact(spec_of("maj3", 3, false, false, false), 2);
  std::string text = to_json(d);
  Distribution back = distribution_from_json(text);
  CHECK(back.domain == d.domain);
  CHECK(back.n == d.n);
  CHECK(back.iteration == d.iteration);
  REQUIRE(back.entries.size() == d.entries.size());
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    CHECK(back.entries[i].first == d.entries[i].first);
    CHECK(back.entries[i].second == d.entries[i].second); // bit-exact
  }
  CHECK(to_json(back) == text);
  CHECK(to_json(d) == text); // deterministic

  Distribution lin = initial_distribution(spec_of("xor2", 3, true, false, false));
  Distribution lback = distribution_from_json(to_json(lin));
  CHECK(lback.domain == Domain::Linear);
  CHECK(distance(lin, lback, Metric::MaxAbs) == 0.0);

  CHECK(to_json(d).find('\n') == std::string::npos);
  CHECK(to_json(d, 2).find('\n') != std::string::npos);

  CHECK_THROWS(distribution_from_json("not json"));
  CHECK_THROWS(distribution_from_json("{\"domain\":\"general\"}"));
}

TEST_CASE("report serializations carry the advertised fields") {
  Connective maj = preset_connective("maj3");
  json props = json::parse(to_json(maj.props));
  CHECK(props["monotone"] == true);
  CHECK(props["balanced"] == true);
  CHECK(props["self_dual"] == true);
  CHECK(props["threshold_index"] == 2);
  CHECK(props["slice_level"] == 1);

  json cp = json::parse(to_json(char_poly(maj)));
  CHECK(cp["arity"] == 3);
  CHECK(cp["counts"] == json::array({0, 0, 3, 1}));
  CHECK(cp["betas"] == json::array({"0/1", "0/3", "3/3", "1/1"}));
  CHECK(cp["balanced"] == true);

  json fp = json::parse(to_json(fixed_point(char_poly(maj))));
  CHECK(fp["kind"] == "interior");
  CHECK(fp["s"] == 0.5);

  json pred =
      json::parse(to_json(predict(spec_of("maj3", 2, false, true, true))));
  CHECK(pred["kind"] == "uniform-on-set");
  CHECK(pred["tag"] == "slice-even");
  CHECK(pred["set"]["family"] == "slice");
  CHECK(pred["set"]["param"] == 1);

  json alt = json::parse(to_json(
      predict(ProcessSpec{SupportSpec{3, false, false, false},
                          make_connective(~preset_connective("xor3").table)})));
  CHECK(alt["kind"] == "alternating");
  CHECK(alt["even_set"]["family"] == "affine-constrained");

  json bc = json::parse(to_json(bound_constants(maj, 2)));
  CHECK(bc["a"] == 0.5);
  CHECK(bc["i2"] == 16.0);
  CHECK(bc["i3"] == 208.0);
  CHECK(bc["i4"] == 1232.0);
  CHECK(bc["onset"] == 4112.0);

  IterationBound ib =
      theoretical_iterations(spec_of("mux", 2, false, false, false), 1e-6);
  json jib = json::parse(to_json(ib));
  CHECK(jib["tag"] == "exponential-decay");
  CHECK(jib["iterations"].is_null()); // NaN serializes as null

  CheckResult cr;
  cr.lemma = "demo";
  cr.population = "none";
  cr.pass = true;
  cr.worst_margin = 0.25;
  json jcr = json::parse(to_json(cr));
  CHECK(jcr["lemma"] == "demo");
  CHECK(jcr["pass"] == true);
  CHECK(jcr["worst_margin"] == 0.25);
}

TEST_CASE("csv renderings") {
  Distribution d = iterate_exact(spec_of("maj3", 3, false, false, false), 1);
  std::ostringstream ss;
  write_csv(ss, d);
  std::string text = ss.str();
  CHECK(text.rfind("id,probability\n", 0) == 0);
  CHECK(text.find("170,0.25925925925925924") != std::string::npos); // 7/27

  Spectrum sp = transform(d);
  std::ostringstream s2;
  write_csv(s2, sp);
  CHECK(s2.str().rfind("coefficient,value\n", 0) == 0);

  std::ostringstream s3;
  write_trajectory_csv(s3, {1.0, 0.25});
  CHECK(s3.str() == "iteration,distance\n0,1\n1,0.25\n");
}

TEST_CASE("cli classify") {
  CliRun r = run_cli("classify --connective maj3");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["name"] == "maj3");
  CHECK(j["arity"] == 3);
  CHECK(j["table"] == "8e");
  CHECK(j["properties"]["balanced"] == true);
  CHECK(j["char_poly"]["counts"] == json::array({0, 0, 3, 1}));
  CHECK(j["fixed_point"]["kind"] == "interior");
  CHECK(j["fixed_point"]["s"] == 0.5);
  CHECK(j["convergence_class"].is_null()); // interior fixed point
  CHECK(j["spectral_profile"]["a3"] == 0.5);

  CliRun again = run_cli("classify --connective maj3");
  CHECK(again.out == r.out); // byte-identical reruns

  CliRun slow = run_cli("classify --connective slow3");
  json js = json::parse(slow.out);
  CHECK(js["convergence_class"]["class"] == "slow");

  CliRun inl = run_cli(
      "classify --connective-json "
      "'{\"arity\":2,\"table\":\"6\",\"name\":\"parity\"}'");
  REQUIRE(inl.status == 0);
  json ji = json::parse(inl.out);
  CHECK(ji["properties"]["linear"] == true);
}

TEST_CASE("cli predict and bounds") {
  CliRun r = run_cli("predict --n 2 --connective maj3 --support proj,const0,const1");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["kind"] == "uniform-on-set");
  CHECK(j["tag"] == "slice-even");

  CliRun b = run_cli("bounds --n 2 --connective maj3 --support neg,const0,const1 --eps 1e-6");
  REQUIRE(b.status == 0);
  json jb = json::parse(b.out);
  CHECK(jb["bound"]["tag"] == "spectral-envelope");
  CHECK(jb["constants"]["a"] == 0.5);

  CliRun x = run_cli("bounds --n 8 --connective xor2 --eps 1e-6");
  json jx = json::parse(x.out);
  CHECK(jx["bound"]["tag"] == "linear-spectral");
  CHECK(jx["bound"]["iterations"] == 6.0);
  CHECK(jx["constants"].is_null()); // machinery rejects affine gates
}

TEST_CASE("cli iterate feeds cli spectrum") {
  std::string dist_file = temp_path("dist");
  CliRun r = run_cli("iterate --n 2 --connective maj3 --support const0,const1 "
                     "--steps 12 --every 0 --out " + dist_file);
  REQUIRE(r.status == 0);
  json wrapper = json::parse(slurp(dist_file));
  CHECK(wrapper["steps"] == 12);
  REQUIRE(wrapper["snapshots"].size() == 1);
  Distribution d = distribution_from_json(wrapper["snapshots"].back().dump());
  CHECK(d.iteration == 12);

  // in-process reference
  Distribution ref = iterate_exact(spec_of("maj3", 2, false, true, true), 12);
  CHECK(distance(d, ref, Metric::MaxAbs) == 0.0);

  CliRun sp = run_cli("spectrum --in " + dist_file);
  REQUIRE(sp.status == 0);
  std::string expected = to_json(transform(ref), 2);
  CHECK(sp.out == expected + "\n");

  // snapshots land every --every steps plus the final state
  std::string snap_file = temp_path("snaps");
  run_cli("iterate --n 2 --connective maj3 --support const0,const1 "
          "--steps 12 --every 4 --out " + snap_file);
  json snaps = json::parse(slurp(snap_file));
  REQUIRE(snaps["snapshots"].size() == 4); // i = 0, 4, 8 plus the final state
  CHECK(snaps["snapshots"][0]["iteration"] == 0);
  CHECK(snaps["snapshots"][1]["iteration"] == 4);
  CHECK(snaps["snapshots"].back()["iteration"] == 12);

  std::filesystem::remove(dist_file);
  std::filesystem::remove(snap_file);
}

TEST_CASE("cli sample determinism across worker counts") {
  std::string base = "sample --n 2 --connective maj3 --depth 4 --samples 20000 "
                     "--seed 9 ";
  CliRun w1 = run_cli(base + "--threads 1");
  CliRun w2 = run_cli(base + "--threads 2");
  CliRun w8 = run_cli(base + "--threads 8");
  REQUIRE(w1.status == 0);
  CHECK(w1.out == w2.out);
  CHECK(w1.out == w8.out);

  CliRun f = run_cli(base + "--threads 1 --emit-formula");
  REQUIRE(f.status == 0);
  json j = json::parse(f.out);
  CHECK(j["formula"].get<std::string>().rfind("(maj3 ", 0) == 0);
  TruthTable t0 =
      sample_formula(spec_of("maj3", 2, false, false, false), 4, 9, 0);
  CHECK(j["formula_table"] == t0.to_hex());
}

TEST_CASE("cli csv outputs") {
  CliRun it = run_cli("iterate --n 2 --connective maj3 --steps 3 --format csv");
  REQUIRE(it.status == 0);
  CHECK(it.out.rfind("id,probability\n", 0) == 0);

  CliRun sp = run_cli("spectrum --n 2 --connective maj3 --steps 3 --format csv");
  CHECK(sp.out.rfind("coefficient,value\n", 0) == 0);

  CliRun tr = run_cli("spectrum --n 2 --connective maj3 --steps 5 --trajectory");
  CHECK(tr.out.rfind("iteration,max_abs\n", 0) == 0);

  CliRun cv = run_cli("converge --n 2 --connective maj3 "
                      "--support const0,const1 --eps 1e-6 --max-iters 50 "
                      "--format csv");
  CHECK(cv.out.rfind("iteration,distance\n", 0) == 0);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("classify").status == 1);              // no connective source
  CHECK(run_cli("iterate --connective maj3").status == 1); // missing --n
  CHECK(run_cli("classify --connective nope").status == 1);
  CHECK(run_cli("sample --n 2 --connective maj3").status == 1); // seed required
  CHECK(run_cli("nonsense").status == 1);

  // slice family at n=6 needs a 2^20 enumeration: budget exit
  CliRun budget = run_cli("converge --n 6 --connective maj3 "
                          "--support const0,const1 --eps 1e-3 --max-iters 5");
  CHECK(budget.status == 2);

  // arity 1 population admits nothing, so CI mode reports failure
  CHECK(run_cli("verify --kmax 1 --ci").status == 3);
  CHECK(run_cli("verify --kmax 3 --nmax 2 --ci").status == 0);
}
