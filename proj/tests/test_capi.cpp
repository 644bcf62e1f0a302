#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cqg.h"

using nlohmann::json;

namespace {

struct Fixture {
  cqg_group* group = nullptr;
  cqg_action* action = nullptr;
  ~Fixture() {
    cqg_action_free(action);
    cqg_group_free(group);
  }
};

Fixture make(const char* name) {
  Fixture f;
  cqg_options opts;
  cqg_options_init(&opts);
  REQUIRE(cqg_fixture(name, &opts, &f.group, &f.action) == CQG_OK);
  return f;
}

json run(const Fixture& f, const char* command,
         cqg_status expected = CQG_OK) {
  cqg_options opts;
  cqg_options_init(&opts);
  char* text = nullptr;
  cqg_status status = cqg_run(f.group, f.action, command, &opts, &text);
  CHECK(status == expected);
  json parsed;
  if (text) {
    parsed = json::parse(text);
    cqg_string_free(text);
  }
  return parsed;
}

}  // namespace

TEST_CASE("options defaults") {
  cqg_options opts;
  cqg_options_init(&opts);
  CHECK(opts.tolerance == 1e-9);
  CHECK(opts.zero_tolerance == 1e-7);
  CHECK(opts.seed == 1);
  CHECK(opts.enumerate_subsets == 0);
}

TEST_CASE("check-hopf and haar on the cyclic fixture") {
  Fixture f = make("c4");
  json hopf = run(f, "check-hopf");
  CHECK(hopf["pass"] == true);
  CHECK(hopf["hopf"]["max_residual"].get<double>() <= 1e-12);

  json haar = run(f, "haar");
  CHECK(haar["haar"]["solution_dim"] == 1);
  CHECK(haar["null_ideal_dim"] == 0);
  CHECK(haar["haar_values"][0][0].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("ergodic verdicts") {
  Fixture c4 = make("c4");
  json verdict = run(c4, "ergodic");
  CHECK(verdict["verdict"] == "ergodic");
  CHECK(verdict["ergodicity"]["ergodic"] == true);

  Fixture blocks = make("dual-d4");
  json not_ergodic = run(blocks, "ergodic");
  CHECK(not_ergodic["verdict"] == "not ergodic");
}

TEST_CASE("orbits of the block reflection fixture") {
  Fixture f = make("dual-d4");
  json report = run(f, "orbits");
  CHECK(report["orbits"]["blocks"] == json::parse("[[1,2],[3,4]]"));
}

TEST_CASE("is-kac and decompose") {
  Fixture f = make("dual-d4");
  CHECK(run(f, "is-kac")["kac"]["kac"] == true);
  json spectrum = run(f, "decompose");
  CHECK(spectrum["spectrum"]["trivial_multiplicity"] == 2);
}

TEST_CASE("full report is deterministic") {
  Fixture f = make("c4");
  cqg_options opts;
  cqg_options_init(&opts);
  char* first = nullptr;
  char* second = nullptr;
  REQUIRE(cqg_run(f.group, f.action, "report", &opts, &first) == CQG_OK);
  REQUIRE(cqg_run(f.group, f.action, "report", &opts, &second) == CQG_OK);
  CHECK(std::string(first) == std::string(second));
  json parsed = json::parse(first);
  CHECK(parsed["pass"] == true);
  CHECK(parsed["seed"] == 1);
  CHECK(parsed["inputs"].contains("group"));
  CHECK(parsed["inputs"].contains("action"));
  cqg_string_free(first);
  cqg_string_free(second);
}

TEST_CASE("save, reload, digest stability") {
  Fixture f = make("s3");
  REQUIRE(cqg_group_save(f.group, "capi_s3.cqg") == CQG_OK);
  REQUIRE(cqg_action_save(f.action, "capi_s3.act") == CQG_OK);

  cqg_options opts;
  cqg_options_init(&opts);
  cqg_group* group = nullptr;
  cqg_action* action = nullptr;
  REQUIRE(cqg_group_load("capi_s3.cqg", &opts, &group) == CQG_OK);
  REQUIRE(cqg_action_load(group, "capi_s3.act", &opts, &action) == CQG_OK);

  char* text = nullptr;
  REQUIRE(cqg_run(group, action, "faithful", &opts, &text) == CQG_OK);
  json report = json::parse(text);
  CHECK(report["faithfulness"]["faithful"] == true);
  cqg_string_free(text);

  cqg_action_free(action);
  cqg_group_free(group);
  std::remove("capi_s3.cqg");
  std::remove("capi_s3.act");
}

TEST_CASE("corrupted inputs map to the contracted statuses") {
  Fixture f = make("c4");
  cqg_options opts;
  cqg_options_init(&opts);

  // semantic corruption: scale one grid row, re-verification must fail
  REQUIRE(cqg_action_save(f.action, "capi_bad.act") == CQG_OK);
  std::ifstream in("capi_bad.act");
  json doc = json::parse(in);
  in.close();
  for (auto& entry : doc["grid"][0]) {
    for (auto& c : entry) c[0] = c[0].get<double>() * 0.9;
  }
  std::ofstream out("capi_bad.act");
  out << doc.dump();
  out.close();

  cqg_action* bad = nullptr;
  CHECK(cqg_action_load(f.group, "capi_bad.act", &opts, &bad) ==
        CQG_CHECK_FAILED);
  CHECK(bad == nullptr);
  std::string report = cqg_last_error_report();
  CHECK(json::parse(report).contains("row_sum"));

  // parse corruption
  std::ofstream trunc("capi_trunc.act");
  trunc << "{\"format_version\": 1, \"kind\": \"act";
  trunc.close();
  CHECK(cqg_action_load(f.group, "capi_trunc.act", &opts, &bad) ==
        CQG_PARSE_ERROR);

  CHECK(cqg_group_load("missing.cqg", &opts, nullptr) == CQG_PARSE_ERROR);

  char* text = nullptr;
  CHECK(cqg_run(f.group, f.action, "no-such-command", &opts, &text) ==
        CQG_PARSE_ERROR);
  CHECK(std::string(cqg_last_error()).find("unknown command") !=
        std::string::npos);

  std::remove("capi_bad.act");
  std::remove("capi_trunc.act");
}

TEST_CASE("fixture names") {
  Fixture k3 = make("block-reflection-3");
  CHECK(run(k3, "orbits")["orbits"]["blocks"] == json::parse("[[1,2],[3,4]]"));

  Fixture idn = make("identity-3");
  json subsets = run(idn, "invariant-subsets");
  CHECK(subsets["invariant_subsets"]["count"] == 8);

  cqg_group* g = nullptr;
  cqg_options opts;
  cqg_options_init(&opts);
  CHECK(cqg_fixture("nope", &opts, &g, nullptr) == CQG_PARSE_ERROR);
}
