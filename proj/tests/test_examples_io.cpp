#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "classical_oracle.hpp"
#include "cqg/io.hpp"

using namespace cqg;

namespace {

std::vector<std::vector<int>> translation_table(int n) {
  std::vector<std::vector<int>> tr(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < n; ++x) tr[g][x] = (g + x) % n;
  }
  return tr;
}

std::string temp_path(const char* name) {
  return std::string("io_test_") + name;
}

}  // namespace

TEST_CASE("group table validation") {
  CHECK(cyclic_group(6).order() == 6);
  CHECK(dihedral_group(4).order() == 8);
  CHECK(symmetric_group(3).order() == 6);
  CHECK(symmetric_group(4).order() == 24);
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).order() == 6);

  // associativity failure: a "table" where 0 is an identity but products lie
  std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(GroupTable(bad), StructuralError);

  std::vector<std::vector<int>> no_identity{{1, 0}, {0, 1}};
  CHECK_THROWS_AS(GroupTable(no_identity), StructuralError);
}

TEST_CASE("element orders in the dihedral group") {
  GroupTable d4 = dihedral_group(4);
  CHECK(d4.element_order(d4.identity()) == 1);
  CHECK(d4.element_order(1) == 4);  // the rotation r
  CHECK(d4.element_order(4) == 2);  // the reflection s
  CHECK(d4.element_order(5) == 2);  // rs
}

TEST_CASE("permutation closure recovers S3") {
  PermutationGroup s3 = permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 6);
  CHECK(s3.table.order() == 6);
  CHECK(isomorphic(s3.table, symmetric_group(3)));
  CHECK_THROWS_AS(permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 5),
                  PreconditionError);
}

TEST_CASE("classical constructors verify to rounding error") {
  QuantumGroupPtr s3 = classical_quantum_group(symmetric_group(3));
  CHECK(verify_hopf(*s3).max_residual() <= 1e-12);

  BuiltAction nat = classical_action(
      permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 6).table,
      permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 6).permutations);
  CHECK(nat.action.report().max_residual() <= 1e-12);
  CHECK(ergodicity_report(nat.action).ergodic);
}

TEST_CASE("non-action tables are rejected") {
  GroupTable z2 = cyclic_group(2);
  // wrong: the generator acts but the identity row permutes
  std::vector<std::vector<int>> bad{{1, 0, 2}, {0, 1, 2}};
  CHECK_THROWS_AS(classical_action(z2, bad), StructuralError);
  // wrong shape: not a permutation
  std::vector<std::vector<int>> not_perm{{0, 0, 2}, {0, 1, 2}};
  CHECK_THROWS_AS(classical_action(z2, not_perm), StructuralError);
}

TEST_CASE("trivial classical action is the identity grid") {
  GroupTable z2 = cyclic_group(2);
  std::vector<std::vector<int>> trivial{{0, 1, 2}, {0, 1, 2}};
  BuiltAction built = classical_action(z2, trivial);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Element expected = (i == j) ? Element::unit(built.group->algebra())
                                  : Element::zero(built.group->algebra());
      CHECK(operator_norm(built.action.entry(i, j) - expected) == 0.0);
    }
  }
}

TEST_CASE("block reflection family across k") {
  BuiltAction k2 = block_reflection_action(2);
  CHECK(k2.group->algebra()->commutative());  // D2 is abelian
  CHECK(orbit_partition(k2.action).blocks ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});

  BuiltAction k3 = block_reflection_action(3);
  CHECK_FALSE(k3.group->algebra()->commutative());
  CHECK(k3.group->algebra()->dim() == 6);
  CHECK(orbit_partition(k3.action).blocks ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});

  BuiltAction k4 = block_reflection_action(4);
  CHECK(orbit_partition(k4.action).haar_values(0, 0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(ergodicity_report(k4.action).ergodic);

  CHECK_THROWS_AS(block_reflection_action(1), PreconditionError);
}

TEST_CASE("randomized classical actions match the classical orbit oracle") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    auto random = oracle::random_classical_action(rng);
    BuiltAction built =
        classical_action(random.group.table, random.group.permutations);
    CHECK(orbit_partition(built.action).blocks ==
          oracle::classical_orbits(random.group.permutations, random.points));
  }
}

TEST_CASE("quantum group save/load round trip is byte-stable") {
  BuiltAction fix = block_reflection_action(4);
  const std::string text = quantum_group_to_text(*fix.group);
  QuantumGroupPtr reloaded = quantum_group_from_text(text);
  CHECK(quantum_group_to_text(*reloaded) == text);
  // coordinates reproduce bit-exactly
  CHECK(reloaded->coproduct().matrix() == fix.group->coproduct().matrix());
  CHECK(reloaded->antipode().matrix() == fix.group->antipode().matrix());
  CHECK(reloaded->counit().coeffs() == fix.group->counit().coeffs());

  const std::string path = temp_path("dual.cqg");
  save_quantum_group(*fix.group, path);
  QuantumGroupPtr from_file = load_quantum_group(path);
  CHECK(quantum_group_to_text(*from_file) == text);
  std::remove(path.c_str());
}

TEST_CASE("action save/load round trip is byte-stable") {
  BuiltAction fix = block_reflection_action(4);
  const std::string text = action_to_text(fix.action);
  FiniteAction reloaded = action_from_text(text, fix.group);
  CHECK(action_to_text(reloaded) == text);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(reloaded.entry(i, j).coords() == fix.action.entry(i, j).coords());
    }
  }
}

TEST_CASE("a scaled row fails re-verification and the report names row_sum") {
  BuiltAction fix = block_reflection_action(4);
  nlohmann::json doc = nlohmann::json::parse(action_to_text(fix.action));
  for (auto& entry : doc["grid"][0]) {
    for (auto& c : entry) {
      c[0] = c[0].get<double>() * 0.9;
      c[1] = c[1].get<double>() * 0.9;
    }
  }
  try {
    action_from_text(doc.dump(), fix.group);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("re-verification") != std::string::npos);
    nlohmann::json report = nlohmann::json::parse(e.report_json());
    CHECK(report["row_sum"]["value"].get<double>() ==
          doctest::Approx(0.1).epsilon(1e-9));
    CHECK(report["row_sum"]["i"] == 1);
  }
}

TEST_CASE("truncated and mislabeled files raise parse errors") {
  BuiltAction fix = block_reflection_action(4);
  const std::string text = action_to_text(fix.action);
  CHECK_THROWS_AS(action_from_text(text.substr(0, text.size() / 2), fix.group),
                  ParseError);
  CHECK_THROWS_AS(quantum_group_from_text(text),  // an action is not a group
                  ParseError);
  CHECK_THROWS_AS(load_quantum_group("does_not_exist.cqg"), ParseError);
}

TEST_CASE("digests distinguish documents") {
  BuiltAction fix = block_reflection_action(4);
  const std::string a = quantum_group_to_text(*fix.group);
  const std::string b = action_to_text(fix.action);
  CHECK(digest(a) != digest(b));
  CHECK(digest(a).size() == 16);
  CHECK(digest(a) == digest(a));
}
