// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classical_oracle.hpp"
#include "cqg/io.hpp"

using namespace cqg;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name,
               const std::function<void()>& body) {
  try {
    body();
    std::printf("[PASS] criterion %2d: %s\n", id, name.c_str());
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] criterion %2d: %s\n        %s\n", id, name.c_str(),
                e.what());
  }
  std::fflush(stdout);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

std::vector<std::vector<int>> translation_table(int n) {
  std::vector<std::vector<int>> tr(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < n; ++x) tr[g][x] = (g + x) % n;
  }
  return tr;
}

struct Fixture {
  std::string name;
  QuantumGroupPtr group;
  FiniteAction action;
};

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> out;
  {
    BuiltAction c4 = classical_action(cyclic_group(4), translation_table(4));
    out.push_back({"c4-translation", c4.group, std::move(c4.action)});
  }
  {
    PermutationGroup s3 = permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 6);
    BuiltAction nat = classical_action(s3.table, s3.permutations);
    out.push_back({"s3-natural", nat.group, std::move(nat.action)});
  }
  {
    BuiltAction z6 = classical_action(cyclic_group(6), translation_table(6));
    out.push_back({"z6-translation", z6.group, std::move(z6.action)});
  }
  {
    // commuting cycles on ten points: orbits of sizes 4, 3, 2 and a fixed point
    std::vector<int> a{1, 2, 3, 0, 4, 5, 6, 7, 8, 9};
    std::vector<int> b{0, 1, 2, 3, 5, 6, 4, 7, 8, 9};
    std::vector<int> c{0, 1, 2, 3, 4, 5, 6, 8, 7, 9};
    PermutationGroup mixed = permutation_group(10, {a, b, c}, 24);
    BuiltAction act = classical_action(mixed.table, mixed.permutations);
    out.push_back({"mixed-10", act.group, std::move(act.action)});
  }
  for (int k : {2, 3, 4}) {
    BuiltAction blocks = block_reflection_action(k);
    out.push_back({"block-reflection-" + std::to_string(k), blocks.group,
                   std::move(blocks.action)});
  }
  {
    QuantumGroupPtr dual = dual_quantum_group(dihedral_group(4)).group;
    out.push_back({"identity-3-dual-d4", dual, identity_action(dual, 3)});
  }
  return out;
}

const Fixture& fixture_named(const std::vector<Fixture>& fixtures,
                             const std::string& name) {
  for (const auto& f : fixtures) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("missing fixture " + name);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CQG_CLI_PATH) + " " + args;
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::set<std::vector<int>> subset_family(const InvariantSubsets& subsets) {
  std::set<std::vector<int>> family;
  for (const auto& r : subsets.subsets) family.insert(r.subset);
  return family;
}

std::set<std::vector<int>> orbit_union_lattice(
    const std::vector<std::vector<int>>& orbits) {
  std::set<std::vector<int>> family;
  const std::size_t k = orbits.size();
  for (std::size_t sel = 0; sel < (1ull << k); ++sel) {
    std::vector<int> members;
    for (std::size_t b = 0; b < k; ++b) {
      if (sel & (1ull << b)) {
        members.insert(members.end(), orbits[b].begin(), orbits[b].end());
      }
    }
    std::sort(members.begin(), members.end());
    family.insert(std::move(members));
  }
  return family;
}

}  // namespace

int main() {
  std::setbuf(stdout, nullptr);
  const std::vector<Fixture> fixtures = build_fixtures();

  // Randomized classical actions shared by criteria 1 and 2.
  struct RandomCase {
    oracle::RandomClassicalAction source;
    std::optional<BuiltAction> built;
  };
  std::vector<RandomCase> random_cases;
  std::mt19937_64 rng(20250412);
  for (int i = 0; i < 100; ++i) {
    random_cases.push_back({oracle::random_classical_action(rng), {}});
  }

  criterion(1, "classical-oracle equivalence on 100 randomized actions", [&] {
    const auto start = std::chrono::steady_clock::now();
    for (auto& rc : random_cases) {
      rc.built = classical_action(rc.source.group.table,
                                  rc.source.group.permutations);
      const auto& act = rc.built->action;

      auto expected = oracle::classical_orbits(rc.source.group.permutations,
                                               rc.source.points);
      OrbitPartition orbits = orbit_partition(act);
      require(orbits.blocks == expected, "orbit partition mismatch");

      ErgodicityReport erg = ergodicity_report(act);
      require(erg.ergodic == oracle::classical_transitive(
                                 rc.source.group.permutations,
                                 rc.source.points),
              "ergodicity verdict mismatch");

      InvariantStatePolytope pol = invariant_state_polytope(act);
      Eigen::MatrixXd want = oracle::classical_vertices(
          rc.source.group.permutations, rc.source.points);
      require(pol.vertices.rows() == want.rows(), "vertex count mismatch");
      require((oracle::sorted_rows(pol.vertices) - oracle::sorted_rows(want))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-9,
              "polytope vertices differ beyond 1e-9");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream msg;
    msg << "runtime " << seconds << " s exceeds 30 s";
    require(seconds < 30.0, msg.str());
  });

  criterion(2, "four-way ergodicity equivalence, uniform Haar when ergodic",
            [&] {
    auto check = [](const FiniteAction& act, const std::string& label) {
      ErgodicityReport erg = ergodicity_report(act);  // asserts agreement
      if (erg.ergodic) {
        require(erg.haar_deviation <= 1e-9,
                label + ": ergodic but h(a_ij) deviates from 1/n");
      }
    };
    for (const auto& f : fixtures) check(f.action, f.name);
    for (const auto& rc : random_cases) {
      require(rc.built.has_value(), "criterion 1 must run first");
      check(rc.built->action, "randomized");
    }
  });

  criterion(3, "orbit Haar values: 1/2 and 0 on the block fixture, 1/4 on c4",
            [&] {
    const Fixture& fd = fixture_named(fixtures, "block-reflection-4");
    OrbitPartition orbits = orbit_partition(fd.action);
    require(std::abs(orbits.haar_values(0, 0) - 0.5) <= 1e-9,
            "h(a_11) is not 1/2");
    require(std::abs(orbits.haar_values(0, 2)) <= 1e-7, "h(a_13) is not 0");

    const Fixture& c4 = fixture_named(fixtures, "c4-translation");
    OrbitPartition c4_orbits = orbit_partition(c4.action);
    require((c4_orbits.haar_values.array() - 0.25).abs().maxCoeff() <= 1e-9,
            "h(a_ij) is not 1/4 on the translation fixture");
  });

  criterion(4, "support chain supp = M = Orb on every fixture and point", [&] {
    for (const auto& f : fixtures) {
      for (int x = 0; x < f.action.points(); ++x) {
        SupportChain chain = support_sets(f.action, x);
        require(chain.haar_faithful, f.name + ": Haar Gram is not definite");
        require(chain.equal && chain.support == chain.m_set &&
                    chain.m_set == chain.orbit,
                f.name + ": chain is not an equality");
      }
    }
  });

  criterion(5, "invariant-functional dimension equals dim of fixed points",
            [&] {
    for (const auto& f : fixtures) {
      InvariantStatePolytope pol = invariant_state_polytope(f.action);
      FixedPointAlgebra fp = fixed_point_algebra(f.action);
      require(pol.functional_dim == fp.dimension(),
              f.name + ": duality dimension mismatch");
    }
    const Fixture& fd = fixture_named(fixtures, "block-reflection-4");
    require(invariant_state_polytope(fd.action).functional_dim == 2,
            "block fixture should have a 2-dimensional invariant space");
  });

  criterion(6, "full 2^n enumeration finds exactly the orbit lattice", [&] {
    for (const std::string name :
         {std::string("c4-translation"), std::string("s3-natural"),
          std::string("mixed-10"), std::string("block-reflection-4")}) {
      const Fixture& f = fixture_named(fixtures, name);
      InvariantSubsets subsets = invariant_subsets(f.action, true);
      OrbitPartition orbits = orbit_partition(f.action);
      require(subset_family(subsets) == orbit_union_lattice(orbits.blocks),
              name + ": invariant subsets differ from the orbit lattice");
      int minimal = 0;
      for (const auto& r : subsets.subsets) minimal += r.minimal ? 1 : 0;
      require(minimal == static_cast<int>(orbits.blocks.size()),
              name + ": minimal subsets are not the orbits");
    }
    const Fixture& mixed = fixture_named(fixtures, "mixed-10");
    auto classical = oracle::classical_orbits(
        permutation_group(10,
                          {{1, 2, 3, 0, 4, 5, 6, 7, 8, 9},
                           {0, 1, 2, 3, 5, 6, 4, 7, 8, 9},
                           {0, 1, 2, 3, 4, 5, 6, 8, 7, 9}},
                          24)
            .permutations,
        10);
    require(subset_family(invariant_subsets(mixed.action, true)) ==
                orbit_union_lattice(classical),
            "mixed-10 lattice differs from the classical orbit lattice");
  });

  criterion(7, "orthogonality relations and trivial F-matrices", [&] {
    for (const std::string name :
         {std::string("c4-translation"), std::string("block-reflection-4")}) {
      const Fixture& f = fixture_named(fixtures, name);
      IrrepDecomposition dec = all_irreps(f.group, 7);
      const Functional& h = f.group->haar();
      for (const auto& cls : dec.classes) {
        require(cls.f.pattern_residual <= 1e-8,
                name + ": Gram tensor deviates from the delta pattern");
        require(cls.f.inverse_residual <= 1e-8,
                name + ": second orthogonality relation fails");
        require((cls.f.f -
                 Mat::Identity(cls.rep.degree(), cls.rep.degree()))
                        .cwiseAbs()
                        .maxCoeff() <= 1e-8,
                name + ": F-matrix is not the identity");
      }
      for (std::size_t a = 0; a < dec.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < dec.classes.size(); ++b) {
          const auto& u = dec.classes[a].rep;
          const auto& v = dec.classes[b].rep;
          for (int m = 0; m < u.degree(); ++m) {
            for (int k = 0; k < u.degree(); ++k) {
              for (int n = 0; n < v.degree(); ++n) {
                for (int l = 0; l < v.degree(); ++l) {
                  require(std::abs(h(multiply(u.at(m, k),
                                              involute(v.at(n, l))))) <= 1e-8,
                          name + ": mixed Gram tensor does not vanish");
                }
              }
            }
          }
        }
      }
      require(is_kac(f.group, 7).kac(), name + ": Kac criteria fail");
      multiplicities(f.action, 7);  // throws unless F = id on the spectrum
    }
  });

  criterion(8, "Haar solver: unique, bi-invariant, faithful on fixtures", [&] {
    for (const auto& f : fixtures) {
      HaarReport report;
      haar_state(*f.group, &report);
      require(report.solution_dim == 1, f.name + ": Haar is not unique");
      require(report.invariance_left <= 1e-10 &&
                  report.invariance_right <= 1e-10,
              f.name + ": bi-invariance residual above 1e-10");
      ReducedQuotient red = reduced_quotient(f.group);
      require(red.removed_dimension == 0,
              f.name + ": reduced quotient removed a block");
      require(red.group->algebra()->block_sizes() ==
                  f.group->algebra()->block_sizes(),
              f.name + ": reduction changed the algebra");
    }
  });

  criterion(9, "ergodic actions on X_n have maximal atom exactly 1/n", [&] {
    for (int n = 2; n <= 8; ++n) {
      BuiltAction act = classical_action(cyclic_group(n), translation_table(n));
      require(ergodicity_report(act.action).ergodic, "translation not ergodic");
      InvariantStatePolytope pol = invariant_state_polytope(act.action);
      require(pol.vertices.rows() == 1, "invariant state is not unique");
      require(std::abs(pol.vertices.row(0).maxCoeff() - 1.0 / n) <= 1e-9,
              "maximal atom is not 1/n");
    }
  });

  criterion(10, "serialization round trips and CLI exit codes", [&] {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("acceptance_tmp");
    fs::create_directories(dir);

    for (const auto& f : fixtures) {
      const std::string gtext = quantum_group_to_text(*f.group);
      QuantumGroupPtr g2 = quantum_group_from_text(gtext);
      require(quantum_group_to_text(*g2) == gtext,
              f.name + ": group round trip is not byte-stable");
      require(g2->coproduct().matrix() == f.group->coproduct().matrix(),
              f.name + ": coproduct coordinates changed");

      const std::string atext = action_to_text(f.action);
      FiniteAction a2 = action_from_text(atext, f.group);
      require(action_to_text(a2) == atext,
              f.name + ": action round trip is not byte-stable");
      for (int i = 0; i < f.action.points(); ++i) {
        for (int j = 0; j < f.action.points(); ++j) {
          require(a2.entry(i, j).coords() == f.action.entry(i, j).coords(),
                  f.name + ": grid coordinates changed");
        }
      }
    }

    const Fixture& c4 = fixture_named(fixtures, "c4-translation");
    const std::string group_path = (dir / "fix_c4.cqg").string();
    const std::string action_path = (dir / "fix_c4.act").string();
    save_quantum_group(*c4.group, group_path);
    save_action(c4.action, action_path);

    require(run_cli("ergodic " + group_path + " " + action_path +
                    " >/dev/null 2>&1") == 0,
            "CLI exit code for a passing check is not 0");

    // semantic corruption: scale the first grid row
    nlohmann::json doc =
        nlohmann::json::parse(std::ifstream(action_path));
    for (auto& entry : doc["grid"][0]) {
      for (auto& c : entry) c[0] = c[0].get<double>() * 0.9;
    }
    const std::string bad_path = (dir / "corrupt.act").string();
    std::ofstream(bad_path) << doc.dump();
    require(run_cli("check-action " + group_path + " " + bad_path +
                    " >/dev/null 2>&1") == 1,
            "CLI exit code for a corrupted action is not 1");

    const std::string trunc_path = (dir / "truncated.act").string();
    std::ofstream(trunc_path) << action_to_text(c4.action).substr(0, 40);
    require(run_cli("orbits " + group_path + " " + trunc_path +
                    " >/dev/null 2>&1") == 2,
            "CLI exit code for a truncated file is not 2");

    nlohmann::json gdoc =
        nlohmann::json::parse(std::ifstream(group_path));
    gdoc["coproduct"][0][0][0] = 0.25;  // breaks the homomorphism law
    const std::string badg_path = (dir / "corrupt.cqg").string();
    std::ofstream(badg_path) << gdoc.dump();
    require(run_cli("check-hopf " + badg_path + " >/dev/null 2>&1") == 1,
            "CLI exit code for a corrupted group is not 1");
  });

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
