#include "cqg.h"

#include <cstring>
#include <optional>
#include <string>

#include "cqg/examples.hpp"
#include "cqg/io.hpp"
#include "cqg/json_support.hpp"

using nlohmann::json;

struct cqg_group {
  cqg::QuantumGroupPtr group;
  std::string digest;
};

struct cqg_action {
  std::optional<cqg::FiniteAction> action;
  std::string digest;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_report;

cqg::Tolerances tolerances_of(const cqg_options* opts) {
  cqg::Tolerances tol;
  if (opts) {
    tol.residual = opts->tolerance;
    tol.zero = opts->zero_tolerance;
  }
  return tol;
}

std::uint64_t seed_of(const cqg_options* opts) { return opts ? opts->seed : 1; }

void clear_error() {
  g_last_error.clear();
  g_last_error_report.clear();
}

cqg_status fail(cqg_status status, const std::string& message,
                const std::string& report = {}) {
  g_last_error = message;
  g_last_error_report = report;
  return status;
}

/// Runs `body` translating the library's exceptions to status codes.
template <typename Fn>
cqg_status guarded(Fn&& body) {
  clear_error();
  try {
    return body();
  } catch (const cqg::ParseError& e) {
    return fail(CQG_PARSE_ERROR, e.what());
  } catch (const cqg::ValidationError& e) {
    return fail(CQG_CHECK_FAILED, e.what(), e.report_json());
  } catch (const cqg::PreconditionError& e) {
    return fail(CQG_CHECK_FAILED, e.what());
  } catch (const cqg::InvariantViolation& e) {
    return fail(CQG_CHECK_FAILED, e.what());
  } catch (const cqg::StructuralError& e) {
    return fail(CQG_PARSE_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(CQG_INTERNAL_ERROR, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json command_header(const char* command, const cqg_group* group,
                    const cqg_action* action, const cqg::Tolerances& tol,
                    std::uint64_t seed) {
  json inputs{{"group", group->digest}};
  if (action) inputs["action"] = action->digest;
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"tolerances",
               {{"residual", tol.residual}, {"zero", tol.zero}}},
              {"seed", seed}};
}

/// Command payloads. Each returns its semantic verdict.
bool run_check_hopf(const cqg_group* g, const cqg::Tolerances& tol, json& out) {
  cqg::HopfReport report = cqg::verify_hopf(*g->group);
  out["hopf"] = report;
  return report.pass(tol);
}

bool run_haar(const cqg_group* g, const cqg::Tolerances& tol, json& out) {
  cqg::HaarReport report;
  cqg::Functional h = cqg::haar_state(*g->group, &report, tol);
  json values = json::array();
  for (Eigen::Index i = 0; i < h.coeffs().size(); ++i) {
    values.push_back({h.coeffs()(i).real(), h.coeffs()(i).imag()});
  }
  out["haar"] = report;
  out["haar_values"] = std::move(values);
  cqg::ReducedQuotient red = cqg::reduced_quotient(g->group, tol);
  out["null_ideal_dim"] = red.removed_dimension;
  return report.ok();
}

bool run_is_kac(const cqg_group* g, const cqg::Tolerances& tol,
                std::uint64_t seed, json& out) {
  cqg::KacReport report = cqg::is_kac(g->group, seed, tol);
  out["kac"] = report;
  return true;  // three-way disagreement throws
}

bool run_decompose(const cqg_group* g, const cqg_action* a,
                   const cqg::Tolerances& tol, std::uint64_t seed, json& out) {
  if (a) {
    cqg::ActionSpectrum spectrum =
        cqg::multiplicities(*a->action, seed, tol);
    out["spectrum"] = spectrum;
  } else {
    out["irreps"] = cqg::all_irreps(g->group, seed, tol);
  }
  return true;
}

bool run_check_action(const cqg_action* a, const cqg::Tolerances& tol,
                      json& out) {
  const cqg::ActionReport& report = a->action->report();
  out["action"] = report;
  return report.pass(tol);
}

bool run_orbits(const cqg_action* a, const cqg::Tolerances& tol, json& out) {
  out["orbits"] = cqg::orbit_partition(*a->action, tol);
  return true;
}

bool run_ergodic(const cqg_action* a, const cqg::Tolerances& tol, json& out) {
  cqg::ErgodicityReport report = cqg::ergodicity_report(*a->action, tol);
  out["ergodicity"] = report;
  out["verdict"] = report.ergodic ? "ergodic" : "not ergodic";
  return true;  // criterion disagreement throws
}

bool run_invariant_states(const cqg_action* a, const cqg::Tolerances& tol,
                          json& out) {
  out["invariant_states"] = cqg::invariant_state_polytope(*a->action, tol);
  out["fixed_point_algebra"] = cqg::fixed_point_algebra(*a->action, tol);
  return true;
}

bool run_invariant_subsets(const cqg_action* a, bool enumerate_all,
                           const cqg::Tolerances& tol, json& out) {
  out["invariant_subsets"] =
      cqg::invariant_subsets(*a->action, enumerate_all, tol);
  return true;
}

bool run_supports(const cqg_action* a, const cqg::Tolerances& tol, json& out) {
  json chains = json::array();
  for (int x = 0; x < a->action->points(); ++x) {
    json chain = cqg::support_sets(*a->action, x, tol);
    chain["point"] = x + 1;
    chains.push_back(std::move(chain));
  }
  out["supports"] = std::move(chains);
  out["injectivity"] = cqg::injectivity_and_x_alpha(*a->action, tol);
  return true;
}

bool run_faithful(const cqg_action* a, const cqg::Tolerances& tol, json& out) {
  cqg::FaithfulnessReport report = cqg::faithfulness_check(*a->action, tol);
  out["faithfulness"] = report;
  return true;
}

}  // namespace

extern "C" {

void cqg_options_init(cqg_options* opts) {
  if (!opts) return;
  cqg::Tolerances tol;
  opts->tolerance = tol.residual;
  opts->zero_tolerance = tol.zero;
  opts->seed = 1;
  opts->enumerate_subsets = 0;
}

cqg_status cqg_group_load(const char* path, const cqg_options* opts,
                          cqg_group** out) {
  if (!path || !out) return fail(CQG_PARSE_ERROR, "null argument");
  return guarded([&]() {
    auto group = cqg::load_quantum_group(path, tolerances_of(opts));
    *out = new cqg_group{group, cqg::digest(cqg::quantum_group_to_text(*group))};
    return CQG_OK;
  });
}

cqg_status cqg_group_save(const cqg_group* group, const char* path) {
  if (!group || !path) return fail(CQG_PARSE_ERROR, "null argument");
  return guarded([&]() {
    cqg::save_quantum_group(*group->group, path);
    return CQG_OK;
  });
}

void cqg_group_free(cqg_group* group) { delete group; }

cqg_status cqg_action_load(const cqg_group* group, const char* path,
                           const cqg_options* opts, cqg_action** out) {
  if (!group || !path || !out) return fail(CQG_PARSE_ERROR, "null argument");
  return guarded([&]() {
    cqg::FiniteAction action =
        cqg::load_action(path, group->group, tolerances_of(opts));
    std::string digest = cqg::digest(cqg::action_to_text(action));
    *out = new cqg_action{std::move(action), std::move(digest)};
    return CQG_OK;
  });
}

cqg_status cqg_action_save(const cqg_action* action, const char* path) {
  if (!action || !path) return fail(CQG_PARSE_ERROR, "null argument");
  return guarded([&]() {
    cqg::save_action(*action->action, path);
    return CQG_OK;
  });
}

void cqg_action_free(cqg_action* action) { delete action; }

cqg_status cqg_fixture(const char* name, const cqg_options* opts,
                       cqg_group** group, cqg_action** action) {
  if (!name || !group) return fail(CQG_PARSE_ERROR, "null argument");
  return guarded([&]() -> cqg_status {
    const cqg::Tolerances tol = tolerances_of(opts);
    const std::uint64_t seed = seed_of(opts);
    const std::string id(name);
    cqg::QuantumGroupPtr g;
    std::optional<cqg::FiniteAction> act;

    if (id == "c4") {
      cqg::GroupTable z4 = cqg::cyclic_group(4);
      std::vector<std::vector<int>> translation(4, std::vector<int>(4));
      for (int g_el = 0; g_el < 4; ++g_el) {
        for (int x = 0; x < 4; ++x) translation[g_el][x] = (g_el + x) % 4;
      }
      auto built = cqg::classical_action(z4, translation, tol);
      g = built.group;
      act = std::move(built.action);
    } else if (id == "s3") {
      auto s3 = cqg::permutation_group(3, {{1, 0, 2}, {1, 2, 0}}, 6);
      auto built = cqg::classical_action(s3.table, s3.permutations, tol);
      g = built.group;
      act = std::move(built.action);
    } else if (id == "dual-d4") {
      auto built = cqg::block_reflection_action(4, seed, tol);
      g = built.group;
      act = std::move(built.action);
    } else if (id.rfind("block-reflection-", 0) == 0) {
      const int k = std::atoi(id.c_str() + std::strlen("block-reflection-"));
      auto built = cqg::block_reflection_action(k, seed, tol);
      g = built.group;
      act = std::move(built.action);
    } else if (id.rfind("identity-", 0) == 0) {
      const int n = std::atoi(id.c_str() + std::strlen("identity-"));
      g = cqg::dual_quantum_group(cqg::dihedral_group(4), seed, tol).group;
      act = cqg::identity_action(g, n, tol);
    } else {
      return fail(CQG_PARSE_ERROR, "unknown fixture name: " + id);
    }

    *group = new cqg_group{g, cqg::digest(cqg::quantum_group_to_text(*g))};
    if (action) {
      *action = nullptr;
      if (act) {
        std::string digest = cqg::digest(cqg::action_to_text(*act));
        *action = new cqg_action{std::move(act), std::move(digest)};
      }
    }
    return CQG_OK;
  });
}

cqg_status cqg_run(const cqg_group* group, const cqg_action* action,
                   const char* command, const cqg_options* opts,
                   char** report) {
  if (!group || !command || !report) {
    return fail(CQG_PARSE_ERROR, "null argument");
  }
  return guarded([&]() -> cqg_status {
    const cqg::Tolerances tol = tolerances_of(opts);
    const std::uint64_t seed = seed_of(opts);
    const bool enumerate = opts && opts->enumerate_subsets != 0;
    const std::string cmd(command);

    json out = command_header(command, group, action, tol, seed);
    bool pass = true;

    auto need_action = [&]() {
      if (!action) throw cqg::ParseError(cmd + " needs an action file");
    };

    if (cmd == "check-hopf") {
      pass = run_check_hopf(group, tol, out);
    } else if (cmd == "haar") {
      pass = run_haar(group, tol, out);
    } else if (cmd == "is-kac") {
      pass = run_is_kac(group, tol, seed, out);
    } else if (cmd == "decompose") {
      pass = run_decompose(group, action, tol, seed, out);
    } else if (cmd == "check-action") {
      need_action();
      pass = run_check_action(action, tol, out);
    } else if (cmd == "orbits") {
      need_action();
      pass = run_orbits(action, tol, out);
    } else if (cmd == "ergodic") {
      need_action();
      pass = run_ergodic(action, tol, out);
    } else if (cmd == "invariant-states") {
      need_action();
      pass = run_invariant_states(action, tol, out);
    } else if (cmd == "invariant-subsets") {
      need_action();
      pass = run_invariant_subsets(action, enumerate, tol, out);
    } else if (cmd == "supports") {
      need_action();
      pass = run_supports(action, tol, out);
    } else if (cmd == "faithful") {
      need_action();
      pass = run_faithful(action, tol, out);
    } else if (cmd == "report") {
      pass = run_check_hopf(group, tol, out) && pass;
      pass = run_haar(group, tol, out) && pass;
      pass = run_is_kac(group, tol, seed, out) && pass;
      if (action) {
        pass = run_check_action(action, tol, out) && pass;
        pass = run_orbits(action, tol, out) && pass;
        pass = run_ergodic(action, tol, out) && pass;
        pass = run_invariant_states(action, tol, out) && pass;
        pass = run_invariant_subsets(action, enumerate, tol, out) && pass;
        pass = run_supports(action, tol, out) && pass;
        pass = run_faithful(action, tol, out) && pass;
        pass = run_decompose(group, action, tol, seed, out) && pass;
      } else {
        pass = run_decompose(group, nullptr, tol, seed, out) && pass;
      }
    } else {
      return fail(CQG_PARSE_ERROR, "unknown command: " + cmd);
    }

    out["pass"] = pass;
    *report = dup_string(out.dump(1));
    if (!pass) {
      return fail(CQG_CHECK_FAILED, "semantic check failed", out.dump(1));
    }
    return CQG_OK;
  });
}

void cqg_string_free(char* text) { delete[] text; }

const char* cqg_last_error(void) { return g_last_error.c_str(); }

const char* cqg_last_error_report(void) { return g_last_error_report.c_str(); }

const char* cqg_version(void) { return "0.1.0"; }

}  // extern "C"
