// Batch front end: loads .cqg/.act fixtures, runs the named verification or
// decision procedure through the shared-library C API, and prints the report
// as text or JSON. Exit codes: 0 all checks pass, 1 a semantic check failed,
// 2 input/parse error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqg.h"

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string group_path;
  std::string action_path;
  cqg_options options;
  std::string format = "text";
};

bool scalar_like(const json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& item : j) {
    if (item.is_object() || (item.is_array() && !scalar_like(item))) {
      return false;
    }
  }
  return true;
}

void print_text(const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (scalar_like(value)) {
        std::cout << prefix << key << ": " << value.dump() << "\n";
      } else {
        std::cout << prefix << key << ":\n";
        print_text(value, prefix + "  ");
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (scalar_like(j[i])) {
        std::cout << prefix << "- " << j[i].dump() << "\n";
      } else {
        std::cout << prefix << "- \n";
        print_text(j[i], prefix + "  ");
      }
    }
  } else {
    std::cout << prefix << j.dump() << "\n";
  }
}

void emit(const std::string& text, const std::string& format) {
  if (text.empty()) return;
  if (format == "json") {
    std::cout << text << "\n";
    return;
  }
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    std::cout << text << "\n";
  } else {
    print_text(parsed, "");
  }
}

int status_to_exit(cqg_status status) {
  switch (status) {
    case CQG_OK:
      return 0;
    case CQG_PARSE_ERROR:
      return 2;
    default:
      return 1;
  }
}

int fail_with_error(cqg_status status, const std::string& format) {
  std::cerr << "error: " << cqg_last_error() << "\n";
  const std::string report = cqg_last_error_report();
  if (!report.empty()) emit(report, format);
  return status_to_exit(status);
}

int run_command(const std::string& command, const CommonArgs& args) {
  cqg_group* group = nullptr;
  cqg_action* action = nullptr;

  cqg_status status = cqg_group_load(args.group_path.c_str(), &args.options,
                                     &group);
  if (status != CQG_OK) return fail_with_error(status, args.format);

  if (!args.action_path.empty()) {
    status = cqg_action_load(group, args.action_path.c_str(), &args.options,
                             &action);
    if (status != CQG_OK) {
      cqg_group_free(group);
      return fail_with_error(status, args.format);
    }
  }

  char* report = nullptr;
  status = cqg_run(group, action, command.c_str(), &args.options, &report);
  int exit_code = status_to_exit(status);
  if (report) {
    emit(report, args.format);
    cqg_string_free(report);
  } else if (status != CQG_OK) {
    exit_code = fail_with_error(status, args.format);
  }
  cqg_action_free(action);
  cqg_group_free(group);
  return exit_code;
}

int generate_fixtures(const std::string& dir, const cqg_options& options) {
  struct Entry {
    const char* fixture;
    const char* group_file;
    const char* action_file;
  };
  const std::vector<Entry> entries = {
      {"c4", "fix_c4.cqg", "fix_c4.act"},
      {"dual-d4", "dual_d4.cqg", "fix_d.act"},
      {"s3", "s3.cqg", "s3_natural.act"},
  };
  for (const auto& entry : entries) {
    cqg_group* group = nullptr;
    cqg_action* action = nullptr;
    cqg_status status = cqg_fixture(entry.fixture, &options, &group, &action);
    if (status != CQG_OK) return fail_with_error(status, "text");
    status = cqg_group_save(group, (dir + "/" + entry.group_file).c_str());
    if (status == CQG_OK && action) {
      status = cqg_action_save(action, (dir + "/" + entry.action_file).c_str());
    }
    cqg_action_free(action);
    cqg_group_free(group);
    if (status != CQG_OK) return fail_with_error(status, "text");
    std::cout << "wrote " << dir << "/" << entry.group_file;
    if (entry.action_file) std::cout << " and " << dir << "/" << entry.action_file;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quantum group toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  cqg_options_init(&args.options);
  bool enumerate_subsets = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check-hopf", "verify the Hopf *-algebra axioms"},
      {"haar", "solve for the Haar state and the null ideal"},
      {"is-kac", "evaluate the three Kac criteria"},
      {"decompose", "decompose into irreducible corepresentations"},
      {"check-action", "verify the magic-unitary action laws"},
      {"orbits", "orbit partition with Haar cross-check"},
      {"ergodic", "four-way ergodicity criteria"},
      {"invariant-states", "invariant-state polytope and fixed points"},
      {"invariant-subsets", "invariant subsets / orbit lattice"},
      {"supports", "support chains supp ⊆ M ⊆ Orb per point"},
      {"faithful", "faithfulness via the generated subalgebra"},
      {"report", "run every applicable check"},
  };

  std::string chosen;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("group", args.group_path, "quantum group file (.cqg)")
        ->required();
    sub->add_option("action", args.action_path, "action file (.act)");
    sub->add_option("--tolerance", args.options.tolerance,
                    "residual tolerance");
    sub->add_option("--zero-tol", args.options.zero_tolerance,
                    "semantic-zero tolerance");
    sub->add_option("--seed", args.options.seed, "decomposition seed");
    sub->add_option("--format", args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--enumerate-subsets", enumerate_subsets,
                  "scan all 2^n subsets (n ≤ 20)");
    sub->callback([&chosen, name = name]() { chosen = name; });
  }

  std::string fixture_dir = ".";
  CLI::App* gen = app.add_subcommand("gen-fixtures",
                                     "write the built-in example files");
  gen->add_option("dir", fixture_dir, "output directory");
  gen->add_option("--seed", args.options.seed, "decomposition seed");
  gen->callback([&chosen]() { chosen = "gen-fixtures"; });

  CLI11_PARSE(app, argc, argv);

  args.options.enumerate_subsets = enumerate_subsets ? 1 : 0;
  if (chosen == "gen-fixtures") {
    return generate_fixtures(fixture_dir, args.options);
  }
  return run_command(chosen, args);
}
