#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catsite/workspace.hpp"

namespace catsite {

/// Exit statuses shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  /// Overrides the task's main size bound: the fibre size for pi1 and
  /// pi1-compare, the hom-set bound for kan-verify, the largest length for witt,
  /// and the sieve bound for gen-topology.
  std::optional<std::size_t> bound;
  /// Shuffle seed for order-independence checks.
  std::uint64_t seed = 0;
};

struct CommandResult {
  int exit_code = kExitOk;
  Json report;
};

const std::vector<std::string>& run_tasks();
const std::vector<std::string>& replicate_cases();

/// Loads the workspace and reports every violation; exit 0 iff there are none.
CommandResult cmd_validate(const std::string& path);
/// Runs one task over every applicable entity of a valid workspace.
CommandResult cmd_run(const std::string& path, const std::string& task, const RunOptions& options = {});
CommandResult run_task(const Workspace& ws, const std::string& task, const RunOptions& options = {});
/// Runs the finite replica of a separation example; exit 0 iff it separates.
/// An empty path selects the shipped fixture for the case.
CommandResult cmd_replicate(const std::string& name, const std::string& path = {}, const RunOptions& options = {});
CommandResult replicate(const Workspace& ws, const std::string& name);

/// Path of the shipped fixture for a replication case.
std::string replicate_fixture(const std::string& name);

}  // namespace catsite
