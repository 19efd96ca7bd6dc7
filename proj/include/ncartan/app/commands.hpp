#pragma once

// CLI subcommands as plain functions. Each returns the process exit code:
// 0 success, 1 verification failure, 2 usage or input error, 3 internal
// invariant violation.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "ncartan/arith.hpp"

namespace ncartan::app {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kInternalError = 3 };

struct Limits {
  std::int64_t max_modulus = 10'000;  // p^k
  std::int64_t max_pmax = 101;
  bool force = false;
  FactorBudget budget{};
};

/// Reads NCARTAN_RHO_BUDGET (iterations per composite) when set.
FactorBudget budget_from_env();

/// The crosscheck CSV shipped with the sources.
std::string bundled_fixture_path();

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// Maps InputError to 2 and InvariantViolation (or any other exception) to 3.
int guarded(const Streams& io, const std::function<int()>& body);

struct OrderFlags {
  bool factor = false;
  bool json = false;
  bool structure = false;
};
int cmd_order(std::int64_t p, int k, const OrderFlags& flags, const Limits& limits, const Streams& io);

struct TableFlags {
  bool json = false;
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};
int cmd_table(std::int64_t pmax, const TableFlags& flags, const Limits& limits, const Streams& io);

struct VerifyFlags {
  bool analytic = false;
  bool structure = false;
  bool eps_independence = false;
};
int cmd_verify(std::int64_t p, int k, const VerifyFlags& flags, const Limits& limits, const Streams& io);

/// With no path, runs the bundled fixture and also checks the published
/// ratios; `expect_published` turns those checks on for other files.
int cmd_crosscheck(const std::optional<std::string>& path, std::optional<std::int64_t> p, bool expect_published,
                   const Streams& io);

int cmd_genus(std::int64_t p, const Streams& io);

}  // namespace ncartan::app
