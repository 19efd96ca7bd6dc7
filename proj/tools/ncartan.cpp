// ncartan: cuspidal class groups of non-split Cartan modular curves.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ncartan/app/commands.hpp"
#include "ncartan/errors.hpp"

namespace app = ncartan::app;

int main(int argc, char** argv) {
  CLI::App cli{"Order and structure of the cuspidal divisor class group of X+_ns(p^k)"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", NCARTAN_VERSION);

  app::Limits limits;
  bool force = false;
  unsigned long long rho_budget = 0;
  cli.add_flag("--force", force, "Lift the p^k <= 10^4 and pmax <= 101 size guards");
  cli.add_option("--rho-budget", rho_budget, "Pollard rho iterations per composite (overrides NCARTAN_RHO_BUDGET)");

  std::int64_t p = 0;
  int k = 1;

  auto* order = cli.add_subcommand("order", "Order of the class group");
  app::OrderFlags order_flags;
  order->add_option("-p,--prime", p, "Prime p >= 5")->required();
  order->add_option("-k", k, "Exponent k >= 1")->capture_default_str();
  order->add_flag("--factor", order_flags.factor, "Print the factored order");
  order->add_flag("--json", order_flags.json, "Emit one JSON object");
  order->add_flag("--structure", order_flags.structure, "Also print the invariant factors");

  auto* table = cli.add_subcommand("table", "Orders for every prime 5 <= p <= pmax");
  std::int64_t pmax = 101;
  app::TableFlags table_flags;
  table->add_option("--pmax", pmax, "Largest prime")->capture_default_str();
  table->add_flag("--json", table_flags.json, "Emit one JSON object per prime");
  table->add_flag("--parallel", table_flags.parallel, "Distribute primes across threads");
  table->add_option("--threads", table_flags.threads, "Worker count for --parallel (default: all cores)");

  auto* verify = cli.add_subcommand("verify", "Run the invariant suites; exit 1 on any failure");
  app::VerifyFlags verify_flags;
  verify->add_option("-p,--prime", p, "Prime p >= 5")->required();
  verify->add_option("-k", k, "Exponent k >= 1")->capture_default_str();
  verify->add_flag("--analytic", verify_flags.analytic, "Klein form, Siegel function and sign checks");
  verify->add_flag("--structure", verify_flags.structure, "Smith normal form and generator independence");
  verify->add_flag("--eps-independence", verify_flags.eps_independence, "Compare theta across valid eps");

  auto* cross = cli.add_subcommand("crosscheck", "gcd harness on point-count data");
  std::string path;
  std::int64_t cross_p = 0;
  bool expect_published = false;
  cross->add_option("file", path, "CSV file (default: bundled data)");
  cross->add_option("-p,--prime", cross_p, "Restrict to one prime");
  cross->add_flag("--expect-published", expect_published, "Check the published ratios on this file too");

  auto* genus = cli.add_subcommand("genus", "Genus and cusp count of X+_ns(p)");
  genus->add_option("-p,--prime", p, "Prime p >= 5")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kOk : app::kInputError;
  }

  const app::Streams io{std::cout, std::cerr};
  const int setup = app::guarded(io, [&] {
    limits.force = force;
    limits.budget = app::budget_from_env();
    if (rho_budget > 0) limits.budget.rho_iterations = rho_budget;
    return app::kOk;
  });
  if (setup != app::kOk) return setup;

  if (*order) return app::cmd_order(p, k, order_flags, limits, io);
  if (*table) return app::cmd_table(pmax, table_flags, limits, io);
  if (*verify) return app::cmd_verify(p, k, verify_flags, limits, io);
  if (*cross) {
    return app::cmd_crosscheck(path.empty() ? std::nullopt : std::optional<std::string>(path),
                               cross_p ? std::optional<std::int64_t>(cross_p) : std::nullopt, expect_published, io);
  }
  if (*genus) return app::cmd_genus(p, io);
  return app::kInputError;
}
