#include <sstream>

#include <gtest/gtest.h>

#include "ncartan/app/commands.hpp"
#include "ncartan/app/output.hpp"
#include "ncartan/errors.hpp"

using namespace ncartan;
using namespace ncartan::app;

namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Captured run(F&& f) {
  std::ostringstream out, err;
  const Streams io{out, err};
  const int code = f(io);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Json, RoundTripIsLossless) {
  ClassGroupOptions opts;
  opts.structure = true;
  OutputRecord rec{compute_class_group(CartanContext::create(17, 1), opts), "1.2.3", 12.5};
  const auto j = to_json(rec);
  EXPECT_EQ(j.at("order"), "235824");
  EXPECT_EQ(j.at("factored"), "2^4 * 3 * 17^3");
  EXPECT_EQ(j.at("genus"), 6);
  EXPECT_TRUE(j.at("invariant_factors").is_array());
  EXPECT_EQ(record_from_json(nlohmann::json::parse(j.dump())), rec);

  OutputRecord big{compute_class_group(CartanContext::create(59, 1)), "v", 0};
  const auto jb = to_json(big);
  EXPECT_TRUE(jb.at("invariant_factors").is_null());
  EXPECT_EQ(jb.at("factorization").back().at("certainty"), "probable");
  EXPECT_EQ(record_from_json(nlohmann::json::parse(jb.dump())), big);
}

TEST(Json, RejectsMalformedRecords) {
  OutputRecord rec{compute_class_group(CartanContext::create(5, 1)), "v", 1};
  auto j = to_json(rec);
  EXPECT_THROW(record_from_json(nlohmann::json::array()), InputError);
  auto missing = j;
  missing.erase("order");
  EXPECT_THROW(record_from_json(missing), InputError);
  auto mistyped = j;
  mistyped["p"] = "five";
  EXPECT_THROW(record_from_json(mistyped), InputError);
}

TEST(Json, StructureFormatting) {
  EXPECT_EQ(format_structure({}), "trivial");
  EXPECT_EQ(format_structure({13, 91}), "Z/13 x Z/91");
}

TEST(Commands, OrderOutputs) {
  const Limits limits;
  auto plain = run([&](const Streams& io) { return cmd_order(13, 1, {}, limits, io); });
  EXPECT_EQ(plain.code, kOk);
  EXPECT_EQ(plain.out, "1183\n");
  auto factored = run([&](const Streams& io) { return cmd_order(13, 1, {.factor = true}, limits, io); });
  EXPECT_EQ(factored.out, "7 * 13^2\n");
  auto structured = run([&](const Streams& io) { return cmd_order(13, 1, {.structure = true}, limits, io); });
  EXPECT_EQ(structured.out, "1183\nstructure: Z/13 x Z/91\n");
  auto json = run([&](const Streams& io) { return cmd_order(11, 1, {.json = true}, limits, io); });
  EXPECT_EQ(nlohmann::json::parse(json.out).at("order"), "11");
}

TEST(Commands, InputErrorsExitTwo) {
  const Limits limits;
  auto bad_p = run([&](const Streams& io) { return cmd_order(4, 1, {}, limits, io); });
  EXPECT_EQ(bad_p.code, kInputError);
  EXPECT_NE(bad_p.err.find("p must be a prime"), std::string::npos);
  auto guard = run([&](const Streams& io) { return cmd_order(101, 2, {}, limits, io); });
  EXPECT_EQ(guard.code, kInputError);
  auto pmax = run([&](const Streams& io) { return cmd_table(103, {}, limits, io); });
  EXPECT_EQ(pmax.code, kInputError);
  auto genus = run([&](const Streams& io) { return cmd_genus(9, io); });
  EXPECT_EQ(genus.code, kInputError);
}

TEST(Commands, GuardedMapsExceptions) {
  const auto ok = run([](const Streams& io) { return guarded(io, [] { return kOk; }); });
  EXPECT_EQ(ok.code, kOk);
  const auto input = run([](const Streams& io) { return guarded(io, []() -> int { throw InputError("x"); }); });
  EXPECT_EQ(input.code, kInputError);
  const auto inv = run([](const Streams& io) { return guarded(io, []() -> int { throw InvariantViolation("y"); }); });
  EXPECT_EQ(inv.code, kInternalError);
  EXPECT_NE(inv.err.find("internal error"), std::string::npos);
}

TEST(Commands, ParallelTableMatchesSequential) {
  const Limits limits;
  auto seq = run([&](const Streams& io) { return cmd_table(53, {}, limits, io); });
  auto par = run([&](const Streams& io) { return cmd_table(53, {.parallel = true, .threads = 4}, limits, io); });
  EXPECT_EQ(seq.code, kOk);
  EXPECT_EQ(par.code, kOk);
  EXPECT_EQ(seq.out, par.out);
  EXPECT_EQ(seq.out.rfind("p | order | factorization\n5 | 1 | 1\n7 | 1 | 1\n11 | 11 | 11\n", 0), 0u);
}

TEST(Commands, VerifyAndGenus) {
  const Limits limits;
  auto v = run([&](const Streams& io) { return cmd_verify(7, 1, {.analytic = true, .structure = true}, limits, io); });
  EXPECT_EQ(v.code, kOk) << v.out;
  EXPECT_EQ(v.out.find("FAIL"), std::string::npos);
  auto g = run([&](const Streams& io) { return cmd_genus(11, io); });
  EXPECT_EQ(g.out, "genus 1\ncusps 5\n");
}

TEST(Commands, CrosscheckBundledAndMissing) {
  auto ok = run([](const Streams& io) { return cmd_crosscheck(std::nullopt, std::nullopt, false, io); });
  EXPECT_EQ(ok.code, kOk) << ok.out;
  auto missing = run([](const Streams& io) { return cmd_crosscheck("/nonexistent.csv", std::nullopt, false, io); });
  EXPECT_EQ(missing.code, kInputError);
  auto absent = run([](const Streams& io) { return cmd_crosscheck(std::nullopt, 37, false, io); });
  EXPECT_EQ(absent.code, kInputError);
}

TEST(Env, RhoBudgetFromEnvironment) {
  setenv("NCARTAN_RHO_BUDGET", "12345", 1);
  EXPECT_EQ(budget_from_env().rho_iterations, 12345u);
  setenv("NCARTAN_RHO_BUDGET", "abc", 1);
  EXPECT_THROW(budget_from_env(), InputError);
  unsetenv("NCARTAN_RHO_BUDGET");
  EXPECT_EQ(budget_from_env().rho_iterations, FactorBudget{}.rho_iterations);
}
