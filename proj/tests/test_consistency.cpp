#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "cyclonum/consistency.hpp"
#include "cyclonum/report.hpp"
#include "support.hpp"

using namespace cyclonum;

TEST(Methods, ParseNames) {
  EXPECT_EQ(parse_methods("all").size(), kAllMethods.size());
  EXPECT_EQ(parse_methods("oracle"), (std::vector<Method>{Method::OracleCoset, Method::OracleNorm}));
  for (auto m : kAllMethods) EXPECT_EQ(parse_methods(to_string(m)), std::vector<Method>{m});
  EXPECT_THROW(parse_methods("fourier"), Error);
}

TEST(Methods, Applicability) {
  const Caps caps;
  const auto q2 = ExtensionContext::build(2, 1, 4);
  EXPECT_EQ(applicability(q2, Method::Digraph, caps).state, Applicability::Inapplicable);
  EXPECT_EQ(applicability(q2, Method::Ell, caps).state, Applicability::Inapplicable);
  EXPECT_TRUE(applicability(q2, Method::Closed, caps).applicable());
  const auto big = ExtensionContext::build(7, 1, 4);
  EXPECT_EQ(applicability(big, Method::Rank, caps).state, Applicability::Applicable);
  EXPECT_EQ(applicability(big, Method::Rank, Caps{kDefaultFieldCap, 399, kDefaultPolyCap, kDefaultPrecisionBudget}).state,
            Applicability::CapExceeded);
  EXPECT_EQ(applicability(big, Method::Closed, caps).state, Applicability::Inapplicable);
  const auto r5 = ExtensionContext::build(5, 1, 5);
  EXPECT_TRUE(applicability(r5, Method::Ell, caps).applicable());
  EXPECT_EQ(applicability(r5, Method::Ell, Caps{kDefaultFieldCap, kDefaultRankCap, 100, kDefaultPrecisionBudget}).state,
            Applicability::CapExceeded);
  EXPECT_EQ(applicability(r5, Method::Characters, Caps{kDefaultFieldCap, kDefaultRankCap, kDefaultPolyCap, 10.0}).state,
            Applicability::CapExceeded);
}

TEST(MethodRunner, EveryApplicableMethodMatchesBruteForce) {
  for (auto [p, n, r] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {3, 1, 3}, {2, 2, 3}, {5, 1, 2}, {2, 1, 5}, {3, 1, 4}}) {
    const auto ctx = ExtensionContext::build(p, n, r);
    const auto expected =
        reference::brute_table(reference::NaiveField{ctx.p(), ctx.modulus()}, ctx.omega().coeffs, ctx.q());
    MethodRunner runner(ctx, Caps{});
    for (auto m : kAllMethods) {
      if (!applicability(ctx, m, runner.caps()).applicable()) {
        EXPECT_THROW(runner.compute(m, {0, 0}), Error);
        continue;
      }
      for (std::uint64_t a = 0; a + 1 < ctx.q(); ++a)
        for (std::uint64_t b = 0; b + 1 < ctx.q(); ++b)
          EXPECT_EQ(runner.compute(m, {a, b}), expected[a][b]) << to_string(m);
    }
  }
}

TEST(Config, DefaultsGrid) {
  const auto c = SweepConfig::defaults();
  EXPECT_EQ(c.triples.size(), 23u);
  EXPECT_EQ(c.methods.size(), kAllMethods.size());
  EXPECT_EQ(c.triples.back(), (Triple{5, 1, 5, std::nullopt}));
}

TEST(Config, Parse) {
  const auto c = parse_config(
      "# comment\n"
      "methods = rank, chars,rank\n"
      "triple = 3,1,3   # trailing\n"
      "triple = 5,1,6,2\n"
      "rank_cap = 50\n"
      "poly_cap = 10\n"
      "\n");
  EXPECT_EQ(c.methods, (std::vector<Method>{Method::Rank, Method::Characters}));
  ASSERT_EQ(c.triples.size(), 2u);
  EXPECT_EQ(c.triples[1], (Triple{5, 1, 6, 2}));
  EXPECT_EQ(c.caps.rank, 50u);
  EXPECT_EQ(c.caps.poly, 10u);
  EXPECT_EQ(c.caps.enumeration, kDefaultFieldCap);
}

TEST(Config, EmptyMeansDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.triples, SweepConfig::defaults().triples);
  EXPECT_TRUE(parse_config("methods = none\n").methods.empty());
}

TEST(Config, Malformed) {
  for (const char* text : {"triple = 5,1\n", "triple = 4,1,2\n", "triple = 3,1,1\n", "colour = red\n",
                           "rank_cap = lots\n", "rank_cap = 0\n", "methods = rank, fourier\n", "just words\n",
                           "triple = 3,1,2,x\n"}) {
    try {
      parse_config(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument) << text;
    }
  }
}

TEST(Sweep, SmallGridIsConsistent) {
  SweepConfig config = parse_config("triple = 3,1,3\ntriple = 2,2,2\ntriple = 5,1,3\ntriple = 2,1,4\n");
  const auto report = run_sweep(config);
  ASSERT_EQ(report.contexts.size(), 4u);
  EXPECT_TRUE(report.ok()) << report.first_counterexample().value_or("");
  const auto& c = report.contexts[2];
  EXPECT_EQ(c.q, 5u);
  EXPECT_EQ(c.cells.size(), 16u);
  EXPECT_EQ(c.skipped.size(), 1u);  // closed
  for (const auto& cell : c.cells) EXPECT_EQ(cell.outcomes.size(), c.ran.size());
  std::set<std::string> modules;
  for (const auto& s : c.properties) modules.insert(s.module);
  EXPECT_EQ(modules, (std::set<std::string>{"ff_core", "oracle", "char_method", "digraph", "prime_ell"}));
}

TEST(Sweep, EmptyMethodList) {
  const auto report = run_sweep(parse_config("methods = none\ntriple = 3,1,2\n"));
  EXPECT_TRUE(report.contexts.empty());
  EXPECT_TRUE(report.ok());
}

TEST(Sweep, BuildErrorIsACounterexample) {
  const auto report = run_sweep(parse_config("enumeration_cap = 10\ntriple = 3,1,3\n"));
  ASSERT_EQ(report.contexts.size(), 1u);
  EXPECT_FALSE(report.ok());
  const auto ce = report.first_counterexample();
  ASSERT_TRUE(ce.has_value());
  EXPECT_NE(ce->find("SizeCapExceeded"), std::string::npos);
}

TEST(Sweep, CapExceededMethodsAreSkippedNotFailed) {
  const auto report = run_sweep(parse_config("rank_cap = 5\ntriple = 3,1,3\nmethods = rank, oracle\n"));
  ASSERT_EQ(report.contexts.size(), 1u);
  EXPECT_TRUE(report.ok());
  ASSERT_EQ(report.contexts[0].skipped.size(), 1u);
  EXPECT_EQ(report.contexts[0].skipped[0].status.state, Applicability::CapExceeded);
}

TEST(Sweep, DisagreementIsReported) {
  auto report = run_sweep(parse_config("triple = 3,1,3\nmethods = oracle\n"));
  ASSERT_TRUE(report.ok());
  auto& cell = report.contexts[0].cells[1];
  cell.outcomes[0].value = 99;
  cell.agreement = false;
  EXPECT_FALSE(report.ok());
  EXPECT_NE(report.first_counterexample()->find("cell (0,1)"), std::string::npos);
}

TEST(Report, JsonShapeAndDeterminism) {
  const auto config = parse_config("triple = 3,1,2\ntriple = 2,2,2\n");
  const auto first = to_json(run_sweep(config)).dump(2);
  const auto second = to_json(run_sweep(config)).dump(2);
  EXPECT_EQ(first, second);
  const auto j = Json::parse(first);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["contexts"].size(), 2u);
  const auto& c = j["contexts"][0];
  EXPECT_EQ(c["q"], 3);
  EXPECT_EQ(c["cells"].size(), 4u);
  EXPECT_EQ(c["cells"][0]["reference"], 1);
  EXPECT_EQ(c["cells"][0]["values"]["rank"], 1);
  EXPECT_EQ(c["cells"][0]["relation"], "below");
  EXPECT_FALSE(c["properties"].empty());
}

TEST(Report, TableCsv) {
  EXPECT_EQ(table_csv({{1, 2}, {2, 2}}), "b=0,b=1\n1,2\n2,2\n");
  EXPECT_EQ(round_significant(0.1 + 0.2), 0.3);
}
