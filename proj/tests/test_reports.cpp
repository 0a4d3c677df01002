#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "hbundle/commands.hpp"
#include "hbundle/report.hpp"
#include "hbundle/suite.hpp"

using namespace hbundle;

TEST(Reports, DumpUsesRoundTripPrecision) {
  Json j = Json::object();
  j["x"] = 0.1;
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  j["list"] = {1, 2.5};
  const std::string s = dump(j);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"nan\": null"), std::string::npos);
  EXPECT_EQ(std::strtod(s.substr(s.find("0.1")).c_str(), nullptr), 0.1);
  EXPECT_EQ(dump(j), dump(Json::parse(dump(j))));
}

TEST(Reports, SummaryCountsVerdicts) {
  Report r;
  r.command = "test";
  r.add({"b", "second", {}, {}, Verdict::Pass});
  r.add({"a", "first", {}, {}, Verdict::Fail});
  EXPECT_FALSE(r.passed());
  const Json j = r.to_json();
  EXPECT_EQ(j["checks"][0]["name"], "a");
  EXPECT_EQ(j["summary"]["pass"], 1);
  EXPECT_EQ(j["summary"]["fail"], 1);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(below(std::nan(""), 1.0), Verdict::Fail);
  EXPECT_EQ(below(0.5, 1.0), Verdict::Pass);
}

TEST(Reports, CsvRejectsRaggedRows) {
  CsvTable t({"a", "b"});
  t.row({"1", fmt_double(0.25)});
  EXPECT_EQ(t.str(), "a,b\n1,0.25\n");
  EXPECT_THROW(t.row({"1"}), std::exception);
}

TEST(Reports, ConfigRoundTrip) {
  SuiteConfig c;
  c.chain_lambda = -0.9;
  c.diff_seeds = {3, 5};
  const SuiteConfig back = suite_config_from_json(to_json(c));
  EXPECT_EQ(dump(to_json(back)), dump(to_json(c)));
  EXPECT_THROW(suite_config_from_json(Json::parse(R"({"chain_lambda": "x"})")), Error);
}

TEST(Reports, ParseComplexList) {
  const auto v = parse_complex_list("1,1+2i,-0.5i,2.5e-1-3i");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], cplx(1.0, 0.0));
  EXPECT_EQ(v[1], cplx(1.0, 2.0));
  EXPECT_EQ(v[2], cplx(0.0, -0.5));
  EXPECT_EQ(v[3], cplx(0.25, -3.0));
  EXPECT_THROW(parse_complex_list("1,abc"), Error);
  EXPECT_EQ(parse_direction("down"), Direction::Down);
}

TEST(Reports, ExitCodes) {
  EXPECT_EQ(exit_code_for(Errc::PreconditionViolated), 2);
  EXPECT_EQ(exit_code_for(Errc::InadmissibleChain), 2);
  EXPECT_EQ(exit_code_for(Errc::NoSolution), 1);
  EXPECT_EQ(exit_code_for(Errc::NumericBreakdown), 3);
}
