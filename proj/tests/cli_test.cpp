#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccloop/cli.hpp"
#include "ccloop/fixtures.hpp"
#include "ccloop/identities.hpp"
#include "ccloop/structure.hpp"

using namespace ccloop;
namespace fx = ccloop::fixtures;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(CCLOOP_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(Cli, AnalyzeT16) {
  const auto r = run({"analyze", data("t16.tbl")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, "order: 16"));
  EXPECT_TRUE(has_line(r.out, "nucleus: {0,1,2,3}"));
  EXPECT_TRUE(has_line(r.out, "center: {0,1,2,3}"));
  EXPECT_TRUE(has_line(r.out, "is_cc: yes"));
  EXPECT_TRUE(has_line(r.out, "is_pa: yes"));
  EXPECT_TRUE(has_line(r.out, "has_wip: yes"));
  EXPECT_TRUE(has_line(r.out, "is_diassociative: no"));
  EXPECT_TRUE(has_line(r.out, "nucleus_index: 4"));
  EXPECT_NE(r.out.find("witness_is_diassociative: "), std::string::npos);
  // keys are sorted
  std::istringstream in(r.out);
  std::string prev, line;
  while (std::getline(in, line)) {
    const auto key = line.substr(0, line.find(':'));
    EXPECT_LT(prev, key);
    prev = key;
  }
}

TEST(Cli, AnalyzeT27) {
  const auto r = run({"analyze", data("t27.tbl")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(has_line(r.out, "nucleus: {0,1,2}"));
  EXPECT_TRUE(has_line(r.out, "exponent: 3"));
  EXPECT_TRUE(has_line(r.out, "has_wip: no"));
}

TEST(Cli, CheckIdentity) {
  const auto ok = run({"check", data("t27.tbl"), "x*(y*z) = ((x*y)/x)*(x*z)"});
  EXPECT_EQ(ok.code, cli::kExitOk);
  EXPECT_TRUE(has_line(ok.out, "holds: yes"));
  const auto bad = run({"check", data("t27.tbl"), "x*(y*z) = (x*y)*z"});
  EXPECT_EQ(bad.code, cli::kExitFails);
  EXPECT_TRUE(has_line(bad.out, "holds: no"));
  EXPECT_NE(bad.out.find("counterexample: x="), std::string::npos);
  EXPECT_EQ(run({"check", data("t27.tbl"), "x*(y"}).code, cli::kExitUsage);
}

TEST(Cli, Verify) {
  const auto ok = run({"verify", data("t16.tbl"), "--require", "cc,pa,wip", "--forbid", "group,extra"});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;
  EXPECT_TRUE(has_line(ok.out, "require_cc: holds"));
  const auto bad = run({"verify", data("t16.tbl"), "--require", "diassociative"});
  EXPECT_EQ(bad.code, cli::kExitFails);
  EXPECT_NE(bad.out.find("require_diassociative: fails ("), std::string::npos);
  EXPECT_EQ(run({"verify", data("t16.tbl"), "--require", "shiny"}).code, cli::kExitUsage);
}

TEST(Cli, Subloop) {
  const auto r = run({"subloop", data("t16.tbl"), "--generators", "4,8"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(has_line(r.out, "order: 16"));
  EXPECT_TRUE(has_line(r.out, "is_group: no"));
  const auto n = run({"subloop", data("t27.tbl"), "--generators", "1"});
  EXPECT_TRUE(has_line(n.out, "members: {0,1,2}"));
  EXPECT_TRUE(has_line(n.out, "is_normal: yes"));
  EXPECT_EQ(run({"subloop", data("t16.tbl"), "--generators", "99"}).code, cli::kExitUsage);
}

TEST(Cli, QuotientIsBooleanGroup) {
  const auto r = run({"quotient", data("t16.tbl"), "--subloop", "0,1,2,3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto q = parse_tbl(r.out);
  EXPECT_EQ(q.order(), 4);
  EXPECT_TRUE(classify(q).get(Property::BooleanGroup));
  const std::string path = testing::TempDir() + "/ccloop_quot.tbl";
  EXPECT_EQ(run({"quotient", data("t16.tbl"), "--subloop", "0,1,2,3", "-o", path}).code, cli::kExitOk);
  EXPECT_EQ(load_tbl(path), q);
  std::remove(path.c_str());
}

TEST(Cli, QuotientRejectsNonNormal) {
  const auto s3 = temp_file("ccloop_s3.tbl", write_tbl(fx::symmetric(3)));
  std::string two;
  for (const auto& s : all_subloops(fx::symmetric(3)))
    if (s.members.size() == 2) two = "0," + std::to_string(s.members.members()[1]);
  EXPECT_EQ(run({"quotient", s3, "--subloop", two}).code, cli::kExitFails);
  EXPECT_EQ(run({"quotient", s3, "--subloop", "0,1,2,3"}).code, cli::kExitFails);
}

TEST(Cli, Semidirect) {
  const auto z2 = temp_file("ccloop_z2.tbl", write_tbl(fx::cyclic(2)));
  const auto z3 = temp_file("ccloop_z3.tbl", write_tbl(fx::cyclic(3)));
  const auto act = temp_file("ccloop_inv.act", "0: 0 1 2\n1: 0 2 1\n");
  const auto r = run({"semidirect", z2, z3, "--action", act});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(are_isomorphic(parse_tbl(r.out), fx::symmetric(3)));
  const auto t = run({"semidirect", z2, z3, "--action", act, "--theorem"});
  EXPECT_TRUE(has_line(t.out, "agree: yes"));
  EXPECT_TRUE(has_line(t.out, "cc: yes"));
  const auto bad = temp_file("ccloop_bad.act", "0: 0 1 2\n1: 1 0 2\n");
  EXPECT_NE(run({"semidirect", z2, z3, "--action", bad}).code, cli::kExitOk);
}

TEST(Cli, Holomorph) {
  const auto z3 = temp_file("ccloop_z3h.tbl", write_tbl(fx::cyclic(3)));
  const auto r = run({"holomorph", z3});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(are_isomorphic(parse_tbl(r.out), fx::symmetric(3)));
  const auto n5 = temp_file("ccloop_n5.tbl", write_tbl(fx::non_cc_order5()));
  EXPECT_EQ(run({"holomorph", n5}).code, cli::kExitFails);
}

TEST(Cli, Search) {
  const auto r = run({"search", "--order", "6", "--require", "cc,nonassociative", "--limit", "0", "--iso-reduce"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(parse_tbl_stream(r.out).size(), 1u);
  EXPECT_NE(r.out.find("# models: 1"), std::string::npos);
  const auto none = run({"search", "--order", "8", "--require", "extra,nonassociative"});
  EXPECT_EQ(none.code, cli::kExitFails);
  EXPECT_NE(none.out.find("# status: unsatisfiable"), std::string::npos);
  const auto spec = temp_file("ccloop.spec", "order = 4\nidentity = x*x = 1\nlimit = 0\nsymmetry = none\n");
  const auto s = run({"search", "--spec", spec});
  EXPECT_EQ(s.code, cli::kExitOk);
  EXPECT_EQ(parse_tbl_stream(s.out).size(), 1u);
}

TEST(Cli, Errors) {
  const auto trunc = temp_file("ccloop_trunc.tbl", "3\n0 1 2\n1 2 0\n");
  const auto r = run({"analyze", trunc});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"analyze", data("t16.tbl"), "--colour"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"analyze", "/nonexistent/x.tbl"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, FixtureSuite) {
  const auto r = run({"paper-suite"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  EXPECT_NE(r.out.find("failed: 0"), std::string::npos);
}
