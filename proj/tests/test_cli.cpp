#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbithull/cli.hpp"
#include "orbithull/io.hpp"
#include "suite.hpp"

using namespace orbithull;

namespace {

const std::string kFixtures = ORBITHULL_FIXTURES;

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

Json report(const cli::Outcome& o) { return Json::parse(o.report); }

}  // namespace

TEST_CASE("member on equal inputs yields a one-term witness") {
  const auto o = cli::run({"member", "--x", fx("roots.json"), "--y", fx("roots.json"), "--tol", "1e-7"});
  CHECK(o.exit == cli::kAffirmative);
  const Json r = report(o);
  CHECK(r["schema"] == kSchema);
  CHECK(r["verdict"] == "member");
  CHECK(r["result"]["witness"]["terms"].size() == 1);
}

TEST_CASE("birkhoff on the identity yields one permutation") {
  const auto o = cli::run({"birkhoff", "--d", fx("identity3.json")});
  CHECK(o.exit == cli::kAffirmative);
  CHECK(report(o)["decomposition"]["terms"].size() == 1);
}

TEST_CASE("signs versus roots of unity is a non-member with separator") {
  const auto o = cli::run({"member", "--x", fx("signs.json"), "--y", fx("roots.json")});
  CHECK(o.exit == cli::kNegative);
  const Json r = report(o);
  CHECK(r["verdict"] == "non_member");
  CHECK(r["result"].contains("separator"));
}

TEST_CASE("malformed input exits 2 and names the location") {
  const auto parse = cli::run({"member", "--x", fx("malformed.json"), "--y", fx("roots.json")});
  CHECK(parse.exit == cli::kError);
  CHECK(report(parse)["error"]["kind"] == "input");
  CHECK(report(parse)["error"]["where"].get<std::string>().find("malformed.json@") != std::string::npos);

  const auto entry = cli::run({"member", "--x", fx("bad_entry.json"), "--y", fx("roots.json")});
  CHECK(entry.exit == cli::kError);
  CHECK(report(entry)["error"]["where"].get<std::string>().find("#/rows/1/1") != std::string::npos);

  const auto half = cli::run({"member", "--x", fx("roots.json")});
  CHECK(half.exit == cli::kError);

  const auto usage = cli::run({"member", "--tol", "-1"});
  CHECK(usage.exit == cli::kError);
  CHECK(cli::run({"nonsense"}).exit == cli::kError);
}

TEST_CASE("non-normal input exits 1 from check-normal and 2 from member") {
  CHECK(cli::run({"check-normal", "--x", fx("jordan.json")}).exit == cli::kNegative);
  const auto o = cli::run({"member", "--x", fx("jordan.json"), "--y", fx("jordan.json")});
  CHECK(o.exit == cli::kError);
  CHECK(report(o)["error"]["kind"] == "precondition");
}

TEST_CASE("verify re-checks written reports") {
  const std::vector<std::vector<std::string>> runs{
      {"member", "--seed", "3", "--n", "5"},
      {"member", "--x", fx("signs.json"), "--y", fx("roots.json")},
      {"lemma35", "--part", "2", "--K", "3", "--seed", "2"},
      {"lemma44", "--K", "2", "--seed", "2"},
      {"correct", "--seed", "4", "--n", "4"},
      {"birkhoff", "--seed", "1", "--n", "6"}};
  const std::string path = "orbithull_cli_report.json";
  for (auto args : runs) {
    args.push_back("--out");
    args.push_back(path);
    const auto o = cli::run(args);
    REQUIRE(o.exit != cli::kError);
    const auto v = cli::run({"verify", "--report", path});
    CHECK(v.exit == cli::kAffirmative);
    CHECK(report(v)["verdict"] == "verified");
  }
  // A tampered witness is rejected.
  Json r = report(cli::run({"member", "--seed", "3", "--n", "5"}));
  r["x"]["rows"][0][0] = 5.0;
  {
    std::ofstream out(path);
    out << r.dump(2);
  }
  CHECK(cli::run({"verify", "--report", path}).exit == cli::kNegative);
  std::remove(path.c_str());
}

TEST_CASE("fixture suite is deterministic") {
  for (const auto& args : suite::load(kFixtures)) {
    const auto a = cli::run(args);
    const auto b = cli::run(args);
    CHECK(a.report == b.report);
    CHECK(a.exit == b.exit);
    CHECK_FALSE(a.report.empty());
  }
}
