#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "ldiv/cli.hpp"
#include "ldiv/error.hpp"

using namespace lattdiv;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("group and pair specs") {
  CHECK(cli::parse_group_spec("A:5").order() == 60);
  CHECK(cli::parse_group_spec("D:6").order() == 12);
  CHECK(cli::parse_group_spec(R"j({"degree": 3, "generators": [[1, 2, 0]]})j").order() == 3);
  CHECK(cli::parse_group_spec(R"j({"degree": 4, "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]})j").order() == 4);
  auto p = cli::parse_pair_spec("pair:dihedral:8");
  CHECK(p.g.order() == 16);
  CHECK(p.h.order() == 2);
  CHECK(cli::parse_pair_spec("pair:klein-s5").g.order() == 120);
  CHECK(cli::parse_pair_spec(R"j({"G": "S:3", "H": {"degree": 3, "generators": ["(1 2)"]}})j").h.order() == 2);

  CHECK_THROWS_AS(cli::parse_group_spec("Q:5"), ValidationError);
  CHECK_THROWS_AS(cli::parse_group_spec("C:x"), ValidationError);
  CHECK_THROWS_AS(cli::parse_group_spec(R"j({"degree": 3, "generators": [[1, 1, 0]]})j"), ValidationError);
  CHECK_THROWS_AS(cli::parse_group_spec(R"j({"degree": 3, "gens": []})j"), ValidationError);
  CHECK_THROWS_AS(cli::parse_group_spec(R"j({"degree": 3,)j"), ValidationError);
  CHECK_THROWS_AS(cli::parse_group_spec("S:10"), CapExceeded);
  CHECK_THROWS_AS(cli::parse_pair_spec(R"j({"G": "C:4", "H": "S:4"})j"), ValidationError);
}

TEST_CASE("analyze") {
  auto r = call({"analyze", "pair:dihedral:8", "--prime", "2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["version"] == cli::kVersion);
  CHECK(j["request"]["subcommand"] == "analyze");
  CHECK(j["result"]["divisible"] == true);
  CHECK(j["result"]["delta"] == 2);
  CHECK(j["result"]["violations"].empty());

  r = call({"analyze", "-", "--prime", "2"}, "pair:klein-s5");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["divisible"] == false);
  CHECK(json::parse(r.out)["result"]["delta"].is_null());
}

TEST_CASE("scan and dihedral table") {
  auto r = call({"scan", "A:5"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["all_prime_count"] == 1);

  r = call({"dihedral-table", "--n", "3..16"});
  REQUIRE(r.code == 0);
  for (const auto& row : json::parse(r.out)["result"]["rows"]) {
    CHECK(row["matches"] == true);
    CHECK(row["divisible"] == (row["n"].get<int>() % 4 == 0));
  }
}

TEST_CASE("number field subcommands") {
  auto r = call({"bound", R"j({"ell": 2, "mode": "weak", "count": 10, "invariant": 2,
      "unit_K": {"r1": 2, "r2": 0}, "unit_F": {"r1": 1, "r2": 0}, "rel_degree": 2})j"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["effective_bound"] == 3);

  r = call({"bound", "-"}, R"j({"ell": 2, "count": 1, "bogus": 1})j");
  CHECK(r.code == 2);

  r = call({"rayclass", R"j({"ell": 2, "rk_cl_F": 0, "s_inf": 1, "places": [{"residue_is_1_mod_ell": true}]})j"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["e"] == 2);
  CHECK(json::parse(r.out)["result"]["bound"] == 3);

  r = call({"tower", R"j({"degree": 2, "omega_F_disc": 7, "closure_degree": 2,
      "unit_K": {"r1": 2, "r2": 0}, "unit_F": {"r1": 1, "r2": 0},
      "per_prime": {"2": {"delta": 1, "mu_K": true, "mu_F": true}}})j"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["omega_criterion"] == true);

  r = call({"malle", "pair:dihedral:8", "--field-degree", "2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out)["result"];
  CHECK(j["a"]["num"] == 1);
  CHECK(j["a"]["den"] == 3);
  CHECK(j["exponent"].is_null());

  r = call({"malle", "pair:dihedral:8", "--field-degree", "2", "--rk-f", "2=1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["exponent"]["value"] == 56);
}

TEST_CASE("census") {
  auto r = call({"census", "--k", "1", "--j", "2", "--x-list", "100"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["rows"][0]["s_count"] == 22);
  r = call({"--sieve-max", "1000", "census", "--k", "1", "--j", "2", "--x-list", "5000"});
  CHECK(r.code == 3);
}

TEST_CASE("formats, exit codes and determinism") {
  auto a = call({"analyze", "pair:dihedral:12", "--prime", "2"});
  auto b = call({"analyze", "pair:dihedral:12", "--prime", "2"});
  CHECK(a.out == b.out);
  CHECK(json::parse(call({"--threads", "1", "scan", "S:4"}).out)["result"] ==
        json::parse(call({"scan", "S:4"}).out)["result"]);

  auto csv = call({"--format", "csv", "dihedral-table", "--n", "4,5"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("n,order,divisible,delta") != std::string::npos);
  auto text = call({"--format", "text", "scan", "S:3"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("all_prime_count:") != std::string::npos);

  CHECK(call({"scan", "X:3"}).code == 2);
  CHECK(call({"analyze", "pair:dihedral:8", "--prime", "4"}).code == 2);
  CHECK(call({"analyze", "pair:dihedral:8"}).code == 2);
  CHECK(call({"--element-cap", "100", "scan", "S:5"}).code == 3);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({}).code == 2);
}
