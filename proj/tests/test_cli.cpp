#include <doctest.h>

#include <sstream>

#include "csrkit/cli.hpp"
#include "csrkit/exact.hpp"
#include "csrkit/json_io.hpp"
#include "csrkit/lifting.hpp"

using namespace csrkit;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kRotationPair = R"({
  "schema": 1,
  "dim": 2,
  "matrices": [
    [["0", "-1"], ["1", "0"]],
    [["3/5", "-4/5"], ["4/5", "3/5"]]
  ]
})";

const char* kTwiceIdentity = R"({
  "schema": 1,
  "dim": 2,
  "matrices": [[["2", "0"], ["0", "2"]]]
})";

}  // namespace

TEST_CASE("check command exit codes and reports") {
  CliRun yes = run({"check", "-"}, kRotationPair);
  CHECK(yes.code == kExitYes);
  ordered_json j = ordered_json::parse(yes.out);
  CHECK(j["verdict"]["answer"] == "yes");

  CliRun no = run({"check", "-"}, kTwiceIdentity);
  CHECK(no.code == kExitNo);
  ordered_json jn = ordered_json::parse(no.out);
  CHECK(jn["verdict"]["answer"] == "no");
  CHECK(jn["verdict"]["certificate"].contains("witness"));
}

TEST_CASE("reports are deterministic byte for byte") {
  CliRun a = run({"check", "-"}, kRotationPair);
  CliRun b = run({"check", "-"}, kRotationPair);
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
}

TEST_CASE("malformed input exits 65") {
  CHECK(run({"check", "-"}, "{not json").code == kExitMalformed);
  CHECK(run({"check", "-"}, R"({"schema":1,"matrices":[]})").code == kExitMalformed);
  CHECK(run({"check", "-"}, R"({"schema":1,"dim":3,"matrices":[[["1"]]]})").code ==
        kExitMalformed);
  CHECK(run({"check", "-"}, R"({"schema":1,"matrices":[[["1","0"],["0","1/0"]]]})").code ==
        kExitMalformed);
  CHECK(run({"check", "-"}, R"({"schema":2,"matrices":[[["1"]]]})").code == kExitMalformed);
  CHECK(run({"check", "-"}, R"({"schema":1,"matrices":[[["1","0"]]]})").code == kExitMalformed);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitYes);
}

TEST_CASE("factor and radii commands run") {
  CliRun f = run({"factor", "-"}, kRotationPair);
  CHECK(f.code == kExitYes);
  ordered_json jf = ordered_json::parse(f.out);
  CHECK(jf["factorization"]["block_sizes"].size() == 1);

  CliRun r = run({"--depth", "4", "radii", "-"}, kRotationPair);
  CHECK(r.code == kExitYes);
  ordered_json jr = ordered_json::parse(r.out);
  CHECK(jr["report"]["depth"] == 4);
  CHECK(std::abs(jr["report"]["rho2"]["value"].get<double>() - 1.0) < 1e-9);
}

TEST_CASE("generate emits families that re-parse") {
  CliRun g = run({"--seed", "5", "generate", "--kind", "euler", "--r", "3"});
  CHECK(g.code == kExitYes);
  MatrixFamily family = family_from_json_text(g.out);
  CHECK(family.size() == 2);
  CHECK(family_dim(family) == 2);
  CHECK(rat_eq(family[0], rat_mat({{"2/3", "0"}, {"2/3", "2/3"}})));

  // Generated output feeds straight back into check.
  CliRun chk = run({"check", "-"}, g.out);
  CHECK(chk.code == kExitNo);  // odd r is not c.s.r.
}

TEST_CASE("euler command encodes the verdict in the exit code") {
  CliRun odd = run({"euler", "--r", "3", "--kmax", "4096"});
  CHECK(odd.code == kExitNo);
  ordered_json j = ordered_json::parse(odd.out);
  CHECK(j["report"]["csr_verdict"]["answer"] == "no");
  CHECK(j["report"]["b_values"][4] == "3");

  CliRun even = run({"euler", "--r", "4", "--kmax", "4096"});
  CHECK(even.code == kExitYes);
}

TEST_CASE("lss and fractal commands") {
  const char* antisym = R"({"schema":1,"dim":2,"matrices":[[["0","-1"],["1","0"]]]})";
  CHECK(run({"lss", "-"}, antisym).code == kExitYes);

  const char* metzler = R"({"schema":1,"dim":2,"matrices":[[["-1","1"],["1","-1"]]]})";
  CHECK(run({"lss", "--positive", "-"}, metzler).code == kExitYes);

  const char* de_rham_quarter = R"({
    "schema": 1, "dim": 2,
    "operators": [
      {"linear": [["1/2","0"],["1/4","1/4"]], "translation": ["0","0"]},
      {"linear": [["1/4","1/4"],["0","1/2"]], "translation": ["1/2","1/2"]}
    ]
  })";
  CliRun fr = run({"fractal", "-"}, de_rham_quarter);
  CHECK(fr.code == kExitYes);
  ordered_json j = ordered_json::parse(fr.out);
  CHECK(j["report"]["constant_regularity"] == true);
}

TEST_CASE("text output mode") {
  CliRun t = run({"--output", "text", "check", "-"}, kRotationPair);
  CHECK(t.code == kExitYes);
  CHECK(t.out.find("yes") != std::string::npos);
}

TEST_CASE("emitted certificates re-verify through the library") {
  CliRun yes = run({"check", "-"}, kRotationPair);
  ordered_json j = ordered_json::parse(yes.out);
  const auto& cert = j["verdict"]["certificate"];
  REQUIRE(cert.contains("invariant_affine"));
  SubspaceBasis v = subspace_from_json(cert["invariant_affine"]);
  REQUIRE(v.affine_point.has_value());

  // The certificate lives in the lifted space: rebuild the lifts and check
  // affine invariance plus the defining membership failure exactly.
  MatrixFamily family = family_from_json_text(kRotationPair);
  MatrixFamily lifts;
  for (const auto& a : family) lifts.push_back(tensor_square(a).matrix);
  const RatVector& y = *v.affine_point;
  for (const auto& l : lifts) {
    CHECK(in_span(v.vectors, (y - l * y).eval()));
    for (const auto& b : v.vectors) CHECK(in_span(v.vectors, (l * b).eval()));
  }
  CHECK_FALSE(in_span(v.vectors, y));

  REQUIRE(cert.contains("ellipsoid"));
  CHECK(is_psd(matrix_from_json(cert["ellipsoid"])));
}

TEST_CASE("generate records the family spec") {
  CliRun g = run({"--seed", "9", "generate", "--kind", "one_n", "--n", "3", "--count", "2",
                  "--conjugate"});
  CHECK(g.code == kExitYes);
  ordered_json j = ordered_json::parse(g.out);
  CHECK(j["spec"]["kind"] == "conjugated");
  CHECK(j["spec"]["base"]["kind"] == "one_n");
  MatrixFamily f = family_from_json_text(g.out);
  CHECK(family_dim(f) == 3);
}
