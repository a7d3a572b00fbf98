#include <doctest.h>

#include <sstream>

#include "conelcp/classify.hpp"
#include "conelcp/commands.hpp"
#include "golden.hpp"

using namespace conelcp;

namespace {

struct Run {
  int code;
  Json report;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  const std::string text = out.str();
  return {code, text.empty() || text[0] != '{' ? Json() : Json::parse(text), err.str()};
}

std::string fixture(const char* name) { return std::string(CONELCP_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("exit-code contract on the fixtures") {
  for (const auto& c : testing::kFixtures) {
    CAPTURE(c.file);
    const auto r = testing::run_fixture(c);
    CHECK(r.exit_code == c.exit_code);
    if (c.exit_code == kExitInput) CHECK(r.err.rfind("error: ", 0) == 0);
  }
}

TEST_CASE("golden reports") {
  for (const auto& c : testing::kFixtures) {
    if (!c.golden) continue;
    CAPTURE(c.file);
    CHECK(testing::matches_golden(c, testing::run_fixture(c)));
  }
}

TEST_CASE("classify reports") {
  const Run id = run({"classify", fixture("classify_identity.json")});
  CHECK(id.report["class"] == "PositiveDefinite");
  CHECK(id.report["p_property"]["verdict"] == "CertifiedTrue");
  CHECK(id.report["f_property"]["verdict"] == "CertifiedTrue");
  CHECK(id.report["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  const Run skew = run({"classify", fixture("classify_skew.json")});
  CHECK(skew.report["class"] == "NonpositiveForm");
  CHECK(skew.report["f_property"]["verdict"] == "CertifiedFalse");
  CHECK(skew.report["f_property"]["certificate"]["y"].size() == 2);
}

TEST_CASE("solve reports") {
  const Run plain = run({"solve", fixture("solve_identity.json")});
  CHECK(plain.code == kExitOk);
  CHECK(plain.report["solution"]["x"] == Json::array({1.0, 2.0}));

  const Run cone = run({"solve", fixture("solve_cone.json")});
  CHECK(cone.report["solution"]["x"][0].get<double>() == doctest::Approx(1.5));
  CHECK(cone.report["solution"]["x"][1].get<double>() == doctest::Approx(1.5));

  const Run none = run({"solve", fixture("solve_swap.json")});
  CHECK(none.code == kExitNegative);
  CHECK(none.report["outcome"] == "NoSolutionCertified");
}

TEST_CASE("witness reports") {
  const Run split = run({"witness", fixture("witness_split.json")});
  CHECK(split.report["non_f_witness"]["q"] == Json::array({-1.0, 0.0}));
  CHECK(split.report["non_f_witness"]["member"]["rows"][0][0] == -1.0);
  CHECK(split.report["non_f_cone"]["verified"] == true);
  CHECK(split.report.contains("q_cone"));

  const Run id = run({"witness", fixture("witness_identity.json")});
  CHECK(id.report.contains("identity_orbit"));

  const Run skew = run({"witness", fixture("witness_skew.json")});
  CHECK(skew.report["non_f_samples"] == 10);
}

TEST_CASE("oracle command") {
  const Run none = run({"oracle", fixture("solve_swap.json")});
  CHECK(none.code == kExitNegative);
  CHECK(none.report["count"] == 0);
  const Run one = run({"oracle", fixture("solve_identity.json")});
  CHECK(one.code == kExitOk);
  CHECK(one.report["count"] == 1);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"classify"}).code == kExitInput);
  CHECK(run({"classify", fixture("does_not_exist.json")}).code == kExitInput);
  CHECK(run({"--tol", "-1", "classify", fixture("classify_identity.json")}).code == kExitInput);
  CHECK(run({"gen", "--kind", "pd", "--dim", "0"}).code == kExitInput);
  CHECK(run({"gen", "--kind", "bogus", "--dim", "2"}).code == kExitInput);
  CHECK(run({"gen", "--kind", "indefinite", "--dim", "1"}).code == kExitInput);
}

TEST_CASE("flags override the instance file") {
  const InstanceFile inst = parse_instance(R"({"matrix": {"m": 1, "rows": [[1]]}, "tol": 1e-6, "seed": 4})");
  const RunOptions fromfile = resolve_options(inst, {}, {}, {});
  CHECK(fromfile.tol == 1e-6);
  CHECK(fromfile.seed == 4);
  CHECK(fromfile.samples == 200);
  const RunOptions flagged = resolve_options(inst, 1e-3, 7, 9);
  CHECK(flagged.tol == 1e-3);
  CHECK(flagged.samples == 7);
  CHECK(flagged.seed == 9);

  const Run r = run({"--seed", "5", "classify", fixture("classify_identity.json")});
  CHECK(r.report["options"]["seed"] == 5);
}

TEST_CASE("instance parsing") {
  const InstanceFile csv = parse_instance("2, 1\n1, 2\n");
  CHECK(csv.matrix == Matrix::from_rows({{2, 1}, {1, 2}}));
  CHECK_FALSE(csv.q);
  CHECK_THROWS_AS(parse_instance("1, x\n"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"matrix": {"m": 3, "rows": [[1]]}})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"matrix": {"m": 1, "rows": [[1]]}, "tol": 0})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"matrix": {"m": 1, "rows": [[1]]}, "cone": {"generators": [[1, 0], [0, 1]]}})"), Error);
  const InstanceFile round = parse_instance(instance_to_json(cmd_gen(GenKind::Pd, 3, 2)).dump());
  CHECK(round.matrix == cmd_gen(GenKind::Pd, 3, 2).matrix);
}

TEST_CASE("gen") {
  CHECK(is_positive_definite(cmd_gen(GenKind::Pd, 3, 7).matrix).certified_true());
  const Matrix skew = cmd_gen(GenKind::Skew, 2, 1).matrix;
  CHECK(symmetrizant(skew) == Matrix(2));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    const std::size_t dim = 2 + seed % 5;
    REQUIRE(trichotomy(cmd_gen(GenKind::Pd, dim, seed).matrix).kind == TrichotomyClass::PositiveDefinite);
    REQUIRE(trichotomy(cmd_gen(GenKind::Indefinite, dim, seed).matrix).kind == TrichotomyClass::Indefinite);
    REQUIRE(form_class(cmd_gen(GenKind::Skew, dim, seed).matrix).kind == TrichotomyClass::NonpositiveForm);
    REQUIRE(is_p_matrix(cmd_gen(GenKind::PMatrix, dim, seed).matrix).certified_true());
    REQUIRE(min_entry(cmd_gen(GenKind::Positive, dim, seed).matrix.data()) > 0.0);
  }
}

TEST_CASE("reports are deterministic apart from wall time") {
  for (const char* cmd : {"classify", "witness"}) {
    std::ostringstream a, b, e;
    run_cli({cmd, fixture("witness_split.json")}, a, e);
    run_cli({cmd, fixture("witness_split.json")}, b, e);
    CHECK(testing::masked(a.str()) == testing::masked(b.str()));
  }
}
