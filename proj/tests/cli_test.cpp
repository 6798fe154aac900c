#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app/commands.hpp"
#include "app/input.hpp"
#include "app/report.hpp"
#include "quadax/conjugate.hpp"
#include "quadax/constructibility.hpp"
#include "quadax/error.hpp"

using namespace quadax;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "quadax");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = app::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QUADAX_TEST_DATA) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("quadax_cli_test_" + name);
  std::ofstream(p) << body;
  return p;
}

// Scoped environment override.
struct EnvVar {
  explicit EnvVar(const char* value) { setenv("QUADRIC_AXES_TOL", value, 1); }
  ~EnvVar() { unsetenv("QUADRIC_AXES_TOL"); }
};

}  // namespace

TEST_CASE("input parser") {
  std::istringstream ok("# comment\n1, 2, 3\n\n4 5 6 # trailing\n7;8;9\n");
  const app::SystemFile f = app::parse_system(ok);
  REQUIRE(f.rows.size() == 3);
  CHECK(f.line_numbers == std::vector<int>{2, 4, 5});
  CHECK(f.rows[2][2] == 9.0);

  std::istringstream bad("3 0 0\n0 2\n0 0 1\n");
  try {
    app::parse_system(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "line 2: expected 3 numbers");
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(app::parse_system(empty), Error);
  std::istringstream short_sys("1 0 0\n0 1 0\n");
  CHECK_THROWS_AS(app::parse_system(short_sys), Error);
  std::istringstream word("1 0 x\n0 1 0\n0 0 1\n");
  CHECK_THROWS_AS(app::parse_system(word), Error);
  CHECK(app::parse_number_list("3,2,1", "ellipsoid") == std::vector<double>{3, 2, 1});
}

TEST_CASE("axes: identity system") {
  const Outcome o = run_cli({"axes", data("identity.txt")});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  for (const char* key : {"command", "inputs", "results", "residuals", "trace"}) CHECK(j.contains(key));
  CHECK(j["command"] == "axes");
  CHECK(j["results"]["construction"]["lengths"] == json({1.0, 1.0, 1.0}));
  CHECK(j["residuals"]["agree"] == true);
  CHECK(j["residuals"]["max_direction_angle"].get<double>() == 0.0);
}

TEST_CASE("axes: rotated system on (3,2,1), both routes") {
  const RandomSystem rs = random_system(Ellipsoid({3.0, 2.0, 1.0}), 77);
  std::ostringstream body;
  body.precision(17);
  for (const Vec& d : rs.system.diameters()) body << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  const auto path = temp_file("rotated.txt", body.str());
  const Outcome o = run_cli({"axes", path.string()});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  const std::vector<double> want{3.0, 2.0, 1.0};
  for (const char* route : {"construction", "oracle"}) {
    const auto l = j["results"][route]["lengths"].get<std::vector<double>>();
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(l[k] - want[k]) <= 1e-8 * want[k]);
  }
  CHECK(j["residuals"]["agree"] == true);
}

TEST_CASE("axes: conjugate pair file goes through Rytz") {
  const Outcome o = run_cli({"axes", data("pair.txt")});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["results"]["method"] == "rytz");
  CHECK(j["results"]["construction"]["lengths"][0].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("axes: malformed row is an input error") {
  const Outcome o = run_cli({"axes", data("bad_row.txt")});
  CHECK(o.code == 2);
  CHECK(o.err.find("line 2: expected 3 numbers") != std::string::npos);
  CHECK(run_cli({"axes", data("missing.txt")}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
}

TEST_CASE("axes: degenerate system exits with 1") {
  const auto path = temp_file("flat.txt", "1 0 0\n0 1 0\n1 1 0\n");
  CHECK(run_cli({"axes", path.string()}).code == 1);
}

TEST_CASE("tolerance override from the environment") {
  {
    EnvVar env("1e-6");
    CHECK(app::pipeline_tolerance() == 1e-6);
    const Outcome o = run_cli({"axes", data("identity.txt")});
    REQUIRE(o.code == 0);
    CHECK(json::parse(o.out)["residuals"]["tolerance"].get<double>() == 1e-6);
  }
  {
    EnvVar env("abc");
    CHECK(run_cli({"axes", data("identity.txt")}).code == 2);
  }
  {
    EnvVar env("-1");
    CHECK(run_cli({"axes", data("identity.txt")}).code == 2);
  }
  CHECK(app::pipeline_tolerance() == 1e-8);
}

TEST_CASE("verify: random systems pass, a corrupted file fails conjugacy") {
  const Outcome o = run_cli({"verify", "--random", "200", "--ellipsoid", "3,2,1", "--seed", "5"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["results"]["all_pass"] == true);
  for (const auto& [name, value] : j["residuals"].items()) CHECK(value.get<double>() <= 1e-9);

  const Outcome two = run_cli({"verify", "--random", "100", "--ellipsoid", "2,1"});
  CHECK(two.code == 0);

  const auto corrupt = temp_file("corrupt.txt", "3 0 0\n0.1 2 0\n0 0 1\n");
  const Outcome bad = run_cli({"verify", corrupt.string(), "--ellipsoid", "3,2,1"});
  CHECK(bad.code == 1);
  const json jb = json::parse(bad.out);
  CHECK(jb["results"]["all_pass"] == false);
  bool conjugacy_failed = false;
  for (const auto& inv : jb["results"]["invariants"])
    if (inv["name"] == "conjugacy") conjugacy_failed = inv["pass"] == false;
  CHECK(conjugacy_failed);

  CHECK(run_cli({"verify", "--random", "10"}).code == 2);
}

TEST_CASE("constructible: pinned instance, quartic and x' = 0 case") {
  const Outcome a = run_cli({"constructible", "--a", "1", "--b", "2", "--x", "2", "--y", "1", "--zsq", "3"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["results"]["verdict"] == "solid");
  CHECK(ja["inputs"]["zsq"] == "3");

  const Outcome q = run_cli({"constructible", "--quartic", "1,0,-5,0,6"});
  REQUIRE(q.code == 0);
  CHECK(json::parse(q.out)["results"]["verdict"] == "planar");

  const Outcome x = run_cli({"constructible", "--a", "1", "--b", "1", "--x", "0", "--y", "1", "--zsq", "0"});
  REQUIRE(x.code == 0);
  const std::string text = x.out;
  CHECK(text.find("\"planar\"") != std::string::npos);
  CHECK(text.find("-1/3") != std::string::npos);
  CHECK(text.find("equals y'") != std::string::npos);

  CHECK(run_cli({"constructible", "--a", "1", "--b", "1", "--x", "0", "--y", "-1/2", "--zsq", "0"}).code == 0);
}

TEST_CASE("constructible: floats and incomplete arguments are rejected") {
  const Outcome f = run_cli({"constructible", "--a", "1", "--b", "2", "--x", "2", "--y", "1", "--zsq", "0.5"});
  CHECK(f.code == 2);
  CHECK(f.err.find("p/q") != std::string::npos);
  CHECK(run_cli({"constructible", "--quartic", "1,0,2.5,0,6"}).code == 2);
  CHECK(run_cli({"constructible", "--a", "1"}).code == 2);
  CHECK(run_cli({"constructible", "--quartic", "1,0,6"}).code == 2);
}

TEST_CASE("figure: labels, SVG header and the empty-trace error") {
  const Outcome r = run_cli({"figure", data("pair.txt"), "--which", "rytz"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<?xml", 0) == 0);
  CHECK(r.out.find("version=\"1.1\"") != std::string::npos);
  for (const char* label : {">M<", ">L<", ">T<", ">P′<"}) CHECK(r.out.find(label) != std::string::npos);

  const Outcome p = run_cli({"figure", data("image_ellipse.txt"), "--which", "projection"});
  REQUIRE(p.code == 0);
  for (const char* label : {">A<", ">B<", ">m<", ">C̄<", ">D̄<", ">Ē<", ">F̄<"})
    CHECK(p.out.find(label) != std::string::npos);

  for (const char* which : {"focal", "axes"}) CHECK(run_cli({"figure", data("image_ellipse.txt"), "--which", which}).code == 0);

  const auto aligned = temp_file("aligned.txt", "3 0 0\n0 2 0\n0 0 1\n");
  const Outcome empty = run_cli({"figure", aligned.string(), "--which", "projection"});
  CHECK(empty.code == 1);
  CHECK(empty.err.find("no projection step") != std::string::npos);
  CHECK(run_cli({"figure", data("pair.txt"), "--which", "focal"}).code == 2);
  CHECK(run_cli({"figure", data("pair.txt"), "--which", "nonsense"}).code == 2);

  const auto svg = std::filesystem::temp_directory_path() / "quadax_cli_test_fig.svg";
  CHECK(run_cli({"figure", data("pair.txt"), "--which", "rytz", "-o", svg.string()}).code == 0);
  CHECK(std::filesystem::file_size(svg) > 0);
}

TEST_CASE("report round trip") {
  // exact fields compare bitwise
  const ConstructibilityReport rep = quartic_constructibility(RatPoly({1, 4, -44, 0, 24}));
  const VerdictSummary s = summarize(rep);
  CHECK(json::parse(json(s).dump()).get<VerdictSummary>() == s);

  const ConstructibilityReport planar = quartic_constructibility(RatPoly({Rat(16), 8, -146, 0, 147}));
  CHECK(json::parse(json(summarize(planar)).dump()).get<VerdictSummary>() == summarize(planar));

  // and as read back from a CLI report
  const Outcome o = run_cli({"constructible", "--quartic", "147,0,-146,8,16"});
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["results"]["summary"].get<VerdictSummary>() == summarize(planar));

  QuadFieldElem x(Int(6), Rat(5, 3), Rat(-2, 7));
  CHECK(json::parse(json(x).dump()).get<QuadFieldElem>() == x);

  // floats compare to 1e-15
  const AxesResult a = axes_oracle(random_system(Ellipsoid({3.0, 2.0, 1.0}), 3).system);
  const AxesResult b = json::parse(json(a).dump()).get<AxesResult>();
  REQUIRE(b.lengths.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(a.lengths[k] - b.lengths[k]) <= 1e-15 * a.lengths[k]);
    CHECK(norm(a.directions[k] - b.directions[k]) <= 1e-15);
  }
  CHECK(b.provenance == a.provenance);
}
