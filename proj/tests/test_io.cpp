#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "inflap/io.hpp"
#include "test_util.hpp"

using namespace inflap;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("inflap_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("format_double round-trips tricky values") {
  for (const double v :
       {0.1, 1.0 / 3.0, 1e-300, 0.0, -0.0, 2.5, 1e17, -1.7976931348623157e308,
        4.9406564584124654e-324, 0.30000000000000004}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  // Short forms stay short.
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("field round-trip is exact") {
  TempDir tmp;
  const LatticeDomain dom = test_util::unit_square(0.125);
  const ScalarField f = test_util::random_field(dom, 17, -5.0, 5.0);
  const auto path = tmp.path / "field.csv";
  write_field(f, path);
  const ScalarField g = read_field(path);
  REQUIRE(g.domain() == dom);
  for (std::int64_t n = 0; n < dom.node_count(); ++n) {
    CHECK(g[n] == f[n]);
  }
}

TEST_CASE("1D field layout: three headers then one row per node") {
  TempDir tmp;
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.5, 1);
  ScalarField f(dom);
  f[0] = 0.0;
  f[1] = 0.5;
  f[2] = 1.0;
  const auto path = tmp.path / "f1.csv";
  write_field(f, path);
  CHECK(slurp(path) ==
        "# dim=1\n# h=0.5\n# bounds=0,1\n"
        "0,0,0\n1,0.5,0.5\n2,1,1\n");
}

TEST_CASE("read_field failure modes carry line numbers") {
  TempDir tmp;
  auto write_text = [&](const std::string& name, const std::string& body) {
    const auto p = tmp.path / name;
    std::ofstream(p) << body;
    return p;
  };

  SUBCASE("missing rows") {
    const auto p = write_text(
        "short.csv", "# dim=1\n# h=0.5\n# bounds=0,1\n0,0,0\n1,0.5,0.5\n");
    CHECK_THROWS_WITH_AS(read_field(p),
                         doctest::Contains("expected 3 data rows"),
                         FormatError);
  }
  SUBCASE("too many rows") {
    const auto p = write_text("long.csv",
                              "# dim=1\n# h=0.5\n# bounds=0,1\n"
                              "0,0,0\n1,0.5,0.5\n2,1,1\n3,1.5,0\n");
    CHECK_THROWS_WITH_AS(read_field(p), doctest::Contains(":7:"), FormatError);
  }
  SUBCASE("bad header") {
    const auto p = write_text("hdr.csv", "# dim=1\n# spacing=0.5\n");
    CHECK_THROWS_WITH_AS(read_field(p), doctest::Contains(":2:"), FormatError);
  }
  SUBCASE("non-finite value") {
    const auto p = write_text(
        "nan.csv", "# dim=1\n# h=0.5\n# bounds=0,1\n0,0,nan\n1,0.5,0\n2,1,0\n");
    CHECK_THROWS_WITH_AS(read_field(p), doctest::Contains(":4:"), FormatError);
  }
  SUBCASE("index out of order") {
    const auto p = write_text(
        "ord.csv", "# dim=1\n# h=0.5\n# bounds=0,1\n0,0,0\n2,1,1\n1,0.5,0.5\n");
    CHECK_THROWS_WITH_AS(read_field(p), doctest::Contains(":5:"), FormatError);
  }
  SUBCASE("unreadable path") {
    CHECK_THROWS_AS(read_field(tmp.path / "absent.csv"), IoError);
  }
}

TEST_CASE("reports serialize in insertion order") {
  Report r;
  r.add("command", "solve");
  r.add("converged", true);
  r.add("iterations", static_cast<std::int64_t>(42));
  r.add("residual_sup", 1.5e-9);
  CHECK(r.to_string() ==
        "command=solve\nconverged=true\niterations=42\nresidual_sup=1.5e-09\n");
}

TEST_CASE("report fragments cover solver and check outputs") {
  Report r;
  SolveReport s;
  s.converged = true;
  s.iterations = 7;
  s.final_update = 0.5e-11;
  s.residual_sup = 2e-10;
  s.wall_seconds = 123.0;  // excluded from serialization
  append_report(r, s);

  CheckResult c;
  c.passed = false;
  c.worst_slack = 0.25;
  c.tolerance = 1e-12;
  c.witness = {5, "node 5"};
  append_report(r, c, "check.");

  const std::string text = r.to_string();
  CHECK(text.find("converged=true\n") != std::string::npos);
  CHECK(text.find("iterations=7\n") != std::string::npos);
  CHECK(text.find("check.passed=false\n") != std::string::npos);
  CHECK(text.find("check.slack=0.25\n") != std::string::npos);
  CHECK(text.find("check.witness=5\n") != std::string::npos);
  CHECK(text.find("wall") == std::string::npos);
}

TEST_CASE("convergence rows serialize one block per level") {
  std::vector<ConvergenceRow> rows(2);
  rows[0] = {0.125, 0.5, 289, 10, 1e-3, 1e-9, true};
  rows[1] = {0.0625, 0.3125, 1089, 20, 5e-4, 1e-9, true};
  Report r;
  append_report(r, rows);
  const std::string text = r.to_string();
  CHECK(text.find("levels=2\n") != std::string::npos);
  CHECK(text.find("row.0.h=0.125\n") != std::string::npos);
  CHECK(text.find("row.1.h=0.0625\n") != std::string::npos);
  CHECK(text.find("row.1.converged=true\n") != std::string::npos);
}
