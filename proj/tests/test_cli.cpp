#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi/cli/cli.hpp"

using namespace jacobi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jacobi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

/// Fresh scratch directory per test case.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("jacobi_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Expansion load(const std::string& path) { return cli::expansion_from_json(cli::json::parse(cli::read_file(path))); }

std::string golden(const std::string& name) { return cli::read_file(std::string(JACOBI_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("expand builtin specs") {
  const Outcome mode = run_cli({"expand", "--spec", "mode k=(1,0)", "--dim", "2", "--degree", "3"});
  REQUIRE(mode.code == cli::kExitOk);
  const Expansion f = cli::expansion_from_json(cli::json::parse(mode.out));
  CHECK(f.coeffs().size() == 1);
  CHECK(f.coeff({1, 0}) == 1.0);
  CHECK(f.degree_cap() == 3);

  // x1 x2 = P_1(x1) P_1(x2) when alpha = beta = 0.
  const Outcome poly = run_cli({"expand", "--spec", "poly 1:(1,1)", "--dim", "2", "--degree", "3"});
  REQUIRE(poly.code == cli::kExitOk);
  const Expansion g = cli::expansion_from_json(cli::json::parse(poly.out));
  for (const auto& [k, v] : g.coeffs()) {
    if (k == MultiIndex{1, 1}) {
      CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    } else {
      CHECK(std::abs(v) <= 1e-13);
    }
  }

  const Outcome bad = run_cli({"expand", "--spec", "garbage"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(run_cli({"expand", "--spec", "mode k=(1,x)", "--dim", "2"}).code == cli::kExitUsage);
  CHECK(run_cli({"expand", "--spec", "mode k=(1)", "--dim", "2"}).code == cli::kExitUsage);
  CHECK(run_cli({"expand", "--spec", "const v=1", "--alpha=-1.5"}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("apply dispatches to the library") {
  TempDir tmp;
  const std::string in = tmp.file("f.json");
  REQUIRE(run_cli({"expand", "--spec", "mode k=(2,1) v=1.5", "--dim", "2", "--alpha", "0.5,-0.5", "--beta", "1,0",
                   "--degree", "4", "--out", in})
              .code == cli::kExitOk);
  const Expansion f = load(in);

  const Outcome r = run_cli({"apply", "--op", "riesz-1", "--in", in});
  REQUIRE(r.code == cli::kExitOk);
  const Expansion rf = cli::expansion_from_json(cli::json::parse(r.out));
  CHECK(rf.basis() == Basis::shifted_in(0));
  CHECK(max_coeff_difference(rf, riesz(0, f)) == 0.0);

  // Poisson leaves constants alone.
  const std::string c = tmp.file("c.json");
  REQUIRE(run_cli({"expand", "--spec", "const v=3", "--dim", "2", "--degree", "2", "--out", c}).code == 0);
  const Outcome pc = run_cli({"apply", "--op", "poisson", "--t", "1", "--in", c});
  REQUIRE(pc.code == cli::kExitOk);
  CHECK(max_coeff_difference(cli::expansion_from_json(cli::json::parse(pc.out)), load(c)) == 0.0);

  // Chained calls equal the composed map.
  const std::string step = tmp.file("step.json");
  REQUIRE(run_cli({"apply", "--op", "heat", "--t", "0.3", "--in", in, "--out", step}).code == 0);
  const std::string step2 = tmp.file("step2.json");
  REQUIRE(run_cli({"apply", "--op", "riesz-2", "--in", step, "--out", step2}).code == 0);
  const Outcome last = run_cli({"apply", "--op", "riesz-adjoint-2", "--in", step2});
  REQUIRE(last.code == 0);
  const Expansion composed = riesz_adjoint(1, riesz(1, apply_heat(0.3, f)));
  CHECK(max_coeff_difference(cli::expansion_from_json(cli::json::parse(last.out)), composed) == 0.0);

  CHECK(run_cli({"apply", "--op", "laplace", "--in", in}).code == cli::kExitUsage);
  CHECK(run_cli({"apply", "--op", "riesz-3", "--in", in}).code == cli::kExitUsage);
  CHECK(run_cli({"apply", "--op", "poisson", "--in", in}).code == cli::kExitUsage);  // no --t
  CHECK(run_cli({"apply", "--op", "riesz-adjoint-1", "--in", in}).code == cli::kExitUsage);  // wrong basis
  CHECK(run_cli({"apply", "--op", "riesz-1", "--in", tmp.file("missing.json")}).code == cli::kExitUsage);
}

TEST_CASE("verify suites and exit codes") {
  TempDir tmp;
  for (const char* suite : {"exact", "numeric", "energy", "domination"}) {
    const std::string report = tmp.file(std::string(suite) + ".json");
    CHECK_MESSAGE(run_cli({"verify", suite, "--out", report}).code == cli::kExitOk, suite);
    const cli::json j = cli::json::parse(cli::read_file(report));
    CHECK(j["status"] == "PASS");
  }
  CHECK(run_cli({"verify", "kernels"}).code == cli::kExitOk);

  // Below the half-range the kernel inequality fails; that failure is the expected outcome.
  const std::string expected = tmp.file("expected.json");
  CHECK(run_cli({"verify", "kernels", "--alpha=-0.9", "--beta=-0.9", "--expect-violation", "--out", expected}).code ==
        cli::kExitOk);
  const std::string plain = tmp.file("plain.json");
  const Outcome fail = run_cli({"verify", "kernels", "--alpha=-0.9", "--beta=-0.9", "--out", plain});
  CHECK(fail.code == cli::kExitFail);
  CHECK(fail.err.find("FAIL") != std::string::npos);
  // The report is written either way.
  const cli::json j = cli::json::parse(cli::read_file(plain));
  CHECK(j["status"] == "FAIL");
  CHECK_FALSE(j["failed"].empty());

  // The flag in the half-range: no violation, so the expectation fails.
  CHECK(run_cli({"verify", "kernels", "--expect-violation"}).code == cli::kExitFail);
  CHECK(run_cli({"verify", "nonsense"}).code == cli::kExitUsage);
}

TEST_CASE("normprobe output is deterministic") {
  const std::vector<std::string> args{"normprobe", "--op", "riesz-1", "--p", "1.5,4", "--dim", "1,2",
                                      "--degree", "3", "--samples", "20", "--format", "csv"};
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(args);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(run_cli({"normprobe", "--op", "riesz-1", "--p", "0.5"}).code == cli::kExitUsage);
  CHECK(run_cli({"normprobe", "--op", "riesz-9", "--p", "2"}).code == cli::kExitUsage);
}

TEST_CASE("golden CSV files") {
  CHECK(run_cli({"kernels", "--alpha=0.5", "--beta=-0.5", "--grid", "5", "--t", "0.5,1", "--degree", "60", "--format",
                 "csv"})
            .out == golden("kernels_heat.csv"));
  CHECK(run_cli({"kernels", "--op", "modified-1", "--alpha=0", "--beta=0", "--grid", "5", "--t", "0.5", "--degree",
                 "60", "--format", "csv"})
            .out == golden("kernels_modified.csv"));
  CHECK(run_cli({"normprobe", "--op", "riesz-1", "--p", "1.5,4", "--dim", "1,2", "--degree", "3", "--samples", "20",
                 "--format", "csv"})
            .out == golden("normprobe_riesz.csv"));
  CHECK(run_cli({"normprobe", "--op", "poisson", "--t", "0.5", "--p", "2", "--dim", "1,2,3", "--degree", "3",
                 "--samples", "10", "--format", "csv"})
            .out == golden("normprobe_poisson.csv"));
}

TEST_CASE("expansion JSON round trip") {
  std::mt19937_64 rng(50);
  for (Basis b : {Basis::standard(), Basis::shifted_in(0), Basis::shifted_in(2)}) {
    const ParamVector p({0.1, -0.75, 2.5}, {1.0 / 3.0, 0.0, -0.2});
    const Expansion f = Expansion::random(p, b, 3, rng);
    const std::string text = cli::expansion_to_json(f).dump();
    const Expansion back = cli::expansion_from_json(cli::json::parse(text));
    CHECK(back.params() == p);
    CHECK(back.basis() == b);
    CHECK(back.degree_cap() == 3);
    CHECK(max_coeff_difference(back, f) == 0.0);
    CHECK(cli::expansion_to_json(back).dump() == text);
  }
  const cli::json j = cli::expansion_to_json(Expansion::single_mode(ParamVector::uniform(2, 0, 0), Basis::shifted_in(1),
                                                                    {0, 0}, 1.0, 1));
  CHECK(j["basis"]["shifted"] == 2);  // 1-based on disk

  for (const char* bad : {R"({"alpha":[0],"beta":[0],"basis":"standard","N":1})",
                          R"({"alpha":[0],"beta":[0,1],"basis":"standard","N":1,"coeffs":[]})",
                          R"({"alpha":[0],"beta":[0],"basis":{"shifted":0},"N":1,"coeffs":[]})",
                          R"({"alpha":[0],"beta":[0],"basis":"standard","N":1,"coeffs":[{"k":[2],"v":1}]})"}) {
    CHECK_THROWS_AS(cli::expansion_from_json(cli::json::parse(bad)), cli::ConfigError);
  }
}

TEST_CASE("csv numbers reload exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(cli::format_double(v)) == v);
  }
}

}  // TEST_SUITE
