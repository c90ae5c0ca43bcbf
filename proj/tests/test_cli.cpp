// End-to-end checks of the installed command-line tool. The binary path
// arrives through the DICKE_CLI environment variable set by ctest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "dicke/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* path = std::getenv("DICKE_CLI");
  REQUIRE(path != nullptr);
  return path;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dicke_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

const std::string kSmallScan =
    "scan --n-atoms 4 --gamma-min 0.4 --gamma-max 0.6 --dgamma 0.02 --nmax 10 ";

}  // namespace

TEST_CASE("scan runs are byte identical") {
  TempDir tmp;
  CHECK(run(kSmallScan + "--out " + tmp.file("a.csv")) == 0);
  CHECK(run(kSmallScan + "--out " + tmp.file("b.csv") + " --workers 3") == 0);
  const std::string a = dicke::io::read_file(tmp.file("a.csv"));
  const std::string b = dicke::io::read_file(tmp.file("b.csv"));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) == "gamma,fidelity,chi_f,delta_p,energy,degenerate");
}

TEST_CASE("environment variable overrides --workers") {
  TempDir tmp;
  const std::string cmd = "DICKE_WORKERS=2 " + cli() + " " + kSmallScan + "--out " +
                          tmp.file("env.csv") + " --workers 1 > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const nlohmann::json manifest =
      nlohmann::json::parse(dicke::io::read_file(tmp.file("env.csv") + ".manifest.json"));
  CHECK(manifest["config"]["workers"] == 2);
}

TEST_CASE("emitted CSV round-trips byte identically") {
  TempDir tmp;
  REQUIRE(run(kSmallScan + "--out " + tmp.file("c.csv")) == 0);
  const std::string text = dicke::io::read_file(tmp.file("c.csv"));
  const auto points = dicke::io::parse_scan_csv(text);
  CHECK(dicke::io::scan_csv(points) == text);
}

TEST_CASE("manifest lists existing outputs") {
  TempDir tmp;
  REQUIRE(run(kSmallScan + "--out " + tmp.file("d.csv") + " --emit-plot") == 0);
  const nlohmann::json manifest =
      nlohmann::json::parse(dicke::io::read_file(tmp.file("d.csv") + ".manifest.json"));
  CHECK(manifest["tool"] == "dicke");
  CHECK(manifest["command"] == "scan");
  CHECK(manifest["outputs"].size() == 4);  // csv + three plot scripts
  for (const auto& out : manifest["outputs"]) {
    CHECK(fs::exists(out.get<std::string>()));
  }
  CHECK(manifest.contains("timings"));
  CHECK(manifest["solver"]["failed_points"].empty());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("scan --n-atoms 4") == 2);                    // missing required flags
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run(kSmallScan + "--n-atoms 0 --out /tmp/x.csv") == 2);  // invalid params
  TempDir tmp;
  // dgamma bigger than a tenth of the span
  CHECK(run("scan --n-atoms 2 --gamma-min 0.4 --gamma-max 0.5 --dgamma 0.05 --out " +
            tmp.file("x.csv")) == 2);
  // exponents needs enough atom numbers for the fits
  CHECK(run("exponents --n-list 100 --gamma-min 0.5 --gamma-max 0.6 --dgamma 0.001 "
            "--out " + tmp.file("r.json")) == 2);
  // collapse without data
  CHECK(run("collapse --n-list 100 --out " + tmp.file("c.csv")) == 2);
  CHECK(run("collapse --n-list 100 --inputs " + tmp.file("absent.csv") + " --out " +
            tmp.file("c.csv")) == 2);
}

TEST_CASE("converge reports the minimal truncation") {
  TempDir tmp;
  CHECK(run("converge --n-atoms 2 --gamma 0 --tolerance 1e-8 --out " +
            tmp.file("conv.json")) == 0);
  const nlohmann::json report =
      nlohmann::json::parse(dicke::io::read_file(tmp.file("conv.json")));
  CHECK(report["converged"] == true);
  CHECK(report["n_max"] == 0);
  CHECK(report["ladder"][0]["delta_p"].get<double>() == 0.0);

  // unreachable tolerance inside a tiny ceiling
  CHECK(run("converge --n-atoms 4 --gamma 0.55 --tolerance 1e-300 --nmax-ceiling 2") == 4);
}

TEST_CASE("oracle check agrees and guards its range") {
  CHECK(run("oracle-check --n-atoms 1 --gamma-list 0 --cutoff 20") == 0);
  CHECK(run("oracle-check --n-atoms 2 --gamma-list 0,0.45,0.7 --nmax 30") == 0);
  CHECK(run("oracle-check --n-atoms 13 --gamma-list 0.1") == 2);
}

TEST_CASE("collapse consumes prior scan files") {
  TempDir tmp;
  const std::string scan100 =
      "scan --n-atoms 8 --gamma-min 0.35 --gamma-max 0.75 --dgamma 0.02 --nmax 14 --out ";
  REQUIRE(run(scan100 + tmp.file("n8.csv")) == 0);
  REQUIRE(run("scan --n-atoms 10 --gamma-min 0.35 --gamma-max 0.75 --dgamma 0.02 "
              "--nmax 14 --out " + tmp.file("n10.csv")) == 0);
  CHECK(run("collapse --n-list 8,10 --inputs " + tmp.file("n8.csv") + "," +
            tmp.file("n10.csv") + " --nu 0.6667 --out " + tmp.file("coll.csv") +
            " --emit-plot") == 0);
  const std::string csv = dicke::io::read_file(tmp.file("coll.csv"));
  CHECK(csv.substr(0, csv.find('\n')) == "n_atoms,x,y");
  CHECK(fs::exists(tmp.file("coll.gp")));
}

TEST_CASE("config file supplies defaults that flags override") {
  TempDir tmp;
  dicke::io::write_file(tmp.file("scan.cfg"),
                        "n-atoms=4\ngamma-min=0.4\ngamma-max=0.6\ndgamma=0.02\nnmax=10\n");
  CHECK(run("scan --config " + tmp.file("scan.cfg") + " --out " + tmp.file("cfg.csv")) == 0);
  // flag wins over the file
  CHECK(run("scan --config " + tmp.file("scan.cfg") + " --nmax 12 --out " +
            tmp.file("cfg2.csv")) == 0);
  const nlohmann::json manifest =
      nlohmann::json::parse(dicke::io::read_file(tmp.file("cfg2.csv") + ".manifest.json"));
  CHECK(manifest["config"]["nmax"] == 12);
}
