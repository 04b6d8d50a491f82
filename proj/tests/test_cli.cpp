// Runs the built sparsepow executable and checks its output and exit codes.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "sparsepow/certificate.hpp"
#include "sparsepow/driver.hpp"
#include "sparsepow/lattice.hpp"

namespace fs = std::filesystem;
using namespace sparsepow;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SPARSEPOW_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string run_stderr(const std::string& args) {
  const std::string cmd = std::string(SPARSEPOW_CLI_PATH) + " " + args + " 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string err;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) err.append(buf, got);
  pclose(pipe);
  return err;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sparsepow_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

BoundaryPolicy periodic_policy(LatticeModelParams params) {
  return [params](const Window& w) { return periodic_boundary(w, params); };
}

}  // namespace

TEST_CASE("approx prints the library certificate") {
  TempDir dir;
  const auto cfg = dir.write("lat.json", R"({"kind": "lattice", "a": 1, "b": 1})");

  auto r = run("approx " + cfg + " --alpha 1 --m 0 --n 1 --tol 1e-12");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value_re"].get<double>() == -1.0);
  CHECK(j["bound"].get<double>() == 0.0);

  r = run("approx " + cfg + " --alpha -0.5 --m 0 --n 0 --tol 1e-6");
  CHECK(r.status == 0);
  j = nlohmann::json::parse(r.out);
  const LatticeModelParams unit{1.0, 1.0};
  const auto lib = approximate_element(lattice_spec(unit), periodic_policy(unit), -0.5, 0, 0, 1e-6);
  CHECK(j["value_re"].get<double>() == lib.value.real());
  CHECK(j["bound"].get<double>() == lib.bound);
  CHECK(j["P"].get<Index>() == lib.window.P());
  CHECK(j["j_pq"].get<Index>() == lib.depth.j_pq);
  CHECK(r.out == format_certificate(lib) + "\n");

  // Byte-identical across runs.
  CHECK(run("approx " + cfg + " --alpha -0.5 --m 0 --n 0 --tol 1e-6").out == r.out);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto lat = dir.write("lat.json", R"({"kind": "lattice", "a": 1, "b": 1})");
  const auto c0 = dir.write("c0.json", R"({"kind": "banded", "offsets": [-1, 0, 1], "stencil": [-1, 2, -1],
                                           "envelope": {"c": 0, "norm_bound": 4}})");
  const auto bad = dir.write("bad.json", R"({"kind": "lattice", "a": 1})");

  const auto not_converged = run("approx " + lat + " --alpha -0.5 --m 0 --n 0 --tol 1e-12 --max-dim 100");
  CHECK(not_converged.status == 2);
  CHECK(nlohmann::json::parse(not_converged.out).contains("bound"));  // best certificate still printed

  CHECK(run("approx " + c0 + " --alpha -1 --m 0 --n 0 --tol 1e-6").status == 3);
  CHECK(run_stderr("approx " + c0 + " --alpha -1 --m 0 --n 0 --tol 1e-6").find("divergent") != std::string::npos);
  CHECK(run("approx " + c0 + " --alpha 0.5 --m 0 --n 0 --tol 1e-1").status == 0);

  CHECK(run("approx " + bad + " --alpha 1 --m 0 --n 0 --tol 1e-6").status == 3);
  CHECK(run_stderr("approx " + bad + " --alpha 1 --m 0 --n 0 --tol 1e-6").find("'b'") != std::string::npos);
  CHECK(run("approx " + lat + " --alpha x --m 0 --n 0 --tol 1e-6").status == 3);
  CHECK(run("approx " + lat + " --m 0 --n 0 --tol 1e-6").status == 3);
  CHECK(run("frobnicate").status == 3);
}

TEST_CASE("table output") {
  TempDir dir;
  const auto cfg = dir.write("lat.json", R"({"kind": "lattice", "a": 1, "b": 1})");
  const auto r = run("table " + cfg + " --alpha 0.5 --m 0 --n 0 --windows 4,8,16:20,32");
  CHECK(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "P,Q,value_re,value_im,j_pq,bound");
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    REQUIRE(f.size() == 6);
    const double bound = std::stod(f[5]);
    CHECK(bound < prev);
    prev = bound;
  }
  CHECK(fields(rows[3])[0] == "16");
  CHECK(fields(rows[3])[1] == "20");
  CHECK(run("table " + cfg + " --alpha 0.5 --m 0 --n 0 --windows 4,8,16:20,32").out == r.out);

  const auto mixed = run("table " + cfg + " --alpha 0.5 --m 3 --n 3 --windows 1,5");
  CHECK(mixed.status == 0);
  const auto mrows = lines(mixed.out);
  REQUIRE(mrows.size() == 3);
  CHECK(mrows[1] == "1,1,nan,nan,nan,nan");
  CHECK(run("table " + cfg + " --alpha 0.5 --m 0 --n 0 --windows 4:x").status == 3);
}

TEST_CASE("solve output") {
  TempDir dir;
  const auto cfg = dir.write("lat.json", R"({"kind": "lattice", "a": 1, "b": 1})");
  const auto rhs = dir.write("f.txt", "# point source\n0 1 0\n");
  const auto r = run("solve " + cfg + " --rhs " + rhs + " --out 0,1 --tol 1e-9");
  CHECK(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "index,value_re,value_im,bound");
  const auto f0 = fields(rows[1]);
  CHECK(f0[0] == "0");
  CHECK(std::abs(std::stod(f0[1]) - 1.0 / std::sqrt(5.0)) <= std::stod(f0[3]));
  CHECK(std::stod(f0[3]) <= 1e-9);

  const auto massless = dir.write("m.json", R"({"kind": "lattice", "a": 0, "b": 1})");
  CHECK(run("solve " + massless + " --rhs " + rhs + " --out 0 --tol 1e-9").status == 3);
}

TEST_CASE("example output") {
  const auto r = run("example --a 0.01 --b 1 --alpha -0.5 --sizes 33,65,129");
  CHECK(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "N,value,reference,abs_error,bound");
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double err = std::stod(fields(rows[i])[3]);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(run("example").status == 0);
  CHECK(run("example --a 0").status == 3);
}
