#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#ifndef BOHR_CLI_PATH
#error "BOHR_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(BOHR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json parse(const std::string& s) {
  return nlohmann::json::parse(s);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/bohr_cli_test_") + name;
}

}  // namespace

TEST_CASE("radius: classical third") {
  const auto r = run(
      "radius --theorem generalized --p 1 --phi monomial --Phi zero");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.out);
  CHECK(std::abs(j.at("value").get<double>() - 1.0 / 3.0) < 1e-9);
  CHECK(j.at("mode") == "verified-series");
  // at least 9 significant digits survive the JSON round trip
  CHECK(r.out.find("0.33333333333") != std::string::npos);
}

TEST_CASE("radius: prior golden constant") {
  const auto r = run("radius --theorem prior --name R_N --N 1");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.out);
  CHECK(std::abs(j.at("value").get<double>() - 0.2360679775) < 1e-9);
}

TEST_CASE("radius: degenerate fbeta exits 2") {
  const auto r = run("radius --theorem fbeta --beta 0 --phi shifted");
  CHECK(r.exit_code == 2);
}

TEST_CASE("radius: config file positional") {
  const std::string path = temp_path("radius.json");
  {
    std::ofstream f(path);
    f << R"({"theorem":"generalized","p":2,"phi":"monomial","Phi":"zero"})";
  }
  const auto r = run("radius " + path);
  CHECK(r.exit_code == 0);
  CHECK(std::abs(parse(r.out).at("value").get<double>() - 0.5) < 1e-9);
  // inline flags overlay the file
  const auto overlaid = run("radius " + path + " --p 1");
  CHECK(overlaid.exit_code == 0);
  CHECK(std::abs(parse(overlaid.out).at("value").get<double>() - 1.0 / 3.0) <
        1e-9);
  std::remove(path.c_str());
}

TEST_CASE("schema-invalid configs are rejected with exit 1") {
  CHECK(run("radius --theorem nope").exit_code == 1);
  CHECK(run("radius --phi monomial").exit_code == 1);  // theorem missing
  const std::string path = temp_path("bad.json");
  {
    std::ofstream f(path);
    f << R"({"theorem":"generalized","p":1,"phi":"monomial","bogus":3})";
  }
  CHECK(run("radius " + path).exit_code == 1);
  {
    std::ofstream f(path);
    f << "not json";
  }
  CHECK(run("radius " + path).exit_code == 1);
  std::remove(path.c_str());
  CHECK(run("radius --theorem generalized --p 1 --phi no-such-kind")
            .exit_code == 1);
}

TEST_CASE("table1 csv header and row count") {
  const auto r = run("table1 --format csv --mode verified-series");
  CHECK(r.exit_code == 0);
  const auto rows = lines(r.out);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "row,beta,computed,paper,delta,mode");
  CHECK(rows.size() == 37);  // header + 36 cells
}

TEST_CASE("table1 exit-code contract") {
  // Verified-series mode reports the second-row discrepancy and exits 0.
  CHECK(run("table1 --mode verified-series").exit_code == 0);
  const auto j = parse(run("table1 --mode verified-series").out);
  CHECK(j.at("r2_discrepancy") == true);
  // Paper-printed mode exits nonzero: four published cells sit farther
  // than 5e-4 from the true roots of their own equations.
  const auto printed = run("table1 --mode paper-printed");
  CHECK(printed.exit_code == 1);
  const auto pj = parse(printed.out);
  CHECK(pj.at("all_within_5e-4") == false);
  CHECK(pj.at("max_abs_deviation").get<double>() < 1e-3);
}

TEST_CASE("eval: refined identity") {
  const auto r = run(
      R"(eval --f '{"kind":"blaschke_point","a":0.5}' )"
      R"(--instance 'refined-I(i)(a)' --r 0.4)");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(parse(r.out).at("value").get<double>() - 1.0) < 1e-9);
}

TEST_CASE("curve: harmonic column is monotone") {
  const auto r = run(
      R"(curve --format csv --instance )"
      R"('{"family":"harmonic","beta":0.3,"m":1,"N":1}' )"
      R"(--r-max 0.6 --steps 60)");
  CHECK(r.exit_code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 62);  // header + 61 points
  CHECK(rows[0] == "r,value,bound");
  double prev = -1.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    std::istringstream row(rows[i]);
    std::string r_str, v_str;
    std::getline(row, r_str, ',');
    std::getline(row, v_str, ',');
    const double v = std::stod(v_str);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("sharpness: classical confirms") {
  const auto r = run("sharpness --instance classical");
  CHECK(r.exit_code == 0);
  CHECK(parse(r.out).at("verdict") == "sharp-confirmed");
}

TEST_CASE("sharpness: table-backed probe defaults to inconclusive") {
  const auto r = run("sharpness --instance refined_skip0");
  CHECK(r.exit_code == 0);
  CHECK(parse(r.out).at("verdict") == "inconclusive");
}

TEST_CASE("verify: seed 42 passes") {
  const auto r = run("verify --seed 42");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.out);
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("checks").size() >= 12);
  for (const auto& c : j.at("checks")) {
    CHECK(c.at("violations").get<int>() == 0);
    CHECK(c.contains("worst_margin"));
  }
}

TEST_CASE("output is bit-identical across runs") {
  const std::string cmd =
      "radius --theorem harmonic --beta 0.3 --m 1 --N 2 --mu 1 --lambda 1";
  CHECK(run(cmd).out == run(cmd).out);
  CHECK(run("verify --seed 42").out == run("verify --seed 42").out);
  CHECK(run("table1 --format csv --mode verified-series").out ==
        run("table1 --format csv --mode verified-series").out);
}

TEST_CASE("--out writes the result to a file") {
  const std::string path = temp_path("out.json");
  const auto r = run("radius --theorem prior --name bohr --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(std::abs(parse(buf.str()).at("value").get<double>() - 1.0 / 3.0) <
        1e-12);
  std::remove(path.c_str());
}

TEST_CASE("markdown format renders") {
  const auto r = run("table1 --format md --mode verified-series");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("| R1 | computed |") != std::string::npos);
  CHECK(r.out.find("| R2 | delta |") != std::string::npos);
}

#ifdef BOHR_SCHEMA_PATH
TEST_CASE("published config schema parses and names the contract") {
  std::ifstream f(BOHR_SCHEMA_PATH);
  REQUIRE(f.good());
  nlohmann::json schema;
  f >> schema;
  CHECK(schema.contains("oneOf"));
  const std::string dumped = schema.dump();
  for (const char* needle :
       {"paper-printed", "verified-series", "blaschke_point",
        "harmonic_extremal", "coeff_table", "custom-table", "theorem"}) {
    CHECK(dumped.find(needle) != std::string::npos);
  }
}
#endif
