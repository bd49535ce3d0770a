#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = gseries::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gseries_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("table reproduces the error table") {
  Result r = run({"table"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"N", "delta_a8", "delta_tp"});
  CHECK(rows[1][0] == "3");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(6.65e-4).epsilon(0.02));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.12e-2).epsilon(0.02));
  CHECK(rows[4][0] == "20");
  CHECK(std::stod(rows[4][1]) <= 5e-16);
  CHECK(std::stod(rows[4][2]) == doctest::Approx(1.53e-8).epsilon(0.02));
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("table with a custom N list") {
  Result r = run({"table", "--n-list", "1"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(3.846e-2).epsilon(1e-3));
  CHECK(run({"table", "--n-list", "3,x"}).code == 1);
}

TEST_CASE("coeffs lists exact and decimal values") {
  Result r = run({"coeffs", "a8", "ln1p", "5"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 7);
  const char* exact[] = {"0", "2", "1", "2/3", "1/2", "2/5"};
  for (int n = 0; n <= 5; ++n) CHECK(rows[n + 1][1] == exact[n]);
  CHECK(rows[4][2] == "0.66666666666666663");

  Result flags = run({"coeffs", "--expansion", "a8", "--function", "ln1p", "--terms", "5"});
  CHECK(flags.out == r.out);

  Result json = run({"coeffs", "a5", "pow:1/5", "8", "--alpha", "2", "--format", "json"});
  REQUIRE(json.code == 0);
  auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["expansion"] == "a5");
  CHECK(doc["params"]["alpha"] == "2");
  CHECK(doc["N"] == 8);
  CHECK(doc["coefficients"][1]["num"] == "2");
  CHECK(doc["coefficients"][1]["den"] == "5");
}

TEST_CASE("eval at a point and on a grid") {
  Result r = run({"eval", "a1", "ln1p", "--at", "4"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "approx", "exact", "delta", "status"});
  CHECK(rows[1][1].substr(0, 12) == "1.6094379124");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(std::log(5.0)).epsilon(1e-15));

  Result grid = run({"eval", "a8", "ln1p", "7", "--grid", "-0.5:1:4"});
  REQUIRE(grid.code == 0);
  auto g = parse_csv(grid.out);
  REQUIRE(g.size() == 5);
  CHECK(g[1][0] == "-0.5");
  CHECK(g[4][0] == "1");

  Result json = run({"eval", "a1", "exp", "--at", "0", "--format", "json"});
  auto doc = nlohmann::json::parse(json.out);
  CHECK(doc[0]["approx"] == 1.0);
  CHECK(doc[0]["status"] == "ok");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"eval", "zz", "exp", "--at", "1"}).code == 1);
  CHECK(run({"eval", "a1", "cosh", "--at", "1"}).code == 1);
  CHECK(run({"eval", "a1", "exp"}).code == 1);
  CHECK(run({"eval", "a1", "exp", "--terms", "0", "--at", "1"}).code == 1);
  CHECK(run({"eval", "a1", "exp", "--grid", "0:1:0"}).code == 1);
  CHECK(run({"eval", "a5", "exp", "--alpha", "0", "--at", "1"}).code == 1);
  CHECK(run({"radius", "a8", "ln1p", "7"}).code == 1);
  CHECK(run({"coeffs", "a1", "exp", "--derivs", "/nonexistent/file.txt"}).code == 1);
  CHECK(run({"coeffs", "a1", "--derivs", "/nonexistent/file.txt"}).code == 3);
  CHECK(run({"table", "--out", "/nonexistent/dir/t.csv"}).code == 3);
  CHECK(run({"--help"}).code == 0);

  Result domain = run({"eval", "a1", "ln1p", "--grid", "-2:1:4"});
  CHECK(domain.code == 2);
  CHECK(domain.out.find("domain") != std::string::npos);
  CHECK_FALSE(domain.err.empty());
  CHECK(run({"eval", "a1", "ln1p", "--grid", "-0.5:1:4"}).code == 0);
}

TEST_CASE("radius reports R and the mapped interval") {
  Result r = run({"radius", "a8", "ln1p", "20"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][3]) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(std::stod(rows[1][4]) == doctest::Approx(-0.75).epsilon(1e-6));
  CHECK(rows[1][5] == "inf");
  Result one = run({"radius", "a1", "ln1p", "12"});
  CHECK(parse_csv(one.out)[1][3] == "inf");
}

TEST_CASE("compare evaluates families side by side") {
  Result r = run({"compare", "exp", "8", "--at", "0.5", "--families", "a1,a8,tp"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "exact", "a1", "a8", "tp"});
  for (int c = 2; c <= 4; ++c) CHECK(std::stod(rows[1][c]) == doctest::Approx(std::exp(0.5)).epsilon(1e-4));
  Result all = run({"compare", "--function", "sin", "--grid", "-2:2:5"});
  REQUIRE(all.code == 0);
  CHECK(parse_csv(all.out)[0].size() == 16);
}

TEST_CASE("user derivative files") {
  auto dir = scratch("derivs");
  auto path = dir / "cosh.txt";
  {
    std::ofstream f(path);
    for (int n = 0; n <= 10; ++n) f << (n % 2 == 0 ? "1" : "0") << '\n';
  }
  Result r = run({"eval", "tp", "--derivs", path.string(), "--terms", "10", "--at", "0.5"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(std::cosh(0.5)).epsilon(1e-12));
  CHECK(rows[1][2] == "nan");
}

TEST_CASE("figures: files, invariants and determinism") {
  auto dir = scratch("figures");
  Result r = run({"figures", "--out", dir.string()});
  REQUIRE(r.code == 0);
  auto index = parse_csv(r.out);
  CHECK(index.size() == 1 + 4 * 14 + 2);

  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto rows = parse_csv(slurp(entry.path()));
    CAPTURE(entry.path().filename().string());
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == std::vector<std::string>{"x", "approx", "exact", "status"});
    bool saw_zero = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][0] == "0") {
        saw_zero = true;
        CHECK(rows[i][1] == rows[i][2]);
      }
    }
    CHECK(saw_zero);
  }

  auto sin13 = parse_csv(slurp(dir / "sin_a13.csv"));
  for (std::size_t i = 1; i < sin13.size(); ++i) {
    CHECK(sin13[i][3] == "ok");
    CHECK(std::stod(sin13[i][1]) == doctest::Approx(std::stod(sin13[i][2])).epsilon(1e-15));
  }
  auto fifth = parse_csv(slurp(dir / "fifth_root_a5.csv"));
  CHECK(fifth[1][0] == "-1");
  CHECK(fifth.back()[0] == "6");

  auto again = scratch("figures_again");
  REQUIRE(run({"figures", "--out", again.string()}).code == 0);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CHECK(slurp(entry.path()) == slurp(again / entry.path().filename()));
  }
}

TEST_CASE("--out writes the file") {
  auto dir = scratch("out");
  auto path = dir / "table.csv";
  Result r = run({"table", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == run({"table"}).out);
}
