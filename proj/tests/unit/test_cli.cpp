#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"

#include "cli.hpp"
#include "canonsys/errors.hpp"

namespace fs = std::filesystem;
using namespace canonsys::cli;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "canonsys");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  auto req = parse_command_line(static_cast<int>(argv.size()), argv.data(), out, err, code);
  if (req) code = run(*req, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(CANONSYS_TEST_DATA) + "/" + name; }

fs::path scratch(const char* name) {
  const fs::path p = fs::temp_directory_path() / ("canonsys_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("grid and window specs") {
  auto g = parse_grid("0:1:5");
  CHECK(g.count == 5);
  auto pts = g.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts[1] == doctest::Approx(0.25));
  CHECK(pts.back() == 1.0);
  CHECK_THROWS_AS(parse_grid("0:1"), canonsys::Error);
  CHECK_THROWS_AS(parse_grid("0:1:0"), canonsys::Error);
  auto w = parse_window("-5,7.5");
  CHECK(w.first == -5.0);
  CHECK(w.second == 7.5);
  CHECK_THROWS_AS(parse_window("3,1"), canonsys::Error);
}

TEST_CASE("solve-periodic emits the expected h column") {
  auto r = invoke({"solve-periodic", "--input", data("one_plus_cos.json"), "--steps", "8"});
  REQUIRE(r.code == Ok);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_lo,t_hi,h11,h12,h22");
  const double expected[] = {1.0, 1.0 / 3, 2.0 / 3, 2.0 / 5, 3.0 / 5, 3.0 / 7, 4.0 / 7, 4.0 / 9};
  int row = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c < 3; ++c) std::getline(cells, cell, ',');
    CHECK(std::abs(std::stod(cell) - expected[row]) < 1e-10);
    ++row;
  }
  CHECK(row == 8);
}

TEST_CASE("dual of a constant measure") {
  const fs::path in = scratch("flat.json");
  std::ofstream(in) << R"({"type":"periodic","density":[{"k":0,"re":4.0,"im":0.0}]})";
  auto r = invoke({"dual", "--input", in.string(), "--moments", "4"});
  REQUIRE(r.code == Ok);
  CHECK(r.out.find("\"moments_only\": true") != std::string::npos);
  CHECK(r.out.find("0.25") != std::string::npos);
  fs::remove(in);
}

TEST_CASE("verify on the solved 1+cos x Hamiltonian passes") {
  auto r = invoke({"verify", "--input", data("one_plus_cos.json")});
  CHECK(r.code == Ok);
  CHECK(r.out.find("residuals") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto bad = invoke({"solve-periodic", "--input", data("malformed.json")});
  CHECK(bad.code == ValidationError);
  CHECK(bad.err.find("line") != std::string::npos);
  CHECK(bad.err.find("column") != std::string::npos);
  CHECK(invoke({"solve-periodic", "--input", "/nonexistent/file.json"}).code == ValidationError);
  CHECK(invoke({"solve-periodic", "--bogus"}).code == ValidationError);
  CHECK(invoke({}).code == ValidationError);
  CHECK(invoke({"--help"}).code == Ok);
  const fs::path in = scratch("unknown.json");
  std::ofstream(in) << R"({"type":"line","lebesgue":1.0,"extra":0})";
  CHECK(invoke({"solve-atomic", "--input", in.string()}).code == ValidationError);
  fs::remove(in);
  // the free Hamiltonian does not represent 1+cos x
  const fs::path wrong = scratch("free.csv");
  std::ofstream(wrong) << "t_lo,t_hi,h11,h12,h22\n0,20,1,0,1\n";
  auto strict = invoke({"verify", "--input", data("one_plus_cos.json"), "--hamiltonian", wrong.string()});
  CHECK(strict.code == NumericalError);
  CHECK(strict.err.find("exceeds tolerance") != std::string::npos);
  fs::remove(wrong);
}

TEST_CASE("identical requests give byte-identical files") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto& p : {a, b})
    CHECK(invoke({"solve-atomic", "--input", data("soliton.json"), "--grid", "0.1:5:40", "--output", p.string()}).code ==
          Ok);
  const std::string sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
  CHECK(sa.rfind("t,h11,h12,h22\n", 0) == 0);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("other subcommands run") {
  CHECK(invoke({"opuc-check", "--input", data("one_plus_cos.json"), "--steps", "12"}).code == Ok);
  auto pw = invoke({"diagnose-pw", "--input", data("soliton.json"), "--window", "0,60"});
  CHECK(pw.code == Ok);
  CHECK(pw.out.find("consistent-with-PW") != std::string::npos);
  auto de = invoke({"direct-eval", "--input", data("one_plus_cos.json"), "--grid", "-1:1:5", "--chain-time", "3"});
  CHECK(de.code == Ok);
  auto mz = invoke({"direct-eval", "--input", data("one_plus_cos.json"), "--grid", "-1:1:5", "--chain-time", "3",
                    "--matrizant"});
  CHECK(mz.code == Ok);
}
