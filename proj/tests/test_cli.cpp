#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aggmd/experiments.hpp"
#include "aggmd/table.hpp"
#include "cli.hpp"

using namespace aggmd;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("aggmd_cli_" + name);
}

bool one_error_line(const std::string& err, int code) {
  return err.rfind("error: code=" + std::to_string(code) + " ", 0) == 0 &&
         err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("p0 prints a value just below one") {
  const auto r = run({"p0", "--n", "20", "--m", "60"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto t = read_csv(in, p0_columns());
  const double p0 = *t.at(0, "p0");
  CHECK(p0 < 1.0);
  CHECK(1.0 - p0 == doctest::Approx(4.5542358658e-11).epsilon(1e-4));
}

TEST_CASE("figure 2 writes a file with the documented header") {
  const auto path = temp_path("fig2.csv");
  std::filesystem::remove(path);
  const auto r = run({"figure", "--id", "2", "--out", path.string(), "--realizations", "200", "--seed", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(std::filesystem::exists(path));
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  std::string want;
  for (const auto& c : md_vs_x_columns()) want += (want.empty() ? "" : ",") + c;
  CHECK(header == want);
  std::filesystem::remove(path);
}

TEST_CASE("global flags may follow the subcommand and JSON is available") {
  const auto r = run({"rrs-md", "--theta-db", "0", "--x", "0.5,0.99", "--format", "json", "--realizations", "100"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto t = read_json(in, rrs_md_columns());
  CHECK(t.rows.size() == 2);
  CHECK(r.out.find("\"seed\": 1") != std::string::npos);
}

TEST_CASE("same seed gives byte-identical output at 1 and 8 workers") {
  const auto a = temp_path("w1.csv");
  const auto b = temp_path("w8.csv");
  REQUIRE(run({"figure", "--id", "2", "--seed", "11", "--realizations", "300", "--workers", "1", "--out", a.string()}).code == 0);
  REQUIRE(run({"figure", "--id", "2", "--seed", "11", "--realizations", "300", "--workers", "8", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("config files feed the pipelines and flags override them") {
  const auto conf = temp_path("run.conf");
  {
    std::ofstream o(conf);
    o << "theta_db = -5\nx = 0.9, 0.999\nschemes = RRS\nn_realizations = 50\nm_grid = 0, 60\n";
  }
  const auto r = run({"--config", conf.string(), "crs-md", "--realizations", "20"});
  // CRS is forced on by the crs-md subcommand
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  CHECK(read_csv(in, crs_md_columns()).rows.size() == 2);

  const auto rate = run({"rate-vs-m", "--config", conf.string(), "--u", "0.95", "--x", "0.99"});
  REQUIRE(rate.code == 0);
  std::istringstream rin(rate.out);
  const auto t = read_csv(rin, rate_vs_m_columns({0.95}));
  CHECK(t.rows.size() == 2);
  CHECK(std::isinf(*t.at(0, "rate_rrs_u0.95")));
  std::filesystem::remove(conf);
}

TEST_CASE("errors map to exit codes with one machine-parsable line") {
  auto r = run({"p0", "--bogus"});
  CHECK(r.code == 1);
  CHECK(one_error_line(r.err, 1));

  r = run({});
  CHECK(r.code == 1);
  CHECK(one_error_line(r.err, 1));

  r = run({"figure", "--id", "7"});
  CHECK(r.code == 1);

  r = run({"--config", "/nonexistent/x.conf", "p0"});
  CHECK(r.code == 3);
  CHECK(one_error_line(r.err, 3));
  CHECK(r.err.find("kind=io") != std::string::npos);

  r = run({"p0", "--out", "/nonexistent/dir/p0.csv"});
  CHECK(r.code == 3);

  r = run({"rrs-md", "--x", "0.5,0.5"});
  CHECK(r.code == 1);
  CHECK(one_error_line(r.err, 1));

  r = run({"figure", "--id", "2", "--interference-model", "exotic"});
  CHECK(r.code == 1);

  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rate-vs-m") != std::string::npos);
}
