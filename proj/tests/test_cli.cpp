#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "wexpfam/estimators.hpp"
#include "wexpfam/io.hpp"
#include "wexpfam/random.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* cli_path() { return std::getenv("SIMCLI_BIN"); }

CliResult run_cli(const std::string& args) {
  CliResult result;
  const std::string out_path = "wexpfam_cli_stdout.txt";
  const std::string err_path = "wexpfam_cli_stderr.txt";
  const std::string command =
      std::string(cli_path()) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

// First data row of a two-line CSV as a name -> value map.
std::vector<std::pair<std::string, std::string>> parse_wide_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  const auto names = wexpfam::split_list(header);
  const auto values = wexpfam::split_list(row);
  REQUIRE(names.size() == values.size());
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], values[i]);
  return out;
}

std::string field(const std::vector<std::pair<std::string, std::string>>& row,
                  const std::string& name) {
  for (const auto& [key, value] : row) {
    if (key == name) return value;
  }
  FAIL("missing CSV column ", name);
  return {};
}

}  // namespace

TEST_CASE("cli: estimate on the three-point sample") {
  REQUIRE(cli_path() != nullptr);
  {
    std::ofstream data("wexpfam_cli_data.txt");
    data << "# three points\n0.5\n1\n2\n";
  }
  const auto result = run_cli("estimate --model gamma --data wexpfam_cli_data.txt");
  CHECK(result.exit_code == 0);
  const auto row = parse_wide_csv(result.out);
  CHECK(std::stod(field(row, "mu_hat")) == doctest::Approx(3.3662884287409146).epsilon(1e-12));
  CHECK(std::stod(field(row, "sigma_hat")) ==
        doctest::Approx(0.85714285714285714).epsilon(1e-12));
  CHECK(std::stod(field(row, "alpha_hat")) == doctest::Approx(3.3662884287409146).epsilon(1e-12));
  std::remove("wexpfam_cli_data.txt");
}

TEST_CASE("cli: malformed data line is a data error citing the line") {
  {
    std::ofstream data("wexpfam_cli_bad.txt");
    data << "1\n2\n3\n4\n5\n6\nabc\n8\n";
  }
  const auto result = run_cli("estimate --model gamma --data wexpfam_cli_bad.txt");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find(":7") != std::string::npos);
  std::remove("wexpfam_cli_bad.txt");

  {
    std::ofstream data("wexpfam_cli_neg.txt");
    data << "1\n2\n-3\n";
  }
  const auto negative = run_cli("estimate --model gamma --data wexpfam_cli_neg.txt");
  CHECK(negative.exit_code == 2);
  CHECK(negative.err.find(":3") != std::string::npos);
  std::remove("wexpfam_cli_neg.txt");
}

TEST_CASE("cli: usage errors") {
  CHECK(run_cli("estimate --data nope.txt").exit_code == 1);          // missing --model
  CHECK(run_cli("nonsense").exit_code == 1);                          // unknown subcommand
  CHECK(run_cli("sample --model no_such --params a=1 --n 3 --seed 1 --out x.txt").exit_code == 1);
}

TEST_CASE("cli: estimation failure exit code") {
  {
    std::ofstream data("wexpfam_cli_ones.txt");
    for (int i = 0; i < 8; ++i) data << "1\n";
  }
  const auto result =
      run_cli("estimate --model weighted_inverse_lindley --data wexpfam_cli_ones.txt");
  CHECK(result.exit_code == 3);
  std::remove("wexpfam_cli_ones.txt");
}

TEST_CASE("cli: sample writes full-precision draws that estimate recovers") {
  const auto sampled = run_cli(
      "sample --model weighted_inverse_lindley --params lambda=1,phi=1 --n 100000 --seed 42 "
      "--out wexpfam_cli_draws.txt");
  REQUIRE(sampled.exit_code == 0);

  // Bit-exact against the library path.
  const auto expected =
      wexpfam::sample(wexpfam::FamilySpec(1.0, 1), wexpfam::Params(1.0, 1.0), 100000, {42, 0});
  std::ifstream in("wexpfam_cli_draws.txt");
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    REQUIRE(i < expected.size());
    CHECK(std::stod(line) == expected[i]);
    ++i;
  }
  CHECK(i == expected.size());

  const auto fitted = run_cli(
      "estimate --model weighted_inverse_lindley --data wexpfam_cli_draws.txt --bootstrap 50 "
      "--mle --seed 5");
  REQUIRE(fitted.exit_code == 0);
  const auto row = parse_wide_csv(fitted.out);
  CHECK(std::stod(field(row, "lambda_hat")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::stod(field(row, "phi_hat")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::stod(field(row, "lambda_boot")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::stod(field(row, "mu_mle")) == doctest::Approx(1.0).epsilon(0.02));
  std::remove("wexpfam_cli_draws.txt");
}

TEST_CASE("cli: sample/estimate pipeline is consistent at n = 10^6") {
  const auto sampled = run_cli(
      "sample --model weighted_inverse_lindley --params lambda=1,phi=1 --n 1000000 --seed 42 "
      "--out wexpfam_cli_big.txt");
  REQUIRE(sampled.exit_code == 0);
  const auto fitted =
      run_cli("estimate --model weighted_inverse_lindley --data wexpfam_cli_big.txt");
  REQUIRE(fitted.exit_code == 0);
  const auto row = parse_wide_csv(fitted.out);
  CHECK(std::stod(field(row, "lambda_hat")) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::stod(field(row, "phi_hat")) == doctest::Approx(1.0).epsilon(0.01));
  std::remove("wexpfam_cli_big.txt");
}

TEST_CASE("cli: moments prints the population h-vector") {
  const auto result =
      run_cli("moments --model weighted_inverse_lindley --params lambda=1,phi=1 --q 0,-1");
  REQUIRE(result.exit_code == 0);
  std::istringstream in(result.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "quantity,value");
  bool saw_h4 = false, saw_q = false;
  while (std::getline(in, line)) {
    if (line.rfind("h4,", 0) == 0) {
      saw_h4 = true;
      CHECK(std::stod(line.substr(3)) == doctest::Approx(1.5).epsilon(1e-14));
    }
    if (line.rfind("moment[q=0],", 0) == 0) {
      saw_q = true;
      CHECK(std::stod(line.substr(12)) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK(saw_h4);
  CHECK(saw_q);
}

TEST_CASE("cli: simulate writes deterministic CSVs") {
  {
    std::ofstream cfg("wexpfam_cli_scenario.cfg");
    cfg << "model = weighted_inverse_lindley\n"
           "lambda = 1\n"
           "phi = 1, 3\n"
           "n = 20\n"
           "N = 10\n"
           "B = 8\n"
           "estimators = mom, mom_boot\n";
  }
  const auto first =
      run_cli("simulate --config wexpfam_cli_scenario.cfg --out wexpfam_cli_out1 --seed 7 "
              "--threads 1");
  REQUIRE(first.exit_code == 0);
  const auto second =
      run_cli("simulate --config wexpfam_cli_scenario.cfg --out wexpfam_cli_out2 --seed 7 "
              "--threads 2");
  REQUIRE(second.exit_code == 0);
  CHECK(slurp("wexpfam_cli_out1/metrics.csv") == slurp("wexpfam_cli_out2/metrics.csv"));
  CHECK(slurp("wexpfam_cli_out1/estimates.csv") == slurp("wexpfam_cli_out2/estimates.csv"));
  CHECK(!slurp("wexpfam_cli_out1/metrics.csv").empty());
  [[maybe_unused]] const int rc =
      std::system("rm -rf wexpfam_cli_out1 wexpfam_cli_out2 wexpfam_cli_scenario.cfg");
}
