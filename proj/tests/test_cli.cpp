#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fnoise/cli.hpp"
#include "fnoise/config.hpp"

using namespace fnoise;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  json report;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fnoise");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, json::parse(out.str()), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("rational and list parsing") {
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.075") == Rational(3, 40));
  CHECK(parse_rational("010") == 10);
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
  CHECK_THROWS_AS(parse_rational("x"), UsageError);
  CHECK(parse_filter_list("{1,2}, all ,p2").size() == 3);
  CHECK(parse_int_list("1, 2,3") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_cf("1,2", "all"), UsageError);
  const auto rates = parse_rates({"1=1/2,2=3", "3=0.25"});
  CHECK(rates.at(2) == 3);
  CHECK(rates.at(3) == Rational(1, 4));
}

TEST_CASE("moment model text") {
  const auto model = parse_model("1=1,0,1\n# comment\n2=gaussian");
  CHECK(model.at(1).at(2) == 1);
  CHECK(model.at(2).at(4) == 3);
  CHECK_THROWS_AS(parse_model("1"), UsageError);
  CHECK_THROWS_AS(parse_model(""), UsageError);
}

TEST_CASE("config file and environment") {
  const auto path = temp_file("fnoise_test.conf", "# truncation\nd = 3\ndelta = 1/3\nseed = 42\n");
  const auto config = load_config(path.string());
  CHECK(config.truncation.d == 3);
  CHECK(config.truncation.delta == Rational(1, 3));
  CHECK(config.seed == 42);

  setenv(kConfigEnv, path.c_str(), 1);
  CHECK(load_config(std::nullopt).truncation.d == 3);
  unsetenv(kConfigEnv);
  CHECK(load_config(std::nullopt).truncation.d == 2);

  const auto bad = temp_file("fnoise_bad.conf", "colour = 2\n");
  CHECK_THROWS_AS(load_config(bad.string()), UsageError);
  RunConfig loose;
  loose.tolerance = 0.1;
  CHECK_THROWS_AS(loose.validate(), UsageError);
}

TEST_CASE("cli partitions and limits") {
  auto r = run_cli({"partitions", "count", "--colors", "1,1,1,1", "--filters", "all,all,all,all", "--pairs"});
  CHECK(r.code == 0);
  CHECK(r.report["command"] == "partitions");
  CHECK(r.report["result"]["count"] == 3);

  r = run_cli({"partitions", "coarsest", "--colors", "1,2,1", "--filters", "all,{2},all", "--blocks", "1,2,3"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["partition"] == "{1}|{2}|{3}");

  r = run_cli({"poisson", "--colors", "1,1,1", "--filters", "empty,empty,empty", "--lambda", "1=2"});
  CHECK(r.report["result"]["value"] == "18");

  r = run_cli({"mfree", "--m", "3", "--n", "6"});
  CHECK(r.report["result"]["value"] == "5");
  CHECK(r.report.contains("timing_ms"));
}

TEST_CASE("cli moment and convolution cross-checks") {
  auto r = run_cli({"moment", "--labels", "1,2,1", "--colors", "1,1,1", "--filters", "all,empty,all",
                    "--moments", "1=1,1/2,1/3;2=1,2"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == "1/2");
  CHECK(r.report["passed"] == true);

  r = run_cli({"convolve", "--colors", "1,1,1,1", "--filters", "all,all,all,all", "--N", "3", "--bruteforce"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == r.report["result"]["bruteforce"]);
}

TEST_CASE("cli global flags override the config file") {
  const auto path = temp_file("fnoise_cli.conf", "M = 3\nn_max = 3\n");
  auto r = run_cli({"mfree-verify", "--config", path.string(), "--n-max", "2", "--check", "resolution"});
  CHECK(r.code == 0);
  CHECK(r.report["inputs"]["M"] == 3);
  CHECK(r.report["inputs"]["n_max"] == 2);
}

TEST_CASE("cli exit codes and error kinds") {
  auto r = run_cli({"partitions", "list", "--colors", "1", "--filters", "all,all"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "usage");

  r = run_cli({"partitions", "count", "--colors", "1,1,1,1,1,1,1,1,1,1,1,1,1",
               "--filters", "all,all,all,all,all,all,all,all,all,all,all,all,all"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "guard");

  r = run_cli({"fock-verify", "--check", "poisson", "--n-max", "3", "--poisson-n", "5"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "truncation");

  r = run_cli({"fock-verify", "--check", "nonsense"});
  CHECK(r.code == 2);

  r = run_cli({"mfree", "--m", "2"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "usage");
}

TEST_CASE("cli verification failures exit with one") {
  // Length-five Lambda words disagree with the plain partition sum.
  auto r = run_cli({"fock-verify", "--check", "poisson", "--poisson-n", "5", "--n-max", "5"});
  CHECK(r.code == 1);
  CHECK(r.report["passed"] == false);
  r = run_cli({"fock-verify", "--check", "poisson", "--poisson-n", "4", "--n-max", "4"});
  CHECK(r.code == 0);
}
