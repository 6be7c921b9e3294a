#include "regprod/cli.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace regprod;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Sets an environment variable for the lifetime of the guard.
class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvGuard() { ::unsetenv(name_); }
  EnvGuard(const EnvGuard&) = delete;
  EnvGuard& operator=(const EnvGuard&) = delete;

 private:
  const char* name_;
};

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / ("regprod_test_" + name);
  std::ofstream(path) << text;
  return path;
}

int significant_digits(const std::string& value) {
  int count = 0;
  bool leading = true;
  for (char ch : value.substr(0, value.find('e'))) {
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

const std::string kSpecDir = REGPROD_SPEC_DIR;

}  // namespace

TEST_CASE("compute examples") {
  Outcome r = run_cli({"compute", "--sequence", "fibonacci", "--digits", "10", "--route", "closed-form", "--format",
                       "json"});
  REQUIRE(r.code == cli::kOk);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["routes"][0]["value"] == "0.8992126808");
  CHECK(doc["routes"][0]["route"] == "closed-form");

  r = run_cli({"compute", "--sequence", "geometric", "--growth-ratio", "2", "--amplitude", "1", "--digits", "10",
               "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["routes"].size() == 2);
  CHECK(doc["routes"][0]["value"] == "0.9438743127");
  CHECK(doc["routes"][1]["value"] == "0.9438743127");
  CHECK(doc["pass"] == true);

  r = run_cli({"compute", "--sequence", "integers", "--digits", "10"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("2.506628275") != std::string::npos);

  r = run_cli({"compute", "--spec-file", kSpecDir + "/pell.spec", "--digits", "15", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(nlohmann::json::parse(r.out)["sequence"] == "pell");
}

TEST_CASE("constant") {
  Outcome r = run_cli({"constant", "golden-mean", "--digits", "10"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "1.618033989\n");
  r = run_cli({"constant", "fibonacci-factorial", "--digits", "10"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "1.226742011\n");
  r = run_cli({"constant", "fibonacci-factorial", "--digits", "30", "--format", "json"});
  CHECK(r.code == cli::kOk);
  CHECK(nlohmann::json::parse(r.out)["value"] == "1.22674201072035324441763023046");
  CHECK(run_cli({"constant", "fibonacci-factorial", "--digits", "3"}).code == cli::kBadArguments);
  CHECK(run_cli({"constant", "euler-gamma"}).code == cli::kBadArguments);
}

TEST_CASE("verify") {
  Outcome r = run_cli({"verify", "--sequence", "fibonacci", "--digits", "12", "--format", "json"});
  CHECK(r.code == cli::kOk);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["routes"].size() == 3);

  r = run_cli({"verify", "--sequence", "geometric", "--growth-ratio", "2", "--digits", "12", "--format", "json"});
  CHECK(r.code == cli::kOk);
  CHECK(nlohmann::json::parse(r.out)["routes"].size() == 2);

  r = run_cli({"verify", "--sequence", "integers", "--digits", "12"});
  CHECK(r.code == cli::kOk);

  SUBCASE("a failed route fails verification") {
    EnvGuard cap("REGPROD_MAX_TERMS", "10");
    r = run_cli({"verify", "--sequence", "lucas", "--digits", "12", "--format", "json"});
    CHECK(r.code == cli::kVerificationFailed);
    CHECK(nlohmann::json::parse(r.out)["pass"] == false);
    CHECK(r.err.find("extrapolation") != std::string::npos);
  }
}

TEST_CASE("exit codes for constructed failures") {
  const auto bad_table = write_temp("bad_table.spec",
                                    "name = bad\nkind = table\ngrowth_ratio = 2\namplitude = 1\n"
                                    "correction_K = 0.5\ncorrection_rho = 0.5\n"
                                    "terms = 2 4 8 16 33 64 128 256\n");
  const auto rho_table = write_temp("rho_table.spec",
                                    "name = fibish\nkind = table\ngrowth_ratio = 1.6180339887498948482\n"
                                    "amplitude = 0.44721359549995793928\ncorrection_K = 1\ncorrection_rho = 0.2\n"
                                    "terms = 1 1 2 3 5 8 13 21 34 55\n");

  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const Case cases[] = {
      {{}, cli::kBadArguments},
      {{"frobnicate"}, cli::kBadArguments},
      {{"compute"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--digits", "5"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--digits", "1001"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--digits", "ten"}, cli::kBadArguments},
      {{"compute", "--sequence", "tribonacci"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--spec-file", kSpecDir + "/pell.spec"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--route", "magic"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--format", "xml"}, cli::kBadArguments},
      {{"compute", "--sequence", "geometric"}, cli::kBadArguments},
      {{"compute", "--sequence", "geometric", "--growth-ratio", "0.5"}, cli::kBadArguments},
      {{"compute", "--sequence", "fibonacci", "--growth-ratio", "2"}, cli::kBadArguments},
      {{"compute", "--spec-file", "/nonexistent/regprod.spec"}, cli::kSpecFileError},
      {{"compute", "--spec-file", bad_table.string()}, cli::kSpecFileError},
      {{"verify", "--spec-file", rho_table.string()}, cli::kSpecFileError},
      {{"compute", "--sequence", "lucas", "--route", "theta"}, cli::kRouteInapplicable},
      {{"compute", "--sequence", "integers", "--route", "theta"}, cli::kRouteInapplicable},
      {{"compute", "--sequence", "integers", "--route", "extrapolation"}, cli::kRouteInapplicable},
      {{"compute", "--spec-file", kSpecDir + "/fibonacci_table.spec", "--route", "extrapolation"},
       cli::kRouteInapplicable},
      {{"compute", "--spec-file", kSpecDir + "/fibonacci_table.spec", "--digits", "80"}, cli::kComputationFailed},
  };
  for (const Case& c : cases) {
    std::string joined;
    for (const std::string& a : c.args) joined += a + " ";
    INFO(joined);
    const Outcome r = run_cli(c.args);
    CHECK(r.code == c.code);
    if (c.code != cli::kOk) CHECK(!r.err.empty());
  }

  SUBCASE("term cap") {
    EnvGuard cap("REGPROD_MAX_TERMS", "10");
    CHECK(run_cli({"compute", "--sequence", "fibonacci", "--route", "extrapolation"}).code ==
          cli::kComputationFailed);
    // The cap only touches direct summation.
    CHECK(run_cli({"compute", "--sequence", "fibonacci", "--route", "closed-form"}).code == cli::kOk);
  }
  SUBCASE("malformed cap") {
    EnvGuard cap("REGPROD_MAX_TERMS", "lots");
    CHECK(run_cli({"compute", "--sequence", "fibonacci"}).code == cli::kBadArguments);
  }
  std::filesystem::remove(bad_table);
  std::filesystem::remove(rho_table);
}

TEST_CASE("the spec-file diagnostic carries a line number") {
  const auto path = write_temp("growth.spec", "name = g\nkind = geometric\ngrowth_ratio = 0.9\namplitude = 1\n");
  const Outcome r = run_cli({"compute", "--spec-file", path.string()});
  CHECK(r.code == cli::kSpecFileError);
  CHECK(r.err.find(path.string() + ":3:") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("JSON documents are canonical") {
  const std::vector<std::vector<std::string>> invocations = {
      {"compute", "--sequence", "fibonacci", "--digits", "25", "--format", "json"},
      {"compute", "--sequence", "integers", "--digits", "40", "--format", "json"},
      {"compute", "--spec-file", kSpecDir + "/three_times_two.spec", "--digits", "17", "--format", "json"},
      {"verify", "--sequence", "lucas", "--digits", "9", "--format", "json"},
  };
  for (const auto& args : invocations) {
    const Outcome r = run_cli(args);
    REQUIRE(r.code == cli::kOk);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.dump(2) + "\n" == r.out);

    // Keys appear in sorted order in the text itself.
    const auto pos = [&](const char* key) { return r.out.find(std::string("\"") + key + "\":"); };
    CHECK(pos("digits") < pos("max_disagreement"));
    CHECK(pos("max_disagreement") < pos("pass"));
    CHECK(pos("pass") < pos("routes"));
    CHECK(pos("routes") < pos("sequence"));
    CHECK(pos("sequence") < pos("version"));

    const int digits = doc["digits"].get<int>();
    for (const auto& route : doc["routes"]) {
      CHECK(route["value"].is_string());
      CHECK(route["error_bound"].is_string());
      CHECK(route["terms_used"].is_number_integer());
      CHECK(significant_digits(route["value"].get<std::string>()) == digits);
    }
    CHECK(doc["version"] == "1.0.0");
  }
}

TEST_CASE("digit counts in text output") {
  for (int d : {6, 13, 50, 101}) {
    const Outcome r = run_cli({"compute", "--sequence", "lucas", "--route", "closed-form", "--digits",
                               std::to_string(d)});
    REQUIRE(r.code == cli::kOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);
    std::istringstream fields(line);
    std::string route, value;
    fields >> route >> value;
    CHECK(route == "closed-form");
    CHECK(significant_digits(value) == d);
  }
}

TEST_CASE("installed binary") {
  FILE* pipe = ::popen(REGPROD_CLI_PATH " constant golden-mean --digits 20 2>&1", "r");
  REQUIRE(pipe != nullptr);
  char buffer[256] = {};
  std::string out;
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) out += buffer;
  const int status = ::pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out == "1.6180339887498948482\n");

  pipe = ::popen(REGPROD_CLI_PATH " compute --sequence lucas --route theta 2>/dev/null", "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) {
  }
  CHECK(WEXITSTATUS(::pclose(pipe)) == cli::kRouteInapplicable);
}
