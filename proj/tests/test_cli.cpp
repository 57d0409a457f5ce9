#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* cli_path() { return std::getenv("EQUIDIST_CLI"); }

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "equidist_cli_tests";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd =
      "\"" + std::string(cli_path()) + "\" " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  r.output = os.str();
  return r;
}

}  // namespace

TEST_CASE("cli end-to-end behavior" * doctest::skip(cli_path() == nullptr)) {
  const fs::path dir = work_dir();

  SUBCASE("successful table run") {
    write_file(dir / "vdc2.json", "{\"kind\":\"van_der_corput\",\"base\":2}");
    const RunResult r =
        run("udtest --input " + (dir / "vdc2.json").string() + " --horizons 64,256");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("horizon,statistic,target\n", 0) == 0);
  }

  SUBCASE("malformed spec exits 2 with an error object naming the field") {
    write_file(dir / "bad.json", "{\"kind\":\"van_der_corput\"}");
    const RunResult r = run("gen --input " + (dir / "bad.json").string());
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.output);
    CHECK(err["error"]["code"] == "parse");
    CHECK(err["error"]["field"] == "base");
  }

  SUBCASE("unreadable json exits 2") {
    write_file(dir / "broken.json", "{not json");
    const RunResult r = run("gen --input " + (dir / "broken.json").string());
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.output)["error"]["code"] == "parse");
  }

  SUBCASE("domain errors exit 3 with the module error code") {
    write_file(dir / "id.json", "{\"kind\":\"identity\"}");
    const RunResult r = run("udtest --input " + (dir / "id.json").string() +
                            " --horizons 4 --moduli 100");
    CHECK(r.exit_code == 3);
    CHECK(json::parse(r.output)["error"]["code"] == "invalid-spec");
  }

  SUBCASE("resource caps exit 4") {
    const RunResult r = run("buck --set \"0+(2)\" --window 100 --modulus-bound 500 "
                            "--strategy exact");
    CHECK(r.exit_code == 4);
    CHECK(json::parse(r.output)["error"]["code"] == "strategy-unavailable");
  }

  SUBCASE("coprimality errors surface verbatim") {
    write_file(dir / "samep.json",
               "{\"specs\":[{\"kind\":\"periodic_list\",\"values\":[0,1]},"
               "{\"kind\":\"periodic_list\",\"values\":[0,\"1/2\"]}],"
               "\"horizons\":[4]}");
    const RunResult r = run("indep --input " + (dir / "samep.json").string() +
                            " --exact-crt --format json");
    CHECK(r.exit_code == 3);
    CHECK(json::parse(r.output)["error"]["code"] == "coprimality");
  }

  SUBCASE("exact crt means ride along the report") {
    write_file(dir / "coprime.json",
               "{\"specs\":[{\"kind\":\"periodic_list\",\"values\":[0,1]},"
               "{\"kind\":\"periodic_list\",\"values\":[0,\"1/2\",1]}],"
               "\"horizons\":[6]}");
    const RunResult r = run("indep --input " + (dir / "coprime.json").string() +
                            " --exact-crt --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["crt"]["product_mean"] == "1/4");
    CHECK(j["crt"]["mean1"] == "1/2");
    CHECK(j["crt"]["mean2"] == "1/2");
  }

  SUBCASE("exact covering cost survives the wire as a string") {
    const RunResult r = run("buck --set \"0+(3)\" --window 1000 --format json");
    CHECK(r.exit_code == 0);
    const json cover = json::parse(r.output);
    CHECK(cover["cost"] == "1/3");
    CHECK(cover["progressions"][0]["m"] == 3);
    CHECK(cover["progressions"][0]["r"] == 0);
  }
}
