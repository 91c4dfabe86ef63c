#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "rfb/errors.hpp"
#include "rfb/io.hpp"

using namespace rfb;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(RFB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string fresh_dir(const std::string& name) {
  fs::path dir = fs::path(RFB_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("plan command writes the expected dimensions") {
  std::string dir = fresh_dir("cli_plan");
  CHECK(run_cli("plan --partition 2/9,1/3,1/3,1/9 --out-dir " + dir) == 0);
  Json j = read_json_file(dir + "/plan.json");
  CHECK(j.at("S") == 9);
  CHECK(j.at("rowCounts") == Json::array({2, 3, 3, 1}));
  CHECK(j.at("residueCounts") == Json::array({1, 3, 3, 1}));
}

TEST_CASE("exit codes distinguish the failure families") {
  std::string dir = fresh_dir("cli_err");
  CHECK(run_cli("plan --partition 2/x,1/2 --out-dir " + dir) == kExitParseError);
  CHECK(run_cli("plan --partition 1/2,1/3 --out-dir " + dir) == kExitInvalidPartition);
  CHECK(run_cli("plan --no-such-flag") == kExitParseError);
  CHECK(run_cli("process --partition 1/1 --out-dir " + dir) == kExitParseError);
  CHECK(run_cli("eval --out-dir " + dir) == kExitIoError);  // no design present
}

TEST_CASE("imm command emits verified pairs per channel and region") {
  std::string dir = fresh_dir("cli_imm");
  CHECK(run_cli("imm --partition 2/5,3/5 --out-dir " + dir) == 0);
  Imm neg = imm_from_json(read_json_file(dir + "/imm_ch1_neg.json"));
  CHECK(neg.rows == 3);
  CHECK(neg.cols == 5);
  CHECK(neg.ones == std::vector<std::int64_t>{1, 2, 3});
  Imm pos = imm_from_json(read_json_file(dir + "/imm_ch1_pos.json"));
  CHECK(pos.ones == std::vector<std::int64_t>{4, 2, 3});
}

TEST_CASE("design, eval and process run end to end on a small bank") {
  std::string dir = fresh_dir("cli_design");
  int code = run_cli(
      "design --partition 1/2,1/2 --stages 3 --grid 256 --restarts 2 "
      "--max-iter 40 --seed 11 --out-dir " + dir);
  CHECK((code == kExitOk || code == kExitNotConverged));
  for (const char* f : {"plan.json", "theta.json", "polyphase.json", "trace.csv",
                        "specs.json", "design_config.txt", "channel_0_coeffs.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(fs::path(dir) / f));
  }

  CHECK(run_cli("eval --grid 512 --out-dir " + dir) == 0);
  CHECK(fs::exists(fs::path(dir) / "response_ch0_d0.csv"));
  std::string resp = slurp(dir + "/response_ch0_d0.csv");
  CHECK(resp.rfind("omega_over_pi,mag_db,ideal_db", 0) == 0);

  // Signal round trip through the designed bank.
  std::vector<double> x(300);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.2 * static_cast<double>(i));
  write_signal(dir + "/x.csv", x, SignalFormat::Csv);
  CHECK(run_cli("process --input " + dir + "/x.csv --format csv --out-dir " + dir) == 0);
  Json report = read_json_file(dir + "/process.json");
  CHECK(report.at("reconstructionError").get<double>() < 1e-9);
  CHECK(fs::exists(fs::path(dir) / "recon.csv"));
  CHECK(fs::exists(fs::path(dir) / "subband_ch0.csv"));
}

TEST_CASE("same config and seed give byte-identical artifacts") {
  std::string d1 = fresh_dir("cli_det1");
  std::string d2 = fresh_dir("cli_det2");
  std::string args =
      "design --partition 1/2,1/2 --stages 3 --grid 256 --restarts 2 "
      "--max-iter 30 --seed 5 --out-dir ";
  int c1 = run_cli(args + d1);
  int c2 = run_cli(args + d2);
  CHECK(c1 == c2);
  for (const char* f : {"plan.json", "theta.json", "polyphase.json", "trace.csv",
                        "specs.json", "design_config.txt"}) {
    CAPTURE(f);
    CHECK(slurp(d1 + "/" + f) == slurp(d2 + "/" + f));
  }

  // Capping the workers must not change any artifact byte.
  std::string d3 = fresh_dir("cli_det3");
  std::string cmd = "RFB_THREADS=1 " + std::string(RFB_CLI_PATH) + " " + args + d3 +
                    " >/dev/null 2>&1";
  int c3 = WEXITSTATUS(std::system(cmd.c_str()));
  CHECK(c3 == c1);
  CHECK(slurp(d1 + "/theta.json") == slurp(d3 + "/theta.json"));
  CHECK(slurp(d1 + "/trace.csv") == slurp(d3 + "/trace.csv"));
}

TEST_CASE("verify on the identity bank of the full-band partition") {
  std::string dir = fresh_dir("cli_verify");
  CHECK(run_cli("verify --partition 1/1 --grid 64 --out-dir " + dir) == 0);
  Json report = read_json_file(dir + "/verify.json");
  CHECK(report.at("allPass") == true);
  CHECK(report.at("objective").get<double>() == 0.0);
}
