#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "nsdgt/io.hpp"
#include "nsdgt/nonsep.hpp"
#include "support.hpp"

using namespace nsdgt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

fs::path workdir() {
  static fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_work";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result run(const std::string& args) {
  auto o = workdir() / "stdout.txt", e = workdir() / "stderr.txt";
  std::string cmd = std::string(NSDGT_CLI_PATH) + " " + args + " >" + o.string() + " 2>" + e.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(o), slurp(e)};
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string write_random(const std::string& name, Index L, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto p = path(name);
  write_signal_file(p, support::random_signal(L, rng));
  return p;
}

double error_field(const std::string& err, const std::string& key) {
  auto k = err.find(key + ": ");
  REQUIRE(k != std::string::npos);
  return std::stod(err.substr(k + key.size() + 2));
}

}  // namespace

TEST_CASE("dgt: shear matches naive through files") {
  auto in = write_random("sig16.csv", 16, 1);
  auto r1 = run("dgt --in " + in + " --out " + path("c_shear.csv") + " --a 2 --M 4 --lp 1 --lq 2 --algorithm shear");
  REQUIRE(r1.code == 0);
  CHECK(r1.err.find("algorithm: shear") != std::string::npos);
  CHECK(r1.err.find("s0=0 s1=1") != std::string::npos);
  CHECK(r1.err.find("flops_model: ") != std::string::npos);
  CHECK(r1.out.empty());
  auto r2 = run("dgt --in " + in + " --out " + path("c_naive.bin") + " --a 2 --M 4 --lp 1 --lq 2 --algorithm naive");
  REQUIRE(r2.code == 0);
  auto a = read_coefs_file(path("c_shear.csv")), b = read_coefs_file(path("c_naive.bin"));
  CHECK(a.channels() == 4);
  CHECK(a.steps() == 8);
  CHECK(support::rel_err(a, b) < 1e-10);
}

TEST_CASE("dgt: separable lattice gives the same output for every algorithm") {
  auto in = write_random("sig24.bin", 24, 2);
  CoefGrid ref;
  for (std::string alg : {"naive", "auto", "shear", "multiwin", "snf"}) {
    auto r = run("dgt --in " + in + " --out " + path("sep_" + alg + ".bin") + " --a 3 --M 4 --lp 0 --algorithm " + alg);
    REQUIRE(r.code == 0);
    auto c = read_coefs_file(path("sep_" + alg + ".bin"));
    if (alg == "naive") ref = c;
    else CHECK(support::rel_err(c, ref) < 1e-13);
  }
}

TEST_CASE("dgt: usage and infeasibility") {
  auto in = write_random("sig16b.csv", 16, 3);
  auto r = run("dgt --in " + in + " --out " + path("x.bin") + " --a 2 --lp 1 --lq 2");
  CHECK(r.code == 2);
  CHECK(r.err.find("--M") != std::string::npos);
  r = run("dgt --in " + in + " --out " + path("x.bin") + " --a 3 --M 4 --lp 1 --lq 2");
  CHECK(r.code == 4);
  CHECK(r.err.find("L_min = 24") != std::string::npos);
  r = run("dgt --in " + in + " --out " + path("x.bin") + " --a 2 --M 4 --algorithm fastest");
  CHECK(r.code == 2);
  r = run("dgt --in " + path("missing.csv") + " --out " + path("x.bin") + " --a 2 --M 4");
  CHECK(r.code == 2);
  r = run("");
  CHECK(r.code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("dgt -> idgt with the dual window") {
  auto in = write_random("sig64.csv", 64, 4);
  REQUIRE(run("dgt --in " + in + " --out " + path("c64.bin") + " --a 4 --M 8 --lp 1 --lq 2").code == 0);
  auto r = run("idgt --in " + path("c64.bin") + " --out " + path("rec64.csv") + " --a 4 --M 8 --lp 1 --lq 2 --dual --reference " + in);
  REQUIRE(r.code == 0);
  CHECK(error_field(r.err, "reconstruction_error") < 1e-10);
  CHECK(support::rel_err(read_signal_file(path("rec64.csv")), read_signal_file(in)) < 1e-10);

  // explicit dual window file
  REQUIRE(run("gabdual --a 4 --M 8 --lp 1 --lq 2 --L 64 --out " + path("gd64.bin") + " --verify").code == 0);
  r = run("idgt --in " + path("c64.bin") + " --out " + path("rec64b.bin") + " --a 4 --M 8 --lp 1 --lq 2 --window " +
          path("gd64.bin") + " --reference " + in);
  REQUIRE(r.code == 0);
  CHECK(error_field(r.err, "reconstruction_error") < 1e-10);
  r = run("gabdual --a 4 --M 8 --lp 1 --lq 2 --L 64 --method cg --out " + path("gd64cg.bin") + " --verify");
  CHECK(r.code == 0);
  CHECK(support::rel_err(read_signal_file(path("gd64cg.bin")), read_signal_file(path("gd64.bin"))) < 1e-9);
}

TEST_CASE("gabtight --verify") {
  auto r = run("gabtight --a 4 --M 8 --lp 1 --lq 2 --L 64 --out " + path("gt64.csv") + " --verify");
  CHECK(r.code == 0);
  CHECK(r.err.find("verify: ok") != std::string::npos);
  CHECK(error_field(r.err, "frame_operator_identity_error") < 1e-9);
  auto gt = read_signal_file(path("gt64.csv"));
  auto lat = GaborLattice::from_params(64, 4, 8, 1, 2);
  CHECK((frame_matrix(Window(gt), lat) - Eigen::MatrixXcd::Identity(64, 64)).norm() < 1e-9);
}

TEST_CASE("non-frame input") {
  std::ofstream(path("delta.csv")) << "1,0\n";
  auto r = run("gabdual --a 4 --M 2 --L 16 --window " + path("delta.csv") + " --out " + path("d.bin"));
  CHECK(r.code == 3);
  CHECK(r.err.find("not a frame") != std::string::npos);
  r = run("gabtight --a 4 --M 2 --lp 1 --lq 2 --L 16 --window " + path("delta.csv") + " --out " + path("d.bin"));
  CHECK(r.code == 3);
  CHECK(r.err.find("not a frame") != std::string::npos);
}

TEST_CASE("latinfo") {
  auto r = run("latinfo --a 32 --M 64 --lp 1 --lq 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("L_min: 128") != std::string::npos);
  CHECK(r.out.find("factor=32") != std::string::npos);
  CHECK(r.out.find("n*4096") != std::string::npos);
  r = run("latinfo --a 27 --M 54 --lp 1 --lq 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("L_min: 108") != std::string::npos);
  CHECK(r.out.find("factor=1 ") != std::string::npos);
  CHECK(r.out.find("n*108") != std::string::npos);
  r = run("latinfo --a 6 --M 4 --lp 0 --lq 1 --L 24");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("separable; no shear required") != std::string::npos);

  r = run("latinfo --a 32 --M 64 --lp 1 --lq 2 --L 4096 --json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["L_min"] == 128);
  CHECK(j["no_freq_shear"]["factor"] == 32);
  CHECK(j["no_freq_shear"]["stride"] == 4096);
  CHECK(j["shear"]["s0"] == 0);
  CHECK(j["shear"]["freq_shear"] == false);
  CHECK(j["normal_form"]["s"] == 32);
  CHECK(j["multiwindow"]["windows"] == 2);

  r = run("latinfo --a 6 --M 6 --lp 1 --lq 2 --L 40 --json");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["feasible"] == false);
  CHECK(j["nearest_feasible"] == nlohmann::json::array({36, 48}));
  r = run("latinfo --a 6 --M 6 --lp 1 --lq 2 --L 40");
  CHECK(r.code == 0);
  CHECK(r.out.find("nearest feasible lengths: 36 48") != std::string::npos);
}

TEST_CASE("bench") {
  auto t0 = std::chrono::steady_clock::now();
  auto r = run("bench --preset fig2 --L-factor 1 --L-rule minimal --lq-max 12 --repeats 2");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(r.code == 0);
  CHECK(secs < 60);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "lambda1,lambda2,L,a,M,algorithm,flops_model,time_ns_median,freq_shear,time_shear");
  std::set<std::string> pairs;
  Index rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string f[10];
    for (auto& x : f) std::getline(ls, x, ',');
    pairs.insert(f[3] + "," + f[4]);
    ++rows;
  }
  CHECK(pairs == std::set<std::string>{"32,64", "40,60", "60,80"});
  CHECK(rows == 3 * 3 * 12);

  r = run("bench --preset fig2 --L-factor 1");
  CHECK(r.code == 0);
  CHECK(r.err.find("skip") != std::string::npos);

  // deterministic model columns
  auto a = run("bench --a 3 --M 4 --L-factor 12 --lq-max 8 --no-timing");
  auto b = run("bench --a 3 --M 4 --L-factor 12 --lq-max 8 --no-timing --out " + path("bench.csv"));
  CHECK(a.code == 0);
  CHECK(a.out == slurp(path("bench.csv")));
  CHECK(run("bench --a 3").code == 2);
}

TEST_CASE("file formats are stable") {
  auto in = write_random("det.bin", 48, 9);
  run("dgt --in " + in + " --out " + path("det1.bin") + " --a 4 --M 6 --lp 1 --lq 2");
  run("dgt --in " + in + " --out " + path("det2.bin") + " --a 4 --M 6 --lp 1 --lq 2");
  CHECK(slurp(path("det1.bin")) == slurp(path("det2.bin")));
  CHECK(slurp(path("det1.bin")).substr(0, 4) == "NSLC");
}
