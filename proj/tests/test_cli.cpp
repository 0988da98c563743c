#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "fatpoints/io.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + FATPOINTS_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  const fs::path d = fs::temp_directory_path() / ("fatpoints_cli_" + std::to_string(getpid()));
  fs::create_directories(d);
  return d;
}

std::string write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("cli: gen, reg, segre") {
  const fs::path d = workdir();
  const std::string file = (d / "two_lines.json").string();
  REQUIRE(cli("gen --family two-lines --m 2 --seed 1 -o " + file).code == 0);
  const Run reg = cli("reg " + file);
  CHECK(reg.code == 0);
  CHECK(reg.out == "5\n");
  const auto j = fatpoints::Json::parse(cli("reg --format json " + file).out);
  CHECK(j["regularity_index"] == 5);
  CHECK(j["multiplicity"] == 18);

  const Run segre = cli("segre " + file);
  CHECK(segre.code == 0);
  const auto s = fatpoints::Json::parse(segre.out);
  CHECK(s["T"] == 6);
  CHECK(s["t_j"][0]["T_j"] == 5);
  CHECK(s["t_j"][1]["T_j"] == 6);

  CHECK(fatpoints::serialize_scheme(fatpoints::read_scheme_file(file)) == slurp(file));
  CHECK(cli("gen --family two-lines --m 2 --seed 1").out == slurp(file));
  CHECK(cli("gen --family generic --n 3 --s 4 --m 1,2,3,1 --seed 9").code == 0);
  CHECK(cli("gen --family generic --n 3 --s 4 --m 1,2 --seed 9").code == 2);
  fs::remove_all(d);
}

TEST_CASE("cli: hilbert formats") {
  const fs::path d = workdir();
  const std::string line = write(d / "line.json", R"({"n": 2, "points": [
      {"coords": ["1", "0", "0"], "m": 1}, {"coords": ["1", "1", "0"], "m": 1}, {"coords": ["1", "2", "0"], "m": 1}]})");
  const Run csv = cli("hilbert " + line + " --t-max 3 --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out == "t,hilbert,ideal_dim\n0,1,0\n1,2,1\n2,3,3\n3,3,7\nmultiplicity,3\nregularity_index,2\n");
  CHECK(cli("hilbert " + line + " --format csv").out ==
        "t,hilbert,ideal_dim\n0,1,0\n1,2,1\n2,3,3\nmultiplicity,3\nregularity_index,2\n");

  const std::string one = write(d / "one.json", R"({"n": 3, "points": [{"coords": [1, 2, 3, 4], "m": 1}]})");
  CHECK(cli("hilbert -s " + one + " --t-max 0 --format csv").out ==
        "t,hilbert,ideal_dim\n0,1,0\nmultiplicity,1\nregularity_index,0\n");

  const std::string seven = (d / "seven.json").string();
  REQUIRE(cli("gen --family generic --n 4 --s 7 --m 2 --seed 5 -o " + seven).code == 0);
  const auto h = fatpoints::Json::parse(cli("hilbert " + seven + " --format json").out);
  CHECK(h["rows"][3]["hilbert"] == 34);
  CHECK(h["multiplicity"] == 35);
  CHECK(h["regularity_index"] == 4);
  CHECK(cli("hilbert " + seven + " --field prime --format json").out == cli("hilbert " + seven + " --format json").out);
  fs::remove_all(d);
}

TEST_CASE("cli: exit codes") {
  const fs::path d = workdir();
  CHECK(cli("--help").code == 0);
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("reg /nonexistent/z.json").code == 2);
  CHECK(cli("reg " + write(d / "bad.json", "{ not json")).code == 2);
  const std::string ok = write(d / "ok.json", R"({"n": 1, "points": [{"coords": ["1", "0"], "m": 6}]})");
  CHECK(cli("reg " + ok).out == "5\n");
  CHECK(cli("reg " + ok + " --format xml").code == 2);
  CHECK(cli("reg " + ok + " --field prime --prime 5").code == 2);
  CHECK(cli("gen --family two-planes").code == 2);
  CHECK(cli("verify --suite nope").code == 2);

  const Run v = cli("verify --suite two-lines --seed 3");
  CHECK(v.code == 0);
  CHECK(v.out.ends_with("OK\n"));
  const std::string report = (d / "r.json").string();
  CHECK(cli("verify --suite two_lines,collinear --trials 3 -o " + report).code == 0);
  const auto rj = fatpoints::Json::parse(slurp(report));
  CHECK(rj["summary"]["ok"] == true);
  CHECK(rj["summary"]["fail"] == 0);

  const Run emb = cli("compare-embedding " + ok + " --target-n 3 --seed 4");
  CHECK(emb.code == 0);
  const auto ej = fatpoints::Json::parse(emb.out);
  CHECK(ej["regularity_equal"] == true);
  CHECK(ej["target_n"] == 3);
  fs::remove_all(d);
}
