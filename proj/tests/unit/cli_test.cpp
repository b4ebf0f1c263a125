#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "nilkit/cli.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = nilkit::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory with the presentation files used below.
struct Files {
  fs::path dir = fs::temp_directory_path() / ("nilkit_cli_" + std::to_string(::getpid()));
  Files() {
    fs::create_directories(dir);
    write("heis.np", kHeisenberg);
    write("z.np", "nilpotent m=1 c=1\na1 order=inf level=1\n");
    write("d8.np", kDihedral8);
    write("h.sub", "a1^2\n# comment\na3\n");
    write("f.hom", "hom: heis.np -> z.np\na1 |-> a1\na2 |-> 1\n");
    write("z3.fp", "group x | x^3\n");
    write("d.slp", "A1 = a1\nA2 = A1 A1\nA3 = A2 A2\n");
  }
  ~Files() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  void write(std::string const& name, std::string const& text) const {
    std::ofstream(dir / name) << text;
  }
  std::string operator[](std::string const& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli examples") {
  Files f;
  auto r = run({"normal-form", "-p", f["heis.np"], "a2 a1"});
  CHECK(r.code == 0);
  CHECK(r.out == "coords: (1,1,-1)\n");

  r = run({"coset-intersect", "-p", f["z.np"], "-g1", "a1", "-H", "a1^2", "-g2", "", "-K", "a1^3"});
  CHECK(r.code == 0);
  CHECK(r.out == "representative: (3)\nintersection: [(6)]\n");

  r = run({"conj-subgroups", "-p", f["heis.np"], "-H", f["h.sub"], "-K", f["h.sub"]});
  CHECK(r.code == 0);
  CHECK(r.out.find("witness: (0,0,0)\n") != std::string::npos);
  CHECK(r.out.find("normalizer: [(1,0,0), (0,1,0), (0,0,1)]") != std::string::npos);
}

TEST_CASE("cli negative answers exit 1") {
  Files f;
  auto r = run({"coset-intersect", "-p", f["z.np"], "--g1", "a1", "-H", "a1^2", "-K", "a1^2"});
  CHECK(r.code == 1);
  CHECK(r.out == "intersection: empty\n");
  CHECK(run({"conj-elements", "-p", f["heis.np"], "a1", "a2"}).code == 1);
  CHECK(run({"membership", "-p", f["heis.np"], "-H", "a1^2", "a1"}).code == 1);
  CHECK(run({"preimage", "--hom", f["f.hom"], "a1^5"}).out == "preimage: (5,0,0)\n");
  CHECK(run({"conj-subgroups", "-p", f["heis.np"], "-H", "a1", "-K", "a2"}).code == 1);
}

TEST_CASE("cli input errors exit 2") {
  Files f;
  auto r = run({"normal-form", "-p", f["heis.np"], "a2 a9"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("position 3") != std::string::npos);
  CHECK(run({"normal-form", "-p", f["heis.np"], "a1", "a2"}).code == 2);
  CHECK(run({"normal-form", "a1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"normal-form", "-p", f["missing.np"], "a1"}).code == 2);
  CHECK(run({"--format", "coords", "normal-form", "-p", f["heis.np"], "(1,2)"}).code == 2);
  CHECK(run({"conj-tuples", "-p", f["heis.np"], "-A", "a1;a2", "-B", "a1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli formats and subcommands") {
  Files f;
  CHECK(run({"--format", "coords", "normal-form", "-p", f["heis.np"], "(1,2,3)"}).out ==
        "coords: (1,2,3)\n");
  CHECK(run({"--format", "slp", "normal-form", "-p", f["heis.np"], f["d.slp"]}).out ==
        "coords: (4,0,0)\n");
  CHECK(run({"--format", "plain", "multiply", "-p", f["heis.np"], "a2", "a1"}).out ==
        "coords: (1,1,-1)\n");
  CHECK(run({"power", "-p", f["heis.np"], "a1 a2", "2"}).out == "coords: (2,2,-1)\n");
  CHECK(run({"full-form", "-p", f["heis.np"], "-H", "a1^2;a1^3"}).out == "subgroup: [(1,0,0)]\n");
  CHECK(run({"kernel", "--hom", f["f.hom"]}).out == "kernel: [(0,1,0), (0,0,1)]\n");
  CHECK(run({"torsion", "-p", f["heis.np"]}).out == "torsion: []\norder: 1\n");
  CHECK(run({"isolator", "-p", f["heis.np"], "-H", "a1^2;a2^2"}).out ==
        "isolator: [(1,0,0), (0,1,0), (0,0,1)]\n");
  auto r = run({"build-presentation", "-p", f["z3.fp"]});
  CHECK(r.code == 0);
  CHECK(r.out.find("class: 1\n") != std::string::npos);
  CHECK(r.out.find("a1 order=3 level=1") != std::string::npos);
  CHECK(run({"bench", "--family", "plain"}).out == "size,seconds\n");
  r = run({"bench", "--sizes", "4,5", "--min-seconds", "0"});
  CHECK(r.out.rfind("size,seconds\n4,", 0) == 0);
}

TEST_CASE("cli oracle cross-check") {
  Files f;
  for (std::vector<std::string> args : {
           std::vector<std::string>{"torsion"},
           {"isolator", "-H", "a3"},
           {"normalizer", "-K", "a1"},
           {"centralizer", "a1"},
           {"conj-elements", "a1", "a1 a3"},
           {"conj-tuples", "-A", "a1;a3", "-B", "a1 a3;a3"},
           {"conj-commuting-tuples", "-A", "a1", "-B", "a1 a3"},
           {"coset-intersect", "--g1", "a2", "-H", "a1", "--g2", "a1 a2", "-K", "a3"},
           {"intersect", "-H", "a1;a3", "-K", "a2 a1"},
           {"membership", "-H", "a2", "a3"},
           {"full-form", "-H", "a1 a2"},
           {"check"},
       }) {
    args.insert(args.begin() + 1, {"--check", "-p", f["d8.np"]});
    auto r = run(args);
    CAPTURE(args[0]);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("check: ok") != std::string::npos);
  }
  auto r = run({"torsion", "--check", "-p", f["heis.np"]});
  CHECK(r.code == 0);
  CHECK(r.err.find("infinite") != std::string::npos);
}
