#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "magmalab/fixtures.hpp"
#include "magmalab/model.hpp"
#include "magmalab/term.hpp"

using namespace magmalab;

namespace {

const std::string kBin = MAGMALAB_BIN;
const std::string kFixtures = FIXTURES_DIR;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("check reports holds/fails with matching exit codes") {
  auto fails = run(kBin + " check --model " + fixture("table1.model") +
                   " --theory " + fixture("rect_loop.eq"));
  CHECK(fails.code == 2);
  auto j = nlohmann::json::parse(fails.out);
  CHECK(j["all_hold"] == false);
  int failing = 0;
  for (const auto& v : j["results"]) {
    if (!v["holds"]) {
      ++failing;
      CHECK(v["name"] == "L");
      CHECK(v.contains("witness"));
    }
  }
  CHECK(failing == 1);

  auto holds = run(kBin + " check --model " + fixture("table1.model") +
                   " --theory " + fixture("rect_loop.eq") + " --axiom Q1");
  CHECK(holds.code == 0);
  CHECK(nlohmann::json::parse(holds.out)["all_hold"] == true);

  auto missing = run(kBin + " check --model " + fixture("table1.model") +
                     " --theory " + fixture("rect_loop.eq") + " --axiom NOPE");
  CHECK(missing.code == 1);
}

TEST_CASE("emitted fixtures pipe back through stdin") {
  auto piped = run(kBin + " fixtures --emit TABLE2 | " + kBin +
                   " check --model - --theory " + fixture("rect_loop.eq"));
  CHECK(piped.code == 2);
  for (const auto& v : nlohmann::json::parse(piped.out)["results"])
    CHECK(v["holds"] == (v["name"] != "Q2"));
}

TEST_CASE("fixtures --list names the catalogue") {
  auto r = run(kBin + " fixtures --list");
  CHECK(r.code == 0);
  int names = 0;
  for (const char* expect :
       {"TABLE1", "TABLE2", "TABLE3", "TABLE4", "CYCLIC3", "LZ2", "RZ2",
        "RECT_AXIOMS", "RECT_LOOP", "KRAPEZ", "KRAPEZ8", "QUASIGROUP",
        "SECTION3"}) {
    INFO(expect);
    CHECK(r.out.find(expect) != std::string::npos);
    ++names;
  }
  CHECK(names >= 12);

  CHECK(run(kBin + " fixtures --emit NO_SUCH").code == 1);
  CHECK(run(kBin + " fixtures").code == 1);
}

TEST_CASE("search emits a model that satisfies the theory") {
  auto r = run(kBin + " search --theory " + fixture("quasigroup.eq") +
               " --size 3");
  REQUIRE(r.code == 0);
  Model m = model_from_json(r.out);
  CHECK(m.size == 3);
  CHECK(is_quasigroup(m));

  std::string contradictory =
      temp_file("contradictory.eq", "A: x * y = x\nB: x * y = y\n");
  CHECK(run(kBin + " search --theory " + contradictory + " --size 2").code ==
        2);
  CHECK(run(kBin + " search --theory " + contradictory + " --size 9").code ==
        1);
}

TEST_CASE("search --violate finds the countermodel for L") {
  auto r = run(kBin + " search --theory " + fixture("rect_loop.eq") +
               " --size 3 --violate L");
  REQUIRE(r.code == 0);
  Model m = model_from_json(r.out);
  const Theory& rect = fixtures().theories.at("RECT_LOOP");
  for (const auto& v : satisfies_theory(m, rect))
    CHECK(v.holds == (v.name != "L"));

  CHECK(run(kBin + " search --theory " + fixture("rect_loop.eq") +
            " --size 2 --violate L")
            .code == 2);
}

TEST_CASE("search --all enumerates and respects the cap") {
  auto r = run(kBin + " search --theory " + fixture("quasigroup.eq") +
               " --size 2 --all --no-lnh");
  REQUIRE(r.code == 0);
  auto arr = nlohmann::json::parse(r.out);
  CHECK(arr.size() == 2);

  std::string trivial = temp_file("trivial.eq", "T: x = x\n");
  auto capped = run(kBin + " search --theory " + trivial +
                    " --size 2 --all --no-lnh --limit 5");
  CHECK(nlohmann::json::parse(capped.out).size() == 5);
}

TEST_CASE("node limit from the environment yields exit 3") {
  auto r = run("MAGMALAB_LIMIT_NODES=3 " + kBin + " search --theory " +
               fixture("rect_loop.eq") + " --size 3");
  CHECK(r.code == 3);
}

TEST_CASE("verify accepts the shipped proofs and flags a broken theory") {
  auto ok = run(kBin + " verify --proofs " + fixture("section3.proofs.json") +
                " --theory " + fixture("rect_axioms.eq"));
  CHECK(ok.code == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["all_ok"] == true);
  CHECK(j["scripts"].size() == fixtures().proofs.at("SECTION3").scripts.size());
  for (const auto& s : j["scripts"]) CHECK(s["ok"] == true);

  // Against the wrong axioms the first script must fail with a step index.
  auto bad = run(kBin + " verify --proofs " + fixture("section3.proofs.json") +
                 " --theory " + fixture("quasigroup.eq"));
  CHECK(bad.code == 2);
  auto jb = nlohmann::json::parse(bad.out);
  CHECK(jb["all_ok"] == false);
}

TEST_CASE("independence on the loop axioms at size 2") {
  auto r = run(kBin + " independence --theory " + fixture("rect_loop.eq") +
               " --max-size 2");
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["independent"] == false);
  for (const auto& a : j["axioms"]) {
    if (a["name"] == "L") CHECK(a["status"] == "none");
    if (a["name"] == "Q2") {
      CHECK(a["status"] == "witness");
      CHECK(a["size"] == 2);
    }
  }
}

TEST_CASE("product, dual and mirror transformations") {
  auto prod = run(kBin + " product --left " + fixture("table1.model") +
                  " --right " + fixture("lz2.model"));
  REQUIRE(prod.code == 0);
  CHECK(model_from_json(prod.out).size == 6);

  auto once = run(kBin + " dual --model " + fixture("table2.model"));
  REQUIRE(once.code == 0);
  auto twice = run(kBin + " dual --model " + fixture("table2.model") + " | " +
                   kBin + " dual --model -");
  REQUIRE(twice.code == 0);
  CHECK(model_from_json(twice.out) ==
        model_from_json(run("cat " + fixture("table2.model")).out));

  auto mirrored = run(kBin + " mirror --theory " + fixture("rect_axioms.eq"));
  REQUIRE(mirrored.code == 0);
  Theory th = parse_theory(mirrored.out);
  const Theory& rect = fixtures().theories.at("RECT_AXIOMS");
  REQUIRE(th.identities.size() == rect.identities.size());
  CHECK(renaming_equivalent(*th.find("Q1~mirror"), *rect.find("Q2")));
  CHECK(renaming_equivalent(*th.find("Q6~mirror"), *rect.find("Q5")));
}

TEST_CASE("malformed inputs exit with status 1") {
  std::string junk = temp_file("junk.model", "this is not json");
  CHECK(run(kBin + " check --model " + junk + " --theory " +
            fixture("rect_loop.eq"))
            .code == 1);

  std::string bad_eq = temp_file("bad.eq", "A: x * y \\ z = x\n");
  CHECK(run(kBin + " search --theory " + bad_eq + " --size 2").code == 1);

  CHECK(run(kBin + " check --model /nonexistent.model --theory " +
            fixture("rect_loop.eq"))
            .code == 1);
  CHECK(run(kBin + " nosuchcommand").code == 1);
  CHECK(run(kBin).code == 1);
}
