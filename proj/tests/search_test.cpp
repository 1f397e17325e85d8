#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "magmalab/fixtures.hpp"
#include "magmalab/search.hpp"
#include "test_util.hpp"

using namespace magmalab;

namespace {

bool oracle_has_model(const Theory& t, const std::vector<Model>& all) {
  for (const auto& m : all)
    if (all_hold(satisfies_theory(m, t))) return true;
  return false;
}

}  // namespace

TEST_CASE("find_model basics") {
  SearchConfig cfg;

  auto q3 = find_model(fixtures().theories.at("QUASIGROUP"), 3, cfg);
  REQUIRE(q3.status == SearchStatus::Found);
  CHECK(is_quasigroup(*q3.model));

  Theory contradictory = parse_theory(
      "A: x * y = x\n"
      "B: x * y = y\n");
  auto none = find_model(contradictory, 2, cfg);
  CHECK(none.status == SearchStatus::Exhausted);

  auto point = find_model(Theory{}, 1, cfg);
  REQUIRE(point.status == SearchStatus::Found);
  CHECK(point.model->size == 1);

  CHECK_THROWS_AS(find_model(Theory{}, 0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(find_model(Theory{}, 7, cfg), std::invalid_argument);
}

TEST_CASE("find_witness reproduces the independence examples") {
  SearchConfig cfg;
  const Theory& rect_loop = fixtures().theories.at("RECT_LOOP");

  Theory q_only;  // Q1..Q6
  for (const auto& id : rect_loop.identities)
    if (id.name != "L") q_only.add(id);
  const Identity& l = *rect_loop.find("L");

  auto at3 = find_witness(q_only, l, 3, cfg);
  REQUIRE(at3.status == SearchStatus::Found);
  CHECK(all_hold(satisfies_theory(*at3.model, q_only)));
  CHECK(!satisfies(*at3.model, l).holds);

  auto at2 = find_witness(q_only, l, 2, cfg);
  CHECK(at2.status == SearchStatus::Exhausted);

  Theory no_q2;
  for (const auto& id : rect_loop.identities)
    if (id.name != "Q2") no_q2.add(id);
  auto q2_witness = find_witness(no_q2, *rect_loop.find("Q2"), 2, cfg);
  REQUIRE(q2_witness.status == SearchStatus::Found);
  CHECK(!satisfies(*q2_witness.model, *rect_loop.find("Q2")).holds);

  CHECK_THROWS_AS(find_witness(rect_loop, l, 2, cfg), std::invalid_argument);
}

TEST_CASE("enumerate_models") {
  SearchConfig exact;
  exact.lnh = false;

  auto point = enumerate_models(Theory{}, 1, 10, exact);
  CHECK(point.status == EnumStatus::Complete);
  CHECK(point.models.size() == 1);

  auto forced = enumerate_models(fixtures().theories.at("LEFT_ZERO"), 2, 10,
                                 exact);
  CHECK(forced.status == EnumStatus::Complete);
  REQUIRE(forced.models.size() == 1);
  CHECK(forced.models[0] == left_zero_model(2));

  // The two order-2 quasigroups, cross-checked against brute force.
  auto quasis = enumerate_models(fixtures().theories.at("QUASIGROUP"), 2,
                                 1000, exact);
  CHECK(quasis.status == EnumStatus::Complete);
  size_t brute = 0;
  for (const auto& m : testutil::all_size2_models())
    brute += all_hold(satisfies_theory(m, fixtures().theories.at("QUASIGROUP")));
  CHECK(quasis.models.size() == brute);
  CHECK(quasis.models.size() == 2);

  auto capped = enumerate_models(Theory{}, 2, 5, exact);
  CHECK(capped.status == EnumStatus::CapReached);
  CHECK(capped.models.size() == 5);
}

TEST_CASE("search agrees with the 4096-triple oracle at size 2") {
  SearchConfig cfg;
  auto all = testutil::all_size2_models();
  const Theory& rect_loop = fixtures().theories.at("RECT_LOOP");

  std::mt19937 rng(41);
  for (int round = 0; round < 20; ++round) {
    Theory sub;
    for (const auto& id : rect_loop.identities)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) sub.add(id);
    bool expected = oracle_has_model(sub, all);
    auto got = find_model(sub, 2, cfg);
    CHECK((got.status == SearchStatus::Found) == expected);
    if (got.status == SearchStatus::Found)
      CHECK(all_hold(satisfies_theory(*got.model, sub)));
  }
}

TEST_CASE("least-number heuristic is conservative for existence") {
  for (const auto& [name, th] : fixtures().theories) {
    for (int n = 1; n <= 3; ++n) {
      SearchConfig with, without;
      with.lnh = true;
      without.lnh = false;
      auto a = find_model(th, n, with);
      auto b = find_model(th, n, without);
      INFO(name << " at size " << n);
      CHECK(a.status == b.status);
    }
  }
}

TEST_CASE("single-worker search is deterministic") {
  SearchConfig cfg;
  const Theory& th = fixtures().theories.at("RECT_AXIOMS");
  auto a = find_model(th, 3, cfg);
  auto b = find_model(th, 3, cfg);
  REQUIRE(a.status == SearchStatus::Found);
  CHECK(*a.model == *b.model);
  CHECK(a.stats.nodes == b.stats.nodes);

  SearchConfig exact = cfg;
  exact.lnh = false;
  auto e1 = enumerate_models(th, 2, 100, exact);
  auto e2 = enumerate_models(th, 2, 100, exact);
  CHECK(e1.models == e2.models);
}

TEST_CASE("multi-worker search returns a verified witness") {
  SearchConfig cfg;
  cfg.workers = 3;
  const Theory& th = fixtures().theories.at("RECT_LOOP");
  auto r = find_model(th, 3, cfg);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(all_hold(satisfies_theory(*r.model, th)));

  Theory contradictory = parse_theory(
      "A: x * y = x\n"
      "B: x * y = y\n");
  auto none = find_model(contradictory, 2, cfg);
  CHECK(none.status == SearchStatus::Exhausted);
}

TEST_CASE("node limits are reported distinctly") {
  SearchConfig cfg;
  cfg.node_limit = 3;
  auto r = find_model(fixtures().theories.at("RECT_LOOP"), 3, cfg);
  CHECK(r.status == SearchStatus::LimitExceeded);
}

TEST_CASE("most-constrained strategy finds the same answers") {
  SearchConfig cfg;
  cfg.strategy = CellStrategy::MostConstrained;
  auto r = find_model(fixtures().theories.at("QUASIGROUP"), 3, cfg);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(is_quasigroup(*r.model));
}

TEST_CASE("independence report for a single valid axiom finds nothing") {
  SearchConfig cfg;
  Theory valid = parse_theory("T: x = x\n");
  auto report = independence_report(valid, 3, cfg);
  REQUIRE(report.axioms.size() == 1);
  CHECK(report.axioms[0].status == AxiomVerdict::Status::NoWitness);
  CHECK(!report.all_witnessed());
}

TEST_CASE("independence report finds the minimal witness sizes") {
  SearchConfig cfg;
  auto report = independence_report(fixtures().theories.at("RECT_LOOP"), 4,
                                    cfg);
  REQUIRE(report.axioms.size() == 7);
  CHECK(report.all_witnessed());
  const std::map<std::string, int> minimal = {{"Q1", 2}, {"Q2", 2}, {"Q3", 4},
                                              {"Q4", 4}, {"Q5", 2}, {"Q6", 2},
                                              {"L", 3}};
  for (const auto& a : report.axioms) {
    INFO(a.name);
    CHECK(a.size == minimal.at(a.name));
  }
}

TEST_CASE("independence report on the loop axioms at size 2") {
  SearchConfig cfg;
  auto report = independence_report(fixtures().theories.at("RECT_LOOP"), 2,
                                    cfg);
  for (const auto& a : report.axioms) {
    if (a.name == "L")
      CHECK(a.status == AxiomVerdict::Status::NoWitness);
    if (a.name == "Q2" || a.name == "Q6") {
      CHECK(a.status == AxiomVerdict::Status::Witness);
      CHECK(a.size == 2);
    }
  }
  CHECK(!report.all_witnessed());
}
