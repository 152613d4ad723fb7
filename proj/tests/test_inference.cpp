#include <doctest.h>

#include <cmath>
#include <random>

#include "probative/factor.hpp"
#include "probative/inference.hpp"
#include "probative/model_dsl.hpp"
#include "support/random_network.hpp"

using namespace probative;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

// Sums joint_probability over every full assignment consistent with the
// evidence, going through the public string-keyed API only.
double brute_force_evidence(const NetworkModel& model, const EvidenceSet& evidence) {
  const auto& nodes = model.nodes();
  std::vector<std::size_t> digit(nodes.size(), 0);
  double total = 0.0;
  while (true) {
    FullAssignment a;
    bool consistent = true;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      a[nodes[i].id] = nodes[i].states[digit[i]];
      if (auto s = evidence.state_of(nodes[i].id); s && *s != nodes[i].states[digit[i]]) {
        consistent = false;
      }
    }
    if (consistent) total += joint_probability(model, a);
    std::size_t i = 0;
    while (i < nodes.size() && ++digit[i] == nodes[i].states.size()) digit[i++] = 0;
    if (i == nodes.size()) break;
  }
  return total;
}

}  // namespace

TEST_CASE("factor algebra") {
  // scope {0, 1}, cards {2, 3}; last variable fastest
  Factor f({0, 1}, {2, 3}, {1, 2, 3, 4, 5, 6});
  CHECK(f.total() == 21);

  Factor over0 = f.sum_out(1);
  CHECK(over0.values() == std::vector<double>{6, 15});
  Factor over1 = f.sum_out(0);
  CHECK(over1.values() == std::vector<double>{5, 7, 9});

  Factor r = f.reduce(1, 2);
  CHECK(r.values() == std::vector<double>{3, 6});

  Factor g({1}, {3}, {10, 20, 30});
  Factor p = f.product(g);
  CHECK(p.values() == std::vector<double>{10, 40, 90, 40, 100, 180});

  Factor scalar = Factor::constant(2.0);
  CHECK(scalar.product(g).values() == std::vector<double>{20, 40, 60});
  CHECK(Factor().total() == 1.0);
}

TEST_CASE("joint probability by chain rule") {
  auto fig3 = load_fixture("fig3_island").model;
  CHECK(joint_probability(fig3, {{"H", "true"}, {"E", "match"}}) ==
        doctest::Approx(1.0 / 1001).epsilon(1e-15));
  CHECK(joint_probability(fig3, {{"H", "false"}, {"E", "match"}}) ==
        doctest::Approx(1000.0 / 1001 * 0.01).epsilon(1e-15));
  CHECK(code_of([&] { joint_probability(fig3, {{"H", "true"}}); }) ==
        ErrorCode::IncompleteAssignment);
  CHECK(code_of([&] { joint_probability(fig3, {{"H", "true"}, {"E", "x"}}); }) ==
        ErrorCode::UnknownState);
}

TEST_CASE("chain rule sums to one on random models") {
  std::mt19937_64 rng(5);
  testing::RandomNetworkOptions opt;
  opt.min_nodes = opt.max_nodes = 5;
  for (int i = 0; i < 30; ++i) {
    auto model = testing::random_network(rng, opt);
    CHECK(brute_force_evidence(model, {}) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("island posterior") {
  auto fig3 = load_fixture("fig3_island").model;
  for (auto* fn : {&posterior, &enumerate_posterior}) {
    auto r = fn(fig3, {{"E", "match"}}, "H");
    CHECK(r.probability("false") == doctest::Approx(10.0 / 11).epsilon(1e-12));
    CHECK(r.probability("true") == doctest::Approx(1.0 / 11).epsilon(1e-12));
    CHECK(r.p_evidence == doctest::Approx(11.0 / 1001).epsilon(1e-12));
    CHECK(r.states == std::vector<std::string>{"true", "false"});
    CHECK_THROWS_AS(r.probability("maybe"), Error);
  }
  CHECK(probability_of_evidence(fig3, {{"E", "match"}}) ==
        doctest::Approx(11.0 / 1001).epsilon(1e-12));
  CHECK(probability_of_evidence(fig3, {}) == 1.0);
}

TEST_CASE("empty evidence gives the root prior") {
  for (const auto& name : fixture_names()) {
    auto model = load_fixture(name).model;
    for (const auto& def : model.nodes()) {
      if (!def.parents.empty()) continue;
      auto r = posterior(model, {}, def.id);
      const auto& row = model.table_for(def.id)->rows[0];
      for (std::size_t s = 0; s < row.size(); ++s) {
        CHECK(r.distribution[s] == doctest::Approx(row[s]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("two independent items by odds form") {
  auto fig4b = load_fixture("fig4b_independent").model;
  auto r = enumerate_posterior(fig4b, {{"E1", "true"}, {"E2", "true"}}, "H");
  // prior odds 1/1000 times 500
  const double odds = r.probability("true") / r.probability("false");
  CHECK(odds == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.probability("true") == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("elimination agrees with the oracle on fixtures") {
  for (const auto& name : fixture_names()) {
    auto doc = load_fixture(name);
    for (const auto& sc : doc.metadata["scenarios"]) {
      EvidenceSet ev;
      for (const auto& [node, state] : sc["evidence"].items()) ev.add(node, state.get<std::string>());
      for (const auto& def : doc.model.nodes()) {
        CAPTURE(name);
        CAPTURE(def.id);
        auto a = posterior(doc.model, ev, def.id);
        auto b = enumerate_posterior(doc.model, ev, def.id);
        for (std::size_t s = 0; s < a.distribution.size(); ++s) {
          CHECK(std::abs(a.distribution[s] - b.distribution[s]) <= 1e-12);
        }
        CHECK(a.p_evidence == doctest::Approx(b.p_evidence).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("observed query node is one-hot") {
  auto fig3 = load_fixture("fig3_island").model;
  auto r = posterior(fig3, {{"E", "no_match"}}, "E");
  CHECK(r.distribution == std::vector<double>{0.0, 1.0});
}

TEST_CASE("impossible evidence") {
  auto fig3 = load_fixture("fig3_island").model;
  EvidenceSet ev{{"H", "true"}, {"E", "no_match"}};
  CHECK(probability_of_evidence(fig3, ev) == 0.0);
  CHECK(code_of([&] { posterior(fig3, ev, "H"); }) == ErrorCode::ImpossibleEvidence);
  CHECK(code_of([&] { enumerate_posterior(fig3, ev, "H"); }) == ErrorCode::ImpossibleEvidence);
}

TEST_CASE("bad references") {
  auto fig3 = load_fixture("fig3_island").model;
  CHECK(code_of([&] { posterior(fig3, {}, "Q"); }) == ErrorCode::UnknownNode);
  CHECK(code_of([&] { posterior(fig3, {{"Q", "x"}}, "H"); }) == ErrorCode::UnknownNode);
  CHECK(code_of([&] { posterior(fig3, {{"E", "x"}}, "H"); }) == ErrorCode::UnknownState);
  CHECK(code_of([&] { posterior(NetworkModel("m", {{"A", "", {"x"}, {}}}, {}), {}, "A"); }) ==
        ErrorCode::InvalidModel);
}

TEST_CASE("all posteriors follow declaration order") {
  auto fig6 = load_fixture("fig6_dna_errors").model;
  auto all = all_posteriors(fig6, {{"E1", "true"}});
  REQUIRE(all.size() == fig6.nodes().size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].query_node == fig6.nodes()[i].id);
    double sum = 0;
    for (double p : all[i].distribution) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("elimination order") {
  auto fig6 = load_fixture("fig6_dna_errors").model;
  auto order = elimination_order(fig6, {{"E1", "true"}, {"E2", "true"}}, "H");
  // every unobserved non-query node is eliminated exactly once
  std::sort(order.begin(), order.end());
  CHECK(order == std::vector<std::string>{"H1", "H2"});
  auto again = elimination_order(fig6, {{"E1", "true"}, {"E2", "true"}}, "H");
  CHECK(again == elimination_order(fig6, {{"E1", "true"}, {"E2", "true"}}, "H"));
}

TEST_CASE("joint probability agrees with the compiled oracle") {
  std::mt19937_64 rng(21);
  testing::RandomNetworkOptions opt;
  opt.max_nodes = 6;
  for (int i = 0; i < 40; ++i) {
    auto model = testing::random_network(rng, opt);
    auto ev = testing::sample_evidence(model, rng, 3);
    const double brute = brute_force_evidence(model, ev);
    CHECK(brute == doctest::Approx(probability_of_evidence(model, ev)).epsilon(1e-10));
    const auto& q = model.nodes().front().id;
    CHECK(enumerate_posterior(model, ev, q).p_evidence ==
          doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("oracle equivalence on random models") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 100; ++i) {
    auto model = testing::random_network(rng);
    auto ev = testing::sample_evidence(model, rng, model.nodes().size() / 2);
    for (const auto& def : model.nodes()) {
      auto a = posterior(model, ev, def.id);
      auto b = enumerate_posterior(model, ev, def.id);
      for (std::size_t s = 0; s < a.distribution.size(); ++s) {
        REQUIRE(std::abs(a.distribution[s] - b.distribution[s]) <= 1e-10);
      }
    }
  }
}
