#include <doctest.h>

#include "probative/inference.hpp"
#include "probative/likelihood_ratio.hpp"
#include "probative/model_dsl.hpp"

using namespace probative;

namespace {

EvidenceSet evidence_of(const nlohmann::json& obj) {
  EvidenceSet ev;
  for (const auto& [node, state] : obj.items()) ev.add(node, state.get<std::string>());
  return ev;
}

}  // namespace

TEST_CASE("stated table entries are exact") {
  for (const auto& name : fixture_names()) {
    auto doc = load_fixture(name);
    CHECK(doc.metadata["fixture"] == name);
    CHECK(doc.metadata.contains("description"));
    for (const auto& entry : doc.metadata.value("stated", nlohmann::json::array())) {
      CAPTURE(name);
      CAPTURE(entry.dump());
      ParentAssignment given;
      for (const auto& [k, v] : entry["given"].items()) given[k] = v.get<std::string>();
      const double expected = parse_probability(entry["value"].get<std::string>());
      CHECK(cpt_lookup(doc.model, entry["node"].get<std::string>(),
                       entry["state"].get<std::string>(), given) == expected);
    }
  }
}

TEST_CASE("stated marginals") {
  for (const auto& name : fixture_names()) {
    auto doc = load_fixture(name);
    for (const auto& entry : doc.metadata.value("stated_marginals", nlohmann::json::array())) {
      CAPTURE(name);
      CAPTURE(entry.dump());
      auto r = posterior(doc.model, {}, entry["node"].get<std::string>());
      const double expected = parse_probability(entry["value"].get<std::string>());
      CHECK(r.probability(entry["state"].get<std::string>()) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("scenarios resolve") {
  for (const auto& name : fixture_names()) {
    auto doc = load_fixture(name);
    REQUIRE(doc.metadata.contains("scenarios"));
    for (const auto& sc : doc.metadata["scenarios"]) {
      CAPTURE(name);
      CAPTURE(sc.dump());
      auto ev = evidence_of(sc["evidence"]);
      auto hyp = HypothesisQuery::for_node(doc.model, sc["hypothesis"].get<std::string>());
      if (sc.contains("positive")) hyp.positive_state = sc["positive"];
      if (sc.contains("negative")) hyp.negative_state = sc["negative"].get<std::string>();
      auto r = lr_via_inference(doc.model, ev, hyp);
      CHECK(r.lr >= 0.0);
    }
  }
}

TEST_CASE("fixture specifics") {
  auto fig4b = load_fixture("fig4b_independent").model;
  CHECK(cpt_lookup(fig4b, "E2", "true", {{"H", "true"}}) == 0.5);
  CHECK(cpt_lookup(fig4b, "E2", "true", {{"H", "false"}}) == 0.1);

  auto fig5 = load_fixture("fig5_dependent").model;
  CHECK(cpt_lookup(fig5, "E2", "true", {{"H", "true"}, {"E1", "true"}}) == 0.9);
  CHECK(cpt_lookup(fig5, "E2", "true", {{"H", "false"}, {"E1", "true"}}) == 0.3);

  auto fig8 = load_fixture("fig8_offence").model;
  CHECK(cpt_lookup(fig8, "E2", "tiny", {{"H", "true"}, {"H1", "true"}}) == 0.1);
  CHECK(cpt_lookup(fig8, "E2", "tiny", {{"H", "true"}, {"H1", "false"}}) == 0.8);
  auto h1 = posterior(fig8, {{"E1", "match"}}, "H1");
  CHECK(h1.probability("true") == doctest::Approx(0.8264).epsilon(1e-4));
  auto h1b = posterior(fig8, {{"E1", "match"}, {"E2", "tiny"}}, "H1");
  CHECK(h1b.probability("true") == doctest::Approx(0.3765).epsilon(1e-4));

  auto fig11 = load_fixture("fig11_pub").model;
  CHECK(posterior(fig11, {}, "H1").probability("true") == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(posterior(fig11, {}, "Pub").probability("true") == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(posterior(fig11, {}, "H").probability("true") == doctest::Approx(0.117).epsilon(1e-12));
  CHECK(cpt_lookup(fig11, "E", "match", {{"H", "false"}, {"TestError", "false"}}) == 1e-4);
}

TEST_CASE("fig11 witness sequence") {
  auto fig11 = load_fixture("fig11_pub").model;
  auto h1 = HypothesisQuery::complement("H1", "true");
  EvidenceSet dna{{"E", "match"}, {"QualityCheck", "passed"}};
  EvidenceSet prosecution = dna;
  prosecution.add("W1", "similar");
  prosecution.add("W3", "true");
  EvidenceSet defence = prosecution;
  defence.add("W2", "not_similar");
  const double a = lr_via_inference(fig11, dna, h1).lr;
  const double b = lr_via_inference(fig11, prosecution, h1).lr;
  const double c = lr_via_inference(fig11, defence, h1).lr;
  CHECK(a == doctest::Approx(8.56).epsilon(0.01));
  CHECK(b > a);
  CHECK(c < b);
}
