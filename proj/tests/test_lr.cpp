#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "probative/inference.hpp"
#include "probative/likelihood_ratio.hpp"
#include "probative/model_dsl.hpp"
#include "support/random_network.hpp"

using namespace probative;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

const auto kH = HypothesisQuery::complement("H", "true");

}  // namespace

TEST_CASE("hypothesis query helpers") {
  auto fig3 = load_fixture("fig3_island").model;
  auto h = HypothesisQuery::for_node(fig3, "H");
  CHECK(h.positive_state == "true");
  CHECK(h.is_complement());
  CHECK_FALSE(HypothesisQuery::versus("S", "a", "b").is_complement());
  CHECK_THROWS_AS(HypothesisQuery::for_node(fig3, "X"), Error);
}

TEST_CASE("probative class") {
  CHECK(probative_class(500) == ProbativeClass::FavoursHp);
  CHECK(probative_class(1) == ProbativeClass::Neutral);
  CHECK(probative_class(1 + 1e-12) == ProbativeClass::Neutral);
  CHECK(probative_class(0.6) == ProbativeClass::FavoursHd);
  CHECK(probative_class(kInf) == ProbativeClass::FavoursHp);
  CHECK(probative_class(0.0) == ProbativeClass::FavoursHd);
  CHECK(to_string(ProbativeClass::FavoursHd) == "FAVOURS_HD");
  CHECK(to_string(ProbativeClass::Neutral) == "NEUTRAL");
}

TEST_CASE("odds update") {
  CHECK(odds_update(1.0 / 1000, 1e7) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(odds_update(1.0 / 6e7, 1e7) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  const double post = odds_update(1.0 / 1000, 100);
  CHECK(post == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(post / (1 + post) == doctest::Approx(1.0 / 11).epsilon(1e-12));
  CHECK_THROWS_AS(odds_update(-1, 2), Error);
}

TEST_CASE("combine independent") {
  std::vector<double> a{100, 5};
  CHECK(rel_close(combine_independent(a), 500, 1e-12));
  CHECK(combine_independent({}) == 1.0);
  std::vector<double> b{100, 5.0 / 9};
  CHECK(rel_close(combine_independent(b), 500.0 / 9, 1e-12));
  std::vector<double> c{2, kInf};
  CHECK(combine_independent(c) == kInf);
  std::vector<double> d{0, 3};
  CHECK(combine_independent(d) == 0.0);
  std::vector<double> e{0, kInf};
  CHECK(code_of([&] { combine_independent(e); }) == ErrorCode::ZeroOverZero);
  std::vector<double> f{-1};
  CHECK(code_of([&] { combine_independent(f); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lr from a single table") {
  auto fig3 = load_fixture("fig3_island").model;
  auto r = lr_from_cpt(fig3, "E", "match", kH);
  CHECK(rel_close(r.lr, 100, 1e-12));
  CHECK(r.probative_class == ProbativeClass::FavoursHp);
  REQUIRE(r.log10_lr.has_value());
  CHECK(*r.log10_lr == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(r.prior_odds.has_value());
  CHECK(rel_close(*r.prior_odds, 1.0 / 1000, 1e-12));
  CHECK(rel_close(*r.posterior_odds, 0.1, 1e-12));

  auto fig4b = load_fixture("fig4b_independent").model;
  CHECK(rel_close(lr_from_cpt(fig4b, "E2", "true", kH).lr, 5, 1e-12));
  CHECK(rel_close(lr_from_cpt(fig4b, "E2", "false", kH).lr, 5.0 / 9, 1e-12));

  // a match can never be missed under Hp
  auto none = lr_from_cpt(fig3, "E", "no_match", kH);
  CHECK(none.lr == 0.0);
  CHECK_FALSE(none.log10_lr.has_value());

  auto fig5 = load_fixture("fig5_dependent").model;
  CHECK(code_of([&] { lr_from_cpt(fig5, "E2", "true", kH); }) == ErrorCode::Structure);
  CHECK(code_of([&] { lr_from_cpt(fig3, "E", "hit", kH); }) == ErrorCode::UnknownState);
}

TEST_CASE("infinite lr") {
  // Hd can never produce a match
  NetworkModel m("m", {{"H", "", {"true", "false"}, {}}, {"E", "", {"y", "n"}, {"H"}}},
                 {{"H", {{0.5, 0.5}}}, {"E", {{0.5, 0.5}, {0.0, 1.0}}}});
  auto r = lr_from_cpt(m, "E", "y", kH);
  CHECK(r.infinite());
  CHECK(r.has_warning("INFINITE"));
  CHECK_FALSE(r.log10_lr.has_value());
  CHECK(r.probative_class == ProbativeClass::FavoursHp);

  auto via = lr_via_inference(m, {{"E", "y"}}, kH);
  CHECK(via.infinite());

  NetworkModel zero("m", {{"H", "", {"true", "false"}, {}}, {"E", "", {"y", "n"}, {"H"}}},
                    {{"H", {{0.5, 0.5}}}, {"E", {{0.0, 1.0}, {0.0, 1.0}}}});
  CHECK(code_of([&] { lr_from_cpt(zero, "E", "y", kH); }) == ErrorCode::ZeroOverZero);
}

TEST_CASE("dependent combination") {
  auto fig5 = load_fixture("fig5_dependent").model;
  CHECK(rel_close(combine_dependent(fig5, {{"E1", "true"}, {"E2", "true"}}, kH).lr, 300, 1e-12));
  auto r = combine_dependent(fig5, {{"E1", "true"}, {"E2", "false"}}, kH);
  CHECK(rel_close(r.lr, 100 * 0.1 / 0.7, 1e-12));
  CHECK(std::abs(r.lr - 14.3) / 14.3 < 0.005);

  auto fig4b = load_fixture("fig4b_independent").model;
  std::vector<double> parts{100, 5};
  CHECK(rel_close(combine_dependent(fig4b, {{"E1", "true"}, {"E2", "true"}}, kH).lr,
                  combine_independent(parts), 1e-12));

  CHECK(code_of([&] { combine_dependent(fig5, {{"E2", "true"}}, kH); }) == ErrorCode::Structure);
  CHECK(code_of([&] { combine_dependent(fig5, {{"H", "true"}}, kH); }) ==
        ErrorCode::InvalidArgument);
  auto fig6 = load_fixture("fig6_dna_errors").model;
  CHECK(code_of([&] { combine_dependent(fig6, {{"E1", "true"}}, kH); }) == ErrorCode::Structure);
}

TEST_CASE("lr recovery from posteriors") {
  CHECK(std::abs(lr_recover(0.99909, 0.00091, 0.117, 0.883) - 8286) / 8286 < 0.005);
  CHECK(std::abs(lr_recover(0.0085, 0.9915, 0.001, 0.999) - 8.56) / 8.56 < 0.01);
  CHECK(std::abs(lr_recover(0.8975, 0.1025, 0.001, 0.999) - 8747) / 8747 < 0.005);
  CHECK(std::abs(lr_recover(0.0866, 0.9134, 1.0 / 1001, 1000.0 / 1001) - 94.8) / 94.8 < 0.005);
  CHECK(lr_recover(0.3, 0.7, 0.3, 0.7) == 1.0);
  CHECK(lr_recover(1.0, 0.0, 0.5, 0.5) == kInf);
  CHECK(code_of([&] { lr_recover(0.5, 0.5, 0.0, 1.0); }) == ErrorCode::ZeroOverZero);
  CHECK(code_of([&] { lr_recover(0.0, 0.0, 0.5, 0.5); }) == ErrorCode::ZeroOverZero);
  CHECK(code_of([&] { lr_recover(1.5, 0.5, 0.5, 0.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("prior override") {
  auto fig3 = load_fixture("fig3_island").model;
  auto m = with_prior_override(fig3, "H", "true", 0.25);
  CHECK(m.table_for("H")->rows[0] == std::vector<double>{0.25, 0.75});
  CHECK(code_of([&] { with_prior_override(fig3, "E", "match", 0.5); }) ==
        ErrorCode::PriorOverrideOnChild);
  CHECK(code_of([&] { with_prior_override(fig3, "H", "true", 1.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { with_prior_override(fig3, "H", "maybe", 0.5); }) ==
        ErrorCode::UnknownState);

  auto src = load_fixture("nonexhaustive_source").model;
  auto s = with_prior_override(src, "Source", "suspect", 0.5);
  const auto& row = s.table_for("Source")->rows[0];
  CHECK(row[0] == 0.5);
  CHECK(row[1] == doctest::Approx(0.5 * 2 / 9).epsilon(1e-12));
  CHECK(row[2] == doctest::Approx(0.5 * 7 / 9).epsilon(1e-12));
}

TEST_CASE("lr via inference") {
  auto fig3 = load_fixture("fig3_island").model;
  auto r = lr_via_inference(fig3, {{"E", "match"}}, kH, 0.5);
  CHECK(rel_close(r.lr, 100, 1e-9));
  CHECK(*r.prior_p == 0.5);
  CHECK(rel_close(*r.posterior_p, 100.0 / 101, 1e-12));

  auto base = lr_via_inference(fig3, {{"E", "match"}}, kH);
  CHECK(rel_close(*base.posterior_p, 1.0 / 11, 1e-12));
  CHECK(rel_close(*base.posterior_odds, *base.prior_odds * base.lr, 1e-12));

  auto fig6 = load_fixture("fig6_dna_errors").model;
  EvidenceSet both{{"E1", "true"}, {"E2", "true"}};
  auto a = lr_via_inference(fig6, both, kH, 1.0 / 1001);
  auto b = lr_via_inference(fig6, both, kH, 0.5);
  CHECK(rel_close(a.lr, b.lr, 1e-9));
  CHECK(*a.posterior_p != doctest::Approx(*b.posterior_p));

  // with a flat prior the LR is the posterior odds
  auto fig8 = load_fixture("fig8_offence").model;
  auto h1 = HypothesisQuery::complement("H1", "true");
  auto o = lr_via_inference(fig8, {{"E1", "match"}}, h1, 0.5);
  CHECK(rel_close(o.lr, *o.posterior_p / (1 - *o.posterior_p), 1e-12));
  CHECK(std::abs(o.lr - 4.76) / 4.76 < 0.005);

  auto empty = lr_via_inference(fig6, {}, kH);
  CHECK(empty.lr == 1.0);
  CHECK(empty.probative_class == ProbativeClass::Neutral);

  CHECK(code_of([&] { lr_via_inference(fig3, {{"H", "true"}}, kH); }) ==
        ErrorCode::InvalidArgument);
  // F copies E, so E=y with F=n cannot happen
  NetworkModel chain("c",
                     {{"H", "", {"true", "false"}, {}},
                      {"E", "", {"y", "n"}, {"H"}},
                      {"F", "", {"y", "n"}, {"E"}}},
                     {{"H", {{0.5, 0.5}}}, {"E", {{0.9, 0.1}, {0.2, 0.8}}}, {"F", {{1, 0}, {0, 1}}}});
  CHECK(code_of([&] { lr_via_inference(chain, {{"E", "y"}, {"F", "n"}}, kH); }) ==
        ErrorCode::ImpossibleEvidence);
  CHECK(code_of([&] { lr_via_inference(fig8, {{"E1", "match"}}, kH, 0.5); }) ==
        ErrorCode::PriorOverrideOnChild);
}

TEST_CASE("lr via inference agrees with the table formulas") {
  auto fig4b = load_fixture("fig4b_independent").model;
  auto fig5 = load_fixture("fig5_dependent").model;
  for (const auto& ev : {EvidenceSet{{"E1", "true"}, {"E2", "true"}},
                         EvidenceSet{{"E1", "true"}, {"E2", "false"}},
                         EvidenceSet{{"E1", "false"}, {"E2", "true"}}}) {
    CAPTURE(ev.to_string());
    CHECK(rel_close(lr_via_inference(fig4b, ev, kH).lr, combine_dependent(fig4b, ev, kH).lr,
                    1e-9));
    CHECK(rel_close(lr_via_inference(fig5, ev, kH).lr, combine_dependent(fig5, ev, kH).lr, 1e-9));
  }
}

TEST_CASE("state pair lr") {
  auto fig3 = load_fixture("fig3_island").model;
  auto pair = state_pair_lr(fig3, {{"E", "match"}}, "H", "true", "false");
  CHECK(rel_close(pair.lr, lr_via_inference(fig3, {{"E", "match"}}, kH).lr, 1e-9));
  CHECK(pair.exhaustive);
  CHECK_FALSE(pair.has_warning("NON_EXHAUSTIVE"));

  auto src = load_fixture("nonexhaustive_source").model;
  EvidenceSet pos{{"Screen", "positive"}};
  auto r = state_pair_lr(src, pos, "Source", "suspect", "unrelated");
  CHECK(rel_close(r.lr, 1.0, 1e-9));
  CHECK_FALSE(r.exhaustive);
  CHECK(r.has_warning("NON_EXHAUSTIVE"));
  CHECK(r.probative_class == ProbativeClass::Neutral);

  auto prior = posterior(src, {}, "Source");
  auto post = posterior(src, pos, "Source");
  CHECK(std::abs(post.probability("unrelated") - prior.probability("unrelated")) > 0.01);
  const double post_ratio = post.probability("suspect") / post.probability("unrelated");
  const double prior_ratio = prior.probability("suspect") / prior.probability("unrelated");
  CHECK(std::abs(post_ratio - prior_ratio) <= 1e-9);

  auto via = lr_via_inference(src, pos, HypothesisQuery::versus("Source", "suspect", "unrelated"));
  CHECK(rel_close(via.lr, r.lr, 1e-9));
  CHECK(via.has_warning("NON_EXHAUSTIVE"));

  // suspect vs everyone else is not neutral
  auto full = lr_via_inference(src, pos, HypothesisQuery::complement("Source", "suspect"));
  CHECK(full.lr < 1.0);
  CHECK(full.exhaustive);

  CHECK(code_of([&] { state_pair_lr(src, pos, "Source", "suspect", "suspect"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { state_pair_lr(src, pos, "Source", "suspect", "cousin"); }) ==
        ErrorCode::UnknownState);
}

TEST_CASE("named negative on a binary node is exhaustive") {
  auto fig3 = load_fixture("fig3_island").model;
  auto r = lr_via_inference(fig3, {{"E", "match"}}, HypothesisQuery::versus("H", "true", "false"));
  CHECK(r.exhaustive);
  CHECK(rel_close(r.lr, 100, 1e-9));
}

TEST_CASE("complement on a multi-state node") {
  auto src = load_fixture("nonexhaustive_source").model;
  auto r = lr_via_inference(src, {{"Screen", "positive"}},
                            HypothesisQuery::complement("Source", "relative"));
  // P(pos | relative) / P(pos | not relative) = 0.5 / 0.05
  CHECK(rel_close(r.lr, 10.0, 1e-9));
  CHECK(r.exhaustive);
}

TEST_CASE("monotonicity and neutrality on random models") {
  std::mt19937_64 rng(99);
  testing::RandomNetworkOptions opt;
  opt.binary_root = true;
  opt.max_nodes = 8;
  for (int i = 0; i < 100; ++i) {
    auto model = testing::random_network(rng, opt);
    std::uniform_real_distribution<double> prior(0.05, 0.95);
    model = with_prior_override(model, "N0", "s0", prior(rng));
    auto ev = testing::sample_evidence(model, rng, 4, {"N0"});
    auto hyp = HypothesisQuery::complement("N0", "s0");
    auto r = lr_via_inference(model, ev, hyp);
    const double shift = *r.posterior_p - *r.prior_p;
    if (r.lr > 1 + 1e-9) CHECK(shift > -1e-9);
    if (r.lr < 1 - 1e-9) CHECK(shift < 1e-9);

    auto flat = testing::neutralize_children(model, "N0");
    auto n = lr_via_inference(flat, testing::sample_evidence(flat, rng, 4, {"N0"}), hyp);
    CHECK(std::abs(n.lr - 1.0) <= 1e-9);
    CHECK(std::abs(*n.posterior_p - *n.prior_p) <= 1e-9);
  }
}
