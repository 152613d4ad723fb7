#include "probative/likelihood_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "probative/inference.hpp"

namespace probative {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ResolvedHypothesis {
  const NodeDef* node = nullptr;
  std::size_t positive = 0;
  std::vector<std::size_t> negative;  // states making up Hd
  bool exhaustive = true;
};

ResolvedHypothesis resolve(const NetworkModel& model, const HypothesisQuery& h) {
  ResolvedHypothesis r;
  r.node = &model.node(h.node);
  auto pos = r.node->state_index(h.positive_state);
  if (!pos) {
    throw Error(ErrorCode::UnknownState,
                "node '" + h.node + "' has no state '" + h.positive_state + "'");
  }
  r.positive = *pos;
  if (h.negative_state) {
    auto neg = r.node->state_index(*h.negative_state);
    if (!neg) {
      throw Error(ErrorCode::UnknownState,
                  "node '" + h.node + "' has no state '" + *h.negative_state + "'");
    }
    if (*neg == *pos) {
      throw Error(ErrorCode::InvalidArgument, "Hp and Hd name the same state '" +
                                                  h.positive_state + "'");
    }
    r.negative = {*neg};
    r.exhaustive = r.node->states.size() == 2;
  } else {
    for (std::size_t s = 0; s < r.node->states.size(); ++s) {
      if (s != *pos) r.negative.push_back(s);
    }
  }
  return r;
}

// A single Hd state to read table entries for; complement queries only have
// one when the node is binary.
std::size_t single_negative(const ResolvedHypothesis& r, std::string_view op) {
  if (r.negative.size() != 1) {
    throw Error(ErrorCode::Structure,
                std::string(op) + " needs a binary hypothesis node or a named Hd state; '" +
                    r.node->id + "' has " + std::to_string(r.node->states.size()) + " states");
  }
  return r.negative.front();
}

std::string pair_text(const ResolvedHypothesis& r) {
  std::string d;
  for (auto s : r.negative) {
    if (!d.empty()) d += "|";
    d += r.node->states[s];
  }
  return r.node->id + "=" + r.node->states[r.positive] + " vs " + r.node->id + "=" + d;
}

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? std::numeric_limits<double>::quiet_NaN() : kInf;
  return num / den;
}

std::optional<double> odds(double p, double d) {
  if (p == 0.0 && d == 0.0) return std::nullopt;
  return ratio(p, d);
}

void finish(LikelihoodRatioReport& report, const ResolvedHypothesis& r) {
  report.exhaustive = r.exhaustive;
  report.probative_class = probative_class(report.lr);
  if (std::isfinite(report.lr) && report.lr > 0.0 && !report.log10_lr) {
    report.log10_lr = std::log10(report.lr);
  }
  if (report.infinite()) {
    report.log10_lr.reset();
    report.warnings.push_back(
        {"INFINITE", "P(E|Hd) is zero while P(E|Hp) is not; the evidence is conclusive for " +
                         r.node->id + "=" + r.node->states[r.positive]});
  }
  if (!r.exhaustive) {
    report.warnings.push_back(
        {"NON_EXHAUSTIVE", "hypotheses " + pair_text(r) +
                               " are not exhaustive; the LR and its probative class describe "
                               "only this pair, not " +
                               r.node->id + "=" + r.node->states[r.positive] + " itself"});
  }
}

// P(Hp) and P(Hd) read off a posterior distribution for the hypothesis node.
std::pair<double, double> split(const std::vector<double>& dist, const ResolvedHypothesis& r) {
  double d = 0.0;
  for (auto s : r.negative) d += dist[s];
  return {dist[r.positive], d};
}

// Fills prior/posterior odds through inference; the table-driven routes use
// this so their reports carry the same fields as lr_via_inference.
void attach_odds(LikelihoodRatioReport& report, const NetworkModel& model,
                 const EvidenceSet& evidence, const ResolvedHypothesis& r) {
  const auto prior = posterior(model, {}, r.node->id);
  auto [prior_p, prior_d] = split(prior.distribution, r);
  report.prior_p = prior_p;
  report.prior_odds = odds(prior_p, prior_d);
  try {
    const auto post = posterior(model, evidence, r.node->id);
    auto [post_p, post_d] = split(post.distribution, r);
    report.posterior_p = post_p;
    report.posterior_odds = odds(post_p, post_d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ImpossibleEvidence) throw;
  }
}

struct LogProduct {
  double value = 1.0;
  std::optional<double> log10;
};

LogProduct log_product(std::span<const double> factors) {
  bool zero = false;
  bool infinite = false;
  double sum = 0.0;
  for (double f : factors) {
    if (std::isnan(f) || f < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "likelihood ratios must be non-negative");
    }
    if (f == 0.0) {
      zero = true;
    } else if (std::isinf(f)) {
      infinite = true;
    } else {
      sum += std::log10(f);
    }
  }
  if (zero && infinite) {
    throw Error(ErrorCode::ZeroOverZero,
                "combining a zero LR with an infinite LR is undefined");
  }
  if (zero) return {0.0, std::nullopt};
  if (infinite) return {kInf, std::nullopt};
  if (factors.empty()) return {1.0, 0.0};
  return {std::pow(10.0, sum), sum};
}

}  // namespace

HypothesisQuery HypothesisQuery::complement(std::string node, std::string positive_state) {
  return {std::move(node), std::move(positive_state), std::nullopt};
}

HypothesisQuery HypothesisQuery::versus(std::string node, std::string positive_state,
                                        std::string negative_state) {
  return {std::move(node), std::move(positive_state), std::move(negative_state)};
}

HypothesisQuery HypothesisQuery::for_node(const NetworkModel& model, std::string_view node) {
  const NodeDef& def = model.node(node);
  if (def.states.empty()) {
    throw Error(ErrorCode::InvalidModel, "node '" + def.id + "' has no states");
  }
  return complement(def.id, def.states.front());
}

std::string_view to_string(ProbativeClass c) {
  switch (c) {
    case ProbativeClass::FavoursHp: return "FAVOURS_HP";
    case ProbativeClass::FavoursHd: return "FAVOURS_HD";
    case ProbativeClass::Neutral: return "NEUTRAL";
  }
  return "NEUTRAL";
}

bool LikelihoodRatioReport::infinite() const { return std::isinf(lr); }

bool LikelihoodRatioReport::has_warning(std::string_view code) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [&](const ReportWarning& w) { return w.code == code; });
}

ProbativeClass probative_class(double lr) {
  if (lr > 1.0 + kNeutralBand) return ProbativeClass::FavoursHp;
  if (lr < 1.0 - kNeutralBand) return ProbativeClass::FavoursHd;
  return ProbativeClass::Neutral;
}

double odds_update(double prior_odds, double lr) {
  if (!std::isfinite(prior_odds) || !std::isfinite(lr) || prior_odds < 0.0 || lr < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "odds_update needs finite non-negative inputs");
  }
  return prior_odds * lr;
}

double combine_independent(std::span<const double> lrs) { return log_product(lrs).value; }

LikelihoodRatioReport lr_from_cpt(const NetworkModel& model, std::string_view evidence_node,
                                  std::string_view observed_state,
                                  const HypothesisQuery& hypothesis) {
  require_valid(model);
  const auto r = resolve(model, hypothesis);
  const NodeDef& ev = model.node(evidence_node);
  if (ev.parents.size() != 1 || ev.parents.front() != r.node->id) {
    throw Error(ErrorCode::Structure, "'" + ev.id + "' is not a child of '" + r.node->id +
                                          "' alone; its table does not hold P(E|H)");
  }
  const std::size_t neg = single_negative(r, "lr_from_cpt");

  const double num = cpt_lookup(model, ev.id, observed_state,
                                {{r.node->id, r.node->states[r.positive]}});
  const double den =
      cpt_lookup(model, ev.id, observed_state, {{r.node->id, r.node->states[neg]}});
  if (num == 0.0 && den == 0.0) {
    throw Error(ErrorCode::ZeroOverZero, "P(E|Hp) and P(E|Hd) are both zero for " + ev.id +
                                             "=" + std::string(observed_state));
  }

  LikelihoodRatioReport report;
  report.lr = ratio(num, den);
  EvidenceSet evidence;
  evidence.add(ev.id, std::string(observed_state));
  attach_odds(report, model, evidence, r);
  finish(report, r);
  return report;
}

LikelihoodRatioReport combine_dependent(const NetworkModel& model, const EvidenceSet& evidence,
                                        const HypothesisQuery& hypothesis) {
  require_valid(model);
  check_evidence(model, evidence);
  const auto r = resolve(model, hypothesis);
  const std::size_t neg = single_negative(r, "combine_dependent");
  if (evidence.contains(r.node->id)) {
    throw Error(ErrorCode::InvalidArgument,
                "hypothesis node '" + r.node->id + "' cannot also be evidence");
  }

  std::vector<double> localized;
  for (const auto& [node_id, state] : evidence) {
    const NodeDef& node = model.node(node_id);
    ParentAssignment given_p;
    ParentAssignment given_d;
    bool depends_on_h = false;
    for (const auto& parent : node.parents) {
      if (parent == r.node->id) {
        depends_on_h = true;
        given_p.emplace(parent, r.node->states[r.positive]);
        given_d.emplace(parent, r.node->states[neg]);
      } else if (auto s = evidence.state_of(parent)) {
        given_p.emplace(parent, std::string(*s));
        given_d.emplace(parent, std::string(*s));
      } else {
        throw Error(ErrorCode::Structure,
                    "parent '" + parent + "' of evidence node '" + node_id +
                        "' is neither the hypothesis nor observed evidence; use "
                        "lr_via_inference");
      }
    }
    if (!depends_on_h) continue;  // the localized ratio is exactly 1
    const double num = cpt_lookup(model, node_id, state, given_p);
    const double den = cpt_lookup(model, node_id, state, given_d);
    if (num == 0.0 && den == 0.0) {
      throw Error(ErrorCode::ZeroOverZero,
                  "P(" + node_id + "=" + state + " | parents) is zero under both hypotheses");
    }
    localized.push_back(ratio(num, den));
  }

  const auto combined = log_product(localized);
  LikelihoodRatioReport report;
  report.lr = combined.value;
  report.log10_lr = combined.log10;
  attach_odds(report, model, evidence, r);
  finish(report, r);
  return report;
}

double lr_recover(double posterior_p, double posterior_d, double prior_p, double prior_d) {
  for (double v : {posterior_p, posterior_d, prior_p, prior_d}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "lr_recover inputs must lie in [0, 1]");
    }
  }
  if (prior_p == 0.0 || prior_d == 0.0) {
    throw Error(ErrorCode::ZeroOverZero,
                "a zero prior for Hp or Hd leaves the LR undefined");
  }
  if (posterior_p == 0.0 && posterior_d == 0.0) {
    throw Error(ErrorCode::ZeroOverZero, "posterior probabilities of Hp and Hd are both zero");
  }
  if (posterior_d == 0.0) return kInf;
  return (posterior_p * prior_d) / (posterior_d * prior_p);
}

NetworkModel with_prior_override(const NetworkModel& model, std::string_view node,
                                 std::string_view positive_state, double prior) {
  const NodeDef& def = model.node(node);
  if (!def.parents.empty()) {
    throw Error(ErrorCode::PriorOverrideOnChild,
                "node '" + def.id + "' has parents; its prior is not a free parameter");
  }
  if (!(prior > 0.0 && prior < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "prior override must lie strictly inside (0, 1)");
  }
  auto pos = def.state_index(positive_state);
  if (!pos) {
    throw Error(ErrorCode::UnknownState,
                "node '" + def.id + "' has no state '" + std::string(positive_state) + "'");
  }
  const ConditionalTable* table = model.table_for(def.id);
  if (table == nullptr || table->rows.size() != 1 ||
      table->rows.front().size() != def.states.size()) {
    throw Error(ErrorCode::InvalidModel, "node '" + def.id + "' has a malformed prior table");
  }

  const auto& old = table->rows.front();
  double rest = 0.0;
  for (std::size_t s = 0; s < old.size(); ++s) {
    if (s != *pos) rest += old[s];
  }
  std::vector<double> row(old.size());
  const double others = static_cast<double>(old.size() - 1);
  for (std::size_t s = 0; s < old.size(); ++s) {
    if (s == *pos) {
      row[s] = prior;
    } else if (rest > 0.0) {
      row[s] = (1.0 - prior) * old[s] / rest;
    } else {
      row[s] = (1.0 - prior) / others;
    }
  }
  return model.with_table({def.id, {std::move(row)}});
}

LikelihoodRatioReport lr_via_inference(const NetworkModel& model, const EvidenceSet& evidence,
                                       const HypothesisQuery& hypothesis,
                                       std::optional<double> prior_override) {
  require_valid(model);
  const auto r = resolve(model, hypothesis);
  if (evidence.contains(r.node->id)) {
    throw Error(ErrorCode::InvalidArgument,
                "hypothesis node '" + r.node->id + "' cannot also be evidence");
  }
  const NetworkModel run =
      prior_override
          ? with_prior_override(model, r.node->id, r.node->states[r.positive], *prior_override)
          : model;

  const auto prior = posterior(run, {}, r.node->id);
  const auto post = posterior(run, evidence, r.node->id);
  const auto [prior_p, prior_d] = split(prior.distribution, r);
  const auto [post_p, post_d] = split(post.distribution, r);

  LikelihoodRatioReport report;
  report.lr = lr_recover(post_p, post_d, prior_p, prior_d);
  report.prior_p = prior_p;
  report.posterior_p = post_p;
  report.prior_odds = odds(prior_p, prior_d);
  report.posterior_odds = odds(post_p, post_d);
  finish(report, r);
  return report;
}

LikelihoodRatioReport state_pair_lr(const NetworkModel& model, const EvidenceSet& evidence,
                                    std::string_view node, std::string_view state_p,
                                    std::string_view state_d) {
  require_valid(model);
  const auto r = resolve(model, HypothesisQuery::versus(std::string(node), std::string(state_p),
                                                       std::string(state_d)));
  if (evidence.contains(r.node->id)) {
    throw Error(ErrorCode::InvalidArgument,
                "hypothesis node '" + r.node->id + "' cannot also be evidence");
  }

  const auto prior = posterior(model, {}, r.node->id);
  const auto [prior_p, prior_d] = split(prior.distribution, r);

  // P(E | node = s) = P(E, node = s) / P(node = s)
  auto likelihood = [&](std::string_view state, double state_prior) {
    if (state_prior == 0.0) {
      throw Error(ErrorCode::ImpossibleEvidence, "cannot condition on " + r.node->id + "=" +
                                                     std::string(state) +
                                                     ": its prior probability is zero");
    }
    EvidenceSet conditioned = evidence;
    conditioned.add(r.node->id, std::string(state));
    return probability_of_evidence(model, conditioned) / state_prior;
  };
  const double like_p = likelihood(state_p, prior_p);
  const double like_d = likelihood(state_d, prior_d);
  if (like_p == 0.0 && like_d == 0.0) {
    throw Error(ErrorCode::ImpossibleEvidence,
                "evidence {" + evidence.to_string() + "} is impossible under both states");
  }

  LikelihoodRatioReport report;
  report.lr = ratio(like_p, like_d);
  report.prior_p = prior_p;
  report.prior_odds = odds(prior_p, prior_d);
  const auto post = posterior(model, evidence, r.node->id);
  const auto [post_p, post_d] = split(post.distribution, r);
  report.posterior_p = post_p;
  report.posterior_odds = odds(post_p, post_d);
  finish(report, r);
  return report;
}

}  // namespace probative
