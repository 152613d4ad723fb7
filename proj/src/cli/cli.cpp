#include "probative/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "probative/inference.hpp"
#include "probative/likelihood_ratio.hpp"
#include "probative/model_dsl.hpp"
#include "probative/report_json.hpp"
#include "probative/service.hpp"

namespace probative::cli {

using nlohmann::json;

std::string format_sig4(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INFINITE" : "-INFINITE";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

namespace {

struct Options {
  std::string model_path;
  std::string fixture;
  std::vector<std::string> evidence;
  std::vector<std::string> query;
  std::string hypothesis;
  std::string against;
  std::optional<double> prior;
  std::string method = "inference";
  std::string format = "human";
  std::string bind = "127.0.0.1";
  int port = 8080;
  bool as_json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownState:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownFixture:
      return kUsage;
    case ErrorCode::InvalidModel:
    case ErrorCode::Cycle:
    case ErrorCode::Parse:
    case ErrorCode::Schema:
    case ErrorCode::MissingParent:
      return kValidation;
    default:
      return kInference;
  }
}

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err), machine_(opt.format == "machine") {}

  int guarded(int (Runner::*body)()) {
    try {
      return (this->*body)();
    } catch (const UsageError& e) {
      return fail(kUsage, "USAGE", e.what());
    } catch (const ParseError& e) {
      return fail(kValidation, "PARSE", source_label() + ":" + e.what());
    } catch (const ModelValidationError& e) {
      if (machine_) {
        emit({{"record", "validation"}, {"model", source_label()}, {"report", to_json(e.report())}});
      } else {
        err_ << source_label() << ": invalid model\n" << e.report().to_string();
      }
      return kValidation;
    } catch (const Error& e) {
      return fail(exit_code_for(e.code()), std::string(to_string(e.code())), e.what());
    }
  }

  int validate() {
    ModelDocument doc = load();
    ValidationReport report = validate_network(doc.model);
    if (machine_) {
      emit({{"record", "validation"}, {"model", source_label()}, {"report", to_json(report)}});
    } else {
      out_ << source_label() << ": ok (" << doc.model.nodes().size() << " nodes)\n";
    }
    return kSuccess;
  }

  int infer() {
    ModelDocument doc = load();
    const NetworkModel& model = doc.model;
    EvidenceSet evidence = parse_evidence(model);
    std::vector<std::string> nodes = opt_.query;
    if (nodes.empty()) {
      for (const auto& n : model.nodes()) nodes.push_back(n.id);
    }
    for (const auto& id : nodes) model.node(id);

    std::vector<PosteriorReport> reports;
    for (const auto& id : nodes) reports.push_back(posterior(model, evidence, id));

    if (machine_) {
      for (const auto& r : reports) {
        json rec = to_json(r);
        rec["record"] = "posterior";
        rec["evidence"] = to_json(evidence);
        emit(rec);
      }
      return kSuccess;
    }
    const std::string given = evidence.empty() ? "" : " | " + evidence.to_string();
    out_ << "P(evidence) = " << format_sig4(reports.front().p_evidence) << "\n";
    for (const auto& r : reports) {
      for (std::size_t s = 0; s < r.states.size(); ++s) {
        out_ << "P(" << r.query_node << "=" << r.states[s] << given
             << ") = " << format_sig4(r.distribution[s]) << "\n";
      }
    }
    return kSuccess;
  }

  int lr() {
    ModelDocument doc = load();
    const NetworkModel& model = doc.model;
    EvidenceSet evidence = parse_evidence(model);
    HypothesisQuery hyp = parse_hypothesis(model);

    LikelihoodRatioReport report;
    if (opt_.prior && opt_.method != "inference") {
      throw UsageError("--prior is only supported with --method inference");
    }
    if (opt_.method == "inference") {
      report = lr_via_inference(model, evidence, hyp, opt_.prior);
    } else if (opt_.method == "cpt") {
      if (evidence.size() != 1) throw UsageError("--method cpt takes exactly one --evidence");
      const auto& [node, state] = *evidence.begin();
      report = lr_from_cpt(model, node, state, hyp);
    } else {
      report = combine_dependent(model, evidence, hyp);
    }

    if (machine_) {
      json rec = to_json(report);
      rec["record"] = "lr";
      rec["method"] = opt_.method;
      rec["hypothesis"] = to_json(hyp);
      rec["evidence"] = to_json(evidence);
      emit(rec);
      return kSuccess;
    }

    const std::string hp = hyp.node + "=" + hyp.positive_state;
    out_ << "hypothesis: " << hp << " vs "
         << (hyp.negative_state ? hyp.node + "=" + *hyp.negative_state : "not " + hp) << "\n";
    out_ << "evidence: " << (evidence.empty() ? "(none)" : evidence.to_string()) << "\n";
    out_ << "LR: " << format_sig4(report.lr) << "\n";
    out_ << "log10 LR: " << (report.log10_lr ? format_sig4(*report.log10_lr) : "n/a") << "\n";
    out_ << "class: " << to_string(report.probative_class) << "\n";
    if (report.prior_p) out_ << "prior P(" << hp << "): " << format_sig4(*report.prior_p) << "\n";
    if (report.posterior_p) {
      out_ << "posterior P(" << hp << " | evidence): " << format_sig4(*report.posterior_p) << "\n";
    }
    for (const auto& w : report.warnings) out_ << "warning " << w.code << ": " << w.message << "\n";
    return kSuccess;
  }

  int fixtures() {
    if (!opt_.fixture.empty()) {
      if (opt_.as_json) {
        out_ << serialize_json(load_fixture(opt_.fixture));
      } else {
        out_ << fixture_source(opt_.fixture);
      }
      return kSuccess;
    }
    for (const auto& name : fixture_names()) {
      ModelDocument doc = load_fixture(name);
      std::string description = doc.metadata.value("description", "");
      if (machine_) {
        emit({{"record", "fixture"},
              {"name", name},
              {"nodes", doc.model.nodes().size()},
              {"description", description}});
      } else {
        out_ << name << "  " << description << "\n";
      }
    }
    return kSuccess;
  }

  int serve() {
    auto store = std::make_shared<service::ModelStore>();
    store->preload_fixtures();
    service::Api api(store);
    service::HttpServer server(api);
    err_ << "listening on http://" << opt_.bind << ":" << opt_.port << service::kApiPrefix << "\n";
    if (!server.listen(opt_.bind, opt_.port)) {
      return fail(kUsage, "BIND", "cannot listen on " + opt_.bind + ":" + std::to_string(opt_.port));
    }
    return kSuccess;
  }

 private:
  std::string source_label() const {
    return opt_.fixture.empty() ? opt_.model_path : "fixture:" + opt_.fixture;
  }

  ModelDocument load() {
    if (opt_.fixture.empty() == opt_.model_path.empty()) {
      throw UsageError("give either a model file or --fixture NAME");
    }
    if (!opt_.fixture.empty()) return load_fixture(opt_.fixture);
    return load_model_file(opt_.model_path);
  }

  EvidenceSet parse_evidence(const NetworkModel& model) const {
    EvidenceSet evidence;
    for (const auto& item : opt_.evidence) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
        throw UsageError("evidence must look like NODE=STATE, got '" + item + "'");
      }
      evidence.add(item.substr(0, eq), item.substr(eq + 1));
    }
    check_evidence(model, evidence);
    return evidence;
  }

  HypothesisQuery parse_hypothesis(const NetworkModel& model) const {
    if (opt_.hypothesis.empty()) throw UsageError("--hypothesis is required");
    const auto colon = opt_.hypothesis.find(':');
    HypothesisQuery hyp = HypothesisQuery::for_node(model, opt_.hypothesis.substr(0, colon));
    if (colon != std::string::npos) hyp.positive_state = opt_.hypothesis.substr(colon + 1);
    if (!opt_.against.empty()) hyp.negative_state = opt_.against;
    const NodeDef& node = model.node(hyp.node);
    for (const auto* s : {&hyp.positive_state, hyp.negative_state ? &*hyp.negative_state : nullptr}) {
      if (s != nullptr && !node.state_index(*s)) {
        throw Error(ErrorCode::UnknownState, "node '" + hyp.node + "' has no state '" + *s + "'");
      }
    }
    return hyp;
  }

  void emit(const json& record) { out_ << record.dump() << "\n"; }

  int fail(int code, const std::string& name, const std::string& message) {
    if (machine_) {
      emit({{"record", "error"}, {"code", name}, {"message", message}, {"exit", code}});
    } else {
      err_ << "error: " << message << "\n";
    }
    return code;
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  bool machine_;
};

void add_model_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("model", opt.model_path, "Model file (.bn or .json)");
  cmd->add_option("--fixture", opt.fixture, "Bundled fixture name");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));
}

void add_evidence_option(CLI::App* cmd, Options& opt) {
  cmd->add_option("-e,--evidence", opt.evidence, "Observed NODE=STATE (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app("Discrete Bayesian network inference and likelihood ratios", "probative");
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a model and list findings");
  add_model_options(validate, opt);

  auto* infer = app.add_subcommand("infer", "Posterior distributions given evidence");
  add_model_options(infer, opt);
  add_evidence_option(infer, opt);
  infer->add_option("-q,--query", opt.query, "Node to report (repeatable; default all)");

  auto* lr = app.add_subcommand("lr", "Likelihood ratio of the evidence for a hypothesis");
  add_model_options(lr, opt);
  add_evidence_option(lr, opt);
  lr->add_option("--hypothesis", opt.hypothesis, "NODE or NODE:STATE")->required();
  lr->add_option("--against", opt.against, "Specific alternative state (default: complement)");
  lr->add_option("--prior", opt.prior, "Prior override for a parentless hypothesis node");
  lr->add_option("--method", opt.method, "inference, cpt or dependent")
      ->check(CLI::IsMember({"inference", "cpt", "dependent"}));

  auto* fixtures = app.add_subcommand("fixtures", "List bundled fixtures or print one");
  fixtures->add_option("name", opt.fixture, "Fixture to print");
  fixtures->add_flag("--json", opt.as_json, "Print the JSON document instead of .bn source");
  fixtures->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", opt.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--bind", opt.bind, "Address to bind");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  Runner runner(opt, out, err);
  if (validate->parsed()) return runner.guarded(&Runner::validate);
  if (infer->parsed()) return runner.guarded(&Runner::infer);
  if (lr->parsed()) return runner.guarded(&Runner::lr);
  if (fixtures->parsed()) return runner.guarded(&Runner::fixtures);
  return runner.guarded(&Runner::serve);
}

}  // namespace probative::cli
