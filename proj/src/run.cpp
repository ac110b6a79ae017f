#include "twogen/run.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "twogen/certificate.hpp"
#include "twogen/relations.hpp"

namespace twogen {

namespace {

using nlohmann::ordered_json;

struct Suite {
  std::string name;
  std::vector<Obligation> obligations;  // atlas, actions
  std::optional<Certificate> cert;      // the rest
};

Certificate build_certificate(const std::string& name, const SurfaceModel& m) {
  if (name == "prop22") return build_prop22(m);
  if (name == "lemma31") return build_lemma31(m);
  if (name == "lemma41") return build_lemma41(m);
  if (name == "thm32") return build_thm32(m);
  return build_thm42(m);
}

struct SuiteOutcome {
  bool passed = false;
  std::string text;
  ordered_json summary;   // report document without expanded words
  ordered_json artifact;  // with words
};

SuiteOutcome run_obligation_suite(const Suite& s, const SurfaceModel& m, const RunConfig& cfg) {
  RunOptions opt;
  opt.threads = cfg.threads;
  opt.negative_controls = cfg.negative_controls;
  opt.max_word_length = cfg.max_word_length;
  auto rep = run_obligations(s.name, m.spec(), s.obligations, opt);
  SuiteOutcome out;
  out.passed = rep.ok();
  out.text = report_text(rep);
  out.summary = {{"suite", s.name}, {"passed", out.passed}, {"report", ordered_json::parse(report_json(rep))}};
  out.artifact = out.summary;
  return out;
}

SuiteOutcome run_certificate_suite(Suite& s, const SurfaceModel& m, const RunConfig& cfg) {
  VerifyOptions opt;
  opt.threads = cfg.threads;
  opt.negative_controls = cfg.negative_controls;
  opt.max_word_length = cfg.max_word_length;
  Certificate& c = *s.cert;
  verify(c, m, opt);

  std::vector<Mutation> mutations;
  if (cfg.negative_controls && cfg.mutations > 0) {
    mutations = mutation_controls(c, m, cfg.seed, cfg.mutations, opt);
  }
  const bool all_caught =
      std::all_of(mutations.begin(), mutations.end(), [](const Mutation& x) { return x.caught; });

  SuiteOutcome out;
  out.passed = c.verified() && all_caught;
  std::ostringstream os;
  os << certificate_text(c);
  for (const auto& x : mutations) {
    os << (x.caught ? "PASS " : "FAIL ") << "mutation " << x.step_id << " @" << x.position << "  "
       << x.mutated_expr << "  -- " << x.witness << "\n";
  }
  out.text = os.str();

  ordered_json mj = ordered_json::array();
  for (const auto& x : mutations) {
    mj.push_back({{"step", x.step_id},
                  {"position", x.position},
                  {"expr", x.mutated_expr},
                  {"caught", x.caught},
                  {"witness", x.witness}});
  }
  out.summary = {{"suite", s.name}, {"passed", out.passed}};
  out.artifact = out.summary;
  if (c.verified()) {
    out.summary["certificate"] = ordered_json::parse(export_json(c, -1, false));
    out.artifact["certificate"] = ordered_json::parse(export_json(c, -1, true));
  } else {
    const auto* f = c.first_failure();
    ordered_json fail = f ? ordered_json{{"step", f->id}, {"witness", f->witness}}
                          : ordered_json{{"step", nullptr}, {"witness", "an output failed"}};
    out.summary["failure"] = fail;
    out.artifact["failure"] = fail;
  }
  out.summary["mutations"] = mj;
  out.artifact["mutations"] = mj;
  return out;
}

ordered_json header(const RunConfig& cfg) {
  return {{"surface", {{"g", cfg.genus}, {"p", cfg.punctures}}},
          {"max_word_length", cfg.max_word_length},
          {"negative_controls", cfg.negative_controls},
          {"seed", cfg.seed},
          {"mutations", cfg.mutations}};
}

RunResult bad_config(const std::string& msg) {
  RunResult r;
  r.exit_code = 2;
  r.error = msg;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"atlas",   "actions", "prop22", "lemma31",
                                                 "thm32",   "lemma41", "thm42"};
  return names;
}

RunResult run(const RunConfig& cfg) {
  if (cfg.suites.empty()) return bad_config("no suite selected");
  for (const auto& s : cfg.suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      return bad_config("unknown suite '" + s + "'");
    }
  }
  if (cfg.max_word_length == 0) return bad_config("--max-word-length must be positive");
  if (cfg.threads < 0) return bad_config("--threads must be non-negative");

  // Preconditions first, so a bad combination runs nothing.
  std::optional<SurfaceModel> model;
  std::vector<Suite> suites;
  try {
    model.emplace(build_surface({cfg.genus, cfg.punctures}, cfg.max_word_length));
    for (const auto& name : cfg.suites) {
      Suite s{name, {}, std::nullopt};
      if (name == "atlas") {
        s.obligations = atlas_obligations(*model, cfg.max_word_length);
      } else if (name == "actions") {
        s.obligations = action_obligations(*model, cfg.max_word_length);
      } else {
        s.cert = build_certificate(name, *model);
      }
      suites.push_back(std::move(s));
    }
  } catch (const Unsupported& e) {
    return bad_config(e.what());
  }

  RunResult r;
  ordered_json summary = header(cfg);
  ordered_json artifact = header(cfg);
  summary["suites"] = ordered_json::array();
  artifact["suites"] = ordered_json::array();
  std::ostringstream text;
  bool all = true;
  for (auto& s : suites) {
    SuiteOutcome o = s.cert ? run_certificate_suite(s, *model, cfg)
                            : run_obligation_suite(s, *model, cfg);
    all = all && o.passed;
    text << "== " << s.name << " (g=" << cfg.genus << ", p=" << cfg.punctures << ") ==\n"
         << o.text << s.name << ": " << (o.passed ? "PASS" : "FAIL") << "\n\n";
    summary["suites"].push_back(std::move(o.summary));
    artifact["suites"].push_back(std::move(o.artifact));
  }
  summary["passed"] = all;
  artifact["passed"] = all;
  text << "overall: " << (all ? "PASS" : "FAIL") << "\n";

  r.exit_code = all ? 0 : 1;
  r.report = cfg.report == ReportFormat::json ? summary.dump(2) + "\n" : text.str();
  r.artifact = artifact.dump(2) + "\n";
  if (!cfg.emit_path.empty()) {
    std::ofstream f(cfg.emit_path, std::ios::binary);
    if (!f || !(f << r.artifact)) return bad_config("cannot write " + cfg.emit_path);
  }
  return r;
}

}  // namespace twogen
