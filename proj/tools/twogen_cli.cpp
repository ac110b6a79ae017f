// Replays relation suites and generator certificates for one surface.
#include <iostream>

#include "CLI11.hpp"
#include "twogen/run.hpp"

int main(int argc, char** argv) {
  twogen::RunConfig cfg;
  std::string report = "text";
  std::string controls = "on";

  CLI::App app{"Check Dehn twist relations and two-generator certificates"};
  app.add_option("--genus", cfg.genus, "genus g")->required();
  app.add_option("--punctures", cfg.punctures, "number of punctures p")->required();
  app.add_option("--suite", cfg.suites, "suite to run (repeatable)")
      ->required()
      ->take_all()
      ->check(CLI::IsMember(twogen::suite_names()));
  app.add_option("--emit", cfg.emit_path, "write the JSON artifact here");
  app.add_option("--report", report, "stdout report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-word-length", cfg.max_word_length, "cap on intermediate word length")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--negative-controls", controls, "run expected-fail controls")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for mutation controls")->capture_default_str();
  app.add_option("--mutations", cfg.mutations, "mutations per certificate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.report = report == "json" ? twogen::ReportFormat::json : twogen::ReportFormat::text;
  cfg.negative_controls = controls == "on";

  auto r = twogen::run(cfg);
  if (r.exit_code == 2) {
    std::cerr << "error: " << r.error << "\n";
    return 2;
  }
  std::cout << r.report;
  return r.exit_code;
}
