#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cayscheme/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "cayscheme: conjugacy-class association schemes, integral Cayley graph "
      "spectra, and spectral parity verification for finite groups"};
  app.require_subcommand(1);

  cayscheme::RunConfig cfg;
  std::string order_range;

  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    if (needs_group)
      cmd->add_option("--group", cfg.group_source,
                      "group source: \"builtin:<descriptor>\" or a group file path")
          ->required();
    cmd->add_option("--format", cfg.format, "output format: plain or json")
        ->check(CLI::IsMember({"plain", "json"}));
    cmd->add_option("--seed", cfg.seed, "seed for the mod-p eigenspace splitting");
    cmd->add_option("--cap", cfg.group_cap, "maximum group order");
    cmd->add_flag("--timings", cfg.include_timings,
                  "include wall-clock timings (breaks byte-reproducibility)");
  };

  add_common(app.add_subcommand("describe-group", "order, exponent, class counts"), true);
  add_common(app.add_subcommand("classes", "conjugacy, power and PC partitions"), true);

  CLI::App* scheme = app.add_subcommand("scheme", "build a scheme and verify the axioms");
  add_common(scheme, true);
  scheme->add_option("--partition", cfg.partition, "generating partition: pc or conjugacy")
      ->check(CLI::IsMember({"pc", "conjugacy"}));
  scheme->add_flag("--relation", cfg.include_relation, "include the relation table in exports");

  CLI::App* eigen = app.add_subcommand("eigen", "eigenmatrix, multiplicities, frame quotient");
  add_common(eigen, true);
  eigen->add_option("--partition", cfg.partition, "generating partition: pc or conjugacy")
      ->check(CLI::IsMember({"pc", "conjugacy"}));

  CLI::App* fq = app.add_subcommand("frame-quotient",
                                    "frame quotients of the conjugacy and PC schemes");
  add_common(fq, true);
  fq->add_option("--primes", cfg.prime_count, "number of admissible primes to check");

  add_common(app.add_subcommand("verify-odd",
                                "every non-empty PC-class union has an odd eigenvalue"),
             true);
  CLI::App* vs = app.add_subcommand("verify-signed", "signed version over {0,+1,-1} vectors");
  add_common(vs, true);
  vs->add_option("--signed-cap", cfg.signed_class_cap, "class cap for signed enumeration");
  CLI::App* gs = app.add_subcommand("verify-gs",
                                    "integrality of normal Cayley graphs vs PC unions");
  add_common(gs, true);
  gs->add_option("--gs-cap", cfg.gs_class_cap, "conjugacy class cap for the union sweep");

  CLI::App* qc = app.add_subcommand("quotient-check",
                                    "PC eigenmatrix as an equitable quotient of the "
                                    "conjugacy eigenmatrix");
  add_common(qc, true);
  qc->add_option("--primes", cfg.prime_count, "number of admissible primes to check");

  CLI::App* sweep = app.add_subcommand("sweep", "run every check over builtin groups");
  add_common(sweep, false);
  sweep->add_option("--order-range", order_range, "orders to sweep, e.g. 3..45")->required();
  sweep->add_flag("--odd-only", cfg.odd_only, "odd orders only");
  sweep->add_option("--primes", cfg.prime_count, "number of admissible primes per group");
  sweep->add_option("--signed-cap", cfg.signed_class_cap, "class cap for signed enumeration");

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "sweep") {
    auto sep = order_range.find("..");
    if (sep == std::string::npos) {
      std::cerr << "error: --order-range must look like lo..hi\n";
      return cayscheme::kExitConfig;
    }
    try {
      cfg.order_lo = std::stoi(order_range.substr(0, sep));
      cfg.order_hi = std::stoi(order_range.substr(sep + 2));
    } catch (const std::exception&) {
      std::cerr << "error: --order-range must look like lo..hi\n";
      return cayscheme::kExitConfig;
    }
  }
  return cayscheme::run(cfg, std::cout, std::cerr);
}
