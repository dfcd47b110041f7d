// Command-line front end: build certificate bundles, re-verify them, render
// the sphere configuration, and run the acceptance suite.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "coxcert/acceptance.hpp"
#include "coxcert/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"certified right-angled reflection subgroups of Lorentzian integer lattices"};
  app.require_subcommand(1);

  std::size_t n = 3;
  std::string variant = "polygon2n";
  long max_power = 64;
  std::string out_path;
  auto* build = app.add_subcommand("build", "construct a bundle and write it as JSON");
  build->add_option("--n", n, "dimension parameter n")->required();
  build->add_option("--variant", variant, "polygon2n | polygon2n-2 | even | odd-project");
  build->add_option("--max-power", max_power, "largest translation power tried");
  build->add_option("--out", out_path, "output bundle path")->required();

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "re-check every certificate of a bundle file");
  verify->add_option("bundle", verify_path, "bundle JSON path")->required();

  std::string viz_path, viz_out, viz_format = "auto";
  auto* viz = app.add_subcommand("viz", "render the sphere configuration (SVG for n = 3, JSON above)");
  viz->add_option("bundle", viz_path, "bundle JSON path")->required();
  viz->add_option("--out", viz_out, "output file (stdout if omitted)");
  viz->add_option("--format", viz_format, "svg | json | auto");

  bool break_signature = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria at desk scale");
  selftest->add_flag("--break-signature", break_signature, "fault-injection hook for testing the suite")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return coxcert::exit_usage;
  }

  if (build->parsed())
    return coxcert::run_build(n, variant, max_power, out_path, std::cout, std::cerr);
  if (verify->parsed()) return coxcert::run_verify(verify_path, std::cout, std::cerr);
  if (viz->parsed()) return coxcert::run_viz(viz_path, viz_out, viz_format, std::cout, std::cerr);
  if (selftest->parsed()) return coxcert::run_selftest(break_signature, std::cout, std::cerr);
  return coxcert::exit_usage;
}
