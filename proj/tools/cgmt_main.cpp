#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cgmt/commands.hpp"

int main(int argc, char** argv) {
  cgmt::CommandOptions opt;
  std::string output;
  CLI::App app{"Exact Hausdorff premeasures and subset constructions on Cantor space trees"};
  app.add_option("command", opt.command, "measure | cover-verify | extract | extract-pruned | thin | besicovitch | "
                                         "lebesgue-path | baire | gadget | verify-suite")
      ->required()
      ->check(CLI::IsMember(cgmt::command_names()));
  app.add_option("--tree", opt.tree, "builtin name (full, branch-left, branch-right, dyadic(c)) or spec file");
  app.add_option("--s", opt.s, "exponent p/q");
  app.add_option("--n", opt.n, "granularity index (n0 for besicovitch)");
  app.add_option("--c", opt.c, "target: dyadic or ring literal");
  app.add_option("--eps", opt.eps, "bracket width");
  app.add_option("--theta", opt.theta, "thinning slack");
  app.add_option("--stages", opt.stages, "besicovitch stage count");
  app.add_option("--depth", opt.depth, "working depth or block");
  app.add_option("--window", opt.window, "verification window");
  app.add_option("--cap", opt.cap, "search cap");
  app.add_option("--seed", opt.seed, "seed for generated inputs");
  app.add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--input", opt.input, "cover-verify: besicovitch report to recheck");
  app.add_option("--cover", opt.cover, "cover-verify: comma-separated cover strings");
  app.add_option("--kind", opt.kind, "gadget kind");
  app.add_option("--horizon", opt.horizon, "gadget table length");
  app.add_option("--table", opt.table, "gadget table values, comma-separated");
  app.add_option("--trials", opt.trials, "verify-suite trial count");
  app.add_option("--opens", opt.opens, "baire: number of dense open codes");
  app.add_flag("--empty-open", opt.empty_open, "baire: append an empty open code");
  app.add_option("--output", output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cgmt::exit_status(cgmt::ErrorCode::InvalidArgument);
  }

  try {
    std::string text = cgmt::run_command(opt);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output);
      if (!out) throw cgmt::Error(cgmt::ErrorCode::InvalidArgument, "cannot write '" + output + "'");
      out << text;
    }
  } catch (const cgmt::Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.witness().empty()) std::cerr << " [witness " << e.witness() << "]";
    std::cerr << "\n";
    return cgmt::exit_status(e.code());
  }
  return 0;
}
