#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "hnl/errors.hpp"
#include "hnlcli/commands.hpp"
#include "hnlcli/grid.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Herglotz-Nevanlinna function and L-system calculus"};
  app.require_subcommand(1);

  // eval ----------------------------------------------------------------
  std::string eval_func, eval_grid = "-3:3:13,0.25:4:8", eval_hp = "both",
              eval_out;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a function file on a grid and write CSV");
  eval->add_option("--func", eval_func, "FuncExpr JSON file")->required();
  eval->add_option("--grid", eval_grid,
                   "re_min:re_max:steps,im_min:im_max:steps");
  eval->add_option("--half-plane", eval_hp, "upper|lower|both");
  eval->add_option("--out", eval_out, "output CSV path")->required();

  // classify -------------------------------------------------------------
  std::string cls_func;
  double cls_tol = 1e-9;
  CLI::App* cls = app.add_subcommand(
      "classify", "Classify a function into the Donoghue classes");
  cls->add_option("--func", cls_func, "FuncExpr JSON file")->required();
  cls->add_option("--tol", cls_tol, "classification tolerance");

  // couple ---------------------------------------------------------------
  std::string cp_sys1, cp_sys2, cp_out;
  CLI::App* cp = app.add_subcommand("couple", "Couple two L-system files");
  cp->add_option("--sys1", cp_sys1, "first LSystem JSON file")->required();
  cp->add_option("--sys2", cp_sys2, "second LSystem JSON file")->required();
  cp->add_option("--out", cp_out, "output LSystem JSON path")->required();

  // verify ---------------------------------------------------------------
  std::string vf_suite;
  std::uint64_t vf_seed = 7;
  CLI::App* vf = app.add_subcommand("verify", "Run an invariant suite");
  vf->add_option("--suite", vf_suite,
                 "examples|matrices|resolvent|attractor|all")
      ->required();
  vf->add_option("--seed", vf_seed, "seed for randomized checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      hnlcli::GridSpec grid;
      try {
        grid = hnlcli::parse_grid(eval_grid, hnlcli::parse_half_plane(eval_hp));
      } catch (const hnl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
      }
      return hnlcli::cmd_eval(eval_func, grid, eval_out);
    }
    if (cls->parsed()) {
      return hnlcli::cmd_classify(cls_func, cls_tol);
    }
    if (cp->parsed()) {
      return hnlcli::cmd_couple(cp_sys1, cp_sys2, cp_out);
    }
    if (vf->parsed()) {
      return hnlcli::cmd_verify(vf_suite, vf_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
