// SPDX-License-Identifier: MIT
//
// Command-line harness for the mesh-conditioning experiment. Subcommands:
//
//   table     eigenvalues, condition numbers and CG iteration counts of the
//             four mesh families (table.csv)
//   converge  per-iteration CG residual history of one family
//   export    legacy-ASCII VTK grid with pressure/permeability/level data
//   error     discrete l2 errors against the reference solution
//   stats     mesh statistics per family, plus the adaptive trace
//
// All outputs are CSV (or VTK) files written atomically into --out.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "meshcond/lab.hpp"

namespace {

const std::map<std::string, meshcond::MeshFamily> kFamilies = {
    {"uniform", meshcond::MeshFamily::uniform},
    {"graded", meshcond::MeshFamily::graded},
    {"locally_refined", meshcond::MeshFamily::locally_refined},
    {"adaptive", meshcond::MeshFamily::adaptive},
};

std::filesystem::path out_path(const meshcond::ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume mesh-conditioning laboratory"};
  app.require_subcommand(1);

  meshcond::ExperimentConfig cfg;
  int dof_target = 0;

  app.set_config("--config", "", "plain-text key=value configuration file");
  app.add_option("--dof-target", dof_target,
                 "degree-of-freedom target for all four families (default 1024)");
  app.add_option("--alpha", cfg.alpha, "adaptive marking factor over the mean indicator");
  app.add_option("--beta", cfg.beta, "grading exponent of the graded (localised) family");
  app.add_option("--tol", cfg.cg_tol, "CG relative residual tolerance");
  app.add_option("--eig-tol", cfg.eig_tol, "eigenvalue estimator tolerance");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--gamma", cfg.spec.gamma, "singularity exponent");
  app.add_option("--k-high", cfg.spec.k_high, "permeability of quadrants 1 and 3");
  app.add_option("--rho", cfg.spec.rho, "angle parameter rho");
  app.add_option("--sigma", cfg.spec.sigma, "angle parameter sigma");
  app.add_option("--uniform-n", cfg.uniform_n, "uniform mesh cells per axis");
  app.add_option("--graded-n", cfg.graded_n, "graded mesh cells per axis");
  app.add_option("--locref-n0", cfg.locref_n0, "locally refined root cells per axis");
  app.add_option("--locref-levels", cfg.locref_levels, "locally refined refinement sweeps");
  app.add_option("--adapt-root-n", cfg.adapt_root_n, "adaptive root cells per axis");
  app.add_flag("--smooth-test", cfg.smooth_test,
               "replace the interface benchmark by the smooth K=1 problem");

  std::string family_name = "uniform";
  bool inject_exact = false;

  CLI::App* cmd_table = app.add_subcommand("table", "eigenvalue and condition-number table");
  CLI::App* cmd_converge = app.add_subcommand("converge", "CG residual history of one family");
  cmd_converge->add_option("--family", family_name, "mesh family")
      ->check(CLI::IsMember({"uniform", "graded", "locally_refined", "adaptive"}));
  CLI::App* cmd_export = app.add_subcommand("export", "VTK mesh + solution export");
  cmd_export->add_option("--family", family_name, "mesh family")
      ->check(CLI::IsMember({"uniform", "graded", "locally_refined", "adaptive"}));
  CLI::App* cmd_error = app.add_subcommand("error", "discrete l2 error comparison");
  cmd_error->add_flag("--inject-exact", inject_exact,
                      "score the exact interpolant instead of the solve");
  CLI::App* cmd_stats = app.add_subcommand("stats", "mesh statistics and adaptive trace");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dof_target > 0) meshcond::apply_dof_target(cfg, dof_target);

    if (cmd_table->parsed()) {
      meshcond::write_file_atomic(out_path(cfg, "table.csv"), meshcond::table_csv(cfg));
      std::cout << out_path(cfg, "table.csv").string() << "\n";
    } else if (cmd_converge->parsed()) {
      const auto family = kFamilies.at(family_name);
      const std::string name = "residuals_" + family_name + ".csv";
      meshcond::write_file_atomic(out_path(cfg, name), meshcond::converge_csv(cfg, family));
      std::cout << out_path(cfg, name).string() << "\n";
    } else if (cmd_export->parsed()) {
      const auto family = kFamilies.at(family_name);
      const std::string name = "mesh_" + family_name + ".vtk";
      meshcond::write_file_atomic(out_path(cfg, name), meshcond::export_vtk(cfg, family));
      std::cout << out_path(cfg, name).string() << "\n";
    } else if (cmd_error->parsed()) {
      meshcond::write_file_atomic(out_path(cfg, "errors.csv"),
                                  meshcond::error_csv(cfg, inject_exact));
      std::cout << out_path(cfg, "errors.csv").string() << "\n";
    } else if (cmd_stats->parsed()) {
      meshcond::write_file_atomic(out_path(cfg, "stats.csv"), meshcond::stats_csv(cfg));
      meshcond::AdaptTrace trace;
      const meshcond::FlowProblem problem = meshcond::lab_problem(cfg);
      meshcond::build_family_mesh(meshcond::MeshFamily::adaptive, cfg, problem, &trace);
      meshcond::write_file_atomic(out_path(cfg, "adapt_trace.csv"),
                                  meshcond::adapt_trace_csv(trace));
      std::cout << out_path(cfg, "stats.csv").string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "meshcond: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
