// SPDX-License-Identifier: MIT
//
// End-to-end experiment harness: builds the four mesh families at a
// comparable degree-of-freedom target, solves each system with CG, runs
// the spectrum estimators, and renders the comparison tables as CSV
// strings. The CLI is a thin wrapper over these calls; keeping the
// formatting here makes byte-level determinism testable in-process.

#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshcond/adapt.hpp"
#include "meshcond/fvm.hpp"
#include "meshcond/linalg.hpp"
#include "meshcond/mesh.hpp"
#include "meshcond/problem.hpp"
#include "meshcond/vtk.hpp"

namespace meshcond {

struct ExperimentConfig {
  ProblemSpec spec;         // gamma preset (0.1 parameter triple)
  bool smooth_test = false; // swap in the K = 1 smooth problem

  int uniform_n = 32;
  int graded_n = 32;
  double beta = 2.0;  // grading exponent of the "localised" family
  int locref_n0 = 16;
  int locref_levels = 4;
  int adapt_root_n = 8;
  int dof_target = 1024; // adaptive budget
  double alpha = 1.0;    // adaptive marking factor

  double cg_tol = 1e-8;
  int cg_maxit_scale = 10; // maxit = scale * dof
  double eig_tol = 1e-8;
  int eig_maxit = 200000;

  std::string out_dir = ".";
};

// Derives the per-family mesh sizes from a degree-of-freedom target:
// n x n tensor grids with n ~ sqrt(target), a half-resolution root for the
// locally refined family, and the target itself as the adaptive budget.
inline void apply_dof_target(ExperimentConfig& c, int target) {
  if (target < 4) throw std::invalid_argument("dof target must be >= 4");
  auto even_near = [](double v) {
    int n = static_cast<int>(v / 2.0 + 0.5) * 2;
    return n < 2 ? 2 : n;
  };
  c.dof_target = target;
  c.uniform_n = even_near(std::sqrt(static_cast<double>(target)));
  c.graded_n = c.uniform_n;
  c.locref_n0 = even_near(std::sqrt(static_cast<double>(target)) / 2.0);
  c.adapt_root_n = std::min(8, c.locref_n0);
}

inline FlowProblem lab_problem(const ExperimentConfig& c) {
  return c.smooth_test ? make_smooth_problem() : make_kellogg_problem(c.spec);
}

constexpr std::array<MeshFamily, 4> kTableOrder = {
    MeshFamily::adaptive, MeshFamily::graded, MeshFamily::uniform,
    MeshFamily::locally_refined};

struct FamilyRun {
  MeshFamily family = MeshFamily::uniform;
  Mesh mesh;
  SparseSystem system;
  SolveReport solve;
  SpectrumReport spectrum; // filled only when requested
  double l2_error = 0;
  AdaptTrace trace; // adaptive family only
};

inline Mesh build_family_mesh(MeshFamily f, const ExperimentConfig& c, const FlowProblem& p,
                              AdaptTrace* trace_out = nullptr) {
  switch (f) {
    case MeshFamily::uniform: return build_uniform(c.uniform_n);
    case MeshFamily::graded: return build_graded(c.graded_n, c.beta);
    case MeshFamily::locally_refined:
      return build_locally_refined(c.locref_n0, c.locref_levels);
    case MeshFamily::adaptive: {
      AdaptOptions opt;
      opt.budget = c.dof_target;
      opt.alpha = c.alpha;
      opt.root_n = c.adapt_root_n;
      opt.cg_tol = c.cg_tol;
      opt.cg_maxit_scale = c.cg_maxit_scale;
      AdaptTrace trace = adapt_loop(p, opt);
      if (trace_out) *trace_out = trace;
      return trace.final_mesh;
    }
  }
  throw std::logic_error("build_family_mesh: unknown family");
}

inline FamilyRun run_family(MeshFamily f, const ExperimentConfig& c, bool with_spectrum) {
  const FlowProblem problem = lab_problem(c);
  FamilyRun run;
  run.family = f;
  run.mesh = build_family_mesh(f, c, problem, &run.trace);
  run.system = assemble(run.mesh, problem);
  run.solve = cg_solve(run.system, c.cg_tol, c.cg_maxit_scale * run.system.dof);
  if (!run.solve.converged)
    throw std::runtime_error(std::string("cg did not converge on the ") + family_name(f) +
                             " mesh");
  run.l2_error = discrete_l2_error(run.mesh, run.solve.solution, problem);
  if (with_spectrum) run.spectrum = condition_number(run.system, c.eig_tol, c.eig_maxit);
  return run;
}

namespace detail {
inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
} // namespace detail

// "mesh,dof,lambda_min,lambda_max,cond,cg_iters", one row per family.
inline std::string table_csv(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "mesh,dof,lambda_min,lambda_max,cond,cg_iters\n";
  for (MeshFamily f : kTableOrder) {
    const FamilyRun run = run_family(f, c, true);
    os << family_name(f) << ',' << run.system.dof << ',' << detail::fmt(run.spectrum.lambda_min)
       << ',' << detail::fmt(run.spectrum.lambda_max) << ',' << detail::fmt(run.spectrum.cond)
       << ',' << run.solve.iterations << '\n';
  }
  return os.str();
}

// Residual history of one family, suitable for plotting.
inline std::string converge_csv(const ExperimentConfig& c, MeshFamily f) {
  const FamilyRun run = run_family(f, c, false);
  std::ostringstream os;
  os << "iteration,relative_residual\n";
  for (std::size_t k = 0; k < run.solve.residuals.size(); ++k)
    os << k << ',' << detail::fmt(run.solve.residuals[k]) << '\n';
  return os.str();
}

// "mesh,dof,l2_error" per family; inject_exact replaces every solve by the
// exact interpolant (errors must then vanish).
inline std::string error_csv(const ExperimentConfig& c, bool inject_exact = false) {
  const FlowProblem problem = lab_problem(c);
  std::ostringstream os;
  os << "mesh,dof,l2_error\n";
  for (MeshFamily f : kTableOrder) {
    double err = 0;
    int dof = 0;
    if (inject_exact) {
      const Mesh mesh = build_family_mesh(f, c, problem);
      std::vector<double> sol(mesh.cells.size());
      for (std::size_t i = 0; i < mesh.cells.size(); ++i)
        sol[i] = problem.exact(mesh.cells[i].cx, mesh.cells[i].cy);
      err = discrete_l2_error(mesh, sol, problem);
      dof = static_cast<int>(mesh.cells.size());
    } else {
      const FamilyRun run = run_family(f, c, false);
      err = run.l2_error;
      dof = run.system.dof;
    }
    os << family_name(f) << ',' << dof << ',' << detail::fmt(err) << '\n';
  }
  return os.str();
}

inline std::string stats_csv(const ExperimentConfig& c) {
  const FlowProblem problem = lab_problem(c);
  std::ostringstream os;
  os << "mesh,cells,faces,min_side,max_side,max_level\n";
  for (MeshFamily f : kTableOrder) {
    const Mesh mesh = build_family_mesh(f, c, problem);
    const MeshStats s = mesh_stats(mesh);
    os << family_name(f) << ',' << s.cell_count << ',' << s.face_count << ','
       << detail::fmt(s.min_side) << ',' << detail::fmt(s.max_side) << ',' << s.max_level
       << '\n';
  }
  return os.str();
}

inline std::string adapt_trace_csv(const AdaptTrace& trace) {
  std::ostringstream os;
  os << "round,dof,marked,max_indicator,mean_indicator\n";
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const auto& r = trace.rounds[k];
    os << k << ',' << r.dof << ',' << r.marked << ',' << detail::fmt(r.max_indicator) << ','
       << detail::fmt(r.mean_indicator) << '\n';
  }
  return os.str();
}

// VTK export of one family with pressure, permeability and level cell data.
inline std::string export_vtk(const ExperimentConfig& c, MeshFamily f) {
  const FlowProblem problem = lab_problem(c);
  const FamilyRun run = run_family(f, c, false);
  std::vector<VtkCellArray> arrays(3);
  arrays[0].name = "level";
  arrays[0].as_int = true;
  arrays[1].name = "permeability";
  arrays[2].name = "pressure";
  for (const auto& cell : run.mesh.cells) {
    arrays[0].data.push_back(cell.level);
    arrays[1].data.push_back(problem.permeability(cell.cx, cell.cy));
  }
  arrays[2].data = run.solve.solution;
  std::ostringstream os;
  write_vtk_quads(os, run.mesh, std::string("meshcond ") + family_name(f) + " mesh", arrays);
  return os.str();
}

// Writes via a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace meshcond
