// SPDX-License-Identifier: MIT
//
// Flux-equidistribution adaptivity: solve, compute the per-cell flux
// indicator, split every cell whose indicator exceeds alpha times the
// mean, repeat. The loop stops when no cell is marked, when the target
// degree-of-freedom budget is met, or when one more round would leave the
// allowed band above the budget. If a full round would overshoot while the
// mesh is still under budget, the marked set is trimmed to the
// strongest-indicator cells so the final mesh lands inside the band.

#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshcond/fvm.hpp"
#include "meshcond/linalg.hpp"
#include "meshcond/mesh.hpp"
#include "meshcond/problem.hpp"

namespace meshcond {

struct AdaptRound {
  int dof = 0;
  int marked = 0;
  double max_indicator = 0;
  double mean_indicator = 0;
};

struct AdaptTrace {
  std::vector<AdaptRound> rounds;
  Mesh final_mesh;
};

struct AdaptOptions {
  int budget = 1024;     // target degrees of freedom
  double alpha = 1.0;    // marking factor over the mean indicator
  int root_n = 8;        // root grid cells per axis
  double band = 0.25;    // accepted relative deviation around the budget
  double cg_tol = 1e-8;
  int cg_maxit_scale = 10; // inner solves run at most scale * dof iterations
};

inline AdaptTrace adapt_loop(const FlowProblem& problem, const AdaptOptions& opt) {
  if (opt.budget < opt.root_n * opt.root_n)
    throw std::invalid_argument("adapt_loop: budget below the root grid size");
  if (!(opt.alpha > 0.0)) throw std::invalid_argument("adapt_loop: alpha must be positive");

  Mesh mesh = build_uniform(opt.root_n);
  mesh.family = MeshFamily::adaptive;
  const double hi_cap = (1.0 + opt.band) * opt.budget;
  const double lo_cap = (1.0 - opt.band) * opt.budget;

  AdaptTrace trace;
  for (;;) {
    const SparseSystem sys = assemble(mesh, problem);
    const SolveReport rep = cg_solve(sys, opt.cg_tol, opt.cg_maxit_scale * sys.dof);
    if (!rep.converged)
      throw std::runtime_error("adapt_loop: CG did not converge at " +
                               std::to_string(sys.dof) + " dof (relative residual " +
                               std::to_string(rep.residuals.back()) + ")");
    const std::vector<double> mu = cell_flux_indicator(mesh, sys, rep.solution);
    const double mean = std::accumulate(mu.begin(), mu.end(), 0.0) / static_cast<double>(mu.size());
    const double peak = *std::max_element(mu.begin(), mu.end());

    std::vector<int> marked;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu[i] > opt.alpha * mean) marked.push_back(static_cast<int>(i));

    AdaptRound round;
    round.dof = sys.dof;
    round.marked = static_cast<int>(marked.size());
    round.max_indicator = peak;
    round.mean_indicator = mean;

    if (marked.empty()) {
      trace.rounds.push_back(round);
      break;
    }

    Mesh candidate = refine_cells(mesh, marked);
    if (static_cast<double>(candidate.cells.size()) > hi_cap) {
      if (static_cast<double>(mesh.cells.size()) >= lo_cap) {
        round.marked = 0; // round withheld: it would overshoot the band
        trace.rounds.push_back(round);
        break;
      }
      // Still under budget: keep only the strongest cells.
      std::sort(marked.begin(), marked.end(), [&](int a, int b) {
        if (mu[static_cast<std::size_t>(a)] != mu[static_cast<std::size_t>(b)])
          return mu[static_cast<std::size_t>(a)] > mu[static_cast<std::size_t>(b)];
        return a < b;
      });
      while (marked.size() > 1 && static_cast<double>(candidate.cells.size()) > hi_cap) {
        marked.resize(marked.size() / 2);
        candidate = refine_cells(mesh, marked);
      }
      if (static_cast<double>(candidate.cells.size()) > hi_cap) {
        round.marked = 0;
        trace.rounds.push_back(round);
        break;
      }
      round.marked = static_cast<int>(marked.size());
    }

    trace.rounds.push_back(round);
    mesh = std::move(candidate);
    if (static_cast<int>(mesh.cells.size()) >= opt.budget) break;
  }

  trace.final_mesh = std::move(mesh);
  return trace;
}

inline AdaptTrace adapt_loop(const ProblemSpec& spec, int budget, double alpha, int root_n) {
  AdaptOptions opt;
  opt.budget = budget;
  opt.alpha = alpha;
  opt.root_n = root_n;
  return adapt_loop(make_kellogg_problem(spec), opt);
}

} // namespace meshcond
