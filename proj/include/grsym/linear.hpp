#ifndef GRSYM_LINEAR_HPP
#define GRSYM_LINEAR_HPP

#include <vector>

#include "grsym/expr.hpp"

namespace grsym {

struct SolveOptions {
  bool branch_on_parameters = true;
  int max_branch_depth = 3;
};

/// One elimination branch: the assumptions that selected it, a particular
/// solution and a basis of the homogeneous solution space.
struct LinearBranch {
  std::vector<std::pair<Expr, bool>> assumptions;  // (factor, taken nonzero?)
  bool consistent = true;
  std::vector<Expr> particular;
  std::vector<std::vector<Expr>> basis;
};

struct LinearSolution {
  std::vector<LinearBranch> branches;  // generic branch first
  const LinearBranch& generic() const { return branches.front(); }
};

/// Solves equations affine-linear in the unknown atoms over the coefficient
/// field; branches on parameter-only pivot factors.
LinearSolution solve_linear(const std::vector<Expr>& equations,
                            const std::vector<AtomId>& unknowns,
                            const SolveOptions& opts = {});

/// Splits the numerator of residual by its monomials in coordinate-dependent
/// atoms; each returned coefficient must vanish for the residual to vanish.
std::vector<Expr> split_by_coordinate_monomials(const Expr& residual);

}  // namespace grsym

#endif
