#pragma once

#include "grsym/tensor.hpp"

namespace grsym {

/// Pseudo-Riemannian metric: a symmetric (0,2) tensor with its exact inverse.
class Metric {
 public:
  explicit Metric(Tensor g);

  const Tensor& tensor() const { return g_; }
  const Tensor& inverse_tensor() const { return ginv_; }
  const FramePtr& frame() const { return g_.frame(); }
  int dimension() const { return g_.frame()->dimension(); }
  const Expr& det() const { return det_; }
  const Expr& component(int a, int b) const { return g_.at({a, b}); }
  const Expr& inverse_component(int a, int b) const { return ginv_.at({a, b}); }

  Tensor raise(const Tensor& t, int slot) const;
  Tensor lower(const Tensor& t, int slot) const;
  /// Inner product of two rank-one tensors; inserts the metric or its inverse
  /// as the variances require.
  Expr inner(const Tensor& x, const Tensor& y) const;

 private:
  Tensor g_;
  Tensor ginv_;
  Expr det_;
};

/// Pairwise inner products of a list of vector fields.
std::vector<std::vector<Expr>> gram_matrix(const Metric& g, const std::vector<Tensor>& vectors);

/// Orthonormalizes in input order; unit norms are +1 or -1 as decided at a
/// generic sample point. Throws ComputeError on degenerate input.
std::vector<Tensor> gram_schmidt(const Metric& g, std::vector<Tensor> vectors);

struct NullTetrad {
  Tensor l, n, m, mbar;
};

/// Builds l = (e0+e3)/sqrt(2), n = (e0-e3)/sqrt(2), m = (e1+i e2)/sqrt(2)
/// from an orthonormal tetrad with e0 timelike.
NullTetrad null_tetrad(const Metric& g, const std::vector<Tensor>& orthonormal);

/// Deterministic numeric sample value for every atom appearing in e; used to
/// decide signs of norms at a generic point.
double sample_value(const Expr& e);

}  // namespace grsym
