#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grsym/curvature.hpp"
#include "grsym/metric.hpp"

namespace grsym {

/// Constant antisymmetric epsilon spinor with component (1,2) equal to one.
Tensor epsilon_spinor(const FramePtr& frame, SlotKind kind, bool up);

/// Solder form sigma_a^{AA'} of a tetrad orthonormal with timelike first leg;
/// maps the legs through (1/sqrt 2)(id, sx, sy, sz).
Tensor solder_form(const Metric& g, const std::vector<Tensor>& orthonormal);

/// Contracts the fiber slots of two solder-type tensors with covariant
/// epsilons; for a solder form the result is minus its tetrad's metric.
Tensor spinor_inner_product(const Tensor& s1, const Tensor& s2);

/// Levi-Civita connection extended by the unique trace-free spinor
/// coefficients that make the solder form parallel.
Connection spin_connection(const Tensor& sigma);

/// Totally symmetric rank-4 covariant Weyl spinor of the solder form's
/// geometry.
Tensor weyl_spinor(const Tensor& sigma);

/// One rank-1 factorization Sym(s1 x s2 x s3 x s4) = eta * W.
struct WeylFactors {
  std::vector<Tensor> spinors;
  Expr eta;
};

/// Principal-spinor factorizations of a Weyl spinor whose root multiplicities
/// must match the Petrov type label; repeated-root spinors come first, a
/// two-spinor factorization is returned as a normalized dyad, and type D
/// yields both dyad orderings.
std::vector<WeylFactors> factor_weyl_spinor(const Tensor& w, const std::string& type);

/// Replaces each (spinor, conjugate-spinor) slot pair of equal variance by
/// one tangent slot at the first position of the pair.
Tensor spinor_to_tensor(const Tensor& s, const Tensor& sigma,
                        const std::vector<std::pair<int, int>>& pairs);

/// Replaces each listed tangent slot by an adjacent (spinor,
/// conjugate-spinor) pair of the same variance.
Tensor tensor_to_spinor(const Tensor& s, const Tensor& sigma, const std::vector<int>& slots);

}  // namespace grsym
