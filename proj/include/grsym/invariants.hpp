#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grsym/curvature.hpp"

namespace grsym {

/// Scalar functions spanning the coefficient space of an unknown tensor;
/// construction drops zero and linearly dependent members.
class AnsatzBasis {
 public:
  AnsatzBasis() = default;
  explicit AnsatzBasis(std::vector<Expr> functions);

  const std::vector<Expr>& functions() const { return functions_; }
  std::size_t size() const { return functions_.size(); }
  bool empty() const { return functions_.empty(); }

  /// Throws unless every member's coordinate derivatives stay in the span;
  /// members containing opaque atoms are exempt from the check.
  void validate_closure(const ChartPtr& chart) const;
  /// Shrinks to the largest derivative-closed subset.
  void restrict_to_closed(const ChartPtr& chart);

 private:
  std::vector<Expr> functions_;
};

/// Coordinate monomials of total degree <= 2 times powers -2..2 of the
/// exp/sin/cos atoms of the metric and its inverse, closure-filtered.
AnsatzBasis default_ansatz(const Metric& g);

struct SolutionSpace {
  std::vector<Tensor> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
};

struct HomothetySplit {
  std::optional<Tensor> homothety;  // scaled so that L_V g = 2 g
  std::vector<Tensor> killing;
};

/// Vector fields V with components in the ansatz span and L_V g = 0.
SolutionSpace killing_vectors(const Metric& g, const AnsatzBasis& ansatz);
/// Splits the solutions of L_V g = (const.) g into a homothety representative
/// (none when every solution is Killing) and a Killing basis.
HomothetySplit homothety_vectors(const Metric& g, const AnsatzBasis& ansatz);
/// Symmetric rank-p fields with vanishing symmetrized covariant derivative.
SolutionSpace killing_tensors(const Metric& g, int rank, const AnsatzBasis& ansatz);
/// Antisymmetric rank-p fields Y with nabla_(a Y_b)c... = 0.
SolutionSpace killing_yano(const Metric& g, int rank, const AnsatzBasis& ansatz);

enum class InvariantKind { Killing, KillingYano, Homothety };

/// Defining residual of the invariant equation for a candidate field; the
/// homothety kind uses the normalization L_V g = 2 g.
Tensor check_invariant_equation(InvariantKind kind, const Metric& g, const Tensor& candidate);

/// All symmetrized products of the given rank-1 tensors, one per
/// non-decreasing index tuple in lexicographic order; C(n+r-1, r) entries.
std::vector<Tensor> symmetric_products(const std::vector<Tensor>& basis, int rank);

enum class ComponentMode { Constants, Functions };

/// Exact decomposition of target over span, with coordinate-free coefficients
/// in Constants mode and rational-function coefficients in Functions mode;
/// nullopt when no decomposition reassembles the target.
std::optional<std::vector<Expr>> get_components(const Tensor& target,
                                                const std::vector<Tensor>& span,
                                                ComponentMode mode = ComponentMode::Constants);
/// True iff every target decomposes over the span.
bool in_span(const std::vector<Tensor>& targets, const std::vector<Tensor>& span,
             ComponentMode mode = ComponentMode::Constants);

enum class TensorSymmetry { None, Symmetric, Antisymmetric };

/// Fields of the given shape, coefficients in the ansatz span, with vanishing
/// Lie derivative along every generator.
SolutionSpace invariant_fields(const FramePtr& frame, const std::vector<Tensor>& generators,
                               const std::vector<Slot>& shape, TensorSymmetry symmetry,
                               const AnsatzBasis& ansatz);

/// Greedy generating set of the fields over rational-function coefficients.
std::vector<Tensor> module_generators(const std::vector<Tensor>& fields);

/// Vector fields Z with [Z, X] in the constant span of the generators for
/// every generator X, reduced modulo the generators themselves.
SolutionSpace infinitesimal_normalizer(const std::vector<Tensor>& generators,
                                       const AnsatzBasis& ansatz);

/// One-parameter coordinate transformation x -> image(x, parameter).
struct CoordinateMap {
  ChartPtr chart;
  AtomId parameter = 0;
  std::vector<Expr> image;
};

/// Closed-form flow of a vector field whose components can be integrated one
/// coordinate at a time; verifies the identity at 0 and the group law.
CoordinateMap flow(const Tensor& x, const std::string& parameter_name);

/// Pullback of a covariant tensor through the map's Jacobian.
Tensor pullback(const CoordinateMap& map, const Tensor& t);

struct IsometryPointData {
  int dimension = 0;
  bool stabilized = false;
  int depth_used = 0;
  /// Structure constants of the prolonged-data brackets: c[i][j][k].
  std::vector<std::vector<std::vector<Expr>>> brackets;
};

/// Isometry dimension bound from annihilating the curvature and its covariant
/// derivatives at one point, deepened until the bound is stable; brackets are
/// composed on the prolonged Killing data (v_a, lambda_ab).
IsometryPointData isometry_dimension_at_point(const Metric& g,
                                              const std::map<AtomId, Expr>& point,
                                              int max_depth = 6);

}  // namespace grsym
