#pragma once

#include <optional>

#include "grsym/metric.hpp"

namespace grsym {

/// Structure functions of a frame: [e_b, e_c] = C^a_{bc} e_a.
struct FrameData {
  FramePtr frame;
  std::vector<std::vector<std::vector<Expr>>> c;

  const Expr& structure(int a, int b, int cc) const {
    return c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)];
  }
  /// Bracket [e_b, e_c] as a vector field in coordinate components.
  Tensor bracket(int b, int cc) const;
};

FrameData frame_data(const FramePtr& frame);

/// Connection coefficients in a frame: nabla_{e_b} e_c = Gamma^a_{bc} e_a,
/// stored as gamma[a][b][c]. Optional spinor coefficients act on spinor slots.
struct Connection {
  FramePtr frame;
  std::vector<std::vector<std::vector<Expr>>> gamma;
  std::vector<std::vector<std::vector<Expr>>> c;
  std::optional<std::vector<std::vector<std::vector<Expr>>>> spin;
  std::optional<std::vector<std::vector<std::vector<Expr>>>> spin_conj;

  const Expr& christoffel(int a, int b, int cc) const {
    return gamma[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)];
  }
};

/// Levi-Civita connection of a metric in the metric's own frame.
Connection levi_civita(const Metric& g);

/// Covariant derivative; the new covariant tangent slot is appended last.
Tensor covariant_derivative(const Tensor& t, const Connection& conn);

/// Lie bracket of two vector fields.
Tensor lie_bracket(const Tensor& x, const Tensor& y);

/// Lie derivative of an arbitrary tangent tensor along a vector field.
Tensor lie_derivative(const Tensor& x, const Tensor& t);

/// Exterior derivative of a totally antisymmetric covariant tensor.
Tensor exterior_derivative(const Tensor& w);

struct CurvatureSuite {
  Connection connection;
  Tensor riemann;       // R^a_{bcd}
  Tensor riemann_down;  // R_{abcd}
  Tensor ricci;         // R_{ab}
  Expr ricci_scalar;
  Tensor einstein;      // G^{ab}
  Tensor weyl;          // C_{abcd}
};

CurvatureSuite curvature_suite(const Metric& g);

/// Electromagnetic energy-momentum T^{ab} = F^{ac} F^b_c - (1/4) g^{ab} F^2.
Tensor energy_momentum(const Tensor& f, const Metric& g);

struct MaxwellResidual {
  Tensor divergence;  // nabla_a F^{ab}
  Tensor exterior;    // dF
};

MaxwellResidual matter_field_equations(const Tensor& f, const Metric& g);

}  // namespace grsym
