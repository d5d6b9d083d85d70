#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grsym/expr.hpp"

namespace grsym {

/// Coordinate chart: an ordered list of named coordinate atoms.
class Chart {
 public:
  Chart(std::string name, const std::vector<std::string>& coordinates);

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  AtomId coordinate(int i) const { return coords_.at(static_cast<size_t>(i)); }
  const std::vector<AtomId>& coordinates() const { return coords_; }
  /// Position of a coordinate atom in this chart, or -1.
  int index_of(AtomId id) const;

 private:
  std::string name_;
  std::vector<AtomId> coords_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(const std::string& name, const std::vector<std::string>& coordinates);

/// Moving frame on a chart; row a holds the components e_a^i of the a-th
/// frame vector in the coordinate basis.
class Frame {
 public:
  static std::shared_ptr<const Frame> holonomic(ChartPtr chart);
  static std::shared_ptr<const Frame> from_vectors(ChartPtr chart,
                                                   std::vector<std::vector<Expr>> vectors);

  const ChartPtr& chart() const { return chart_; }
  int dimension() const { return chart_->dimension(); }
  bool is_holonomic() const { return holonomic_; }
  const Expr& vector(int a, int i) const;
  const Expr& covector(int a, int i) const;
  /// Directional derivative of a scalar along frame vector a.
  Expr direct(int a, const Expr& f) const;

 private:
  Frame() = default;
  ChartPtr chart_;
  std::vector<std::vector<Expr>> vectors_;
  std::vector<std::vector<Expr>> covectors_;
  bool holonomic_ = false;
};

using FramePtr = std::shared_ptr<const Frame>;

/// Inverse of a square matrix of expressions; throws ComputeError if singular.
std::vector<std::vector<Expr>> invert_matrix(const std::vector<std::vector<Expr>>& m);

Expr matrix_determinant(const std::vector<std::vector<Expr>>& m);

}  // namespace grsym
