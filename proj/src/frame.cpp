#include "grsym/frame.hpp"

#include <map>
#include <utility>

#include "grsym/atoms.hpp"
#include "grsym/common.hpp"

namespace grsym {

Chart::Chart(std::string name, const std::vector<std::string>& coordinates)
    : name_(std::move(name)) {
  if (coordinates.empty() || coordinates.size() > 6) {
    throw ComputeError("chart dimension must be between 1 and 6");
  }
  coords_.reserve(coordinates.size());
  for (const auto& c : coordinates) {
    coords_.push_back(AtomTable::instance().coordinate(name_, c));
  }
}

int Chart::index_of(AtomId id) const {
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == id) return static_cast<int>(i);
  }
  return -1;
}

ChartPtr make_chart(const std::string& name, const std::vector<std::string>& coordinates) {
  return std::make_shared<const Chart>(name, coordinates);
}

std::shared_ptr<const Frame> Frame::holonomic(ChartPtr chart) {
  // One shared instance per chart so frame identity checks compose across
  // independently constructed tensors.
  static std::map<const Chart*, std::shared_ptr<const Frame>> cache;
  auto it = cache.find(chart.get());
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<Frame>(new Frame());
  const int n = chart->dimension();
  const Chart* key = chart.get();
  f->chart_ = std::move(chart);
  f->vectors_.assign(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n), Expr(0)));
  for (int i = 0; i < n; ++i) f->vectors_[static_cast<size_t>(i)][static_cast<size_t>(i)] = Expr(1);
  f->covectors_ = f->vectors_;
  f->holonomic_ = true;
  cache.emplace(key, f);
  return f;
}

std::shared_ptr<const Frame> Frame::from_vectors(ChartPtr chart,
                                                 std::vector<std::vector<Expr>> vectors) {
  const int n = chart->dimension();
  if (static_cast<int>(vectors.size()) != n) {
    throw ComputeError("frame needs exactly one vector per dimension");
  }
  for (const auto& row : vectors) {
    if (static_cast<int>(row.size()) != n) {
      throw ComputeError("frame vector has wrong number of components");
    }
  }
  auto f = std::shared_ptr<Frame>(new Frame());
  f->chart_ = std::move(chart);
  f->vectors_ = std::move(vectors);
  // covectors theta^a satisfy theta^a_i e_b^i = delta^a_b, so the covector
  // matrix is the transposed inverse of the vector matrix.
  auto inv = invert_matrix(f->vectors_);
  f->covectors_.assign(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      f->covectors_[static_cast<size_t>(a)][static_cast<size_t>(i)] =
          inv[static_cast<size_t>(i)][static_cast<size_t>(a)];
    }
  }
  f->holonomic_ = false;
  return f;
}

const Expr& Frame::vector(int a, int i) const {
  return vectors_.at(static_cast<size_t>(a)).at(static_cast<size_t>(i));
}

const Expr& Frame::covector(int a, int i) const {
  return covectors_.at(static_cast<size_t>(a)).at(static_cast<size_t>(i));
}

Expr Frame::direct(int a, const Expr& f) const {
  Expr out(0);
  for (int i = 0; i < dimension(); ++i) {
    const Expr& c = vector(a, i);
    if (c.is_zero()) continue;
    out += c * f.derivative(chart_->coordinate(i));
  }
  return out;
}

std::vector<std::vector<Expr>> invert_matrix(const std::vector<std::vector<Expr>>& m) {
  const size_t n = m.size();
  auto a = m;
  std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n, Expr(0)));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw ComputeError("matrix is not square");
    inv[i][i] = Expr(1);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = n;
    for (size_t r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) throw ComputeError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Expr p = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Expr factor = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

Expr matrix_determinant(const std::vector<std::vector<Expr>>& m) {
  const size_t n = m.size();
  auto a = m;
  Expr det(1);
  for (size_t col = 0; col < n; ++col) {
    if (a[col].size() != n) throw ComputeError("matrix is not square");
    size_t pivot = n;
    for (size_t r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return Expr(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Expr p = a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Expr factor = a[r][col] / p;
      for (size_t j = col; j < n; ++j) a[r][j] -= factor * a[col][j];
    }
  }
  return det;
}

}  // namespace grsym
