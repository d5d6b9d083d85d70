#include "grsym/metric.hpp"

#include <cmath>
#include <complex>

#include "grsym/atoms.hpp"
#include "grsym/common.hpp"

namespace grsym {

Metric::Metric(Tensor g) : g_(std::move(g)), ginv_(g_.frame(), {slot_up(), slot_up()}), det_(0) {
  if (g_.slots() != std::vector<Slot>{slot_down(), slot_down()}) {
    throw ComputeError("metric must be a covariant rank-2 tensor");
  }
  const int n = g_.frame()->dimension();
  std::vector<std::vector<Expr>> m(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g_.at({a, b}) != g_.at({b, a})) throw ComputeError("metric must be symmetric");
      m[static_cast<size_t>(a)][static_cast<size_t>(b)] = g_.at({a, b});
    }
  }
  det_ = matrix_determinant(m);
  auto inv = invert_matrix(m);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ginv_.at({a, b}) = inv[static_cast<size_t>(a)][static_cast<size_t>(b)];
    }
  }
}

Tensor Metric::raise(const Tensor& t, int slot) const {
  if (t.frame() != frame()) throw ComputeError("tensor is not attached to the metric frame");
  if (slot < 0 || slot >= t.rank()) throw ComputeError("raise slot out of range");
  const Slot& s = t.slots()[static_cast<size_t>(slot)];
  if (s.kind != SlotKind::Tangent || s.up) throw ComputeError("raise needs a covariant tangent slot");
  std::vector<Slot> slots = t.slots();
  slots[static_cast<size_t>(slot)].up = true;
  Tensor out(t.frame(), slots);
  const auto dims = out.dims();
  const int n = dimension();
  std::vector<int> idx(dims.size(), 0);
  if (!out.size()) return out;
  do {
    Expr sum(0);
    std::vector<int> src = idx;
    for (int b = 0; b < n; ++b) {
      const Expr& coeff = ginv_.at({idx[static_cast<size_t>(slot)], b});
      if (coeff.is_zero()) continue;
      src[static_cast<size_t>(slot)] = b;
      sum += coeff * t.at(src);
    }
    out.at(idx) = sum;
  } while (next_multi_index(idx, dims));
  return out;
}

Tensor Metric::lower(const Tensor& t, int slot) const {
  if (t.frame() != frame()) throw ComputeError("tensor is not attached to the metric frame");
  if (slot < 0 || slot >= t.rank()) throw ComputeError("lower slot out of range");
  const Slot& s = t.slots()[static_cast<size_t>(slot)];
  if (s.kind != SlotKind::Tangent || !s.up) {
    throw ComputeError("lower needs a contravariant tangent slot");
  }
  std::vector<Slot> slots = t.slots();
  slots[static_cast<size_t>(slot)].up = false;
  Tensor out(t.frame(), slots);
  const auto dims = out.dims();
  const int n = dimension();
  std::vector<int> idx(dims.size(), 0);
  if (!out.size()) return out;
  do {
    Expr sum(0);
    std::vector<int> src = idx;
    for (int b = 0; b < n; ++b) {
      const Expr& coeff = g_.at({idx[static_cast<size_t>(slot)], b});
      if (coeff.is_zero()) continue;
      src[static_cast<size_t>(slot)] = b;
      sum += coeff * t.at(src);
    }
    out.at(idx) = sum;
  } while (next_multi_index(idx, dims));
  return out;
}

Expr Metric::inner(const Tensor& x, const Tensor& y) const {
  if (x.rank() != 1 || y.rank() != 1) throw ComputeError("inner product needs rank-one tensors");
  Tensor cx = convert_frame(x, frame());
  Tensor cy = convert_frame(y, frame());
  const bool xu = cx.slots()[0].up, yu = cy.slots()[0].up;
  const int n = dimension();
  Expr sum(0);
  for (int a = 0; a < n; ++a) {
    if (cx[static_cast<size_t>(a)].is_zero()) continue;
    if (xu != yu) {
      sum += cx[static_cast<size_t>(a)] * cy[static_cast<size_t>(a)];
      continue;
    }
    for (int b = 0; b < n; ++b) {
      const Expr& gm = xu ? g_.at({a, b}) : ginv_.at({a, b});
      if (gm.is_zero()) continue;
      sum += gm * cx[static_cast<size_t>(a)] * cy[static_cast<size_t>(b)];
    }
  }
  return sum;
}

std::vector<std::vector<Expr>> gram_matrix(const Metric& g, const std::vector<Tensor>& vectors) {
  const size_t n = vectors.size();
  std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n, Expr(0)));
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      out[a][b] = g.inner(vectors[a], vectors[b]);
    }
  }
  return out;
}

double sample_value(const Expr& e) {
  std::set<AtomId> atoms;
  e.collect_atoms(atoms);
  // pull in base atoms hiding inside transcendental and opaque arguments
  std::vector<AtomId> work(atoms.begin(), atoms.end());
  while (!work.empty()) {
    AtomId id = work.back();
    work.pop_back();
    const Atom& a = atom_info(id);
    if (a.kind != AtomKind::Transcendental && a.kind != AtomKind::Opaque) continue;
    std::set<AtomId> inner;
    a.arg.collect_atoms(inner);
    for (AtomId sub : inner) {
      if (atoms.insert(sub).second) work.push_back(sub);
    }
  }
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::map<AtomId, std::complex<double>> values;
    for (AtomId id : atoms) {
      const Atom& a = atom_info(id);
      if (a.kind == AtomKind::Coordinate || a.kind == AtomKind::Parameter ||
          a.kind == AtomKind::Opaque) {
        double phase = 0.61803398875 * static_cast<double>(id + 1) * static_cast<double>(attempt + 1);
        phase -= std::floor(phase);
        values[id] = 0.4 + 1.1 * phase;
      }
    }
    std::complex<double> v;
    try {
      v = e.eval(values);
    } catch (const ComputeError&) {
      continue;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
    if (std::abs(v) > 1e12) continue;
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real()))) {
      throw ComputeError("sample value is not real");
    }
    if (std::abs(v.real()) < 1e-10) continue;
    return v.real();
  }
  throw ComputeError("could not sample a generic point");
}

std::vector<Tensor> gram_schmidt(const Metric& g, std::vector<Tensor> vectors) {
  std::vector<Tensor> basis;
  std::vector<Expr> signs;
  for (auto& v : vectors) {
    Tensor u = convert_frame(v, g.frame());
    for (size_t j = 0; j < basis.size(); ++j) {
      Expr proj = signs[j] * g.inner(u, basis[j]);
      if (!proj.is_zero()) u = u - proj * basis[j];
    }
    Expr norm = g.inner(u, u);
    if (norm.is_zero()) throw ComputeError("gram_schmidt hit a null or dependent vector");
    const double s = sample_value(norm);
    Expr unit = s >= 0 ? sqrt_expr(norm) : sqrt_expr(-norm);
    basis.push_back(Expr(1) / unit * u);
    signs.push_back(s >= 0 ? Expr(1) : Expr(-1));
  }
  return basis;
}

NullTetrad null_tetrad(const Metric& g, const std::vector<Tensor>& orthonormal) {
  if (orthonormal.size() != 4) throw ComputeError("null tetrad needs four orthonormal vectors");
  auto gram = gram_matrix(g, orthonormal);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Expr expected = a != b ? Expr(0) : (a == 0 ? Expr(-1) : Expr(1));
      if (gram[static_cast<size_t>(a)][static_cast<size_t>(b)] != expected) {
        throw ComputeError("input tetrad is not orthonormal with a leading timelike vector");
      }
    }
  }
  const Expr inv_sqrt2 = Expr(1) / sqrt_expr(Expr(2));
  Tensor e0 = convert_frame(orthonormal[0], g.frame());
  Tensor e1 = convert_frame(orthonormal[1], g.frame());
  Tensor e2 = convert_frame(orthonormal[2], g.frame());
  Tensor e3 = convert_frame(orthonormal[3], g.frame());
  NullTetrad t{inv_sqrt2 * (e0 + e3), inv_sqrt2 * (e0 - e3),
               inv_sqrt2 * (e1 + Expr::i() * e2), inv_sqrt2 * (e1 - Expr::i() * e2)};
  return t;
}

}  // namespace grsym
