#include "grsym/tensor.hpp"

#include <algorithm>
#include <utility>

#include "grsym/common.hpp"

namespace grsym {

namespace {

Rat factorial(int n) {
  Rat f(1);
  for (int k = 2; k <= n; ++k) f *= Rat(k);
  return f;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (size_t i = 0; i < perm.size(); ++i) {
    for (size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

bool next_multi_index(std::vector<int>& idx, const std::vector<int>& dims) {
  for (size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

Tensor::Tensor(FramePtr frame, std::vector<Slot> slots)
    : frame_(std::move(frame)), slots_(std::move(slots)) {
  if (slots_.size() > 8) throw ComputeError("tensor rank exceeds 8");
  size_t total = 1;
  for (int k = 0; k < rank(); ++k) total *= static_cast<size_t>(dim(k));
  comp_.assign(total, Expr(0));
}

Tensor Tensor::scalar(FramePtr frame, Expr value) {
  Tensor t(std::move(frame), {});
  t.comp_[0] = std::move(value);
  return t;
}

Tensor Tensor::vector_field(FramePtr frame, std::vector<Expr> comp) {
  Tensor t(std::move(frame), {slot_up()});
  if (comp.size() != t.comp_.size()) throw ComputeError("wrong number of vector components");
  t.comp_ = std::move(comp);
  return t;
}

Tensor Tensor::covector_field(FramePtr frame, std::vector<Expr> comp) {
  Tensor t(std::move(frame), {slot_down()});
  if (comp.size() != t.comp_.size()) throw ComputeError("wrong number of covector components");
  t.comp_ = std::move(comp);
  return t;
}

int Tensor::dim(int slot) const {
  return slots_.at(static_cast<size_t>(slot)).kind == SlotKind::Tangent ? frame_->dimension() : 2;
}

std::vector<int> Tensor::dims() const {
  std::vector<int> d(slots_.size());
  for (int k = 0; k < rank(); ++k) d[static_cast<size_t>(k)] = dim(k);
  return d;
}

void Tensor::check_index(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw ComputeError("index rank mismatch");
  for (int k = 0; k < rank(); ++k) {
    if (idx[static_cast<size_t>(k)] < 0 || idx[static_cast<size_t>(k)] >= dim(k)) {
      throw ComputeError("tensor index out of range");
    }
  }
}

size_t Tensor::flatten(const std::vector<int>& idx) const {
  size_t flat = 0;
  for (int k = 0; k < rank(); ++k) {
    flat = flat * static_cast<size_t>(dim(k)) + static_cast<size_t>(idx[static_cast<size_t>(k)]);
  }
  return flat;
}

std::vector<int> Tensor::unflatten(size_t flat) const {
  std::vector<int> idx(slots_.size());
  for (size_t k = slots_.size(); k-- > 0;) {
    int d = dim(static_cast<int>(k));
    idx[k] = static_cast<int>(flat % static_cast<size_t>(d));
    flat /= static_cast<size_t>(d);
  }
  return idx;
}

Expr& Tensor::at(const std::vector<int>& idx) {
  check_index(idx);
  return comp_[flatten(idx)];
}

const Expr& Tensor::at(const std::vector<int>& idx) const {
  check_index(idx);
  return comp_[flatten(idx)];
}

bool Tensor::is_zero() const {
  return std::all_of(comp_.begin(), comp_.end(), [](const Expr& e) { return e.is_zero(); });
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.frame_ == b.frame_ && a.slots_ == b.slots_ && a.comp_ == b.comp_;
}

Tensor Tensor::operator-() const {
  Tensor out = *this;
  for (auto& e : out.comp_) e = -e;
  return out;
}

static void check_compatible(const Tensor& a, const Tensor& b) {
  if (a.frame() != b.frame()) throw ComputeError("tensors are attached to different frames");
  if (a.slots() != b.slots()) throw ComputeError("tensor slot signatures differ");
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  check_compatible(a, b);
  Tensor out = a;
  for (size_t k = 0; k < out.comp_.size(); ++k) out.comp_[k] += b.comp_[k];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  check_compatible(a, b);
  Tensor out = a;
  for (size_t k = 0; k < out.comp_.size(); ++k) out.comp_[k] -= b.comp_[k];
  return out;
}

Tensor operator*(const Expr& c, const Tensor& t) {
  Tensor out = t;
  for (auto& e : out.comp_) e = c * e;
  return out;
}

Tensor Tensor::conjugate(const std::map<AtomId, AtomId>& pairing) const {
  Tensor out = *this;
  for (auto& s : out.slots_) {
    if (s.kind == SlotKind::Spinor) {
      s.kind = SlotKind::ConjSpinor;
    } else if (s.kind == SlotKind::ConjSpinor) {
      s.kind = SlotKind::Spinor;
    }
  }
  for (auto& e : out.comp_) e = e.conjugate(pairing);
  return out;
}

Tensor Tensor::substitute(const std::map<AtomId, Expr>& repl) const {
  Tensor out = *this;
  for (auto& e : out.comp_) e = e.substitute(repl);
  return out;
}

void Tensor::collect_atoms(std::set<AtomId>& out) const {
  for (const auto& e : comp_) e.collect_atoms(out);
}

Tensor Tensor::contract(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= rank() || j >= rank()) {
    throw ComputeError("invalid contraction slots");
  }
  const Slot& si = slots_[static_cast<size_t>(i)];
  const Slot& sj = slots_[static_cast<size_t>(j)];
  if (si.kind != sj.kind || si.up == sj.up) {
    throw ComputeError("contraction needs one up and one down slot of the same kind");
  }
  std::vector<Slot> rest;
  for (int k = 0; k < rank(); ++k) {
    if (k != i && k != j) rest.push_back(slots_[static_cast<size_t>(k)]);
  }
  Tensor out(frame_, rest);
  const auto out_dims = out.dims();
  std::vector<int> oidx(rest.size(), 0);
  const int d = dim(i);
  do {
    std::vector<int> src(static_cast<size_t>(rank()));
    int p = 0;
    for (int k = 0; k < rank(); ++k) {
      if (k != i && k != j) src[static_cast<size_t>(k)] = oidx[static_cast<size_t>(p++)];
    }
    Expr sum(0);
    for (int e = 0; e < d; ++e) {
      src[static_cast<size_t>(i)] = e;
      src[static_cast<size_t>(j)] = e;
      sum += at(src);
    }
    out.at(oidx) = sum;
  } while (next_multi_index(oidx, out_dims));
  return out;
}

Tensor Tensor::permute(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != rank()) throw ComputeError("permutation rank mismatch");
  std::vector<Slot> new_slots(slots_.size());
  for (int k = 0; k < rank(); ++k) {
    new_slots[static_cast<size_t>(k)] = slots_[static_cast<size_t>(perm[static_cast<size_t>(k)])];
  }
  Tensor out(frame_, new_slots);
  const auto out_dims = out.dims();
  if (out.comp_.empty()) return out;
  std::vector<int> oidx(new_slots.size(), 0);
  do {
    std::vector<int> src(static_cast<size_t>(rank()));
    for (int k = 0; k < rank(); ++k) {
      src[static_cast<size_t>(perm[static_cast<size_t>(k)])] = oidx[static_cast<size_t>(k)];
    }
    out.at(oidx) = at(src);
  } while (next_multi_index(oidx, out_dims));
  return out;
}

static Tensor averaged_permutations(const Tensor& t, const std::vector<int>& positions,
                                    bool alternate) {
  auto pos = positions;
  std::sort(pos.begin(), pos.end());
  if (pos.empty() || std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
    throw ComputeError("invalid symmetrization positions");
  }
  const Slot s0 = t.slots().at(static_cast<size_t>(pos.front()));
  for (int p : pos) {
    if (p < 0 || p >= t.rank()) throw ComputeError("symmetrization position out of range");
    if (t.slots()[static_cast<size_t>(p)] != s0) {
      throw ComputeError("symmetrization positions must share one slot type");
    }
  }
  const int m = static_cast<int>(pos.size());
  std::vector<int> arrangement(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) arrangement[static_cast<size_t>(k)] = k;
  Tensor out(t.frame(), t.slots());
  const auto dims = t.dims();
  std::vector<Expr> acc(t.size(), Expr(0));
  do {
    const int sign = alternate ? permutation_sign(arrangement) : 1;
    std::vector<int> idx(dims.size(), 0);
    size_t flat = 0;
    do {
      std::vector<int> src = idx;
      for (int k = 0; k < m; ++k) {
        src[static_cast<size_t>(pos[static_cast<size_t>(k)])] =
            idx[static_cast<size_t>(pos[static_cast<size_t>(arrangement[static_cast<size_t>(k)])])];
      }
      if (sign > 0) {
        acc[flat] += t.at(src);
      } else {
        acc[flat] -= t.at(src);
      }
      ++flat;
    } while (next_multi_index(idx, dims));
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  const Expr scale(Rat(1) / factorial(m));
  for (size_t k = 0; k < acc.size(); ++k) out[k] = scale * acc[k];
  return out;
}

Tensor Tensor::symmetrize(const std::vector<int>& positions) const {
  return averaged_permutations(*this, positions, false);
}

Tensor Tensor::antisymmetrize(const std::vector<int>& positions) const {
  return averaged_permutations(*this, positions, true);
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  if (a.frame() != b.frame()) throw ComputeError("tensors are attached to different frames");
  std::vector<Slot> slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  Tensor out(a.frame(), slots);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

static std::vector<int> all_positions(int rank) {
  std::vector<int> pos(static_cast<size_t>(rank));
  for (int k = 0; k < rank; ++k) pos[static_cast<size_t>(k)] = k;
  return pos;
}

static void check_product_slots(const Tensor& a, const Tensor& b) {
  if (a.rank() == 0 || b.rank() == 0) {
    throw ComputeError("graded products need factors of positive rank");
  }
  const Slot s = a.slots().front();
  if (s.kind != SlotKind::Tangent) throw ComputeError("graded products act on tangent slots");
  for (const Slot& t : a.slots()) {
    if (t != s) throw ComputeError("graded product factors must have uniform variance");
  }
  for (const Slot& t : b.slots()) {
    if (t != s) throw ComputeError("graded product factors must have uniform variance");
  }
}

Tensor wedge(const Tensor& a, const Tensor& b) {
  check_product_slots(a, b);
  const int p = a.rank(), q = b.rank();
  Tensor prod = tensor_product(a, b);
  Tensor alt = prod.antisymmetrize(all_positions(p + q));
  const Expr scale(factorial(p + q) / (factorial(p) * factorial(q)));
  return scale * alt;
}

Tensor sym_product(const Tensor& a, const Tensor& b) {
  check_product_slots(a, b);
  const int p = a.rank(), q = b.rank();
  Tensor prod = tensor_product(a, b);
  Tensor sym = prod.symmetrize(all_positions(p + q));
  const Expr scale(factorial(p + q) / (factorial(p) * factorial(q)));
  return scale * sym;
}

Tensor convert_frame(const Tensor& t, const FramePtr& target) {
  if (t.frame() == target) return t;
  const FramePtr& source = t.frame();
  if (source->chart() != target->chart()) {
    throw ComputeError("frame conversion requires a shared chart");
  }
  const int n = source->dimension();
  // Composite change-of-basis matrices through the coordinate basis.
  std::vector<std::vector<Expr>> up(static_cast<size_t>(n),
                                    std::vector<Expr>(static_cast<size_t>(n), Expr(0)));
  std::vector<std::vector<Expr>> down = up;
  for (int a2 = 0; a2 < n; ++a2) {
    for (int a = 0; a < n; ++a) {
      Expr su(0), sd(0);
      for (int i = 0; i < n; ++i) {
        su += target->covector(a2, i) * source->vector(a, i);
        sd += target->vector(a2, i) * source->covector(a, i);
      }
      up[static_cast<size_t>(a2)][static_cast<size_t>(a)] = su;
      down[static_cast<size_t>(a2)][static_cast<size_t>(a)] = sd;
    }
  }
  Tensor cur(target, t.slots());
  for (size_t k = 0; k < t.size(); ++k) cur[k] = t[k];
  const auto dims = cur.dims();
  for (int slot = 0; slot < cur.rank(); ++slot) {
    const Slot& s = cur.slots()[static_cast<size_t>(slot)];
    if (s.kind != SlotKind::Tangent) continue;
    const auto& m = s.up ? up : down;
    Tensor next(target, cur.slots());
    std::vector<int> idx(dims.size(), 0);
    if (!cur.size()) break;
    do {
      Expr sum(0);
      std::vector<int> src = idx;
      for (int b = 0; b < n; ++b) {
        const Expr& coeff = m[static_cast<size_t>(idx[static_cast<size_t>(slot)])][static_cast<size_t>(b)];
        if (coeff.is_zero()) continue;
        src[static_cast<size_t>(slot)] = b;
        sum += coeff * cur.at(src);
      }
      next.at(idx) = sum;
    } while (next_multi_index(idx, dims));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace grsym
