#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "grsym/frame.hpp"

namespace grsym {

enum class SlotKind : uint8_t { Tangent, Spinor, ConjSpinor };

struct Slot {
  SlotKind kind = SlotKind::Tangent;
  bool up = true;

  friend bool operator==(const Slot& a, const Slot& b) {
    return a.kind == b.kind && a.up == b.up;
  }
  friend bool operator!=(const Slot& a, const Slot& b) { return !(a == b); }
};

inline Slot slot_up() { return Slot{SlotKind::Tangent, true}; }
inline Slot slot_down() { return Slot{SlotKind::Tangent, false}; }
inline Slot spinor_up() { return Slot{SlotKind::Spinor, true}; }
inline Slot spinor_down() { return Slot{SlotKind::Spinor, false}; }
inline Slot conj_spinor_up() { return Slot{SlotKind::ConjSpinor, true}; }
inline Slot conj_spinor_down() { return Slot{SlotKind::ConjSpinor, false}; }

/// Advances a mixed-radix multi-index; returns false after the last index.
bool next_multi_index(std::vector<int>& idx, const std::vector<int>& dims);

/// Dense frame-attached tensor with tangent and spinor slots.
class Tensor {
 public:
  Tensor(FramePtr frame, std::vector<Slot> slots);
  static Tensor scalar(FramePtr frame, Expr value);
  static Tensor vector_field(FramePtr frame, std::vector<Expr> comp);
  static Tensor covector_field(FramePtr frame, std::vector<Expr> comp);

  const FramePtr& frame() const { return frame_; }
  const std::vector<Slot>& slots() const { return slots_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  int dim(int slot) const;
  std::vector<int> dims() const;
  size_t size() const { return comp_.size(); }

  Expr& at(const std::vector<int>& idx);
  const Expr& at(const std::vector<int>& idx) const;
  Expr& operator[](size_t flat) { return comp_[flat]; }
  const Expr& operator[](size_t flat) const { return comp_[flat]; }
  std::vector<int> unflatten(size_t flat) const;

  bool is_zero() const;
  friend bool operator==(const Tensor& a, const Tensor& b);
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  Tensor operator-() const;
  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend Tensor operator-(const Tensor& a, const Tensor& b);
  friend Tensor operator*(const Expr& c, const Tensor& t);

  /// Componentwise conjugate; spinor slots swap with conjugate-spinor slots.
  Tensor conjugate(const std::map<AtomId, AtomId>& pairing = {}) const;
  Tensor substitute(const std::map<AtomId, Expr>& repl) const;
  void collect_atoms(std::set<AtomId>& out) const;

  /// Sums slot i (up) against slot j (down) of matching kind.
  Tensor contract(int i, int j) const;
  /// Result slot k is source slot perm[k].
  Tensor permute(const std::vector<int>& perm) const;
  Tensor symmetrize(const std::vector<int>& positions) const;
  Tensor antisymmetrize(const std::vector<int>& positions) const;

 private:
  void check_index(const std::vector<int>& idx) const;
  size_t flatten(const std::vector<int>& idx) const;

  FramePtr frame_;
  std::vector<Slot> slots_;
  std::vector<Expr> comp_;
};

Tensor tensor_product(const Tensor& a, const Tensor& b);
/// Exterior product of forms or multivectors, normalized so that
/// wedge(dx, dy) = dx (x) dy - dy (x) dx.
Tensor wedge(const Tensor& a, const Tensor& b);
/// Symmetric product without the 1/2: sym_product(a, b) = a (x) b + b (x) a
/// for rank-one factors.
Tensor sym_product(const Tensor& a, const Tensor& b);
/// Rewrites components relative to another frame on the same chart.
Tensor convert_frame(const Tensor& t, const FramePtr& target);

}  // namespace grsym
