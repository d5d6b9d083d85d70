#include "grsym/spinor.hpp"

#include <algorithm>
#include <array>

#include "grsym/common.hpp"
#include "grsym/linear.hpp"
#include "grsym/upoly.hpp"

namespace grsym {

namespace {

using SpinMatrix = std::array<std::array<Expr, 2>, 2>;

/// Maps of the orthonormal legs: (1/sqrt 2)(id, sx, sy, sz).
std::array<SpinMatrix, 4> soldering_maps() {
  Expr h = Expr(1) / sqrt_expr(Expr(2));
  Expr hi = h * Expr::i();
  std::array<SpinMatrix, 4> s{};
  s[0][0][0] = h;
  s[0][1][1] = h;
  s[1][0][1] = h;
  s[1][1][0] = h;
  s[2][0][1] = -hi;
  s[2][1][0] = hi;
  s[3][0][0] = h;
  s[3][1][1] = -h;
  return s;
}

int eps_sign(int a, int b) { return a == b ? 0 : (a == 0 ? 1 : -1); }

const std::vector<Slot>& solder_slots() {
  static const std::vector<Slot> slots{slot_down(), spinor_up(), conj_spinor_up()};
  return slots;
}

/// Solder components as a 4x4 matrix with the fiber pair flattened.
std::vector<std::vector<Expr>> solder_matrix(const Tensor& sigma) {
  if (sigma.slots() != solder_slots() || sigma.dim(0) != 4) {
    throw ComputeError("expected a solder form with one covariant tangent slot");
  }
  std::vector<std::vector<Expr>> s(4, std::vector<Expr>(4));
  for (int a = 0; a < 4; ++a) {
    for (int A = 0; A < 2; ++A) {
      for (int Ap = 0; Ap < 2; ++Ap) s[static_cast<size_t>(a)][static_cast<size_t>(2 * A + Ap)] = sigma.at({a, A, Ap});
    }
  }
  return s;
}

/// Replaces tangent slot k by an adjacent (spinor, conjugate-spinor) pair.
Tensor pair_in(const Tensor& t, int k, const std::vector<std::vector<Expr>>& smat,
               const std::vector<std::vector<Expr>>& tmat) {
  const Slot slot = t.slots()[static_cast<size_t>(k)];
  if (slot.kind != SlotKind::Tangent) throw ComputeError("slot to convert is not a tangent slot");
  std::vector<Slot> slots = t.slots();
  slots[static_cast<size_t>(k)] = Slot{SlotKind::Spinor, slot.up};
  slots.insert(slots.begin() + k + 1, Slot{SlotKind::ConjSpinor, slot.up});
  Tensor out(t.frame(), slots);
  const auto dims = out.dims();
  std::vector<int> idx(dims.size(), 0);
  do {
    const int A = idx[static_cast<size_t>(k)];
    const int Ap = idx[static_cast<size_t>(k + 1)];
    std::vector<int> sidx(idx.begin(), idx.end());
    sidx.erase(sidx.begin() + k + 1);
    Expr v;
    for (int a = 0; a < 4; ++a) {
      const Expr& coeff = slot.up ? smat[static_cast<size_t>(a)][static_cast<size_t>(2 * A + Ap)]
                                  : tmat[static_cast<size_t>(2 * A + Ap)][static_cast<size_t>(a)];
      if (coeff.is_zero()) continue;
      sidx[static_cast<size_t>(k)] = a;
      const Expr& te = t.at(sidx);
      if (!te.is_zero()) v += coeff * te;
    }
    out.at(idx) = v;
  } while (next_multi_index(idx, dims));
  return out;
}

/// Replaces the (spinor, conjugate-spinor) pair (i, j) by a tangent slot.
Tensor pair_out(const Tensor& t, int i, int j, const std::vector<std::vector<Expr>>& smat,
                const std::vector<std::vector<Expr>>& tmat) {
  const auto& slots = t.slots();
  if (i == j || i < 0 || j < 0 || i >= t.rank() || j >= t.rank()) {
    throw ComputeError("invalid spinor slot pair");
  }
  const Slot si = slots[static_cast<size_t>(i)];
  const Slot sj = slots[static_cast<size_t>(j)];
  if (si.kind != SlotKind::Spinor || sj.kind != SlotKind::ConjSpinor || si.up != sj.up) {
    throw ComputeError("slot pair must be a spinor and a conjugate spinor of equal variance");
  }
  std::vector<Slot> nslots;
  std::vector<int> src_of_out;
  for (int q = 0; q < t.rank(); ++q) {
    if (q == j) continue;
    nslots.push_back(q == i ? Slot{SlotKind::Tangent, si.up} : slots[static_cast<size_t>(q)]);
    src_of_out.push_back(q);
  }
  int p = 0;
  while (src_of_out[static_cast<size_t>(p)] != i) ++p;
  Tensor out(t.frame(), nslots);
  const auto dims = out.dims();
  std::vector<int> idx(dims.size(), 0);
  if (!out.size()) return out;
  do {
    const int a = idx[static_cast<size_t>(p)];
    std::vector<int> sidx(static_cast<size_t>(t.rank()), 0);
    for (size_t r = 0; r < src_of_out.size(); ++r) sidx[static_cast<size_t>(src_of_out[r])] = idx[r];
    Expr v;
    for (int A = 0; A < 2; ++A) {
      for (int Ap = 0; Ap < 2; ++Ap) {
        const Expr& coeff = si.up ? tmat[static_cast<size_t>(2 * A + Ap)][static_cast<size_t>(a)]
                                  : smat[static_cast<size_t>(a)][static_cast<size_t>(2 * A + Ap)];
        if (coeff.is_zero()) continue;
        sidx[static_cast<size_t>(i)] = A;
        sidx[static_cast<size_t>(j)] = Ap;
        const Expr& te = t.at(sidx);
        if (!te.is_zero()) v += coeff * te;
      }
    }
    out.at(idx) = v;
  } while (next_multi_index(idx, dims));
  return out;
}

/// Covariant rank-1 spinor with the given components.
Tensor principal_spinor(const FramePtr& frame, const Expr& c0, const Expr& c1) {
  Tensor sp(frame, {spinor_down()});
  sp.at({0}) = c0;
  sp.at({1}) = c1;
  return sp;
}

std::string multiplicity_label(std::vector<int> profile) {
  std::sort(profile.begin(), profile.end(), std::greater<int>());
  if (profile == std::vector<int>{4}) return "N";
  if (profile == std::vector<int>{3, 1}) return "III";
  if (profile == std::vector<int>{2, 2}) return "D";
  if (profile == std::vector<int>{2, 1, 1}) return "II";
  if (profile == std::vector<int>{1, 1, 1, 1}) return "I";
  return "?";
}

}  // namespace

Tensor epsilon_spinor(const FramePtr& frame, SlotKind kind, bool up) {
  if (kind == SlotKind::Tangent) throw ComputeError("epsilon spinor needs a spinor slot kind");
  Tensor out(frame, {Slot{kind, up}, Slot{kind, up}});
  out.at({0, 1}) = Expr(1);
  out.at({1, 0}) = Expr(-1);
  return out;
}

Tensor solder_form(const Metric& g, const std::vector<Tensor>& orthonormal) {
  if (g.dimension() != 4 || orthonormal.size() != 4) {
    throw ComputeError("solder form needs four orthonormal vector fields in dimension four");
  }
  const auto gm = gram_matrix(g, orthonormal);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Expr want = a == b ? (a == 0 ? Expr(-1) : Expr(1)) : Expr();
      if (gm[static_cast<size_t>(a)][static_cast<size_t>(b)] != want) {
        throw ComputeError(
            "tetrad is not orthonormal with a timelike first leg; "
            "flip the sign of a (+---) metric first");
      }
    }
  }
  const FramePtr& fr = g.frame();
  std::vector<std::vector<Expr>> e(4, std::vector<Expr>(4));
  for (int k = 0; k < 4; ++k) {
    Tensor v = convert_frame(orthonormal[static_cast<size_t>(k)], fr);
    for (int i = 0; i < 4; ++i) e[static_cast<size_t>(k)][static_cast<size_t>(i)] = v.at({i});
  }
  const auto coframe = invert_matrix(e);
  const auto maps = soldering_maps();
  Tensor out(fr, solder_slots());
  for (int i = 0; i < 4; ++i) {
    for (int A = 0; A < 2; ++A) {
      for (int Ap = 0; Ap < 2; ++Ap) {
        Expr v;
        for (int k = 0; k < 4; ++k) {
          const Expr& m = maps[static_cast<size_t>(k)][static_cast<size_t>(A)][static_cast<size_t>(Ap)];
          const Expr& th = coframe[static_cast<size_t>(i)][static_cast<size_t>(k)];
          if (m.is_zero() || th.is_zero()) continue;
          v += th * m;
        }
        out.at({i, A, Ap}) = v;
      }
    }
  }
  return out;
}

Tensor spinor_inner_product(const Tensor& s1, const Tensor& s2) {
  if (s1.slots() != solder_slots() || s2.slots() != solder_slots()) {
    throw ComputeError("spinor inner product needs solder-type tensors");
  }
  Tensor b = convert_frame(s2, s1.frame());
  const int n = s1.dim(0);
  Tensor out(s1.frame(), {slot_down(), slot_down()});
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      Expr v;
      for (int A = 0; A < 2; ++A) {
        for (int B = 0; B < 2; ++B) {
          if (A == B) continue;
          for (int Ap = 0; Ap < 2; ++Ap) {
            for (int Bp = 0; Bp < 2; ++Bp) {
              if (Ap == Bp) continue;
              const Expr& x = s1.at({a, A, Ap});
              const Expr& y = b.at({c, B, Bp});
              if (x.is_zero() || y.is_zero()) continue;
              v += Expr(eps_sign(A, B) * eps_sign(Ap, Bp)) * x * y;
            }
          }
        }
      }
      out.at({a, c}) = v;
    }
  }
  return out;
}

Connection spin_connection(const Tensor& sigma) {
  Metric g(Expr(-1) * spinor_inner_product(sigma, sigma));
  Connection conn = levi_civita(g);
  Tensor s = convert_frame(sigma, conn.frame);
  const int n = g.dimension();
  AtomTable& tab = AtomTable::instance();
  std::vector<AtomId> unknowns;
  std::vector<Expr> u;
  for (int k = 0; k < 8; ++k) {
    unknowns.push_back(tab.parameter("spin_unknown_" + std::to_string(k), false));
    u.push_back(Expr::atom(unknowns.back()));
  }
  auto cube = [n]() {
    return std::vector<std::vector<std::vector<Expr>>>(
        static_cast<size_t>(n), std::vector<std::vector<Expr>>(2, std::vector<Expr>(2)));
  };
  auto spin = cube();
  auto spin_conj = cube();
  for (int c = 0; c < n; ++c) {
    std::vector<Expr> eqs;
    for (int a = 0; a < n; ++a) {
      for (int A = 0; A < 2; ++A) {
        for (int Ap = 0; Ap < 2; ++Ap) {
          Expr e = conn.frame->direct(c, s.at({a, A, Ap}));
          for (int b = 0; b < n; ++b) {
            const Expr& gam = conn.christoffel(b, c, a);
            if (!gam.is_zero()) e -= gam * s.at({b, A, Ap});
          }
          for (int B = 0; B < 2; ++B) {
            e += u[static_cast<size_t>(2 * A + B)] * s.at({a, B, Ap});
            e += u[static_cast<size_t>(4 + 2 * Ap + B)] * s.at({a, A, B});
          }
          eqs.push_back(e);
        }
      }
    }
    eqs.push_back(u[0] + u[3]);
    eqs.push_back(u[4] + u[7]);
    LinearSolution sol = solve_linear(eqs, unknowns);
    const LinearBranch& br = sol.generic();
    if (!br.consistent || !br.basis.empty()) {
      throw ComputeError("spin connection is not uniquely determined");
    }
    for (int A = 0; A < 2; ++A) {
      for (int B = 0; B < 2; ++B) {
        spin[static_cast<size_t>(c)][static_cast<size_t>(A)][static_cast<size_t>(B)] =
            br.particular[static_cast<size_t>(2 * A + B)];
        spin_conj[static_cast<size_t>(c)][static_cast<size_t>(A)][static_cast<size_t>(B)] =
            br.particular[static_cast<size_t>(4 + 2 * A + B)];
      }
    }
  }
  conn.spin = std::move(spin);
  conn.spin_conj = std::move(spin_conj);
  if (!covariant_derivative(sigma, conn).is_zero()) {
    throw ComputeError("solder form is not parallel for the computed spin connection");
  }
  return conn;
}

Tensor weyl_spinor(const Tensor& sigma) {
  Metric g(Expr(-1) * spinor_inner_product(sigma, sigma));
  CurvatureSuite suite = curvature_suite(g);
  Tensor chat = tensor_to_spinor(suite.weyl, sigma, {0, 1, 2, 3});
  Tensor out(sigma.frame(), {spinor_down(), spinor_down(), spinor_down(), spinor_down()});
  const Expr scale(Rat(-1, 4));
  for (int A = 0; A < 2; ++A) {
    for (int B = 0; B < 2; ++B) {
      for (int C = 0; C < 2; ++C) {
        for (int D = 0; D < 2; ++D) {
          Expr v;
          for (int Ap = 0; Ap < 2; ++Ap) {
            for (int Bp = 0; Bp < 2; ++Bp) {
              if (Ap == Bp) continue;
              for (int Cp = 0; Cp < 2; ++Cp) {
                for (int Dp = 0; Dp < 2; ++Dp) {
                  if (Cp == Dp) continue;
                  const Expr& x = chat.at({A, Ap, B, Bp, C, Cp, D, Dp});
                  if (x.is_zero()) continue;
                  v += Expr(eps_sign(Ap, Bp) * eps_sign(Cp, Dp)) * x;
                }
              }
            }
          }
          out.at({A, B, C, D}) = scale * v;
        }
      }
    }
  }
  return out;
}

std::vector<WeylFactors> factor_weyl_spinor(const Tensor& w, const std::string& type) {
  const std::vector<Slot> want(4, spinor_down());
  if (w.slots() != want) {
    throw ComputeError("weyl spinor factorization needs four covariant spinor slots");
  }
  if (w != w.symmetrize({0, 1, 2, 3})) {
    throw ComputeError("weyl spinor is not totally symmetric");
  }
  UPoly q = uptrim(UPoly{w.at({0, 0, 0, 0}), Expr(4) * w.at({0, 0, 0, 1}),
                         Expr(6) * w.at({0, 0, 1, 1}), Expr(4) * w.at({0, 1, 1, 1}),
                         w.at({1, 1, 1, 1})});
  const int dq = updeg(q);
  if (dq < 0) throw ComputeError("the zero weyl spinor cannot be factored");
  std::vector<std::pair<std::array<Expr, 2>, int>> prim;
  if (dq < 4) prim.push_back({{Expr(1), Expr()}, 4 - dq});
  for (const auto& [z, mult] : up_roots(q)) prim.push_back({{-z, Expr(1)}, mult});
  std::stable_sort(prim.begin(), prim.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<int> profile;
  for (const auto& pr : prim) profile.push_back(pr.second);
  if (multiplicity_label(profile) != type) {
    throw ComputeError("principal multiplicities do not match type " + type);
  }
  std::vector<std::vector<std::pair<std::array<Expr, 2>, int>>> arrangements{prim};
  if (type == "D") arrangements.push_back({prim[1], prim[0]});
  std::vector<WeylFactors> out;
  for (auto arrangement : arrangements) {
    if (arrangement.size() == 2) {
      const auto& a = arrangement[0].first;
      auto& b = arrangement[1].first;
      Expr d = a[0] * b[1] - a[1] * b[0];
      b[0] = b[0] / d;
      b[1] = b[1] / d;
    }
    WeylFactors f;
    for (const auto& [comp, mult] : arrangement) {
      for (int r = 0; r < mult; ++r) {
        f.spinors.push_back(principal_spinor(w.frame(), comp[0], comp[1]));
      }
    }
    Tensor sym = tensor_product(tensor_product(f.spinors[0], f.spinors[1]),
                                tensor_product(f.spinors[2], f.spinors[3]))
                     .symmetrize({0, 1, 2, 3});
    for (size_t k = 0; k < w.size(); ++k) {
      if (!w[k].is_zero()) {
        f.eta = sym[k] / w[k];
        break;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

Tensor spinor_to_tensor(const Tensor& s, const Tensor& sigma,
                        const std::vector<std::pair<int, int>>& pairs) {
  const auto smat = solder_matrix(convert_frame(sigma, s.frame()));
  const auto tmat = invert_matrix(smat);
  Tensor cur = s;
  std::vector<std::pair<int, int>> work = pairs;
  while (!work.empty()) {
    auto [i, j] = work.back();
    work.pop_back();
    cur = pair_out(cur, i, j, smat, tmat);
    for (auto& [i2, j2] : work) {
      if (i2 == j || j2 == j) throw ComputeError("spinor slot pairs overlap");
      if (i2 > j) --i2;
      if (j2 > j) --j2;
    }
  }
  return cur;
}

Tensor tensor_to_spinor(const Tensor& s, const Tensor& sigma, const std::vector<int>& slots) {
  const auto smat = solder_matrix(convert_frame(sigma, s.frame()));
  const auto tmat = invert_matrix(smat);
  std::vector<int> order = slots;
  std::sort(order.begin(), order.end(), std::greater<int>());
  if (std::adjacent_find(order.begin(), order.end()) != order.end()) {
    throw ComputeError("duplicate tangent slot in conversion list");
  }
  Tensor cur = s;
  for (int k : order) cur = pair_in(cur, k, smat, tmat);
  return cur;
}

}  // namespace grsym
