#include "grsym/np.hpp"

#include <optional>

#include "grsym/common.hpp"
#include "grsym/upoly.hpp"

namespace grsym {

namespace {

Tensor in_frame(const Tensor& t, const FramePtr& frame) {
  if (t.frame() == frame) return t;
  return convert_frame(t, frame);
}

/// Full contraction W(a, b, c, d) of a (0,4) tensor with four vectors.
Expr contract4(const Tensor& w, const Tensor& a, const Tensor& b, const Tensor& c,
               const Tensor& d) {
  int n = w.dim(0);
  Expr out;
  for (int i = 0; i < n; ++i) {
    if (a.at({i}).is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b.at({j}).is_zero()) continue;
      for (int k = 0; k < n; ++k) {
        if (c.at({k}).is_zero()) continue;
        for (int l = 0; l < n; ++l) {
          const Expr& wc = w.at({i, j, k, l});
          if (wc.is_zero() || d.at({l}).is_zero()) continue;
          out += wc * a.at({i}) * b.at({j}) * c.at({k}) * d.at({l});
        }
      }
    }
  }
  return out;
}

UPoly weyl_quartic(const NPScalars& s) {
  return uptrim(UPoly{s.psi0, Expr(4) * s.psi1, Expr(6) * s.psi2, Expr(4) * s.psi3, s.psi4});
}

bool all_zero(const NPScalars& s) {
  return s.psi0.is_zero() && s.psi1.is_zero() && s.psi2.is_zero() && s.psi3.is_zero() &&
         s.psi4.is_zero();
}

}  // namespace

NPScalars np_weyl_scalars(const Tensor& weyl_down, const NullTetrad& nt) {
  if (weyl_down.rank() != 4) throw ComputeError("weyl scalars need a rank four tensor");
  const FramePtr& fr = weyl_down.frame();
  Tensor l = in_frame(nt.l, fr);
  Tensor n = in_frame(nt.n, fr);
  Tensor m = in_frame(nt.m, fr);
  Tensor mbar = in_frame(nt.mbar, fr);
  NPScalars out;
  out.psi0 = contract4(weyl_down, l, m, l, m);
  out.psi1 = contract4(weyl_down, l, n, l, m);
  out.psi2 = contract4(weyl_down, l, m, mbar, n);
  out.psi3 = contract4(weyl_down, l, n, mbar, n);
  out.psi4 = contract4(weyl_down, n, mbar, n, mbar);
  return out;
}

NullTetrad null_rotation_about_l(const NullTetrad& nt, const Expr& a) {
  Expr ab = a.conjugate();
  return NullTetrad{nt.l, nt.n + ab * nt.m + a * nt.mbar + (a * ab) * nt.l,
                    nt.m + a * nt.l, nt.mbar + ab * nt.l};
}

NullTetrad null_rotation_about_n(const NullTetrad& nt, const Expr& b) {
  Expr bb = b.conjugate();
  return NullTetrad{nt.l + bb * nt.m + b * nt.mbar + (b * bb) * nt.n, nt.n,
                    nt.m + b * nt.n, nt.mbar + bb * nt.n};
}

NullTetrad boost(const NullTetrad& nt, const Expr& a) {
  if (a.is_zero()) throw ComputeError("boost parameter must be nonzero");
  return NullTetrad{a * nt.l, (Expr(1) / a) * nt.n, nt.m, nt.mbar};
}

NullTetrad spin(const NullTetrad& nt, const Expr& w) {
  if (!(w * w.conjugate()).is_one()) {
    throw ComputeError("spin parameter must be unimodular");
  }
  return NullTetrad{nt.l, nt.n, w * nt.m, w.conjugate() * nt.mbar};
}

NPScalars rotate_scalars_about_l(const NPScalars& s, const Expr& a) {
  Expr c = a.conjugate();
  Expr c2 = c * c, c3 = c2 * c, c4 = c3 * c;
  NPScalars out;
  out.psi0 = s.psi0;
  out.psi1 = s.psi1 + c * s.psi0;
  out.psi2 = s.psi2 + Expr(2) * c * s.psi1 + c2 * s.psi0;
  out.psi3 = s.psi3 + Expr(3) * c * s.psi2 + Expr(3) * c2 * s.psi1 + c3 * s.psi0;
  out.psi4 = s.psi4 + Expr(4) * c * s.psi3 + Expr(6) * c2 * s.psi2 + Expr(4) * c3 * s.psi1 +
             c4 * s.psi0;
  return out;
}

std::string petrov_type(const NPScalars& s, PetrovTrace* trace) {
  auto step = [&](const std::string& line) {
    if (trace) trace->steps.push_back(line);
  };
  if (trace) {
    trace->inv_i = s.psi0 * s.psi4 - Expr(4) * s.psi1 * s.psi3 + Expr(3) * s.psi2 * s.psi2;
    trace->inv_j = s.psi4 * (s.psi2 * s.psi0 - s.psi1 * s.psi1) -
                   s.psi3 * (s.psi3 * s.psi0 - s.psi1 * s.psi2) +
                   s.psi2 * (s.psi3 * s.psi1 - s.psi2 * s.psi2);
    trace->rotation = 0;
    trace->steps.clear();
  }
  if (all_zero(s)) {
    step("all Weyl scalars vanish");
    step("type O");
    return "O";
  }
  NPScalars w = s;
  if (w.psi4.is_zero()) {
    for (long c = 1; c <= 8; ++c) {
      NPScalars rotated = rotate_scalars_about_l(s, Expr(c));
      if (!rotated.psi4.is_zero()) {
        w = rotated;
        if (trace) trace->rotation = c;
        step("null rotation about l with parameter " + std::to_string(c) +
             " makes psi4 nonzero");
        break;
      }
    }
    if (w.psi4.is_zero()) throw ComputeError("could not make psi4 nonzero by a null rotation");
  }
  UPoly q = weyl_quartic(w);
  UPoly g1 = upgcd(q, upderiv(q));
  int d1 = updeg(g1);
  step("the repeated part of the principal polynomial has degree " + std::to_string(d1));
  if (d1 == 0) {
    step("type I");
    return "I";
  }
  if (d1 == 1) {
    step("type II");
    return "II";
  }
  if (d1 == 3) {
    step("type N");
    return "N";
  }
  if (d1 != 2) throw ComputeError("unexpected repeated-part degree");
  UPoly g2 = upgcd(g1, upderiv(g1));
  if (updeg(g2) == 0) {
    step("two distinct double roots");
    step("type D");
    return "D";
  }
  step("one triple root");
  step("type III");
  return "III";
}

std::string petrov_type_of_metric(const Metric& g, PetrovTrace* trace) {
  if (g.dimension() != 4) throw ComputeError("petrov classification needs dimension four");
  std::vector<Tensor> basis;
  for (int a = 0; a < 4; ++a) {
    std::vector<Expr> comp(4);
    comp[static_cast<size_t>(a)] = Expr(1);
    basis.push_back(Tensor::vector_field(g.frame(), comp));
  }
  auto lorentzian_tetrad = [&](const Metric& gg) -> std::optional<NullTetrad> {
    std::vector<Tensor> ortho = gram_schmidt(gg, basis);
    auto gm = gram_matrix(gg, ortho);
    std::vector<Tensor> ordered;
    int negatives = 0;
    for (size_t a = 0; a < 4; ++a) {
      if (gm[a][a] == Expr(-1)) {
        ++negatives;
        ordered.insert(ordered.begin(), ortho[a]);
      } else {
        ordered.push_back(ortho[a]);
      }
    }
    if (negatives != 1) return std::nullopt;
    return null_tetrad(gg, ordered);
  };
  if (auto nt = lorentzian_tetrad(g)) {
    CurvatureSuite suite = curvature_suite(g);
    return petrov_type(np_weyl_scalars(suite.weyl, *nt), trace);
  }
  Metric flipped(Expr(-1) * g.tensor());
  auto nt = lorentzian_tetrad(flipped);
  if (!nt) throw ComputeError("metric signature is not lorentzian");
  CurvatureSuite suite = curvature_suite(flipped);
  return petrov_type(np_weyl_scalars(suite.weyl, *nt), trace);
}

std::vector<WeylRoot> weyl_quartic_roots(const NPScalars& s) {
  UPoly q = weyl_quartic(s);
  int dq = updeg(q);
  if (dq < 0) throw ComputeError("the principal polynomial vanishes identically");
  std::vector<WeylRoot> out;
  if (dq == 0) return out;
  for (const auto& [z, mult] : up_roots(q)) {
    out.push_back(WeylRoot{z, mult});
  }
  return out;
}

Tensor principal_null_direction(const NullTetrad& nt, const Expr& z) {
  const FramePtr& fr = nt.l.frame();
  Expr zb = z.conjugate();
  return nt.l + (z * zb) * in_frame(nt.n, fr) + zb * in_frame(nt.m, fr) +
         z * in_frame(nt.mbar, fr);
}

std::vector<std::pair<Tensor, int>> principal_null_directions(const NPScalars& s,
                                                              const NullTetrad& nt) {
  UPoly q = weyl_quartic(s);
  int dq = updeg(q);
  if (dq < 0) throw ComputeError("every null direction is principal");
  std::vector<std::pair<Tensor, int>> out;
  if (dq < 4) out.emplace_back(nt.n, 4 - dq);
  for (const WeylRoot& r : weyl_quartic_roots(s)) {
    out.emplace_back(principal_null_direction(nt, r.z), r.multiplicity);
  }
  return out;
}

NullTetrad adapted_null_tetrad(const NullTetrad& nt, const Expr& z1, const Expr& z2) {
  if ((z1 - z2).is_zero()) throw ComputeError("adapted tetrad needs distinct principal roots");
  NullTetrad first = null_rotation_about_n(nt, z1);
  Expr a = Expr(1) / (z2 - z1).conjugate();
  return null_rotation_about_l(first, a);
}

}  // namespace grsym
