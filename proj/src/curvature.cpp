#include "grsym/curvature.hpp"

#include "grsym/common.hpp"

namespace grsym {

namespace {

using Cube = std::vector<std::vector<std::vector<Expr>>>;

Cube make_cube(int n) {
  return Cube(static_cast<size_t>(n),
              std::vector<std::vector<Expr>>(static_cast<size_t>(n),
                                             std::vector<Expr>(static_cast<size_t>(n), Expr(0))));
}

}  // namespace

Tensor FrameData::bracket(int b, int cc) const {
  const int n = frame->dimension();
  Tensor out(Frame::holonomic(frame->chart()), {slot_up()});
  std::vector<Expr> comp(static_cast<size_t>(n), Expr(0));
  for (int i = 0; i < n; ++i) {
    Expr s(0);
    for (int a = 0; a < n; ++a) {
      if (c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)].is_zero()) continue;
      s += c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)] *
           frame->vector(a, i);
    }
    comp[static_cast<size_t>(i)] = s;
  }
  return Tensor::vector_field(Frame::holonomic(frame->chart()), comp);
}

FrameData frame_data(const FramePtr& frame) {
  const int n = frame->dimension();
  FrameData fd{frame, make_cube(n)};
  if (frame->is_holonomic()) return fd;
  const ChartPtr& chart = frame->chart();
  for (int b = 0; b < n; ++b) {
    for (int cc = b + 1; cc < n; ++cc) {
      // [e_b, e_c]^i in coordinates, then resolved against the coframe.
      std::vector<Expr> br(static_cast<size_t>(n), Expr(0));
      for (int i = 0; i < n; ++i) {
        Expr s(0);
        for (int j = 0; j < n; ++j) {
          const AtomId xj = chart->coordinate(j);
          if (!frame->vector(b, j).is_zero()) {
            s += frame->vector(b, j) * frame->vector(cc, i).derivative(xj);
          }
          if (!frame->vector(cc, j).is_zero()) {
            s -= frame->vector(cc, j) * frame->vector(b, i).derivative(xj);
          }
        }
        br[static_cast<size_t>(i)] = s;
      }
      for (int a = 0; a < n; ++a) {
        Expr s(0);
        for (int i = 0; i < n; ++i) {
          if (br[static_cast<size_t>(i)].is_zero()) continue;
          s += frame->covector(a, i) * br[static_cast<size_t>(i)];
        }
        fd.c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)] = s;
        fd.c[static_cast<size_t>(a)][static_cast<size_t>(cc)][static_cast<size_t>(b)] = -s;
      }
    }
  }
  return fd;
}

Connection levi_civita(const Metric& g) {
  const FramePtr& frame = g.frame();
  const int n = frame->dimension();
  Connection conn{frame, make_cube(n), frame_data(frame).c, std::nullopt, std::nullopt};
  // e_b(g_cd) for all index triples.
  Cube dg = make_cube(n);
  for (int b = 0; b < n; ++b) {
    for (int cc = 0; cc < n; ++cc) {
      for (int d = cc; d < n; ++d) {
        Expr v = frame->direct(b, g.component(cc, d));
        dg[static_cast<size_t>(b)][static_cast<size_t>(cc)][static_cast<size_t>(d)] = v;
        dg[static_cast<size_t>(b)][static_cast<size_t>(d)][static_cast<size_t>(cc)] = v;
      }
    }
  }
  const Expr half(Rat(1) / Rat(2));
  Cube low = make_cube(n);  // low[d][b][c] = g_{ad} Gamma^a_{bc}
  for (int d = 0; d < n; ++d) {
    for (int b = 0; b < n; ++b) {
      for (int cc = 0; cc < n; ++cc) {
        Expr v = dg[static_cast<size_t>(b)][static_cast<size_t>(cc)][static_cast<size_t>(d)] +
                 dg[static_cast<size_t>(cc)][static_cast<size_t>(b)][static_cast<size_t>(d)] -
                 dg[static_cast<size_t>(d)][static_cast<size_t>(b)][static_cast<size_t>(cc)];
        for (int a = 0; a < n; ++a) {
          const Expr& cbc = conn.c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)];
          const Expr& cbd = conn.c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(d)];
          const Expr& ccd = conn.c[static_cast<size_t>(a)][static_cast<size_t>(cc)][static_cast<size_t>(d)];
          if (!cbc.is_zero()) v += cbc * g.component(a, d);
          if (!cbd.is_zero()) v -= cbd * g.component(a, cc);
          if (!ccd.is_zero()) v -= ccd * g.component(a, b);
        }
        low[static_cast<size_t>(d)][static_cast<size_t>(b)][static_cast<size_t>(cc)] = half * v;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int cc = 0; cc < n; ++cc) {
        Expr s(0);
        for (int d = 0; d < n; ++d) {
          const Expr& gi = g.inverse_component(a, d);
          if (gi.is_zero()) continue;
          s += gi * low[static_cast<size_t>(d)][static_cast<size_t>(b)][static_cast<size_t>(cc)];
        }
        conn.gamma[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(cc)] = s;
      }
    }
  }
  return conn;
}

Tensor covariant_derivative(const Tensor& t, const Connection& conn) {
  const Tensor src = convert_frame(t, conn.frame);

  std::vector<Slot> slots = src.slots();
  slots.push_back(slot_down());
  Tensor out(conn.frame, slots);
  for (const Slot& s : src.slots()) {
    if (s.kind != SlotKind::Tangent && !conn.spin.has_value()) {
      throw ComputeError("connection has no spinor coefficients");
    }
  }
  const auto out_dims = out.dims();
  std::vector<int> idx(out_dims.size(), 0);
  if (!out.size()) return out;
  do {
    const int cdir = idx.back();
    std::vector<int> base(idx.begin(), idx.end() - 1);
    Expr v = conn.frame->direct(cdir, src.at(base));
    for (int k = 0; k < src.rank(); ++k) {
      const Slot& s = src.slots()[static_cast<size_t>(k)];
      std::vector<int> alt = base;
      const int dk = src.dim(k);
      for (int e = 0; e < dk; ++e) {
        alt[static_cast<size_t>(k)] = e;
        const Expr& te = src.at(alt);
        if (te.is_zero()) continue;
        const int ik = base[static_cast<size_t>(k)];
        if (s.kind == SlotKind::Tangent) {
          if (s.up) {
            v += conn.christoffel(ik, cdir, e) * te;
          } else {
            v -= conn.christoffel(e, cdir, ik) * te;
          }
        } else {
          const auto& w = s.kind == SlotKind::Spinor ? *conn.spin : *conn.spin_conj;
          const Expr& wce = s.up ? w[static_cast<size_t>(cdir)][static_cast<size_t>(ik)][static_cast<size_t>(e)]
                                 : w[static_cast<size_t>(cdir)][static_cast<size_t>(e)][static_cast<size_t>(ik)];
          if (wce.is_zero()) continue;
          if (s.up) {
            v += wce * te;
          } else {
            v -= wce * te;
          }
        }
      }
    }
    out.at(idx) = v;
  } while (next_multi_index(idx, out_dims));
  return out;
}

Tensor lie_bracket(const Tensor& x, const Tensor& y) {
  if (x.slots() != std::vector<Slot>{slot_up()} || y.slots() != std::vector<Slot>{slot_up()}) {
    throw ComputeError("lie_bracket needs vector fields");
  }
  FramePtr hol = x.frame()->is_holonomic() ? x.frame() : Frame::holonomic(x.frame()->chart());
  Tensor cx = convert_frame(x, hol);
  Tensor cy = convert_frame(y, hol);
  const ChartPtr& chart = hol->chart();
  const int n = hol->dimension();
  std::vector<Expr> comp(static_cast<size_t>(n), Expr(0));
  for (int i = 0; i < n; ++i) {
    Expr s(0);
    for (int j = 0; j < n; ++j) {
      const AtomId xj = chart->coordinate(j);
      if (!cx[static_cast<size_t>(j)].is_zero()) {
        s += cx[static_cast<size_t>(j)] * cy[static_cast<size_t>(i)].derivative(xj);
      }
      if (!cy[static_cast<size_t>(j)].is_zero()) {
        s -= cy[static_cast<size_t>(j)] * cx[static_cast<size_t>(i)].derivative(xj);
      }
    }
    comp[static_cast<size_t>(i)] = s;
  }
  return Tensor::vector_field(hol, comp);
}

Tensor lie_derivative(const Tensor& x, const Tensor& t) {
  if (x.slots() != std::vector<Slot>{slot_up()}) {
    throw ComputeError("lie_derivative needs a vector field");
  }
  for (const Slot& s : t.slots()) {
    if (s.kind != SlotKind::Tangent) throw ComputeError("lie_derivative acts on tangent tensors");
  }
  FramePtr hol = Frame::holonomic(t.frame()->chart());
  Tensor cx = convert_frame(x, hol);
  Tensor ct = convert_frame(t, hol);
  const ChartPtr& chart = hol->chart();
  const int n = hol->dimension();
  Tensor out(hol, ct.slots());
  const auto dims = ct.dims();
  std::vector<int> idx(dims.size(), 0);
  do {
    Expr v(0);
    for (int j = 0; j < n; ++j) {
      if (cx[static_cast<size_t>(j)].is_zero()) continue;
      v += cx[static_cast<size_t>(j)] * ct.at(idx).derivative(chart->coordinate(j));
    }
    for (int k = 0; k < ct.rank(); ++k) {
      const Slot& s = ct.slots()[static_cast<size_t>(k)];
      const int ik = idx[static_cast<size_t>(k)];
      std::vector<int> alt = idx;
      for (int e = 0; e < n; ++e) {
        alt[static_cast<size_t>(k)] = e;
        const Expr& te = ct.at(alt);
        if (te.is_zero()) continue;
        if (s.up) {
          v -= cx[static_cast<size_t>(ik)].derivative(chart->coordinate(e)) * te;
        } else {
          v += cx[static_cast<size_t>(e)].derivative(chart->coordinate(ik)) * te;
        }
      }
    }
    out.at(idx) = v;
  } while (next_multi_index(idx, dims));
  return convert_frame(out, t.frame());
}

Tensor exterior_derivative(const Tensor& w) {
  for (const Slot& s : w.slots()) {
    if (s != slot_down()) throw ComputeError("exterior derivative acts on covariant forms");
  }
  FramePtr hol = Frame::holonomic(w.frame()->chart());
  Tensor cw = convert_frame(w, hol);
  if (w.rank() >= 2) {
    std::vector<int> all(static_cast<size_t>(w.rank()));
    for (int k = 0; k < w.rank(); ++k) all[static_cast<size_t>(k)] = k;
    if (cw.antisymmetrize(all) != cw) {
      throw ComputeError("exterior derivative needs an antisymmetric argument");
    }
  }
  const ChartPtr& chart = hol->chart();

  const int p = w.rank();
  std::vector<Slot> slots(static_cast<size_t>(p) + 1, slot_down());
  Tensor out(hol, slots);
  const auto dims = out.dims();
  std::vector<int> idx(dims.size(), 0);
  do {
    Expr v(0);
    for (int k = 0; k <= p; ++k) {
      std::vector<int> rest;
      rest.reserve(static_cast<size_t>(p));
      for (int j = 0; j <= p; ++j) {
        if (j != k) rest.push_back(idx[static_cast<size_t>(j)]);
      }
      Expr term = cw.at(rest).derivative(chart->coordinate(idx[static_cast<size_t>(k)]));
      if (term.is_zero()) continue;
      if (k % 2 == 0) {
        v += term;
      } else {
        v -= term;
      }
    }
    out.at(idx) = v;
  } while (next_multi_index(idx, dims));
  return convert_frame(out, w.frame());
}

CurvatureSuite curvature_suite(const Metric& g) {
  Connection conn = levi_civita(g);
  const FramePtr& frame = g.frame();
  const int n = frame->dimension();
  Tensor riemann(frame, {slot_up(), slot_down(), slot_down(), slot_down()});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int cc = 0; cc < n; ++cc) {
        for (int d = cc + 1; d < n; ++d) {
          Expr v = frame->direct(cc, conn.christoffel(a, d, b)) -
                   frame->direct(d, conn.christoffel(a, cc, b));
          for (int e = 0; e < n; ++e) {
            const Expr& g1 = conn.christoffel(a, cc, e);
            const Expr& g2 = conn.christoffel(e, d, b);
            if (!g1.is_zero() && !g2.is_zero()) v += g1 * g2;
            const Expr& g3 = conn.christoffel(a, d, e);
            const Expr& g4 = conn.christoffel(e, cc, b);
            if (!g3.is_zero() && !g4.is_zero()) v -= g3 * g4;
            const Expr& ce = conn.c[static_cast<size_t>(e)][static_cast<size_t>(cc)][static_cast<size_t>(d)];
            if (!ce.is_zero()) v -= ce * conn.christoffel(a, e, b);
          }
          riemann.at({a, b, cc, d}) = v;
          riemann.at({a, b, d, cc}) = -v;
        }
      }
    }
  }
  Tensor riemann_down = g.lower(riemann, 0);
  Tensor ricci(frame, {slot_down(), slot_down()});
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      Expr s(0);
      for (int a = 0; a < n; ++a) s += riemann.at({a, b, a, d});
      ricci.at({b, d}) = s;
    }
  }
  Expr scalar(0);
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      const Expr& gi = g.inverse_component(b, d);
      if (gi.is_zero() || ricci.at({b, d}).is_zero()) continue;
      scalar += gi * ricci.at({b, d});
    }
  }
  Tensor ricci_up = g.raise(g.raise(ricci, 0), 1);
  const Expr half(Rat(1) / Rat(2));
  Tensor einstein = ricci_up - half * scalar * g.inverse_tensor();
  Tensor weyl(frame, {slot_down(), slot_down(), slot_down(), slot_down()});
  if (n >= 3) {
    const Expr c1 = Expr(Rat(1) / Rat(n - 2));
    const Expr c2 = Expr(Rat(1) / Rat((n - 1) * (n - 2)));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int cc = 0; cc < n; ++cc) {
          for (int d = 0; d < n; ++d) {
            Expr v = riemann_down.at({a, b, cc, d});
            v -= c1 * (g.component(a, cc) * ricci.at({d, b}) - g.component(a, d) * ricci.at({cc, b}) -
                       g.component(b, cc) * ricci.at({d, a}) + g.component(b, d) * ricci.at({cc, a}));
            v += c2 * scalar *
                 (g.component(a, cc) * g.component(d, b) - g.component(a, d) * g.component(cc, b));
            weyl.at({a, b, cc, d}) = v;
          }
        }
      }
    }
  }
  return CurvatureSuite{std::move(conn), std::move(riemann), std::move(riemann_down),
                        std::move(ricci), std::move(scalar), std::move(einstein), std::move(weyl)};
}

Tensor energy_momentum(const Tensor& f, const Metric& g) {
  Tensor cf = convert_frame(f, g.frame());
  if (cf.slots() != std::vector<Slot>{slot_down(), slot_down()}) {
    throw ComputeError("field strength must be a covariant 2-form");
  }
  const int n = g.dimension();
  Tensor fup = g.raise(g.raise(cf, 0), 1);
  Tensor fmix = g.raise(cf, 0);  // F^a_c
  Expr f2(0);
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) {
      if (cf.at({c, d}).is_zero()) continue;
      f2 += cf.at({c, d}) * fup.at({c, d});
    }
  }
  const Expr quarter(Rat(1) / Rat(4));
  Tensor t(g.frame(), {slot_up(), slot_up()});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Expr v(0);
      for (int c = 0; c < n; ++c) {
        if (fup.at({a, c}).is_zero() || fmix.at({b, c}).is_zero()) continue;
        v += fup.at({a, c}) * fmix.at({b, c});
      }
      v -= quarter * g.inverse_component(a, b) * f2;
      t.at({a, b}) = v;
    }
  }
  return t;
}

MaxwellResidual matter_field_equations(const Tensor& f, const Metric& g) {
  Tensor cf = convert_frame(f, g.frame());
  Tensor fup = g.raise(g.raise(cf, 0), 1);
  Connection conn = levi_civita(g);
  Tensor div = covariant_derivative(fup, conn).contract(0, 2);
  Tensor ext = exterior_derivative(cf);
  return MaxwellResidual{std::move(div), std::move(ext)};
}

}  // namespace grsym
