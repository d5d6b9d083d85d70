#pragma once

#include <vector>

#include "grsym/atoms.hpp"
#include "grsym/curvature.hpp"
#include "grsym/invariants.hpp"
#include "grsym/metric.hpp"
#include "grsym/tensor.hpp"

namespace grsym {

inline Tensor zero_vector(const FramePtr& f) {
  return Tensor(f, {slot_up()});
}

inline Tensor zero_covector(const FramePtr& f) {
  return Tensor(f, {slot_down()});
}

inline Expr sin_of(const Expr& coord) {
  return sin_expr(coord);
}

inline Expr cos_of(const Expr& coord) {
  return cos_expr(coord);
}

inline Metric diagonal_metric(const FramePtr& f, const std::vector<Expr>& diag) {
  Tensor g(f, {slot_down(), slot_down()});
  for (int a = 0; a < f->dimension(); ++a) g.at({a, a}) = diag[static_cast<size_t>(a)];
  return Metric(g);
}

inline Tensor basis_vector(const FramePtr& f, int i) {
  Tensor t(f, {slot_up()});
  t.at({i}) = Expr(1);
  return t;
}

inline Tensor basis_covector(const FramePtr& f, int i) {
  Tensor t(f, {slot_down()});
  t.at({i}) = Expr(1);
  return t;
}

/// Covectors dual to a spanning list of vector fields.
inline std::vector<Tensor> dual_basis(const std::vector<Tensor>& vectors) {
  const FramePtr& f = vectors.front().frame();
  const int n = f->dimension();
  std::vector<std::vector<Expr>> m(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(a)][static_cast<size_t>(i)] = vectors[static_cast<size_t>(a)].at({i});
  auto inv = invert_matrix(m);
  std::vector<Tensor> out;
  for (int a = 0; a < n; ++a) {
    Tensor w(f, {slot_down()});
    for (int i = 0; i < n; ++i) w.at({i}) = inv[static_cast<size_t>(i)][static_cast<size_t>(a)];
    out.push_back(w);
  }
  return out;
}

struct Flat3 {
  ChartPtr chart = make_chart("E3", {"x", "y", "z"});
  FramePtr hol = Frame::holonomic(chart);
  Expr x = Expr::atom(chart->coordinate(0));
  Expr y = Expr::atom(chart->coordinate(1));
  Expr z = Expr::atom(chart->coordinate(2));
  Metric g = diagonal_metric(hol, {Expr(1), Expr(1), Expr(1)});
};

struct Schwarzschild {
  ChartPtr chart = make_chart("SCHW", {"t", "r", "theta", "phi"});
  FramePtr hol = Frame::holonomic(chart);
  Expr r = Expr::atom(chart->coordinate(1));
  Expr th = Expr::atom(chart->coordinate(2));
  Expr m = Expr::atom(AtomTable::instance().parameter("m_s", true, true));
  Expr f = Expr(1) - 2 * m / r;
};

struct ReissnerNordstrom {
  ChartPtr chart = make_chart("RN", {"t", "r", "theta", "phi"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr r = Expr::atom(chart->coordinate(1));
  Expr th = Expr::atom(chart->coordinate(2));
  Expr m = Expr::atom(AtomTable::instance().parameter("M", true, true));
  Expr q = Expr::atom(AtomTable::instance().parameter("Q", true, true));
  Expr f = Expr(1) - 2 * m / r + q * q / (r * r);

  Metric metric() const {
    return diagonal_metric(hol, {-f, Expr(1) / f, r * r, r * r * sin_of(th) * sin_of(th)});
  }

  Tensor field_strength() const {
    Tensor dt(hol, {slot_down()});
    dt.at({0}) = Expr(1);
    Tensor dr(hol, {slot_down()});
    dr.at({1}) = Expr(1);
    return (sqrt_expr(Expr(2)) * q / (r * r)) * wedge(dt, dr);
  }

  std::vector<Tensor> orthonormal_tetrad() const {
    Expr root_f = sqrt_expr(f);
    Tensor e0 = zero_vector(hol);
    e0.at({0}) = Expr(1) / root_f;
    Tensor e1 = zero_vector(hol);
    e1.at({1}) = root_f;
    Tensor e2 = zero_vector(hol);
    e2.at({2}) = Expr(1) / r;
    Tensor e3 = zero_vector(hol);
    e3.at({3}) = Expr(1) / (r * sin_of(th));
    return {e0, e1, e2, e3};
  }
};

struct Goedel {
  ChartPtr chart = make_chart("G", {"t", "x", "y", "z"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr x = Expr::atom(chart->coordinate(1));
  Expr y = Expr::atom(chart->coordinate(2));
  Expr z = Expr::atom(chart->coordinate(3));
  Expr ex = exp_expr(x);

  Metric metric() const {
    Tensor g(hol, {slot_down(), slot_down()});
    g.at({0, 0}) = Expr(-1);
    g.at({0, 3}) = -ex;
    g.at({3, 0}) = -ex;
    g.at({1, 1}) = Expr(1);
    g.at({2, 2}) = Expr(1);
    g.at({3, 3}) = -ex * ex / 2;
    return Metric(g);
  }

  /// Frame dual to the coframe [dt + e^x dz, dx, dy, e^x dz / sqrt(2)].
  std::vector<Tensor> orthonormal_tetrad() const {
    Expr s2 = sqrt_expr(Expr(2));
    Tensor e0 = zero_vector(hol);
    e0.at({0}) = Expr(1);
    Tensor e1 = zero_vector(hol);
    e1.at({1}) = Expr(1);
    Tensor e2 = zero_vector(hol);
    e2.at({2}) = Expr(1);
    Tensor e3 = zero_vector(hol);
    e3.at({0}) = -s2;
    e3.at({3}) = s2 * exp_expr(-x);
    return {e0, e1, e2, e3};
  }

  std::vector<Tensor> killing_basis() const {
    Tensor v1 = basis_vector(hol, 3);
    Tensor v2 = basis_vector(hol, 0);
    Tensor v3 = zero_vector(hol);
    v3.at({1}) = Expr(1);
    v3.at({3}) = -z;
    Tensor v4 = zero_vector(hol);
    v4.at({0}) = -4 * exp_expr(-x);
    v4.at({1}) = 2 * z;
    v4.at({3}) = -z * z + 2 * exp_expr(-2 * x);
    Tensor v5 = basis_vector(hol, 2);
    return {v1, v2, v3, v4, v5};
  }

  AnsatzBasis killing_ansatz() const {
    return AnsatzBasis({Expr(1), z, z * z, exp_expr(-x), exp_expr(-2 * x)});
  }

  /// Monomials z^j e^{kx} wide enough for rank-two Killing tensor components.
  AnsatzBasis tensor_ansatz(int rank) const {
    std::vector<Expr> fns;
    for (int j = 0; j <= 2 * rank; ++j)
      for (int k = -2 * rank; k <= 2 * rank; ++k)
        fns.push_back(z.pow(j) * exp_expr(Expr(k) * x));
    return AnsatzBasis(fns);
  }
};

struct Minkowski4 {
  ChartPtr chart = make_chart("M4", {"t", "x", "y", "z"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr x = Expr::atom(chart->coordinate(1));
  Expr y = Expr::atom(chart->coordinate(2));
  Expr z = Expr::atom(chart->coordinate(3));
  Metric g = diagonal_metric(hol, {Expr(-1), Expr(1), Expr(1), Expr(1)});
};

struct Euclidean2 {
  ChartPtr chart = make_chart("E2", {"x", "y"});
  FramePtr hol = Frame::holonomic(chart);
  Expr x = Expr::atom(chart->coordinate(0));
  Expr y = Expr::atom(chart->coordinate(1));
  Metric g = diagonal_metric(hol, {Expr(1), Expr(1)});
};

struct PlaneWave {
  ChartPtr chart = make_chart("PW", {"u", "v", "x", "y"});
  FramePtr hol = Frame::holonomic(chart);
  Expr u = Expr::atom(chart->coordinate(0));
  Expr v = Expr::atom(chart->coordinate(1));
  Expr x = Expr::atom(chart->coordinate(2));
  Expr y = Expr::atom(chart->coordinate(3));
  Expr a = Expr::atom(AtomTable::instance().opaque("a", Poly::atom(chart->coordinate(0))));
  Expr b = Expr::atom(AtomTable::instance().opaque("b", Poly::atom(chart->coordinate(0))));
  Expr p = Expr::atom(AtomTable::instance().opaque("P", Poly::atom(chart->coordinate(0))));
  Expr q = Expr::atom(AtomTable::instance().opaque("Q", Poly::atom(chart->coordinate(0))));
  Expr pp = Expr::atom(AtomTable::instance().opaque("P", Poly::atom(chart->coordinate(0)), 1));
  Expr qp = Expr::atom(AtomTable::instance().opaque("Q", Poly::atom(chart->coordinate(0)), 1));
  /// Antiderivative of a/(P'Q'), with its derivative declared.
  Expr anti = Expr::atom(AtomTable::instance().opaque("A", Poly::atom(chart->coordinate(0))));

  PlaneWave() { AtomTable::instance().declare_derivative("A", 1, a / (pp * qp)); }

  Metric metric() const {
    Tensor g(hol, {slot_down(), slot_down()});
    g.at({0, 0}) = a * b;
    g.at({0, 1}) = -b * pp * qp;
    g.at({1, 0}) = -b * pp * qp;
    g.at({2, 2}) = b * qp;
    g.at({3, 3}) = b * pp;
    return Metric(g);
  }

  std::vector<Tensor> symmetry_generators() const {
    Tensor x1 = basis_vector(hol, 1);
    Tensor x2 = basis_vector(hol, 2);
    Tensor x3 = basis_vector(hol, 3);
    Tensor x4 = zero_vector(hol);
    x4.at({1}) = x;
    x4.at({2}) = p;
    Tensor x5 = zero_vector(hol);
    x5.at({1}) = y;
    x5.at({3}) = q;
    return {x1, x2, x3, x4, x5};
  }

  Tensor homothety_field() const {
    Tensor h = zero_vector(hol);
    h.at({1}) = 2 * v - anti;
    h.at({2}) = x;
    h.at({3}) = y;
    return h;
  }

  Tensor q1() const {
    Tensor t(hol, {slot_down(), slot_down()});
    t.at({0, 0}) = Expr(1);
    return t;
  }

  Tensor q2() const {
    Tensor t(hol, {slot_down(), slot_down()});
    t.at({0, 1}) = -pp * qp;
    t.at({1, 0}) = -pp * qp;
    t.at({2, 2}) = qp;
    t.at({3, 3}) = pp;
    return t;
  }
};

struct Kerr {
  ChartPtr chart = make_chart("K", {"t", "r", "theta", "phi"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr r = Expr::atom(chart->coordinate(1));
  Expr th = Expr::atom(chart->coordinate(2));
  Expr ph = Expr::atom(chart->coordinate(3));
  Expr m = Expr::atom(AtomTable::instance().parameter("m_k", true, true));
  Expr a = Expr::atom(AtomTable::instance().parameter("a_k", true, true));
  Expr rho2 = r * r + a * a * cos_of(th) * cos_of(th);
  Expr delta = r * r - 2 * m * r + a * a;

  Metric metric() const {
    Expr s2 = sin_of(th) * sin_of(th);
    Tensor g(hol, {slot_down(), slot_down()});
    g.at({0, 0}) = (2 * m * r - rho2) / rho2;
    g.at({0, 3}) = -2 * m * r * a * s2 / rho2;
    g.at({3, 0}) = -2 * m * r * a * s2 / rho2;
    g.at({1, 1}) = rho2 / delta;
    g.at({2, 2}) = rho2;
    g.at({3, 3}) = s2 * (2 * m * r * a * a * s2 + rho2 * r * r + rho2 * a * a) / rho2;
    return Metric(g);
  }

  Tensor killing_yano_display() const {
    Tensor dt = basis_covector(hol, 0);
    Tensor dr = basis_covector(hol, 1);
    Tensor dth = basis_covector(hol, 2);
    Tensor dph = basis_covector(hol, 3);
    return (-a * cos_of(th)) * wedge(dt, dr) + (a * r * sin_of(th)) * wedge(dt, dth) +
           (-a * a * sin_of(th) * sin_of(th) * cos_of(th)) * wedge(dr, dph) +
           (r * (r * r + a * a) * sin_of(th)) * wedge(dth, dph);
  }

  std::vector<Tensor> null_tetrad_vectors() const {
    const Expr ii = Expr::i();
    const Expr s2 = sqrt_expr(Expr(2));
    Tensor l = zero_vector(hol);
    l.at({0}) = (r * r + a * a) / delta;
    l.at({1}) = Expr(1);
    l.at({3}) = a / delta;
    Tensor n = zero_vector(hol);
    n.at({0}) = (r * r + a * a) / (2 * rho2);
    n.at({1}) = -delta / (2 * rho2);
    n.at({3}) = a / (2 * rho2);
    const Expr dm = s2 * (r + ii * a * cos_of(th));
    Tensor mm = zero_vector(hol);
    mm.at({0}) = ii * a * sin_of(th) / dm;
    mm.at({2}) = Expr(1) / dm;
    mm.at({3}) = ii / (sin_of(th) * dm);
    const Expr db = s2 * (r - ii * a * cos_of(th));
    Tensor mb = zero_vector(hol);
    mb.at({0}) = -ii * a * sin_of(th) / db;
    mb.at({2}) = Expr(1) / db;
    mb.at({3}) = -ii / (sin_of(th) * db);
    return {l, n, mm, mb};
  }

  /// Monomials r^j sin^p cos^q wide enough for the rank-two 2-form components.
  AnsatzBasis yano_ansatz() const {
    std::vector<Expr> fns;
    for (int j = 0; j <= 3; ++j)
      for (int pw = 0; pw <= 3; ++pw)
        for (int qw = 0; pw + qw <= 3; ++qw)
          fns.push_back(r.pow(j) * sin_of(th).pow(pw) * cos_of(th).pow(qw));
    return AnsatzBasis(fns);
  }
};

struct Kundt {
  ChartPtr chart = make_chart("KD", {"u", "v", "zeta", "zetab"});
  FramePtr hol = Frame::holonomic(chart);
  Expr u = Expr::atom(chart->coordinate(0));
  Expr v = Expr::atom(chart->coordinate(1));
  Expr z = Expr::atom(chart->coordinate(2));
  Expr zb = Expr::atom(chart->coordinate(3));
  Expr f = Expr::atom(AtomTable::instance().opaque("f", Poly::atom(chart->coordinate(0))));

  Metric metric() const {
    Expr w = -2 * v / (z + zb);
    Expr h = (z + zb) * f * (exp_expr(z) + exp_expr(zb)) - v * v / ((z + zb) * (z + zb));
    Tensor g(hol, {slot_down(), slot_down()});
    g.at({2, 3}) = Expr(1);
    g.at({3, 2}) = Expr(1);
    g.at({0, 1}) = Expr(-1);
    g.at({1, 0}) = Expr(-1);
    g.at({0, 2}) = -w;
    g.at({2, 0}) = -w;
    g.at({0, 3}) = -w;
    g.at({3, 0}) = -w;
    g.at({0, 0}) = -2 * h;
    return Metric(g);
  }
};

}  // namespace grsym
