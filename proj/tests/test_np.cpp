#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "grsym/common.hpp"
#include "grsym/np.hpp"

using namespace grsym;

namespace {

NPScalars profile(long a0, long a1, long a2, long a3, long a4) {
  NPScalars s;
  s.psi0 = Expr(a0);
  s.psi1 = Expr(a1);
  s.psi2 = Expr(a2);
  s.psi3 = Expr(a3);
  s.psi4 = Expr(a4);
  return s;
}

}  // namespace

TEST_CASE("goedel weyl scalars and petrov type") {
  Goedel gd;
  Metric g = gd.metric();
  CurvatureSuite cs = curvature_suite(g);
  NullTetrad nt = null_tetrad(g, gd.orthonormal_tetrad());

  NPScalars s = np_weyl_scalars(cs.weyl, nt);
  CHECK(s.psi0 == Expr(Rat(1, 4)));
  CHECK(s.psi1.is_zero());
  CHECK(s.psi2 == Expr(Rat(1, 12)));
  CHECK(s.psi3.is_zero());
  CHECK(s.psi4 == Expr(Rat(1, 4)));

  PetrovTrace trace;
  CHECK(petrov_type(s, &trace) == "D");
  CHECK(trace.inv_i == Expr(Rat(1, 12)));
  CHECK(trace.inv_j == Expr(Rat(1, 216)));
  CHECK((trace.inv_i.pow(3) - Expr(27) * trace.inv_j * trace.inv_j).is_zero());
  CHECK(trace.rotation == 0);

  CHECK(petrov_type_of_metric(g) == "D");
}

TEST_CASE("petrov types from scalar profiles") {
  CHECK(petrov_type(profile(0, 0, 0, 0, 0)) == "O");
  CHECK(petrov_type(profile(0, 0, 0, 0, 1)) == "N");
  CHECK(petrov_type(profile(1, 0, 0, 0, 0)) == "N");
  CHECK(petrov_type(profile(0, 0, 1, 0, 0)) == "D");
  CHECK(petrov_type(profile(0, 0, 1, 0, 1)) == "II");
  CHECK(petrov_type(profile(1, 0, 0, 0, 1)) == "I");

  PetrovTrace trace;
  CHECK(petrov_type(profile(0, 0, 0, 1, 0), &trace) == "III");
  CHECK(trace.rotation != 0);
}

TEST_CASE("null rotations preserve normalization and transform the scalars") {
  Goedel gd;
  Metric g = gd.metric();
  CurvatureSuite cs = curvature_suite(g);
  NullTetrad nt = null_tetrad(g, gd.orthonormal_tetrad());
  NPScalars s = np_weyl_scalars(cs.weyl, nt);

  Expr a = Expr(1) + Expr(2) * Expr::i();
  NullTetrad rot = null_rotation_about_l(nt, a);
  CHECK(g.inner(rot.l, rot.l).is_zero());
  CHECK(g.inner(rot.n, rot.n).is_zero());
  CHECK(g.inner(rot.m, rot.m).is_zero());
  CHECK(g.inner(rot.l, rot.n) == Expr(-1));
  CHECK(g.inner(rot.m, rot.mbar) == Expr(1));
  CHECK(g.inner(rot.l, rot.m).is_zero());
  CHECK(g.inner(rot.n, rot.m).is_zero());

  NPScalars direct = np_weyl_scalars(cs.weyl, rot);
  NPScalars formula = rotate_scalars_about_l(s, a);
  CHECK(direct.psi0 == formula.psi0);
  CHECK(direct.psi1 == formula.psi1);
  CHECK(direct.psi2 == formula.psi2);
  CHECK(direct.psi3 == formula.psi3);
  CHECK(direct.psi4 == formula.psi4);

  NullTetrad boosted = boost(nt, Expr(3));
  NPScalars bs = np_weyl_scalars(cs.weyl, boosted);
  CHECK(bs.psi2 == s.psi2);
  CHECK(bs.psi0 == Expr(9) * s.psi0);
  CHECK(bs.psi4 == s.psi4 / 9);

  NullTetrad spun = spin(nt, Expr::i());
  NPScalars ss = np_weyl_scalars(cs.weyl, spun);
  CHECK(ss.psi0 == -s.psi0);
  CHECK(ss.psi2 == s.psi2);
  CHECK(ss.psi4 == -s.psi4);
}

TEST_CASE("goedel adapted tetrad and principal null directions") {
  Goedel gd;
  Metric g = gd.metric();
  CurvatureSuite cs = curvature_suite(g);
  NullTetrad nt = null_tetrad(g, gd.orthonormal_tetrad());
  NPScalars s = np_weyl_scalars(cs.weyl, nt);

  auto roots = weyl_quartic_roots(s);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].z == Expr::i());
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].z == -Expr::i());
  CHECK(roots[1].multiplicity == 2);

  Expr s2 = sqrt_expr(Expr(2));
  auto pnds = principal_null_directions(s, nt);
  REQUIRE(pnds.size() == 2);
  CHECK(pnds[0].second == 2);
  CHECK(pnds[1].second == 2);
  CHECK(pnds[0].first.at({0}) == s2);
  CHECK(pnds[0].first.at({1}).is_zero());
  CHECK(pnds[0].first.at({2}) == s2);
  CHECK(pnds[0].first.at({3}).is_zero());
  CHECK(pnds[1].first.at({0}) == s2);
  CHECK(pnds[1].first.at({2}) == -s2);
  CHECK(g.inner(pnds[0].first, pnds[0].first).is_zero());
  CHECK(g.inner(pnds[1].first, pnds[1].first).is_zero());

  NullTetrad ad = adapted_null_tetrad(nt, roots[0].z, roots[1].z);
  CHECK(ad.l.at({0}) == s2);
  CHECK(ad.l.at({1}).is_zero());
  CHECK(ad.l.at({2}) == s2);
  CHECK(ad.l.at({3}).is_zero());
  CHECK(ad.n.at({0}) == s2 / 4);
  CHECK(ad.n.at({2}) == -s2 / 4);
  CHECK(ad.m.at({0}) == Expr::i());
  CHECK(ad.m.at({1}) == s2 / 2);
  CHECK(ad.m.at({2}).is_zero());
  CHECK(ad.m.at({3}) == -Expr::i() * exp_expr(-gd.x));
  CHECK(g.inner(ad.l, ad.n) == Expr(-1));
  CHECK(g.inner(ad.m, ad.mbar) == Expr(1));

  NPScalars adapted = np_weyl_scalars(cs.weyl, ad);
  CHECK(adapted.psi0.is_zero());
  CHECK(adapted.psi1.is_zero());
  CHECK(adapted.psi2 == Expr(Rat(-1, 6)));
  CHECK(adapted.psi3.is_zero());
  CHECK(adapted.psi4.is_zero());
}

TEST_CASE("hypersurface homogeneous family rows classify as displayed") {
  ChartPtr chart = make_chart("PT", {"t", "u", "x", "y"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr x = Expr::atom(chart->coordinate(2));

  auto covector = [&](int i) {
    Tensor c = zero_covector(hol);
    c.at({i}) = Expr(1);
    return c;
  };
  auto vector = [&](int i) {
    Tensor v = zero_vector(hol);
    v.at({i}) = Expr(1);
    return v;
  };
  Tensor dt = covector(0), du = covector(1), dx = covector(2), dy = covector(3);

  struct FamilyRow {
    Metric g;
    NullTetrad nt;
  };

  auto row = [&](const Rat& a_rat, const Expr& f) {
    Expr av(a_rat);
    Expr xa = pow_rational(x, a_rat);
    Expr xma = pow_rational(x, -a_rat);
    Tensor alpha = xa * du - (Expr(1) / ((av + 1) * x)) * dy;
    Tensor beta = dt + (av / x) * (t * dx + dy) + f * alpha;
    Expr w = (t * t + 1) / (2 * x * x);
    Metric g(-sym_product(alpha, beta) +
             w * (tensor_product(dx, dx) + tensor_product(dy, dy)));
    Expr root = sqrt_expr(t * t + 1);
    Expr im = Expr::i();
    Tensor l = vector(0);
    Tensor n = -f * vector(0) + xma * vector(1);
    Tensor m = (-av * (im + t) / root) * vector(0) +
               (im * xma / ((av + 1) * root)) * vector(1) + (x / root) * vector(2) +
               (im * x / root) * vector(3);
    return FamilyRow{std::move(g), NullTetrad{l, n, m, m.conjugate()}};
  };

  auto classify = [&](const FamilyRow& fr, const Expr* lambda) {
    CurvatureSuite cs = curvature_suite(fr.g);
    if (lambda) CHECK((cs.einstein + *lambda * fr.g.inverse_tensor()).is_zero());
    return petrov_type(np_weyl_scalars(cs.weyl, fr.nt));
  };

  {
    FamilyRow fr = row(Rat(1, 2), (Expr(13) * t * t + 17) / 32);
    CHECK(fr.g.inner(fr.nt.l, fr.nt.n) == Expr(-1));
    CHECK(fr.g.inner(fr.nt.m, fr.nt.mbar) == Expr(1));
    CHECK(fr.g.inner(fr.nt.l, fr.nt.l).is_zero());
    CHECK(fr.g.inner(fr.nt.n, fr.nt.n).is_zero());
    CHECK(fr.g.inner(fr.nt.m, fr.nt.m).is_zero());
    CHECK(fr.g.inner(fr.nt.l, fr.nt.m).is_zero());
    CHECK(fr.g.inner(fr.nt.n, fr.nt.m).is_zero());
    Expr lam(Rat(-39, 16));
    CHECK(classify(fr, &lam) == "III");
  }
  {
    FamilyRow fr = row(Rat(2), (t * t - 1) / 2);
    Expr lam(Rat(-3));
    CHECK(classify(fr, &lam) == "N");
  }
  {
    FamilyRow fr = row(Rat(0), (t * t + 1) / 4);
    Expr lam(Rat(-3, 2));
    CHECK(classify(fr, &lam) == "O");
  }
  {
    FamilyRow fr = row(Rat(-1, 3), (t * t - 1) / 9);
    Expr lam(Rat(-2, 3));
    CHECK(classify(fr, &lam) == "O");
  }
  {
    FamilyRow fr = row(Rat(0), (t.pow(4) + 4 * t * t - 1) / (2 * (t * t + 1)));
    Expr lam(Rat(-3));
    CHECK(classify(fr, &lam) == "D");
  }
  {
    FamilyRow fr = row(Rat(1), t * t);
    CHECK(classify(fr, nullptr) == "II");
  }
}

TEST_CASE("diagonal family crossing from type d to conformally flat") {
  ChartPtr chart = make_chart("PX", {"t", "x", "y", "z"});
  FramePtr hol = Frame::holonomic(chart);
  Expr t = Expr::atom(chart->coordinate(0));
  Expr x = Expr::atom(chart->coordinate(1));
  Metric g = diagonal_metric(
      hol, {Expr(1) / (x * x), Expr(-1) / (t * t), Expr(-1), Expr(-1)});

  PetrovTrace trace;
  CHECK(petrov_type_of_metric(g, &trace) == "D");
  CHECK((trace.inv_i.pow(3) - Expr(27) * trace.inv_j * trace.inv_j).is_zero());

  Expr a = Expr::atom(AtomTable::instance().parameter("a_px", true, true));
  std::map<AtomId, Expr> at_corner{{chart->coordinate(0), a}, {chart->coordinate(1), a}};
  Metric pinched(g.tensor().substitute(at_corner));
  CHECK(petrov_type_of_metric(pinched) == "O");
}
