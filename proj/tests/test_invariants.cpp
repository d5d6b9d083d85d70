#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <cstdlib>
#include <map>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "grsym/common.hpp"
#include "grsym/invariants.hpp"

using namespace grsym;

namespace {

std::vector<Tensor> lowered(const Metric& g, const std::vector<Tensor>& vectors) {
  std::vector<Tensor> out;
  for (const Tensor& v : vectors) out.push_back(g.lower(v, 0));
  return out;
}

}  // namespace

TEST_CASE("ansatz bases reduce, validate and restrict") {
  Euclidean2 w;
  AnsatzBasis dedup({Expr(1), w.x, w.x, 2 * w.x, w.x + w.y, w.y, Expr(0)});
  CHECK(dedup.size() == 3);

  AnsatzBasis open({w.x * w.x});
  CHECK_THROWS_AS(open.validate_closure(w.chart), UnsupportedError);

  AnsatzBasis trig({Expr(1), w.x, sin_of(w.x)});
  trig.restrict_to_closed(w.chart);
  CHECK(trig.size() == 2);

  AnsatzBasis pair({Expr(1), sin_of(w.x), cos_of(w.x)});
  pair.validate_closure(w.chart);
  CHECK(pair.size() == 3);

  CHECK(default_ansatz(w.g).size() == 6);
}

TEST_CASE("flat plane isometries and homothety") {
  Euclidean2 w;
  AnsatzBasis deg1({Expr(1), w.x, w.y});
  SolutionSpace kv = killing_vectors(w.g, deg1);
  CHECK(kv.dimension() == 3);

  HomothetySplit hs = homothety_vectors(w.g, deg1);
  REQUIRE(hs.homothety.has_value());
  CHECK(hs.killing.size() == 3);
  Tensor euler = zero_vector(w.hol);
  euler.at({0}) = w.x;
  euler.at({1}) = w.y;
  CHECK(get_components(*hs.homothety - euler, hs.killing).has_value());
  CHECK(check_invariant_equation(InvariantKind::Homothety, w.g, euler).is_zero());
}

TEST_CASE("goedel killing vectors match the known basis") {
  Goedel w;
  Metric g = w.metric();
  SolutionSpace kv = killing_vectors(g, w.killing_ansatz());
  CHECK(kv.dimension() == 5);
  std::vector<Tensor> known = w.killing_basis();
  CHECK(in_span(kv.basis, known));
  CHECK(in_span(known, kv.basis));
  for (const Tensor& v : known)
    CHECK(check_invariant_equation(InvariantKind::Killing, g, v).is_zero());

  CHECK(lie_bracket(known[0], known[2]) == -known[0]);
  CHECK(lie_bracket(known[0], known[3]) == Expr(2) * known[2]);
  CHECK(lie_bracket(known[2], known[3]) == -known[3]);
}

TEST_CASE("larger ansatz never loses solutions") {
  Goedel w;
  Metric g = w.metric();
  AnsatzBasis small({Expr(1), w.z, exp_expr(-w.x)});
  SolutionSpace s1 = killing_vectors(g, small);
  SolutionSpace s2 = killing_vectors(g, w.killing_ansatz());
  CHECK(s1.dimension() == 4);
  CHECK(s2.dimension() == 5);
  CHECK(in_span(s1.basis, s2.basis));
}

TEST_CASE("goedel admits no homothety") {
  Goedel w;
  AnsatzBasis ansatz({Expr(1), w.t, w.y, w.z, w.z * w.z, exp_expr(-w.x), exp_expr(-2 * w.x)});
  HomothetySplit hs = homothety_vectors(w.metric(), ansatz);
  CHECK(!hs.homothety.has_value());
  CHECK(hs.killing.size() == 5);
}

TEST_CASE("plane wave killing vectors and the paper generators") {
  PlaneWave w;
  Metric g = w.metric();
  AnsatzBasis ansatz({Expr(1), w.u, w.v, w.x, w.y, w.p, w.q});
  SolutionSpace kv = killing_vectors(g, ansatz);
  CHECK(kv.dimension() == 5);
  std::vector<Tensor> gens = w.symmetry_generators();
  CHECK(in_span(kv.basis, gens));
  CHECK(in_span(gens, kv.basis));

  // The y-translation family needs the y D_v part; Q(u) D_y alone fails.
  Tensor wrong = zero_vector(w.hol);
  wrong.at({1}) = Expr(1);
  wrong.at({3}) = w.q;
  CHECK(!check_invariant_equation(InvariantKind::Killing, g, wrong).is_zero());
  CHECK(check_invariant_equation(InvariantKind::Killing, g, gens[4]).is_zero());
}

TEST_CASE("plane wave homothety with a declared antiderivative") {
  PlaneWave w;
  Metric g = w.metric();
  AnsatzBasis ansatz({Expr(1), w.u, w.v, w.x, w.y, w.p, w.q, w.anti});
  HomothetySplit hs = homothety_vectors(g, ansatz);
  REQUIRE(hs.homothety.has_value());
  CHECK(hs.killing.size() == 5);
  Tensor display = w.homothety_field();
  CHECK(check_invariant_equation(InvariantKind::Homothety, g, display).is_zero());
  CHECK(get_components(*hs.homothety - display, hs.killing).has_value());
}

TEST_CASE("flow of the plane wave homothety scales the metric") {
  PlaneWave w;
  Metric g = w.metric();
  CoordinateMap phi = flow(w.homothety_field(), "s_h");
  const Expr s = Expr::atom(phi.parameter);
  CHECK(phi.image[0] == w.u);
  CHECK(phi.image[1] == exp_expr(2 * s) * w.v + (Expr(1) - exp_expr(2 * s)) * w.anti / 2);
  CHECK(phi.image[2] == exp_expr(s) * w.x);
  CHECK(phi.image[3] == exp_expr(s) * w.y);
  CHECK(pullback(phi, g.tensor()) == exp_expr(2 * s) * g.tensor());
}

TEST_CASE("residual group flows act on the invariant quadratic forms") {
  PlaneWave w;
  Expr f = Expr::atom(AtomTable::instance().opaque("f", Poly::atom(w.chart->coordinate(0))));
  Expr fp = Expr::atom(AtomTable::instance().opaque("f", Poly::atom(w.chart->coordinate(0)), 1));

  Tensor nor_trans = zero_vector(w.hol);
  nor_trans.at({1}) = f;
  CoordinateMap trans = flow(nor_trans, "alpha");
  const Expr al = Expr::atom(trans.parameter);
  CHECK(trans.image == std::vector<Expr>{w.u, w.v + al * f, w.x, w.y});
  CHECK(pullback(trans, w.q1()) == w.q1());
  CHECK(pullback(trans, w.q2()) == (-2 * al * w.pp * w.qp * fp) * w.q1() + w.q2());

  Tensor nor_scale = zero_vector(w.hol);
  nor_scale.at({1}) = 2 * w.v;
  nor_scale.at({2}) = w.x;
  nor_scale.at({3}) = w.y;
  CoordinateMap scale = flow(nor_scale, "beta");
  const Expr be = Expr::atom(scale.parameter);
  CHECK(scale.image ==
        std::vector<Expr>{w.u, exp_expr(2 * be) * w.v, exp_expr(be) * w.x, exp_expr(be) * w.y});
  CHECK(pullback(scale, w.q1()) == w.q1());
  CHECK(pullback(scale, w.q2()) == exp_expr(2 * be) * w.q2());

  std::map<AtomId, Expr> negate{{scale.parameter, -be}};
  std::map<AtomId, Expr> inverse;
  for (int i = 0; i < 4; ++i)
    inverse[w.chart->coordinate(i)] = scale.image[static_cast<size_t>(i)].substitute(negate);
  for (int i = 0; i < 4; ++i)
    CHECK(scale.image[static_cast<size_t>(i)].substitute(inverse) ==
          Expr::atom(w.chart->coordinate(i)));
}

TEST_CASE("non-triangular flows are reported as unsupported") {
  Euclidean2 w;
  Tensor rot = zero_vector(w.hol);
  rot.at({0}) = -w.y;
  rot.at({1}) = w.x;
  CHECK_THROWS_AS(flow(rot, "s_rot"), UnsupportedError);
}

TEST_CASE("invariant scalars of the plane wave symmetry group") {
  PlaneWave w;
  AnsatzBasis sc({Expr(1), w.u, w.u * w.u, w.v, w.x, w.y});
  SolutionSpace inv =
      invariant_fields(w.hol, w.symmetry_generators(), {}, TensorSymmetry::None, sc);
  CHECK(inv.dimension() == 3);
  std::vector<Tensor> uspan{Tensor::scalar(w.hol, Expr(1)), Tensor::scalar(w.hol, w.u),
                            Tensor::scalar(w.hol, w.u * w.u)};
  CHECK(in_span(inv.basis, uspan));
  CHECK(in_span(uspan, inv.basis));
}

TEST_CASE("invariant quadratic forms of the plane wave symmetry group") {
  PlaneWave w;
  AnsatzBasis ansatz({Expr(1), w.pp, w.qp, w.pp * w.qp});
  SolutionSpace inv = invariant_fields(w.hol, w.symmetry_generators(),
                                       {slot_down(), slot_down()}, TensorSymmetry::Symmetric,
                                       ansatz);
  CHECK(inv.dimension() == 5);
  std::vector<Tensor> gens = module_generators(inv.basis);
  CHECK(gens.size() == 2);
  CHECK(in_span({w.q1(), w.q2()}, inv.basis));
  CHECK(in_span(inv.basis, {w.q1(), w.q2()}, ComponentMode::Functions));
}

TEST_CASE("empty generator set leaves the full ansatz space invariant") {
  Euclidean2 w;
  AnsatzBasis deg1({Expr(1), w.x, w.y});
  SolutionSpace inv = invariant_fields(w.hol, {}, {slot_up()}, TensorSymmetry::None, deg1);
  CHECK(inv.dimension() == 6);
}

TEST_CASE("normalizer of the plane wave symmetry group") {
  PlaneWave w;
  std::vector<Tensor> gens = w.symmetry_generators();
  AnsatzBasis ansatz({Expr(1), w.u, w.u * w.u, w.v, w.x, w.y});
  SolutionSpace nor = infinitesimal_normalizer(gens, ansatz);
  CHECK(nor.dimension() == 3);

  Tensor scaling = zero_vector(w.hol);
  scaling.at({1}) = 2 * w.v;
  scaling.at({2}) = w.x;
  scaling.at({3}) = w.y;
  Tensor udv = zero_vector(w.hol);
  udv.at({1}) = w.u;
  Tensor u2dv = zero_vector(w.hol);
  u2dv.at({1}) = w.u * w.u;

  std::vector<Tensor> full = nor.basis;
  full.insert(full.end(), gens.begin(), gens.end());
  CHECK(get_components(scaling, full).has_value());
  CHECK(get_components(udv, full).has_value());
  CHECK(get_components(u2dv, full).has_value());
}

TEST_CASE("self-normalizing algebra has a zero complement") {
  ChartPtr line = make_chart("L1", {"w"});
  FramePtr hol = Frame::holonomic(line);
  Expr x = Expr::atom(line->coordinate(0));
  Tensor d = basis_vector(hol, 0);
  Tensor xd = zero_vector(hol);
  xd.at({0}) = x;
  SolutionSpace nor = infinitesimal_normalizer({d, xd}, AnsatzBasis({Expr(1), x}));
  CHECK(nor.dimension() == 0);
}

TEST_CASE("normalizer of a single translation on the plane") {
  Euclidean2 w;
  SolutionSpace nor = infinitesimal_normalizer({basis_vector(w.hol, 0)},
                                               AnsatzBasis({Expr(1), w.x, w.y}));
  CHECK(nor.dimension() == 4);
}

TEST_CASE("component extraction round trips and fails honestly") {
  PlaneWave w;
  std::vector<Tensor> span{w.q1(), w.q2()};
  auto c = get_components(Expr(3) * w.q1() - Expr(2) * w.q2(), span);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Expr(3));
  CHECK((*c)[1] == Expr(-2));

  CHECK(!get_components(w.u * w.q1(), span).has_value());
  auto cf = get_components(w.u * w.q1(), span, ComponentMode::Functions);
  REQUIRE(cf.has_value());
  CHECK((*cf)[0] == w.u);
  CHECK((*cf)[1].is_zero());

  Tensor offspan(w.hol, {slot_down(), slot_down()});
  offspan.at({1, 1}) = Expr(1);
  CHECK(!get_components(offspan, span).has_value());

  CHECK(get_components(Tensor(w.hol, {slot_down(), slot_down()}), {}).has_value());
  CHECK(!get_components(w.q1(), {}).has_value());
}

TEST_CASE("symmetric product bases have binomial sizes") {
  Goedel w;
  Metric g = w.metric();
  std::vector<Tensor> lk = lowered(g, w.killing_basis());
  CHECK(symmetric_products(lk, 1).size() == 5);
  CHECK(symmetric_products(lk, 2).size() == 15);
  CHECK(symmetric_products(lk, 3).size() == 35);
}

TEST_CASE("goedel rank one killing tensors are the lowered killing vectors") {
  Goedel w;
  Metric g = w.metric();
  SolutionSpace kt = killing_tensors(g, 1, w.tensor_ansatz(1));
  CHECK(kt.dimension() == 5);
  std::vector<Tensor> lk = lowered(g, w.killing_basis());
  CHECK(in_span(kt.basis, lk));
  CHECK(in_span(lk, kt.basis));
}

TEST_CASE("goedel rank two killing tensors are reducible") {
  Goedel w;
  Metric g = w.metric();
  SolutionSpace kt = killing_tensors(g, 2, w.tensor_ansatz(2));
  CHECK(kt.dimension() == 15);
  std::vector<Tensor> prods = symmetric_products(lowered(g, w.killing_basis()), 2);
  CHECK(prods.size() == 15);
  CHECK(in_span(prods, kt.basis));
  CHECK(in_span(kt.basis, prods));
  CHECK(get_components(g.tensor(), kt.basis).has_value());
}

TEST_CASE("goedel rank three killing tensors are reducible") {
  if (!std::getenv("GRSYM_STRETCH")) return;
  Goedel w;
  Metric g = w.metric();
  SolutionSpace kt = killing_tensors(g, 3, w.tensor_ansatz(3));
  CHECK(kt.dimension() == 35);
  std::vector<Tensor> prods = symmetric_products(lowered(g, w.killing_basis()), 3);
  CHECK(in_span(kt.basis, prods));
}

TEST_CASE("kerr killing-yano tensor and its square") {
  Kerr w;
  Metric g = w.metric();
  SolutionSpace ky = killing_yano(g, 2, w.yano_ansatz());
  CHECK(ky.dimension() == 1);
  Tensor display = w.killing_yano_display();
  CHECK(get_components(display, ky.basis).has_value());
  CHECK(check_invariant_equation(InvariantKind::KillingYano, g, display).is_zero());

  Tensor kt = tensor_product(g.raise(display, 1), display).contract(1, 2);
  CHECK(kt == kt.permute({1, 0}));
  CHECK(check_invariant_equation(InvariantKind::Killing, g, kt).is_zero());

  std::vector<Tensor> s2 = symmetric_products(dual_basis(w.null_tetrad_vectors()), 2);
  auto comp = get_components(kt, s2, ComponentMode::Functions);
  REQUIRE(comp.has_value());
  Expr c_kl = -2 * w.a * w.a * cos_of(w.th) * cos_of(w.th);
  Expr c_mm = -2 * w.r * w.r;
  for (size_t k = 0; k < comp->size(); ++k) {
    if (k == 1) {
      CHECK((*comp)[k] == c_kl);
    } else if (k == 8) {
      CHECK((*comp)[k] == c_mm);
    } else {
      CHECK((*comp)[k].is_zero());
    }
  }
}

TEST_CASE("kundt metric admits no killing vectors") {
  Kundt w;
  Metric g = w.metric();
  SolutionSpace kv = killing_vectors(g, default_ansatz(g));
  CHECK(kv.dimension() == 0);
}

TEST_CASE("isometry dimension bound at a point") {
  Goedel gw;
  Expr x0 = Expr::atom(AtomTable::instance().parameter("x0", true, false));
  std::map<AtomId, Expr> pt{{gw.chart->coordinate(0), Expr(0)},
                            {gw.chart->coordinate(1), x0},
                            {gw.chart->coordinate(2), Expr(0)},
                            {gw.chart->coordinate(3), Expr(0)}};
  IsometryPointData iso = isometry_dimension_at_point(gw.metric(), pt);
  CHECK(iso.dimension == 5);
  CHECK(iso.stabilized);

  const auto& c = iso.brackets;
  bool nonabelian = false;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        CHECK(c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] ==
              -c[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(k)]);
        if (!c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)].is_zero())
          nonabelian = true;
      }
  CHECK(nonabelian);
  // Jacobi identity for the recovered structure constants.
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          Expr s(0);
          for (int mth = 0; mth < 5; ++mth) {
            auto at = [&](int p, int q, int rr) {
              return c[static_cast<size_t>(p)][static_cast<size_t>(q)][static_cast<size_t>(rr)];
            };
            s += at(i, j, mth) * at(mth, k, l);
            s += at(j, k, mth) * at(mth, i, l);
            s += at(k, i, mth) * at(mth, j, l);
          }
          CHECK(s.is_zero());
        }
}

TEST_CASE("isometry dimension of flat space and the plane") {
  Minkowski4 mk;
  std::map<AtomId, Expr> origin;
  for (AtomId cc : mk.chart->coordinates()) origin[cc] = Expr(0);
  IsometryPointData iso = isometry_dimension_at_point(mk.g, origin);
  CHECK(iso.dimension == 10);
  CHECK(iso.stabilized);

  Euclidean2 e2;
  std::map<AtomId, Expr> origin2;
  for (AtomId cc : e2.chart->coordinates()) origin2[cc] = Expr(0);
  IsometryPointData iso2 = isometry_dimension_at_point(e2.g, origin2);
  CHECK(iso2.dimension == 3);
}

TEST_CASE("kundt metric is fully rigid at a generic point") {
  Kundt w;
  std::map<AtomId, Expr> pt{
      {w.chart->coordinate(0), Expr::atom(AtomTable::instance().parameter("u0", true, false))},
      {w.chart->coordinate(1), Expr::atom(AtomTable::instance().parameter("v0", true, false))},
      {w.chart->coordinate(2), Expr::atom(AtomTable::instance().parameter("z0", true, true))},
      {w.chart->coordinate(3), Expr::atom(AtomTable::instance().parameter("zb0", true, true))}};
  IsometryPointData iso = isometry_dimension_at_point(w.metric(), pt);
  CHECK(iso.dimension == 0);
  CHECK(iso.stabilized);
}
