#include <doctest.h>

#include <random>
#include <vector>

#include "grsym/linear.hpp"
#include "grsym/parser.hpp"

using namespace grsym;

namespace {

struct LinFixture {
  std::vector<AtomId> unknowns;
  AtomId x, t, a;

  LinFixture() {
    auto& tab = AtomTable::instance();
    for (int i = 0; i < 6; ++i)
      unknowns.push_back(tab.parameter("lin_u" + std::to_string(i)));
    x = tab.coordinate("LIN", "x");
    t = tab.coordinate("LIN", "t");
    a = tab.parameter("lin_a");
  }
};

LinFixture& lf() {
  static LinFixture f;
  return f;
}

/// Plain rational row reduction for the oracle comparison.
struct RatSystem {
  int m, n;
  std::vector<std::vector<Rat>> A;  // m x (n+1), last column is the rhs
  bool consistent = true;
  int rank = 0;

  void reduce() {
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
      int p = -1;
      for (int r = row; r < m; ++r)
        if (A[r][col] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(A[row], A[p]);
      Rat inv = 1 / A[row][col];
      for (int c = col; c <= n; ++c) A[row][c] *= inv;
      for (int r = 0; r < m; ++r) {
        if (r == row || A[r][col] == 0) continue;
        Rat f = A[r][col];
        for (int c = col; c <= n; ++c) A[r][c] -= f * A[row][c];
      }
      ++row;
    }
    rank = row;
    for (int r = rank; r < m; ++r)
      if (A[r][n] != 0) consistent = false;
  }
};

Rat expr_rat(const Expr& e) {
  GaussRat c = e.constant_value();
  REQUIRE(c.im == 0);
  return c.re;
}

int rational_rank(std::vector<std::vector<Rat>> rows) {
  int m = int(rows.size());
  if (m == 0) return 0;
  int n = int(rows[0].size());
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int p = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[rank], rows[p]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rat f = rows[r][col] / rows[rank][col];
      for (int c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("random linear systems match a plain rational elimination") {
  std::mt19937 rng(424242);
  auto pick = [&](int lo, int hi) { return lo + int(rng() % unsigned(hi - lo + 1)); };

  for (int trial = 0; trial < 1000; ++trial) {
    int n = pick(1, 6);
    int m = pick(1, 8);
    bool homogeneous = pick(0, 1) == 0;

    RatSystem sys;
    sys.m = m;
    sys.n = n;
    sys.A.assign(m, std::vector<Rat>(n + 1, Rat(0)));
    std::vector<Expr> eqs;
    for (int r = 0; r < m; ++r) {
      Expr eq;
      for (int c = 0; c < n; ++c) {
        if (pick(0, 2) == 0) continue;  // keep some sparsity
        int v = pick(-3, 3);
        if (v == 0) continue;
        sys.A[r][c] = v;
        eq += Expr(long(v)) * Expr::atom(lf().unknowns[c]);
      }
      if (!homogeneous) {
        int v = pick(-3, 3);
        sys.A[r][n] = v;
        eq -= Expr(long(v));
      }
      eqs.push_back(eq);
    }
    sys.reduce();

    std::vector<AtomId> unk(lf().unknowns.begin(), lf().unknowns.begin() + n);
    LinearSolution sol = solve_linear(eqs, unk);
    REQUIRE(sol.branches.size() == 1);
    const LinearBranch& b = sol.generic();

    REQUIRE(b.consistent == sys.consistent);
    if (!b.consistent) continue;

    CHECK(int(b.basis.size()) == n - sys.rank);

    // every reported solution must satisfy every original equation
    auto residual_zero = [&](const std::vector<Expr>& v, bool with_rhs) {
      for (int r = 0; r < m; ++r) {
        Rat acc(0);
        for (int c = 0; c < n; ++c) acc += sys.A[r][c] * expr_rat(v[c]);
        if (with_rhs) acc -= sys.A[r][n];
        if (acc != 0) return false;
      }
      return true;
    };
    CHECK(residual_zero(b.particular, true));
    std::vector<std::vector<Rat>> basis_rows;
    for (auto& v : b.basis) {
      CHECK(residual_zero(v, false));
      std::vector<Rat> row;
      for (auto& e : v) row.push_back(expr_rat(e));
      basis_rows.push_back(std::move(row));
    }
    CHECK(rational_rank(basis_rows) == int(b.basis.size()));
  }
}

TEST_CASE("parameter pivots branch") {
  Expr a = Expr::atom(lf().a);
  Expr u0 = Expr::atom(lf().unknowns[0]);
  LinearSolution sol = solve_linear({(a - 2) * u0}, {lf().unknowns[0]});

  REQUIRE(sol.branches.size() == 2);
  const LinearBranch& generic = sol.generic();
  REQUIRE(generic.assumptions.size() == 1);
  CHECK(generic.assumptions[0].second == true);
  CHECK(generic.basis.empty());  // a != 2 pins the unknown to zero

  const LinearBranch& special = sol.branches[1];
  REQUIRE(special.assumptions.size() == 1);
  CHECK(special.assumptions[0].second == false);
  CHECK(special.basis.size() == 1);
  CHECK(special.basis[0][0].is_one());
}

TEST_CASE("function coefficients do not branch") {
  Expr x = Expr::atom(lf().x);
  Expr u0 = Expr::atom(lf().unknowns[0]);
  Expr u1 = Expr::atom(lf().unknowns[1]);

  LinearSolution sol = solve_linear({x * u0 + u1}, {lf().unknowns[0], lf().unknowns[1]});
  REQUIRE(sol.branches.size() == 1);
  const LinearBranch& b = sol.generic();
  REQUIRE(b.basis.size() == 1);
  Expr r = x * b.basis[0][0] + b.basis[0][1];
  CHECK(r.is_zero());
}

TEST_CASE("splitting a residual by coordinate monomials") {
  auto& tab = AtomTable::instance();
  Expr x = Expr::atom(lf().x);
  Expr t = Expr::atom(lf().t);
  Expr c1 = Expr::atom(tab.parameter("split_c1"));
  Expr c2 = Expr::atom(tab.parameter("split_c2"));
  Expr c3 = Expr::atom(tab.parameter("split_c3"));

  Expr residual = (c1 + 2 * c2) * x + (c2 - c3) * sin_expr(t) + c3;
  std::vector<Expr> parts = split_by_coordinate_monomials(residual);
  REQUIRE(parts.size() == 3);
  for (auto& p : parts) {
    std::set<AtomId> atoms;
    p.collect_atoms(atoms);
    for (AtomId id : atoms) CHECK(atom_info(id).kind == AtomKind::Parameter);
  }

  // a residual with no unknown-independent solution keeps all three conditions
  LinearSolution sol = solve_linear(parts, {tab.parameter("split_c1"), tab.parameter("split_c2"),
                                            tab.parameter("split_c3")});
  CHECK(sol.generic().basis.empty());
}

TEST_CASE("nonlinear input is rejected") {
  Expr u0 = Expr::atom(lf().unknowns[0]);
  CHECK_THROWS_AS(solve_linear({u0 * u0 - 1}, {lf().unknowns[0]}), ComputeError);
}
