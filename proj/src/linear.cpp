#include "grsym/linear.hpp"

#include <algorithm>
#include <map>

namespace grsym {

namespace {

struct Row {
  std::map<std::size_t, Expr> a;  // column -> coefficient
  Expr rhs;
};

bool expr_has_unknown(const Expr& e, const std::map<AtomId, std::size_t>& cols) {
  std::set<AtomId> atoms;
  e.collect_atoms(atoms);
  for (AtomId id : atoms)
    if (cols.count(id)) return true;
  return false;
}

/// Splits an affine equation into coefficient map and constant part.
Row build_row(const Expr& eq, const std::map<AtomId, std::size_t>& cols) {
  if (expr_has_unknown(Expr(eq.den()), cols))
    throw ComputeError("equation denominator contains unknowns");
  Row row;
  Expr constant;
  for (auto& t : eq.num().terms()) {
    std::size_t col = SIZE_MAX;
    Monomial rest;
    for (auto& f : t.m.factors) {
      auto it = cols.find(f.first);
      if (it == cols.end()) {
        rest.factors.push_back(f);
        continue;
      }
      if (col != SIZE_MAX || f.second > 1)
        throw ComputeError("system is not linear in the unknowns");
      col = it->second;
    }
    Expr coeff(Poly::from_terms({{t.c, rest}}));
    if (col == SIZE_MAX) {
      constant += coeff;
    } else {
      auto [it, inserted] = row.a.emplace(col, coeff);
      if (!inserted) it->second += coeff;
    }
  }
  for (auto it = row.a.begin(); it != row.a.end();) {
    if (it->second.is_zero()) {
      it = row.a.erase(it);
    } else {
      ++it;
    }
  }
  row.rhs = -constant;
  return row;
}

bool parameter_only(const Expr& e) {
  std::set<AtomId> atoms;
  e.collect_atoms(atoms);
  bool has_param = false;
  for (AtomId id : atoms) {
    const Atom& a = atom_info(id);
    if (a.coordinate_dependent) return false;
    if (a.kind != AtomKind::Parameter) return false;
    has_param = true;
  }
  return has_param;
}

/// Root of a linear univariate polynomial in a single parameter, if that is
/// the factor's shape.
bool linear_parameter_root(const Poly& p, AtomId* param, Expr* root) {
  std::set<AtomId> atoms;
  p.collect_atoms(atoms);
  if (atoms.size() != 1) return false;
  AtomId v = *atoms.begin();
  if (atom_info(v).kind != AtomKind::Parameter) return false;
  if (p.degree_of(v) != 1) return false;
  Poly a = p.coeff_of(v, 1);
  Poly b = p.coeff_of(v, 0);
  if (!a.is_constant()) return false;
  *param = v;
  *root = Expr(-(b.mul_const(GaussRat(1) / a.constant_value())));
  return true;
}

struct Eliminator {
  std::size_t ncols;
  SolveOptions opts;
  std::vector<LinearBranch> out;

  void solve(std::vector<Row> rows, std::vector<std::pair<Expr, bool>> assumptions, int depth) {
    std::map<std::size_t, Row> pivots;  // pivot column -> normalized row
    while (true) {
      // pick the next pivot: prefer constant coefficients, then
      // coordinate-dependent ones, then parameter-only ones; break ties by
      // sparsity and column order
      std::size_t best_row = SIZE_MAX, best_col = SIZE_MAX;
      int best_class = 3;
      std::size_t best_size = SIZE_MAX;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].a.empty()) continue;
        for (auto& [c, coeff] : rows[r].a) {
          int cls = coeff.is_constant() ? 0 : (coeff.depends_on_coordinates() ? 1 : 2);
          std::size_t size = rows[r].a.size();
          if (std::tie(cls, size, c, r) <
              std::tie(best_class, best_size, best_col, best_row)) {
            best_class = cls;
            best_size = size;
            best_col = c;
            best_row = r;
          }
        }
      }
      if (best_row == SIZE_MAX) break;

      Row row = std::move(rows[best_row]);
      rows.erase(rows.begin() + long(best_row));
      Expr pivot = row.a.at(best_col);

      if (best_class == 2 && opts.branch_on_parameters && depth < opts.max_branch_depth) {
        for (const Poly& f : factor_light(pivot.num())) {
          if (f.is_constant()) continue;
          Expr fe(f);
          if (!parameter_only(fe)) continue;
          AtomId param;
          Expr root;
          if (!linear_parameter_root(f, &param, &root)) {
            assumptions.emplace_back(fe, true);
            continue;
          }
          // zero branch: substitute the root and restart elimination
          std::map<AtomId, Expr> repl{{param, root}};
          std::vector<Row> zrows;
          for (auto& orig : pivots) zrows.push_back(orig.second);
          zrows.push_back(row);
          for (auto& r2 : rows) zrows.push_back(r2);
          std::vector<Row> substituted;
          for (auto& r2 : zrows) {
            Row nr;
            nr.rhs = r2.rhs.substitute(repl);
            for (auto& [c, coeff] : r2.a) {
              Expr nc = coeff.substitute(repl);
              if (!nc.is_zero()) nr.a.emplace(c, std::move(nc));
            }
            substituted.push_back(std::move(nr));
          }
          auto zassume = assumptions;
          zassume.emplace_back(fe, false);
          solve(std::move(substituted), std::move(zassume), depth + 1);
          assumptions.emplace_back(fe, true);
        }
      }

      // normalize and eliminate the column everywhere
      for (auto& [c, coeff] : row.a) {
        if (c != best_col) coeff = coeff / pivot;
      }
      row.rhs = row.rhs / pivot;
      row.a[best_col] = Expr(1);
      auto eliminate = [&](Row& r2) {
        auto it = r2.a.find(best_col);
        if (it == r2.a.end()) return;
        Expr factor = it->second;
        r2.a.erase(it);
        for (auto& [c, coeff] : row.a) {
          if (c == best_col) continue;
          Expr& cell = r2.a[c];
          cell = cell - factor * coeff;
          if (cell.is_zero()) r2.a.erase(c);
        }
        r2.rhs = r2.rhs - factor * row.rhs;
      };
      for (auto& r2 : rows) eliminate(r2);
      for (auto& [c, r2] : pivots) eliminate(r2);
      pivots.emplace(best_col, std::move(row));
    }

    LinearBranch branch;
    branch.assumptions = std::move(assumptions);
    for (auto& r : rows) {
      if (!r.a.empty()) continue;
      if (!r.rhs.is_zero()) {
        branch.consistent = false;
        break;
      }
    }
    if (branch.consistent) {
      branch.particular.assign(ncols, Expr());
      for (auto& [c, r] : pivots) branch.particular[c] = r.rhs;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (pivots.count(c)) continue;
        std::vector<Expr> v(ncols, Expr());
        v[c] = Expr(1);
        for (auto& [pc, r] : pivots) {
          auto it = r.a.find(c);
          if (it != r.a.end()) v[pc] = -it->second;
        }
        branch.basis.push_back(std::move(v));
      }
    }
    out.push_back(std::move(branch));
  }
};

}  // namespace

LinearSolution solve_linear(const std::vector<Expr>& equations,
                            const std::vector<AtomId>& unknowns, const SolveOptions& opts) {
  std::map<AtomId, std::size_t> cols;
  for (std::size_t i = 0; i < unknowns.size(); ++i) cols.emplace(unknowns[i], i);
  if (cols.size() != unknowns.size()) throw ComputeError("duplicate unknowns");

  std::vector<Row> rows;
  for (auto& eq : equations) {
    if (eq.is_zero()) continue;
    Row r = build_row(eq, cols);
    if (r.a.empty() && r.rhs.is_zero()) continue;
    rows.push_back(std::move(r));
  }

  Eliminator e;
  e.ncols = unknowns.size();
  e.opts = opts;
  e.solve(std::move(rows), {}, 0);
  LinearSolution sol;
  // generic branch is the one produced by the outermost elimination: it is
  // pushed last, so restore discovery order with the generic branch first
  std::reverse(e.out.begin(), e.out.end());
  sol.branches = std::move(e.out);
  return sol;
}

std::vector<Expr> split_by_coordinate_monomials(const Expr& residual) {
  std::map<std::string, std::pair<Monomial, Poly>> groups;
  for (auto& t : residual.num().terms()) {
    Monomial key, rest;
    for (auto& f : t.m.factors) {
      if (atom_info(f.first).coordinate_dependent) {
        key.factors.push_back(f);
      } else {
        rest.factors.push_back(f);
      }
    }
    Poly contrib = Poly::from_terms({{t.c, rest}});
    std::string k;
    for (auto& f : key.factors) k += std::to_string(f.first) + "^" + std::to_string(f.second) + ".";
    auto [it, inserted] = groups.emplace(k, std::make_pair(key, contrib));
    if (!inserted) it->second.second = it->second.second + contrib;
  }
  std::vector<Expr> out;
  for (auto& [k, g] : groups) {
    if (!g.second.is_zero()) out.push_back(Expr(g.second));
  }
  return out;
}

}  // namespace grsym
