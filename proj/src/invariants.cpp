#include "grsym/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "grsym/linear.hpp"

namespace grsym {

namespace {

std::vector<AtomId> fresh_unknowns(std::size_t count, const std::string& tag) {
  static int serial = 0;
  ++serial;
  std::vector<AtomId> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(AtomTable::instance().parameter(
        "_" + tag + std::to_string(serial) + "_" + std::to_string(k), true, false));
  }
  return out;
}

/// Atom set of e including atoms nested inside transcendental/opaque args.
std::set<AtomId> transitive_atoms(const Expr& e) {
  std::set<AtomId> s;
  e.collect_atoms(s);
  std::vector<AtomId> stack(s.begin(), s.end());
  while (!stack.empty()) {
    AtomId id = stack.back();
    stack.pop_back();
    const Atom& a = atom_info(id);
    if (a.kind == AtomKind::Transcendental || a.kind == AtomKind::Opaque) {
      std::set<AtomId> inner;
      a.arg.collect_atoms(inner);
      for (AtomId x : inner)
        if (s.insert(x).second) stack.push_back(x);
    }
  }
  return s;
}

bool depends_on(const Expr& e, AtomId id) { return transitive_atoms(e).count(id) > 0; }

bool contains_opaque(const Expr& e) {
  for (AtomId id : transitive_atoms(e))
    if (atom_info(id).kind == AtomKind::Opaque) return true;
  return false;
}

std::string monomial_key(const Monomial& m) {
  std::string k;
  for (const auto& f : m.factors) k += std::to_string(f.first) + "^" + std::to_string(f.second) + ".";
  return k;
}

using FunctionVector = std::map<std::string, Expr>;

/// Row-reduction span of scalar functions, compared over a shared denominator
/// so that members become honest coordinate-monomial vectors.
class FunctionSpan {
 public:
  explicit FunctionSpan(const std::vector<Expr>& context) {
    std::vector<Poly> dens;
    for (const Expr& f : context) {
      const Poly d = f.den();
      bool known = false;
      for (const Poly& seen : dens)
        if (seen == d) {
          known = true;
          break;
        }
      if (!known) {
        dens.push_back(d);
        den_product_ = den_product_ * Expr(d);
      }
    }
  }

  FunctionVector vectorize(const Expr& f) const {
    Expr scaled = f * den_product_;
    if (Expr(scaled.den()) != Expr(1))
      throw ComputeError("scalar function outside the prepared denominator set");
    FunctionVector v;
    for (const auto& t : scaled.num().terms()) {
      Monomial key, rest;
      for (const auto& fac : t.m.factors) {
        if (atom_info(fac.first).coordinate_dependent) {
          key.factors.push_back(fac);
        } else {
          rest.factors.push_back(fac);
        }
      }
      Expr coeff(Poly::from_terms({{t.c, rest}}));
      auto [it, inserted] = v.emplace(monomial_key(key), coeff);
      if (!inserted) it->second += coeff;
    }
    for (auto it = v.begin(); it != v.end();) {
      if (it->second.is_zero()) {
        it = v.erase(it);
      } else {
        ++it;
      }
    }
    return v;
  }

  void reduce(FunctionVector& v) const {
    while (!v.empty()) {
      auto lead = v.begin();
      auto row = rows_.find(lead->first);
      if (row == rows_.end()) return;
      Expr factor = lead->second;
      v.erase(lead);
      for (const auto& [key, coeff] : row->second) {
        if (key == row->first) continue;
        Expr& cell = v[key];
        cell = cell - factor * coeff;
        if (cell.is_zero()) v.erase(key);
      }
    }
  }

  bool contains(const Expr& f) const {
    FunctionVector v = vectorize(f);
    reduce(v);
    return v.empty();
  }

  bool add(const Expr& f) {
    FunctionVector v = vectorize(f);
    reduce(v);
    if (v.empty()) return false;
    const Expr pivot = v.begin()->second;
    for (auto& [key, coeff] : v) coeff = coeff / pivot;
    rows_.emplace(v.begin()->first, std::move(v));
    return true;
  }

 private:
  Expr den_product_{1};
  std::map<std::string, FunctionVector> rows_;  // leading monomial -> row
};

/// (member index, coordinate, derivative) triples whose derivative leaves the
/// span; members containing opaque atoms are exempt.
std::vector<std::tuple<std::size_t, AtomId, Expr>> closure_failures(
    const std::vector<Expr>& functions, const ChartPtr& chart) {
  std::vector<std::tuple<std::size_t, AtomId, Expr>> queries;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (contains_opaque(functions[i])) continue;
    for (AtomId c : chart->coordinates()) {
      Expr d = functions[i].derivative(c);
      if (!d.is_zero()) queries.emplace_back(i, c, d);
    }
  }
  std::vector<Expr> context = functions;
  for (const auto& q : queries) context.push_back(std::get<2>(q));
  FunctionSpan span(context);
  for (const Expr& f : functions) span.add(f);
  std::vector<std::tuple<std::size_t, AtomId, Expr>> failures;
  for (const auto& q : queries) {
    if (!span.contains(std::get<2>(q))) failures.push_back(q);
  }
  return failures;
}

/// Dense unknown tensor whose components are ansatz combinations with fresh
/// constant unknowns, with an index symmetry imposed across all slots.
struct UnknownTensor {
  Tensor t;
  std::vector<AtomId> unknowns;
};

UnknownTensor make_unknown(const FramePtr& frame, const std::vector<Slot>& slots,
                           TensorSymmetry symmetry, const AnsatzBasis& ansatz,
                           const std::string& tag) {
  if (ansatz.empty()) throw ComputeError("empty ansatz");
  Tensor t(frame, slots);
  const auto dims = t.dims();

  std::map<std::vector<int>, std::size_t> rep_of;
  std::vector<std::vector<int>> order;
  std::vector<int> idx(slots.size(), 0);
  do {
    std::vector<int> canon = idx;
    if (symmetry != TensorSymmetry::None) std::sort(canon.begin(), canon.end());
    if (symmetry == TensorSymmetry::Antisymmetric &&
        std::adjacent_find(canon.begin(), canon.end()) != canon.end())
      continue;
    if (rep_of.emplace(canon, order.size()).second) order.push_back(canon);
  } while (next_multi_index(idx, dims));

  const std::size_t na = ansatz.size();
  UnknownTensor out{std::move(t), fresh_unknowns(order.size() * na, tag)};
  std::vector<Expr> forms(order.size(), Expr(0));
  for (std::size_t r = 0; r < order.size(); ++r) {
    Expr s(0);
    for (std::size_t j = 0; j < na; ++j)
      s += Expr::atom(out.unknowns[r * na + j]) * ansatz.functions()[j];
    forms[r] = s;
  }

  std::fill(idx.begin(), idx.end(), 0);
  do {
    std::vector<int> canon = idx;
    int sign = 1;
    if (symmetry != TensorSymmetry::None) {
      for (std::size_t i = 0; i + 1 < canon.size(); ++i)
        for (std::size_t j = i + 1; j < canon.size(); ++j)
          if (canon[i] > canon[j]) {
            std::swap(canon[i], canon[j]);
            sign = -sign;
          }
    }
    if (symmetry == TensorSymmetry::Antisymmetric) {
      if (std::adjacent_find(canon.begin(), canon.end()) != canon.end()) continue;
    } else {
      sign = 1;
    }
    const Expr& form = forms[rep_of.at(canon)];
    out.t.at(idx) = sign == 1 ? form : -form;
  } while (next_multi_index(idx, dims));
  return out;
}

void append_split(const Tensor& residual, std::vector<Expr>* eqs, std::set<std::string>* seen) {
  for (std::size_t f = 0; f < residual.size(); ++f) {
    if (residual[f].is_zero()) continue;
    for (Expr& e : split_by_coordinate_monomials(residual[f])) {
      if (seen->insert(e.key()).second) eqs->push_back(std::move(e));
    }
  }
}

/// Homogeneous nullspace basis in the generic branch.
std::vector<std::vector<Expr>> nullspace(const std::vector<Expr>& eqs,
                                         const std::vector<AtomId>& unknowns) {
  SolveOptions opts;
  opts.branch_on_parameters = false;
  const LinearBranch b = solve_linear(eqs, unknowns, opts).generic();
  if (!b.consistent) throw ComputeError("homogeneous linear system reported inconsistent");
  for (const Expr& p : b.particular)
    if (!p.is_zero()) throw ComputeError("homogeneous linear system returned an affine part");
  return b.basis;
}

Tensor instantiate(const UnknownTensor& unk, const std::vector<Expr>& values) {
  std::map<AtomId, Expr> repl;
  for (std::size_t k = 0; k < unk.unknowns.size(); ++k) repl[unk.unknowns[k]] = values[k];
  return unk.t.substitute(repl);
}

std::vector<int> iota_slots(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// nabla_(a Y_b)c... for an antisymmetric candidate.
Tensor yano_residual(const Tensor& y, const Connection& conn) {
  Tensor d = covariant_derivative(y, conn);
  std::vector<int> perm(static_cast<std::size_t>(d.rank()));
  perm[0] = d.rank() - 1;
  for (int k = 1; k < d.rank(); ++k) perm[static_cast<std::size_t>(k)] = k - 1;
  return d.permute(perm).symmetrize({0, 1});
}

void require_vector_fields(const std::vector<Tensor>& fields, const char* who) {
  for (const Tensor& f : fields) {
    if (f.slots() != std::vector<Slot>{slot_up()})
      throw ComputeError(std::string(who) + " needs vector fields");
    if (f.frame()->chart() != fields.front().frame()->chart())
      throw ComputeError(std::string(who) + " needs fields on a single chart");
  }
}

/// Coordinates of t in the componentwise ansatz expansion, if they exist.
std::optional<std::vector<Expr>> ansatz_coordinates(const Tensor& t, const AnsatzBasis& ansatz) {
  UnknownTensor unk = make_unknown(t.frame(), t.slots(), TensorSymmetry::None, ansatz, "ac");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  append_split(unk.t - t, &eqs, &seen);
  SolveOptions opts;
  opts.branch_on_parameters = false;
  const LinearBranch b = solve_linear(eqs, unk.unknowns, opts).generic();
  if (!b.consistent) return std::nullopt;
  if (instantiate(unk, b.particular) != t) return std::nullopt;
  return b.particular;
}

/// Echelon reducer over dense coordinate vectors of Exprs.
struct VectorReducer {
  std::vector<std::vector<Expr>> rows;
  std::vector<std::size_t> leads;

  void reduce(std::vector<Expr>& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Expr& c = v[leads[r]];
      if (c.is_zero()) continue;
      Expr factor = c;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k] - factor * rows[r][k];
    }
  }

  bool add(std::vector<Expr> v) {
    reduce(v);
    std::size_t lead = v.size();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) {
        lead = k;
        break;
      }
    if (lead == v.size()) return false;
    const Expr pivot = v[lead];
    for (auto& c : v) c = c / pivot;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Expr f = rows[r][lead];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k) rows[r][k] = rows[r][k] - f * v[k];
    }
    rows.push_back(std::move(v));
    leads.push_back(lead);
    return true;
  }
};

Expr coordinate_expr(const ChartPtr& chart, int i) { return Expr::atom(chart->coordinate(i)); }

/// Antiderivative in the parameter s of a polynomial-exponential expression,
/// taken as a definite integral from 0 to s.
Expr integrate_in_parameter(const Expr& e, AtomId s) {
  if (depends_on(Expr(e.den()), s))
    throw UnsupportedError("flow integrand has the parameter in a denominator");
  Expr total(0);
  const Expr sx = Expr::atom(s);
  for (const auto& t : e.num().terms()) {
    long spow = 0;
    Expr rest = Expr(GaussRat(t.c)) / Expr(e.den());
    Expr exps(1);
    Expr gamma(0);
    for (const auto& [aid, pw] : t.m.factors) {
      if (aid == s) {
        spow = static_cast<long>(pw);
        continue;
      }
      const Atom a = atom_info(aid);
      Expr factor = Expr::atom(aid).pow(static_cast<long>(pw));
      if (!depends_on(factor, s)) {
        rest *= factor;
        continue;
      }
      if (a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Exp) {
        Expr darg = poly_derivative(a.arg, s);
        if (depends_on(darg, s))
          throw UnsupportedError("flow integrand has an exponential nonlinear in the parameter");
        gamma += Expr(static_cast<long>(pw)) * darg;
        exps *= factor;
        continue;
      }
      throw UnsupportedError("flow integrand is outside the polynomial-exponential fragment: " +
                             factor.to_string());
    }
    Expr anti;
    if (gamma.is_zero()) {
      anti = sx.pow(spow + 1) / Expr(spow + 1);
    } else {
      Expr p(0);
      Expr rising(1);  // spow! / (spow - m)!
      for (long m = 0; m <= spow; ++m) {
        Expr coeff = rising / gamma.pow(m + 1);
        if (m % 2 == 1) coeff = -coeff;
        p += coeff * sx.pow(spow - m);
        rising *= Expr(spow - m);
      }
      anti = exps * p;
    }
    Expr f = rest * anti;
    total += f - f.substitute({{s, Expr(0)}});
  }
  return total;
}

}  // namespace

AnsatzBasis::AnsatzBasis(std::vector<Expr> functions) {
  std::vector<Expr> nonzero;
  for (Expr& f : functions)
    if (!f.is_zero()) nonzero.push_back(std::move(f));
  FunctionSpan span(nonzero);
  for (Expr& f : nonzero)
    if (span.add(f)) functions_.push_back(std::move(f));
}

void AnsatzBasis::validate_closure(const ChartPtr& chart) const {
  auto failures = closure_failures(functions_, chart);
  if (failures.empty()) return;
  std::string msg = "ansatz is not closed under coordinate derivatives; missing:";
  for (const auto& [i, coord, d] : failures) {
    msg += "\n  d/d" + atom_info(coord).name + " (" + functions_[i].to_string() +
           ") = " + d.to_string();
  }
  throw UnsupportedError(msg);
}

void AnsatzBasis::restrict_to_closed(const ChartPtr& chart) {
  while (true) {
    auto failures = closure_failures(functions_, chart);
    if (failures.empty()) return;
    std::set<std::size_t> drop;
    for (const auto& f : failures) drop.insert(std::get<0>(f));
    std::vector<Expr> kept;
    for (std::size_t i = 0; i < functions_.size(); ++i)
      if (!drop.count(i)) kept.push_back(functions_[i]);
    functions_ = std::move(kept);
  }
}

AnsatzBasis default_ansatz(const Metric& g) {
  const ChartPtr& chart = g.frame()->chart();
  std::set<AtomId> atoms;
  g.tensor().collect_atoms(atoms);
  g.inverse_tensor().collect_atoms(atoms);

  std::vector<Expr> factors{Expr(1)};
  for (AtomId id : atoms) {
    const Atom& a = atom_info(id);
    if (a.kind != AtomKind::Transcendental || !a.coordinate_dependent) continue;
    if (a.tkind != TranscKind::Exp && a.tkind != TranscKind::Sin && a.tkind != TranscKind::Cos)
      continue;
    const Expr e = Expr::atom(id);
    for (long k : {-2L, -1L, 1L, 2L})
      factors.push_back(k > 0 ? e.pow(k) : Expr(1) / e.pow(-k));
  }

  std::vector<Expr> monomials{Expr(1)};
  const int n = chart->dimension();
  for (int i = 0; i < n; ++i) monomials.push_back(coordinate_expr(chart, i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      monomials.push_back(coordinate_expr(chart, i) * coordinate_expr(chart, j));

  std::vector<Expr> pool;
  for (const Expr& m : monomials)
    for (const Expr& f : factors) pool.push_back(m * f);

  AnsatzBasis basis(std::move(pool));
  basis.restrict_to_closed(chart);
  return basis;
}

SolutionSpace killing_vectors(const Metric& g, const AnsatzBasis& ansatz) {
  const ChartPtr& chart = g.frame()->chart();
  ansatz.validate_closure(chart);
  UnknownTensor unk =
      make_unknown(Frame::holonomic(chart), {slot_up()}, TensorSymmetry::None, ansatz, "kv");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  append_split(lie_derivative(unk.t, g.tensor()), &eqs, &seen);
  SolutionSpace out;
  for (const auto& w : nullspace(eqs, unk.unknowns)) out.basis.push_back(instantiate(unk, w));
  for (const Tensor& v : out.basis)
    if (!lie_derivative(v, g.tensor()).is_zero())
      throw ComputeError("killing solver produced a field with nonzero residual");
  return out;
}

HomothetySplit homothety_vectors(const Metric& g, const AnsatzBasis& ansatz) {
  const ChartPtr& chart = g.frame()->chart();
  ansatz.validate_closure(chart);
  UnknownTensor unk =
      make_unknown(Frame::holonomic(chart), {slot_up()}, TensorSymmetry::None, ansatz, "hv");
  std::vector<AtomId> all = unk.unknowns;
  all.push_back(fresh_unknowns(1, "hvk").front());
  const Expr kappa = Expr::atom(all.back());

  std::vector<Expr> eqs;
  std::set<std::string> seen;
  append_split(lie_derivative(unk.t, g.tensor()) - kappa * g.tensor(), &eqs, &seen);
  std::vector<std::vector<Expr>> basis = nullspace(eqs, all);

  HomothetySplit out;
  std::size_t pivot = basis.size();
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!basis[k].back().is_zero()) {
      pivot = k;
      break;
    }
  if (pivot != basis.size()) {
    const Expr scale = Expr(2) / basis[pivot].back();
    for (Expr& c : basis[pivot]) c = scale * c;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == pivot) continue;
      const Expr f = basis[k].back() / Expr(2);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < basis[k].size(); ++j)
        basis[k][j] = basis[k][j] - f * basis[pivot][j];
    }
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    basis[k].pop_back();
    Tensor field = instantiate(unk, basis[k]);
    if (k == pivot) {
      out.homothety = field;
    } else {
      out.killing.push_back(field);
    }
  }

  if (out.homothety &&
      !(lie_derivative(*out.homothety, g.tensor()) - Expr(2) * g.tensor()).is_zero())
    throw ComputeError("homothety solver produced a field with wrong scaling");
  for (const Tensor& v : out.killing)
    if (!lie_derivative(v, g.tensor()).is_zero())
      throw ComputeError("homothety solver produced a non-Killing remainder");
  return out;
}

SolutionSpace killing_tensors(const Metric& g, int rank, const AnsatzBasis& ansatz) {
  if (rank < 1) throw ComputeError("killing tensor rank must be positive");
  ansatz.validate_closure(g.frame()->chart());
  const Connection conn = levi_civita(g);
  UnknownTensor unk =
      make_unknown(g.frame(), std::vector<Slot>(static_cast<std::size_t>(rank), slot_down()),
                   TensorSymmetry::Symmetric, ansatz, "kt");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  append_split(covariant_derivative(unk.t, conn).symmetrize(iota_slots(rank + 1)), &eqs, &seen);
  SolutionSpace out;
  for (const auto& w : nullspace(eqs, unk.unknowns)) out.basis.push_back(instantiate(unk, w));
  for (const Tensor& k : out.basis)
    if (!covariant_derivative(k, conn).symmetrize(iota_slots(rank + 1)).is_zero())
      throw ComputeError("killing tensor solver produced a field with nonzero residual");
  return out;
}

SolutionSpace killing_yano(const Metric& g, int rank, const AnsatzBasis& ansatz) {
  if (rank < 1) throw ComputeError("killing-yano rank must be positive");
  ansatz.validate_closure(g.frame()->chart());
  const Connection conn = levi_civita(g);
  UnknownTensor unk =
      make_unknown(g.frame(), std::vector<Slot>(static_cast<std::size_t>(rank), slot_down()),
                   TensorSymmetry::Antisymmetric, ansatz, "ky");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  append_split(yano_residual(unk.t, conn), &eqs, &seen);
  SolutionSpace out;
  for (const auto& w : nullspace(eqs, unk.unknowns)) out.basis.push_back(instantiate(unk, w));
  for (const Tensor& y : out.basis)
    if (!yano_residual(y, conn).is_zero())
      throw ComputeError("killing-yano solver produced a field with nonzero residual");
  return out;
}

Tensor check_invariant_equation(InvariantKind kind, const Metric& g, const Tensor& candidate) {
  const std::vector<Slot> vec{slot_up()};
  if (kind == InvariantKind::Homothety) {
    if (candidate.slots() != vec)
      throw ComputeError("homothety candidate must be a vector field");
    return lie_derivative(candidate, g.tensor()) - Expr(2) * g.tensor();
  }
  if (kind == InvariantKind::Killing && candidate.slots() == vec)
    return lie_derivative(candidate, g.tensor());
  for (const Slot& s : candidate.slots())
    if (s != slot_down())
      throw ComputeError("candidate must be covariant");
  const auto all = iota_slots(candidate.rank());
  if (kind == InvariantKind::Killing) {
    if (candidate != candidate.symmetrize(all))
      throw ComputeError("killing candidate must be symmetric");
    return covariant_derivative(candidate, levi_civita(g)).symmetrize(iota_slots(candidate.rank() + 1));
  }
  if (candidate != candidate.antisymmetrize(all))
    throw ComputeError("killing-yano candidate must be antisymmetric");
  return yano_residual(candidate, levi_civita(g));
}

std::vector<Tensor> symmetric_products(const std::vector<Tensor>& basis, int rank) {
  if (basis.empty() || rank < 1) return {};
  for (const Tensor& b : basis) {
    if (b.rank() != 1 || b.slots() != basis.front().slots() || b.frame() != basis.front().frame())
      throw ComputeError("symmetric products need rank-1 tensors on a common frame");
  }
  const int n = static_cast<int>(basis.size());
  std::vector<Tensor> out;
  std::vector<int> tuple(static_cast<std::size_t>(rank), 0);
  while (true) {
    std::vector<int> perm = tuple;
    Tensor sum(basis.front().frame(),
               std::vector<Slot>(static_cast<std::size_t>(rank), basis.front().slots()[0]));
    do {
      Tensor term = basis[static_cast<std::size_t>(perm[0])];
      for (int k = 1; k < rank; ++k)
        term = tensor_product(term, basis[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
      sum = sum + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(sum);

    int pos = rank - 1;
    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) break;
    const int v = tuple[static_cast<std::size_t>(pos)] + 1;
    for (int k = pos; k < rank; ++k) tuple[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

std::optional<std::vector<Expr>> get_components(const Tensor& target,
                                                const std::vector<Tensor>& span,
                                                ComponentMode mode) {
  for (const Tensor& s : span)
    if (s.frame() != target.frame() || s.slots() != target.slots())
      throw ComputeError("get_components needs a common frame and index signature");
  if (span.empty()) {
    if (target.is_zero()) return std::vector<Expr>{};
    return std::nullopt;
  }
  const std::vector<AtomId> u = fresh_unknowns(span.size(), "gc");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  for (std::size_t f = 0; f < target.size(); ++f) {
    Expr r = target[f];
    for (std::size_t j = 0; j < span.size(); ++j) r = r - Expr::atom(u[j]) * span[j][f];
    if (r.is_zero()) continue;
    if (mode == ComponentMode::Constants) {
      for (Expr& e : split_by_coordinate_monomials(r))
        if (seen.insert(e.key()).second) eqs.push_back(std::move(e));
    } else if (seen.insert(r.key()).second) {
      eqs.push_back(std::move(r));
    }
  }
  SolveOptions opts;
  opts.branch_on_parameters = false;
  const LinearBranch b = solve_linear(eqs, u, opts).generic();
  if (!b.consistent) return std::nullopt;
  std::vector<Expr> coeffs = b.particular;
  if (mode == ComponentMode::Constants)
    for (const Expr& c : coeffs)
      if (c.depends_on_coordinates()) return std::nullopt;
  Tensor acc(target.frame(), target.slots());
  for (std::size_t j = 0; j < span.size(); ++j) acc = acc + coeffs[j] * span[j];
  if (acc != target) return std::nullopt;
  return coeffs;
}

bool in_span(const std::vector<Tensor>& targets, const std::vector<Tensor>& span,
             ComponentMode mode) {
  for (const Tensor& t : targets)
    if (!get_components(t, span, mode)) return false;
  return true;
}

SolutionSpace invariant_fields(const FramePtr& frame, const std::vector<Tensor>& generators,
                               const std::vector<Slot>& shape, TensorSymmetry symmetry,
                               const AnsatzBasis& ansatz) {
  require_vector_fields(generators, "invariant_fields");
  ansatz.validate_closure(frame->chart());
  for (const Slot& s : shape)
    if (s.kind != SlotKind::Tangent)
      throw ComputeError("invariant_fields supports tangent tensors");
  UnknownTensor unk = make_unknown(frame, shape, symmetry, ansatz, "if");
  std::vector<Expr> eqs;
  std::set<std::string> seen;
  for (const Tensor& x : generators) append_split(lie_derivative(x, unk.t), &eqs, &seen);
  SolutionSpace out;
  for (const auto& w : nullspace(eqs, unk.unknowns)) out.basis.push_back(instantiate(unk, w));
  for (const Tensor& t : out.basis)
    for (const Tensor& x : generators)
      if (!lie_derivative(x, t).is_zero())
        throw ComputeError("invariant field solver produced a non-invariant field");
  return out;
}

std::vector<Tensor> module_generators(const std::vector<Tensor>& fields) {
  std::vector<Tensor> gens;
  for (const Tensor& f : fields) {
    if (f.is_zero()) continue;
    if (gens.empty() || !get_components(f, gens, ComponentMode::Functions)) gens.push_back(f);
  }
  return gens;
}

SolutionSpace infinitesimal_normalizer(const std::vector<Tensor>& generators,
                                       const AnsatzBasis& ansatz) {
  if (generators.empty()) throw ComputeError("normalizer needs at least one generator");
  require_vector_fields(generators, "infinitesimal_normalizer");
  const ChartPtr& chart = generators.front().frame()->chart();
  ansatz.validate_closure(chart);
  const FramePtr hol = Frame::holonomic(chart);
  std::vector<Tensor> gens;
  for (const Tensor& x : generators) gens.push_back(convert_frame(x, hol));

  UnknownTensor unk = make_unknown(hol, {slot_up()}, TensorSymmetry::None, ansatz, "nz");
  const std::size_t m = gens.size();
  const std::vector<AtomId> mu = fresh_unknowns(m * m, "nzmu");
  std::vector<AtomId> all = unk.unknowns;
  all.insert(all.end(), mu.begin(), mu.end());

  std::vector<Expr> eqs;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < m; ++k) {
    Tensor resid = lie_bracket(unk.t, gens[k]);
    for (std::size_t i = 0; i < m; ++i) resid = resid - Expr::atom(mu[k * m + i]) * gens[i];
    append_split(resid, &eqs, &seen);
  }

  VectorReducer reducer;
  for (const Tensor& x : gens) {
    auto coords = ansatz_coordinates(x, ansatz);
    if (coords) reducer.add(*coords);
  }

  SolutionSpace out;
  const std::size_t zc = unk.unknowns.size();
  for (const auto& w : nullspace(eqs, all)) {
    std::vector<Expr> v(w.begin(), w.begin() + static_cast<long>(zc));
    reducer.reduce(v);
    bool zero = true;
    for (const Expr& c : v)
      if (!c.is_zero()) {
        zero = false;
        break;
      }
    if (zero) continue;
    std::vector<Expr> kept = v;
    reducer.add(std::move(v));
    out.basis.push_back(instantiate(unk, kept));
  }

  for (const Tensor& z : out.basis)
    for (const Tensor& x : gens)
      if (!get_components(lie_bracket(z, x), gens, ComponentMode::Constants))
        throw ComputeError("normalizer solver produced a field with bracket outside the span");
  return out;
}

CoordinateMap flow(const Tensor& x, const std::string& parameter_name) {
  if (x.slots() != std::vector<Slot>{slot_up()})
    throw ComputeError("flow needs a vector field");
  const ChartPtr& chart = x.frame()->chart();
  const FramePtr hol = Frame::holonomic(chart);
  const Tensor cx = convert_frame(x, hol);
  const int n = chart->dimension();

  const AtomId s = AtomTable::instance().parameter(parameter_name, true, false);
  const Expr sx = Expr::atom(s);
  for (int i = 0; i < n; ++i)
    if (depends_on(cx[static_cast<std::size_t>(i)], s))
      throw ComputeError("flow parameter name collides with an atom in the field");

  CoordinateMap map;
  map.chart = chart;
  map.parameter = s;
  map.image.assign(static_cast<std::size_t>(n), Expr(0));

  std::vector<bool> solved(static_cast<std::size_t>(n), false);
  std::map<AtomId, Expr> sub;
  for (int round = 0; round < n; ++round) {
    bool progressed = false;
    for (int i = 0; i < n && !progressed; ++i) {
      if (solved[static_cast<std::size_t>(i)]) continue;
      const Expr& xi = cx[static_cast<std::size_t>(i)];
      bool blocked = false;
      for (int j = 0; j < n; ++j) {
        if (j == i || solved[static_cast<std::size_t>(j)]) continue;
        if (depends_on(xi, chart->coordinate(j))) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      const AtomId ci = chart->coordinate(i);
      const Expr alpha = xi.derivative(ci);
      if (depends_on(alpha, ci)) continue;
      if (alpha.depends_on_coordinates()) continue;
      const Expr beta0 = xi - alpha * Expr::atom(ci);
      if (depends_on(beta0, ci)) continue;

      const Expr arg = alpha * sx;
      if (Expr(arg.den()) != Expr(1))
        throw UnsupportedError("flow coefficient is not polynomial: " + alpha.to_string());
      const Expr beta = beta0.substitute(sub);
      const Expr integral = integrate_in_parameter(exp_expr(-arg) * beta, s);
      map.image[static_cast<std::size_t>(i)] = exp_expr(arg) * (Expr::atom(ci) + integral);
      sub[ci] = map.image[static_cast<std::size_t>(i)];
      solved[static_cast<std::size_t>(i)] = true;
      progressed = true;
    }
    if (!progressed)
      throw UnsupportedError(
          "flow is not integrable coordinate-by-coordinate: no ordering leaves each component "
          "affine in its own coordinate with constant linear part");
  }

  for (int i = 0; i < n; ++i)
    if (map.image[static_cast<std::size_t>(i)].substitute({{s, Expr(0)}}) !=
        Expr::atom(chart->coordinate(i)))
      throw ComputeError("flow failed the identity check at parameter zero");

  const AtomId t2 = AtomTable::instance().parameter("_" + parameter_name + "_law", true, false);
  std::map<AtomId, Expr> shift{{s, sx + Expr::atom(t2)}};
  std::map<AtomId, Expr> to_t{{s, Expr::atom(t2)}};
  std::map<AtomId, Expr> inner;
  for (int i = 0; i < n; ++i)
    inner[chart->coordinate(i)] = map.image[static_cast<std::size_t>(i)].substitute(to_t);
  for (int i = 0; i < n; ++i) {
    const Expr composed = map.image[static_cast<std::size_t>(i)].substitute(inner);
    const Expr shifted = map.image[static_cast<std::size_t>(i)].substitute(shift);
    if (composed != shifted) throw ComputeError("flow failed the group law check");
  }
  return map;
}

Tensor pullback(const CoordinateMap& map, const Tensor& t) {
  for (const Slot& s : t.slots())
    if (s != slot_down())
      throw ComputeError("pullback acts on covariant tensors");
  if (t.frame()->chart() != map.chart)
    throw ComputeError("pullback needs the tensor on the map's chart");
  const FramePtr hol = Frame::holonomic(map.chart);
  const Tensor ct = convert_frame(t, hol);
  const int n = map.chart->dimension();

  std::map<AtomId, Expr> sub;
  for (int i = 0; i < n; ++i) sub[map.chart->coordinate(i)] = map.image[static_cast<std::size_t>(i)];
  std::vector<std::vector<Expr>> jac(static_cast<std::size_t>(n),
                                     std::vector<Expr>(static_cast<std::size_t>(n), Expr(0)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      jac[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          map.image[static_cast<std::size_t>(j)].derivative(map.chart->coordinate(i));

  std::vector<Expr> pushed(ct.size(), Expr(0));
  for (std::size_t f = 0; f < ct.size(); ++f)
    if (!ct[f].is_zero()) pushed[f] = ct[f].substitute(sub);

  Tensor out(hol, ct.slots());
  const auto dims = ct.dims();
  std::vector<int> idx(dims.size(), 0);
  do {
    Expr v(0);
    std::vector<int> jdx(dims.size(), 0);
    do {
      std::size_t flat = 0;
      for (std::size_t k = 0; k < jdx.size(); ++k)
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(jdx[k]);
      if (pushed[flat].is_zero()) continue;
      Expr term = pushed[flat];
      for (std::size_t k = 0; k < jdx.size(); ++k)
        term *= jac[static_cast<std::size_t>(jdx[k])][static_cast<std::size_t>(idx[k])];
      v += term;
    } while (next_multi_index(jdx, dims));
    out.at(idx) = v;
  } while (next_multi_index(idx, dims));
  return out;
}

IsometryPointData isometry_dimension_at_point(const Metric& g,
                                              const std::map<AtomId, Expr>& point,
                                              int max_depth) {
  const ChartPtr& chart = g.frame()->chart();
  for (AtomId c : chart->coordinates())
    if (!point.count(c)) throw ComputeError("point must bind every chart coordinate");
  const int n = chart->dimension();

  const CurvatureSuite suite = curvature_suite(g);
  std::vector<Tensor> derivs{suite.riemann_down};
  std::vector<Tensor> derivs_pt{suite.riemann_down.substitute(point)};

  const std::vector<AtomId> unknowns = fresh_unknowns(
      static_cast<std::size_t>(n + n * (n - 1) / 2), "iso");
  std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(n),
                                           std::vector<int>(static_cast<std::size_t>(n), -1));
  {
    int k = n;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pair_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = k++;
  }
  auto lam = [&](int a, int b) -> Expr {
    if (a == b) return Expr(0);
    if (a < b) return Expr::atom(unknowns[static_cast<std::size_t>(
        pair_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])]);
    return -Expr::atom(unknowns[static_cast<std::size_t>(
        pair_index[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])]);
  };

  const Tensor gup_pt = g.inverse_tensor().substitute(point);
  std::vector<std::vector<Expr>> lam_up(static_cast<std::size_t>(n),
                                        std::vector<Expr>(static_cast<std::size_t>(n), Expr(0)));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) {
      Expr v(0);
      for (int b = 0; b < n; ++b) v += lam(c, b) * gup_pt.at({b, a});
      lam_up[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] = v;
    }

  const Connection conn = levi_civita(g);
  std::vector<Expr> eqs;
  IsometryPointData out;
  std::vector<std::vector<Expr>> basis;
  int prev_dim = -1;
  for (int depth = 0; depth <= max_depth; ++depth) {
    derivs.push_back(covariant_derivative(derivs.back(), conn));
    derivs_pt.push_back(derivs.back().substitute(point));

    const Tensor& tk = derivs_pt[static_cast<std::size_t>(depth)];
    const Tensor& tk1 = derivs_pt[static_cast<std::size_t>(depth) + 1];
    const auto dims = tk.dims();
    std::vector<int> idx(dims.size(), 0);
    do {
      Expr e(0);
      std::vector<int> ext = idx;
      ext.push_back(0);
      for (int a = 0; a < n; ++a) {
        ext.back() = a;
        if (!tk1.at(ext).is_zero()) e += Expr::atom(unknowns[static_cast<std::size_t>(a)]) * tk1.at(ext);
      }
      for (std::size_t slot = 0; slot < idx.size(); ++slot) {
        std::vector<int> alt = idx;
        const int orig = idx[slot];
        for (int b = 0; b < n; ++b) {
          alt[slot] = b;
          if (!tk.at(alt).is_zero())
            e += lam_up[static_cast<std::size_t>(orig)][static_cast<std::size_t>(b)] * tk.at(alt);
        }
      }
      if (!e.is_zero()) eqs.push_back(e);
    } while (next_multi_index(idx, dims));

    basis = nullspace(eqs, unknowns);
    const int dim = static_cast<int>(basis.size());
    out.dimension = dim;
    out.depth_used = depth;
    if (dim == prev_dim || dim == 0) {
      out.stabilized = true;
      break;
    }
    prev_dim = dim;
  }

  const Tensor r_pt = derivs_pt.front();
  const std::size_t count = basis.size();
  auto value_of = [&](const std::vector<Expr>& w, int a) { return w[static_cast<std::size_t>(a)]; };
  auto form_of = [&](const std::vector<Expr>& w, int a, int b) -> Expr {
    if (a == b) return Expr(0);
    if (a < b)
      return w[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])];
    return -w[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])];
  };

  out.brackets.assign(count, std::vector<std::vector<Expr>>(
                                 count, std::vector<Expr>(count, Expr(0))));
  if (count == 0) return out;

  const std::vector<AtomId> cu = fresh_unknowns(count, "isoc");
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      std::vector<Expr> bracket(unknowns.size(), Expr(0));
      for (int a = 0; a < n; ++a) {
        Expr v(0);
        for (int c = 0; c < n; ++c)
          for (int b = 0; b < n; ++b) {
            const Expr gac = gup_pt.at({a, c});
            if (gac.is_zero()) continue;
            v += gac * (form_of(basis[i], c, b) * value_of(basis[j], b) -
                        form_of(basis[j], c, b) * value_of(basis[i], b));
          }
        bracket[static_cast<std::size_t>(a)] = v;
      }
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          Expr v(0);
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const Expr gcd = gup_pt.at({c, d});
              if (!gcd.is_zero())
                v += gcd * (form_of(basis[i], a, c) * form_of(basis[j], d, b) -
                            form_of(basis[j], a, c) * form_of(basis[i], d, b));
              const Expr rabcd = r_pt.at({a, b, c, d});
              if (!rabcd.is_zero())
                v -= rabcd * value_of(basis[i], c) * value_of(basis[j], d);
            }
          bracket[static_cast<std::size_t>(pair_index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])] = v;
        }

      std::vector<Expr> deqs;
      for (std::size_t r = 0; r < unknowns.size(); ++r) {
        Expr e = bracket[r];
        for (std::size_t k = 0; k < count; ++k) e = e - Expr::atom(cu[k]) * basis[k][r];
        if (!e.is_zero()) deqs.push_back(e);
      }
      SolveOptions opts;
      opts.branch_on_parameters = false;
      const LinearBranch b = solve_linear(deqs, cu, opts).generic();
      if (!b.consistent)
        throw ComputeError("point bracket left the stabilized solution space");
      std::vector<Expr> check(unknowns.size(), Expr(0));
      for (std::size_t k = 0; k < count; ++k)
        for (std::size_t r = 0; r < unknowns.size(); ++r)
          check[r] += b.particular[k] * basis[k][r];
      for (std::size_t r = 0; r < unknowns.size(); ++r)
        if (check[r] != bracket[r])
          throw ComputeError("point bracket decomposition failed to reassemble");
      for (std::size_t k = 0; k < count; ++k) {
        out.brackets[i][j][k] = b.particular[k];
        out.brackets[j][i][k] = -b.particular[k];
      }
    }
  }
  return out;
}

}  // namespace grsym
