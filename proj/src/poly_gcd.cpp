#include <algorithm>

#include "grsym/atoms.hpp"
#include "grsym/poly.hpp"

namespace grsym {

namespace {

Poly mul_free(const Poly& a, const Poly& b) {
  return a.mul(b, false);
}

Poly unit_normalize(const Poly& p) {
  if (p.is_zero()) return p;
  GaussRat lc = p.leading().c;
  GaussRat inv = GaussRat(1) / lc;
  return p.mul_const(inv);
}

Monomial monomial_content(const Poly& p) {
  Monomial mc = p.leading().m;
  for (auto& t : p.terms()) {
    mc = Monomial::gcd(mc, t.m);
    if (mc.is_empty()) break;
  }
  return mc;
}

Poly strip_monomial(const Poly& p, const Monomial& mc) {
  if (mc.is_empty()) return p;
  std::vector<Poly::Term> ts;
  ts.reserve(p.terms().size());
  for (auto& t : p.terms()) ts.push_back({t.c, Monomial::div(t.m, mc)});
  return Poly::from_terms(std::move(ts));
}

Poly apply_monomial(const Poly& p, const Monomial& m) {
  if (m.is_empty()) return p;
  std::vector<Poly::Term> ts;
  ts.reserve(p.terms().size());
  for (auto& t : p.terms()) ts.push_back({t.c, Monomial::mul(t.m, m)});
  return Poly::from_terms(std::move(ts));
}

Poly exact_divide(const Poly& num, const Poly& den) {
  Poly q;
  if (!try_divide_free(num, den, &q)) throw ComputeError("inexact polynomial division");
  return q;
}

/// Formal derivative with respect to the atom v in the free ring.
Poly formal_derivative(const Poly& p, AtomId v) {
  std::vector<Poly::Term> ts;
  for (auto& t : p.terms()) {
    unsigned e = t.m.degree_of(v);
    if (e == 0) continue;
    Monomial m;
    for (auto& f : t.m.factors) {
      if (f.first == v) {
        if (f.second > 1) m.factors.emplace_back(f.first, f.second - 1);
      } else {
        m.factors.push_back(f);
      }
    }
    ts.push_back({t.c * GaussRat(Rat(e)), std::move(m)});
  }
  return Poly::from_terms(std::move(ts));
}

Poly gcd_core(const Poly& a, const Poly& b);

/// Gcd of the coefficients of p viewed as a polynomial in v.
Poly content_in(const Poly& p, AtomId v) {
  unsigned d = p.degree_of(v);
  Poly c;
  for (unsigned k = 0; k <= d; ++k) {
    Poly coeff = p.coeff_of(v, k);
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? unit_normalize(coeff) : gcd_core(c, coeff);
    if (c.is_one()) break;
  }
  return c;
}

Poly pseudo_remainder(Poly r, const Poly& g, AtomId v) {
  unsigned dg = g.degree_of(v);
  Poly lcg = g.coeff_of(v, dg);
  while (!r.is_zero() && r.degree_of(v) >= dg) {
    unsigned dr = r.degree_of(v);
    Poly lcr = r.coeff_of(v, dr);
    Poly shift = Poly::atom(v, dr - dg);
    r = mul_free(lcg, r) - mul_free(mul_free(lcr, shift), g);
    if (!r.is_zero() && r.degree_of(v) >= dr)
      throw ComputeError("pseudo-division failed to reduce degree");
  }
  return r;
}

/// Gcd of monomial-primitive nonzero polynomials, unit leading coefficient.
Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly::one();
  AtomId va = a.main_atom(), vb = b.main_atom();
  AtomId v = std::max(va, vb);
  if (!a.contains(v)) return gcd_core(a, content_in(b, v));
  if (!b.contains(v)) return gcd_core(content_in(a, v), b);

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly pa = exact_divide(a, ca);
  Poly pb = exact_divide(b, cb);
  Poly cg = (ca.is_constant() || cb.is_constant()) ? Poly::one() : gcd_core(ca, cb);

  Poly r0 = pa, r1 = pb;
  if (r0.degree_of(v) < r1.degree_of(v)) std::swap(r0, r1);
  Poly g;
  while (true) {
    Poly r = pseudo_remainder(r0, r1, v);
    if (r.is_zero()) {
      Poly c1 = content_in(r1, v);
      g = exact_divide(r1, c1);
      break;
    }
    if (r.degree_of(v) == 0) {
      g = Poly::one();
      break;
    }
    Poly cr = content_in(r, v);
    r0 = r1;
    r1 = exact_divide(r, cr);
  }
  return unit_normalize(mul_free(cg, g));
}

}  // namespace

Poly gcd_free(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? Poly() : unit_normalize(b);
  if (b.is_zero()) return unit_normalize(a);
  Monomial ma = monomial_content(a);
  Monomial mb = monomial_content(b);
  Monomial common = Monomial::gcd(ma, mb);
  Poly pa = strip_monomial(a, ma);
  Poly pb = strip_monomial(b, mb);
  Poly g = gcd_core(pa, pb);
  return unit_normalize(apply_monomial(g, common));
}

bool try_divide_free(const Poly& num, const Poly& den, Poly* quotient) {
  if (den.is_zero()) throw ComputeError("division by zero polynomial");
  if (num.is_zero()) {
    *quotient = Poly();
    return true;
  }
  if (den.is_constant()) {
    *quotient = num.mul_const(GaussRat(1) / den.constant_value());
    return true;
  }
  Poly r = num;
  std::vector<Poly::Term> qts;
  const Poly::Term& dl = den.leading();
  while (!r.is_zero()) {
    const Poly::Term& rl = r.leading();
    if (!dl.m.divides(rl.m)) return false;
    Poly::Term t{rl.c / dl.c, Monomial::div(rl.m, dl.m)};
    qts.push_back(t);
    Poly sub = apply_monomial(den.mul_const(t.c), t.m);
    r = r - sub;
  }
  *quotient = Poly::from_terms(std::move(qts));
  return true;
}

std::vector<SquarefreePart> squarefree_decomposition(const Poly& p, GaussRat* content) {
  std::vector<SquarefreePart> parts;
  if (p.is_zero()) {
    *content = GaussRat(0);
    return parts;
  }
  Monomial mc = monomial_content(p);
  for (auto& f : mc.factors) parts.push_back({Poly::atom(f.first), f.second});
  Poly core = unit_normalize(strip_monomial(p, mc));

  while (!core.is_constant()) {
    AtomId v = core.main_atom();
    Poly cont = content_in(core, v);
    Poly pp = exact_divide(core, cont);

    Poly dp = formal_derivative(pp, v);
    Poly g = gcd_core(pp, dp);
    Poly w = exact_divide(pp, g);
    Poly y = exact_divide(dp, g);
    unsigned k = 1;
    while (!w.is_constant()) {
      Poly z = y - formal_derivative(w, v);
      if (z.is_zero()) {
        parts.push_back({unit_normalize(w), k});
        break;
      }
      Poly gk = gcd_core(w, z);
      if (!gk.is_constant()) parts.push_back({unit_normalize(gk), k});
      w = exact_divide(w, gk);
      y = exact_divide(z, gk);
      ++k;
    }
    core = unit_normalize(cont);
  }

  Poly prod = Poly::one();
  for (auto& part : parts) prod = mul_free(prod, part.factor.pow(part.multiplicity, false));
  Poly c;
  if (!try_divide_free(p, prod, &c) || !c.is_constant())
    throw ComputeError("squarefree decomposition lost a factor");
  *content = c.constant_value();
  return parts;
}

namespace {

bool rational_square_root(const Rat& r, Rat* root) {
  if (r < 0) return false;
  Int num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  *root = Rat(sn) / Rat(sd);
  return true;
}

}  // namespace

std::vector<Poly> factor_light(const Poly& p) {
  std::vector<Poly> out;
  if (p.is_zero() || p.is_constant()) return out;
  Monomial mc = monomial_content(p);
  for (auto& f : mc.factors) out.push_back(Poly::atom(f.first));
  Poly core = unit_normalize(strip_monomial(p, mc));
  if (core.is_constant()) return out;

  std::set<AtomId> atoms;
  core.collect_atoms(atoms);
  if (atoms.size() == 1) {
    AtomId v = *atoms.begin();
    unsigned d = core.degree_of(v);
    if (d == 1) {
      out.push_back(core);
      return out;
    }
    if (d == 2) {
      GaussRat a2 = core.coeff_of(v, 2).constant_value();
      GaussRat a1 = core.coeff_of(v, 1).constant_value();
      GaussRat a0 = core.coeff_of(v, 0).constant_value();
      GaussRat disc = a1 * a1 - GaussRat(4) * a2 * a0;
      Rat root;
      if (disc.im == 0 && a2.im == 0 && a1.im == 0 && rational_square_root(disc.re, &root)) {
        GaussRat r1 = (-a1 + GaussRat(root)) / (GaussRat(2) * a2);
        GaussRat r2 = (-a1 - GaussRat(root)) / (GaussRat(2) * a2);
        out.push_back(Poly::atom(v) - Poly::constant(r1));
        if (!(r1 == r2)) out.push_back(Poly::atom(v) - Poly::constant(r2));
        return out;
      }
      out.push_back(core);
      return out;
    }
  }
  GaussRat content;
  for (auto& part : squarefree_decomposition(core, &content)) out.push_back(part.factor);
  return out;
}

}  // namespace grsym
