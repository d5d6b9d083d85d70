#include "grsym/expr.hpp"

#include <algorithm>

namespace grsym {

namespace {

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return b;
  if (b == 0) return a;
  Int n;
  mpz_gcd(n.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  Int d;
  mpz_lcm(d.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  return Rat(n) / Rat(d);
}

Rat rational_content(const Poly& p) {
  Rat c(0);
  for (auto& t : p.terms()) {
    if (t.c.re != 0) c = rat_gcd(c, abs(t.c.re));
    if (t.c.im != 0) c = rat_gcd(c, abs(t.c.im));
    if (c == 1) break;
  }
  return c;
}

bool is_exp_atom(AtomId id) {
  const Atom& a = atom_info(id);
  return a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Exp;
}

unsigned exp_monomial_count(const Poly& p) {
  unsigned n = 0;
  for (auto& t : p.terms())
    for (auto& f : t.m.factors)
      if (is_exp_atom(f.first)) {
        ++n;
        break;
      }
  return n;
}

const Poly* leading_exp_arg(const Poly& p) {
  for (auto& f : p.leading().m.factors)
    if (is_exp_atom(f.first)) return &atom_info(f.first).arg;
  return nullptr;
}

Poly exact_divide_or_throw(const Poly& num, const Poly& den) {
  Poly q;
  if (!try_divide_free(num, den, &q)) throw ComputeError("inexact reduction quotient");
  return q;
}

bool is_den_radical(AtomId id) {
  const Atom& a = atom_info(id);
  return a.kind == AtomKind::Transcendental &&
         (a.tkind == TranscKind::Root || a.tkind == TranscKind::Sin);
}

bool largest_radical_atom(const Poly& p, AtomId* out) {
  bool found = false;
  for (auto& t : p.terms()) {
    for (auto& f : t.m.factors) {
      if (is_den_radical(f.first)) {
        if (!found || f.first > *out) *out = f.first;
        found = true;
      }
    }
  }
  return found;
}

// Clears root and sin atoms out of denominators: multiply by the missing
// power for a lone monomial, by the conjugate for degree-2 sums (sin behaves
// as a square root of 1 - cos^2). Keeps reduced fractions unique when
// radicals appear.
bool rationalize_roots(Poly& num, Poly& den) {
  bool changed = false;
  AtomId rho = 0;
  int guard = 0;
  while (largest_radical_atom(den, &rho)) {
    if (++guard > 64) throw ComputeError("denominator rationalization did not settle");
    const Atom& ra = atom_info(rho);
    const unsigned d = ra.tkind == TranscKind::Sin ? 2 : ra.root_degree;
    std::vector<Poly> parts(d);
    for (auto& t : den.terms()) {
      unsigned k = 0;
      Monomial rest;
      for (auto& f : t.m.factors) {
        if (f.first == rho) {
          k = f.second;
        } else {
          rest.factors.push_back(f);
        }
      }
      if (k >= d) throw ComputeError("unreduced root power in denominator");
      parts[k] = parts[k] + Poly::from_terms({{t.c, rest}});
    }
    Poly mult;
    if (d == 2) {
      mult = parts[0] - parts[1] * Poly::atom(rho);
    } else {
      unsigned k = 0, nonzero = 0;
      for (unsigned j = 0; j < d; ++j) {
        if (!parts[j].is_zero()) {
          k = j;
          ++nonzero;
        }
      }
      if (nonzero != 1 || k == 0) {
        throw UnsupportedError("cannot rationalize a sum containing a higher-degree root");
      }
      mult = Poly::atom(rho).pow(d - k);
    }
    Poly new_den = den * mult;
    if (new_den.is_zero()) throw ComputeError("zero divisor in root rationalization");
    den = std::move(new_den);
    num = num * mult;
    changed = true;
  }
  return changed;
}

}  // namespace

Expr Expr::from_ratio(Poly num, Poly den) {
  if (den.is_zero()) throw ComputeError("division by zero");
  Expr r;
  if (num.is_zero()) return r;

  Poly g = gcd_free(num, den);
  if (!g.is_one() && !g.is_constant()) {
    num = exact_divide_or_throw(num, g).recanonicalize();
    den = exact_divide_or_throw(den, g).recanonicalize();
  }

  bool shifted = false;
  while (!den.is_constant()) {
    const Poly* s = leading_exp_arg(den);
    if (!s) break;
    unsigned before = exp_monomial_count(den);
    AtomId shift = AtomTable::instance().transcendental(TranscKind::Exp, -*s);
    Poly shifted_den = den * Poly::atom(shift);
    if (exp_monomial_count(shifted_den) >= before) break;
    den = std::move(shifted_den);
    num = num * Poly::atom(shift);
    shifted = true;
  }
  if (rationalize_roots(num, den)) shifted = true;
  if (shifted) {
    g = gcd_free(num, den);
    if (!g.is_one() && !g.is_constant()) {
      num = exact_divide_or_throw(num, g).recanonicalize();
      den = exact_divide_or_throw(den, g).recanonicalize();
    }
  }

  Rat content = rational_content(den);
  GaussRat scale = GaussRat(Rat(1) / content);
  GaussRat lead = den.leading().c * scale;
  if (lead.re == 0) {
    scale *= lead.im > 0 ? GaussRat(Rat(0), Rat(-1)) : GaussRat(Rat(0), Rat(1));
  } else if (lead.re < 0) {
    scale = -scale;
  }
  r.num_ = num.mul_const(scale);
  r.den_ = den.mul_const(scale);
  return r;
}

GaussRat Expr::constant_value() const {
  if (!is_constant()) throw ComputeError("expression is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator-() const {
  Expr r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return Expr::from_ratio(a.num_ + b.num_, a.den_);
  return Expr::from_ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Expr operator-(const Expr& a, const Expr& b) {
  return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  return Expr::from_ratio(a.num_ * b.num_, a.den_ * b.den_);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw ComputeError("division by zero");
  if (a.is_zero()) return Expr();
  return Expr::from_ratio(a.num_ * b.den_, a.den_ * b.num_);
}

Expr Expr::pow(long k) const {
  if (k == 0) return Expr(1);
  if (k < 0) return Expr::from_ratio(den_, num_).pow(-k);
  Expr r(1);
  Expr base = *this;
  long e = k;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = e > 1 ? base * base : base;
    e >>= 1;
  }
  return r;
}

namespace {

Expr atom_derivative(AtomId id, AtomId x) {
  const Atom& a = atom_info(id);
  switch (a.kind) {
    case AtomKind::Coordinate:
    case AtomKind::Parameter:
      return Expr(id == x ? 1 : 0);
    case AtomKind::Transcendental: {
      Expr argd = poly_derivative(a.arg, x);
      if (argd.is_zero()) return Expr(0);
      switch (a.tkind) {
        case TranscKind::Exp:
          return Expr::atom(id) * argd;
        case TranscKind::Sin:
          return Expr::atom(AtomTable::instance().transcendental(TranscKind::Cos, a.arg)) * argd;
        case TranscKind::Cos:
          return -(Expr::atom(AtomTable::instance().transcendental(TranscKind::Sin, a.arg)) * argd);
        case TranscKind::Log:
          return argd / Expr(a.arg);
        case TranscKind::Root:
          return argd * Expr::atom(id) / (Expr(a.arg) * Expr(long(a.root_degree)));
      }
      return Expr(0);
    }
    case AtomKind::Opaque: {
      Expr argd = poly_derivative(a.arg, x);
      if (argd.is_zero()) return Expr(0);
      const Expr* declared = AtomTable::instance().declared_derivative(a.name, a.order + 1);
      if (declared) return *declared * argd;
      AtomId next = AtomTable::instance().opaque(a.name, a.arg, a.order + 1);
      return Expr::atom(next) * argd;
    }
  }
  return Expr(0);
}

}  // namespace

Expr poly_derivative(const Poly& p, AtomId coordinate) {
  Expr sum;
  for (auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.m.factors.size(); ++i) {
      auto [aid, e] = t.m.factors[i];
      Expr da = atom_derivative(aid, coordinate);
      if (da.is_zero()) continue;
      Monomial rest;
      for (std::size_t j = 0; j < t.m.factors.size(); ++j) {
        if (j == i) {
          if (e > 1) rest.factors.emplace_back(aid, e - 1);
        } else {
          rest.factors.push_back(t.m.factors[j]);
        }
      }
      Expr part(Poly::from_terms({{t.c * GaussRat(Rat(e)), rest}}));
      sum += part * da;
    }
  }
  return sum;
}

Expr Expr::derivative(AtomId coordinate) const {
  if (atom_info(coordinate).kind != AtomKind::Coordinate)
    throw ComputeError("derivative direction must be a coordinate");
  Expr dn = poly_derivative(num_, coordinate);
  if (den_.is_one()) return dn;
  Expr dd = poly_derivative(den_, coordinate);
  Expr d(den_);
  if (dd.is_zero()) return dn / d;
  return (dn * d - Expr(num_) * dd) / (d * d);
}

namespace {

struct SubstContext {
  const std::map<AtomId, Expr>* repl;
  std::map<AtomId, bool> affected;
  std::map<AtomId, Expr> images;

  bool is_affected(AtomId id) {
    auto it = affected.find(id);
    if (it != affected.end()) return it->second;
    affected[id] = false;
    bool hit = repl->count(id) > 0;
    if (!hit) {
      const Atom& a = atom_info(id);
      if (a.kind == AtomKind::Transcendental || a.kind == AtomKind::Opaque) {
        std::set<AtomId> inner;
        a.arg.collect_atoms(inner);
        for (AtomId aid : inner)
          if (is_affected(aid)) {
            hit = true;
            break;
          }
      }
    }
    affected[id] = hit;
    return hit;
  }

  const Expr& image(AtomId id);
};

Expr substitute_poly(const Poly& p, SubstContext& ctx) {
  Expr sum;
  for (auto& t : p.terms()) {
    Expr prod(GaussRat(t.c));
    for (auto& f : t.m.factors) {
      if (!ctx.is_affected(f.first)) {
        prod = prod * Expr(Poly::atom(f.first, f.second));
      } else {
        prod = prod * ctx.image(f.first).pow(f.second);
      }
    }
    sum += prod;
  }
  return sum;
}

Poly expr_to_poly_arg(const Expr& e, const char* what) {
  if (!e.den().is_constant())
    throw UnsupportedError(std::string(what) + " argument must be polynomial: " + e.to_string());
  return e.num().mul_const(GaussRat(1) / e.den().constant_value());
}

const Expr& SubstContext::image(AtomId id) {
  auto it = images.find(id);
  if (it != images.end()) return it->second;
  auto rit = repl->find(id);
  if (rit != repl->end()) return images.emplace(id, rit->second).first->second;
  const Atom& a = atom_info(id);
  Expr new_arg = substitute_poly(a.arg, *this);
  Expr img;
  if (a.kind == AtomKind::Transcendental) {
    switch (a.tkind) {
      case TranscKind::Exp: img = exp_expr(new_arg); break;
      case TranscKind::Sin: img = sin_expr(new_arg); break;
      case TranscKind::Cos: img = cos_expr(new_arg); break;
      case TranscKind::Log: img = log_expr(new_arg); break;
      case TranscKind::Root: img = root_expr(new_arg, a.root_degree); break;
    }
  } else {
    Poly arg_poly = expr_to_poly_arg(new_arg, "opaque function");
    img = Expr::atom(AtomTable::instance().opaque(a.name, arg_poly, a.order));
  }
  return images.emplace(id, std::move(img)).first->second;
}

}  // namespace

Expr Expr::substitute(const std::map<AtomId, Expr>& repl) const {
  if (repl.empty()) return *this;
  SubstContext ctx;
  ctx.repl = &repl;
  std::set<AtomId> atoms;
  collect_atoms(atoms);
  bool any = false;
  for (AtomId id : atoms)
    if (ctx.is_affected(id)) {
      any = true;
      break;
    }
  if (!any) return *this;
  Expr n = substitute_poly(num_, ctx);
  Expr d = substitute_poly(den_, ctx);
  if (d.is_zero()) throw ComputeError("substitution makes a denominator vanish");
  return n / d;
}

namespace {

AtomId conjugate_atom(AtomId id, const std::map<AtomId, AtomId>& pairing);

Poly conjugate_poly(const Poly& p, const std::map<AtomId, AtomId>& pairing) {
  Poly out;
  for (auto& t : p.terms()) {
    Monomial m;
    for (auto& f : t.m.factors) m.factors.emplace_back(conjugate_atom(f.first, pairing), f.second);
    std::sort(m.factors.begin(), m.factors.end());
    Monomial merged;
    for (auto& f : m.factors) {
      if (!merged.factors.empty() && merged.factors.back().first == f.first) {
        merged.factors.back().second += f.second;
      } else {
        merged.factors.push_back(f);
      }
    }
    out = out + Poly::monomial(t.c.conj(), std::move(merged));
  }
  return out;
}

AtomId conjugate_atom(AtomId id, const std::map<AtomId, AtomId>& pairing) {
  auto it = pairing.find(id);
  if (it != pairing.end()) return it->second;
  const Atom& a = atom_info(id);
  switch (a.kind) {
    case AtomKind::Coordinate:
    case AtomKind::Parameter:
      if (!a.declared_real)
        throw ComputeError("conjugate of unpaired complex symbol " + a.name);
      return id;
    case AtomKind::Transcendental: {
      Poly arg = conjugate_poly(a.arg, pairing);
      if (arg == a.arg) return id;
      return AtomTable::instance().transcendental(a.tkind, arg, a.root_degree);
    }
    case AtomKind::Opaque: {
      Poly arg = conjugate_poly(a.arg, pairing);
      return AtomTable::instance().opaque(a.name, arg, a.order);
    }
  }
  return id;
}

}  // namespace

Expr Expr::conjugate(const std::map<AtomId, AtomId>& pairing) const {
  Poly n = conjugate_poly(num_, pairing);
  Poly d = conjugate_poly(den_, pairing);
  return Expr::from_ratio(std::move(n), std::move(d));
}

std::complex<double> Expr::eval(const std::map<AtomId, std::complex<double>>& values) const {
  return num_.eval(values) / den_.eval(values);
}

void Expr::collect_atoms(std::set<AtomId>& out) const {
  num_.collect_atoms(out);
  den_.collect_atoms(out);
}

bool Expr::depends_on_coordinates() const {
  std::set<AtomId> atoms;
  collect_atoms(atoms);
  for (AtomId id : atoms)
    if (atom_info(id).coordinate_dependent) return true;
  return false;
}

std::string Expr::to_string() const {
  if (num_.is_zero()) return "0";
  std::string n = num_.to_string();
  if (den_.is_one()) return n;
  std::string ns = num_.term_count() > 1 ? "(" + n + ")" : n;
  std::string d = den_.to_string();
  bool bare = den_.term_count() == 1 && den_.leading().m.factors.size() == 1 &&
              den_.leading().c.is_one();
  return ns + "/" + (bare ? d : "(" + d + ")");
}

Expr exp_expr(const Expr& arg) {
  Poly p = expr_to_poly_arg(arg, "exp");
  if (p.is_zero()) return Expr(1);
  if (p.is_constant()) throw UnsupportedError("exp of a constant is outside the exact fragment");
  return Expr::atom(AtomTable::instance().transcendental(TranscKind::Exp, p));
}

Expr sin_expr(const Expr& arg) {
  Poly p = expr_to_poly_arg(arg, "sin");
  if (p.is_zero()) return Expr();
  if (p.is_constant()) throw UnsupportedError("sin of a constant is outside the exact fragment");
  return Expr::atom(AtomTable::instance().transcendental(TranscKind::Sin, p));
}

Expr cos_expr(const Expr& arg) {
  Poly p = expr_to_poly_arg(arg, "cos");
  if (p.is_zero()) return Expr(1);
  if (p.is_constant()) throw UnsupportedError("cos of a constant is outside the exact fragment");
  return Expr::atom(AtomTable::instance().transcendental(TranscKind::Cos, p));
}

Expr log_expr(const Expr& arg) {
  if (arg.is_zero()) throw ComputeError("log of zero");
  if (arg.is_one()) return Expr();
  if (arg.den().is_constant()) {
    Poly p = expr_to_poly_arg(arg, "log");
    if (p.is_constant()) throw UnsupportedError("log of a constant is outside the exact fragment");
    return Expr::atom(AtomTable::instance().transcendental(TranscKind::Log, p));
  }
  Expr n(arg.num());
  Expr d(arg.den());
  return log_expr(n) - log_expr(d);
}

namespace {

/// Splits n > 0 as s^k * f with f free of k-th power factors found by trial
/// division (small primes, then a perfect-power check on the remainder).
void int_power_split(Int n, unsigned k, Int* s, Int* f) {
  *s = 1;
  *f = 1;
  Int d(2);
  while (n > 1) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (r == 0) {
      unsigned e = 0;
      while (r == 0) {
        n = q;
        ++e;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
      }
      for (unsigned i = 0; i < e / k; ++i) *s *= d;
      for (unsigned i = 0; i < e % k; ++i) *f *= d;
    }
    d += d == 2 ? 1 : 2;
    if (d > 9973) break;
    Int dd = d * d;
    if (dd > n) break;
  }
  if (n > 1) {
    if (k == 2 && mpz_perfect_square_p(n.get_mpz_t())) {
      Int root;
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      *s *= root;
    } else {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        *s *= root;
      } else {
        *f *= n;
      }
    }
  }
}

void rational_power_split(const Rat& r, unsigned k, Rat* s, Rat* f) {
  Int sn, fn, sd, fd;
  int_power_split(r.get_num(), k, &sn, &fn);
  int_power_split(r.get_den(), k, &sd, &fd);
  // sqrt-like split: r = (sn/(sd*fd))^k-th-power-part, remainder fn*fd^{k-1}
  *s = Rat(sn) / (Rat(sd) * Rat(fd));
  *f = Rat(fn) * Rat(fd);
  for (unsigned i = 2; i < k; ++i) *f *= Rat(fd);
}

/// Exact Gaussian-rational square root when one exists.
bool gauss_sqrt(const GaussRat& c, GaussRat* out) {
  auto rat_sqrt = [](const Rat& r, Rat* root) {
    if (r < 0) return false;
    if (mpz_perfect_square_p(r.get_num().get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(r.get_den().get_mpz_t()) == 0) return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), r.get_den().get_mpz_t());
    *root = Rat(sn) / Rat(sd);
    return true;
  };
  if (c.im == 0) {
    Rat r;
    if (c.re >= 0 && rat_sqrt(c.re, &r)) {
      *out = GaussRat(r);
      return true;
    }
    if (c.re < 0 && rat_sqrt(-c.re, &r)) {
      *out = GaussRat(Rat(0), r);
      return true;
    }
    return false;
  }
  Rat norm2 = c.re * c.re + c.im * c.im;
  Rat norm;
  if (!rat_sqrt(norm2, &norm)) return false;
  Rat a2 = (c.re + norm) / 2;
  Rat a;
  if (!rat_sqrt(a2, &a) || a == 0) return false;
  Rat b = c.im / (2 * a);
  *out = GaussRat(a, b);
  return true;
}

Expr sqrt_of_constant(const GaussRat& c) {
  GaussRat exact;
  if (gauss_sqrt(c, &exact)) return Expr(exact);
  AtomId id = AtomTable::instance().transcendental(TranscKind::Root, Poly::constant(c), 2);
  return Expr::atom(id);
}

}  // namespace

Expr sqrt_expr(const Expr& e) {
  if (e.is_zero()) return Expr();
  Poly p = e.num() * e.den();
  const Poly& den = e.den();

  Rat content = rational_content(p);
  Poly p1 = p.mul_const(GaussRat(Rat(1) / content));
  Rat s, f;
  rational_power_split(content, 2, &s, &f);
  Expr out{Rat(s)};
  if (f != 1) {
    AtomId id = AtomTable::instance().transcendental(TranscKind::Root, Poly::constant(GaussRat(f)), 2);
    out = out * Expr::atom(id);
  }

  if (p1.is_constant()) {
    out = out * sqrt_of_constant(p1.constant_value());
    return out / Expr(den);
  }

  Monomial mc = poly_monomial_content(p1);
  Poly p2 = poly_strip_monomial(p1, mc);
  for (auto& [aid, exp] : mc.factors) {
    const Atom& a = atom_info(aid);
    if (a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Exp) {
      Poly half = a.arg.mul_const(GaussRat(Rat(exp) / 2));
      out = out * Expr::atom(AtomTable::instance().transcendental(TranscKind::Exp, half));
      continue;
    }
    if (exp / 2 > 0) out = out * Expr(Poly::atom(aid, exp / 2));
    if (exp % 2) {
      AtomId id = AtomTable::instance().transcendental(TranscKind::Root, Poly::atom(aid), 2);
      out = out * Expr::atom(id);
    }
  }

  if (p2.is_constant()) {
    out = out * sqrt_of_constant(p2.constant_value());
    return out / Expr(den);
  }

  GaussRat sq_content;
  auto parts = squarefree_decomposition(p2, &sq_content);
  Poly leftover = Poly::one();
  for (auto& part : parts) {
    if (part.multiplicity / 2 > 0) out = out * Expr(part.factor).pow(part.multiplicity / 2);
    if (part.multiplicity % 2) leftover = leftover * part.factor;
  }
  if (leftover.is_one()) {
    out = out * sqrt_of_constant(sq_content);
  } else {
    leftover = leftover.mul_const(sq_content);
    AtomId id = AtomTable::instance().transcendental(TranscKind::Root, leftover, 2);
    out = out * Expr::atom(id);
  }
  return out / Expr(den);
}

Expr root_expr(const Expr& e, unsigned degree) {
  if (degree < 2) throw ComputeError("root degree must be at least 2");
  if (degree == 2) return sqrt_expr(e);
  if (e.is_zero()) return Expr();
  if (e.is_one()) return Expr(1);
  Poly p = e.num() * e.den().pow(degree - 1);
  const Poly& den = e.den();

  Rat content = rational_content(p);
  Poly p1 = p.mul_const(GaussRat(Rat(1) / content));
  Rat s, f;
  rational_power_split(content, degree, &s, &f);
  Expr out{Rat(s)};
  if (f != 1) {
    AtomId id =
        AtomTable::instance().transcendental(TranscKind::Root, Poly::constant(GaussRat(f)), degree);
    out = out * Expr::atom(id);
  }

  if (p1.is_one()) return out / Expr(den);

  if (p1.term_count() == 1 && p1.leading().c.is_one()) {
    Monomial rest;
    for (auto& [aid, exp] : p1.leading().m.factors) {
      if (exp / degree > 0) out = out * Expr(Poly::atom(aid, exp / degree));
      if (exp % degree) rest.factors.emplace_back(aid, exp % degree);
    }
    if (!rest.is_empty()) {
      Poly rp = Poly::from_terms({{GaussRat(1), rest}});
      AtomId id = AtomTable::instance().transcendental(TranscKind::Root, rp, degree);
      out = out * Expr::atom(id);
    }
    return out / Expr(den);
  }

  AtomId id = AtomTable::instance().transcendental(TranscKind::Root, p1, degree);
  return out * Expr::atom(id) / Expr(den);
}

Expr pow_rational(const Expr& e, const Rat& r) {
  Int num = r.get_num(), den = r.get_den();
  if (den == 1) return e.pow(num.get_si());
  Expr root = den == 2 ? sqrt_expr(e) : root_expr(e, unsigned(den.get_ui()));
  return root.pow(num.get_si());
}

}  // namespace grsym
