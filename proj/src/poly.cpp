#include "grsym/poly.hpp"

#include <algorithm>

#include "grsym/atoms.hpp"

namespace grsym {

Monomial Monomial::mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors.reserve(a.factors.size() + b.factors.size());
  auto ia = a.factors.begin(), ib = b.factors.begin();
  while (ia != a.factors.end() && ib != b.factors.end()) {
    if (ia->first < ib->first) {
      r.factors.push_back(*ia++);
    } else if (ib->first < ia->first) {
      r.factors.push_back(*ib++);
    } else {
      r.factors.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  r.factors.insert(r.factors.end(), ia, a.factors.end());
  r.factors.insert(r.factors.end(), ib, b.factors.end());
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto ia = a.factors.begin(), ib = b.factors.begin();
  while (ia != a.factors.end() && ib != b.factors.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      r.factors.emplace_back(ia->first, std::min(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return r;
}

Monomial Monomial::div(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto ib = b.factors.begin();
  for (auto& f : a.factors) {
    unsigned sub = 0;
    if (ib != b.factors.end() && ib->first == f.first) {
      sub = ib->second;
      ++ib;
    }
    if (f.second > sub) r.factors.emplace_back(f.first, f.second - sub);
  }
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  auto io = other.factors.begin();
  for (auto& f : factors) {
    while (io != other.factors.end() && io->first < f.first) ++io;
    if (io == other.factors.end() || io->first != f.first || io->second < f.second) return false;
  }
  return true;
}

int monomial_cmp(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto ia = a.factors.rbegin(), ib = b.factors.rbegin();
  while (ia != a.factors.rend() && ib != b.factors.rend()) {
    if (ia->first != ib->first) return ia->first > ib->first ? 1 : -1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia;
    ++ib;
  }
  if (ia == a.factors.rend() && ib == b.factors.rend()) return 0;
  return ia == a.factors.rend() ? -1 : 1;
}

namespace {

struct MonGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_cmp(a, b) > 0; }
};

struct PolyBuilder {
  std::map<Monomial, GaussRat, MonGreater> acc;

  void add(const GaussRat& c, const Monomial& m) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
};

bool monomial_is_canonical(const Monomial& m) {
  int exp_count = 0;
  for (auto& [id, e] : m.factors) {
    const Atom& a = atom_info(id);
    if (a.kind != AtomKind::Transcendental) continue;
    switch (a.tkind) {
      case TranscKind::Exp:
        if (++exp_count > 1 || e > 1) return false;
        break;
      case TranscKind::Sin:
        if (e > 1) return false;
        break;
      case TranscKind::Root:
        if (e >= a.root_degree) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

void canonical_expand(const GaussRat& c, const Monomial& m, PolyBuilder& out);

Poly build(PolyBuilder& b) {
  std::vector<Poly::Term> ts;
  ts.reserve(b.acc.size());
  for (auto& [m, c] : b.acc) ts.push_back({c, m});
  return Poly::from_terms(std::move(ts));
}

/// Multiplies acc terms by c*m with canonical re-expansion of each product.
void emit_product(const Poly& mult, const GaussRat& c, const Monomial& base, PolyBuilder& out) {
  for (auto& t : mult.terms()) {
    GaussRat cc = t.c * c;
    Monomial mm = Monomial::mul(t.m, base);
    if (monomial_is_canonical(mm)) {
      out.add(cc, mm);
    } else {
      canonical_expand(cc, mm, out);
    }
  }
}

void canonical_expand(const GaussRat& c, const Monomial& m, PolyBuilder& out) {
  if (monomial_is_canonical(m)) {
    out.add(c, m);
    return;
  }
  Monomial base;
  Poly mult = Poly::one();
  Poly exp_arg;
  for (auto& [id, e] : m.factors) {
    const Atom& a = atom_info(id);
    if (a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Exp) {
      exp_arg = exp_arg + a.arg.mul_const(GaussRat(Rat(e)));
    } else if (a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Sin && e >= 2) {
      AtomId cos_id = AtomTable::instance().transcendental(TranscKind::Cos, a.arg);
      Poly reduced = Poly::one() - Poly::atom(cos_id, 2);
      mult = mult.mul(reduced.pow(e / 2), true);
      if (e % 2) base.factors.emplace_back(id, 1);
    } else if (a.kind == AtomKind::Transcendental && a.tkind == TranscKind::Root &&
               e >= a.root_degree) {
      mult = mult.mul(a.arg.pow(e / a.root_degree), true);
      if (e % a.root_degree) base.factors.emplace_back(id, e % a.root_degree);
    } else {
      base.factors.emplace_back(id, e);
    }
  }
  if (!exp_arg.is_zero()) {
    AtomId exp_id = AtomTable::instance().transcendental(TranscKind::Exp, exp_arg);
    Monomial em;
    em.factors.emplace_back(exp_id, 1);
    base = Monomial::mul(base, em);
  }
  emit_product(mult, c, base, out);
}

}  // namespace

Poly Poly::constant(GaussRat c) {
  Poly p;
  if (!c.is_zero()) p.t_.push_back({std::move(c), Monomial{}});
  return p;
}

Poly Poly::atom(AtomId id, unsigned exp) {
  if (exp == 0) return one();
  Monomial m;
  m.factors.emplace_back(id, exp);
  return monomial(GaussRat(1), std::move(m));
}

Poly Poly::monomial(GaussRat c, Monomial m) {
  PolyBuilder b;
  canonical_expand(c, m, b);
  return build(b);
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return monomial_cmp(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : ts) {
    if (t.c.is_zero()) continue;
    if (!p.t_.empty() && p.t_.back().m == t.m) {
      p.t_.back().c += t.c;
      if (p.t_.back().c.is_zero()) p.t_.pop_back();
    } else {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

GaussRat Poly::constant_value() const {
  if (t_.empty()) return GaussRat(0);
  return t_[0].c;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  auto ia = a.t_.begin(), ib = b.t_.begin();
  while (ia != a.t_.end() && ib != b.t_.end()) {
    int c = monomial_cmp(ia->m, ib->m);
    if (c > 0) {
      r.t_.push_back(*ia++);
    } else if (c < 0) {
      r.t_.push_back(*ib++);
    } else {
      GaussRat s = ia->c + ib->c;
      if (!s.is_zero()) r.t_.push_back({std::move(s), ia->m});
      ++ia;
      ++ib;
    }
  }
  r.t_.insert(r.t_.end(), ia, a.t_.end());
  r.t_.insert(r.t_.end(), ib, b.t_.end());
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  return a + (-b);
}

Poly Poly::mul(const Poly& b, bool canonical) const {
  if (is_zero() || b.is_zero()) return Poly();
  PolyBuilder acc;
  for (auto& ta : t_) {
    for (auto& tb : b.t_) {
      GaussRat c = ta.c * tb.c;
      Monomial m = Monomial::mul(ta.m, tb.m);
      if (canonical && !monomial_is_canonical(m)) {
        canonical_expand(c, m, acc);
      } else {
        acc.add(c, m);
      }
    }
  }
  return build(acc);
}

Poly Poly::mul_const(const GaussRat& c) const {
  if (c.is_zero()) return Poly();
  Poly r = *this;
  for (auto& t : r.t_) t.c *= c;
  return r;
}

Poly Poly::pow(unsigned n, bool canonical) const {
  Poly r = one();
  for (unsigned i = 0; i < n; ++i) r = r.mul(*this, canonical);
  return r;
}

unsigned Poly::degree() const {
  return t_.empty() ? 0 : t_[0].m.degree();
}

unsigned Poly::degree_of(AtomId a) const {
  unsigned d = 0;
  for (auto& t : t_) d = std::max(d, t.m.degree_of(a));
  return d;
}

bool Poly::contains(AtomId a) const {
  for (auto& t : t_)
    if (t.m.contains(a)) return true;
  return false;
}

void Poly::collect_atoms(std::set<AtomId>& out) const {
  for (auto& t : t_)
    for (auto& f : t.m.factors) out.insert(f.first);
}

AtomId Poly::main_atom() const {
  bool found = false;
  AtomId best = 0;
  for (auto& t : t_)
    for (auto& f : t.m.factors)
      if (!found || f.first > best) {
        best = f.first;
        found = true;
      }
  if (!found) throw ComputeError("main_atom of a constant polynomial");
  return best;
}

Poly Poly::coeff_of(AtomId v, unsigned k) const {
  std::vector<Term> ts;
  for (auto& t : t_) {
    if (t.m.degree_of(v) != k) continue;
    Monomial m;
    for (auto& f : t.m.factors)
      if (f.first != v) m.factors.push_back(f);
    ts.push_back({t.c, std::move(m)});
  }
  return from_terms(std::move(ts));
}

Poly Poly::recanonicalize() const {
  bool ok = true;
  for (auto& t : t_)
    if (!monomial_is_canonical(t.m)) {
      ok = false;
      break;
    }
  if (ok) return *this;
  PolyBuilder acc;
  for (auto& t : t_) canonical_expand(t.c, t.m, acc);
  return build(acc);
}

std::string Poly::key() const {
  std::string s;
  for (auto& t : t_) {
    s += grsym::to_string(t.c);
    for (auto& f : t.m.factors) {
      s += "#" + std::to_string(f.first);
      if (f.second > 1) s += "^" + std::to_string(f.second);
    }
    s += "|";
  }
  return s;
}

namespace {

std::string coeff_str(const GaussRat& c, bool product_context) {
  std::string s = to_string(c);
  if (product_context && !is_simple_coeff(c)) return "(" + s + ")";
  return s;
}

std::string term_body(const GaussRat& c, const Monomial& m) {
  if (m.is_empty()) return coeff_str(c, false);
  std::string s;
  if (c.is_one()) {
    s = "";
  } else {
    s = coeff_str(c, true) + "*";
  }
  bool first = true;
  for (auto& f : m.factors) {
    if (!first) s += "*";
    first = false;
    s += atom_info(f.first).display_name();
    if (f.second > 1) s += "^" + std::to_string(f.second);
  }
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : t_) {
    GaussRat c = t.c;
    bool neg = (c.im == 0 && c.re < 0) || (c.re == 0 && c.im < 0);
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? "-" : "+";
    }
    first = false;
    s += term_body(c, t.m);
  }
  return s;
}

Monomial poly_monomial_content(const Poly& p) {
  if (p.is_zero()) return Monomial{};
  Monomial mc = p.leading().m;
  for (auto& t : p.terms()) {
    mc = Monomial::gcd(mc, t.m);
    if (mc.is_empty()) break;
  }
  return mc;
}

Poly poly_strip_monomial(const Poly& p, const Monomial& m) {
  if (m.is_empty()) return p;
  std::vector<Poly::Term> ts;
  ts.reserve(p.terms().size());
  for (auto& t : p.terms()) ts.push_back({t.c, Monomial::div(t.m, m)});
  return Poly::from_terms(std::move(ts));
}

std::complex<double> Poly::eval(const std::map<AtomId, std::complex<double>>& values) const {
  std::complex<double> sum = 0.0;
  for (auto& t : t_) {
    std::complex<double> prod = t.c.to_complex();
    for (auto& f : t.m.factors) {
      std::complex<double> v = eval_atom(f.first, values);
      for (unsigned i = 0; i < f.second; ++i) prod *= v;
    }
    sum += prod;
  }
  return sum;
}

}  // namespace grsym
