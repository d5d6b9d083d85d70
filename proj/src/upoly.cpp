#include "grsym/upoly.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "grsym/common.hpp"

namespace grsym {

namespace {

/// Positive divisors of |n|, or empty when the search is too large.
std::vector<mpz_class> bounded_divisors(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  long steps = 0;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (++steps > 100000) return {};
    if (n % d == 0) {
      out.push_back(d);
      out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// One rational root of a polynomial with real rational coefficients and a
/// nonzero constant term, when a bounded divisor search finds it.
std::optional<Expr> up_rational_root(const UPoly& f) {
  std::vector<Rat> c;
  for (const Expr& e : f) {
    if (!e.is_constant()) return std::nullopt;
    GaussRat v = e.constant_value();
    if (v.im != 0) return std::nullopt;
    c.push_back(v.re);
  }
  mpz_class scale = 1;
  for (const Rat& r : c) {
    mpz_class den = r.get_den();
    scale = scale / gcd(scale, den) * den;
  }
  std::vector<mpz_class> a;
  for (const Rat& r : c) {
    Rat s = r * Rat(scale);
    a.push_back(s.get_num());
  }
  const auto nums = bounded_divisors(a.front());
  const auto dens = bounded_divisors(a.back());
  if (nums.empty() || dens.empty()) return std::nullopt;
  for (const mpz_class& q : dens) {
    for (const mpz_class& p : nums) {
      for (int sgn : {1, -1}) {
        Rat cand(sgn * p, q);
        cand.canonicalize();
        Rat acc = 0;
        for (size_t k = c.size(); k-- > 0;) acc = acc * cand + c[k];
        if (acc == 0) return Expr(cand);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

int updeg(const UPoly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    if (!p[static_cast<size_t>(k)].is_zero()) return k;
  }
  return -1;
}

UPoly uptrim(UPoly p) {
  p.resize(static_cast<size_t>(updeg(p) + 1));
  return p;
}

UPoly upderiv(const UPoly& p) {
  UPoly out;
  for (size_t k = 1; k < p.size(); ++k) out.push_back(Expr(long(k)) * p[k]);
  return uptrim(out);
}

UPoly upmonic(UPoly p) {
  int d = updeg(p);
  if (d < 0) return p;
  Expr lead = p[static_cast<size_t>(d)];
  for (auto& c : p) c = c / lead;
  return uptrim(p);
}

void updivmod(UPoly a, const UPoly& b, UPoly* quot, UPoly* rem) {
  int db = updeg(b);
  if (db < 0) throw ComputeError("division by the zero polynomial");
  UPoly q(a.size(), Expr());
  int da = updeg(a);
  while (da >= db) {
    Expr coef = a[static_cast<size_t>(da)] / b[static_cast<size_t>(db)];
    q[static_cast<size_t>(da - db)] = coef;
    for (int k = 0; k <= db; ++k) {
      a[static_cast<size_t>(da - db + k)] -= coef * b[static_cast<size_t>(k)];
    }
    a[static_cast<size_t>(da)] = Expr();
    da = updeg(a);
  }
  if (quot) *quot = uptrim(q);
  if (rem) *rem = uptrim(a);
}

UPoly upquot(const UPoly& a, const UPoly& b) {
  UPoly q;
  updivmod(a, b, &q, nullptr);
  return q;
}

UPoly upsub(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Expr());
  for (size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return uptrim(out);
}

Expr upeval(const UPoly& p, const Expr& z) {
  Expr acc;
  for (size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
  return acc;
}

UPoly upgcd(UPoly a, UPoly b) {
  a = uptrim(std::move(a));
  b = uptrim(std::move(b));
  while (updeg(b) >= 0) {
    UPoly r;
    updivmod(a, b, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  return upmonic(a);
}

std::vector<std::pair<UPoly, int>> up_squarefree(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly f = upmonic(p);
  UPoly fp = upderiv(f);
  UPoly g = upgcd(f, fp);
  if (updeg(g) == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  UPoly c = upquot(f, g);
  UPoly d = upsub(upquot(fp, g), upderiv(c));
  int i = 1;
  while (updeg(c) > 0) {
    UPoly s = upgcd(c, d);
    if (updeg(s) > 0) out.emplace_back(s, i);
    c = upquot(c, s);
    d = upsub(upquot(d, s), upderiv(c));
    ++i;
    if (i > 8) throw ComputeError("squarefree factorization did not settle");
  }
  return out;
}

std::vector<Expr> up_factor_roots(const UPoly& s) {
  UPoly f = upmonic(s);
  std::vector<Expr> out;
  while (updeg(f) > 0 && f[0].is_zero()) {
    out.push_back(Expr());
    f.erase(f.begin());
  }
  while (updeg(f) >= 3) {
    std::optional<Expr> r = up_rational_root(f);
    if (!r) break;
    out.push_back(*r);
    f = upquot(f, UPoly{-*r, Expr(1)});
  }
  int d = updeg(f);
  if (d == 1) {
    out.push_back(-f[0]);
  } else if (d == 2) {
    Expr disc = f[1] * f[1] - Expr(4) * f[0];
    Expr root = sqrt_expr(disc);
    Expr half(Rat(1, 2));
    out.push_back((-f[1] + root) * half);
    out.push_back((-f[1] - root) * half);
  } else if (d != 0) {
    throw ComputeError("cannot solve a principal factor of degree " + std::to_string(d) +
                       " in closed form");
  }
  return out;
}

std::vector<std::pair<Expr, int>> up_roots(const UPoly& p) {
  std::vector<std::pair<Expr, int>> out;
  for (const auto& [factor, mult] : up_squarefree(p)) {
    for (const Expr& z : up_factor_roots(factor)) out.emplace_back(z, mult);
  }
  return out;
}

}  // namespace grsym
