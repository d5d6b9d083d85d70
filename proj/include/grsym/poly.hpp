#ifndef GRSYM_POLY_HPP
#define GRSYM_POLY_HPP

#include <complex>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "grsym/common.hpp"
#include "grsym/numbers.hpp"

namespace grsym {

/// Product of atom powers, factors sorted by ascending atom id, exponents > 0.
struct Monomial {
  std::vector<std::pair<AtomId, unsigned>> factors;

  bool is_empty() const { return factors.empty(); }
  unsigned degree() const {
    unsigned d = 0;
    for (auto& f : factors) d += f.second;
    return d;
  }
  unsigned degree_of(AtomId a) const {
    for (auto& f : factors)
      if (f.first == a) return f.second;
    return 0;
  }
  bool contains(AtomId a) const { return degree_of(a) > 0; }

  static Monomial mul(const Monomial& a, const Monomial& b);
  /// Componentwise min of exponents.
  static Monomial gcd(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b | a componentwise.
  static Monomial div(const Monomial& a, const Monomial& b);
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

/// Graded order, ties broken lexicographically from the highest atom id down.
int monomial_cmp(const Monomial& a, const Monomial& b);

/// Sparse polynomial over Gaussian rationals; terms stored in strictly
/// descending monomial order with nonzero coefficients.
class Poly {
 public:
  struct Term {
    GaussRat c;
    Monomial m;
    friend bool operator==(const Term& a, const Term& b) { return a.c == b.c && a.m == b.m; }
  };

  Poly() = default;

  static Poly constant(GaussRat c);
  static Poly one() { return constant(GaussRat(1)); }
  /// Canonical single atom power (rewrites applied).
  static Poly atom(AtomId id, unsigned exp = 1);
  /// Canonical coefficient times monomial (rewrites applied).
  static Poly monomial(GaussRat c, Monomial m);
  /// Builds from arbitrary terms without rewrites: sorts, merges, drops zeros.
  static Poly from_terms(std::vector<Term> ts);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_empty()); }
  GaussRat constant_value() const;
  bool is_one() const { return is_constant() && !t_.empty() && t_[0].c.is_one(); }
  std::size_t term_count() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& leading() const { return t_.front(); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  /// canonical=true applies the rewrite system to each product monomial;
  /// canonical=false is plain free-ring multiplication (gcd internals).
  Poly mul(const Poly& b, bool canonical) const;
  friend Poly operator*(const Poly& a, const Poly& b) { return a.mul(b, true); }
  Poly mul_const(const GaussRat& c) const;
  Poly pow(unsigned n, bool canonical = true) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a.t_ == b.t_); }

  unsigned degree() const;
  unsigned degree_of(AtomId a) const;
  bool contains(AtomId a) const;
  void collect_atoms(std::set<AtomId>& out) const;
  /// Largest atom id present; requires a nonconstant polynomial.
  AtomId main_atom() const;
  /// Coefficient of v^k as a polynomial in the remaining atoms.
  Poly coeff_of(AtomId v, unsigned k) const;

  /// Re-expands every monomial through the rewrite system.
  Poly recanonicalize() const;

  /// Unique structural encoding, usable as a map key.
  std::string key() const;
  std::string to_string() const;
  std::complex<double> eval(const std::map<AtomId, std::complex<double>>& values) const;

 private:
  std::vector<Term> t_;
};

/// Componentwise-min monomial dividing every term.
Monomial poly_monomial_content(const Poly& p);
Poly poly_strip_monomial(const Poly& p, const Monomial& m);

/// Free-ring gcd of canonical polynomials, normalized with unit leading
/// coefficient; includes the common monomial content.
Poly gcd_free(const Poly& a, const Poly& b);

/// Free-ring exact division; returns false if den does not divide num.
bool try_divide_free(const Poly& num, const Poly& den, Poly* quotient);

/// Free-ring squarefree decomposition: p = c * prod f_i^{m_i} with the f_i
/// pairwise coprime and squarefree; c is the rational content.
struct SquarefreePart {
  Poly factor;
  unsigned multiplicity;
};
std::vector<SquarefreePart> squarefree_decomposition(const Poly& p, GaussRat* content);

/// Light factor split used for pivot branching: monomial content atoms,
/// linear/quadratic univariate splits, squarefree parts; no full factorization.
std::vector<Poly> factor_light(const Poly& p);

}  // namespace grsym

#endif
