#ifndef GRSYM_EXPR_HPP
#define GRSYM_EXPR_HPP

#include <map>
#include <set>
#include <string>

#include "grsym/atoms.hpp"
#include "grsym/poly.hpp"

namespace grsym {

/// Canonical rational expression num/den over the atom quotient ring; den is
/// integer-primitive with a positive-oriented leading coefficient and shares
/// no free-ring factor with num.
class Expr {
 public:
  Expr() : den_(Poly::one()) {}
  Expr(long n) : num_(Poly::constant(GaussRat(n))), den_(Poly::one()) {}
  explicit Expr(GaussRat c) : num_(Poly::constant(std::move(c))), den_(Poly::one()) {}
  explicit Expr(Rat r) : num_(Poly::constant(GaussRat(std::move(r)))), den_(Poly::one()) {}
  explicit Expr(Poly p) : num_(std::move(p)), den_(Poly::one()) {}

  static Expr atom(AtomId id) { return Expr(Poly::atom(id)); }
  static Expr i() { return Expr(GaussRat::i()); }
  static Expr from_ratio(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  GaussRat constant_value() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }
  Expr pow(long k) const;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Partial derivative with respect to a coordinate atom.
  Expr derivative(AtomId coordinate) const;
  /// Simultaneous replacement of atoms by expressions, including inside
  /// transcendental and opaque arguments.
  Expr substitute(const std::map<AtomId, Expr>& repl) const;
  /// Complex conjugate; pairing maps declared-complex atoms to their mates.
  Expr conjugate(const std::map<AtomId, AtomId>& pairing = {}) const;

  std::complex<double> eval(const std::map<AtomId, std::complex<double>>& values) const;

  bool contains(AtomId a) const { return num_.contains(a) || den_.contains(a); }
  void collect_atoms(std::set<AtomId>& out) const;
  bool depends_on_coordinates() const;

  std::string to_string() const;
  std::string key() const { return num_.key() + "/" + den_.key(); }

 private:
  Poly num_, den_;
};

/// Exact square root: extracts rational squares, even atom powers, exp halves
/// and perfect-square polynomial factors; the remainder becomes a root atom.
Expr sqrt_expr(const Expr& e);
/// e^(p/q) for rational exponents; general e only for q = 1 or 2, otherwise
/// e must be a plain atom or rational constant.
Expr pow_rational(const Expr& e, const Rat& r);
Expr exp_expr(const Expr& arg);
Expr sin_expr(const Expr& arg);
Expr cos_expr(const Expr& arg);
Expr log_expr(const Expr& arg);
Expr root_expr(const Expr& arg, unsigned degree);

/// Derivative of a polynomial with respect to a coordinate atom.
Expr poly_derivative(const Poly& p, AtomId coordinate);
/// Polynomial with every atom replaced per the map.
Expr poly_substitute(const Poly& p, const std::map<AtomId, Expr>& repl);

}  // namespace grsym

#endif
