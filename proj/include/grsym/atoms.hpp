#ifndef GRSYM_ATOMS_HPP
#define GRSYM_ATOMS_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grsym/common.hpp"
#include "grsym/poly.hpp"

namespace grsym {

class Expr;

enum class AtomKind { Coordinate, Parameter, Transcendental, Opaque };
enum class TranscKind { Exp, Sin, Cos, Log, Root };

/// Interned symbolic generator: a coordinate, a parameter, a transcendental
/// function of a polynomial argument, or an opaque function/derivative.
struct Atom {
  AtomKind kind = AtomKind::Coordinate;
  std::string name;          // coordinate/parameter/opaque base name
  std::string chart;         // owning chart for coordinates
  TranscKind tkind = TranscKind::Exp;
  Poly arg;                  // transcendental and opaque kinds
  unsigned root_degree = 0;  // Root
  unsigned order = 0;        // opaque derivative order, 0 = the function
  bool declared_real = true;
  bool declared_positive = false;
  bool coordinate_dependent = false;

  std::string display_name() const;
};

/// Global interning table; atom ids are stable for the lifetime of a process.
class AtomTable {
 public:
  static AtomTable& instance();

  AtomId coordinate(const std::string& chart, const std::string& name, bool complex_coord = false);
  AtomId parameter(const std::string& name, bool real = true, bool positive = false);
  AtomId transcendental(TranscKind k, const Poly& arg, unsigned root_degree = 0);
  AtomId opaque(const std::string& name, const Poly& arg, unsigned order = 0);

  const Atom& at(AtomId id) const { return atoms_[id]; }
  std::size_t size() const { return atoms_.size(); }

  /// Declares the order-th derivative of the named opaque function.
  void declare_derivative(const std::string& name, unsigned order, const Expr& value);
  const Expr* declared_derivative(const std::string& name, unsigned order) const;

 private:
  AtomTable() = default;
  AtomId intern(Atom a, const std::string& key);

  std::vector<Atom> atoms_;
  std::map<std::string, AtomId> index_;
  std::map<std::pair<std::string, unsigned>, std::shared_ptr<const Expr>> derivatives_;
};

inline const Atom& atom_info(AtomId id) { return AtomTable::instance().at(id); }

/// Numeric value of an atom given base values for coordinates, parameters and
/// opaque atoms; transcendentals use principal branches.
std::complex<double> eval_atom(AtomId id, const std::map<AtomId, std::complex<double>>& values);

}  // namespace grsym

#endif
