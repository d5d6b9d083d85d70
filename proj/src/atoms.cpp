#include "grsym/atoms.hpp"

#include <cmath>

#include "grsym/expr.hpp"

namespace grsym {

std::string Atom::display_name() const {
  switch (kind) {
    case AtomKind::Coordinate:
    case AtomKind::Parameter:
      return name;
    case AtomKind::Transcendental: {
      std::string inner = arg.to_string();
      switch (tkind) {
        case TranscKind::Exp: return "exp(" + inner + ")";
        case TranscKind::Sin: return "sin(" + inner + ")";
        case TranscKind::Cos: return "cos(" + inner + ")";
        case TranscKind::Log: return "log(" + inner + ")";
        case TranscKind::Root:
          if (root_degree == 2) return "sqrt(" + inner + ")";
          return "root(" + inner + "," + std::to_string(root_degree) + ")";
      }
      return "?";
    }
    case AtomKind::Opaque:
      return name + std::string(order, '\'') + "(" + arg.to_string() + ")";
  }
  return "?";
}

AtomTable& AtomTable::instance() {
  static AtomTable table;
  return table;
}

AtomId AtomTable::intern(Atom a, const std::string& key) {
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atoms_.size());
  atoms_.push_back(std::move(a));
  index_.emplace(key, id);
  return id;
}

AtomId AtomTable::coordinate(const std::string& chart, const std::string& name, bool complex_coord) {
  Atom a;
  a.kind = AtomKind::Coordinate;
  a.name = name;
  a.chart = chart;
  a.declared_real = !complex_coord;
  a.coordinate_dependent = true;
  return intern(std::move(a), "c|" + chart + "|" + name);
}

AtomId AtomTable::parameter(const std::string& name, bool real, bool positive) {
  Atom a;
  a.kind = AtomKind::Parameter;
  a.name = name;
  a.declared_real = real;
  a.declared_positive = positive;
  return intern(std::move(a), "p|" + name);
}

static bool arg_is_base_only(const Poly& arg) {
  std::set<AtomId> atoms;
  arg.collect_atoms(atoms);
  for (AtomId id : atoms) {
    AtomKind k = atom_info(id).kind;
    if (k != AtomKind::Coordinate && k != AtomKind::Parameter) return false;
  }
  return true;
}

static bool arg_depends_on_coordinates(const Poly& arg) {
  std::set<AtomId> atoms;
  arg.collect_atoms(atoms);
  for (AtomId id : atoms)
    if (atom_info(id).coordinate_dependent) return true;
  return false;
}

AtomId AtomTable::transcendental(TranscKind k, const Poly& arg, unsigned root_degree) {
  if (arg.is_zero() || (k != TranscKind::Root && arg.is_constant()))
    throw UnsupportedError("transcendental atom requires a nonconstant argument");
  if (k != TranscKind::Root && !arg_is_base_only(arg))
    throw UnsupportedError("nested transcendental argument is not supported: " + arg.to_string());
  if (k == TranscKind::Root && root_degree < 2)
    throw ComputeError("root degree must be at least 2");
  Atom a;
  a.kind = AtomKind::Transcendental;
  a.tkind = k;
  a.arg = arg;
  a.root_degree = k == TranscKind::Root ? root_degree : 0;
  a.coordinate_dependent = arg_depends_on_coordinates(arg);
  std::string key = "t|";
  key += std::to_string(static_cast<int>(k));
  key += "|" + std::to_string(a.root_degree) + "|" + arg.key();
  return intern(std::move(a), key);
}

AtomId AtomTable::opaque(const std::string& name, const Poly& arg, unsigned order) {
  if (!arg_is_base_only(arg))
    throw UnsupportedError("opaque function argument must be built from coordinates and parameters");
  Atom a;
  a.kind = AtomKind::Opaque;
  a.name = name;
  a.arg = arg;
  a.order = order;
  a.coordinate_dependent = arg_depends_on_coordinates(arg);
  std::string key = "f|" + name + "|" + std::to_string(order) + "|" + arg.key();
  return intern(std::move(a), key);
}

void AtomTable::declare_derivative(const std::string& name, unsigned order, const Expr& value) {
  derivatives_[{name, order}] = std::make_shared<const Expr>(value);
}

const Expr* AtomTable::declared_derivative(const std::string& name, unsigned order) const {
  auto it = derivatives_.find({name, order});
  return it == derivatives_.end() ? nullptr : it->second.get();
}

std::complex<double> eval_atom(AtomId id, const std::map<AtomId, std::complex<double>>& values) {
  auto it = values.find(id);
  if (it != values.end()) return it->second;
  const Atom& a = atom_info(id);
  if (a.kind == AtomKind::Transcendental) {
    std::complex<double> arg = a.arg.eval(values);
    switch (a.tkind) {
      case TranscKind::Exp: return std::exp(arg);
      case TranscKind::Sin: return std::sin(arg);
      case TranscKind::Cos: return std::cos(arg);
      case TranscKind::Log: return std::log(arg);
      case TranscKind::Root: return std::exp(std::log(arg) / double(a.root_degree));
    }
  }
  throw ComputeError("no numeric value supplied for atom " + a.display_name());
}

}  // namespace grsym
