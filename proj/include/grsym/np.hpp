#pragma once

#include <string>

#include "grsym/curvature.hpp"

namespace grsym {

struct NPScalars {
  Expr psi0, psi1, psi2, psi3, psi4;
};

/// Weyl scalars of a null tetrad: psi0 = C(l,m,l,m), psi1 = C(l,n,l,m),
/// psi2 = C(l,m,mbar,n), psi3 = C(l,n,mbar,n), psi4 = C(n,mbar,n,mbar).
NPScalars np_weyl_scalars(const Tensor& weyl_down, const NullTetrad& nt);

/// Null rotation fixing l: n -> n + conj(a) m + a mbar + a conj(a) l.
NullTetrad null_rotation_about_l(const NullTetrad& nt, const Expr& a);
/// Null rotation fixing n: l -> l + conj(b) m + b mbar + b conj(b) n.
NullTetrad null_rotation_about_n(const NullTetrad& nt, const Expr& b);
/// Boost l -> A l, n -> n / A.
NullTetrad boost(const NullTetrad& nt, const Expr& a);
/// Spin m -> w m with unimodular w.
NullTetrad spin(const NullTetrad& nt, const Expr& w);

/// Transforms the Weyl scalars under a rotation about l with parameter a.
NPScalars rotate_scalars_about_l(const NPScalars& s, const Expr& a);

struct PetrovTrace {
  Expr inv_i;  // I = psi0 psi4 - 4 psi1 psi3 + 3 psi2^2
  Expr inv_j;  // J = det of the Weyl scalar matrix
  long rotation = 0;
  std::vector<std::string> steps;
};

/// Petrov label "I", "II", "D", "III", "N" or "O" from exact root
/// multiplicities of the Weyl quartic.
std::string petrov_type(const NPScalars& s, PetrovTrace* trace = nullptr);

/// Petrov type of a metric via an orthonormal tetrad found by normalizing
/// the coordinate basis; flips the metric sign when the signature is +---.
std::string petrov_type_of_metric(const Metric& g, PetrovTrace* trace = nullptr);

struct WeylRoot {
  Expr z;
  int multiplicity = 1;
};

/// Roots of psi0 + 4 psi1 z + 6 psi2 z^2 + 4 psi3 z^3 + psi4 z^4 with exact
/// multiplicities; factors of degree > 2 raise ComputeError.
std::vector<WeylRoot> weyl_quartic_roots(const NPScalars& s);

/// Principal null direction l + z conj(z) n + conj(z) m + z mbar.
Tensor principal_null_direction(const NullTetrad& nt, const Expr& z);

std::vector<std::pair<Tensor, int>> principal_null_directions(const NPScalars& s,
                                                              const NullTetrad& nt);

/// Adapted tetrad pointing l and n at the principal directions z1 and z2.
NullTetrad adapted_null_tetrad(const NullTetrad& nt, const Expr& z1, const Expr& z2);

}  // namespace grsym
