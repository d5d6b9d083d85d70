#pragma once

#include <utility>
#include <vector>

#include "grsym/expr.hpp"

namespace grsym {

/// Univariate polynomial over expressions; index = degree.
using UPoly = std::vector<Expr>;

/// Degree, or -1 for the zero polynomial.
int updeg(const UPoly& p);
UPoly uptrim(UPoly p);
UPoly upderiv(const UPoly& p);
UPoly upmonic(UPoly p);
/// Remainder and quotient of dense division; b must be nonzero.
void updivmod(UPoly a, const UPoly& b, UPoly* quot, UPoly* rem);
UPoly upquot(const UPoly& a, const UPoly& b);
UPoly upsub(const UPoly& a, const UPoly& b);
/// Evaluation by Horner's rule.
Expr upeval(const UPoly& p, const Expr& z);
/// Monic gcd by the Euclidean algorithm over the expression field.
UPoly upgcd(UPoly a, UPoly b);
/// Squarefree factors s_i with p = lead * prod s_i^i (Yun's algorithm).
std::vector<std::pair<UPoly, int>> up_squarefree(const UPoly& p);
/// Roots of a squarefree factor: zero roots stripped first, rational roots
/// deflated for degree three and above, then closed forms for what remains;
/// throws ComputeError when an irreducible part of degree three or more is
/// left.
std::vector<Expr> up_factor_roots(const UPoly& s);
/// All extractable roots of p with multiplicities, grouped by squarefree
/// factor in ascending multiplicity order.
std::vector<std::pair<Expr, int>> up_roots(const UPoly& p);

}  // namespace grsym
