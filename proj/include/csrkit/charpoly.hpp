#ifndef CSRKIT_CHARPOLY_HPP
#define CSRKIT_CHARPOLY_HPP

#include <vector>

#include "csrkit/matrix.hpp"

namespace csrkit {

// Polynomials are coefficient vectors, ascending degree: p[k] x^k.
using IntPoly = std::vector<BigInt>;

/// Characteristic polynomial det(xI - M) of an integer matrix, computed
/// division-free (Berkowitz). Monic, degree = dim.
IntPoly char_poly_int(const Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>& m);

/// Characteristic polynomial of a rational matrix as an integer polynomial in
/// y = scale * x: returns p with det(xI - M) = p(scale * x) / scale^d.
/// Roots of the characteristic polynomial are (roots of p) / scale.
IntPoly char_poly_scaled(const RatMatrix& m, BigInt& scale);

/// Square-free part p / gcd(p, p'), primitive. Same root set, simple roots.
IntPoly squarefree_part(const IntPoly& p);

IntPoly poly_derivative(const IntPoly& p);
IntPoly poly_gcd(IntPoly a, IntPoly b);      // primitive PRS, result primitive
IntPoly poly_divide_exact(const IntPoly& a, const IntPoly& b);

}  // namespace csrkit

#endif  // CSRKIT_CHARPOLY_HPP
