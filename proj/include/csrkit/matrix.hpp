#ifndef CSRKIT_MATRIX_HPP
#define CSRKIT_MATRIX_HPP

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

#include "csrkit/rational.hpp"

namespace csrkit {

using Index = Eigen::Index;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// The generating set A = {A_1, ..., A_m}, all square of equal dimension.
using MatrixFamily = std::vector<RatMatrix>;

RatMatrix rat_identity(Index d);
RatMatrix rat_zero(Index rows, Index cols);

/// Builds a matrix from rational literals, e.g. rat_mat({{"1","1/2"},{"0","1"}}).
RatMatrix rat_mat(std::initializer_list<std::initializer_list<const char*>> rows);
RatVector rat_vec(std::initializer_list<const char*> entries);

Eigen::MatrixXd to_double(const RatMatrix& m);
Eigen::VectorXd to_double(const RatVector& v);

bool rat_eq(const RatMatrix& a, const RatMatrix& b);
bool is_zero(const RatMatrix& m);
bool is_nonnegative(const RatMatrix& m);
bool is_nonnegative(const MatrixFamily& family);
bool is_integral(const RatMatrix& m);
bool is_metzler(const RatMatrix& m);

/// Kronecker product, row-major block convention: (A kron B) has blocks a_ij * B.
RatMatrix kron(const RatMatrix& a, const RatMatrix& b);

/// Dimension of a family; throws std::invalid_argument on empty input or
/// mixed/non-square dimensions.
Index family_dim(const MatrixFamily& family);

MatrixFamily transposed(const MatrixFamily& family);
MatrixFamily scaled(const MatrixFamily& family, const Rational& c);

/// Compact exact key, used to deduplicate semigroup elements.
std::string matrix_key(const RatMatrix& m);

}  // namespace csrkit

#endif  // CSRKIT_MATRIX_HPP
