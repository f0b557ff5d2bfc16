#pragma once
// Scalar-templated dense aliases shared across the library.  Everything is
// built on Eigen; no other math dependency.

#include <complex>

#include <Eigen/Dense>

namespace mrjc {

using Index = Eigen::Index;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using ComplexMatrixX = MatrixX<std::complex<Scalar>>;

template <class Scalar>
using ComplexVectorX = VectorX<std::complex<Scalar>>;

}  // namespace mrjc
