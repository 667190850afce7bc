// types.hpp — Eigen aliases and small matrix helpers shared by all modules

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace polariton {

using Complex = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = MatrixX<Complex>;
using VectorXc = VectorX<Complex>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Largest absolute entry of A - A^dagger.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hermiticity_error(
    const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// Commutator [A, B].
template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return (a * b - b * a).eval();
}

// Symmetrized copy (A + A^dagger)/2, used to strip rounding asymmetry.
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
    return ((a + a.adjoint()) / 2).eval();
}

}  // namespace polariton
