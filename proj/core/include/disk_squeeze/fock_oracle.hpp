#pragma once

// Truncated number-basis model of a single mode. Used as an independent check
// of the disk picture: states, overlaps and time evolution are computed with
// plain linear algebra instead of Moebius maps.

#include "disk_squeeze/dynamics.hpp"
#include "disk_squeeze/geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace disk_squeeze::fock {

inline constexpr std::size_t kDefaultDimension = 128;

// Amplitudes c_n = <n|psi>, n = 0..N-1.
class FockVector {
public:
    explicit FockVector(Eigen::VectorXcd amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t n) const { return amplitudes_(static_cast<Eigen::Index>(n)); }
    double norm() const { return amplitudes_.norm(); }

    static FockVector basis(std::size_t dim, std::size_t n);

private:
    Eigen::VectorXcd amplitudes_;
};

// <psi|phi>, antilinear in the first argument.
Complex inner_product(const FockVector& psi, const FockVector& phi);

class FockOperator {
public:
    explicit FockOperator(Eigen::MatrixXcd matrix);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

private:
    Eigen::MatrixXcd matrix_;
};

// (1 - |z|^2)^{1/4} exp(-z a*^2 / 2)|0>, truncated to N levels.
FockVector squeezed_state_vector(const DiskPoint& z, std::size_t dim = kDefaultDimension);

// <psi(z)|psi(w)> for the normalized squeezed states, principal branch.
Complex overlap(const DiskPoint& z, const DiskPoint& w);

// tr((P(z) - P(w))^2) = 2 (1 - (1 + delta(z, w))^{-1/2})
double hs_distance_sq(const DiskPoint& z, const DiskPoint& w);

// 2 - 2 |<psi|phi>|^2 for two truncated vectors.
double hs_distance_sq(const FockVector& psi, const FockVector& phi);

// Matrix of H in the truncated number basis. Requires dim >= 4.
FockOperator hamiltonian_matrix(const QuadraticHamiltonian& h, std::size_t dim = kDefaultDimension);

// exp(-i t H) through the eigendecomposition of the Hermitian matrix. Build
// once and reuse for many times.
class Propagator {
public:
    explicit Propagator(const FockOperator& hamiltonian);

    std::size_t dim() const { return static_cast<std::size_t>(energies_.size()); }
    FockVector evolve(const FockVector& psi, double t) const;

private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd eigenvectors_;
};

// Throws DomainError on a dimension mismatch.
FockVector evolve_vector(const FockOperator& hamiltonian, const FockVector& psi, double t);

// z = -sqrt(2) c_2 / c_0. Throws DomainError when |c_0| <= 1e-8 or the odd
// levels carry more than 1e-6 of the probability.
DiskPoint extract_disk_point(const FockVector& psi);

// || (a + z a*) psi ||, ignoring the two highest levels where truncation cuts
// the ladder operators.
double annihilator_residual(const DiskPoint& z, const FockVector& psi);

// 4 tr((P(z) - P(z + dz))^2) / d(z, z + dz)^2, which tends to one as dz -> 0.
double fubini_study_ratio(const DiskPoint& z, Complex dz);

}  // namespace disk_squeeze::fock
