#include "disk_squeeze/fock_oracle.hpp"

#include "disk_squeeze/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace disk_squeeze::fock {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
    }
}

}  // namespace

FockVector::FockVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw DomainError("FockVector: dimension must be positive");
}

FockVector FockVector::basis(std::size_t dim, std::size_t n) {
    if (n >= dim) throw DomainError("FockVector::basis: level out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(n)) = 1.0;
    return FockVector(std::move(v));
}

Complex inner_product(const FockVector& psi, const FockVector& phi) {
    require_same_dim(psi.dim(), phi.dim(), "inner_product");
    return psi.amplitudes().dot(phi.amplitudes());
}

FockOperator::FockOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw DomainError("FockOperator: matrix must be square and non-empty");
    }
}

FockVector squeezed_state_vector(const DiskPoint& z, std::size_t dim) {
    if (dim < 2) throw DomainError("squeezed_state_vector: dimension must be >= 2");
    const Complex zz = z.value();
    const double r = z.modulus();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    Complex amp = std::pow((1.0 - r) * (1.0 + r), 0.25);
    for (std::size_t n = 0; 2 * n < dim; ++n) {
        c(static_cast<Eigen::Index>(2 * n)) = amp;
        // c_{2n+2} = c_{2n} (-z/2) sqrt((2n+1)(2n+2)) / (n+1)
        const double k = static_cast<double>(n);
        amp *= -0.5 * zz * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (k + 1.0);
    }
    return FockVector(std::move(c));
}

Complex overlap(const DiskPoint& z, const DiskPoint& w) {
    const double rz = z.modulus();
    const double rw = w.modulus();
    const double norms = std::pow((1.0 - rz) * (1.0 + rz) * (1.0 - rw) * (1.0 + rw), 0.25);
    return norms / std::sqrt(1.0 - std::conj(z.value()) * w.value());
}

double hs_distance_sq(const DiskPoint& z, const DiskPoint& w) {
    const double delta = distance_delta(z, w);
    const double root = std::sqrt(1.0 + delta);
    // 1 - 1/sqrt(1 + delta) rewritten to avoid cancellation for small delta.
    return 2.0 * delta / (root * (1.0 + root));
}

double hs_distance_sq(const FockVector& psi, const FockVector& phi) {
    return 2.0 - 2.0 * std::norm(inner_product(psi, phi));
}

FockOperator hamiltonian_matrix(const QuadraticHamiltonian& h, std::size_t dim) {
    if (dim < 4) throw DomainError("hamiltonian_matrix: dimension must be >= 4");
    const auto n_max = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max, n_max);
    for (Eigen::Index n = 0; n < n_max; ++n) {
        m(n, n) = h.omega() * static_cast<double>(n);
        if (n >= 2) {
            // <n-2| a^2 |n> = sqrt(n(n-1))
            const double ladder = std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
            m(n - 2, n) = 0.5 * h.alpha() * ladder;
            m(n, n - 2) = 0.5 * std::conj(h.alpha()) * ladder;
        }
    }
    return FockOperator(std::move(m));
}

Propagator::Propagator(const FockOperator& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.matrix());
    if (solver.info() != Eigen::Success) throw DomainError("Propagator: eigendecomposition failed");
    energies_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

FockVector Propagator::evolve(const FockVector& psi, double t) const {
    require_same_dim(dim(), psi.dim(), "Propagator::evolve");
    Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi.amplitudes();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, -t * energies_(k));
    return FockVector(eigenvectors_ * coeffs);
}

FockVector evolve_vector(const FockOperator& hamiltonian, const FockVector& psi, double t) {
    require_same_dim(hamiltonian.dim(), psi.dim(), "evolve_vector");
    if (t == 0.0) return psi;
    return Propagator(hamiltonian).evolve(psi, t);
}

DiskPoint extract_disk_point(const FockVector& psi) {
    if (psi.dim() < 3) throw DomainError("extract_disk_point: dimension must be >= 3");
    const double total = psi.amplitudes().squaredNorm();
    double odd = 0.0;
    for (std::size_t n = 1; n < psi.dim(); n += 2) odd += std::norm(psi[n]);
    if (odd > 1e-6 * total) throw DomainError("extract_disk_point: not a squeezed-family state");
    const double scale = std::sqrt(total);
    if (std::abs(psi[0]) <= 1e-8 * scale) throw DomainError("extract_disk_point: vacuum amplitude too small");
    return DiskPoint::clamped(-std::sqrt(2.0) * psi[2] / psi[0]);
}

double annihilator_residual(const DiskPoint& z, const FockVector& psi) {
    if (psi.dim() < 4) throw DomainError("annihilator_residual: dimension must be >= 4");
    const Complex zz = z.value();
    double sum = 0.0;
    // Row m of (a + z a*) psi: sqrt(m+1) c_{m+1} + z sqrt(m) c_{m-1}.
    for (std::size_t m = 0; m + 2 < psi.dim(); ++m) {
        const double md = static_cast<double>(m);
        Complex row = std::sqrt(md + 1.0) * psi[m + 1];
        if (m > 0) row += zz * std::sqrt(md) * psi[m - 1];
        sum += std::norm(row);
    }
    return std::sqrt(sum);
}

double fubini_study_ratio(const DiskPoint& z, Complex dz) {
    if (dz == Complex(0.0)) throw DomainError("fubini_study_ratio: dz must be non-zero");
    const DiskPoint w(z.value() + dz);
    const double d = hyperbolic_distance(z, w);
    return 4.0 * hs_distance_sq(z, w) / (d * d);
}

}  // namespace disk_squeeze::fock
