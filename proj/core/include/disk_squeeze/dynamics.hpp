#pragma once

#include "disk_squeeze/geometry.hpp"

#include <optional>
#include <string>

namespace disk_squeeze {

// H = omega a*a + (alpha/2) a^2 + (conj(alpha)/2) a*^2
class QuadraticHamiltonian {
public:
    QuadraticHamiltonian(double omega, Complex alpha);

    double omega() const { return omega_; }
    Complex alpha() const { return alpha_; }

    bool is_zero() const { return omega_ == 0.0 && alpha_ == Complex(0.0); }

private:
    double omega_;
    Complex alpha_;
};

enum class Regime { Stable, Free, Unstable };

struct SpectralClass {
    Regime regime;
    // lambda = sqrt(omega^2 - |alpha|^2) when stable, gamma = sqrt(|alpha|^2 - omega^2)
    // when unstable, 0 when free.
    double rate;

    // Human-readable spectrum of H in this regime.
    std::string spectrum(const QuadraticHamiltonian& h) const;
};

const char* to_string(Regime r);

// Free iff |omega - |alpha|| <= 1e-12 max(omega, |alpha|, 1).
SpectralClass classify(const QuadraticHamiltonian& h);

// xi_- carries the minus sign: the in-disk ground-state point when stable, the
// t -> -infinity limit when unstable. alpha = 0 gives (0, infinity).
FixedPoints fixed_points_of(const QuadraticHamiltonian& h);

struct FlowResult {
    MoebiusMap map;
    SpectralClass spectral_class;
    std::optional<FixedPoints> fixed;  // empty for the zero Hamiltonian
};

// The disk motion z -> z(t) induced by exp(-i t H). The map is stored as
// [[u, -v], [-conj(v), conj(u)]] with unit determinant.
FlowResult flow(const QuadraticHamiltonian& h, double t);

// dz/dt of the flow at z: i (conj(alpha) - 2 omega z + alpha z^2).
Complex flow_velocity(const QuadraticHamiltonian& h, Complex z);

DiskPoint evolve(const QuadraticHamiltonian& h, const DiskPoint& z0, double t);

// Invariant curve of the motion through z0. An unstable orbit lying on the
// geodesic between xi_- and xi_+ is reported as a HyperbolicLine.
InvariantCurve trajectory_curve(const QuadraticHamiltonian& h, const DiskPoint& z0);

// pi / lambda for stable H, nothing otherwise.
std::optional<double> period(const QuadraticHamiltonian& h);

struct Limits {
    ExtendedComplex backward;  // t -> -infinity
    ExtendedComplex forward;   // t -> +infinity
};

std::optional<Limits> asymptotic_limits(const QuadraticHamiltonian& h, const DiskPoint& z0);

}  // namespace disk_squeeze
