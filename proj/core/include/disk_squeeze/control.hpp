#pragma once

#include "disk_squeeze/dynamics.hpp"
#include "disk_squeeze/geometry.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace disk_squeeze::control {

// Slack on the moduli bounds when deciding feasibility.
inline constexpr double kFeasibilityTolerance = 1e-12;

struct PulseStep {
    int hamiltonian;  // 0 or 1
    double duration;
};

// Alternating evolutions H0, H1, H0, ... starting with H0.
class PulseSequence {
public:
    PulseSequence() = default;
    explicit PulseSequence(std::vector<PulseStep> steps);

    const std::vector<PulseStep>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    double total_time() const;

    // Builds the sequence from durations, assigning H0, H1, H0, ...
    static PulseSequence alternating(const std::vector<double>& durations);

private:
    std::vector<PulseStep> steps_;
};

DiskPoint simulate(const PulseSequence& seq, const QuadraticHamiltonian& h0, const QuadraticHamiltonian& h1,
                   const DiskPoint& z0);

// Entry j holds the bounds after step 2j+1, i.e. after j uses of H1.
struct ReachabilityBounds {
    std::vector<double> max_radius;
    std::vector<double> min_radius;

    std::size_t steps() const { return max_radius.size() - 1; }
    double R(std::size_t j) const { return max_radius.at(j); }
    double r(std::size_t j) const { return min_radius.at(j); }
};

ReachabilityBounds bang_bang_bounds(double z0_mod, double xi_mod, std::size_t k);

// R after k uses of H1 from the diagonalized recursion.
double closed_form_R(double z0_mod, double xi_mod, std::size_t k);

// Leading-order 1 - R for large k: 2 (1 - R_1)/(1 + R_1) Delta^{2k}.
double asymptotic_gap(double z0_mod, double xi_mod, std::size_t k);

// Reachability of zf from z0 with k uses of H1 (H0 a pure oscillator).
// Throws DomainError unless h1 is stable.
bool bang_bang_feasible(const DiskPoint& z0, const DiskPoint& zf, std::size_t k, const QuadraticHamiltonian& h1);

// Smallest k for which bang_bang_feasible holds. Throws DomainError when H1
// does not squeeze (xi = 0) and |zf| != |z0|.
std::size_t min_switches(const DiskPoint& z0, const DiskPoint& zf, const QuadraticHamiltonian& h1);

// A 2k+1 step sequence steering z0 to zf. Requires h0 = omega a*a with
// omega > 0 and h1 stable; throws DomainError with the bounds when infeasible.
PulseSequence synthesize_pulses(const DiskPoint& z0, const DiskPoint& zf, std::size_t k,
                                const QuadraticHamiltonian& h0, const QuadraticHamiltonian& h1);

// A circular arc (or segment, for a line carrier) from `from` to `to`.
struct ArcEdge {
    GeneralizedCircle carrier;
    Complex from;
    Complex to;
    bool ccw;  // counterclockwise about the carrier center; ignored for lines

    Complex point_at(double s) const;  // s in [0, 1]
    Complex tangent_at_start() const;
    Complex tangent_at_end() const;
    double sweep() const;  // swept angle (radians), or length for segments
};

// Region bounded by a closed chain of arcs.
class ArcPolygon {
public:
    ArcPolygon(std::vector<Complex> vertices, std::vector<ArcEdge> edges);

    const std::vector<Complex>& vertices() const { return vertices_; }
    const std::vector<ArcEdge>& edges() const { return edges_; }

    // Signed area of the chain; positive when traversed counterclockwise.
    double signed_area() const;

    // Internal angle at each vertex (vertex i is where edge i starts). A
    // reversal of direction counts as a cusp of angle zero.
    std::vector<double> interior_angles() const;

    // Point-in-region test by ray casting. Degenerate (zero-area) polygons
    // contain nothing.
    bool contains(Complex z) const;

    // Distance from z to the boundary chain, by dense sampling.
    double boundary_distance(Complex z, std::size_t samples_per_edge = 2048) const;

private:
    std::vector<Complex> vertices_;
    std::vector<ArcEdge> edges_;
};

struct EntireDisk {};

using ReachableSet = std::variant<ArcPolygon, EntireDisk>;

// States reachable from z0 with H0 (steps = 1), H0 then H1 (steps = 2) or
// H0, H1, H0 (steps = 3), both Hamiltonians free.
ReachableSet free_reachable_set(const DiskPoint& z0, const QuadraticHamiltonian& h0,
                                const QuadraticHamiltonian& h1, int steps);

// Durations (t0, t1) with H1(t1) H0(t0) z0 = target, if any exist.
std::optional<std::pair<double, double>> free_two_step_pulses(const DiskPoint& z0, const QuadraticHamiltonian& h0,
                                                              const QuadraticHamiltonian& h1,
                                                              const DiskPoint& target);

// True iff the chords joining each Hamiltonian's fixed-point pair cross inside
// the disk.
bool fixed_point_pairs_interleave(const FixedPoints& p0, const FixedPoints& p1);

// States reachable with H0 then H1 (both unstable); EntireDisk when the
// fixed-point pairs interleave, since H0, H1, H0 then reaches every point.
ReachableSet unstable_reachable_set(const DiskPoint& z0, const QuadraticHamiltonian& h0,
                                    const QuadraticHamiltonian& h1);

struct AdiabaticSample {
    double t;
    DiskPoint xi;
};

struct AdiabaticPath {
    std::vector<AdiabaticSample> samples;
    GeneralizedCircle carrier;

    // max | |xi - center|^2 - radius^2 | over samples (line carriers: max distance).
    double carrier_residual() const;
    // | |center|^2 - 1 - radius^2 |; zero for diameters.
    double orthogonality_residual() const;
};

// First t in [0, 1] with |alpha(t)| = omega along the linear interpolation, if any.
std::optional<double> gap_closure_time(double omega, Complex alpha0, Complex alpha1);

// Ground-state point xi_-(t) for alpha(t) = (1 - t) alpha0 + t alpha1 at fixed
// omega, together with the circle carrying it. Throws DomainError when the
// gap closes somewhere on [0, 1].
AdiabaticPath adiabatic_path(double omega, Complex alpha0, Complex alpha1, std::size_t samples);

}  // namespace disk_squeeze::control
