#include "disk_squeeze/dynamics.hpp"

#include "disk_squeeze/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace disk_squeeze {

namespace {

constexpr Complex kI{0.0, 1.0};

double classification_band(const QuadraticHamiltonian& h) {
    return 1e-12 * std::max({h.omega(), std::abs(h.alpha()), 1.0});
}

}  // namespace

QuadraticHamiltonian::QuadraticHamiltonian(double omega, Complex alpha) : omega_(omega), alpha_(alpha) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("QuadraticHamiltonian: omega must be >= 0");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw DomainError("QuadraticHamiltonian: alpha must be finite");
    }
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Stable: return "stable";
        case Regime::Free: return "free";
        case Regime::Unstable: return "unstable";
    }
    return "unknown";
}

std::string SpectralClass::spectrum(const QuadraticHamiltonian& h) const {
    std::ostringstream out;
    out.precision(17);
    switch (regime) {
        case Regime::Stable:
            out << "pure point: " << rate << " (n + 1/2) - " << 0.5 * h.omega() << ", n = 0, 1, 2, ...";
            break;
        case Regime::Free:
            out << "absolutely continuous: [" << -h.omega() << ", inf)";
            break;
        case Regime::Unstable:
            out << "absolutely continuous: (-inf, inf)";
            break;
    }
    return out.str();
}

SpectralClass classify(const QuadraticHamiltonian& h) {
    const double w = h.omega();
    const double g = std::abs(h.alpha());
    const double diff = w - g;
    if (std::abs(diff) <= classification_band(h)) return {Regime::Free, 0.0};
    // |w^2 - g^2| in product form, free of cancellation near w = g.
    const double rate = std::sqrt(std::abs(diff) * (w + g));
    return diff > 0.0 ? SpectralClass{Regime::Stable, rate} : SpectralClass{Regime::Unstable, rate};
}

FixedPoints fixed_points_of(const QuadraticHamiltonian& h) {
    if (h.is_zero()) throw DomainError("fixed_points_of: zero Hamiltonian");
    const double w = h.omega();
    const Complex alpha = h.alpha();
    if (alpha == Complex(0.0)) return {Complex(0.0), ExtendedComplex::infinity()};
    const SpectralClass sc = classify(h);
    switch (sc.regime) {
        case Regime::Stable:
            // (w - lambda) / alpha = conj(alpha) / (w + lambda)
            return {std::conj(alpha) / (w + sc.rate), (w + sc.rate) / alpha};
        case Regime::Free: {
            const Complex xi = w / alpha;
            return {xi, xi};
        }
        case Regime::Unstable:
            return {Complex(w, -sc.rate) / alpha, Complex(w, sc.rate) / alpha};
    }
    throw DomainError("fixed_points_of: unreachable");
}

FlowResult flow(const QuadraticHamiltonian& h, double t) {
    const SpectralClass sc = classify(h);
    std::optional<FixedPoints> fixed;
    if (!h.is_zero()) fixed = fixed_points_of(h);

    const double w = h.omega();
    const Complex alpha = h.alpha();
    if (alpha == Complex(0.0)) {
        const Complex u = std::polar(1.0, -w * t);
        return {MoebiusMap(u, 0.0, 0.0, std::conj(u)), sc, fixed};
    }
    // Every regime has the form a = C - i w S, b = i conj(alpha) S,
    // c = -i alpha S, d = C + i w S with C^2 - (rate^2 sign) S^2 = 1.
    double cosine = 1.0;
    double sine = t;
    switch (sc.regime) {
        case Regime::Stable:
            cosine = std::cos(sc.rate * t);
            sine = std::sin(sc.rate * t) / sc.rate;
            break;
        case Regime::Free:
            break;
        case Regime::Unstable:
            cosine = std::cosh(sc.rate * t);
            sine = std::sinh(sc.rate * t) / sc.rate;
            break;
    }
    const Complex a(cosine, -w * sine);
    const Complex b = kI * std::conj(alpha) * sine;
    return {MoebiusMap::unchecked(a, b, std::conj(b), std::conj(a)), sc, fixed};
}

Complex flow_velocity(const QuadraticHamiltonian& h, Complex z) {
    return kI * (std::conj(h.alpha()) - 2.0 * h.omega() * z + h.alpha() * z * z);
}

DiskPoint evolve(const QuadraticHamiltonian& h, const DiskPoint& z0, double t) {
    const ExtendedComplex z = flow(h, t).map(z0);
    return DiskPoint::clamped(z.value());
}

InvariantCurve trajectory_curve(const QuadraticHamiltonian& h, const DiskPoint& z0) {
    if (h.is_zero()) throw DomainError("trajectory_curve: zero Hamiltonian has no motion");
    const FixedPoints fp = fixed_points_of(h);
    for (const ExtendedComplex& xi : {fp.minus, fp.plus}) {
        if (xi.is_finite() && std::abs(xi.value() - z0.value()) <= kGeometryTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trajectory_curve: stationary point, z0 is the fixed point (" << xi.value().real() << ", "
                << xi.value().imag() << ")";
            throw DomainError(msg.str());
        }
    }
    const SpectralClass sc = classify(h);
    const double speed = std::max({sc.rate, h.omega(), 1.0});
    const double sample_time = 0.1 * std::min(1.0, 1.0 / speed);
    return invariant_curve(flow(h, sample_time).map, z0);
}

std::optional<double> period(const QuadraticHamiltonian& h) {
    const SpectralClass sc = classify(h);
    if (sc.regime != Regime::Stable) return std::nullopt;
    return std::numbers::pi / sc.rate;
}

std::optional<Limits> asymptotic_limits(const QuadraticHamiltonian& h, const DiskPoint&) {
    if (h.is_zero() || classify(h).regime != Regime::Unstable) return std::nullopt;
    // Both fixed points lie on the unit circle, so no z0 in the disk is stationary.
    const FixedPoints fp = fixed_points_of(h);
    return Limits{fp.minus, fp.plus};
}

}  // namespace disk_squeeze
