#include "disk_squeeze/control.hpp"

#include "disk_squeeze/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace disk_squeeze::control {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

// Hyperbolic distance from the origin of a point with modulus r.
double origin_distance(double r) { return 2.0 * std::atanh(r); }

void require_modulus(double v, const char* name) {
    if (!(v >= 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1)");
}

SpectralClass require_regime(const QuadraticHamiltonian& h, Regime regime, const char* what) {
    const SpectralClass sc = classify(h);
    if (h.is_zero() || sc.regime != regime) {
        throw DomainError(std::string(what) + ": Hamiltonian is " + (h.is_zero() ? "zero" : to_string(sc.regime)) +
                          ", expected " + to_string(regime));
    }
    return sc;
}

double in_disk_fixed_point_modulus(const QuadraticHamiltonian& h1) {
    require_regime(h1, Regime::Stable, "bang-bang control");
    return std::abs(fixed_points_of(h1).minus.value());
}

// Duration of an H0 = omega a*a rotation taking arg(from) to arg(to).
double rotation_time(double omega, Complex from, Complex to) {
    if (from == Complex(0.0) || to == Complex(0.0)) return 0.0;
    return wrap_angle(-std::arg(to / from)) / (2.0 * omega);
}

// Horocycle through z tangent to the unit circle at xi.
GeneralizedCircle horocycle(Complex z, Complex xi) {
    const double s = (1.0 - std::norm(z)) / (2.0 * (1.0 - (std::conj(xi) * z).real()));
    return GeneralizedCircle::circle(s * xi, 1.0 - s);
}

bool flow_is_ccw(const QuadraticHamiltonian& h, const GeneralizedCircle& carrier, Complex at) {
    if (carrier.is_line()) return true;
    return cross(at - carrier.as_circle().center, flow_velocity(h, at)) > 0.0;
}

// Time along a free (parabolic) flow from u to w on the same orbit. In the
// chart 1/(z - xi) the flow is the translation by -i alpha t.
double parabolic_time(const QuadraticHamiltonian& h, Complex xi, Complex u, Complex w) {
    const Complex beta = -kI * h.alpha();
    return ((1.0 / (w - xi) - 1.0 / (u - xi)) / beta).real();
}

ArcEdge reversed(const ArcEdge& e) { return {e.carrier, e.to, e.from, !e.ccw}; }

bool on_ccw_arc(Complex from, Complex to, Complex p) {
    const double sweep = wrap_angle(std::arg(to) - std::arg(from));
    return wrap_angle(std::arg(p) - std::arg(from)) < sweep;
}

}  // namespace

PulseSequence::PulseSequence(std::vector<PulseStep> steps) : steps_(std::move(steps)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i].hamiltonian != static_cast<int>(i % 2)) {
            throw DomainError("PulseSequence: steps must alternate H0, H1, H0, ...");
        }
        if (!(steps_[i].duration >= 0.0) || !std::isfinite(steps_[i].duration)) {
            throw DomainError("PulseSequence: durations must be finite and non-negative");
        }
    }
}

PulseSequence PulseSequence::alternating(const std::vector<double>& durations) {
    std::vector<PulseStep> steps;
    steps.reserve(durations.size());
    for (std::size_t i = 0; i < durations.size(); ++i) steps.push_back({static_cast<int>(i % 2), durations[i]});
    return PulseSequence(std::move(steps));
}

double PulseSequence::total_time() const {
    double t = 0.0;
    for (const auto& s : steps_) t += s.duration;
    return t;
}

DiskPoint simulate(const PulseSequence& seq, const QuadraticHamiltonian& h0, const QuadraticHamiltonian& h1,
                   const DiskPoint& z0) {
    DiskPoint z = z0;
    for (const auto& step : seq.steps()) z = evolve(step.hamiltonian == 0 ? h0 : h1, z, step.duration);
    return z;
}

ReachabilityBounds bang_bang_bounds(double z0_mod, double xi_mod, std::size_t k) {
    require_modulus(z0_mod, "z0_mod");
    require_modulus(xi_mod, "xi_mod");
    const double p = 1.0 + xi_mod * xi_mod;
    const double q = 2.0 * xi_mod;
    const double threshold = q / p;
    ReachabilityBounds b;
    b.max_radius.reserve(k + 1);
    b.min_radius.reserve(k + 1);
    double big = z0_mod;
    double small = z0_mod;
    b.max_radius.push_back(big);
    b.min_radius.push_back(small);
    for (std::size_t j = 1; j <= k; ++j) {
        big = (p * big + q) / (q * big + p);
        small = small > threshold ? (p * small - q) / (-q * small + p) : 0.0;
        b.max_radius.push_back(big);
        b.min_radius.push_back(small);
    }
    return b;
}

double closed_form_R(double z0_mod, double xi_mod, std::size_t k) {
    require_modulus(z0_mod, "z0_mod");
    require_modulus(xi_mod, "xi_mod");
    const double delta = (1.0 - xi_mod) / (1.0 + xi_mod);
    const double d2k = std::pow(delta, 2.0 * static_cast<double>(k));
    return ((1.0 + d2k) * z0_mod + 1.0 - d2k) / ((1.0 - d2k) * z0_mod + 1.0 + d2k);
}

double asymptotic_gap(double z0_mod, double xi_mod, std::size_t k) {
    require_modulus(z0_mod, "z0_mod");
    require_modulus(xi_mod, "xi_mod");
    const double delta = (1.0 - xi_mod) / (1.0 + xi_mod);
    return 2.0 * (1.0 - z0_mod) / (1.0 + z0_mod) * std::pow(delta, 2.0 * static_cast<double>(k));
}

bool bang_bang_feasible(const DiskPoint& z0, const DiskPoint& zf, std::size_t k, const QuadraticHamiltonian& h1) {
    const double xi = in_disk_fixed_point_modulus(h1);
    const ReachabilityBounds b = bang_bang_bounds(z0.modulus(), xi, k);
    const double target = zf.modulus();
    return b.r(k) - kFeasibilityTolerance <= target && target <= b.R(k) + kFeasibilityTolerance;
}

std::size_t min_switches(const DiskPoint& z0, const DiskPoint& zf, const QuadraticHamiltonian& h1) {
    const double xi = in_disk_fixed_point_modulus(h1);
    const double target = zf.modulus();
    if (xi == 0.0) {
        if (std::abs(target - z0.modulus()) <= kFeasibilityTolerance) return 0;
        throw DomainError("min_switches: target unreachable (H1 has its fixed point at 0 and does not squeeze)");
    }
    const double p = 1.0 + xi * xi;
    const double q = 2.0 * xi;
    double big = z0.modulus();
    double small = z0.modulus();
    constexpr std::size_t kMaxSwitches = 10'000'000;
    for (std::size_t k = 0; k <= kMaxSwitches; ++k) {
        if (small - kFeasibilityTolerance <= target && target <= big + kFeasibilityTolerance) return k;
        big = (p * big + q) / (q * big + p);
        small = small > q / p ? (p * small - q) / (-q * small + p) : 0.0;
    }
    throw DomainError("min_switches: no solution within " + std::to_string(kMaxSwitches) + " switches");
}

PulseSequence synthesize_pulses(const DiskPoint& z0, const DiskPoint& zf, std::size_t k,
                                const QuadraticHamiltonian& h0, const QuadraticHamiltonian& h1) {
    if (h0.alpha() != Complex(0.0) || !(h0.omega() > 0.0)) {
        throw DomainError("synthesize_pulses: H0 must be omega a*a with omega > 0");
    }
    const SpectralClass sc1 = require_regime(h1, Regime::Stable, "synthesize_pulses");
    const Complex xi = fixed_points_of(h1).minus.value();
    const ReachabilityBounds bounds = bang_bang_bounds(z0.modulus(), std::abs(xi), k);
    if (!bang_bang_feasible(z0, zf, k, h1)) {
        throw DomainError("synthesize_pulses: infeasible, |zf| = " + fmt(zf.modulus()) + " outside [r, R] = [" +
                          fmt(bounds.r(k)) + ", " + fmt(bounds.R(k)) + "] for k = " + std::to_string(k));
    }
    std::vector<double> durations(2 * k + 1, 0.0);
    if (zf.value() == z0.value()) return PulseSequence::alternating(durations);

    const double w0 = h0.omega();
    const double lambda = sc1.rate;
    const double xi_mod = std::abs(xi);
    Complex z = z0.value();

    if (xi_mod > 0.0 && k > 0) {
        const double d_xi = origin_distance(xi_mod);
        const double d_start = origin_distance(z0.modulus());
        const double d_end = origin_distance(zf.modulus());
        for (std::size_t j = 1; j <= k; ++j) {
            const double d_cur = origin_distance(std::abs(z));
            const double d_next = d_start + (d_end - d_start) * static_cast<double>(j) / static_cast<double>(k);
            // Hyperbolic radius of the H1 circle about xi: it must pass through
            // the current circle |z| = const and through |z| = tanh(d_next / 2).
            const double lo = std::max(std::abs(d_next - d_xi), std::abs(d_cur - d_xi));
            const double hi = std::min(d_next + d_xi, d_cur + d_xi);
            const double radius = lo <= hi ? 0.5 * (lo + hi) : hi;

            // Departure point p on |p| = |z| at hyperbolic distance `radius` from xi.
            Complex p = z;
            const double rho = std::abs(z);
            if (rho > 0.0) {
                const double chord2 = (std::cosh(radius) - 1.0) * (1.0 - rho * rho) * (1.0 - xi_mod * xi_mod) / 2.0;
                double cos_theta = (rho * rho + xi_mod * xi_mod - chord2) / (2.0 * rho * xi_mod);
                cos_theta = std::clamp(cos_theta, -1.0, 1.0);
                p = std::polar(rho, std::arg(xi) + std::acos(cos_theta));
            }
            durations[2 * (j - 1)] = rotation_time(w0, z, p);
            z = evolve(h0, DiskPoint::clamped(z), durations[2 * (j - 1)]).value();

            // Arrival point: angle at xi between the geodesic to the origin and
            // the geodesic to the target, in the chart (z - xi)/(1 - conj(xi) z)
            // where H1 rotates by exp(-2 i lambda t).
            const auto chart = [&](Complex u) { return (u - xi) / (1.0 - std::conj(xi) * u); };
            const Complex wp = chart(z);
            if (std::abs(wp) > 0.0 && radius > 0.0) {
                double cos_psi = (std::cosh(d_xi) * std::cosh(radius) - std::cosh(d_next)) /
                                 (std::sinh(d_xi) * std::sinh(radius));
                cos_psi = std::clamp(cos_psi, -1.0, 1.0);
                const Complex wq = std::polar(std::abs(wp), std::arg(-xi) + std::acos(cos_psi));
                durations[2 * j - 1] = wrap_angle(-std::arg(wq / wp)) / (2.0 * lambda);
                z = evolve(h1, DiskPoint::clamped(z), durations[2 * j - 1]).value();
            }
        }
    }
    durations[2 * k] = rotation_time(w0, z, zf.value());
    return PulseSequence::alternating(durations);
}

double ArcEdge::sweep() const {
    if (carrier.is_line()) return std::abs(to - from);
    const Complex c = carrier.as_circle().center;
    const double a_from = std::arg(from - c);
    const double a_to = std::arg(to - c);
    return ccw ? wrap_angle(a_to - a_from) : wrap_angle(a_from - a_to);
}

Complex ArcEdge::point_at(double s) const {
    if (carrier.is_line()) return from + s * (to - from);
    const auto& [c, r] = carrier.as_circle();
    const double start = std::arg(from - c);
    return c + std::polar(r, start + (ccw ? 1.0 : -1.0) * s * sweep());
}

Complex ArcEdge::tangent_at_start() const {
    if (carrier.is_line()) return (to - from) / std::abs(to - from);
    const Complex radial = from - carrier.as_circle().center;
    return (ccw ? kI : -kI) * radial / std::abs(radial);
}

Complex ArcEdge::tangent_at_end() const {
    if (carrier.is_line()) return (to - from) / std::abs(to - from);
    const Complex radial = to - carrier.as_circle().center;
    return (ccw ? kI : -kI) * radial / std::abs(radial);
}

ArcPolygon::ArcPolygon(std::vector<Complex> vertices, std::vector<ArcEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (edges_.empty() || edges_.size() != vertices_.size()) {
        throw DomainError("ArcPolygon: need one edge per vertex");
    }
    const std::size_t n = edges_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(edges_[i].from - vertices_[i]) > 1e-9 || std::abs(edges_[i].to - vertices_[(i + 1) % n]) > 1e-9) {
            throw DomainError("ArcPolygon: edges must form a closed chain through the vertices");
        }
    }
}

double ArcPolygon::signed_area() const {
    constexpr int kSamples = 512;
    double twice = 0.0;
    for (const auto& e : edges_) {
        Complex prev = e.point_at(0.0);
        for (int i = 1; i <= kSamples; ++i) {
            const Complex next = e.point_at(static_cast<double>(i) / kSamples);
            twice += cross(prev, next);
            prev = next;
        }
    }
    return 0.5 * twice;
}

std::vector<double> ArcPolygon::interior_angles() const {
    const std::size_t n = edges_.size();
    const bool ccw = signed_area() > 0.0;
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex t_in = edges_[(i + n - 1) % n].tangent_at_end();
        const Complex t_out = edges_[i].tangent_at_start();
        const double turn = std::arg(t_out / t_in);
        if (std::abs(std::abs(turn) - std::numbers::pi) <= 1e-9) {
            angles[i] = 0.0;
        } else {
            angles[i] = ccw ? std::numbers::pi - turn : std::numbers::pi + turn;
        }
    }
    return angles;
}

bool ArcPolygon::contains(Complex z) const {
    if (std::abs(signed_area()) < 1e-14) return false;
    // A ray direction unlikely to pass exactly through a vertex.
    const Complex u = std::polar(1.0, 0.6180339887498949);
    int crossings = 0;
    for (const auto& e : edges_) {
        if (e.carrier.is_line()) {
            const Complex seg = e.to - e.from;
            const double den = cross(u, seg);
            if (den == 0.0) continue;
            const Complex rel = e.from - z;
            const double s = cross(rel, seg) / den;
            const double w = cross(rel, u) / den;
            if (s > 0.0 && w >= 0.0 && w < 1.0) ++crossings;
            continue;
        }
        const auto& [c, r] = e.carrier.as_circle();
        const Complex rel = z - c;
        const double half_b = (std::conj(u) * rel).real();
        const double disc = half_b * half_b - (std::norm(rel) - r * r);
        if (disc < 0.0) continue;
        const double root = std::sqrt(disc);
        const double sweep = e.sweep();
        const double start = std::arg(e.from - c);
        for (const double s : {-half_b - root, -half_b + root}) {
            if (s <= 0.0) continue;
            const double phi = std::arg(z + s * u - c);
            const double offset = e.ccw ? wrap_angle(phi - start) : wrap_angle(start - phi);
            if (offset < sweep) ++crossings;
        }
    }
    return crossings % 2 == 1;
}

double ArcPolygon::boundary_distance(Complex z, std::size_t samples_per_edge) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : edges_) {
        for (std::size_t i = 0; i <= samples_per_edge; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(samples_per_edge);
            best = std::min(best, std::abs(z - e.point_at(s)));
        }
    }
    return best;
}

ReachableSet free_reachable_set(const DiskPoint& z0, const QuadraticHamiltonian& h0, const QuadraticHamiltonian& h1,
                                int steps) {
    require_regime(h0, Regime::Free, "free_reachable_set (H0)");
    require_regime(h1, Regime::Free, "free_reachable_set (H1)");
    const Complex xi0 = fixed_points_of(h0).minus.value();
    const Complex xi1 = fixed_points_of(h1).minus.value();
    if (std::abs(xi0 - xi1) <= kGeometryTolerance) {
        throw DomainError("free_reachable_set: degenerate pair (H0 and H1 share their fixed point)");
    }
    if (steps == 3) return EntireDisk{};
    if (steps != 1 && steps != 2) throw DomainError("free_reachable_set: steps must be 1, 2 or 3");

    const Complex start = z0.value();
    const GeneralizedCircle orbit0 = horocycle(start, xi0);
    if (steps == 1) {
        const ArcEdge forward{orbit0, start, xi0, flow_is_ccw(h0, orbit0, start)};
        return ArcPolygon({start, xi0}, {forward, reversed(forward)});
    }

    // Horocycle at xi1 externally tangent to the H0 orbit; its tangency point
    // is the candidate third vertex.
    const auto& [c0, r0] = orbit0.as_circle();
    const double s0 = std::abs(c0);
    const double cos01 = (std::conj(xi0) * xi1).real();
    const double s1 = 2.0 * (1.0 - s0) / (2.0 - s0 * (1.0 + cos01));
    const Complex c1 = s1 * xi1;
    const Complex touch = c0 + r0 * (c1 - c0) / std::abs(c1 - c0);
    const double scale = std::max(1.0, std::abs(1.0 / (touch - xi0)));
    const bool touch_reached = parabolic_time(h0, xi0, start, touch) >= -1e-12 * scale;
    const Complex third = touch_reached ? touch : start;

    const GeneralizedCircle orbit1 = horocycle(third, xi1);
    const ArcEdge boundary{GeneralizedCircle::circle(0.0, 1.0), xi0, xi1, false};
    const ArcEdge to_third{orbit1, xi1, third, !flow_is_ccw(h1, orbit1, third)};
    const ArcEdge to_xi0{orbit0, third, xi0, flow_is_ccw(h0, orbit0, third)};
    return ArcPolygon({xi0, xi1, third}, {boundary, to_third, to_xi0});
}

std::optional<std::pair<double, double>> free_two_step_pulses(const DiskPoint& z0, const QuadraticHamiltonian& h0,
                                                              const QuadraticHamiltonian& h1,
                                                              const DiskPoint& target) {
    require_regime(h0, Regime::Free, "free_two_step_pulses (H0)");
    require_regime(h1, Regime::Free, "free_two_step_pulses (H1)");
    const Complex xi0 = fixed_points_of(h0).minus.value();
    const Complex xi1 = fixed_points_of(h1).minus.value();
    const GeneralizedCircle orbit0 = horocycle(z0.value(), xi0);
    const GeneralizedCircle orbit1 = horocycle(target.value(), xi1);
    std::optional<std::pair<double, double>> best;
    for (const Complex u : circle_intersections(orbit0, orbit1)) {
        const double t0 = parabolic_time(h0, xi0, z0.value(), u);
        const double t1 = parabolic_time(h1, xi1, u, target.value());
        const double tol = 1e-9 * std::max({1.0, std::abs(t0), std::abs(t1)});
        if (t0 >= -tol && t1 >= -tol) {
            const std::pair<double, double> found{std::max(t0, 0.0), std::max(t1, 0.0)};
            if (!best || found.first + found.second < best->first + best->second) best = found;
        }
    }
    return best;
}

bool fixed_point_pairs_interleave(const FixedPoints& p0, const FixedPoints& p1) {
    const Complex a = p0.minus.value(), b = p0.plus.value();
    const Complex c = p1.minus.value(), d = p1.plus.value();
    const double sc = cross(b - a, c - a);
    const double sd = cross(b - a, d - a);
    const double sa = cross(d - c, a - c);
    const double sb = cross(d - c, b - c);
    constexpr double eps = 1e-12;
    if (std::min({std::abs(sa), std::abs(sb), std::abs(sc), std::abs(sd)}) <= eps) return false;
    return sc * sd < 0.0 && sa * sb < 0.0;
}

ReachableSet unstable_reachable_set(const DiskPoint& z0, const QuadraticHamiltonian& h0,
                                    const QuadraticHamiltonian& h1) {
    require_regime(h0, Regime::Unstable, "unstable_reachable_set (H0)");
    require_regime(h1, Regime::Unstable, "unstable_reachable_set (H1)");
    const FixedPoints f0 = fixed_points_of(h0);
    const FixedPoints f1 = fixed_points_of(h1);
    const Complex start = z0.value();
    const Complex end0 = f0.plus.value();
    const Complex end1 = f1.plus.value();

    const GeneralizedCircle orbit0 = trajectory_curve(h0, z0).carrier;
    const ArcEdge along0{orbit0, start, end0, flow_is_ccw(h0, orbit0, start)};

    const auto same = [](Complex x, Complex y) { return std::abs(x - y) <= kGeometryTolerance; };
    const bool same_pair = (same(f0.minus.value(), f1.minus.value()) && same(end0, end1)) ||
                           (same(f0.minus.value(), end1) && same(end0, f1.minus.value()));
    if (same_pair) return ArcPolygon({start, end0}, {along0, reversed(along0)});
    if (fixed_point_pairs_interleave(f0, f1)) return EntireDisk{};

    // Chart where H1 orbits are rays from 0 and the H1 flow is a dilation.
    const Complex m1 = f1.minus.value();
    const Complex p1 = f1.plus.value();
    const auto chart = [&](Complex z) { return (z - m1) / (z - p1); };
    Complex q = -(m1 + p1);
    q = std::abs(q) > 1e-3 ? q / std::abs(q) : kI * m1;
    Complex normal = kI * chart(q) / std::abs(chart(q));
    if ((chart(start) * std::conj(normal)).real() < 0.0) normal = -normal;
    const auto angle = [&](Complex z) { return std::arg(chart(z) * std::conj(normal)); };

    // The disk maps to a half-plane; the image of the H0 arc ends on its edge.
    constexpr double kLast = 1.0 - 1e-9;
    const double sigma = angle(along0.point_at(kLast)) >= 0.0 ? 1.0 : -1.0;
    const auto chi = [&](double s) { return s >= 1.0 ? std::numbers::pi / 2.0 : sigma * angle(along0.point_at(s)); };

    // Split the arc where H1 orbits touch it (chi stationary).
    const auto touch = [&](double s) {
        const Complex z = along0.point_at(s);
        return cross(flow_velocity(h0, z), flow_velocity(h1, z));
    };
    std::vector<double> cuts{0.0};
    constexpr int kSamples = 4096;
    double prev = touch(0.0);
    for (int i = 1; i < kSamples; ++i) {
        const double s = kLast * i / kSamples;
        const double cur = touch(s);
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
            double lo = kLast * (i - 1) / kSamples, hi = s;
            const double sign_lo = prev;
            for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
                const double mid = 0.5 * (lo + hi);
                (touch(mid) * sign_lo > 0.0 ? lo : hi) = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    cuts.push_back(1.0);

    struct Piece {
        double s0, s1, c0, c1;
        double lo() const { return std::min(c0, c1); }
        double hi() const { return std::max(c0, c1); }
        // Arc parameter where chi takes the value c.
        double solve(const decltype(chi)& f, double c) const {
            if (c == c0) return s0;
            if (c == c1) return s1;
            double a = s0, b = s1;
            const bool rising = c1 > c0;
            for (int it = 0; it < 200 && b - a > 1e-17; ++it) {
                const double mid = 0.5 * (a + b);
                ((f(mid) < c) == rising ? a : b) = mid;
            }
            return 0.5 * (a + b);
        }
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        pieces.push_back({cuts[i], cuts[i + 1], chi(cuts[i]), chi(cuts[i + 1])});
    }

    // For each H1 orbit, the earliest point met on the arc.
    std::vector<double> events;
    for (const auto& p : pieces) events.insert(events.end(), {p.c0, p.c1});
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    struct Run {
        std::size_t piece;
        double from, to;
    };
    std::vector<Run> runs;
    for (std::size_t j = 0; j + 1 < events.size(); ++j) {
        const double mid = 0.5 * (events[j] + events[j + 1]);
        std::optional<std::size_t> best;
        double best_rho = 0.0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            if (!(pieces[k].lo() < mid && mid < pieces[k].hi())) continue;
            const double rho = std::abs(chart(along0.point_at(pieces[k].solve(chi, mid))));
            if (!best || rho < best_rho) best = k, best_rho = rho;
        }
        if (!best) continue;
        if (!runs.empty() && runs.back().piece == *best && runs.back().to == events[j]) {
            runs.back().to = events[j + 1];
        } else {
            runs.push_back({*best, events[j], events[j + 1]});
        }
    }

    const auto point = [&](double s) { return s >= 1.0 ? end0 : along0.point_at(s); };
    const auto h1_edge = [&](Complex from, Complex to) {
        const Complex inside = std::abs(from - p1) > std::abs(to - p1) ? from : to;
        const GeneralizedCircle orbit = trajectory_curve(h1, DiskPoint(inside)).carrier;
        const bool forward = std::abs(chart(to)) > std::abs(chart(from)) || same(to, p1);
        const bool ccw = flow_is_ccw(h1, orbit, inside);
        return ArcEdge{orbit, from, to, forward ? ccw : !ccw};
    };

    std::vector<ArcEdge> edges;
    for (const auto& run : runs) {
        const Piece& p = pieces[run.piece];
        const double sa = p.solve(chi, run.from);
        const double sb = p.solve(chi, run.to);
        const Complex a = point(sa);
        const Complex b = point(sb);
        if (!edges.empty() && std::abs(edges.back().to - a) > 1e-14) edges.push_back(h1_edge(edges.back().to, a));
        if (std::abs(a - b) > 0.0) edges.push_back({orbit0, a, b, sb > sa ? along0.ccw : !along0.ccw});
    }
    if (edges.empty()) return ArcPolygon({start, end0}, {along0, reversed(along0)});

    const Complex first = edges.front().from;
    if (!same(end0, p1)) {
        // Boundary arc swept by H1 from xi_+^0 towards xi_+^1, avoiding xi_-^1.
        const bool ccw = !on_ccw_arc(end0, p1, m1);
        edges.push_back({GeneralizedCircle::circle(0.0, 1.0), end0, p1, ccw});
    }
    edges.push_back(h1_edge(p1, first));

    std::vector<Complex> vertices;
    for (const auto& e : edges) vertices.push_back(e.from);
    return ArcPolygon(std::move(vertices), std::move(edges));
}

double AdiabaticPath::carrier_residual() const {
    double worst = 0.0;
    for (const auto& s : samples) {
        const Complex x = s.xi.value();
        if (carrier.is_circle()) {
            const auto& [c, r] = carrier.as_circle();
            worst = std::max(worst, std::abs(std::norm(x - c) - r * r));
        } else {
            worst = std::max(worst, carrier.distance(x));
        }
    }
    return worst;
}

double AdiabaticPath::orthogonality_residual() const {
    if (carrier.is_line()) return carrier.distance(0.0);
    const auto& [c, r] = carrier.as_circle();
    return std::abs(std::norm(c) - 1.0 - r * r);
}

std::optional<double> gap_closure_time(double omega, Complex alpha0, Complex alpha1) {
    const Complex step = alpha1 - alpha0;
    // |alpha0 + t step|^2 - omega^2 = A t^2 + 2 B t + C, convex in t.
    const double a = std::norm(step);
    const double b = (std::conj(alpha0) * step).real();
    const double c = std::norm(alpha0) - omega * omega;
    if (c >= 0.0) return 0.0;
    if (a == 0.0) return std::nullopt;
    const double t = (-b + std::sqrt(b * b - a * c)) / a;
    if (t <= 1.0) return t;
    return std::nullopt;
}

AdiabaticPath adiabatic_path(double omega, Complex alpha0, Complex alpha1, std::size_t samples) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("adiabatic_path: omega must be positive");
    if (samples == 0) throw DomainError("adiabatic_path: need at least one sample");
    if (const auto t = gap_closure_time(omega, alpha0, alpha1)) {
        throw DomainError("adiabatic_path: gap closes at t=" + fmt(*t));
    }
    std::vector<AdiabaticSample> pts;
    pts.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        const Complex alpha = (1.0 - t) * alpha0 + t * alpha1;
        const QuadraticHamiltonian h(omega, alpha);
        pts.push_back({t, DiskPoint(fixed_points_of(h).minus.value())});
    }

    const Complex step = alpha1 - alpha0;
    if (std::abs(step) == 0.0) {
        // Constant Hamiltonian: report the diameter through the single point.
        const Complex x = pts.front().xi.value();
        const Complex dir = std::abs(x) > 0.0 ? x / std::abs(x) : Complex(1.0);
        return {std::move(pts), GeneralizedCircle::line(0.0, dir)};
    }
    // Rotate so alpha(t) runs parallel to the real axis; xi rotates the other way.
    const Complex e = step / std::abs(step);
    const double b = (std::conj(e) * alpha0).imag();
    if (std::abs(b) <= 1e-12 * omega) return {std::move(pts), GeneralizedCircle::line(0.0, std::conj(e))};
    const Complex center = std::conj(e) * Complex(0.0, -omega / b);
    const double radius = std::sqrt((omega - std::abs(b)) * (omega + std::abs(b))) / std::abs(b);
    return {std::move(pts), GeneralizedCircle::circle(center, radius)};
}

}  // namespace disk_squeeze::control
