#include "disk_squeeze/geometry.hpp"

#include "disk_squeeze/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace disk_squeeze {

namespace {

bool finite_coords(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

// [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1, if m is a multiple of
// such a matrix.
struct CanonicalAutomorphism {
    Complex a;
    Complex b;
};

std::optional<CanonicalAutomorphism> canonical_automorphism(const MoebiusMap& m, double tol) {
    const double s = m.scale();
    if (std::abs(m.a()) <= tol * s) return std::nullopt;
    const Complex ratio = m.d() / std::conj(m.a());
    if (std::abs(std::abs(ratio) - 1.0) > tol) return std::nullopt;
    const Complex phase = std::sqrt(ratio);
    const Complex a = m.a() / phase;
    const Complex b = m.b() / phase;
    const Complex c = m.c() / phase;
    const Complex d = m.d() / phase;
    if (std::abs(c - std::conj(b)) > tol * s || std::abs(d - std::conj(a)) > tol * s) {
        return std::nullopt;
    }
    const double det = std::norm(a) - std::norm(b);
    if (!(det > 0.0)) return std::nullopt;
    const double root = std::sqrt(det);
    return CanonicalAutomorphism{a / root, b / root};
}

MoebiusMap conjugate(const MoebiusMap& s, const MoebiusMap& m) { return s * m * s.inverse(); }

}  // namespace

ExtendedComplex::ExtendedComplex(Complex z) : value_(z) {
    if (!finite_coords(z)) throw DomainError("ExtendedComplex: non-finite coordinates; use infinity()");
}

Complex ExtendedComplex::value() const {
    if (!value_) throw DomainError("ExtendedComplex: point at infinity has no finite value");
    return *value_;
}

DiskPoint::DiskPoint(Complex z) : value_(z) {
    if (!finite_coords(z) || !(std::abs(z) < 1.0)) {
        throw DomainError("DiskPoint: |z| must be < 1");
    }
}

DiskPoint DiskPoint::clamped(Complex z) {
    const double r = std::abs(z);
    if (finite_coords(z) && r >= 1.0 && r <= 1.0 + 1e-9) {
        return DiskPoint(z / r * std::nextafter(1.0, 0.0));
    }
    return DiskPoint(z);
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (!finite_coords(a) || !finite_coords(b) || !finite_coords(c) || !finite_coords(d)) {
        throw DomainError("MoebiusMap: non-finite coefficient");
    }
    const double s = scale();
    if (s == 0.0 || std::abs(determinant()) <= 1e-14 * s * s) {
        throw DomainError("MoebiusMap: degenerate matrix (ad - bc = 0)");
    }
}

MoebiusMap MoebiusMap::rotation(double theta) {
    const Complex half = std::polar(1.0, 0.5 * theta);
    return {half, 0.0, 0.0, std::conj(half)};
}

MoebiusMap MoebiusMap::disk_automorphism(Complex a, Complex b) {
    if (!(std::abs(a) > std::abs(b))) throw DomainError("disk automorphism requires |a| > |b|");
    return unchecked(a, b, std::conj(b), std::conj(a));
}

MoebiusMap MoebiusMap::unchecked(Complex a, Complex b, Complex c, Complex d) {
    if (!finite_coords(a) || !finite_coords(b) || !finite_coords(c) || !finite_coords(d)) {
        throw DomainError("MoebiusMap: non-finite coefficient");
    }
    return MoebiusMap(a, b, c, d, NoCheck{});
}

double MoebiusMap::scale() const {
    return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

ExtendedComplex MoebiusMap::operator()(const ExtendedComplex& z) const {
    if (z.is_infinite()) {
        if (c_ == Complex(0.0)) return ExtendedComplex::infinity();
        return a_ / c_;
    }
    const Complex w = z.value();
    const Complex den = c_ * w + d_;
    if (den == Complex(0.0)) return ExtendedComplex::infinity();
    return (a_ * w + b_) / den;
}

bool MoebiusMap::is_disk_automorphism(double tol) const {
    return canonical_automorphism(*this, tol).has_value();
}

bool MoebiusMap::is_identity(double tol) const {
    const double s = scale();
    return std::abs(b_) <= tol * s && std::abs(c_) <= tol * s && std::abs(a_ - d_) <= tol * s;
}

ExtendedComplex mobius_apply(const MoebiusMap& m, const ExtendedComplex& z) { return m(z); }

MoebiusMap mobius_compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    return MoebiusMap::unchecked(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                                 m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
}

bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
    const std::array<ExtendedComplex, 4> probes{Complex(0.0), Complex(1.0),
                                                ExtendedComplex::infinity(), Complex(0.0, 1.0)};
    for (const auto& p : probes) {
        const ExtendedComplex f = m1(p);
        const ExtendedComplex g = m2(p);
        if (f.is_infinite() != g.is_infinite()) return false;
        if (f.is_infinite()) continue;
        const double mag = std::max({1.0, std::abs(f.value()), std::abs(g.value())});
        if (std::abs(f.value() - g.value()) > tol * mag) return false;
    }
    return true;
}

FixedPoints fixed_points(const MoebiusMap& m) {
    if (m.is_identity()) throw DomainError("fixed_points: every point fixed (identity map)");
    const double s = m.scale();
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (std::abs(c) <= kGeometryTolerance * s) {
        if (std::abs(a - d) <= kGeometryTolerance * s) {
            return {ExtendedComplex::infinity(), ExtendedComplex::infinity()};
        }
        return {b / (d - a), ExtendedComplex::infinity()};
    }
    const Complex root = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
    const Complex p = (a - d) + root;
    const Complex q = (a - d) - root;
    // Take the root without cancellation directly, the other from the product -b/c.
    if (std::abs(p) >= std::abs(q)) {
        if (p == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
        return {-2.0 * b / p, p / (2.0 * c)};
    }
    return {q / (2.0 * c), -2.0 * b / q};
}

AutomorphismClass classify_automorphism(const MoebiusMap& m) {
    const auto canon = canonical_automorphism(m, kGeometryTolerance);
    if (!canon) throw DomainError("classify_automorphism: not a disk automorphism");
    const Complex a = canon->a;
    const Complex b = canon->b;
    const double mag = std::max(1.0, std::abs(a));
    if (std::abs(b) <= kGeometryTolerance * mag && std::abs(a.imag()) <= kGeometryTolerance * mag) {
        return AutomorphismClass::Identity;
    }
    // (a - d)^2 + 4bc = 4(|b|^2 - Im(a)^2): the squared fixed-point separation
    // times 4|c|^2.
    const double disc = std::norm(b) - a.imag() * a.imag();
    if (std::abs(disc) <= kGeometryTolerance * mag * mag) return AutomorphismClass::Parabolic;
    return disc < 0.0 ? AutomorphismClass::Elliptic : AutomorphismClass::Hyperbolic;
}

MoebiusMap NormalForm::transform() const {
    return std::visit(
        [](const auto& k) -> MoebiusMap {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Rotation>) {
                return MoebiusMap::rotation(k.angle);
            } else if constexpr (std::is_same_v<K, Translation>) {
                return {1.0, k.offset, 0.0, 1.0};
            } else {
                return {k.factor, 0.0, 0.0, 1.0};
            }
        },
        kind);
}

NormalForm normal_form(const MoebiusMap& m) {
    const AutomorphismClass cls = classify_automorphism(m);
    switch (cls) {
        case AutomorphismClass::Identity:
            throw DomainError("normal_form: identity map has no normal form");
        case AutomorphismClass::Parabolic: {
            // Double root of c z^2 + (d - a) z - b; the square root term vanishes.
            const Complex xi = (m.a() - m.d()) / (2.0 * m.c());
            const MoebiusMap s(0.0, 1.0, 1.0, -xi);
            const MoebiusMap t = conjugate(s, m);
            return {s, Translation{t.b() / t.d()}};
        }
        case AutomorphismClass::Elliptic: {
            const FixedPoints fp = fixed_points(m);
            ExtendedComplex inside = fp.minus;
            ExtendedComplex outside = fp.plus;
            if (inside.is_infinite() || std::abs(inside.value()) >= 1.0) std::swap(inside, outside);
            const Complex xi = inside.value();
            const MoebiusMap s = outside.is_infinite() ? MoebiusMap(1.0, -xi, 0.0, 1.0)
                                                       : MoebiusMap(1.0, -xi, 1.0, -outside.value());
            const MoebiusMap t = conjugate(s, m);
            return {s, Rotation{std::arg(t.a() / t.d())}};
        }
        case AutomorphismClass::Hyperbolic: {
            const FixedPoints fp = fixed_points(m);
            const MoebiusMap s(1.0, -fp.minus.value(), 1.0, -fp.plus.value());
            const MoebiusMap t = conjugate(s, m);
            return {s, Dilation{(t.a() / t.d()).real()}};
        }
    }
    throw DomainError("normal_form: unreachable");
}

GeneralizedCircle GeneralizedCircle::circle(Complex center, double radius) {
    if (!finite_coords(center) || !(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("GeneralizedCircle: radius must be positive and finite");
    }
    return GeneralizedCircle(Circle{center, radius});
}

GeneralizedCircle GeneralizedCircle::line(Complex point, Complex direction) {
    const double n = std::abs(direction);
    if (!finite_coords(point) || !(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("GeneralizedCircle: line direction must be non-zero");
    }
    return GeneralizedCircle(Line{point, direction / n});
}

GeneralizedCircle GeneralizedCircle::through(Complex p, Complex q, Complex r, double tol) {
    const Complex u = q - p;
    const Complex v = r - p;
    if (std::abs(u) == 0.0 || std::abs(v) == 0.0 || std::abs(r - q) == 0.0) {
        throw DomainError("GeneralizedCircle::through: points must be distinct");
    }
    const double area = cross(u, v);
    // Distance of r from the line through p and q.
    if (std::abs(area) / std::abs(u) <= tol * std::max({1.0, std::abs(u), std::abs(v)})) {
        return line(p, u);
    }
    const double den = 2.0 * area;
    const double uu = std::norm(u);
    const double vv = std::norm(v);
    const Complex offset((v.imag() * uu - u.imag() * vv) / den, (u.real() * vv - v.real() * uu) / den);
    return circle(p + offset, std::abs(offset));
}

double GeneralizedCircle::distance(Complex z) const {
    if (is_circle()) {
        const auto& c = as_circle();
        return std::abs(std::abs(z - c.center) - c.radius);
    }
    const auto& l = as_line();
    return std::abs(cross(l.direction, z - l.point));
}

std::vector<Complex> circle_intersections(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    if (!c1.is_circle() || !c2.is_circle()) throw DomainError("circle_intersections: circles only");
    const auto& [p1, r1] = c1.as_circle();
    const auto& [p2, r2] = c2.as_circle();
    const Complex axis = p2 - p1;
    const double d = std::abs(axis);
    if (d == 0.0) return {};
    // Foot of the common chord along the axis, and its half-length squared.
    const double along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h2 = r1 * r1 - along * along;
    const double scale = std::max({1.0, r1 * r1, r2 * r2});
    const Complex unit = axis / d;
    const Complex foot = p1 + along * unit;
    if (std::abs(h2) <= 1e-10 * scale) return {foot};
    if (h2 < 0.0) return {};
    const double h = std::sqrt(h2);
    const Complex normal = Complex(0.0, 1.0) * unit;
    return {foot + h * normal, foot - h * normal};
}

const char* to_string(CurveClass c) {
    switch (c) {
        case CurveClass::HyperbolicCircle: return "hyperbolic_circle";
        case CurveClass::Horocycle: return "horocycle";
        case CurveClass::Hypercycle: return "hypercycle";
        case CurveClass::HyperbolicLine: return "hyperbolic_line";
        case CurveClass::NotInDisk: return "not_in_disk";
    }
    return "unknown";
}

const char* to_string(AutomorphismClass c) {
    switch (c) {
        case AutomorphismClass::Identity: return "identity";
        case AutomorphismClass::Elliptic: return "elliptic";
        case AutomorphismClass::Parabolic: return "parabolic";
        case AutomorphismClass::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

CurveClass classify_euclidean_circle(const GeneralizedCircle& gc) {
    if (gc.is_line()) {
        const auto& l = gc.as_line();
        // Distance from the origin to the line.
        const double h = std::abs(cross(l.direction, -l.point));
        const double tol = kGeometryTolerance * std::max(1.0, std::abs(l.point));
        if (h >= 1.0 - tol) return CurveClass::NotInDisk;
        return h <= tol ? CurveClass::HyperbolicLine : CurveClass::Hypercycle;
    }
    const auto& c = gc.as_circle();
    const double m = std::abs(c.center);
    const double rho = c.radius;
    if (rho <= kGeometryTolerance) throw DomainError("classify_euclidean_circle: degenerate circle");
    const double tol = kGeometryTolerance * std::max({1.0, m, rho});
    if (m <= tol && std::abs(rho - 1.0) <= tol) return CurveClass::NotInDisk;  // the unit circle
    if (m + rho < 1.0 - tol) return CurveClass::HyperbolicCircle;
    if (std::abs(m + rho - 1.0) <= tol) return CurveClass::Horocycle;
    // Two crossings with the unit circle iff |1 - rho| < m < 1 + rho.
    if (m > std::abs(1.0 - rho) + tol && m < 1.0 + rho - tol) {
        // Orthogonal iff m^2 = 1 + rho^2.
        const double gap = m * m - 1.0 - rho * rho;
        return std::abs(gap) <= tol * std::max({1.0, m * m, rho * rho}) ? CurveClass::HyperbolicLine
                                                                       : CurveClass::Hypercycle;
    }
    return CurveClass::NotInDisk;
}

ExtendedComplex circle_inversion(const ExtendedComplex& z) {
    if (z.is_infinite()) return Complex(0.0);
    const Complex w = z.value();
    if (w == Complex(0.0)) return ExtendedComplex::infinity();
    return 1.0 / std::conj(w);
}

InvariantCurve invariant_curve(const MoebiusMap& m, const DiskPoint& z0) {
    if (!m.is_disk_automorphism()) throw DomainError("invariant_curve: not a disk automorphism");
    const Complex p0 = z0.value();
    const Complex p1 = m(p0).value();
    if (std::abs(p1 - p0) <= kGeometryTolerance * std::max(1.0, std::abs(p0))) {
        throw DomainError("invariant_curve: degenerate orbit (z0 is a fixed point)");
    }
    Complex p2 = m(p1).value();
    if (std::abs(p2 - p0) <= 1e-6 * std::abs(p1 - p0)) {
        // Orbit of period two: take a half step in the normal-form chart instead.
        const NormalForm nf = normal_form(m);
        const Complex w0 = nf.conjugator(p0).value();
        const Complex half = std::visit(
            [&](const auto& k) -> Complex {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Rotation>) {
                    return w0 * std::polar(1.0, 0.5 * k.angle);
                } else if constexpr (std::is_same_v<K, Translation>) {
                    return w0 + 0.5 * k.offset;
                } else {
                    return w0 * std::sqrt(k.factor);
                }
            },
            nf.kind);
        p2 = nf.conjugator.inverse()(half).value();
    }
    GeneralizedCircle carrier = GeneralizedCircle::through(p0, p1, p2);
    return {carrier, classify_euclidean_circle(carrier)};
}

double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w) {
    const double num = std::abs(std::conj(z.value()) * w.value() - 1.0);
    const double sep = std::abs(z.value() - w.value());
    return std::log1p(2.0 * sep / (num - sep));
}

double distance_delta(const DiskPoint& z, const DiskPoint& w) {
    const double rz = z.modulus();
    const double rw = w.modulus();
    return std::norm(z.value() - w.value()) / ((1.0 - rz) * (1.0 + rz) * (1.0 - rw) * (1.0 + rw));
}

double hyperbolic_distance_arcosh(const DiskPoint& z, const DiskPoint& w) {
    const double x = 2.0 * distance_delta(z, w);
    // acosh(1 + x) evaluated without forming 1 + x.
    return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

}  // namespace disk_squeeze
