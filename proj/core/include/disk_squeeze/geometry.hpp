#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace disk_squeeze {

using Complex = std::complex<double>;

// Tolerance for "on the unit circle", "coincident fixed points" and
// collinearity decisions. Applied relative to max(1, |coefficients|).
inline constexpr double kGeometryTolerance = 1e-10;

// A point of the Riemann sphere: a finite complex number or infinity.
class ExtendedComplex {
public:
    ExtendedComplex(Complex z);  // NOLINT: implicit by design of the value type
    ExtendedComplex(double x) : ExtendedComplex(Complex(x, 0.0)) {}

    static ExtendedComplex infinity() { return ExtendedComplex(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    // Throws DomainError for the point at infinity.
    Complex value() const;

    friend bool operator==(const ExtendedComplex&, const ExtendedComplex&) = default;

private:
    ExtendedComplex() = default;
    std::optional<Complex> value_;
};

// A point of the open unit disk.
class DiskPoint {
public:
    explicit DiskPoint(Complex z);
    DiskPoint(double x) : DiskPoint(Complex(x, 0.0)) {}

    // Like the constructor, but a point that rounding pushed onto (or a hair
    // past) the unit circle is pulled back radially to the largest double
    // modulus below one. Points further out than 1e-9 still throw.
    static DiskPoint clamped(Complex z);

    Complex value() const { return value_; }
    double modulus() const { return std::abs(value_); }

    operator ExtendedComplex() const { return ExtendedComplex(value_); }  // NOLINT

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    Complex value_;
};

// z -> (a z + b) / (c z + d). Coefficients are stored unnormalized; two maps
// are the same transformation iff projectively_equal().
// Throws DomainError when ad - bc vanishes (relative to the largest entry).
class MoebiusMap {
public:
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    // z -> e^{i theta} z
    static MoebiusMap rotation(double theta);
    // [[a, b], [conj(b), conj(a)]]; requires |a| > |b|.
    static MoebiusMap disk_automorphism(Complex a, Complex b);
    // Skips the determinant test, for matrices invertible by construction
    // (products, inverses, flows) whose computed ad - bc may cancel to zero.
    static MoebiusMap unchecked(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex determinant() const { return a_ * d_ - b_ * c_; }
    double scale() const;

    ExtendedComplex operator()(const ExtendedComplex& z) const;
    MoebiusMap inverse() const { return unchecked(d_, -b_, -c_, a_); }

    // Tests c = conj(b), d = conj(a), |a| > |b| up to a common complex factor.
    bool is_disk_automorphism(double tol = kGeometryTolerance) const;
    bool is_identity(double tol = kGeometryTolerance) const;

private:
    struct NoCheck {};
    MoebiusMap(Complex a, Complex b, Complex c, Complex d, NoCheck) : a_(a), b_(b), c_(c), d_(d) {}
    Complex a_, b_, c_, d_;
};

ExtendedComplex mobius_apply(const MoebiusMap& m, const ExtendedComplex& z);

// (m1 o m2)(z) = m1(m2(z)); the matrix product [m1][m2].
MoebiusMap mobius_compose(const MoebiusMap& m1, const MoebiusMap& m2);
inline MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) {
    return mobius_compose(m1, m2);
}

// Compares the images of 0, 1, infinity and i.
bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2,
                        double tol = kGeometryTolerance);

struct FixedPoints {
    ExtendedComplex minus;
    ExtendedComplex plus;
};

// Roots of c z^2 + (d - a) z - b = 0, labelled by the sign in front of the
// principal square root. When c = 0 the finite root (if any) is `minus` and
// infinity is `plus`. Throws DomainError for the identity.
FixedPoints fixed_points(const MoebiusMap& m);

enum class AutomorphismClass { Identity, Elliptic, Parabolic, Hyperbolic };

// Throws DomainError if `m` is not a disk automorphism.
AutomorphismClass classify_automorphism(const MoebiusMap& m);

struct Rotation {
    double angle;  // radians
};
struct Translation {
    Complex offset;
};
struct Dilation {
    double factor;  // positive
};

struct NormalForm {
    MoebiusMap conjugator;  // S with S o M = T o S
    std::variant<Rotation, Translation, Dilation> kind;

    // The model transformation T.
    MoebiusMap transform() const;
};

// Elliptic maps are conjugated by S = (z - xi_in) / (z - xi_out) so that the
// fixed point inside the disk goes to 0 (S = z - xi_in when xi_out is
// infinite); hyperbolic maps by S = (z - xi_-) / (z - xi_+); parabolic maps by
// S = 1 / (z - xi). Throws DomainError for the identity or a non-automorphism.
NormalForm normal_form(const MoebiusMap& m);

// Euclidean circle or straight line.
class GeneralizedCircle {
public:
    struct Circle {
        Complex center;
        double radius;
    };
    struct Line {
        Complex point;
        Complex direction;  // unit modulus
    };

    static GeneralizedCircle circle(Complex center, double radius);
    static GeneralizedCircle line(Complex point, Complex direction);

    // Circle through three points, or the line through them when they are
    // collinear within `tol`. Throws DomainError when two points coincide.
    static GeneralizedCircle through(Complex p, Complex q, Complex r,
                                     double tol = kGeometryTolerance);

    bool is_circle() const { return std::holds_alternative<Circle>(shape_); }
    bool is_line() const { return std::holds_alternative<Line>(shape_); }
    const Circle& as_circle() const { return std::get<Circle>(shape_); }
    const Line& as_line() const { return std::get<Line>(shape_); }

    // Unsigned Euclidean distance from z to the curve.
    double distance(Complex z) const;

private:
    explicit GeneralizedCircle(std::variant<Circle, Line> s) : shape_(s) {}
    std::variant<Circle, Line> shape_;
};

// Intersection points of two Euclidean circles; a tangency (discriminant within
// 1e-10 of zero, relative) yields a single point. Line variants are rejected.
std::vector<Complex> circle_intersections(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

enum class CurveClass { HyperbolicCircle, Horocycle, Hypercycle, HyperbolicLine, NotInDisk };

const char* to_string(CurveClass c);
const char* to_string(AutomorphismClass c);

// Throws DomainError("degenerate circle") for radius <= kGeometryTolerance.
CurveClass classify_euclidean_circle(const GeneralizedCircle& c);

// z -> 1 / conj(z), exchanging 0 and infinity.
ExtendedComplex circle_inversion(const ExtendedComplex& z);

struct InvariantCurve {
    GeneralizedCircle carrier;
    CurveClass curve_class;
};

// The Euclidean circle (or line) carrying the orbit of z0 under powers of m.
InvariantCurve invariant_curve(const MoebiusMap& m, const DiskPoint& z0);

// ln((|conj(z) w - 1| + |z - w|) / (|conj(z) w - 1| - |z - w|))
double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w);

// |z - w|^2 / ((1 - |z|^2)(1 - |w|^2))
double distance_delta(const DiskPoint& z, const DiskPoint& w);

// arcosh(1 + 2 delta(z, w)); the same distance through a second formula.
double hyperbolic_distance_arcosh(const DiskPoint& z, const DiskPoint& w);

}  // namespace disk_squeeze
