#include "disk_squeeze/error.hpp"
#include "disk_squeeze/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace disk_squeeze;
using test_support::random_automorphism;
using test_support::random_disk;

namespace {

const Complex I{0.0, 1.0};
const MoebiusMap kHyp{2.0, 1.0, 1.0, 2.0};
const MoebiusMap kPara{Complex(1, 1), Complex(0, -1), Complex(0, 1), Complex(1, -1)};

double ext_dist(const ExtendedComplex& a, Complex b) { return std::abs(a.value() - b); }

}  // namespace

TEST_CASE("hyperbolic distance examples") {
    CHECK(hyperbolic_distance(0.0, 0.0) == 0.0);
    CHECK(hyperbolic_distance(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(distance_delta(0.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(hyperbolic_distance_arcosh(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(std::acosh(5.0 / 3.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("distance formulas agree and are symmetric on random pairs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const DiskPoint z(random_disk(rng, 0.99));
        const DiskPoint w(random_disk(rng, 0.99));
        const double d1 = hyperbolic_distance(z, w);
        const double d2 = hyperbolic_distance_arcosh(z, w);
        REQUIRE(std::abs(d1 - d2) <= 1e-12 * std::max(1.0, d1));
        REQUIRE(std::abs(d1 - hyperbolic_distance(w, z)) <= 1e-12 * std::max(1.0, d1));
    }
}

TEST_CASE("mobius_apply examples") {
    CHECK(ext_dist(MoebiusMap::identity()(Complex(0.3, 0.1)), Complex(0.3, 0.1)) == 0.0);
    CHECK(ext_dist(kHyp(1.0), 1.0) < 1e-15);
    CHECK(kHyp(-2.0).is_infinite());
    CHECK(ext_dist(kHyp(ExtendedComplex::infinity()), 2.0) < 1e-15);
    CHECK(MoebiusMap::rotation(1.0)(ExtendedComplex::infinity()).is_infinite());
}

TEST_CASE("composition") {
    const MoebiusMap r = MoebiusMap::rotation(0.4) * MoebiusMap::rotation(0.9);
    CHECK(projectively_equal(r, MoebiusMap::rotation(1.3)));
    CHECK(projectively_equal(kPara * kPara.inverse(), MoebiusMap::identity()));
    const MoebiusMap sq = kHyp * kHyp;
    CHECK(sq.a() == Complex(5.0));
    CHECK(sq.b() == Complex(4.0));
    CHECK(sq.c() == Complex(4.0));
    CHECK(sq.d() == Complex(5.0));

    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const MoebiusMap m1 = random_automorphism(rng);
        const MoebiusMap m2 = random_automorphism(rng);
        const Complex z = random_disk(rng, 0.95);
        const Complex lhs = (m1 * m2)(z).value();
        const Complex rhs = m1(m2(z)).value();
        REQUIRE(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("fixed points") {
    const FixedPoints f = fixed_points(kHyp);
    CHECK(ext_dist(f.minus, -1.0) < 1e-14);
    CHECK(ext_dist(f.plus, 1.0) < 1e-14);

    const FixedPoints r = fixed_points(MoebiusMap::rotation(0.7));
    CHECK(ext_dist(r.minus, 0.0) < 1e-15);
    CHECK(r.plus.is_infinite());

    CHECK_THROWS_AS(fixed_points(MoebiusMap::identity()), DomainError);
    CHECK_THROWS_WITH(fixed_points(MoebiusMap::identity()), doctest::Contains("every point fixed"));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const MoebiusMap m = random_automorphism(rng);
        const FixedPoints fp = fixed_points(m);
        for (const auto& xi : {fp.minus, fp.plus}) {
            if (xi.is_infinite()) continue;
            REQUIRE(std::abs(m(xi).value() - xi.value()) <= 1e-10 * std::max(1.0, std::abs(xi.value())));
        }
        if (classify_automorphism(m) == AutomorphismClass::Elliptic) {
            const Complex in = std::abs(fp.minus.value()) < 1.0 ? fp.minus.value() : fp.plus.value();
            const ExtendedComplex out = std::abs(fp.minus.value()) < 1.0 ? fp.plus : fp.minus;
            REQUIRE(ext_dist(circle_inversion(in), out.value()) <= 1e-10 * std::max(1.0, std::abs(out.value())));
        }
    }
}

TEST_CASE("classify_automorphism") {
    CHECK(classify_automorphism(MoebiusMap::rotation(std::numbers::pi / 3)) == AutomorphismClass::Elliptic);
    CHECK(classify_automorphism(kHyp) == AutomorphismClass::Hyperbolic);
    CHECK(classify_automorphism(kPara) == AutomorphismClass::Parabolic);
    CHECK(classify_automorphism(MoebiusMap::identity()) == AutomorphismClass::Identity);
    CHECK_THROWS_AS(classify_automorphism(MoebiusMap(1.0, 2.0, 3.0, 4.0)), DomainError);
    const FixedPoints fp = fixed_points(kPara);
    CHECK(ext_dist(fp.minus, 1.0) < 1e-7);
}

TEST_CASE("normal forms conjugate to rotation, translation, dilation") {
    const NormalForm rot = normal_form(MoebiusMap::rotation(0.8));
    REQUIRE(std::holds_alternative<Rotation>(rot.kind));
    CHECK(std::get<Rotation>(rot.kind).angle == doctest::Approx(0.8).epsilon(1e-12));

    const NormalForm dil = normal_form(kHyp);
    REQUIRE(std::holds_alternative<Dilation>(dil.kind));
    const double factor = std::get<Dilation>(dil.kind).factor;
    CHECK((std::abs(factor - 3.0) < 1e-12 || std::abs(factor - 1.0 / 3.0) < 1e-12));

    const NormalForm tr = normal_form(kPara);
    CHECK(std::holds_alternative<Translation>(tr.kind));

    CHECK_THROWS_AS(normal_form(MoebiusMap::identity()), DomainError);

    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const MoebiusMap m = random_automorphism(rng);
        const NormalForm nf = normal_form(m);
        const MoebiusMap t = nf.transform();
        for (int j = 0; j < 100; ++j) {
            const Complex z = random_disk(rng, 0.95);
            const ExtendedComplex lhs = nf.conjugator(m(z));
            const ExtendedComplex rhs = t(nf.conjugator(z));
            if (lhs.is_infinite() || rhs.is_infinite()) continue;
            REQUIRE(std::abs(lhs.value() - rhs.value()) <= 1e-10 * std::max(1.0, std::abs(lhs.value())));
        }
    }
}

TEST_CASE("parabolic and hyperbolic normal forms at exact examples") {
    const NormalForm tr = normal_form(kPara);
    for (const Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.0, -0.7)}) {
        CHECK(std::abs(tr.conjugator(kPara(z)).value() - tr.transform()(tr.conjugator(z)).value()) < 1e-12);
    }
}

TEST_CASE("classify_euclidean_circle") {
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(0.25, 0.25)) == CurveClass::HyperbolicCircle);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(0.5, 0.5)) == CurveClass::Horocycle);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(std::sqrt(2.0), 1.0)) == CurveClass::HyperbolicLine);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(1.2, 0.5)) == CurveClass::Hypercycle);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(5.0, 1.0)) == CurveClass::NotInDisk);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(0.0, 1.0)) == CurveClass::NotInDisk);
    CHECK(classify_euclidean_circle(GeneralizedCircle::circle(0.0, 2.0)) == CurveClass::NotInDisk);
    CHECK(classify_euclidean_circle(GeneralizedCircle::line(0.0, I)) == CurveClass::HyperbolicLine);
    CHECK(classify_euclidean_circle(GeneralizedCircle::line(0.5, I)) == CurveClass::Hypercycle);
    CHECK(classify_euclidean_circle(GeneralizedCircle::line(1.5, I)) == CurveClass::NotInDisk);
    CHECK_THROWS_WITH(classify_euclidean_circle(GeneralizedCircle::circle(0.3, 1e-12)),
                      doctest::Contains("degenerate circle"));
}

TEST_CASE("circle_inversion") {
    CHECK(ext_dist(circle_inversion(0.5), 2.0) < 1e-15);
    CHECK(circle_inversion(0.0).is_infinite());
    CHECK(ext_dist(circle_inversion(ExtendedComplex::infinity()), 0.0) == 0.0);
    CHECK(ext_dist(circle_inversion(Complex(0.6, 0.8)), Complex(0.6, 0.8)) < 1e-15);
}

TEST_CASE("circle intersections") {
    const auto two = circle_intersections(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(1.0, 1.0));
    REQUIRE(two.size() == 2);
    for (const Complex p : two) {
        CHECK(std::abs(std::abs(p) - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(p - 1.0) - 1.0) < 1e-14);
    }
    const auto one = circle_intersections(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(2.0, 1.0));
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - 1.0) < 1e-9);
    CHECK(circle_intersections(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(5.0, 1.0)).empty());
}

TEST_CASE("invariant curves") {
    const InvariantCurve rot = invariant_curve(MoebiusMap::rotation(0.3), 0.5);
    REQUIRE(rot.carrier.is_circle());
    CHECK(std::abs(rot.carrier.as_circle().center) < 1e-12);
    CHECK(rot.carrier.as_circle().radius == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rot.curve_class == CurveClass::HyperbolicCircle);

    const InvariantCurve hyp = invariant_curve(kHyp, 0.0);
    REQUIRE(hyp.carrier.is_line());
    CHECK(hyp.carrier.distance(1.0) < 1e-12);
    CHECK(hyp.carrier.distance(-1.0) < 1e-12);
    CHECK(hyp.curve_class == CurveClass::HyperbolicLine);

    const InvariantCurve hyp_off = invariant_curve(kHyp, DiskPoint(Complex(0.0, 0.3)));
    CHECK(hyp_off.curve_class == CurveClass::Hypercycle);
    CHECK(hyp_off.carrier.distance(1.0) < 1e-10);

    const InvariantCurve para = invariant_curve(kPara, DiskPoint(Complex(0.2, 0.1)));
    CHECK(para.curve_class == CurveClass::Horocycle);
    CHECK(para.carrier.distance(1.0) < 1e-7);

    CHECK_THROWS_WITH(invariant_curve(MoebiusMap::rotation(0.3), 0.0), doctest::Contains("degenerate orbit"));

    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
        const MoebiusMap m = random_automorphism(rng);
        const DiskPoint z0(random_disk(rng, 0.9));
        const InvariantCurve c = invariant_curve(m, z0);
        Complex z = z0.value();
        for (int n = 0; n < 50; ++n) {
            z = m(z).value();
            REQUIRE(c.carrier.distance(z) <= 1e-10);
        }
    }
}

TEST_CASE("automorphisms are isometries") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 1000; ++i) {
        const MoebiusMap m = random_automorphism(rng);
        const DiskPoint z(random_disk(rng, 0.9));
        const DiskPoint w(random_disk(rng, 0.9));
        const double before = hyperbolic_distance(z, w);
        const double after = hyperbolic_distance(DiskPoint::clamped(m(z).value()), DiskPoint::clamped(m(w).value()));
        REQUIRE(std::abs(before - after) <= 1e-12 * std::max(1.0, before));
    }
}

TEST_CASE("value types reject bad input") {
    CHECK_THROWS_AS(DiskPoint(Complex(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(DiskPoint(Complex(NAN, 0.0)), DomainError);
    CHECK_THROWS_AS(MoebiusMap(1.0, 2.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(ExtendedComplex::infinity().value(), DomainError);
    CHECK(DiskPoint::clamped(Complex(1.0, 0.0)).modulus() < 1.0);
    CHECK_THROWS_AS(DiskPoint::clamped(Complex(1.1, 0.0)), DomainError);
}
