#include "disk_squeeze/error.hpp"
#include "disk_squeeze/fock_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace disk_squeeze;
using namespace disk_squeeze::fock;
using test_support::random_disk;

namespace {

const Complex I{0.0, 1.0};

}  // namespace

TEST_CASE("squeezed state vectors") {
    const FockVector vac = squeezed_state_vector(0.0, 16);
    CHECK(vac[0] == Complex(1.0));
    for (std::size_t n = 1; n < 16; ++n) CHECK(vac[n] == Complex(0.0));

    const FockVector half = squeezed_state_vector(0.5, 128);
    CHECK(std::abs(half[2] - std::pow(0.75, 0.25) * (-0.5 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(half[2].real() - (-0.3290186)) < 1e-7);
    CHECK(std::abs(half.norm() * half.norm() - 1.0) <= 1e-10);
    for (std::size_t n = 1; n < 128; n += 2) CHECK(half[n] == Complex(0.0));

    CHECK_THROWS_AS(squeezed_state_vector(0.1, 1), DomainError);
}

TEST_CASE("norm deficit shrinks with the dimension") {
    const DiskPoint z(Complex(0.5, 0.3));
    double previous = 1.0;
    for (const std::size_t n : {8u, 16u, 32u, 64u}) {
        const double deficit = 1.0 - std::pow(squeezed_state_vector(z, n).norm(), 2);
        CHECK(deficit < previous);
        previous = deficit;
    }
}

TEST_CASE("overlap examples and oracle agreement") {
    CHECK(std::abs(overlap(0.0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(overlap(0.0, 0.5) - std::pow(0.75, 0.25)) < 1e-15);
    CHECK(std::abs(overlap(0.3, 0.3) - 1.0) < 1e-15);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const DiskPoint z(random_disk(rng, 0.8));
        const DiskPoint w(random_disk(rng, 0.8));
        const FockVector pz = squeezed_state_vector(z, 128);
        const FockVector pw = squeezed_state_vector(w, 128);
        REQUIRE(std::abs(overlap(z, w) - inner_product(pz, pw)) <= 1e-10);
        REQUIRE(std::abs(hs_distance_sq(z, w) - hs_distance_sq(pz, pw)) <= 1e-9);
    }
}

TEST_CASE("Hilbert-Schmidt distance") {
    CHECK(hs_distance_sq(0.3, 0.3) == 0.0);
    CHECK(std::abs(hs_distance_sq(0.0, 0.5) - (2.0 - std::sqrt(3.0))) <= 1e-12);
    CHECK(hs_distance_sq(0.0, 0.999999) > 1.99);
    CHECK(std::abs(hs_distance_sq(squeezed_state_vector(0.0), squeezed_state_vector(0.5)) - (2.0 - std::sqrt(3.0))) <=
          1e-9);
}

TEST_CASE("Hamiltonian matrices") {
    const FockOperator n = hamiltonian_matrix({1.0, 0.0}, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(n.matrix()(i, j) == Complex(i == j ? i : 0.0));
    }
    const FockOperator sq = hamiltonian_matrix({0.0, 2.0}, 4);
    CHECK(std::abs(sq.matrix()(0, 2) - std::sqrt(2.0)) < 1e-15);
    const FockOperator h = hamiltonian_matrix({0.7, Complex(0.3, -1.2)}, 64);
    CHECK((h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK_THROWS_AS(hamiltonian_matrix({1.0, 0.0}, 3), DomainError);
}

TEST_CASE("evolution in the number basis") {
    const FockVector psi = squeezed_state_vector(DiskPoint(Complex(0.2, 0.1)), 64);
    const FockVector same = evolve_vector(hamiltonian_matrix({2.0, 1.0}, 64), psi, 0.0);
    CHECK((same.amplitudes() - psi.amplitudes()).norm() == 0.0);

    const FockVector vac = evolve_vector(hamiltonian_matrix({1.0, 0.0}, 32), FockVector::basis(32, 0), 1.7);
    CHECK(std::abs(std::abs(vac[0]) - 1.0) < 1e-12);

    const FockVector out = evolve_vector(hamiltonian_matrix({2.0, 1.0}), squeezed_state_vector(0.0),
                                         std::numbers::pi / (2.0 * std::sqrt(3.0)));
    CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
    CHECK(std::abs(extract_disk_point(out).value() - 0.5) <= 1e-6);

    const FockVector unstable = evolve_vector(hamiltonian_matrix({0.0, 1.0}), squeezed_state_vector(0.0), 1.0);
    CHECK(std::abs(extract_disk_point(unstable).value() - I * std::tanh(1.0)) <= 1e-6);

    CHECK_THROWS_AS(evolve_vector(hamiltonian_matrix({1.0, 0.0}, 8), squeezed_state_vector(0.0, 16), 1.0),
                    DomainError);
}

TEST_CASE("flow matches the oracle in every regime, including complex alpha") {
    const QuadraticHamiltonian hs[] = {{2.0, 1.0}, {1.0, 1.0}, {0.0, 1.0}, {1.5, Complex(0.3, 0.8)},
                                       {0.5, Complex(0.0, 1.0)}};
    for (const auto& h : hs) {
        const Propagator prop(hamiltonian_matrix(h));
        const DiskPoint z0(Complex(0.1, -0.2));
        const FockVector psi0 = squeezed_state_vector(z0);
        for (double t = 0.05; t < 1.0; t += 0.1) {
            const DiskPoint expected = evolve(h, z0, t);
            if (expected.modulus() > 0.8) break;
            const FockVector psi = prop.evolve(psi0, t);
            REQUIRE(std::abs(psi.norm() - psi0.norm()) <= 1e-10);
            REQUIRE(std::abs(extract_disk_point(psi).value() - expected.value()) <= 1e-6);
        }
    }
}

TEST_CASE("extract_disk_point") {
    CHECK(extract_disk_point(squeezed_state_vector(0.0, 64)).value() == Complex(0.0));
    const Complex z(0.3, 0.2);
    CHECK(std::abs(extract_disk_point(squeezed_state_vector(DiskPoint(z), 128)).value() - z) <= 1e-12);
    CHECK_THROWS_WITH(extract_disk_point(FockVector::basis(8, 1)), doctest::Contains("not a squeezed-family state"));
    CHECK_THROWS_WITH(extract_disk_point(FockVector::basis(8, 2)), doctest::Contains("vacuum amplitude too small"));
}

TEST_CASE("annihilator residual") {
    CHECK(annihilator_residual(0.0, FockVector::basis(16, 0)) <= 1e-14);
    CHECK(annihilator_residual(0.5, squeezed_state_vector(0.5, 128)) <= 1e-8);
    CHECK(std::abs(annihilator_residual(0.5, FockVector::basis(16, 0)) - 0.5) < 1e-15);
}

TEST_CASE("Fubini-Study ratio") {
    CHECK(std::abs(fubini_study_ratio(0.0, 1e-3) - 1.0) <= 1e-5);
    CHECK(std::abs(fubini_study_ratio(0.5, 1e-3 * I) - 1.0) <= 1e-4);
    const double far = fubini_study_ratio(0.0, 0.5);
    CHECK(far < 1.0);
    CHECK(far == doctest::Approx(4.0 * (2.0 - std::sqrt(3.0)) / std::pow(std::log(3.0), 2)).epsilon(1e-12));
    CHECK_THROWS_AS(fubini_study_ratio(0.0, 0.0), DomainError);

    for (const Complex z : {Complex(0.0), Complex(0.5), Complex(0.0, 0.5)}) {
        const double e1 = std::abs(fubini_study_ratio(DiskPoint(z), 1e-2) - 1.0);
        const double e2 = std::abs(fubini_study_ratio(DiskPoint(z), 5e-3) - 1.0);
        CHECK(e1 / e2 >= 3.5);
        CHECK(e1 / e2 <= 4.5);
    }
}
