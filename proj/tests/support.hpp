#pragma once

#include "disk_squeeze/geometry.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace test_support {

using disk_squeeze::Complex;

// Uniform point in the disk of radius r_max.
inline Complex random_disk(std::mt19937_64& rng, double r_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = r_max * std::sqrt(u(rng));
    return std::polar(r, 2.0 * M_PI * u(rng));
}

inline Complex random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    return std::polar(1.0, u(rng));
}

inline disk_squeeze::MoebiusMap random_automorphism(std::mt19937_64& rng) {
    const Complex b = random_disk(rng, 0.9);
    return disk_squeeze::MoebiusMap::disk_automorphism(random_unit(rng), 0.0) *
           disk_squeeze::MoebiusMap::disk_automorphism(1.0, b);
}

}  // namespace test_support
