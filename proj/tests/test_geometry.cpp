#include <cmath>

#include "doctest.h"

#include "baker/geometry.hpp"
#include "baker/rng.hpp"

using namespace baker;

namespace {

// Independent oracle: direct scan of the defining union
// {Re z >= 0} + union over j >= 0 of {mu^j <= |z| <= mu^(j+1/2)}.
bool u0_oracle(cplx z, double mu) {
    if (z.real() >= 0.0) return true;
    const double a = std::abs(z);
    const double root = std::sqrt(mu);
    double pj = 1.0;
    for (int j = 0; j <= 600; ++j) {
        if (pj > a) return false;
        if (pj <= a && a <= pj * root) return true;
        pj *= mu;
    }
    return false;
}

} // namespace

TEST_CASE("skeleton membership matches the direct union scan") {
    CHECK(u0_contains(cplx{1.0, 5.0}, 4.0));
    // |z| = 1.5 sits in the first annulus [1, 2]; |z| = 3 sits in the gap
    // (2, 4) where the disc chain lives.
    CHECK(u0_contains(cplx{-1.5, 0.0}, 4.0));
    CHECK_FALSE(u0_contains(cplx{-3.0, 0.0}, 4.0));
    CHECK_FALSE(u0_contains(cplx{-0.5, 0.0}, 4.0));
    CHECK(u0_contains(cplx{0.0, 0.0}, 4.0));

    for (double mu : {4.0, 1024.0}) {
        Rng rng(11, "u0-grid");
        for (int i = 0; i < 4000; ++i) {
            const double r = std::exp(rng.uniform(std::log(1e-2), std::log(power_int(mu, 4))));
            const double a = rng.angle();
            const cplx z = r * cplx{std::cos(a), std::sin(a)};
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CHECK(u0_contains(z, mu) == u0_oracle(z, mu));
        }
    }
}

TEST_CASE("skeleton is forward invariant under the base map") {
    const ModelParams p = make_params(2.0, 1.5, 8);
    Rng rng(19, "u0-invariance");
    int checked = 0;
    for (int i = 0; i < 20000 && checked < 10000; ++i) {
        const double r = std::exp(rng.uniform(std::log(0.5), std::log(power_int(p.mu, 5))));
        const double a = rng.angle();
        const cplx z = r * cplx{std::cos(a), std::sin(a)};
        if (!u0_contains(z, p)) continue;
        ++checked;
        CHECK(u0_contains(p.mu * z, p));
    }
    CHECK(checked >= 10000);
}

TEST_CASE("modulus surrogate and expansion factor") {
    const double c16 = default_teich_constant();
    CHECK(teichmuller_modulus_bound(2.0, c16) == doctest::Approx(std::log(32.0)).epsilon(1e-13));
    CHECK(teichmuller_modulus_bound(2.0, c16) == doctest::Approx(3.4657359027997265).epsilon(1e-13));
    CHECK(choose_mu(2.0, c16) == doctest::Approx(1024.0).epsilon(1e-9));

    CHECK_THROWS_AS(teichmuller_modulus_bound(1.0, c16), invalid_parameter);
    CHECK_THROWS_AS(choose_mu(0.5, c16), invalid_parameter);

    double prev_bound = 0.0;
    double prev_mu = 0.0;
    for (double rho = 1.1; rho < 8.0; rho += 0.173) {
        const double b = teichmuller_modulus_bound(rho, c16);
        const double m = choose_mu(rho, c16);
        CHECK(b > std::log(rho));
        CHECK(b > prev_bound);
        CHECK(m > prev_mu);
        CHECK(std::log(m) / 2.0 >= b - 1e-12);
        prev_bound = b;
        prev_mu = m;
    }
}

TEST_CASE("canonical base disc for mu = 16") {
    const auto [zeta0, r0] = default_base_disc(16.0);
    CHECK(zeta0 == cplx{-8.0, 0.0});
    CHECK(r0 == 2.0);

    for (int k = 0; k < 256; ++k) {
        const double a = 2.0 * Rng::pi() * k / 256.0;
        const cplx z = zeta0 + r0 * cplx{std::cos(a), std::sin(a)};
        CHECK(z.real() < 0.0);
        CHECK(std::abs(z) > 4.0);
        CHECK(std::abs(z) < 16.0);
    }
}

TEST_CASE("parameter validation rejects misplaced base discs") {
    ModelParams p = make_params(2.0, 1.5, 4);
    CHECK_NOTHROW(validate(p));

    ModelParams bad = p;
    bad.zeta0 = cplx{-0.95 * p.mu, 0.0}; // reaches past |z| = mu
    CHECK_THROWS_AS(validate(bad), invalid_parameter);
    bad = p;
    bad.zeta0 = cplx{-1.1 * std::sqrt(p.mu), 0.0}; // reaches below sqrt(mu)
    CHECK_THROWS_AS(validate(bad), invalid_parameter);
    bad = p;
    bad.zeta0 = cplx{5.0, 500.0}; // touches the right half-plane
    CHECK_THROWS_AS(validate(bad), invalid_parameter);
    bad = p;
    bad.j_max = 0;
    CHECK_THROWS_AS(validate(bad), invalid_parameter);
}

TEST_CASE("disc chain is pairwise disjoint and avoids the skeleton annuli") {
    const ModelParams p = make_params(2.0, 1.5, 8);
    const double c0 = std::abs(p.zeta0);
    for (int j = 0; j < p.j_max; ++j) {
        CHECK(std::abs(disc_center(p, j + 1)) - disc_radius(p, j + 1) >
              std::abs(disc_center(p, j)) + disc_radius(p, j));
    }
    // Scale-free avoidance certificate.
    CHECK(c0 - p.r0 > std::sqrt(p.mu));
    CHECK(c0 + p.r0 < p.mu);

    Rng rng(5, "annuli-avoidance");
    for (int i = 0; i < 10000; ++i) {
        const int j = static_cast<int>(rng.index(static_cast<std::size_t>(p.j_max)));
        const cplx z = rng.in_round_annulus(power_int(p.mu, j),
                                            power_int(p.mu, j) * std::sqrt(p.mu));
        CHECK(u0_contains(z, p));
        CHECK_FALSE(enclosing_disc_level(z, p).has_value());
    }
}

TEST_CASE("disc lookup agrees with direct membership") {
    const ModelParams p = make_params(2.0, 1.5, 8);
    Rng rng(23, "disc-lookup");
    for (int i = 0; i < 5000; ++i) {
        const int j = static_cast<int>(rng.index(6));
        const cplx z = rng.in_disc(disc_center(p, j), disc_radius(p, j) * 0.999);
        const auto found = enclosing_disc_level(z, p);
        REQUIRE(found.has_value());
        CHECK(*found == j);
    }
    CHECK_FALSE(enclosing_disc_level(cplx{1.0, 0.0}, p).has_value());
    CHECK_FALSE(enclosing_disc_level(cplx{0.0, 0.0}, p).has_value());
}

TEST_CASE("round annulus modulus uses the log convention") {
    CHECK(RoundAnnulus{3.0, 2.0}.modulus() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    const ModelParams p = make_params(2.0, 1.5, 4);
    CHECK(skeleton_annulus(p, 3).inner == power_int(p.mu, 3));
    CHECK(skeleton_annulus(p, 3).modulus() == doctest::Approx(std::log(p.mu) / 2.0).epsilon(1e-12));
    CHECK(witness_annulus(p, 2).ratio == p.rho);
}

TEST_CASE("integer powers by squaring") {
    CHECK(power_int(2.0, 10) == 1024.0);
    CHECK(power_int(1024.0, 0) == 1.0);
    CHECK(power_int(10.0, 3) == 1000.0);
}
