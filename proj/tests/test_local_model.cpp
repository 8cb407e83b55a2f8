#include <cmath>

#include "doctest.h"

#include "baker/geometry.hpp"
#include "baker/local_model.hpp"
#include "baker/rng.hpp"

using namespace baker;

namespace {

// Small fully explicit model: unit disc at the origin, mu = 2, target 5.
LocalModelSpec toy_model() {
    static LocalModelSpec spec =
        select_epsilon(cplx{0.0, 0.0}, 1.0, 0.5, 0.4, cplx{5.0, 0.0}, 2.0, 1.5);
    return spec;
}

} // namespace

TEST_CASE("rational local map hits its anchor values") {
    const LocalModelSpec spec = toy_model();
    CHECK(spec.alpha == cplx{2.5, 0.0}); // (5 - 2*0) / (1*2)

    const SphereValue at0 = phi_eval(spec, cplx{0.0, 0.0});
    REQUIRE(at0.finite);
    CHECK(std::abs(at0.value - spec.alpha) <= 1e-12 * std::abs(spec.alpha));

    CHECK_FALSE(phi_eval(spec, spec.pole).finite);

    const double sq = std::sqrt(spec.eps);
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const SphereValue at_crit = phi_eval(spec, spec.crit_w[k]);
        REQUIRE(at_crit.finite);
        const cplx expected = spec.pole + sign * 2.0 * sq;
        CHECK(std::abs(at_crit.value - expected) <= 1e-12 * std::abs(expected));
    }
}

TEST_CASE("critical identities hold against difference quotients") {
    const LocalModelSpec spec = toy_model();
    const double h = 1e-8;
    for (int k = 0; k < 2; ++k) {
        const cplx wc = spec.crit_w[k];
        // [phi(w+h) - phi(w-h)] / 2h through the cancellation-free product form.
        const cplx fd_derivative = 1.0 - spec.eps / ((wc + h - spec.pole) * (wc - h - spec.pole));
        CHECK(std::abs(fd_derivative) <= 1e-12);

        // Closed-form derivative vanishes exactly at the stored points.
        const cplx closed = 1.0 - spec.eps / ((wc - spec.pole) * (wc - spec.pole));
        CHECK(std::abs(closed) <= 1e-12);
    }

    // phi_diff agrees with direct subtraction away from cancellation.
    Rng rng(3, "phi-diff");
    for (int i = 0; i < 200; ++i) {
        const cplx w1 = rng.in_disc(cplx{0.0, 0.0}, 0.45);
        const cplx w2 = rng.in_disc(cplx{0.0, 0.0}, 0.45);
        const SphereValue f1 = phi_eval(spec, w1);
        const SphereValue f2 = phi_eval(spec, w2);
        REQUIRE(f1.finite);
        REQUIRE(f2.finite);
        CHECK(std::abs(phi_diff(spec, w1, w2) - (f1.value - f2.value)) <=
              1e-16 + 1e-12 * std::abs(f1.value - f2.value));
    }
}

TEST_CASE("critical data in plane coordinates") {
    const LocalModelSpec spec = toy_model();
    const CriticalData cd = critical_data(spec);
    const double sq = std::sqrt(spec.eps);

    CHECK(std::abs(cd.v1 - cd.v2) ==
          doctest::Approx(4.0 * spec.mu * spec.radius * sq).epsilon(1e-12));
    CHECK(cd.v1 != cd.v2);

    const cplx image_center = spec.mu * spec.center;
    CHECK(std::abs(cd.v1 - image_center) < spec.value_clearance / 2.0);
    CHECK(std::abs(cd.v2 - image_center) < spec.value_clearance / 2.0);

    // Critical points inside the inner disc.
    CHECK(std::abs(cd.c1 - spec.center) < spec.inner_radius);
    CHECK(std::abs(cd.c2 - spec.center) < spec.inner_radius);
}

TEST_CASE("full local evaluation: anchors, boundary, pole") {
    const LocalModelSpec spec = toy_model();

    const SphereValue at_center = g_eval(spec, spec.center);
    REQUIRE(at_center.finite);
    CHECK(at_center.value == spec.target);

    CHECK_FALSE(g_eval(spec, spec.pole_plane).finite);

    for (int k = 0; k < 512; ++k) {
        const double a = 2.0 * Rng::pi() * k / 512.0;
        const cplx z = spec.center + spec.radius * cplx{std::cos(a), std::sin(a)};
        const SphereValue v = g_eval(spec, z);
        REQUIRE(v.finite);
        CHECK(std::abs(v.value - spec.mu * z) <= 1e-12 * spec.mu * spec.radius);
    }
}

TEST_CASE("interpolation matches the meromorphic piece on the inner circle") {
    const LocalModelSpec spec = toy_model();
    const double ce = spec.unit_inner();
    for (int k = 0; k < 512; ++k) {
        const double a = 2.0 * Rng::pi() * k / 512.0;
        const cplx dir{std::cos(a), std::sin(a)};
        const SphereValue mero = phi_eval(spec, ce * dir);
        const SphereValue blend = local_unit_map(spec, ce * dir * (1.0 + 1e-15));
        REQUIRE(mero.finite);
        REQUIRE(blend.finite);
        CHECK(std::abs(mero.value - blend.value) <= 1e-12);
    }
}

TEST_CASE("inner-circle image clears the value band and winds once") {
    const LocalModelSpec spec = toy_model();
    const CircleImageAudit audit = audit_inner_circle_image(spec, 512);
    CHECK(audit.winding == 1);
    CHECK(audit.simple);
    CHECK(audit.min_abs > spec.value_clearance / (spec.mu * spec.radius));
    CHECK(audit.max_abs < 1.0);

    // Plane form of the clearance band on sampled annulus radii.
    Rng rng(7, "clearance");
    for (int i = 0; i < 2000; ++i) {
        const cplx w = rng.in_round_annulus(spec.unit_inner(), 1.0 - 1e-9);
        const SphereValue v = local_unit_map(spec, w);
        REQUIRE(v.finite);
        const double dist = spec.mu * spec.radius * std::abs(v.value);
        CHECK(dist > spec.value_clearance);
        CHECK(dist < spec.mu * spec.radius);
    }
}

TEST_CASE("interpolation dilatation shrinks as eps halves") {
    const LocalModelSpec spec = toy_model();
    std::vector<double> worst;
    for (int k = 0; k < 7; ++k) {
        const LocalModelSpec cand =
            make_local_model(spec.center, spec.radius, spec.inner_radius, spec.value_clearance,
                             spec.target, spec.mu, spec.eps / power_int(2.0, k));
        worst.push_back(max_interpolation_dilatation(cand, 24, 96, 1e-5));
    }
    for (std::size_t k = 1; k < worst.size(); ++k) CHECK(worst[k] <= worst[k - 1] * 1.05);
    CHECK(worst.back() < worst.front() / 4.0);
    CHECK(worst.back() < 0.05);
}

TEST_CASE("selected eps passes every admissibility stage") {
    const LocalModelSpec spec = toy_model();
    const Admissibility adm = check_admissibility(spec, 1.5);
    CHECK(adm.points_inside);
    CHECK(adm.values_within_half);
    CHECK(adm.circle_clearance);
    CHECK(adm.winding_simple);
    CHECK(adm.dilatation_ok);
    CHECK(adm.max_dilatation <= (1.5 - 1.0) / (1.5 + 1.0));
    CHECK(spec.eps_halvings > 0);

    // Doubling past the selector's choice must break some stage.
    const LocalModelSpec doubled =
        make_local_model(spec.center, spec.radius, spec.inner_radius, spec.value_clearance,
                         spec.target, spec.mu, 2.0 * spec.eps);
    CHECK_FALSE(check_admissibility(doubled, 1.5).admissible());
}

TEST_CASE("selector terminates on the canonical first sub-disc") {
    const double mu = 1024.0;
    const double r0 = 74.509667991878092;
    const cplx zeta0{-181.01933598375618, 0.0};
    const double rho = r0 / 3.0;
    const LocalModelSpec spec =
        select_epsilon(zeta0, rho, rho / 2.0, mu * rho / 4.0, cplx{0.0, 0.0}, mu, 1.5);
    CHECK(spec.eps > 0.0);
    CHECK(check_admissibility(spec, 1.5).admissible());
    const SphereValue v = g_eval(spec, zeta0);
    REQUIRE(v.finite);
    CHECK(v.value == cplx{0.0, 0.0});
}

TEST_CASE("selector failure paths") {
    // Value clearance far below what any positive eps can honour.
    CHECK_THROWS_AS(select_epsilon(cplx{0.0, 0.0}, 1.0, 0.5, 1e-200, cplx{5.0, 0.0}, 2.0, 1.5),
                    eps_search_exhausted);
    // Target inside the image of the disc.
    CHECK_THROWS_AS(select_epsilon(cplx{0.0, 0.0}, 1.0, 0.5, 0.4, cplx{1.0, 0.0}, 2.0, 1.5),
                    invalid_parameter);
    CHECK_THROWS_AS(make_local_model(cplx{0.0, 0.0}, 1.0, 1.5, 0.4, cplx{5.0, 0.0}, 2.0, 0.01),
                    invalid_parameter);
}

TEST_CASE("Wirtinger quotient on known maps") {
    const double h = 0x1.0p-16;

    const auto scale = [](cplx z) { return 2.0 * z; };
    const auto mu0 = beltrami_at(scale, cplx{0.5, 0.25}, h);
    REQUIRE(mu0.has_value());
    CHECK(std::abs(*mu0) <= 1e-10);

    const cplx k{0.25, 0.125};
    const auto affine = [k](cplx z) { return z + k * std::conj(z); };
    const auto mu1 = beltrami_at(affine, cplx{0.5, 0.25}, h);
    REQUIRE(mu1.has_value());
    CHECK(std::abs(*mu1 - k) <= 1e-11);

    // Meromorphic piece is conformal away from the pole.
    const LocalModelSpec spec = toy_model();
    const auto inner = [&](cplx w) { return phi_eval(spec, w).value; };
    Rng rng(13, "inner-dilatation");
    for (int i = 0; i < 500; ++i) {
        cplx w = rng.in_disc(cplx{0.0, 0.0}, spec.unit_inner() - 1e-3);
        if (std::abs(w - spec.pole) < 0.1) continue;
        const auto m = beltrami_at(inner, w, 1e-5);
        REQUIRE(m.has_value());
        CHECK(std::abs(*m) <= 1e-6);
    }

    // Near-pole stencils are refused.
    const cplx pole = spec.pole;
    CHECK_FALSE(beltrami_at(inner, spec.pole + cplx{5e-5, 0.0}, 1e-5,
                            std::span<const cplx>(&pole, 1))
                    .has_value());
}
