#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "spinladder/errors.hpp"
#include "spinladder/params.hpp"
#include "spinladder/regimes.hpp"

using namespace spinladder;

namespace {

doctest::Approx approx(double v, double eps = 1e-12)
{
    return doctest::Approx(v).epsilon(eps);
}

Classification boxed(double d1, double d2)
{
    return classify_weak_field(DriveParams(d1, d2, 1.0));
}

} // namespace

TEST_CASE("island boundary values")
{
    // Zero-field crossing detuning on the drive-1-off axis.
    CHECK(island_a_lower_delta(1.0, 1.0, +1) == approx(0.087695264839553043));
    CHECK(island_a_lower_delta(1.0, 1.0, -1) == approx(-0.71269526483955304));
    CHECK(island_a_lower_delta(0.0, 1.0, +1) == 0.0);

    CHECK(island_a_upper_omega1(0.0, 1.0) == approx(1.0823922002923940));
    CHECK(island_a_upper_omega1(-0.4, 1.0) == approx(0.54106716585935037));

    CHECK(island_a_seq2_upper_omega1(-0.12, 1.0, -1) == approx(0.59866518188383062));
    CHECK(island_a_seq2_upper_omega1(-0.12, 1.0, +1) == approx(0.89799777282574593));

    CHECK(resonance_23_omega2(-1.0, -1.0, 1.0) == approx(2.0));
    CHECK(resonance_23_omega2(-1.4, -1.4, 1.0) == approx(3.1749015732775087));

    CHECK(dynamical_resonance_omega2(-1.0, 1.0) == approx(1.0));
    CHECK(dynamical_resonance_omega2(-1.4, 1.0) == approx(0.91651513899116799));

    CHECK(island_d_upper_omega1(-0.9, 1.0) == approx(0.48565632804022768));
    CHECK(island_dprime_omega1(-1.4, 1.0) == approx(1.6622426766283819));
    CHECK(island_dprime_omega2(-1.4, 1.0) == approx(0.97296479283936297));

    const auto [lo, hi] = weak_field_limit_omega0(-0.05, -0.05);
    CHECK(lo == approx(0.14142135623730950));
    CHECK(hi == approx(lo, 1e-15));
    const auto [lo2, hi2] = weak_field_limit_omega0(-0.1, -0.4);
    CHECK(lo2 == approx(0.44721359549995794));
    CHECK(hi2 == approx(0.89442719099991588));
}

TEST_CASE("boundaries scale with the beat frequency")
{
    // Every curve is homogeneous of degree one in (detuning, delta).
    CHECK(island_d_upper_omega1(-1.8, 2.0) ==
          approx(2.0 * island_d_upper_omega1(-0.9, 1.0)));
    CHECK(island_dprime_omega2(-2.8, 2.0) ==
          approx(2.0 * island_dprime_omega2(-1.4, 1.0)));
    CHECK(island_a_upper_omega1(-0.8, 2.0) ==
          approx(2.0 * island_a_upper_omega1(-0.4, 1.0)));
    CHECK(resonance_23_omega2(-2.0, -2.0, 2.0) ==
          approx(2.0 * resonance_23_omega2(-1.0, -1.0, 1.0)));
}

TEST_CASE("boundary domains")
{
    CHECK_THROWS_AS(island_a_upper_omega1(1.2, 1.0), DomainError);
    CHECK_THROWS_AS(island_a_upper_omega1(-1.2, 1.0), DomainError);
    CHECK_THROWS_AS(island_a_seq2_upper_omega1(0.1, 1.0, -1), DomainError);
    CHECK_THROWS_AS(island_a_seq2_upper_omega1(-0.2, 1.0, -1), DomainError);
    CHECK_THROWS_AS(resonance_23_omega2(0.0, 0.2, 1.0), DomainError);
    CHECK_THROWS_AS(dynamical_resonance_omega2(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(dynamical_resonance_omega2(-2.5, 1.0), DomainError);
    CHECK_THROWS_AS(island_d_upper_omega1(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(island_d_upper_omega1(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(island_dprime_omega1(-2.5, 1.0), DomainError);
    CHECK_THROWS_AS(island_dprime_omega1(2.5, 1.0), DomainError);
    CHECK_THROWS_AS(island_dprime_omega2(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(weak_field_limit_omega0(-0.05, 0.05), DomainError);
    CHECK_THROWS_AS(weak_field_limit_omega0(0.0, 0.5), DomainError);

    CHECK_THROWS_AS(island_a_lower_delta(1.0, 0.0, +1), ValidationError);
    CHECK_THROWS_AS(island_a_lower_delta(1.0, -1.0, +1), ValidationError);
    CHECK_THROWS_AS(island_a_lower_delta(1.0, 1.0, 2), ValidationError);
    CHECK_THROWS_AS(island_a_seq2_upper_omega1(-0.12, 1.0, 0), ValidationError);
}

TEST_CASE("weak-field boxes")
{
    CHECK(boxed(-0.05, -0.05).regime == Regime::A);
    CHECK(boxed(-0.05, -0.05).confidence == approx(0.45));
    CHECK(boxed(-0.7, 0.7).regime == Regime::B);
    CHECK(boxed(-0.7, -0.3).regime == Regime::C);
    CHECK(boxed(0.3, 0.7).regime == Regime::C_tilde);
    CHECK(boxed(-0.9, -0.7).regime == Regime::D);
    CHECK(boxed(0.05, 1.7).regime == Regime::D_tilde);
    CHECK(boxed(0.7, 0.7).regime == Regime::none);

    // A box edge belongs to the lower box.
    CHECK(boxed(-0.5, -0.5).regime == Regime::D);
    CHECK(boxed(-0.5, -0.5).confidence == 0.0);

    // The boxes map onto their duals under the drive exchange.
    const struct {
        double d1, d2;
        Regime dual;
    } duals[] = {
        {-0.05, -0.05, Regime::B},
        {-0.7, 0.7, Regime::A},
        {-0.7, -0.3, Regime::C_tilde},
        {0.3, 0.7, Regime::C},
        {-0.9, -0.7, Regime::D_tilde},
        {0.05, 1.7, Regime::D},
    };
    for (const auto& c : duals) {
        const DriveParams ex = drive_exchange(DriveParams(c.d1, c.d2, 1.0));
        CHECK(classify_weak_field(ex).regime == c.dual);
        CHECK(classify_weak_field(ex).confidence ==
              approx(boxed(c.d1, c.d2).confidence));
    }

    CHECK(to_string(Regime::A) == "A");
    CHECK(to_string(Regime::C_tilde) == "C_tilde");
    CHECK(to_string(Regime::D_prime) == "D_prime");
    CHECK(to_string(Regime::none) == "none");
}

TEST_CASE("field-aware refinement of the detached-level box")
{
    const DriveParams d(-0.9, -0.9, 1.0);
    // Between the field-induced 1-2 resonance and the 2-3 resonance the
    // strong-field mechanism takes over.
    CHECK(classify_at_field(d, 0.5).regime == Regime::D);
    CHECK(classify_at_field(d, 1.2).regime == Regime::D_prime);
    CHECK(classify_at_field(d, 1.8).regime == Regime::D);
    // The window is half-open at the lower resonance.
    CHECK(classify_at_field(d, dynamical_resonance_omega2(-0.9, 1.0)).regime ==
          Regime::D);

    // Without a 2-3 resonance in reach the window is unbounded above.
    const DriveParams open(-0.9, 1.7, 1.0);
    CHECK(classify_weak_field(open).regime == Regime::D);
    CHECK(classify_at_field(open, 5.0).regime == Regime::D_prime);

    // Other boxes are untouched by the field.
    CHECK(classify_at_field(DriveParams(-0.05, -0.05, 1.0), 1.5).regime == Regime::A);

    CHECK_THROWS_AS(classify_at_field(d, -0.1), ValidationError);
}

TEST_CASE("overlay curves cover the map window")
{
    const int n = 200;
    const auto curves = boundary_overlays(1, 1.0, -2.2, 1.1, 2.2, n);

    std::vector<std::string> ids;
    for (const auto& c : curves)
        ids.push_back(c.id);
    const std::vector<std::string> expect = {
        "a_lower_plus", "a_lower_minus", "a_upper",        "res_23",
        "dynres_12",    "d_upper",       "dprime_omega1",  "dprime_omega2",
        "weakfield_limit", "line_res_12", "line_regime_edge",
    };
    CHECK(ids == expect);

    for (const auto& c : curves) {
        // Every sample lands either on the curve or in the excluded list.
        CHECK(c.points.size() + c.excluded.size() == static_cast<std::size_t>(n + 1));
        for (const CurvePoint& p : c.points) {
            CHECK(std::isfinite(p.omega0));
            CHECK(std::isfinite(p.delta));
        }
    }

    // The guide lines are horizontal.
    for (const auto& c : curves) {
        if (c.id == "line_res_12")
            for (const CurvePoint& p : c.points)
                CHECK(p.delta == -1.0);
        if (c.id == "line_regime_edge")
            for (const CurvePoint& p : c.points)
                CHECK(p.delta == -0.5);
        // Domain-limited curves really are limited on this window.
        if (c.id == "a_upper" || c.id == "res_23" || c.id == "d_upper")
            CHECK(!c.excluded.empty());
        // The zero-field crossing curve is entire.
        if (c.id == "a_lower_plus" || c.id == "a_lower_minus")
            CHECK(c.excluded.empty());
        // Spot check: the curve samples the closed form.
        if (c.id == "a_lower_plus") {
            const CurvePoint& last = c.points.back();
            CHECK(last.omega0 == approx(2.2));
            CHECK(last.delta == approx(island_a_lower_delta(2.2, 1.0, +1)));
        }
    }

    const auto seq2 = boundary_overlays(2, 1.0, -2.2, 1.1, 2.2, n);
    std::vector<std::string> ids2;
    for (const auto& c : seq2)
        ids2.push_back(c.id);
    const std::vector<std::string> expect2 = {
        "a_lower_minus", "a_upper_plus", "a_upper_minus",  "res_23",
        "dynres_12",    "d_upper",       "dprime_omega1",  "dprime_omega2",
        "weakfield_limit", "line_res_12", "line_regime_edge",
    };
    CHECK(ids2 == expect2);

    CHECK_THROWS_AS(boundary_overlays(3, 1.0, -2.2, 1.1, 2.2, n), ValidationError);
    CHECK_THROWS_AS(boundary_overlays(1, 0.0, -2.2, 1.1, 2.2, n), ValidationError);
    CHECK_THROWS_AS(boundary_overlays(1, 1.0, 1.1, -2.2, 2.2, n), ValidationError);
    CHECK_THROWS_AS(boundary_overlays(1, 1.0, -2.2, 1.1, 0.0, n), ValidationError);
    CHECK_THROWS_AS(boundary_overlays(1, 1.0, -2.2, 1.1, 2.2, 1), ValidationError);
}
