#include "helpers.hpp"

#include "flatcurve/weierstrass.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace th;
using Catch::Approx;

namespace {

ProductSpec integer_spec(long n, int degree)
{
    ProductSpec s;
    s.origin_exponent = 1;
    for (long k = 1; k <= n; ++k) {
        s.zeros.push_back(cplx(double(k), 0));
        s.zeros.push_back(cplx(-double(k), 0));
        s.degrees.push_back(degree);
        s.degrees.push_back(degree);
    }
    return s;
}

}  // namespace

TEST_CASE("elementary factor values", "[weierstrass]")
{
    CHECK(elementary_factor(cplx(3.7, -1), 1, 0) == cplx(1, 0));
    CHECK(std::abs(elementary_factor(1, 2, 1) - std::exp(0.5)) < 1e-15);
    CHECK(std::abs(elementary_factor(1, 1, 2) - std::exp(1.5)) < 1e-14);
    CHECK(error_code([] { elementary_factor(1, 0, 1); }) == "ZeroDivisor");
}

TEST_CASE("log-space factors match the direct product", "[weierstrass]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    std::uniform_int_distribution<int> deg(0, 4);
    for (int i = 0; i < 100; ++i) {
        cplx z(u(rng), u(rng)), zn(u(rng), u(rng));
        if (std::abs(zn) < 0.2) zn += 1.0;
        int d = deg(rng);
        cplx direct = (1.0 - z / zn) * elementary_factor(z, zn, d);
        cplx l = log_factor(z, zn, d);
        double rel = std::abs(std::exp(l.real()) - std::abs(direct)) / std::abs(direct);
        CHECK(rel < 1e-12);
        CHECK(std::abs(std::exp(l) - direct) <= 1e-12 * std::abs(direct));
    }
}

TEST_CASE("eval_f vanishes exactly at the window zeros", "[weierstrass]")
{
    auto w = seq(SequenceKind::GaussianLattice, 3);
    auto spec = make_product(w, std::nullopt, DegreeRule::Fixed, 2);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto v = eval_f(spec, w.raw(i).to_complex());
        CHECK(v.exact_zero);
        CHECK(v.value == cplx(0, 0));
    }
    CHECK_FALSE(eval_f(spec, cplx(0.5, 0.5)).exact_zero);
}

TEST_CASE("single factor without convergence term", "[weierstrass]")
{
    ProductSpec s;
    s.zeros = {cplx(1, 0)};
    s.degrees = {0};
    auto v = eval_f(s, 3);
    CHECK(v.value.real() == Approx(-2).epsilon(1e-14));
    CHECK(std::abs(v.value.imag()) < 1e-14);
}

TEST_CASE("integer zeros approximate the sine product", "[weierstrass]")
{
    double previous = 1;
    for (long n : {100L, 1000L, 10000L}) {
        auto v = eval_f(integer_spec(n, 1), 0.5);
        double err = std::abs(v.value - cplx(1 / std::numbers::pi, 0));
        CHECK(err < previous);
        previous = err;
    }
    // Away from the real axis too: z Π(1 - z²/n²) → sin(πz)/π.
    cplx z(0.3, 0.4);
    auto v = eval_f(integer_spec(20000, 1), z);
    CHECK(std::abs(v.value - std::sin(std::numbers::pi * z) / std::numbers::pi) < 1e-4);
}

TEST_CASE("make_product reads raw coordinates and sets e0", "[weierstrass]")
{
    auto pos = seq(SequenceKind::PositiveIntegers, 5);
    auto spec = make_product(pos);
    CHECK(spec.origin_exponent == 0);
    CHECK(spec.zeros.front() == cplx(1, 0));
    CHECK(spec.degrees == std::vector<int>{1, 2, 3, 4, 5});

    auto ints = seq(SequenceKind::AllIntegers, 5);
    auto s2 = make_product(ints, 3);
    CHECK(s2.origin_exponent == 1);
    CHECK(s2.factors() == 2);
    CHECK(error_code([&] { make_product(ints, 99); }) == "InvalidArgument");
}

TEST_CASE("degree rules", "[weierstrass]")
{
    auto ints = seq(SequenceKind::PositiveIntegers, 2000);
    CHECK(estimate_uniform_degree(ints).degree == 1);
    CHECK(choose_degrees(ints, DegreeRule::Uniform).front() == 1);

    std::vector<ZPoint> pow2;
    for (int k = 0; k <= 40; ++k) pow2.push_back(ZPoint(Rational(mpz_class(1) << k), 0));
    auto w = explicit_window(pow2, std::ldexp(1.0, 41));
    CHECK(estimate_uniform_degree(w).degree == 0);

    auto d = choose_degrees(seq(SequenceKind::GaussianLattice, 3));
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == int(i + 1));

    auto lattice = seq(SequenceKind::GaussianLattice, 40);
    CHECK(estimate_uniform_degree(lattice).degree == 2);
}

TEST_CASE("overflow reports the log magnitude", "[weierstrass]")
{
    ProductSpec s;
    for (int k = 0; k < 400; ++k) {
        s.zeros.push_back(cplx(1e-3, 0));
        s.degrees.push_back(0);
    }
    try {
        eval_f(s, 10);
        FAIL("expected NonFinite");
    } catch (const NonFiniteError& e) {
        CHECK(e.code() == "NonFinite");
        CHECK(e.log10_magnitude() == Approx(400 * std::log10(1e4 - 1)).epsilon(1e-9));
    }
}

TEST_CASE("argument principle counts zeros", "[weierstrass]")
{
    auto spec = make_product(seq(SequenceKind::AllIntegers, 20), std::nullopt, DegreeRule::Fixed, 1);
    CHECK(count_zeros(spec, {0.5, -0.5, 1.5, 0.5}) == 1);
    CHECK(count_zeros(spec, {0.5, -0.5, 2.5, 0.5}) == 2);
    CHECK(count_zeros(spec, {0.2, 0.2, 0.8, 0.8}) == 0);
    CHECK(count_zeros(spec, {-3.5, -1, 3.5, 1}) == 7);
    CHECK(error_code([&] { count_zeros(spec, {1, -1, 2.5, 1}); }) == "ContourThroughZero");
    CHECK(error_code([&] { count_zeros(spec, {0.5, -0.5, 1.5, 0.5}, 10); }) == "InvalidArgument");

    auto lattice = make_product(seq(SequenceKind::GaussianLattice, 6), std::nullopt, DegreeRule::Fixed, 2);
    CHECK(count_zeros(lattice, {-1.5, -1.5, 1.5, 1.5}) == 9);
}

TEST_CASE("Newton refinement", "[weierstrass]")
{
    auto spec = make_product(seq(SequenceKind::AllIntegers, 20), std::nullopt, DegreeRule::Fixed, 1);
    auto zc = refine_zero(spec, cplx(1.01, 0));
    CHECK(std::abs(zc.refined - cplx(1, 0)) < 1e-10);
    CHECK(zc.residual < 1e-10);
    CHECK(zc.zero == cplx(1, 0));
    CHECK(zc.winding == 1);

    auto fixed = refine_zero(spec, cplx(2, 0));
    CHECK(fixed.refined == cplx(2, 0));
    CHECK(fixed.residual == 0);
    CHECK(fixed.iterations == 0);

    // Midway: either a convergence to some zero or a reported failure.
    try {
        auto mid = refine_zero(spec, cplx(1.5, 0));
        CHECK(mid.residual < 1e-8);
    } catch (const FlatError& e) {
        CHECK(e.code() == "NoConvergence");
    }
}
