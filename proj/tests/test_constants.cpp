#include "doctest.h"
#include "wzforge/constants.hpp"

#include <cmath>

using namespace wzforge;

namespace {

const Precision kPrec{40, 20};

bool close(const Real& a, const Real& b, int digits) {
    Real d = abs(a - b);
    return d <= pow(Real(10), -static_cast<long>(digits)) * max(Real(1), abs(b));
}

Real mpfr_const(int (*fn)(mpfr_ptr, mpfr_rnd_t)) {
    Real r = Real::with_bits(working_bits());
    fn(r.get(), MPFR_RNDN);
    return r;
}

Real mpfr_zeta_ui(unsigned long s) {
    Real r = Real::with_bits(working_bits());
    mpfr_zeta_ui(r.get(), s, MPFR_RNDN);
    return r;
}

Real dz(int a, int b) { return double_zeta(a, b, kPrec).value.re; }
Real z(int s) { return zeta(s, kPrec).value.re; }

}  // namespace

TEST_CASE("basic constants match MPFR") {
    PrecisionScope scope(kPrec.bits());
    CHECK(close(pi(), mpfr_const(mpfr_const_pi), 58));
    CHECK(close(log2_const(), mpfr_const(mpfr_const_log2), 58));
    CHECK(close(euler_gamma(), mpfr_const(mpfr_const_euler), 58));
    PrecisionScope hi(digits_to_bits(300));
    CHECK(close(pi(), mpfr_const(mpfr_const_pi), 298));
}

TEST_CASE("zeta against MPFR, both routes") {
    PrecisionScope scope(kPrec.bits());
    for (int s = 2; s <= 20; ++s) {
        ApproxValue v = zeta(s, kPrec);
        CHECK(close(v.value.re, mpfr_zeta_ui(static_cast<unsigned long>(s)), 55));
        CHECK(v.error_bound < 1e-50);
    }
    // even values from the Euler-Maclaurin route
    for (int s : {2, 4, 10}) CHECK(close(hurwitz_zeta(s, Real(1), kPrec).value.re, z(s), 55));
}

TEST_CASE("hurwitz zeta shift and duplication") {
    PrecisionScope scope(kPrec.bits());
    Real a(make_rational(2, 7));
    Real h = hurwitz_zeta(5, a, kPrec).value.re;
    Real h1 = hurwitz_zeta(5, a + Real(1), kPrec).value.re;
    CHECK(close(h - h1, pow(a, -5L), 55));
    // zeta(s,1/2) = (2^s - 1) zeta(s)
    Real half = hurwitz_zeta(3, Real(make_rational(1, 2)), kPrec).value.re;
    CHECK(close(half, Real(7) * z(3), 55));
}

TEST_CASE("double zeta identities") {
    PrecisionScope scope(kPrec.bits());
    CHECK(close(dz(2, 1), z(3), 55));
    // stuffle: zeta(a) zeta(b) = zeta(a,b) + zeta(b,a) + zeta(a+b)
    for (auto [a, b] : {std::pair{2, 3}, {3, 2}, {2, 2}, {4, 3}, {5, 2}})
        CHECK(close(z(a) * z(b), dz(a, b) + dz(b, a) + z(a + b), 54));
    // zeta(3,1) = pi^4/360, zeta(5,3) from its Euler sum value is not closed; use zeta(4,2)
    CHECK(close(dz(3, 1), pow(pi(), 4L) / Real(360), 55));
    CHECK(close(dz(4, 2), z(3) * z(3) - Real(make_rational(4, 3)) * z(6), 55));
    CHECK_THROWS_AS(double_zeta(1, 2, kPrec), MathError);
}

TEST_CASE("double zeta matches a brute-force nested sum") {
    const Precision p{12, 8};
    PrecisionScope scope(p.bits());
    // zeta(5,3) head to 4000 plus a crude tail estimate
    Real s(0), H(0);
    for (long m = 1; m < 4000; ++m) {
        s += H * pow(Real(m), -5L);
        H += pow(Real(m), -3L);
    }
    Real zeta3 = mpfr_zeta_ui(3);
    s += zeta3 / (Real(4) * pow(Real(4000), 4L));
    CHECK(close(double_zeta(5, 3, p).value.re, s, 14));
}

TEST_CASE("L_{-3} values") {
    PrecisionScope scope(kPrec.bits());
    Real s3 = sqrt(Real(3));
    CHECK(close(dirichlet_L_minus3(1, kPrec).value.re, pi() / (Real(3) * s3), 55));
    // L_{-3}(3) = 4 pi^3 / (81 sqrt 3)
    CHECK(close(dirichlet_L_minus3(3, kPrec).value.re, Real(4) * pow(pi(), 3L) / (Real(81) * s3), 55));
    // direct alternating-character sum with an averaged tail
    PrecisionScope lo(digits_to_bits(30));
    Real d(0);
    for (long m = 1; m <= 30000; ++m) {
        long r = m % 3;
        if (r == 1) d += pow(Real(m), -2L);
        if (r == 2) d -= pow(Real(m), -2L);
    }
    CHECK(close(dirichlet_L_minus3(2, kPrec).value.re, d, 8));
}

TEST_CASE("constant expression parsing and normal form") {
    ConstantExpr a = ConstantExpr::parse("1959/2*zeta(6) - 432*zeta(3)^2");
    CHECK(a.terms().size() == 2);
    CHECK(a == ConstantExpr::parse("-432*z3*z3 + 1959*zeta(6)/2"));
    CHECK(ConstantExpr::parse("I*I") == ConstantExpr::rational(-1));
    CHECK(ConstantExpr::parse("sqrt2^3") == ConstantExpr::parse("2*sqrt2"));
    CHECK(ConstantExpr::parse("pi^2/pi") == ConstantExpr::parse("pi"));
    CHECK(ConstantExpr::parse("8*pi/(9*sqrt3)") == ConstantExpr::parse("8/27*sqrt3*pi"));
    CHECK(ConstantExpr::parse("zeta(3) - zeta(3)").is_zero());
    CHECK(ConstantExpr::parse("3*I*pi^3").has_imaginary());
    CHECK_THROWS_AS(ConstantExpr::parse("1/zeta(3)"), MathError);
    CHECK_THROWS_AS(ConstantExpr::parse("zeta(1)"), MathError);
    CHECK_THROWS_AS(ConstantExpr::parse("foo(2)"), MathError);
    CHECK_THROWS_AS(ConstantExpr::parse("2 +"), MathError);
}

TEST_CASE("constant expression algebra is a ring on samples") {
    ConstantExpr x = ConstantExpr::parse("3*zeta(3) + pi^2/6"), y = ConstantExpr::parse("log2 - 2*I*zeta(5,3)"),
                 w = ConstantExpr::parse("sqrt3*L3(2) + 1/7");
    CHECK(x * (y + w) == x * y + x * w);
    CHECK((x * y) * w == x * (y * w));
    CHECK(x * y == y * x);
    CHECK(x - x == ConstantExpr());
}

TEST_CASE("constant expression str and json round trip") {
    for (const char* s : {"1959/2*zeta(6) - 432*zeta(3)^2", "-3*sqrt2*log2*pi^-1", "4*I*pi*zeta(5,3) + 1/3",
                          "L3(1)*sqrt3", "0"}) {
        ConstantExpr e = ConstantExpr::parse(s);
        CHECK(ConstantExpr::parse(e.str()) == e);
        CHECK(ConstantExpr::from_json(e.to_json()) == e);
    }
    CHECK(ConstantExpr::parse("2*log2").str() == "2*log2");
    CHECK_THROWS_AS(ConstantExpr::from_json(Json::parse(R"({"terms":[{"coeff":{"p":"1"}}]})")), MathError);
}

TEST_CASE("constant expression evaluation") {
    PrecisionScope scope(kPrec.bits());
    ApproxValue v = const_expr_eval(ConstantExpr::parse("3/pi"), kPrec);
    CHECK(close(v.value.re, Real(3) / pi(), 55));
    CHECK(v.error_bound < 1e-50);
    v = const_expr_eval(ConstantExpr::parse("2*log2 + 4*I*pi"), kPrec);
    CHECK(close(v.value.re, Real(2) * log2_const(), 55));
    CHECK(close(v.value.im, Real(4) * pi(), 55));
    v = const_expr_eval(ConstantExpr::parse("zeta(2) - pi^2/6"), kPrec);
    CHECK(abs(v.value.re) < pow(Real(10), -55L));
    CHECK(v.error_bound > 0.0);
}
