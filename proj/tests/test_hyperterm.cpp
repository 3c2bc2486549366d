#include "doctest.h"
#include "wzforge/hyperterm.hpp"

#include <random>

using namespace wzforge;

namespace {

const Precision kPrec{30, 20};

HyperTerm T(const char* json) { return parse_term_text(json); }
RationalFunction RF(const char* s) { return RationalFunction::parse(s); }
BigRational Q(long p, long q = 1) { return make_rational(p, q); }

bool close(const Complex& a, const Complex& b, double tol) {
    return abs(a - b).to_double() <= tol * std::max(1.0, abs(b).to_double());
}

Real mpfr_gamma_of(const Real& x) {
    Real r = Real::with_bits(working_bits());
    mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

// f_1(k) = Gamma(k+1)^2 / (k^2 Gamma(2k+1))
const char* kF1 = R"({"prefactor":{"num":[["0","0","1","1"]],"den":[["0","2","1","1"]]},
  "gammas":[{"cn":"0","ck":"1","offset":{"p":"1","q":"1"},"exp":"2"},
            {"cn":"0","ck":"2","offset":{"p":"1","q":"1"},"exp":"-1"}],"domain":{"n0":"0","k0":"1"}})";

// f_2(k) = e^{pi i k} Gamma(k+1)^2 / (k^3 Gamma(2k+1))
const char* kF2 = R"({"prefactor":{"num":[["0","0","1","1"]],"den":[["0","3","1","1"]]},
  "phase":{"var":"x","p":"1","q":"1"},
  "gammas":[{"cn":"0","ck":"1","offset":{"p":"1","q":"1"},"exp":"2"},
            {"cn":"0","ck":"2","offset":{"p":"1","q":"1"},"exp":"-1"}],"domain":{"n0":"0","k0":"1"}})";

// (21k-8) / (k^3 C(2k,k)^3) = (21k-8) Gamma(k+1)^6 / (k^3 Gamma(2k+1)^3)
const char* kF7 = R"({"prefactor":{"num":[["0","1","21","1"],["0","0","-8","1"]],"den":[["0","3","1","1"]]},
  "gammas":[{"cn":"0","ck":"1","offset":{"p":"1","q":"1"},"exp":"6"},
            {"cn":"0","ck":"2","offset":{"p":"1","q":"1"},"exp":"-3"}]})";

// (k+n)!^2 n!^4 / ((2n+1+k)^2 (2n+k)!^2 (2n)!)
const char* kF7Pair = R"({"prefactor":{"num":[["0","0","1","1"]],
    "den":[["2","0","4","1"],["1","1","4","1"],["0","2","1","1"],["1","0","4","1"],["0","1","2","1"],["0","0","1","1"]]},
  "gammas":[{"cn":"1","ck":"1","offset":{"p":"1","q":"1"},"exp":"2"},
            {"cn":"1","ck":"0","offset":{"p":"1","q":"1"},"exp":"4"},
            {"cn":"2","ck":"1","offset":{"p":"1","q":"1"},"exp":"-2"},
            {"cn":"2","ck":"0","offset":{"p":"1","q":"1"},"exp":"-1"}]})";

// a term with half-integer offsets and a geometric factor
const char* kHalf = R"({"prefactor":{"num":[["0","1","3","1"],["0","0","1","1"]],"den":[["1","0","1","1"],["0","0","2","1"]]},
  "sign":{"n":"1","k":"0"},
  "geometric":[{"base":{"p":"-2","q":"9"},"exp_n":"1","exp_k":"1"}],
  "gammas":[{"cn":"1","ck":"1","offset":{"p":"1","q":"2"},"exp":"1"},
            {"cn":"0","ck":"2","offset":{"p":"1","q":"3"},"exp":"-1"},
            {"cn":"1","ck":"0","offset":{"p":"1","q":"1"},"exp":"-2"}]})";

}  // namespace

TEST_CASE("parse the f1 summand") {
    HyperTerm t = T(kF1);
    REQUIRE(t.gammas.size() == 2);
    CHECK(t.gammas[0] == GammaFactor{0, 1, {}, 1, 2});
    CHECK(t.gammas[1] == GammaFactor{0, 2, {}, 1, -1});
    CHECK(t.prefactor == RF("1/k^2"));
    CHECK(t.domain.k0 == 1);
}

TEST_CASE("phase, constants and malformed documents") {
    HyperTerm t = T(kF2);
    CHECK(t.phase == 1);
    CHECK(t.phase_var == Var::k);
    HyperTerm one = T("{}");
    CHECK(one == HyperTerm::constant(1));
    CHECK_THROWS_AS(T(R"({"gamma":[]})"), MathError);
    CHECK_THROWS_AS(T(R"({"prefactor":{"num":[["0","0","1","1"]],"den":[]}})"), MathError);
    CHECK_THROWS_AS(T(R"({"prefactor":{"num":[["0","0","1","0"]]}})"), MathError);
    CHECK_THROWS_AS(T(R"({"gammas":[{"cn":"x"}]})"), MathError);
    CHECK_THROWS_AS(T("{not json"), MathError);
    CHECK_THROWS_AS(T(R"({"gammas":[{"params":{"a":"1"},"exp":"1"}]})"), MathError);
}

TEST_CASE("negative geometric bases fold into signs") {
    HyperTerm t = T(kHalf);
    REQUIRE(t.geometric.size() == 1);
    CHECK(t.geometric[0].base == Q(2, 9));
    CHECK(t.sign_n == 0);
    CHECK(t.sign_k == 1);
}

TEST_CASE("serialization round trip") {
    for (const char* s : {kF1, kF2, kF7, kF7Pair, kHalf}) {
        HyperTerm t = T(s);
        CHECK(parse_term(serialize_term(t)) == t);
        CHECK(parse_term_text(serialize_term(t).dump()) == t);
    }
}

TEST_CASE("shift quotients") {
    CHECK(shift_quotient(T(kF7Pair), Var::k) == RF("(n+k+1)^2/(2*n+k+2)^2"));
    CHECK(shift_quotient(T(R"({"gammas":[{"ck":"1","offset":{"p":"1","q":"1"},"exp":"-1"}]})"), Var::k) ==
          RF("1/(k+1)"));
    CHECK(shift_quotient(T(R"({"geometric":[{"base":{"p":"1","q":"16"},"exp_n":"1"}]})"), Var::n) ==
          RationalFunction(Q(1, 16)));
    CHECK(shift_quotient(T(kF2), Var::k) == RF("-k^3*(k+1)/((k+1)^3*2*(2*k+1))"));
    CHECK_THROWS_AS(shift_quotient(T(R"({"phase":{"var":"k","p":"1","q":"2"}})"), Var::k), MathError);
}

TEST_CASE("shift quotient consistency at random points") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pt(0, 12);
    for (const char* s : {kF1, kF2, kF7, kF7Pair, kHalf}) {
        HyperTerm t = T(s);
        RationalFunction qk = shift_quotient(t, Var::k), qn = shift_quotient(t, Var::n);
        for (int trial = 0; trial < 8; ++trial) {
            BigRational n = pt(rng), k = 1 + pt(rng);
            TermValue v = eval_term(t, n, k, kPrec);
            TermValue vk = eval_term(t, n, k + 1, kPrec), vn = eval_term(t, n + 1, k, kPrec);
            PrecisionScope scope(kPrec.bits());
            CHECK(close(vk.value, v.value * Real(qk.eval(n, k)), 1e-40));
            CHECK(close(vn.value, v.value * Real(qn.eval(n, k)), 1e-40));
        }
    }
}

TEST_CASE("eval_term examples") {
    TermValue v = eval_term(T(kF7), 0, 1, kPrec);
    CHECK(v.value.re == Real(Q(13, 8)));
    CHECK(v.error_bound == 0.0);
    v = eval_term(T(kF2), 0, 1, kPrec);
    CHECK(v.value.re == Real(Q(-1, 2)));
    CHECK(v.value.im.is_zero());
    v = eval_term(HyperTerm::constant(1), 5, 9, kPrec);
    CHECK(v.value.re == Real(1));
    CHECK(v.error_bound == 0.0);
    CHECK_THROWS_AS(eval_term(T(kF1), 0, 0, kPrec), MathError);
}

TEST_CASE("eval_term against MPFR gamma") {
    HyperTerm t = T(kHalf);
    PrecisionScope scope(kPrec.bits());
    for (auto [n, k] : {std::pair{0L, 1L}, {2L, 3L}, {5L, 0L}}) {
        TermValue v = eval_term(t, n, k, kPrec);
        Real N(n), K(k);
        Real direct = (Real(3) * K + Real(1)) / (N + Real(2)) * pow(Real(Q(2, 9)), n + k) *
                      mpfr_gamma_of(N + K + Real(Q(1, 2))) / mpfr_gamma_of(Real(2) * K + Real(Q(1, 3))) /
                      pow(mpfr_gamma_of(N + Real(1)), 2L);
        if ((k % 2) == 1) direct = -direct;
        CHECK(close(v.value, Complex(direct), 1e-45));
        CHECK(v.error_bound <= 1e-40 * std::max(1.0, std::fabs(direct.to_double())));
        TermValue w = eval_term(t, Real(n), Real(k), kPrec);
        CHECK(close(w.value, Complex(direct), 1e-45));
    }
}

TEST_CASE("pole cancellation at a nonpositive integer") {
    // Gamma(n)^-3 / n^3 at n = 0 is 1 / Gamma(n+1)^3 = 1
    HyperTerm t = T(R"({"prefactor":{"den":[["3","0","1","1"]]},
      "gammas":[{"cn":"1","offset":{"p":"0","q":"1"},"exp":"-3"},{"ck":"1","offset":{"p":"1","q":"2"},"exp":"1"}]})");
    TermValue v = eval_term(t, 0, 0, kPrec);
    PrecisionScope scope(kPrec.bits());
    CHECK(close(v.value, Complex(sqrt(pi())), 1e-45));
    // a positive-exponent pole stays an error
    CHECK_THROWS_AS(eval_term(T(R"({"gammas":[{"cn":"1","exp":"1"}]})"), 0, 0, kPrec), MathError);
}

TEST_CASE("reflect_k rules") {
    CHECK(reflect_k(HyperTerm::constant(1)) == HyperTerm::constant(1));
    HyperTerm r = reflect_k(T(R"({"prefactor":{"den":[["0","1","1","1"],["0","0","1","1"]]}})"));
    CHECK(r.prefactor == RF("-1/k"));
    CHECK_THROWS_AS(reflect_k(T(R"({"gammas":[{"ck":"1","offset":{"p":"1","q":"1"}}]})")), MathError);
    CHECK_THROWS_AS(reflect_k(T(kF1)), MathError);
}

TEST_CASE("reflect_k matches t(n,-k-1) for half-integer offsets") {
    HyperTerm t = T(kHalf), r = reflect_k(t);
    for (auto [n, k] : {std::pair{2L, 0L}, {3L, 1L}, {6L, 2L}, {9L, 4L}}) {
        TermValue a = eval_term(r, n, k, kPrec), b = eval_term(t, n, -k - 1, kPrec);
        CHECK(close(a.value, b.value, 1e-45));
    }
}

TEST_CASE("reflect_k of balanced integer poles is the limit along k") {
    // Gamma(k+1)/Gamma(2k+1) at -k-1 taken as a limit in k
    HyperTerm t = T(R"({"prefactor":{"num":[["0","1","1","1"],["1","0","1","1"]]},
      "gammas":[{"ck":"1","offset":{"p":"1","q":"1"},"exp":"1"},{"ck":"2","offset":{"p":"1","q":"1"},"exp":"-1"}]})");
    HyperTerm r = reflect_k(t);
    const Precision p{30, 40};
    PrecisionScope scope(p.bits());
    Real eps = pow(Real(10), -35L);
    for (long k : {0L, 1L, 3L}) {
        TermValue a = eval_term(r, Real(2), Real(k), p);
        TermValue b = eval_term(t, Real(2), Real(-k - 1) + eps, p);
        CHECK(close(a.value, b.value, 1e-25));
    }
}

TEST_CASE("reflect_k with parameter shifts") {
    HyperTerm t = T(R"({"params":["a","c"],"gammas":[{"cn":"1","ck":"1","params":{"a":"-1","c":"2"},"offset":{"p":"1","q":"2"},"exp":"2"},
      {"cn":"2","ck":"1","params":{"c":"-1"},"offset":{"p":"1","q":"1"},"exp":"-1"}]})");
    HyperTerm r = reflect_k(t);
    PrecisionScope scope(kPrec.bits());
    ParamValues pv{{"a", Real(Q(1, 5))}, {"c", Real(Q(-2, 7))}};
    for (auto [n, k] : {std::pair{3L, 0L}, {4L, 2L}, {7L, 3L}}) {
        TermValue x = eval_term(r, Real(n), Real(k), kPrec, pv);
        TermValue y = eval_term(t, Real(n), Real(-k - 1), kPrec, pv);
        CHECK(close(x.value, y.value, 1e-45));
    }
}

TEST_CASE("regularized reflect_k keeps the leading Laurent coefficient") {
    // 1/Gamma(k+1) at -k-1 vanishes; eps^-1 / Gamma(-k-eps) stays finite
    HyperTerm t = T(R"({"gammas":[{"ck":"1","offset":{"p":"1","q":"1"},"exp":"-1"}]})");
    CHECK_THROWS_AS(reflect_k(t), MathError);
    HyperTerm r = reflect_k(t, true);
    const Precision p{30, 40};
    PrecisionScope scope(p.bits());
    Real eps = pow(Real(10), -35L);
    for (long k : {0L, 2L, 5L}) {
        TermValue a = eval_term(r, Real(0), Real(k), p);
        TermValue b = eval_term(t, Real(0), Real(-k - 1) - eps, p);
        CHECK(close(a.value, Complex(b.value.re / eps, b.value.im / eps), 1e-25));
    }
}

TEST_CASE("reflection is an involution") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pt(0, 9);
    for (const char* s : {kF7Pair, kHalf}) {
        HyperTerm t = T(s), rr = reflect_k(reflect_k(t));
        for (int i = 0; i < 10; ++i) {
            BigRational n = pt(rng), k = 1 + pt(rng);
            CHECK(close(eval_term(rr, n, k, kPrec).value, eval_term(t, n, k, kPrec).value, 1e-45));
        }
    }
}

TEST_CASE("log-derivative examples") {
    HyperTerm t = T(R"({"params":["a"],"gammas":[{"cn":"1","params":{"a":"-1"},"offset":{"p":"1","q":"2"}}]})");
    PrecisionScope scope(kPrec.bits());
    for (long n : {0L, 3L}) {
        auto d = param_log_derivative(t, "a", 1, Real(n), Real(0), kPrec);
        Real expect = -polygamma(0, Real(n) + Real(Q(1, 2)), kPrec);
        CHECK(close(d.derivs[0], Complex(expect), 1e-45));
    }
    auto d = param_log_derivative(T(kF2), "k", 1, Real(0), Real(2), kPrec);
    Real expect = Real(2) * polygamma(0, Real(3), kPrec) - Real(2) * polygamma(0, Real(5), kPrec) - Real(Q(3, 2));
    CHECK(close(d.derivs[0], Complex(expect, pi()), 1e-45));
    auto c = param_log_derivative(HyperTerm::constant(1), "k", 4, Real(0), Real(2), kPrec);
    for (auto& x : c.derivs) CHECK(x.is_zero());
    CHECK_THROWS_AS(param_log_derivative(T(kHalf), "k", 1, Real(0), Real(2), kPrec), MathError);
    CHECK_THROWS_AS(param_log_derivative(T(kF2), "k", 9, Real(0), Real(2), kPrec), MathError);
}

TEST_CASE("f2 log-derivative against a finite difference at 60 digits") {
    const Precision p{60, 20};
    PrecisionScope scope(p.bits());
    HyperTerm t = T(kF2);
    Real h = pow(Real(10), -20L), k(2);
    auto lg = [&](const Real& x) { return log(abs(eval_term(t, Real(0), x, p).value)); };
    Real fd = (lg(k + h) - lg(k - h)) / (Real(2) * h);
    auto d = param_log_derivative(t, "k", 1, Real(0), k, p);
    CHECK(abs(d.derivs[0].re - fd).to_double() < 1e-35);
}

TEST_CASE("order-1 log-derivative agrees with central differences") {
    // step 10^(-D/3), tolerance 10^(-D+10)
    const Precision p{24, 20};
    PrecisionScope scope(p.bits());
    Real h = pow(Real(10), -8L);
    for (const char* s : {kF1, kF7, kF7Pair}) {
        HyperTerm t = T(s);
        for (const char* var : {"n", "k"}) {
            Real n(Q(7, 3)), k(Q(5, 2));
            auto lg = [&](const Real& dn, const Real& dk) {
                return log(abs(eval_term(t, n + dn, k + dk, p).value));
            };
            bool on_n = std::string(var) == "n";
            Real fd = on_n ? (lg(h, Real(0)) - lg(-h, Real(0))) / (Real(2) * h)
                           : (lg(Real(0), h) - lg(Real(0), -h)) / (Real(2) * h);
            auto d = param_log_derivative(t, var, 1, n, k, p);
            CHECK(abs(d.derivs[0].re - fd).to_double() < 1e-14);
        }
    }
}

TEST_CASE("Bell derivative values against finite differences") {
    const Precision p{40, 30};
    PrecisionScope scope(p.bits());
    HyperTerm t = T(kF7);
    Real k(3), h = pow(Real(10), -12L);
    auto f = [&](const Real& x) { return eval_term(t, Real(0), x, p).value.re; };
    Real d2 = (f(k + h) - Real(2) * f(k) + f(k - h)) / (h * h);
    TermValue v = derivative_value(t, "k", 2, Real(0), k, p);
    CHECK(abs(v.value.re - d2).to_double() < 1e-15 * std::fabs(d2.to_double()));
    CHECK(v.error_bound < 1e-45);
}

TEST_CASE("rational ratio of terms") {
    HyperTerm a = T(R"({"gammas":[{"ck":"1","offset":{"p":"1","q":"1"}}]})");
    HyperTerm b = T(R"({"prefactor":{"num":[["1","0","1","1"]]},"gammas":[{"ck":"1","offset":{"p":"3","q":"1"}}]})");
    auto r = rational_ratio(b, a);
    REQUIRE(r.has_value());
    CHECK(*r == RF("n*(k+1)*(k+2)"));
    HyperTerm c = T(R"({"gammas":[{"ck":"1","offset":{"p":"1","q":"2"}}]})");
    CHECK_FALSE(rational_ratio(c, a).has_value());
    HyperTerm s = a;
    s.sign_k = 1;
    CHECK_FALSE(rational_ratio(s, a).has_value());
    CHECK(*rational_ratio(T(kF7Pair), T(kF7Pair)) == RationalFunction(1));
}
