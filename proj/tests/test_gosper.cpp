#include "doctest.h"
#include "wzforge/gosper.hpp"

#include <fstream>
#include <random>

using namespace wzforge;

namespace {

RationalFunction RF(const char* s) { return RationalFunction::parse(s); }
BigRational Q(long p, long q = 1) { return make_rational(p, q); }

const Json& catalog() {
    static const Json doc = [] {
        std::ifstream in(std::string(WZFORGE_DATA_DIR) + "/catalog.json");
        REQUIRE(in.good());
        return Json::parse(in);
    }();
    return doc;
}

HyperTerm pair_term(const std::string& id) {
    for (auto& p : catalog().at("pairs"))
        if (p.at("id") == id) return parse_term(p.at("F"));
    FAIL("no pair " << id);
    return {};
}

std::vector<std::string> pair_ids() {
    std::vector<std::string> ids;
    for (auto& p : catalog().at("pairs")) ids.push_back(p.at("id").get<std::string>());
    return ids;
}

// one mate per pair, computed once
const std::map<std::string, WZMate>& mates() {
    static const std::map<std::string, WZMate> m = [] {
        std::map<std::string, WZMate> out;
        for (auto& id : pair_ids()) out.emplace(id, wz_mate(pair_term(id)));
        return out;
    }();
    return m;
}

bool close(const Complex& a, const Complex& b, double rel) {
    return abs(a - b).to_double() <= rel * std::max(1.0, abs(b).to_double());
}

}  // namespace

TEST_CASE("Gosper on the reference quotients") {
    auto r1 = gosper_certificate(RF("(k+1)^2/k"));
    REQUIRE(r1);
    CHECK(*r1 == RF("1/k"));
    auto r2 = gosper_certificate(RF("k/(k+2)"));
    REQUIRE(r2);
    CHECK(*r2 == RF("-(k+1)"));
    CHECK_FALSE(gosper_certificate(RF("k/(k+1)")));
    CHECK_THROWS_AS(gosper_certificate(RationalFunction()), MathError);
}

TEST_CASE("harmonic partial sums are not of the form R(K) / K") {
    // S = R t with t = 1/k would force K H_K to be rational in K; its fifth
    // differences would then vanish for a polynomial R of degree <= 4
    std::vector<BigRational> y;
    BigRational h = 0;
    for (long K = 1; K <= 12; ++K) {
        h += Q(1, K);
        y.push_back(BigRational(K) * h);
    }
    for (int d = 0; d < 5; ++d)
        for (std::size_t i = 0; i + 1 < y.size() - static_cast<std::size_t>(d); ++i) y[i] = y[i + 1] - y[i];
    CHECK(y[0] != 0);
}

TEST_CASE("Gosper form satisfies the coprimality condition") {
    for (const char* s : {"(k+1)^2/k", "k^2*(2*k+3)/((k+5)*(k+1)^2)", "(k+n)*(k+2*n+1)/((k+n+3)*(k+1))"}) {
        RationalFunction rho = RF(s);
        GosperForm f = gosper_form(rho);
        RationalFunction back = RationalFunction(f.q) / RationalFunction(f.r) * RationalFunction(f.p.shift_k(1)) /
                                RationalFunction(f.p);
        CHECK(back == rho);
        for (long j = 0; j <= 8; ++j) CHECK(gcd(f.q, f.r.shift_k(j)).deg_k() <= 0);
    }
    CHECK(dispersion_set(Polynomial::parse("(k+3)*(k+n+5)"), Polynomial::parse("k*(k+n)")) ==
          std::vector<long>{3, 5});
}

TEST_CASE("Gosper soundness on random quotients") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-3, 3);
    int produced = 0;
    for (int trial = 0; trial < 40; ++trial) {
        // t = p(k) * k! / (a k + b)! type quotients: rho = poly ratio
        Polynomial p = Polynomial::parse("k") * Polynomial(BigRational(c(rng))) + Polynomial(BigRational(c(rng) + 4));
        if (p.deg_k() < 0 || p.is_zero()) continue;
        RationalFunction rho = RationalFunction(p.shift_k(1)) / RationalFunction(p) *
                               RF("(k+1)/(k+3)") * RationalFunction(Polynomial(BigRational(trial % 3 + 1)));
        auto R = gosper_certificate(rho);
        if (!R) continue;
        ++produced;
        CHECK((R->shift_k(1) * rho - *R - RationalFunction(1)).is_zero());
    }
    CHECK(produced > 0);
}

TEST_CASE("Gosper telescoping against direct summation") {
    // t = k k!, rational-valued: exact check
    RationalFunction rho = RF("(k+1)^2/k");
    RationalFunction R = *gosper_certificate(rho);
    auto t = [](long kk) -> BigRational {
        BigRational f = 1;
        for (long j = 2; j <= kk; ++j) f *= j;
        return BigRational(kk) * f;
    };
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        long a = 1 + static_cast<long>(rng() % 5), b = a + static_cast<long>(rng() % 8);
        BigRational s = 0;
        for (long kk = a; kk <= b; ++kk) s += t(kk);
        CHECK(s == R.eval(0, b + 1) * t(b + 1) - R.eval(0, a) * t(a));
    }

    // Delta_n F for the f7 pair at fixed n, through the mate: 30 digits
    const Precision prec{30, 20};
    const WZMate& m = mates().at("f7");
    HyperTerm F = pair_term("f7");
    for (long nn : {0L, 1L, 3L}) {
        long a = 0, b = 9;
        Complex s(0);
        for (long kk = a; kk <= b; ++kk)
            s = s + (eval_term(F, nn + 1, kk, prec).value - eval_term(F, nn, kk, prec).value);
        Complex rhs = eval_term(m.G, nn, b + 1, prec).value - eval_term(m.G, nn, a, prec).value;
        CHECK(close(s, rhs, 1e-28));
    }
}

TEST_CASE("all catalog pairs have verified mates") {
    REQUIRE(pair_ids().size() == 17);
    for (auto& id : pair_ids()) {
        CAPTURE(id);
        const WZMate& m = mates().at(id);
        CHECK(m.cert.verified);
        CHECK(m.cert.residual.is_zero());
        // independent check through verify_wz_pair on the returned G
        WZCertificate c = verify_wz_pair(pair_term(id), m.G);
        CHECK(c.verified);
        CHECK(c.mate_ratio == m.cert.mate_ratio);
        Json j = certificate_json(id, m.cert);
        CHECK(j.at("verified") == true);
        CHECK(j.at("residual").at("num") == "0");
    }
}

TEST_CASE("mates agree with independently computed ratios") {
    // computed separately with a computer algebra system
    const std::map<std::string, const char*> ref{
        {"f1", "(k^2 + 3*k*n + 3*k + 3*n^2 + 6*n + 3)/((n+1)*(k+2*n+2))"},
        {"th1", "2*(18*k^3*n + 15*k^3 + 120*k^2*n^2 + 196*k^2*n + 80*k^2 + 272*k*n^3 + 664*k*n^2 + 534*k*n + 141*k"
                " + 224*n^4 + 720*n^3 + 856*n^2 + 444*n + 84)/(3*(6*n+1)*(6*n+5)*(k+2*n+2)^2)"},
        {"th2", "-(2*k+1)*(24*k^2*n + 4*k^2 + 72*k*n^2 + 36*k*n + 4*k + 56*n^3 + 48*n^2 + 12*n + 1)"
                "/(8*n^3*(4*k+6*n+3))"},
        {"f3", "(18*k^3*n + 9*k^3 + 117*k^2*n^2 + 126*k^2*n + 34*k^2 + 252*k*n^3 + 423*k*n^2 + 230*k*n + 41*k"
               " + 189*n^4 + 432*n^3 + 357*n^2 + 126*n + 16)/(2*n*(2*n+1)*(3*k+6*n+4)*(3*k+6*n+5))"},
    };
    for (auto& [id, r] : ref) {
        CAPTURE(id);
        CHECK(mates().at(id).cert.mate_ratio == RF(r));
    }
}

TEST_CASE("degenerate pairs") {
    HyperTerm zero = HyperTerm::constant(0);
    WZMate m = wz_mate(zero);
    CHECK(m.G.is_zero());
    CHECK(m.cert.verified);

    HyperTerm one = HyperTerm::constant(1);
    WZCertificate c = verify_wz_pair(one, HyperTerm::constant(0));
    CHECK(c.verified);
}

TEST_CASE("a perturbed mate fails") {
    HyperTerm F = pair_term("th1");
    const WZMate& m = mates().at("th1");
    HyperTerm bad = F.scaled(m.cert.mate_ratio + RationalFunction(1));
    WZCertificate c = verify_wz_pair(F, bad);
    CHECK_FALSE(c.verified);
    CHECK_FALSE(c.residual.is_zero());
    CHECK(c.residual.eval(2, 3) != 0);

    // the same numerically: Delta_n F - Delta_k (G + F) = -Delta_k F at (2,3)
    const Precision prec{30, 20};
    Complex lhs = eval_term(F, 3, 3, prec).value - eval_term(F, 2, 3, prec).value;
    Complex rhs = eval_term(bad, 2, 4, prec).value - eval_term(bad, 2, 3, prec).value;
    CHECK(abs(lhs - rhs).to_double() > 1e-10);
}

TEST_CASE("reflected pairs re-certify") {
    for (auto& id : pair_ids()) {
        CAPTURE(id);
        HyperTerm F = pair_term(id);
        const WZMate& m = mates().at(id);
        ReflectedPair rp = reflect_pair(F, m.cert.mate_ratio);
        CHECK(wz_residual(rp.F, rp.mate_ratio).is_zero());
        WZCertificate c = verify_wz_pair(rp.F, rp.F.scaled(rp.mate_ratio));
        CHECK(c.verified);
    }
}

TEST_CASE("n-derivatives of the f3 pair satisfy the WZ relation") {
    const Precision prec{30, 25};
    HyperTerm F = pair_term("f3");
    const HyperTerm& G = mates().at("f3").G;
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        BigRational nq = make_rational(static_cast<long>(1 + rng() % 40), 7 + static_cast<long>(rng() % 5));
        long kk = static_cast<long>(rng() % 8);
        PrecisionScope scope(prec.bits());
        Real nr(nq), n1(BigRational(nq + 1));
        Real k0(kk), k1(kk + 1);
        TermValue a = derivative_value(F, "n", 1, n1, k0, prec);
        TermValue b = derivative_value(F, "n", 1, nr, k0, prec);
        TermValue c = derivative_value(G, "n", 1, nr, k1, prec);
        TermValue d = derivative_value(G, "n", 1, nr, k0, prec);
        Complex lhs = a.value - b.value, rhs = c.value - d.value;
        double scale = std::max({1.0, abs(a.value).to_double(), abs(c.value).to_double()});
        CHECK(abs(lhs - rhs).to_double() <= 1e-25 * scale);
    }
}
