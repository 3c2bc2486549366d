#include "wzforge/gosper.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

namespace wzforge {

namespace {

using CLD = std::complex<long double>;

// all complex roots of a squarefree polynomial, Aberth-Ehrlich iteration
std::vector<CLD> numeric_roots(const UPoly& p) {
    const int d = p.degree();
    std::vector<long double> c(static_cast<std::size_t>(d) + 1);
    const BigRational& lc = p.lc();
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = static_cast<long double>(BigRational(p[static_cast<std::size_t>(i)] / lc).get_d());
    long double bound = 0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)]));
    bound += 1;
    auto eval = [&](CLD z, CLD& dv) {
        CLD v = c[static_cast<std::size_t>(d)];
        dv = 0;
        for (int i = d - 1; i >= 0; --i) {
            dv = dv * z + v;
            v = v * z + c[static_cast<std::size_t>(i)];
        }
        return v;
    };
    std::vector<CLD> z(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = std::polar(bound * 0.9L, 0.4L + 6.283185307179586L * i / d);
    for (int it = 0; it < 2000; ++it) {
        long double worst = 0;
        for (int i = 0; i < d; ++i) {
            CLD& zi = z[static_cast<std::size_t>(i)];
            CLD dv, v = eval(zi, dv);
            if (v == CLD(0)) continue;
            CLD ratio = v / dv, s = 0;
            for (int j = 0; j < d; ++j)
                if (j != i) s += CLD(1) / (zi - z[static_cast<std::size_t>(j)]);
            CLD w = ratio / (CLD(1) - ratio * s);
            zi -= w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(zi)));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

UPoly squarefree(const UPoly& p) {
    UPoly g = UPoly::gcd(p, p.derivative());
    return g.is_constant() ? p.monic() : UPoly::divrem(p, g).first.monic();
}

// exact quotient of univariate polynomials
UPoly udiv(const UPoly& a, const UPoly& b) {
    auto [q, r] = UPoly::divrem(a, b);
    if (!r.is_zero()) throw MathError("inexact division in elimination");
    return q;
}

using Row = std::vector<UPoly>;

void remove_content(Row& row) {
    UPoly g;
    for (auto& e : row) {
        if (e.is_zero()) continue;
        g = g.is_zero() ? e.monic() : UPoly::gcd(g, e);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return;
    if (!g.is_constant()) {
        for (auto& e : row)
            if (!e.is_zero()) e = udiv(e, g);
    }
    // scale so the first nonzero entry is monic
    for (auto& e : row)
        if (!e.is_zero()) {
            BigRational s = 1 / e.lc();
            for (auto& f : row) f *= s;
            break;
        }
}

RationalFunction rf_n(const UPoly& num, const UPoly& den) {
    return RationalFunction(Polynomial::from_upoly_n(num), Polynomial::from_upoly_n(den));
}

// polynomial solution x of A x(k+1) - B x(k) = C with deg x <= D, over Q(n)
std::optional<RationalFunction> solve_polynomial(const Polynomial& A, const Polynomial& B, const Polynomial& C,
                                                 int D) {
    std::vector<Polynomial> cols;
    Polynomial kp(1), kp1(1);
    const Polynomial k = Polynomial::k(), k1 = Polynomial::k() + Polynomial(1);
    for (int i = 0; i <= D; ++i) {
        cols.push_back(A * kp1 - B * kp);
        kp = kp * k;
        kp1 = kp1 * k1;
    }
    int rows = C.deg_k() + 1;
    for (auto& c : cols) rows = std::max(rows, c.deg_k() + 1);
    const int ncol = D + 1;
    std::vector<Row> M(static_cast<std::size_t>(rows), Row(static_cast<std::size_t>(ncol) + 1));
    for (int e = 0; e < rows; ++e) {
        for (int i = 0; i < ncol; ++i)
            if (e <= cols[static_cast<std::size_t>(i)].deg_k())
                M[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)].coeff_k(e);
        if (e <= C.deg_k()) M[static_cast<std::size_t>(e)][static_cast<std::size_t>(ncol)] = C.coeff_k(e);
    }
    for (auto& row : M) remove_content(row);

    // fraction-free Gauss-Jordan over Q[n]
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < ncol && r < M.size(); ++c) {
        std::size_t best = M.size();
        for (std::size_t i = r; i < M.size(); ++i) {
            const UPoly& e = M[i][static_cast<std::size_t>(c)];
            if (e.is_zero()) continue;
            if (best == M.size() || e.degree() < M[best][static_cast<std::size_t>(c)].degree()) best = i;
        }
        if (best == M.size()) continue;
        std::swap(M[r], M[best]);
        const UPoly piv = M[r][static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][static_cast<std::size_t>(c)].is_zero()) continue;
            const UPoly f = M[i][static_cast<std::size_t>(c)];
            for (std::size_t j = 0; j < M[i].size(); ++j) M[i][j] = piv * M[i][j] - f * M[r][j];
            remove_content(M[i]);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < M.size(); ++i)
        if (!M[i][static_cast<std::size_t>(ncol)].is_zero()) return std::nullopt;

    // free unknowns are set to zero
    RationalFunction x;
    for (std::size_t i = 0; i < r; ++i) {
        const int c = pivot_col[i];
        const UPoly& rhs = M[i][static_cast<std::size_t>(ncol)];
        if (rhs.is_zero()) continue;
        x = x + rf_n(rhs, M[i][static_cast<std::size_t>(c)]) * RationalFunction(Polynomial::k().pow(static_cast<unsigned>(c)));
    }
    return x;
}

std::optional<int> degree_bound(const Polynomial& A, const Polynomial& B, const Polynomial& C) {
    const int N = A.deg_k(), M = B.deg_k(), K = C.deg_k();
    std::vector<long> cands;
    if (N != M || !(A.lc_k() == B.lc_k())) {
        cands.push_back(K - std::max(N, M));
    } else if (N == 0) {
        cands.push_back(K + 1);
        cands.push_back(0);
    } else {
        cands.push_back(K - N + 1);
        UPoly diff = B.coeff_k(N - 1) - A.coeff_k(N - 1);
        auto [q, rem] = UPoly::divrem(diff, A.lc_k());
        if (rem.is_zero() && q.is_constant()) {
            BigRational d = q.coeff(0);
            if (d.get_den() == 1 && d >= 0) cands.push_back(d.get_num().get_si());
        }
    }
    long best = -1;
    for (long c : cands) best = std::max(best, c);
    if (best < 0) return std::nullopt;
    return static_cast<int>(best);
}

}  // namespace

std::vector<long> dispersion_set(const Polynomial& a, const Polynomial& b) {
    std::set<long> cands;
    if (a.deg_k() <= 0 || b.deg_k() <= 0) return {};
    // candidates from numeric roots at a specialization of n; the exact
    // bivariate gcd below decides
    for (const BigRational& s : {make_rational(1, 7), make_rational(3, 11), make_rational(5, 13), make_rational(17, 19)}) {
        UPoly as = a.subs_n(s), bs = b.subs_n(s);
        if (as.degree() != a.deg_k() || bs.degree() != b.deg_k()) continue;
        std::vector<CLD> ra = numeric_roots(squarefree(as)), rb = numeric_roots(squarefree(bs));
        for (const CLD& x : ra)
            for (const CLD& y : rb) {
                CLD dlt = y - x;
                long double j = std::round(dlt.real());
                long double tol = 1e-6L * (1 + std::abs(x) + std::abs(y));
                if (j >= 0 && std::abs(dlt.imag()) < tol && std::abs(dlt.real() - j) < tol)
                    cands.insert(static_cast<long>(j));
            }
        break;
    }
    std::vector<long> out;
    for (long j : cands)
        if (gcd(a, b.shift_k(j)).deg_k() > 0) out.push_back(j);
    return out;
}

GosperForm gosper_form(const RationalFunction& rho) {
    if (rho.is_zero()) throw MathError("zero shift quotient");
    Polynomial P = rho.num(), Q = rho.den(), Cp(1);
    for (long j : dispersion_set(P, Q)) {
        Polynomial g = gcd(P, Q.shift_k(j));
        if (g.deg_k() <= 0) continue;
        P = exact_div(P, g);
        Q = exact_div(Q, g.shift_k(-j));
        for (long i = 1; i <= j; ++i) Cp = Cp * g.shift_k(-i);
    }
    return {Cp, P, Q};
}

std::optional<RationalFunction> gosper_certificate(const RationalFunction& rho) {
    GosperForm f = gosper_form(rho);
    const Polynomial& A = f.q;
    const Polynomial B = f.r.shift_k(-1);
    const Polynomial& C = f.p;
    auto D = degree_bound(A, B, C);
    if (!D) return std::nullopt;
    auto x = solve_polynomial(A, B, C, *D);
    if (!x || x->is_zero()) return std::nullopt;
    RationalFunction R = RationalFunction(B) * *x / RationalFunction(C);
    if (!(R.shift_k(1) * rho - R == RationalFunction(1)))
        throw MathError("Gosper certificate failed its own identity");
    return R;
}

RationalFunction wz_residual(const HyperTerm& F, const RationalFunction& R) {
    RationalFunction rn = shift_quotient(F, Var::n), rk = shift_quotient(F, Var::k);
    return (rn - RationalFunction(1)) - (R.shift_k(1) * rk - R);
}

WZMate wz_mate(const HyperTerm& F) {
    if (F.is_zero()) return {F, {RationalFunction(), true, RationalFunction()}};
    RationalFunction u = shift_quotient(F, Var::n) - RationalFunction(1);
    if (u.is_zero()) {
        HyperTerm G = F.scaled(RationalFunction());
        return {G, {RationalFunction(), true, RationalFunction()}};
    }
    RationalFunction rk = shift_quotient(F, Var::k);
    RationalFunction rho_t = rk * u.shift_k(1) / u;
    auto Rt = gosper_certificate(rho_t);
    if (!Rt) throw MathError("no WZ mate: Gosper's algorithm found no antidifference");
    RationalFunction R = *Rt * u;
    WZCertificate cert{R, false, wz_residual(F, R)};
    cert.verified = cert.residual.is_zero();
    return {F.scaled(R), cert};
}

WZCertificate verify_wz_pair(const HyperTerm& F, const HyperTerm& G) {
    if (F.is_zero()) {
        if (!G.is_zero()) throw MathError("G/F not rational for F = 0");
        return {RationalFunction(), true, RationalFunction()};
    }
    auto R = rational_ratio(G, F);
    if (!R) throw MathError("G/F is not a rational function");
    WZCertificate c{*R, false, wz_residual(F, *R)};
    c.verified = c.residual.is_zero();
    return c;
}

ReflectedPair reflect_pair(const HyperTerm& F, const RationalFunction& R) {
    RationalFunction rk = shift_quotient(F, Var::k);
    // -G(n,-k) = -R(n,-k) rho_k(n,-k-1) F(n,-k-1)
    RationalFunction Rr = -(R.compose_affine(1, 0, -1, 0) * rk.compose_affine(1, 0, -1, -1));
    return {reflect_k(F, true), Rr};
}

Json certificate_json(const std::string& pair_id, const WZCertificate& c) {
    return Json{{"pair_id", pair_id},
                {"mate_ratio", {{"num", c.mate_ratio.num().str()}, {"den", c.mate_ratio.den().str()}}},
                {"verified", c.verified},
                {"residual", {{"num", c.residual.num().str()}, {"den", c.residual.den().str()}}}};
}

}  // namespace wzforge
