#include "wzforge/special.hpp"

#include <cmath>
#include <deque>
#include <mutex>

#include "wzforge/constants.hpp"

namespace wzforge {

namespace {

std::mutex g_bern_mutex;
std::deque<BigRational> g_bern{BigRational(1)};

BigInt binomial(long n, long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

double stirling_threshold(const Precision& prec) { return 0.4 * prec.working_digits() + 10.0; }

// number of unit shifts so that x + N clears the asymptotic threshold
long raise_count(const Real& x, const Precision& prec) {
    double t = stirling_threshold(prec), xd = x.to_double();
    return xd >= t ? 0 : static_cast<long>(std::ceil(t - xd));
}

}  // namespace

const BigRational& bernoulli(int n) {
    if (n < 0) throw MathError("negative Bernoulli index");
    std::lock_guard<std::mutex> lock(g_bern_mutex);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while (static_cast<int>(g_bern.size()) <= n) {
        const long m = static_cast<long>(g_bern.size());
        if (m > 1 && m % 2 == 1) {
            g_bern.emplace_back(0);
            continue;
        }
        BigRational s = 0;
        for (long j = 0; j < m; ++j) {
            if (j > 1 && j % 2 == 1) continue;
            s += BigRational(binomial(m + 1, j)) * g_bern[static_cast<std::size_t>(j)];
        }
        BigRational b = -s / BigRational(m + 1);
        b.canonicalize();
        g_bern.push_back(b);
    }
    return g_bern[static_cast<std::size_t>(n)];
}

Real log_gamma(const Real& x, const Precision& prec) {
    if (x.sign() <= 0) throw MathError("log_gamma needs a positive argument");
    const long N = raise_count(x, prec);
    Real y = x, prod(1);
    for (long i = 0; i < N; ++i) {
        prod *= y;
        y += Real(1);
    }
    const Real tol = pow(Real(10), -static_cast<long>(prec.working_digits()));
    Real r = (y - Real(make_rational(1, 2))) * log(y) - y + log(Real(2) * pi()) / Real(2);
    Real inv = Real(1) / y, inv2 = inv * inv, p = inv;
    for (int j = 1;; ++j) {
        Real term = Real(bernoulli(2 * j) / BigRational(2L * j * (2 * j - 1))) * p;
        if (abs(term) * Real(2) < tol) break;
        if (j > 2000) throw MathError("log_gamma asymptotic series did not settle");
        r += term;
        p *= inv2;
    }
    if (N > 0) r -= log(prod);
    return r;
}

std::vector<Real> polygamma_all(int max_order, const Real& x, const Precision& prec) {
    if (max_order < 0 || max_order > kMaxDerivativeOrder) throw MathError("polygamma order outside 0..8");
    if (x.sign() <= 0) throw MathError("polygamma needs a positive argument");
    const long N = raise_count(x, prec) + 2 * max_order;
    const Real tol = pow(Real(10), -static_cast<long>(prec.working_digits()));
    Real y = x + Real(N);
    Real inv = Real(1) / y, inv2 = inv * inv;
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(max_order) + 1);

    // psi(y) = ln y - 1/(2y) - sum B_2j / (2j y^2j)
    {
        Real r = log(y) - inv / Real(2), p = inv2;
        for (int j = 1;; ++j) {
            Real term = Real(bernoulli(2 * j) / BigRational(2 * j)) * p;
            if (abs(term) * Real(2) < tol) break;
            if (j > 2000) throw MathError("digamma asymptotic series did not settle");
            r -= term;
            p *= inv2;
        }
        out.push_back(std::move(r));
    }
    for (int m = 1; m <= max_order; ++m) {
        Real ym = pow(inv, static_cast<long>(m));
        Real r = Real(factorial(m - 1)) * ym + Real(factorial(m)) * ym * inv / Real(2);
        Real p = ym * inv2;
        for (int j = 1;; ++j) {
            BigRational c = bernoulli(2 * j) * BigRational(factorial(2 * j + m - 1)) / BigRational(factorial(2 * j));
            Real term = Real(c) * p;
            if (abs(term) * Real(2) < tol) break;
            if (j > 2000) throw MathError("polygamma asymptotic series did not settle");
            r += term;
            p *= inv2;
        }
        out.push_back(m % 2 == 1 ? r : -r);
    }
    // shift back: psi^(m)(x) = psi^(m)(x+N) - (-1)^m m! sum_{i<N} (x+i)^(-m-1)
    std::vector<Real> sums(static_cast<std::size_t>(max_order) + 1, Real(0));
    Real xi = x;
    for (long i = 0; i < N; ++i) {
        Real q = Real(1) / xi, qp = q;
        for (int m = 0; m <= max_order; ++m) {
            sums[static_cast<std::size_t>(m)] += qp;
            qp *= q;
        }
        xi += Real(1);
    }
    for (int m = 0; m <= max_order; ++m) {
        Real s = Real(factorial(m)) * sums[static_cast<std::size_t>(m)];
        if (m % 2 == 0)
            out[static_cast<std::size_t>(m)] -= s;
        else
            out[static_cast<std::size_t>(m)] += s;
    }
    return out;
}

Real polygamma(int m, const Real& x, const Precision& prec) {
    if (m < 0 || m > kMaxDerivativeOrder) throw MathError("polygamma order outside 0..8");
    return polygamma_all(m, x, prec)[static_cast<std::size_t>(m)];
}

std::vector<Complex> bell_complete(const std::vector<Complex>& x) {
    const std::size_t m = x.size();
    std::vector<Complex> B;
    B.reserve(m + 1);
    B.emplace_back(Real(1));
    for (std::size_t n = 0; n < m; ++n) {
        Complex s;
        for (std::size_t j = 0; j <= n; ++j)
            s += B[n - j] * x[j] * Real(binomial(static_cast<long>(n), static_cast<long>(j)));
        B.push_back(std::move(s));
    }
    return B;
}

Complex derivative_via_bell(const std::vector<Complex>& L_derivs, const Complex& f_value) {
    if (L_derivs.size() > static_cast<std::size_t>(kMaxDerivativeOrder))
        throw MathError("derivative order above 8");
    if (L_derivs.empty()) return f_value;
    return f_value * bell_complete(L_derivs).back();
}

}  // namespace wzforge
