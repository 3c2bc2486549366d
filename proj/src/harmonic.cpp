#include "wzforge/harmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace wzforge {

namespace {

long as_long(const Json& v) {
    if (v.is_number_integer()) return v.get<long>();
    return std::stol(v.get<std::string>());
}

RationalFunction parse_rf(const Json& j) {
    Json doc{{"prefactor", j}};
    return parse_term(doc).prefactor;
}

Json rf_json(const RationalFunction& r) {
    HyperTerm t;
    t.prefactor = r;
    return serialize_term(t).at("prefactor");
}

Real rf_eval(const RationalFunction& r, long k) {
    if (r.pole_at(0, BigRational(k))) throw MathError("pole in a weight coefficient");
    return Real(r.eval(0, BigRational(k)));
}

// asymptotic expansion sum_i sum_q c[i][q] u^(lead+i) L^q, u = 1/k, L = log k
struct Expansion {
    int lead = 0;
    std::vector<std::vector<Complex>> c;

    static Expansion zero(int len) { return {0, std::vector<std::vector<Complex>>(static_cast<std::size_t>(len))}; }
    Complex& at(std::size_t i, std::size_t q) {
        if (c[i].size() <= q) c[i].resize(q + 1);
        return c[i][q];
    }
};

Expansion multiply(const Expansion& a, const Expansion& b, int len) {
    Expansion r = Expansion::zero(len);
    r.lead = a.lead + b.lead;
    for (std::size_t i = 0; i < a.c.size() && i < static_cast<std::size_t>(len); ++i)
        for (std::size_t j = 0; i + j < static_cast<std::size_t>(len) && j < b.c.size(); ++j)
            for (std::size_t p = 0; p < a.c[i].size(); ++p)
                for (std::size_t q = 0; q < b.c[j].size(); ++q) {
                    if (a.c[i][p].is_zero() || b.c[j][q].is_zero()) continue;
                    r.at(i + j, p + q) += a.c[i][p] * b.c[j][q];
                }
    return r;
}

// add b into a, both written from a common lead
void accumulate(Expansion& a, const Expansion& b, int len) {
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        long pos = static_cast<long>(i) + b.lead - a.lead;
        if (pos < 0) throw MathError("expansion lead mismatch");
        if (pos >= len) continue;
        for (std::size_t q = 0; q < b.c[i].size(); ++q) a.at(static_cast<std::size_t>(pos), q) += b.c[i][q];
    }
}

Expansion rf_expansion(const RationalFunction& r, int len) {
    if (!r.num().is_n_free() || !r.den().is_n_free()) throw MathError("weight coefficient depends on n");
    UPoly num = r.num().subs_n(0), den = r.den().subs_n(0);
    Expansion e = Expansion::zero(len);
    e.lead = den.degree() - num.degree();
    // num(k) = k^dn sum_j a_(dn-j) u^j, likewise den; series division in u
    auto rev = [len](const UPoly& p) {
        std::vector<BigRational> v(static_cast<std::size_t>(len), BigRational(0));
        for (int j = 0; j <= p.degree() && j < len; ++j) v[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(p.degree() - j)];
        return v;
    };
    std::vector<BigRational> a = rev(num), b = rev(den), q(static_cast<std::size_t>(len), BigRational(0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(len); ++i) {
        BigRational s = a[i];
        for (std::size_t j = 1; j <= i; ++j) s -= b[j] * q[i - j];
        q[i] = s / b[0];
        e.at(i, 0) = Complex(Real(q[i]));
    }
    return e;
}

Expansion harmonic_expansion(const HarmonicFactor& h, int len, const Precision& prec) {
    if (h.mult != 1 || h.offset != 0 || h.order < 1 || h.order > 2)
        throw MathError("asymptotic tail supports H_k and H_k^(2) only");
    Expansion e = Expansion::zero(len);
    if (h.order == 1) {
        e.at(0, 0) = Complex(euler_gamma());
        e.at(0, 1) = Complex(Real(1));
        if (len > 1) e.at(1, 0) = Complex(Real(make_rational(1, 2)));
        for (int j = 1; 2 * j < len; ++j) e.at(static_cast<std::size_t>(2 * j), 0) = Complex(Real(BigRational(-bernoulli(2 * j) / (2 * j))));
    } else {
        e.at(0, 0) = zeta(2, prec).value;
        if (len > 1) e.at(1, 0) = Complex(Real(-1));
        if (len > 2) e.at(2, 0) = Complex(Real(make_rational(1, 2)));
        for (int j = 1; 2 * j + 1 < len; ++j) e.at(static_cast<std::size_t>(2 * j + 1), 0) = Complex(Real(BigRational(-bernoulli(2 * j))));
    }
    return e;
}

// sum_{k > N} L^q k^(-s) by Euler-Maclaurin; err receives the last correction used
Real em_tail(int q, int s, long N, int J, Real& err) {
    const Real Nr(N), LN = log(Nr);
    // integral: sum_i q!/(q-i)! LN^(q-i) / (s-1)^(i+1) * N^(1-s)
    Real integral(0);
    Real fall(1);
    for (int i = 0; i <= q; ++i) {
        integral += fall * pow(LN, static_cast<long>(q - i)) / pow(Real(s - 1), static_cast<long>(i + 1));
        fall *= Real(q - i);
    }
    integral *= pow(Nr, static_cast<long>(1 - s));
    // g as a polynomial in L times x^(-p)
    std::vector<Real> g(static_cast<std::size_t>(q) + 1, Real(0));
    g[static_cast<std::size_t>(q)] = Real(1);
    int p = s;
    auto value = [&](const std::vector<Real>& h, int pw) {
        Real v(0);
        for (std::size_t i = 0; i < h.size(); ++i) v += h[i] * pow(LN, static_cast<long>(i));
        return v * pow(Nr, static_cast<long>(-pw));
    };
    auto differentiate = [&](std::vector<Real>& h, int& pw) {
        std::vector<Real> d(h.size(), Real(0));
        for (std::size_t i = 0; i < h.size(); ++i) {
            d[i] -= Real(pw) * h[i];
            if (i > 0) d[i - 1] += Real(static_cast<long>(i)) * h[i];
        }
        h = d;
        ++pw;
    };
    // sum_{k >= N} g(k) = int + g(N)/2 - sum_j B_2j/(2j)! g^(2j-1)(N), less g(N)
    Real total = integral - value(g, p) / Real(2);
    Real fact(1);
    differentiate(g, p);
    err = Real(0);
    for (int j = 1; j <= J; ++j) {
        fact = j == 1 ? Real(2) : fact * Real((2 * j - 1) * (2 * j));
        Real corr = Real(bernoulli(2 * j)) / fact * value(g, p);
        total -= corr;
        err = abs(corr);
        differentiate(g, p);
        differentiate(g, p);
    }
    return total;
}

}  // namespace

Weight parse_weight(const Json& j) {
    Weight w;
    for (auto& m : j) {
        WeightMonomial wm;
        if (m.contains("coeff")) wm.coeff = parse_rf(m.at("coeff"));
        if (m.contains("scalar")) wm.scalar = ConstantExpr::from_json(m.at("scalar"));
        if (m.contains("harmonics"))
            for (auto& h : m.at("harmonics")) {
                HarmonicFactor f;
                f.mult = as_long(h.at("mult"));
                f.offset = as_long(h.at("offset"));
                f.order = static_cast<int>(as_long(h.at("order")));
                f.exp = static_cast<int>(as_long(h.at("exp")));
                if (f.order < 1 || f.exp < 1 || f.mult < 1) throw MathError("bad harmonic factor");
                wm.harmonics.push_back(f);
            }
        w.push_back(std::move(wm));
    }
    return w;
}

Json weight_json(const Weight& w) {
    Json out = Json::array();
    for (auto& m : w) {
        Json j{{"coeff", rf_json(m.coeff)}, {"harmonics", Json::array()}};
        for (auto& h : m.harmonics)
            j["harmonics"].push_back({{"mult", std::to_string(h.mult)},
                                      {"offset", std::to_string(h.offset)},
                                      {"order", std::to_string(h.order)},
                                      {"exp", std::to_string(h.exp)}});
        if (m.scalar) j["scalar"] = m.scalar->to_json();
        out.push_back(j);
    }
    return out;
}

BigRational harmonic_number(long n, int order) {
    if (n < 0) throw MathError("harmonic number of negative index");
    BigRational s = 0;
    for (long j = 1; j <= n; ++j) {
        BigInt d;
        mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(order));
        s += make_rational(1, d);
    }
    return s;
}

Real harmonic_real(long n, int order) {
    if (n < 0) throw MathError("harmonic number of negative index");
    Real s(0);
    for (long j = n; j >= 1; --j) s += Real(1) / pow(Real(j), static_cast<long>(order));
    return s;
}

Complex eval_weight(const Weight& w, long k, const Precision& prec) {
    PrecisionScope scope(prec.bits());
    Complex total;
    for (auto& m : w) {
        Complex v(rf_eval(m.coeff, k));
        for (auto& h : m.harmonics) v *= pow(harmonic_real(h.mult * k + h.offset, h.order), static_cast<long>(h.exp));
        if (m.scalar) v *= const_expr_eval(*m.scalar, prec).value;
        total += v;
    }
    return total;
}

SeriesJob weighted_series(const HyperTerm& base, const Weight& w, long start, int digits) {
    SeriesJob job;
    job.start = start;
    job.target_digits = digits;
    // the weight grows like a polynomial times a power of log k
    job.derivative_order = 1;
    for (auto& m : w) {
        int e = 0;
        for (auto& h : m.harmonics)
            if (h.order == 1) e += h.exp;
        job.derivative_order = std::max(job.derivative_order, e);
    }
    job.term = [base, w](long k, const Precision& prec) -> TermValue {
        TermValue b = eval_term(base, 0, k, prec);
        PrecisionScope scope(prec.bits());
        Complex wv = eval_weight(w, k, prec);
        double scale = abs(wv).to_double();
        return {b.value * wv, b.error_bound * scale * 2};
    };
    return job;
}

SeriesResult sum_harmonic_series(const Weight& w, long start, int digits) {
    if (digits > precision_cap()) throw SeriesError("requested digits exceed the precision cap");
    const Precision prec{digits, 20};
    PrecisionScope scope(prec.bits());
    const long N = std::max<long>(start + 10, 100L * (1 + digits / 15));
    const int len = digits / 2 + 12;
    const int J = digits / 4 + 8;

    // direct part, harmonic numbers carried incrementally
    Complex S;
    Real H1(0), H2(0);
    std::vector<Complex> scalars;
    for (auto& m : w) scalars.push_back(m.scalar ? const_expr_eval(*m.scalar, prec).value : Complex(Real(1)));
    for (long k = 1; k < start; ++k) {
        H1 += Real(1) / Real(k);
        H2 += Real(1) / (Real(k) * Real(k));
    }
    for (long k = start; k <= N; ++k) {
        if (k >= 1) {
            H1 += Real(1) / Real(k);
            H2 += Real(1) / (Real(k) * Real(k));
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            const WeightMonomial& m = w[i];
            Complex v(rf_eval(m.coeff, k));
            for (auto& h : m.harmonics) {
                if (h.mult != 1 || h.offset != 0 || h.order > 2) throw MathError("asymptotic tail supports H_k and H_k^(2) only");
                v *= pow(h.order == 1 ? H1 : H2, static_cast<long>(h.exp));
            }
            S += v * scalars[i];
        }
    }

    // asymptotic tail
    Expansion total = Expansion::zero(len);
    std::vector<Expansion> parts;
    int lead = 1 << 20;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const WeightMonomial& m = w[i];
        Expansion e = rf_expansion(m.coeff, len);
        for (auto& h : m.harmonics)
            for (int r = 0; r < h.exp; ++r) e = multiply(e, harmonic_expansion(h, len, prec), len);
        for (auto& row : e.c)
            for (auto& v : row) v *= scalars[i];
        lead = std::min(lead, e.lead);
        parts.push_back(std::move(e));
    }
    total.lead = lead;
    for (auto& e : parts) accumulate(total, e, len);

    Complex tail;
    Real err(0), last_order(0);
    const Real scale_tol = pow(Real(10), static_cast<long>(-digits - 10));
    for (std::size_t i = 0; i < total.c.size(); ++i) {
        const int s = total.lead + static_cast<int>(i);
        Real order_size(0);
        for (std::size_t q = 0; q < total.c[i].size(); ++q) {
            const Complex& c = total.c[i][q];
            if (abs(c) <= scale_tol) continue;
            if (s <= 1) throw SeriesError("harmonic series diverges");
            Real e;
            Real v = em_tail(static_cast<int>(q), s, N, J, e);
            tail += c * v;
            err += abs(c) * e;
            order_size += abs(c) * abs(v);
        }
        if (i + 1 == total.c.size()) last_order = order_size;
    }
    // one more omitted order is roughly last_order / N; count the whole last order
    const double bound = (err + last_order).to_double() * 10 + std::pow(10.0, -prec.working_digits() + 5);
    SeriesResult r;
    r.value = S + tail;
    r.tail_bound = bound;
    r.error_bound = bound;
    r.terms_used = N - start + 1;
    r.working_digits = prec.working_digits();
    return r;
}

}  // namespace wzforge
