#include "wzforge/hyperterm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace wzforge {

namespace {

BigRational frac_part(const BigRational& q) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - BigRational(f);
}

BigInt floor_of(const BigRational& q) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

bool is_int(const BigRational& q) { return q.get_den() == 1; }

int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }
int parity(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) ? 1 : 0; }

BigRational rat_pow(const BigRational& b, long e) {
    BigRational r = 1;
    BigRational base = e < 0 ? BigRational(1 / b) : b;
    unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), m);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), m);
    return r;
}

BigInt factorial(const BigInt& m) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), m.get_ui());
    return r;
}

// argument polynomial cn*n + ck*k + offset, parameters at the origin
Polynomial arg_poly(const GammaFactor& g) {
    return Polynomial::n() * BigRational(g.cn) + Polynomial::k() * BigRational(g.ck) + Polynomial(g.offset);
}

Polynomial rising_poly(const Polynomial& z, long m) {
    Polynomial r(1);
    for (long i = 0; i < m; ++i) r = r * (z + Polynomial(BigRational(i)));
    return r;
}

struct Fraction {
    Polynomial num = Polynomial(1);
    Polynomial den = Polynomial(1);
    void mul(const Polynomial& p, int e) {
        for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : den) = (e > 0 ? num : den) * p;
    }
    RationalFunction done() const { return ratfunc_normalize(num, den); }
};

// ------------------------------------------------------------------ JSON

[[noreturn]] void bad(const std::string& what) { throw MathError("malformed term: " + what); }

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) bad(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) bad("unknown field '" + it.key() + "' in " + where);
    }
}

BigInt json_int(const Json& v, const std::string& where) {
    try {
        if (v.is_string()) return BigInt(v.get<std::string>());
        if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
    } catch (const std::invalid_argument&) {
    }
    bad(where + " must be an integer");
}

long json_long(const Json& v, const std::string& where) {
    BigInt z = json_int(v, where);
    if (!z.fits_slong_p()) bad(where + " out of range");
    return z.get_si();
}

BigRational json_rat(const Json& v, const std::string& where) {
    check_keys(v, {"p", "q"}, where);
    BigInt p = v.contains("p") ? json_int(v.at("p"), where + ".p") : BigInt(0);
    BigInt q = v.contains("q") ? json_int(v.at("q"), where + ".q") : BigInt(1);
    if (q == 0) throw MathError("zero denominator in " + where);
    return make_rational(p, q);
}

Json rat_json(const BigRational& q) { return Json{{"p", q.get_num().get_str()}, {"q", q.get_den().get_str()}}; }

Json params_json(const ParamCoeffs& p) {
    Json o = Json::object();
    for (auto& [k, v] : p) o[k] = std::to_string(v);
    return o;
}

ParamCoeffs json_params(const Json& v, const std::string& where) {
    if (!v.is_object()) bad(where + " must be an object");
    ParamCoeffs p;
    for (auto it = v.begin(); it != v.end(); ++it) p[it.key()] = json_long(it.value(), where + "." + it.key());
    return p;
}

Polynomial json_poly(const Json& v, const std::string& where) {
    if (!v.is_array()) bad(where + " must be an array");
    std::vector<Polynomial::Term> ts;
    for (auto& e : v) {
        if (!e.is_array() || e.size() != 4) bad(where + " entries are [exp_n, exp_k, p, q]");
        long en = json_long(e[0], where), ek = json_long(e[1], where);
        if (en < 0 || ek < 0) bad(where + " exponents must be nonnegative");
        BigInt p = json_int(e[2], where), q = json_int(e[3], where);
        if (q == 0) throw MathError("zero denominator in " + where);
        ts.push_back({static_cast<int>(en), static_cast<int>(ek), make_rational(p, q)});
    }
    return Polynomial::from_terms(ts);
}

Json poly_json(const Polynomial& p) {
    Json a = Json::array();
    for (auto& t : p.terms())
        a.push_back({std::to_string(t.en), std::to_string(t.ek), t.coeff.get_num().get_str(),
                     t.coeff.get_den().get_str()});
    return a;
}

// ------------------------------------------------------------ evaluation

Real poly_eval(const Polynomial& p, const Real& n, const Real& k) {
    Real acc(0);
    const auto& by_k = p.by_k();
    for (auto it = by_k.rbegin(); it != by_k.rend(); ++it) {
        Real c(0);
        const auto& cs = it->coeffs();
        for (auto jt = cs.rbegin(); jt != cs.rend(); ++jt) c = c * n + Real(*jt);
        acc = acc * k + c;
    }
    return acc;
}

Real arg_value(const GammaFactor& g, const Real& n, const Real& k, const ParamValues& pv) {
    Real z = Real(g.offset);
    if (g.cn) z += Real(g.cn) * n;
    if (g.ck) z += Real(g.ck) * k;
    for (auto& [name, c] : g.params) {
        auto it = pv.find(name);
        if (it != pv.end()) z += Real(c) * it->second;
    }
    return z;
}

// ln|Gamma(x)| and the sign of Gamma(x) for real x off the nonpositive integers
std::pair<Real, int> log_abs_gamma(const Real& x, const Precision& prec) {
    if (x.sign() > 0) return {log_gamma(x, prec), 1};
    if (x.is_integer()) throw MathError("Gamma at a nonpositive integer");
    Real s = sin(pi() * x);
    return {log(pi()) - log(abs(s)) - log_gamma(Real(1) - x, prec), s.sign()};
}

double rel_rounding(const Precision& prec) { return std::pow(10.0, -prec.working_digits() + 2); }

double scaled_bound(const Complex& v, double rel) {
    double lg = abs(v).log10_abs();
    if (!std::isfinite(lg)) return 0.0;
    return std::max(std::pow(10.0, lg + std::log10(rel)), std::numeric_limits<double>::min());
}

void check_signs(const HyperTerm& t, bool n_int, bool k_int) {
    if (t.sign_n && !n_int) throw MathError("(-1)^n at a non-integer n");
    if (t.sign_k && !k_int) throw MathError("(-1)^k at a non-integer k");
}

TermValue eval_real_core(const HyperTerm& t, const Real& n, const Real& k, const Precision& prec,
                         const ParamValues& pv) {
    check_signs(t, n.is_integer(), k.is_integer());
    Real den = poly_eval(t.prefactor.den(), n, k);
    if (den.is_zero()) throw MathError("pole of the prefactor");
    Real pre = poly_eval(t.prefactor.num(), n, k) / den;
    if (pre.is_zero()) return {};
    int sign = pre.sign();
    Real L = log(abs(pre));
    double rel = 4.0;
    if ((t.sign_n && parity(n.to_long())) != (t.sign_k && parity(k.to_long()))) sign = -sign;
    for (auto& g : t.geometric) {
        Real e = Real(g.exp_n) * n + Real(g.exp_k) * k;
        for (auto& [name, c] : g.params) {
            auto it = pv.find(name);
            if (it != pv.end()) e += Real(c) * it->second;
        }
        Real lb = log(Real(g.base)) * e;
        L += lb;
        rel += 2.0 + std::fabs(lb.to_double());
    }
    for (auto& g : t.gammas) {
        auto [lg, s] = log_abs_gamma(arg_value(g, n, k, pv), prec);
        if (s < 0 && g.exponent % 2) sign = -sign;
        L += Real(g.exponent) * lg;
        rel += std::abs(g.exponent) * (2.0 + std::fabs(lg.to_double()));
    }
    rel += std::fabs(L.to_double());
    Complex v = Complex(exp(L) * Real(sign));
    if (t.phase != 0) v *= unit_phase(Real(t.phase) * (t.phase_var == Var::n ? n : k));
    return {v, scaled_bound(v, rel * rel_rounding(prec))};
}

// pole cancellation: Gamma(z) at a nonpositive integer z0 becomes
// Gamma(z + j) / (z)_j with j = 1 - z0, the pochhammer joining the prefactor
HyperTerm resolve_poles(const HyperTerm& t, const BigRational& n, const BigRational& k) {
    HyperTerm r = t;
    Fraction f;
    bool moved = false;
    for (auto& g : r.gammas) {
        BigRational z = BigRational(g.cn) * n + BigRational(g.ck) * k + g.offset;
        if (!is_int(z) || z > 0) continue;
        long j = 1 - z.get_num().get_si();
        f.mul(rising_poly(arg_poly(g), j), -g.exponent);
        g.offset += j;
        moved = true;
    }
    if (moved) r.prefactor = r.prefactor * f.done();
    return r;
}

// exact Gamma at an integer or half-integer point, as (rational, sqrt(pi) power)
std::pair<BigRational, int> exact_gamma(const BigRational& z) {
    if (is_int(z)) {
        if (z <= 0) throw MathError("Gamma at a nonpositive integer");
        return {BigRational(factorial(z.get_num() - 1)), 0};
    }
    BigInt m = floor_of(z);  // z = m + 1/2
    if (m >= 0) {
        BigInt four_m;
        mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m.get_ui());
        return {make_rational(factorial(2 * m), four_m * factorial(m)), 1};
    }
    BigInt p = -m, four_p;
    mpz_ui_pow_ui(four_p.get_mpz_t(), 4, p.get_ui());
    BigRational v = make_rational(four_p * factorial(p), factorial(2 * p));
    if (parity(p)) v = -v;
    return {v, 1};
}

}  // namespace

// ---------------------------------------------------------- HyperTerm

HyperTerm HyperTerm::constant(const BigRational& c) {
    HyperTerm t;
    t.prefactor = RationalFunction(c);
    return t;
}

void HyperTerm::canonicalize() {
    sign_n = parity(sign_n);
    sign_k = parity(sign_k);
    std::vector<GeometricFactor> geo;
    for (auto g : geometric) {
        if (g.base == 0) throw MathError("zero geometric base");
        if (g.base < 0) {
            if (!g.params.empty()) throw MathError("negative geometric base with a parameter exponent");
            g.base = -g.base;
            sign_n ^= parity(g.exp_n);
            sign_k ^= parity(g.exp_k);
        }
        if (g.base == 1) continue;
        auto it = std::find_if(geo.begin(), geo.end(), [&](const GeometricFactor& h) { return h.base == g.base; });
        if (it == geo.end()) {
            geo.push_back(g);
            continue;
        }
        it->exp_n += g.exp_n;
        it->exp_k += g.exp_k;
        for (auto& [name, c] : g.params) it->params[name] += c;
    }
    geometric.clear();
    for (auto& g : geo) {
        std::erase_if(g.params, [](const auto& kv) { return kv.second == 0; });
        if (g.exp_n || g.exp_k || !g.params.empty()) geometric.push_back(g);
    }
    std::sort(geometric.begin(), geometric.end(),
              [](const GeometricFactor& a, const GeometricFactor& b) { return a.base < b.base; });

    auto key = [](const GammaFactor& g) { return std::tie(g.cn, g.ck, g.params, g.offset); };
    std::vector<GammaFactor> gs;
    for (auto g : gammas) {
        std::erase_if(g.params, [](const auto& kv) { return kv.second == 0; });
        auto it = std::find_if(gs.begin(), gs.end(), [&](const GammaFactor& h) { return key(h) == key(g); });
        if (it == gs.end())
            gs.push_back(g);
        else
            it->exponent += g.exponent;
    }
    std::erase_if(gs, [](const GammaFactor& g) { return g.exponent == 0; });
    std::sort(gs.begin(), gs.end(), [&](const GammaFactor& a, const GammaFactor& b) { return key(a) < key(b); });
    gammas = std::move(gs);

    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    auto declared = [&](const ParamCoeffs& pc) {
        for (auto& [name, c] : pc)
            if (!std::binary_search(params.begin(), params.end(), name))
                throw MathError("undeclared parameter '" + name + "'");
    };
    for (auto& g : gammas) declared(g.params);
    for (auto& g : geometric) declared(g.params);
    if (phase == 0) phase_var = Var::k;
}

HyperTerm HyperTerm::scaled(const RationalFunction& r) const {
    HyperTerm t = *this;
    t.prefactor = t.prefactor * r;
    return t;
}

bool operator==(const HyperTerm& a, const HyperTerm& b) {
    return a.prefactor == b.prefactor && a.sign_n == b.sign_n && a.sign_k == b.sign_k && a.phase == b.phase &&
           a.phase_var == b.phase_var && a.geometric == b.geometric && a.gammas == b.gammas &&
           a.params == b.params && a.domain == b.domain;
}

HyperTerm parse_term(const Json& doc) {
    check_keys(doc, {"prefactor", "sign", "phase", "geometric", "gammas", "domain", "params"}, "term");
    HyperTerm t;
    if (doc.contains("prefactor")) {
        const Json& p = doc.at("prefactor");
        check_keys(p, {"num", "den"}, "prefactor");
        Polynomial num = p.contains("num") ? json_poly(p.at("num"), "prefactor.num") : Polynomial(1);
        Polynomial den = p.contains("den") ? json_poly(p.at("den"), "prefactor.den") : Polynomial(1);
        if (den.is_zero()) throw MathError("zero denominator in prefactor");
        t.prefactor = ratfunc_normalize(num, den);
    }
    if (doc.contains("sign")) {
        const Json& s = doc.at("sign");
        check_keys(s, {"n", "k"}, "sign");
        if (s.contains("n")) t.sign_n = parity(json_long(s.at("n"), "sign.n"));
        if (s.contains("k")) t.sign_k = parity(json_long(s.at("k"), "sign.k"));
    }
    if (doc.contains("phase")) {
        const Json& ph = doc.at("phase");
        check_keys(ph, {"var", "p", "q"}, "phase");
        std::string var = ph.contains("var") ? ph.at("var").get<std::string>() : "k";
        if (var == "n")
            t.phase_var = Var::n;
        else if (var == "k" || var == "x")
            t.phase_var = Var::k;
        else
            bad("phase.var must be n, k or x");
        Json pq = Json::object();
        if (ph.contains("p")) pq["p"] = ph.at("p");
        if (ph.contains("q")) pq["q"] = ph.at("q");
        t.phase = json_rat(pq, "phase");
    }
    if (doc.contains("geometric")) {
        if (!doc.at("geometric").is_array()) bad("geometric must be an array");
        for (auto& g : doc.at("geometric")) {
            check_keys(g, {"base", "exp_n", "exp_k", "params"}, "geometric");
            GeometricFactor f;
            if (!g.contains("base")) bad("geometric factor without base");
            f.base = json_rat(g.at("base"), "geometric.base");
            if (g.contains("exp_n")) f.exp_n = json_long(g.at("exp_n"), "geometric.exp_n");
            if (g.contains("exp_k")) f.exp_k = json_long(g.at("exp_k"), "geometric.exp_k");
            if (g.contains("params")) f.params = json_params(g.at("params"), "geometric.params");
            t.geometric.push_back(std::move(f));
        }
    }
    if (doc.contains("gammas")) {
        if (!doc.at("gammas").is_array()) bad("gammas must be an array");
        for (auto& g : doc.at("gammas")) {
            check_keys(g, {"cn", "ck", "params", "offset", "exp"}, "gamma");
            GammaFactor f;
            if (g.contains("cn")) f.cn = json_long(g.at("cn"), "gamma.cn");
            if (g.contains("ck")) f.ck = json_long(g.at("ck"), "gamma.ck");
            if (g.contains("params")) f.params = json_params(g.at("params"), "gamma.params");
            if (g.contains("offset")) f.offset = json_rat(g.at("offset"), "gamma.offset");
            if (g.contains("exp")) f.exponent = static_cast<int>(json_long(g.at("exp"), "gamma.exp"));
            t.gammas.push_back(std::move(f));
        }
    }
    if (doc.contains("domain")) {
        const Json& d = doc.at("domain");
        check_keys(d, {"n0", "k0"}, "domain");
        if (d.contains("n0")) t.domain.n0 = json_long(d.at("n0"), "domain.n0");
        if (d.contains("k0")) t.domain.k0 = json_long(d.at("k0"), "domain.k0");
    }
    if (doc.contains("params")) {
        if (!doc.at("params").is_array()) bad("params must be an array");
        for (auto& p : doc.at("params")) {
            if (!p.is_string()) bad("parameter names must be strings");
            t.params.push_back(p.get<std::string>());
        }
    }
    t.canonicalize();
    return t;
}

HyperTerm parse_term_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        bad(e.what());
    }
    try {
        return parse_term(doc);
    } catch (const Json::exception& e) {
        bad(e.what());
    }
}

Json serialize_term(const HyperTerm& t) {
    Json j;
    j["prefactor"] = {{"num", poly_json(t.prefactor.num())}, {"den", poly_json(t.prefactor.den())}};
    j["sign"] = {{"n", std::to_string(t.sign_n)}, {"k", std::to_string(t.sign_k)}};
    j["phase"] = {{"var", t.phase_var == Var::n ? "n" : "k"},
                  {"p", t.phase.get_num().get_str()},
                  {"q", t.phase.get_den().get_str()}};
    Json geo = Json::array();
    for (auto& g : t.geometric) {
        Json o{{"base", rat_json(g.base)}, {"exp_n", std::to_string(g.exp_n)}, {"exp_k", std::to_string(g.exp_k)}};
        if (!g.params.empty()) o["params"] = params_json(g.params);
        geo.push_back(std::move(o));
    }
    j["geometric"] = geo;
    Json gs = Json::array();
    for (auto& g : t.gammas)
        gs.push_back({{"cn", std::to_string(g.cn)},
                      {"ck", std::to_string(g.ck)},
                      {"params", params_json(g.params)},
                      {"offset", rat_json(g.offset)},
                      {"exp", std::to_string(g.exponent)}});
    j["gammas"] = gs;
    j["domain"] = {{"n0", std::to_string(t.domain.n0)}, {"k0", std::to_string(t.domain.k0)}};
    j["params"] = t.params;
    return j;
}

// ------------------------------------------------------- shift quotient

RationalFunction shift_quotient(const HyperTerm& t, Var var) {
    const bool on_n = var == Var::n;
    Fraction f;
    const RationalFunction& p = t.prefactor;
    RationalFunction ps = on_n ? p.shift_n(1) : p.shift_k(1);
    f.num = ps.num() * p.den();
    f.den = ps.den() * p.num();
    if (p.num().is_zero()) return RationalFunction();
    BigRational c = 1;
    if (on_n ? t.sign_n : t.sign_k) c = -c;
    if (t.phase != 0 && t.phase_var == var) {
        if (!is_int(t.phase)) throw MathError("non-integer phase has no rational shift quotient");
        if (parity(t.phase.get_num())) c = -c;
    }
    for (auto& g : t.geometric) c *= rat_pow(g.base, on_n ? g.exp_n : g.exp_k);
    for (auto& g : t.gammas) {
        const long s = on_n ? g.cn : g.ck;
        if (s == 0) continue;
        Polynomial z = arg_poly(g);
        if (s > 0)
            f.mul(rising_poly(z, s), g.exponent);
        else
            f.mul(rising_poly(z + Polynomial(BigRational(s)), -s), -g.exponent);
    }
    f.num *= c;
    return f.done();
}

// ------------------------------------------------------------ evaluation

TermValue eval_term(const HyperTerm& t0, const BigRational& n, const BigRational& k, const Precision& prec) {
    PrecisionScope scope(prec.bits());
    check_signs(t0, is_int(n), is_int(k));
    HyperTerm t = resolve_poles(t0, n, k);
    if (t.prefactor.pole_at(n, k)) throw MathError("pole of the prefactor");
    BigRational R = t.prefactor.eval(n, k);
    if (R == 0) return {};
    if ((t.sign_n && parity(n.get_num())) != (t.sign_k && parity(k.get_num()))) R = -R;

    bool exact = true;
    for (auto& g : t.geometric) {
        BigRational e = BigRational(g.exp_n) * n + BigRational(g.exp_k) * k;
        if (!is_int(e) || !e.get_num().fits_slong_p()) exact = false;
    }
    int sqrt_pi = 0;
    for (auto& g : t.gammas) {
        BigRational z = BigRational(g.cn) * n + BigRational(g.ck) * k + g.offset;
        if (!(is_int(z) || z.get_den() == 2) || abs(z) > 100000) exact = false;
    }
    BigRational phase_t = t.phase * (t.phase_var == Var::n ? n : k);
    bool phase_exact = is_int(2 * phase_t);
    if (!exact) {
        TermValue v = eval_real_core(t, Real(n), Real(k), prec, {});
        return v;
    }
    for (auto& g : t.geometric) R *= rat_pow(g.base, BigRational(BigRational(g.exp_n) * n + BigRational(g.exp_k) * k).get_num().get_si());
    for (auto& g : t.gammas) {
        auto [v, sp] = exact_gamma(BigRational(g.cn) * n + BigRational(g.ck) * k + g.offset);
        R *= rat_pow(v, g.exponent);
        sqrt_pi += sp * g.exponent;
    }
    Real x = Real::with_bits(working_bits());
    int inexact = mpfr_set_q(x.get(), R.get_mpq_t(), MPFR_RNDN);
    if (sqrt_pi != 0) {
        x *= pow(sqrt(pi()), static_cast<long>(sqrt_pi));
        inexact = 1;
    }
    Complex v(x);
    if (t.phase != 0) {
        v = v * (phase_exact ? unit_phase(phase_t) : unit_phase(Real(phase_t)));
        if (!phase_exact) inexact = 1;
    }
    double rel = inexact ? (8.0 + std::abs(sqrt_pi)) * std::ldexp(1.0, 1 - static_cast<int>(working_bits())) : 0.0;
    return {v, inexact ? scaled_bound(v, rel) : 0.0};
}

TermValue eval_term(const HyperTerm& t, const Real& n, const Real& k, const Precision& prec, const ParamValues& pv) {
    PrecisionScope scope(prec.bits());
    return eval_real_core(t, n, k, prec, pv);
}

// ------------------------------------------------------------ reflection

HyperTerm reflect_k(const HyperTerm& t, bool regularize) {
    HyperTerm r;
    r.params = t.params;
    r.domain = t.domain;
    r.sign_n = t.sign_n;
    r.sign_k = t.sign_k;
    BigRational c = 1;
    if (t.sign_k) c = -c;
    r.phase = t.phase;
    r.phase_var = t.phase_var;
    if (t.phase != 0 && t.phase_var == Var::k) {
        if (!is_int(t.phase)) throw MathError("reflection of a non-integer k-phase");
        r.phase = -t.phase;
        if (parity(t.phase.get_num())) c = -c;
    }
    for (auto g : t.geometric) {
        c *= rat_pow(g.base, -g.exp_k);
        g.exp_k = -g.exp_k;
        r.geometric.push_back(g);
    }
    // integer-offset factors whose k-coefficient turns negative
    long pole_balance = 0;
    for (auto& g : t.gammas) {
        GammaFactor h = g;
        h.ck = -g.ck;
        h.offset = g.offset - BigRational(g.ck);
        if (h.ck >= 0) {
            r.gammas.push_back(h);
            continue;
        }
        const long a = h.cn, b = -h.ck;
        const int e = h.exponent;
        ParamCoeffs neg = h.params;
        for (auto& [name, v] : neg) v = -v;
        GammaFactor inv{-h.cn, -h.ck, neg, 1 - h.offset, -e};
        if (is_int(h.offset) && h.params.empty()) {
            // limit along k: Gamma(z0 - b eps) ~ (-1)^m / (m! (-b eps)), m = -z0
            pole_balance += e;
            c *= rat_pow(BigRational(-b), -e);
            if (parity(h.offset.get_num()) && parity(e)) c = -c;
        } else {
            // Gamma(z) = (-1)^(an - bk + floor c) Gamma(c'') Gamma(1 - c'') / Gamma(1 - z)
            BigRational cc = frac_part(h.offset);
            if (parity(floor_of(h.offset)) && parity(e)) c = -c;
            r.gammas.push_back({0, 0, h.params, cc, e});
            r.gammas.push_back({0, 0, neg, 1 - cc, e});
        }
        r.sign_n ^= parity(a * e);
        r.sign_k ^= parity(b * e);
        r.gammas.push_back(inv);
    }
    if (pole_balance != 0 && !regularize) throw MathError("reflection leaves a Gamma argument at an integer pole for every k");
    r.prefactor = t.prefactor.reflect_k() * RationalFunction(c);
    r.canonicalize();
    return r;
}

// ------------------------------------------------------- log derivatives

namespace {

// Taylor coefficients in the variable at the point, for a polynomial in (n,k)
std::vector<Real> taylor(const Polynomial& p, bool on_n, const Real& n, const Real& k, int order) {
    std::vector<Real> coeffs;  // coefficients in the chosen variable, others substituted
    for (auto& t : p.terms()) {
        int e = on_n ? t.en : t.ek;
        int o = on_n ? t.ek : t.en;
        if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(static_cast<std::size_t>(e) + 1, Real(0));
        coeffs[static_cast<std::size_t>(e)] += Real(t.coeff) * pow(on_n ? k : n, static_cast<long>(o));
    }
    const Real& x0 = on_n ? n : k;
    std::vector<Real> a(static_cast<std::size_t>(order) + 1, Real(0));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        BigInt binom = 1;
        for (std::size_t i = 0; i <= j && i <= static_cast<std::size_t>(order); ++i) {
            a[i] += Real(binom) * coeffs[j] * pow(x0, static_cast<long>(j - i));
            binom = binom * BigInt(static_cast<unsigned long>(j - i)) / BigInt(static_cast<unsigned long>(i + 1));
        }
    }
    return a;
}

// L^(j) of log P from its Taylor coefficients
std::vector<Real> log_series(const std::vector<Real>& a, int order) {
    if (a[0].is_zero()) throw MathError("log-derivative at a zero or pole of the prefactor");
    std::vector<Real> l(static_cast<std::size_t>(order) + 1, Real(0));
    for (int j = 1; j <= order; ++j) {
        Real s = Real(j) * a[static_cast<std::size_t>(j)];
        for (int i = 1; i < j; ++i) s -= Real(i) * l[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j - i)];
        l[static_cast<std::size_t>(j)] = s / (Real(j) * a[0]);
    }
    BigInt f = 1;
    for (int j = 1; j <= order; ++j) {
        f *= j;
        l[static_cast<std::size_t>(j)] *= Real(f);
    }
    return l;
}

}  // namespace

LogDerivativeAt param_log_derivative(const HyperTerm& t, const std::string& var, int order, const Real& n,
                                     const Real& k, const Precision& prec) {
    if (order < 1 || order > kMaxDerivativeOrder) throw MathError("derivative order outside 1..8");
    PrecisionScope scope(prec.bits());
    const bool on_n = var == "n", on_k = var == "k";
    if (!on_n && !on_k && !std::binary_search(t.params.begin(), t.params.end(), var))
        throw MathError("unknown differentiation variable '" + var + "'");
    if ((on_n && t.sign_n) || (on_k && t.sign_k)) throw MathError("cannot differentiate a (-1)^var sign");
    LogDerivativeAt out;
    out.derivs.assign(static_cast<std::size_t>(order), Complex());
    auto add = [&](int j, const Real& v) { out.derivs[static_cast<std::size_t>(j - 1)].re += v; };

    for (auto& g : t.gammas) {
        long c = on_n ? g.cn : on_k ? g.ck : (g.params.count(var) ? g.params.at(var) : 0);
        if (c == 0) continue;
        Real z = arg_value(g, n, k, {});
        if (z.sign() <= 0) throw MathError("polygamma at a nonpositive argument");
        auto psi = polygamma_all(order - 1, z, prec);
        Real cp(1);
        for (int j = 1; j <= order; ++j) {
            cp *= Real(c);
            add(j, Real(g.exponent) * cp * psi[static_cast<std::size_t>(j - 1)]);
        }
    }
    if (on_n || on_k) {
        auto ln = log_series(taylor(t.prefactor.num(), on_n, n, k, order), order);
        auto ld = log_series(taylor(t.prefactor.den(), on_n, n, k, order), order);
        for (int j = 1; j <= order; ++j) add(j, ln[static_cast<std::size_t>(j)] - ld[static_cast<std::size_t>(j)]);
    }
    for (auto& g : t.geometric) {
        long e = on_n ? g.exp_n : on_k ? g.exp_k : (g.params.count(var) ? g.params.at(var) : 0);
        if (e) add(1, Real(e) * log(Real(g.base)));
    }
    if (t.phase != 0 && ((on_n && t.phase_var == Var::n) || (on_k && t.phase_var == Var::k)))
        out.derivs[0].im += pi() * Real(t.phase);
    out.value = eval_real_core(t, n, k, prec, {});
    return out;
}

TermValue derivative_value(const HyperTerm& t, const std::string& var, int order, const Real& n, const Real& k,
                           const Precision& prec) {
    PrecisionScope scope(prec.bits());
    if (order == 0) return eval_real_core(t, n, k, prec, {});
    LogDerivativeAt ld = param_log_derivative(t, var, order, n, k, prec);
    Complex d = derivative_via_bell(ld.derivs, ld.value.value);
    // majorant: Bell polynomial of |L^(j)| bounds every cancellation
    std::vector<Complex> mags;
    for (auto& x : ld.derivs) mags.emplace_back(abs(x));
    double B = bell_complete(mags).back().re.to_double();
    double fv = abs(ld.value.value).to_double();
    double err = ld.value.error_bound * B + fv * B * rel_rounding(prec) * 100.0;
    return {d, err};
}

// ------------------------------------------------------------ b / a

std::optional<RationalFunction> rational_ratio(const HyperTerm& b, const HyperTerm& a) {
    if (b.is_zero()) return RationalFunction();
    if (a.is_zero()) throw MathError("ratio by the zero term");
    if (b.sign_n != a.sign_n || b.sign_k != a.sign_k) return std::nullopt;
    if (b.phase != a.phase || (b.phase != 0 && b.phase_var != a.phase_var)) return std::nullopt;
    {
        HyperTerm probe;
        probe.params = b.params;
        probe.params.insert(probe.params.end(), a.params.begin(), a.params.end());
        probe.geometric = b.geometric;
        for (auto g : a.geometric) {
            g.exp_n = -g.exp_n;
            g.exp_k = -g.exp_k;
            for (auto& [name, c] : g.params) c = -c;
            probe.geometric.push_back(g);
        }
        probe.canonicalize();
        if (!probe.geometric.empty() || probe.sign_n || probe.sign_k) return std::nullopt;
    }
    using Key = std::tuple<long, long, ParamCoeffs, BigRational>;
    std::map<Key, std::vector<std::pair<BigRational, int>>> classes;
    for (auto& g : b.gammas) classes[{g.cn, g.ck, g.params, frac_part(g.offset)}].push_back({g.offset, g.exponent});
    for (auto& g : a.gammas) classes[{g.cn, g.ck, g.params, frac_part(g.offset)}].push_back({g.offset, -g.exponent});
    Fraction f;
    f.num = b.prefactor.num() * a.prefactor.den();
    f.den = b.prefactor.den() * a.prefactor.num();
    for (auto& [key, items] : classes) {
        long total = 0;
        BigRational lo = items.front().first;
        for (auto& [o, e] : items) {
            total += e;
            lo = std::min(lo, o);
        }
        if (total != 0) return std::nullopt;
        GammaFactor base{std::get<0>(key), std::get<1>(key), {}, lo, 1};
        Polynomial z = arg_poly(base);
        // Gamma(z + o) = Gamma(z + lo) (z + lo)_(o - lo)
        for (auto& [o, e] : items) {
            long d = BigRational(o - lo).get_num().get_si();
            if (d) f.mul(rising_poly(z, d), e);
        }
    }
    return f.done();
}

}  // namespace wzforge
