#include "wzforge/constants.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace wzforge {

Json approx_json(const ApproxValue& v, int digits) {
    return Json{{"re", v.value.re.str(digits)}, {"im", v.value.im.str(digits)}, {"error_bound", v.error_bound}};
}

namespace {

constexpr int kEMCorrections = 12;

std::mutex g_const_mutex;
std::map<std::pair<int, mpfr_prec_t>, Real> g_basic;

template <class F>
Real memo_basic(int id, F compute) {
    const mpfr_prec_t bits = working_bits();
    {
        std::lock_guard<std::mutex> lock(g_const_mutex);
        auto it = g_basic.find({id, bits});
        if (it != g_basic.end()) return it->second;
    }
    Real v;
    {
        PrecisionScope scope(bits + 32);
        v = compute(bits + 32);
    }
    Real r = Real::with_bits(bits);
    mpfr_set(r.get(), v.get(), MPFR_RNDN);
    std::lock_guard<std::mutex> lock(g_const_mutex);
    g_basic.emplace(std::make_pair(id, bits), r);
    return r;
}

// atan(1/x) by its alternating series, stopped below 2^-(bits+8)
Real atan_inv(long x, mpfr_prec_t bits) {
    Real tol = ldexp(Real(1), -static_cast<long>(bits) - 8);
    Real x2 = Real(x) * Real(x);
    Real p = Real(1) / Real(x), s(0);
    for (long j = 0;; ++j) {
        Real t = p / Real(2 * j + 1);
        if (t < tol) break;
        if (j % 2 == 0)
            s += t;
        else
            s -= t;
        p /= x2;
    }
    return s;
}

double rounding_allowance(const Precision& prec, double magnitude, double ops) {
    return ops * std::pow(10.0, -prec.working_digits() + 2) * std::max(1.0, magnitude);
}

double log10_rising(double s, int r) { return (std::lgamma(s + r) - std::lgamma(s)) / std::log(10.0); }

struct EMOut {
    Real value;
    double bound;
};

// log10 of |first omitted Euler-Maclaurin term| for f(x) = ln^L(x) x^(-s) at X
double em_omitted_log10(double X, int s, int L) {
    const int r = 2 * kEMCorrections + 1;
    double lb = std::log10(std::fabs(bernoulli(r + 1).get_d())) - std::lgamma(r + 2.0) / std::log(10.0);
    double der = log10_rising(s, r) - (s + r) * std::log10(X);
    if (L == 1) der += std::log10(std::log(X) + 1.0);
    return lb + der + std::log10(2.0);
}

// sum_{m >= 0} ln^L(a+m) (a+m)^(-s), L in {0, 1}, s >= 2, a > 0
EMOut em_sum(const Real& a, int s, int L, const Precision& prec) {
    if (s < 2) throw MathError("Euler-Maclaurin sum needs s >= 2");
    if (a.sign() <= 0) throw MathError("Euler-Maclaurin offset must be positive");
    const double tol_log = -prec.working_digits();
    const double ad = a.to_double();
    long N = 0;
    while (em_omitted_log10(ad + static_cast<double>(N), s, L) > tol_log) N = N == 0 ? 4 : 2 * N;
    Real head(0), x = a;
    for (long m = 0; m < N; ++m) {
        Real t = pow(x, static_cast<long>(-s));
        if (L == 1) t *= log(x);
        head += t;
        x += Real(1);
    }
    const Real& X = x;
    Real lnX = log(X);
    Real Xs = pow(X, static_cast<long>(-s));
    Real tail = L == 0 ? Xs * X / Real(s - 1)
                       : Xs * X * (lnX / Real(s - 1) + Real(1) / Real(static_cast<long>(s - 1) * (s - 1)));
    Real fX = L == 0 ? Xs : Xs * lnX;
    tail += fX / Real(2);
    // -B_2j/(2j)! f^(2j-1)(X), f^(r) = (-1)^r [(s)_r ln^L X - L (s)_r'] X^(-s-r)
    BigRational rising = 1, drising = 0;
    Real inv = Real(1) / X, pw = Xs;
    BigRational fact = 1;
    for (int r = 1; r <= 2 * kEMCorrections - 1; ++r) {
        const BigRational sr = s + r - 1;
        drising = drising * sr + rising;
        rising *= sr;
        fact *= r;
        pw *= inv;
        if (r % 2 == 0) continue;
        const int j = (r + 1) / 2;
        BigRational c = bernoulli(2 * j) / (fact * (2 * j));
        // (-1)^r = -1 for odd r, so the correction is +c * [...]
        Real d = L == 0 ? Real(rising) : Real(rising) * lnX - Real(drising);
        tail += Real(c) * d * pw;
    }
    EMOut out{head + tail, 0.0};
    double mag = std::fabs(out.value.to_double());
    out.bound = std::pow(10.0, em_omitted_log10(X.to_double(), s, L)) +
                rounding_allowance(prec, mag, static_cast<double>(N) + 30.0);
    return out;
}

ApproxValue from_real(Real v, double bound) { return {Complex(std::move(v)), bound}; }

}  // namespace

Real pi() {
    return memo_basic(0, [](mpfr_prec_t bits) {
        return Real(16) * atan_inv(5, bits) - Real(4) * atan_inv(239, bits);
    });
}

Real log2_const() {
    return memo_basic(1, [](mpfr_prec_t bits) {
        // 2 atanh(1/3) = 2 sum 1/((2j+1) 3^(2j+1))
        Real tol = ldexp(Real(1), -static_cast<long>(bits) - 8);
        Real p = Real(1) / Real(3), s(0), nine(9);
        for (long j = 0;; ++j) {
            Real t = p / Real(2 * j + 1);
            if (t < tol) break;
            s += t;
            p /= nine;
        }
        return Real(2) * s;
    });
}

Real euler_gamma() {
    return memo_basic(2, [](mpfr_prec_t bits) {
        // gamma = H_{N-1} - ln N + 1/(2N) + sum B_2j / (2j N^2j)
        const long N = static_cast<long>(bits) / 3 + 20;
        Real tol = ldexp(Real(1), -static_cast<long>(bits) - 8);
        Real h(0);
        for (long m = 1; m < N; ++m) h += Real(1) / Real(m);
        Real n(N), inv2 = Real(1) / (n * n), p = inv2;
        Real g = h - log(n) + Real(1) / (Real(2) * n);
        for (int j = 1; j < 4 * N; ++j) {
            Real t = Real(bernoulli(2 * j) / BigRational(2 * j)) * p;
            if (abs(t) < tol) break;
            g += t;
            p *= inv2;
        }
        return g;
    });
}

ApproxValue zeta(int s, const Precision& prec) {
    if (s < 2) throw MathError("zeta(s) needs s >= 2");
    PrecisionScope scope(prec.bits());
    if (s % 2 == 0) {
        // zeta(2n) = (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!)
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(s));
        BigRational c = bernoulli(s) / (BigRational(f) * 2);
        if ((s / 2) % 2 == 0) c = -c;
        Real v = Real(c) * pow(Real(2) * pi(), static_cast<long>(s));
        double mag = std::fabs(v.to_double());
        return from_real(std::move(v), rounding_allowance(prec, mag, 4));
    }
    EMOut r = em_sum(Real(1), s, 0, prec);
    return from_real(std::move(r.value), r.bound);
}

ApproxValue hurwitz_zeta(int s, const Real& a, const Precision& prec) {
    PrecisionScope scope(prec.bits());
    EMOut r = em_sum(a, s, 0, prec);
    return from_real(std::move(r.value), r.bound);
}

ApproxValue double_zeta(int s1, int s2, const Precision& prec) {
    if (s1 < 2 || s2 < 1) throw MathError("double zeta needs s1 >= 2 and s2 >= 1");
    PrecisionScope scope(prec.bits());
    const long M = prec.working_digits() / 2 + 10;
    const double tol_log = -prec.working_digits();

    Real head(0), H(0);
    for (long m = 1; m < M; ++m) {
        head += H * pow(Real(m), static_cast<long>(-s1));
        H += pow(Real(m), static_cast<long>(-s2));
    }
    double bound = 0.0;
    auto hz = [&](int sigma) {
        EMOut r = em_sum(Real(M), sigma, 0, prec);
        bound += r.bound;
        return r.value;
    };
    Real tail(0);
    if (s2 >= 2) {
        // sum_{m>=M} m^-s1 (zeta(s2) - zeta(s2, m)), zeta(s2, m) expanded in m
        ApproxValue z2 = zeta(s2, prec);
        Real zs1 = hz(s1);
        tail = z2.value.re * zs1;
        bound += z2.error_bound * std::fabs(zs1.to_double());
        Real inner = hz(s1 + s2 - 1) / Real(s2 - 1) + hz(s1 + s2) / Real(2);
        BigRational rising = 1;
        int r = 0;
        for (int i = 1;; ++i) {
            // coefficient B_2i/(2i)! (s2)_{2i-1}
            while (r < 2 * i - 1) {
                rising *= s2 + r;
                ++r;
            }
            BigInt f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * i));
            BigRational c = bernoulli(2 * i) * rising / BigRational(f);
            const int sigma = s1 + s2 + 2 * i - 1;
            double est = std::log10(std::fabs(c.get_d())) - (sigma - 1) * std::log10(static_cast<double>(M));
            if (est < tol_log - 2) {
                bound += 2.0 * std::pow(10.0, est);
                break;
            }
            if (i > 400) throw MathError("double zeta tail expansion did not settle");
            inner += Real(c) * hz(sigma);
        }
        tail -= inner;
    } else {
        // H_{m-1} = gamma + psi(m), psi expanded in m
        Real inner = euler_gamma() * hz(s1);
        {
            EMOut lnsum = em_sum(Real(M), s1, 1, prec);
            inner += lnsum.value;
            bound += lnsum.bound;
        }
        inner -= hz(s1 + 1) / Real(2);
        for (int i = 1;; ++i) {
            BigRational c = bernoulli(2 * i) / BigRational(2 * i);
            const int sigma = s1 + 2 * i;
            double est = std::log10(std::fabs(c.get_d())) - (sigma - 1) * std::log10(static_cast<double>(M));
            if (est < tol_log - 2) {
                bound += 2.0 * std::pow(10.0, est);
                break;
            }
            if (i > 400) throw MathError("double zeta tail expansion did not settle");
            inner -= Real(c) * hz(sigma);
        }
        tail = inner;
    }
    Real v = head + tail;
    double mag = std::fabs(v.to_double());
    return from_real(std::move(v), bound + rounding_allowance(prec, mag, static_cast<double>(M) + 50.0));
}

ApproxValue dirichlet_L_minus3(int s, const Precision& prec) {
    if (s < 1) throw MathError("L_{-3}(s) needs s >= 1");
    PrecisionScope scope(prec.bits());
    Real third = Real(make_rational(1, 3)), two_thirds = Real(make_rational(2, 3));
    if (s == 1) {
        Real v = (polygamma(0, two_thirds, prec) - polygamma(0, third, prec)) / Real(3);
        return from_real(std::move(v), rounding_allowance(prec, 1.0, 200));
    }
    EMOut a = em_sum(third, s, 0, prec), b = em_sum(two_thirds, s, 0, prec);
    Real scale = pow(Real(3), static_cast<long>(-s));
    Real v = scale * (a.value - b.value);
    double sc = scale.to_double();
    return from_real(std::move(v), sc * (a.bound + b.bound) + rounding_allowance(prec, 1.0, 4));
}

// ------------------------------------------------------------ ConstantExpr

std::string atom_kind_name(AtomKind k) {
    switch (k) {
        case AtomKind::Pi: return "Pi";
        case AtomKind::Log2: return "Log2";
        case AtomKind::Zeta: return "Zeta";
        case AtomKind::DoubleZeta: return "DoubleZeta";
        case AtomKind::LMinus3: return "LMinus3";
        case AtomKind::I: return "I";
        case AtomKind::Sqrt2: return "Sqrt2";
        case AtomKind::Sqrt3: return "Sqrt3";
    }
    throw MathError("unknown atom kind");
}

AtomKind atom_kind_from_name(const std::string& s) {
    for (AtomKind k : {AtomKind::Pi, AtomKind::Log2, AtomKind::Zeta, AtomKind::DoubleZeta, AtomKind::LMinus3,
                       AtomKind::I, AtomKind::Sqrt2, AtomKind::Sqrt3})
        if (atom_kind_name(k) == s) return k;
    throw MathError("unsupported atom '" + s + "'");
}

static void check_atom(const Atom& a) {
    auto need = [&](std::size_t n) {
        if (a.args.size() != n) throw MathError("atom " + atom_kind_name(a.kind) + " has wrong argument count");
    };
    switch (a.kind) {
        case AtomKind::Pi: need(1); break;
        case AtomKind::Zeta:
            need(1);
            if (a.args[0] < 2) throw MathError("Zeta atom needs s >= 2");
            break;
        case AtomKind::DoubleZeta:
            need(2);
            if (a.args[0] < 2 || a.args[1] < 1) throw MathError("DoubleZeta atom is divergent");
            break;
        case AtomKind::LMinus3:
            need(1);
            if (a.args[0] < 1) throw MathError("LMinus3 atom needs s >= 1");
            break;
        default: need(0);
    }
}

ConstantExpr::ConstantExpr(std::vector<ConstTerm> terms) : terms_(std::move(terms)) { normalize(); }

ConstantExpr ConstantExpr::rational(const BigRational& q) { return ConstantExpr({ConstTerm{q, {}}}); }

ConstantExpr ConstantExpr::atom(Atom a) { return ConstantExpr({ConstTerm{1, {std::move(a)}}}); }

void ConstantExpr::normalize() {
    std::map<std::vector<Atom>, BigRational> merged;
    for (auto& t : terms_) {
        if (t.coeff == 0) continue;
        BigRational c = t.coeff;
        int pi_exp = 0, ni = 0, n2 = 0, n3 = 0;
        std::vector<Atom> rest;
        for (auto& a : t.atoms) {
            check_atom(a);
            switch (a.kind) {
                case AtomKind::Pi: pi_exp += a.args[0]; break;
                case AtomKind::I: ++ni; break;
                case AtomKind::Sqrt2: ++n2; break;
                case AtomKind::Sqrt3: ++n3; break;
                default: rest.push_back(a);
            }
        }
        if ((ni / 2) % 2 == 1) c = -c;
        for (int i = 0; i < n2 / 2; ++i) c *= 2;
        for (int i = 0; i < n3 / 2; ++i) c *= 3;
        if (pi_exp != 0) rest.push_back({AtomKind::Pi, {pi_exp}});
        if (ni % 2) rest.push_back({AtomKind::I, {}});
        if (n2 % 2) rest.push_back({AtomKind::Sqrt2, {}});
        if (n3 % 2) rest.push_back({AtomKind::Sqrt3, {}});
        std::sort(rest.begin(), rest.end());
        merged[rest] += c;
    }
    terms_.clear();
    for (auto& [atoms, c] : merged)
        if (c != 0) terms_.push_back({c, atoms});
}

bool ConstantExpr::has_imaginary() const {
    for (auto& t : terms_)
        for (auto& a : t.atoms)
            if (a.kind == AtomKind::I) return true;
    return false;
}

ConstantExpr ConstantExpr::operator-() const {
    ConstantExpr r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

ConstantExpr operator+(const ConstantExpr& a, const ConstantExpr& b) {
    std::vector<ConstTerm> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return ConstantExpr(std::move(t));
}

ConstantExpr operator*(const ConstantExpr& a, const ConstantExpr& b) {
    std::vector<ConstTerm> t;
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) {
            ConstTerm z{x.coeff * y.coeff, x.atoms};
            z.atoms.insert(z.atoms.end(), y.atoms.begin(), y.atoms.end());
            t.push_back(std::move(z));
        }
    return ConstantExpr(std::move(t));
}

bool operator==(const ConstantExpr& a, const ConstantExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].atoms != b.terms_[i].atoms) return false;
    return true;
}

ConstantExpr ConstantExpr::divide(const ConstantExpr& d) const {
    if (d.terms_.size() != 1) throw MathError("division by a non-monomial constant expression");
    const ConstTerm& m = d.terms_[0];
    ConstTerm inv{1 / m.coeff, {}};
    for (auto& a : m.atoms) {
        switch (a.kind) {
            case AtomKind::Pi: inv.atoms.push_back({AtomKind::Pi, {-a.args[0]}}); break;
            case AtomKind::I:
                inv.coeff = -inv.coeff;
                inv.atoms.push_back(a);
                break;
            case AtomKind::Sqrt2:
                inv.coeff /= 2;
                inv.atoms.push_back(a);
                break;
            case AtomKind::Sqrt3:
                inv.coeff /= 3;
                inv.atoms.push_back(a);
                break;
            default: throw MathError("cannot divide by " + atom_kind_name(a.kind));
        }
    }
    return *this * ConstantExpr({inv});
}

static std::string atom_text(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Pi: return a.args[0] == 1 ? "pi" : "pi^" + std::to_string(a.args[0]);
        case AtomKind::Log2: return "log2";
        case AtomKind::Zeta: return "zeta(" + std::to_string(a.args[0]) + ")";
        case AtomKind::DoubleZeta: return "zeta(" + std::to_string(a.args[0]) + "," + std::to_string(a.args[1]) + ")";
        case AtomKind::LMinus3: return "L3(" + std::to_string(a.args[0]) + ")";
        case AtomKind::I: return "I";
        case AtomKind::Sqrt2: return "sqrt2";
        case AtomKind::Sqrt3: return "sqrt3";
    }
    return "?";
}

std::string ConstantExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        BigRational c = t.coeff;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        BigRational mag = abs(c);
        std::vector<std::string> parts;
        if (mag != 1 || t.atoms.empty()) parts.push_back(mag.get_str());
        for (std::size_t i = 0; i < t.atoms.size();) {
            std::size_t j = i;
            while (j < t.atoms.size() && t.atoms[j] == t.atoms[i]) ++j;
            std::string s = atom_text(t.atoms[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            parts.push_back(s);
            i = j;
        }
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
    return os.str();
}

Json ConstantExpr::to_json() const {
    Json terms = Json::array();
    for (auto& t : terms_) {
        Json atoms = Json::array();
        for (auto& a : t.atoms) atoms.push_back({{"kind", atom_kind_name(a.kind)}, {"args", a.args}});
        terms.push_back({{"coeff", {{"p", t.coeff.get_num().get_str()}, {"q", t.coeff.get_den().get_str()}}},
                         {"atoms", atoms}});
    }
    return Json{{"terms", terms}};
}

static BigRational json_rational(const Json& j) {
    auto part = [&](const char* key) -> std::string {
        const Json& v = j.at(key);
        return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
    };
    return parse_rational(part("p") + "/" + part("q"));
}

ConstantExpr ConstantExpr::from_json(const Json& j) {
    try {
        std::vector<ConstTerm> terms;
        for (auto& t : j.at("terms")) {
            ConstTerm ct{json_rational(t.at("coeff")), {}};
            for (auto& a : t.at("atoms"))
                ct.atoms.push_back({atom_kind_from_name(a.at("kind").get<std::string>()),
                                    a.at("args").get<std::vector<int>>()});
            terms.push_back(std::move(ct));
        }
        return ConstantExpr(std::move(terms));
    } catch (const Json::exception& e) {
        throw MathError(std::string("malformed constant expression: ") + e.what());
    }
}

namespace {

class ConstParser {
public:
    explicit ConstParser(const std::string& s) : s_(s) {}

    ConstantExpr run() {
        ConstantExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw MathError("constant expression: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        bool neg = eat('-');
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) fail("expected integer");
        long v = std::stol(s_.substr(st, pos_ - st));
        return neg ? -v : v;
    }
    ConstantExpr expr() {
        ConstantExpr e = term();
        while (true) {
            if (eat('+'))
                e = e + term();
            else if (eat('-'))
                e = e - term();
            else
                return e;
        }
    }
    ConstantExpr term() {
        ConstantExpr e = unary();
        while (true) {
            if (eat('*'))
                e = e * unary();
            else if (eat('/'))
                e = e.divide(unary());
            else
                return e;
        }
    }
    ConstantExpr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    ConstantExpr power() {
        ConstantExpr b = primary();
        if (!eat('^')) return b;
        long e = integer();
        if (e < 0) {
            ConstantExpr r = ConstantExpr::rational(1);
            for (long i = 0; i < -e; ++i) r = r.divide(b);
            return r;
        }
        ConstantExpr r = ConstantExpr::rational(1);
        for (long i = 0; i < e; ++i) r = r * b;
        return r;
    }
    std::vector<int> args() {
        std::vector<int> a;
        if (!eat('(')) fail("expected '('");
        a.push_back(static_cast<int>(integer()));
        while (eat(',')) a.push_back(static_cast<int>(integer()));
        if (!eat(')')) fail("expected ')'");
        return a;
    }
    ConstantExpr primary() {
        skip();
        if (eat('(')) {
            ConstantExpr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ConstantExpr::rational(BigRational(BigInt(s_.substr(st, pos_ - st))));
        }
        std::size_t st = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string id = s_.substr(st, pos_ - st);
        if (id.empty()) fail("expected a number or name");
        if (id == "pi") return ConstantExpr::atom({AtomKind::Pi, {1}});
        if (id == "log2") return ConstantExpr::atom({AtomKind::Log2, {}});
        if (id == "I" || id == "i") return ConstantExpr::atom({AtomKind::I, {}});
        if (id == "sqrt2") return ConstantExpr::atom({AtomKind::Sqrt2, {}});
        if (id == "sqrt3") return ConstantExpr::atom({AtomKind::Sqrt3, {}});
        if (id == "zeta") {
            auto a = args();
            if (a.size() == 1) return ConstantExpr::atom({AtomKind::Zeta, a});
            if (a.size() == 2) return ConstantExpr::atom({AtomKind::DoubleZeta, a});
            fail("zeta takes one or two arguments");
        }
        if (id == "L3") return ConstantExpr::atom({AtomKind::LMinus3, args()});
        if (id.size() > 1 && id[0] == 'z' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
            return ConstantExpr::atom({AtomKind::Zeta, {std::stoi(id.substr(1))}});
        fail("unknown name '" + id + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

std::mutex g_atom_mutex;
std::map<std::tuple<int, std::vector<int>, int>, ApproxValue> g_atoms;

}  // namespace

ConstantExpr ConstantExpr::parse(const std::string& text) { return ConstParser(text).run(); }

ApproxValue atom_value(const Atom& a, const Precision& prec) {
    check_atom(a);
    auto key = std::make_tuple(static_cast<int>(a.kind), a.args, prec.working_digits());
    {
        std::lock_guard<std::mutex> lock(g_atom_mutex);
        auto it = g_atoms.find(key);
        if (it != g_atoms.end()) return it->second;
    }
    ApproxValue v;
    {
        PrecisionScope scope(prec.bits());
        switch (a.kind) {
            case AtomKind::Pi: {
                Real p = pow(pi(), static_cast<long>(a.args[0]));
                double m = std::fabs(p.to_double());
                v = from_real(std::move(p), rounding_allowance(prec, m, 2.0 + std::abs(a.args[0])));
                break;
            }
            case AtomKind::Log2: v = from_real(log2_const(), rounding_allowance(prec, 1, 2)); break;
            case AtomKind::Zeta: v = zeta(a.args[0], prec); break;
            case AtomKind::DoubleZeta: v = double_zeta(a.args[0], a.args[1], prec); break;
            case AtomKind::LMinus3: v = dirichlet_L_minus3(a.args[0], prec); break;
            case AtomKind::I: v = {Complex(Real(0), Real(1)), 0.0}; break;
            case AtomKind::Sqrt2: v = from_real(sqrt(Real(2)), rounding_allowance(prec, 2, 1)); break;
            case AtomKind::Sqrt3: v = from_real(sqrt(Real(3)), rounding_allowance(prec, 2, 1)); break;
        }
    }
    std::lock_guard<std::mutex> lock(g_atom_mutex);
    g_atoms.emplace(key, v);
    return v;
}

ApproxValue const_expr_eval(const ConstantExpr& e, const Precision& prec) {
    PrecisionScope scope(prec.bits());
    ApproxValue out;
    double err = 0.0;
    for (auto& t : e.terms()) {
        Complex prod = Complex(Real(t.coeff));
        const double c = std::fabs(t.coeff.get_d());
        std::vector<ApproxValue> vals;
        for (auto& a : t.atoms) vals.push_back(atom_value(a, prec));
        for (auto& v : vals) prod *= v.value;
        // first-order propagation
        for (std::size_t i = 0; i < vals.size(); ++i) {
            double p = c * vals[i].error_bound;
            for (std::size_t j = 0; j < vals.size(); ++j)
                if (j != i) p *= abs(vals[j].value).to_double();
            err += p;
        }
        err += rounding_allowance(prec, abs(prod).to_double(), 2.0 + static_cast<double>(vals.size()));
        out.value += prod;
    }
    out.error_bound = 2.0 * err;
    return out;
}

}  // namespace wzforge
