#include "wzforge/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wzforge {

BigRational make_rational(const BigInt& p, const BigInt& q) {
    if (q == 0) throw MathError("zero denominator");
    BigRational r(p, q);
    r.canonicalize();
    return r;
}

BigRational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw MathError("empty rational");
    if (t[0] == '+') t.erase(0, 1);
    BigRational q;
    try {
        auto slash = t.find('/');
        if (slash == std::string::npos) {
            q = BigRational(BigInt(t), 1);
        } else {
            BigInt p(t.substr(0, slash)), d(t.substr(slash + 1));
            if (d == 0) throw MathError("zero denominator in rational '" + text + "'");
            q = BigRational(p, d);
        }
    } catch (const std::invalid_argument&) {
        throw MathError("malformed rational '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(BigRational c) {
    if (c != 0) c_.push_back(std::move(c));
}

UPoly::UPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::x() { return UPoly(std::vector<BigRational>{0, 1}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational UPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

const BigRational& UPoly::lc() const {
    if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
    return c_.back();
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator*=(const BigRational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<BigRational> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
}

BigRational UPoly::eval(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::compose_affine(const BigRational& a, const BigRational& b) const {
    if (a == 1 && b == 0) return *this;
    // Horner in the substituted linear polynomial
    UPoly lin(std::vector<BigRational>{b, a});
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + UPoly(*it);
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    BigRational inv = 1 / lc();
    return r *= inv;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<BigRational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    std::vector<BigRational> r = a.c_;
    const BigRational inv = 1 / b.lc();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        const BigRational f = r[static_cast<std::size_t>(i)] * inv;
        if (f == 0) continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a.monic();
}

static void append_monomial(std::ostringstream& os, bool& first, const BigRational& c,
                            const std::vector<std::pair<std::string, int>>& vars) {
    BigRational mag = abs(c);
    bool neg = c < 0;
    if (first) {
        if (neg) os << "-";
    } else {
        os << (neg ? " - " : " + ");
    }
    first = false;
    bool any_var = false;
    for (auto& [v, e] : vars)
        if (e > 0) any_var = true;
    bool wrote = false;
    if (mag != 1 || !any_var) {
        os << mag.get_str();
        wrote = true;
    }
    for (auto& [v, e] : vars) {
        if (e == 0) continue;
        if (wrote) os << "*";
        os << v;
        if (e > 1) os << "^" << e;
        wrote = true;
    }
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[static_cast<std::size_t>(i)] == 0) continue;
        append_monomial(os, first, c_[static_cast<std::size_t>(i)], {{var, i}});
    }
    return os.str();
}

// ----------------------------------------------------------- Polynomial

Polynomial::Polynomial(BigRational c) {
    if (c != 0) c_.push_back(UPoly(std::move(c)));
}

Polynomial::Polynomial(std::vector<UPoly> by_k) : c_(std::move(by_k)) { trim(); }

Polynomial Polynomial::n() { return Polynomial(std::vector<UPoly>{UPoly::x()}); }

Polynomial Polynomial::k() { return Polynomial(std::vector<UPoly>{UPoly(), UPoly(1)}); }

Polynomial Polynomial::from_upoly_n(const UPoly& p) { return Polynomial(std::vector<UPoly>{p}); }

Polynomial Polynomial::from_upoly_k(const UPoly& p) {
    std::vector<UPoly> v;
    for (auto& c : p.coeffs()) v.emplace_back(c);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_terms(const std::vector<Term>& terms) {
    int dk = -1;
    for (auto& t : terms) {
        if (t.en < 0 || t.ek < 0) throw MathError("negative exponent in polynomial term");
        dk = std::max(dk, t.ek);
    }
    std::vector<std::vector<BigRational>> dense(static_cast<std::size_t>(dk + 1));
    for (auto& t : terms) {
        auto& row = dense[static_cast<std::size_t>(t.ek)];
        if (row.size() <= static_cast<std::size_t>(t.en)) row.resize(static_cast<std::size_t>(t.en) + 1, 0);
        row[static_cast<std::size_t>(t.en)] += t.coeff;
    }
    std::vector<UPoly> v;
    for (auto& row : dense) v.emplace_back(row);
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Polynomial::deg_n() const {
    int d = -1;
    for (auto& c : c_) d = std::max(d, c.degree());
    return d;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (std::size_t j = 0; j < c_.size(); ++j)
        if (!c_[j].is_zero()) d = std::max(d, c_[j].degree() + static_cast<int>(j));
    return d;
}

bool Polynomial::is_constant() const { return c_.size() <= 1 && (c_.empty() || c_[0].is_constant()); }

bool Polynomial::is_n_free() const {
    for (auto& c : c_)
        if (!c.is_constant()) return false;
    return true;
}

const UPoly& Polynomial::coeff_k(int j) const {
    static const UPoly zero;
    if (j < 0 || j > deg_k()) return zero;
    return c_[static_cast<std::size_t>(j)];
}

const UPoly& Polynomial::lc_k() const {
    if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
    return c_.back();
}

std::vector<Polynomial::Term> Polynomial::terms() const {
    std::vector<Term> out;
    for (std::size_t j = 0; j < c_.size(); ++j)
        for (int i = 0; i <= c_[j].degree(); ++i)
            if (c_[j][static_cast<std::size_t>(i)] != 0)
                out.push_back({i, static_cast<int>(j), c_[j][static_cast<std::size_t>(i)]});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        if (a.en + a.ek != b.en + b.ek) return a.en + a.ek > b.en + b.ek;
        return a.en > b.en;
    });
    return out;
}

Polynomial::Term Polynomial::leading_term() const {
    if (is_zero()) throw MathError("leading term of zero polynomial");
    return terms().front();
}

std::vector<std::string> Polynomial::variables() const {
    std::vector<std::string> v;
    if (deg_n() > 0) v.push_back("n");
    if (deg_k() > 0) v.push_back("k");
    return v;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const BigRational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<UPoly> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::mul_n(const UPoly& p) const {
    std::vector<UPoly> r = c_;
    for (auto& c : r) c = c * p;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r(1), b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

BigRational Polynomial::eval(const BigRational& n, const BigRational& k) const {
    BigRational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * k + it->eval(n);
    return acc;
}

UPoly Polynomial::subs_n(const BigRational& n) const {
    std::vector<BigRational> v;
    v.reserve(c_.size());
    for (auto& c : c_) v.push_back(c.eval(n));
    return UPoly(std::move(v));
}

UPoly Polynomial::subs_k(const BigRational& k) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * UPoly(k) + *it;
    return acc;
}

Polynomial Polynomial::compose_affine(const BigRational& an, const BigRational& bn,
                                      const BigRational& ak, const BigRational& bk) const {
    if (is_zero()) return *this;
    std::vector<UPoly> moved;
    moved.reserve(c_.size());
    for (auto& c : c_) moved.push_back(c.compose_affine(an, bn));
    if (ak == 1 && bk == 0) return Polynomial(std::move(moved));
    std::vector<UPoly> r(c_.size());
    // (ak*k + bk)^j expanded with binomial coefficients
    for (std::size_t j = 0; j < moved.size(); ++j) {
        if (moved[j].is_zero()) continue;
        BigInt binom = 1;
        for (std::size_t i = 0; i <= j; ++i) {
            BigRational f = BigRational(binom);
            BigRational akp = 1, bkp = 1;
            for (std::size_t t = 0; t < i; ++t) akp *= ak;
            for (std::size_t t = 0; t < j - i; ++t) bkp *= bk;
            f *= akp * bkp;
            if (f != 0) r[i] += moved[j] * f;
            binom = binom * static_cast<unsigned long>(j - i) / static_cast<unsigned long>(i + 1);
        }
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::derivative_k() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<UPoly> r(c_.size() - 1);
    for (std::size_t j = 1; j < c_.size(); ++j) r[j - 1] = c_[j] * BigRational(static_cast<long>(j));
    return Polynomial(std::move(r));
}

UPoly Polynomial::content_k() const {
    UPoly g;
    for (auto& c : c_) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : UPoly::gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Polynomial Polynomial::primitive_k() const {
    if (is_zero()) return *this;
    UPoly g = content_k();
    std::vector<UPoly> r;
    r.reserve(c_.size());
    if (g.is_constant()) {
        // scale so that the leading k-coefficient is monic in n
        BigRational inv = 1 / lc_k().lc();
        for (auto& c : c_) r.push_back(c * inv);
        return Polynomial(std::move(r));
    }
    for (auto& c : c_) r.push_back(UPoly::divrem(c, g).first);
    Polynomial p(std::move(r));
    BigRational inv = 1 / p.lc_k().lc();
    return p *= inv;
}

Polynomial Polynomial::normalized() const {
    if (is_zero()) return *this;
    BigRational inv = 1 / leading_term().coeff;
    Polynomial r = *this;
    return r *= inv;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms()) append_monomial(os, first, t.coeff, {{"n", t.en}, {"k", t.ek}});
    return os.str();
}

// -------------------------------------------------------- division, gcd

DivRem pseudo_divrem(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    const int db = b.deg_k();
    if (a.is_zero() || a.deg_k() < db) return {Polynomial(), a, UPoly(1)};
    const int delta = a.deg_k() - db;
    const UPoly& lcb = b.lc_k();
    Polynomial q, r = a;
    int e = delta + 1;
    while (!r.is_zero() && r.deg_k() >= db) {
        const int j = r.deg_k() - db;
        std::vector<UPoly> tv(static_cast<std::size_t>(j) + 1);
        tv[static_cast<std::size_t>(j)] = r.lc_k();
        Polynomial t(std::move(tv));
        q = q.mul_n(lcb) + t;
        r = r.mul_n(lcb) - t * b;
        --e;
    }
    UPoly f(1);
    for (int i = 0; i < e; ++i) f = f * lcb;
    if (e > 0) {
        q = q.mul_n(f);
        r = r.mul_n(f);
    }
    UPoly scale(1);
    for (int i = 0; i <= delta; ++i) scale = scale * lcb;
    return {q, r, scale};
}

DivRem divrem(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    if (!b.lc_k().is_constant()) return pseudo_divrem(a, b);
    const int db = b.deg_k();
    const BigRational inv = 1 / b.lc_k().lc();
    Polynomial q, r = a;
    while (!r.is_zero() && r.deg_k() >= db) {
        const int j = r.deg_k() - db;
        std::vector<UPoly> tv(static_cast<std::size_t>(j) + 1);
        tv[static_cast<std::size_t>(j)] = r.lc_k() * inv;
        Polynomial t(std::move(tv));
        q += t;
        r -= t * b;
    }
    return {q, r, UPoly(1)};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw MathError("division by zero polynomial");
    const int db = b.deg_k();
    const UPoly& lcb = b.lc_k();
    Polynomial q, r = a;
    while (!r.is_zero()) {
        if (r.deg_k() < db) throw MathError("inexact polynomial division");
        auto [cq, cr] = UPoly::divrem(r.lc_k(), lcb);
        if (!cr.is_zero()) throw MathError("inexact polynomial division");
        const int j = r.deg_k() - db;
        std::vector<UPoly> tv(static_cast<std::size_t>(j) + 1);
        tv[static_cast<std::size_t>(j)] = cq;
        Polynomial t(std::move(tv));
        q += t;
        r -= t * b;
    }
    return q;
}

static Polynomial normalize_gcd(const Polynomial& g) {
    if (g.is_zero()) return g;
    if (g.lc_k().is_constant()) {
        Polynomial r = g;
        return r *= 1 / g.lc_k().lc();
    }
    return g.normalized();
}

static Polynomial div_by_n(const Polynomial& p, const UPoly& d) {
    std::vector<UPoly> r;
    r.reserve(p.by_k().size());
    for (auto& c : p.by_k()) {
        auto [q, rem] = UPoly::divrem(c, d);
        if (!rem.is_zero()) throw MathError("inexact content division");
        r.push_back(std::move(q));
    }
    return Polynomial(std::move(r));
}

static UPoly upow(const UPoly& b, int e) {
    UPoly r(1);
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
}

// subresultant PRS over Q[n]
Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return normalize_gcd(b);
    if (b.is_zero()) return normalize_gcd(a);
    UPoly cont = UPoly::gcd(a.content_k(), b.content_k());
    Polynomial pa = a.primitive_k(), pb = b.primitive_k();
    Polynomial g(1);
    if (pa.deg_k() > 0 && pb.deg_k() > 0) {
        if (pa.deg_k() < pb.deg_k()) std::swap(pa, pb);
        UPoly sg(1), sh(1);
        while (true) {
            const int d = pa.deg_k() - pb.deg_k();
            Polynomial r = pseudo_divrem(pa, pb).rem;
            if (r.is_zero()) {
                g = pb.primitive_k();
                break;
            }
            if (r.deg_k() == 0) break;  // only a content is left: coprime
            pa = std::move(pb);
            pb = div_by_n(r, sg * upow(sh, d));
            sg = pa.lc_k();
            if (d == 0) continue;
            UPoly num = upow(sg, d), den = upow(sh, d - 1);
            sh = UPoly::divrem(num, den).first;
        }
    }
    return normalize_gcd(g.mul_n(cont));
}

std::pair<Polynomial, Polynomial> poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return {a + b, Polynomial()};
        case PolyOp::sub: return {a - b, Polynomial()};
        case PolyOp::mul: return {a * b, Polynomial()};
        case PolyOp::divrem: {
            auto d = divrem(a, b);
            if (!(d.scale == UPoly(1))) {
                // express over Q(n): only meaningful when the scale is n-free
                if (!d.scale.is_constant()) throw MathError("divrem over Q(n) needs an n-free leading coefficient");
                BigRational inv = 1 / d.scale.lc();
                d.quo *= inv;
                d.rem *= inv;
            }
            return {d.quo, d.rem};
        }
        case PolyOp::gcd: return {gcd(a, b), Polynomial()};
    }
    throw MathError("unknown polynomial operation");
}

// ----------------------------------------------------- RationalFunction

RationalFunction ratfunc_normalize(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw MathError("zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    Polynomial g = gcd(num, den);
    Polynomial nn = g.is_constant() ? num : exact_div(num, g);
    Polynomial dd = g.is_constant() ? den : exact_div(den, g);
    BigRational s = 1 / dd.leading_term().coeff;
    nn *= s;
    dd *= s;
    return RationalFunction(std::move(nn), std::move(dd));
}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw MathError("zero denominator");
    if (num.is_zero()) {
        num_ = Polynomial();
        den_ = Polynomial(1);
        return;
    }
    // trusted fast path for already-coprime pairs with monic denominator
    if (den.leading_term().coeff == 1 && (den.is_constant() || gcd(num, den).is_constant())) {
        num_ = std::move(num);
        den_ = std::move(den);
        return;
    }
    *this = ratfunc_normalize(num, den);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return ratfunc_normalize(a.num_ + b.num_, a.den_);
    return ratfunc_normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    // cross-cancel first to keep intermediate degrees small
    Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Polynomial an = g1.is_constant() ? a.num_ : exact_div(a.num_, g1);
    Polynomial bd = g1.is_constant() ? b.den_ : exact_div(b.den_, g1);
    Polynomial bn = g2.is_constant() ? b.num_ : exact_div(b.num_, g2);
    Polynomial ad = g2.is_constant() ? a.den_ : exact_div(a.den_, g2);
    Polynomial nn = an * bn, dd = ad * bd;
    BigRational s = 1 / dd.leading_term().coeff;
    nn *= s;
    dd *= s;
    RationalFunction r;
    r.num_ = std::move(nn);
    r.den_ = std::move(dd);
    return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw MathError("division by zero rational function");
    RationalFunction inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    BigRational s = 1 / inv.den_.leading_term().coeff;
    inv.num_ *= s;
    inv.den_ *= s;
    return a * inv;
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return RationalFunction(1) / pow(-e);
    RationalFunction r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

BigRational RationalFunction::eval(const BigRational& n, const BigRational& k) const {
    BigRational d = den_.eval(n, k);
    if (d == 0) throw MathError("pole of rational function");
    return num_.eval(n, k) / d;
}

bool RationalFunction::pole_at(const BigRational& n, const BigRational& k) const { return den_.eval(n, k) == 0; }

RationalFunction RationalFunction::compose_affine(const BigRational& an, const BigRational& bn,
                                                  const BigRational& ak, const BigRational& bk) const {
    Polynomial nn = num_.compose_affine(an, bn, ak, bk), dd = den_.compose_affine(an, bn, ak, bk);
    if (an == 0 || ak == 0) return ratfunc_normalize(nn, dd);
    // invertible substitution keeps the pair coprime
    if (nn.is_zero()) return RationalFunction();
    BigRational s = 1 / dd.leading_term().coeff;
    nn *= s;
    dd *= s;
    RationalFunction r;
    r.num_ = std::move(nn);
    r.den_ = std::move(dd);
    return r;
}

std::string RationalFunction::str() const {
    if (den_ == Polynomial(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw MathError("parse error at " + std::to_string(pos_) + " in '" + s_ + "': " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    RationalFunction expr() {
        RationalFunction r = term();
        while (true) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    RationalFunction term() {
        RationalFunction r = unary();
        while (true) {
            if (eat('*')) r = r * unary();
            else if (eat('/')) r = r / unary();
            else return r;
        }
    }
    RationalFunction unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RationalFunction power() {
        RationalFunction b = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            skip();
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) fail("expected integer exponent");
            int e = std::stoi(s_.substr(st, pos_ - st));
            return b.pow(neg ? -e : e);
        }
        return b;
    }
    RationalFunction atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (ch == 'n') {
            ++pos_;
            return RationalFunction(Polynomial::n());
        }
        if (ch == 'k') {
            ++pos_;
            return RationalFunction(Polynomial::k());
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalFunction(BigRational(BigInt(s_.substr(st, pos_ - st))));
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction RationalFunction::parse(const std::string& text) { return ExprParser(text).parse(); }

Polynomial Polynomial::parse(const std::string& text) {
    RationalFunction r = RationalFunction::parse(text);
    if (!r.den().is_constant()) throw MathError("not a polynomial: '" + text + "'");
    Polynomial p = r.num();
    return p *= 1 / r.den().leading_term().coeff;
}

}  // namespace wzforge
