#include "wzforge/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>

namespace wzforge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// terms before an empirical or derivative tail bound is trusted
constexpr long kMinHeuristicTerms = 12;
// further terms tried after the first uncertifiable tail
constexpr long kRetryWindow = 10000;

// coefficients of p(K + x) all nonnegative
bool nonneg_on_shift(const UPoly& p) {
    for (auto& c : p.coeffs())
        if (c < 0) return false;
    return true;
}

// rho >= |num(k) / den(k)| for every real k >= K, by a Descartes-type
// coefficient test on rho*den -+ num after the shift k = K + x
bool certify_ratio(const UPoly& num, const UPoly& den, const BigRational& rho, long K) {
    UPoly N = num.shift(K), D = den.shift(K);
    if (!D.is_zero() && D.lc() < 0) D = -D, N = -N;
    return nonneg_on_shift(D * rho - N) && nonneg_on_shift(D * rho + N);
}

std::optional<double> exact_ratio_bound(const RationalFunction& r, long K) {
    if (!r.num().is_n_free() || !r.den().is_n_free()) throw SeriesError("ratio probe depends on n");
    UPoly num = r.num().subs_n(0), den = r.den().subs_n(0);
    if (num.is_zero()) return 0.0;
    if (num.degree() > den.degree()) return std::nullopt;
    BigRational L = num.degree() == den.degree() ? BigRational(abs(num.lc() / den.lc())) : BigRational(0);
    BigRational rho0 = L;
    for (long k : {K, K + 1}) {
        BigRational d = den.eval(BigRational(k));
        if (d == 0) return std::nullopt;
        rho0 = std::max(rho0, BigRational(abs(num.eval(BigRational(k)) / d)));
    }
    for (int j : {0, 12, 8, 5, 3, 1}) {
        BigRational rho = j == 0 ? rho0 : rho0 * (1 + make_rational(1, BigInt(1) << j));
        if (rho >= 1) break;
        if (certify_ratio(num, den, rho, K)) return rho.get_d();
    }
    return std::nullopt;
}

// log10 |t(K - i)| for i = 0, 1, 2, ...
double tail_from_mags(const SeriesJob& job, long K, const std::vector<double>& mags) {
    for (double m : mags)
        if (m == kNegInf) throw SeriesError("tail not certifiable: vanishing terms");
    if (mags.empty()) throw SeriesError("tail not certifiable: no terms");
    std::optional<double> rho;
    if (job.ratio_probe) rho = exact_ratio_bound(*job.ratio_probe, K);
    bool empirical = !rho.has_value();
    if (empirical) {
        if (mags.size() < 4) throw SeriesError("tail not certifiable: too few terms");
        double r = kNegInf;
        for (std::size_t i = 0; i + 1 < 4; ++i) {
            if (mags[i + 1] == kNegInf) throw SeriesError("tail not certifiable: vanishing terms");
            r = std::max(r, mags[i] - mags[i + 1]);
        }
        rho = 1.5 * std::pow(10.0, r);
    }
    double q = *rho;
    double amp = mags[0];
    const int m = job.derivative_order;
    if (m > 0) {
        // (log j / log K)^m <= exp(m (j - K) / (K log K)) per step
        const double Kd = std::max<double>(static_cast<double>(K), 3.0);
        q *= std::exp(m / (Kd * std::log(Kd)));
        for (std::size_t i = 1; i < std::min<std::size_t>(mags.size(), 3); ++i)
            amp = std::max(amp, mags[i] + static_cast<double>(i) * std::log10(q));
        amp += std::log10(2.0);
    }
    if (!(q < 1)) throw SeriesError("tail not certifiable: no ratio below 1");
    // double rounding of the magnitudes
    return std::pow(10.0, amp) * q / (1 - q) * (1 + 1e-9);
}

}  // namespace

int precision_cap() {
    if (const char* s = std::getenv("WZFORGE_PRECISION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 100;
}

double tail_bound_geometric(const SeriesJob& job, long K) {
    Precision prec{std::max(job.target_digits, 10), job.guard};
    PrecisionScope scope(prec.bits());
    std::vector<double> mags;
    for (long i = 0; i < 4 && K - i >= job.start; ++i) mags.push_back(abs(job.term(K - i, prec).value).log10_abs());
    return tail_from_mags(job, K, mags);
}

SeriesResult sum_to_tolerance(const SeriesJob& job) {
    if (job.target_digits < 1) throw SeriesError("target digits must be positive");
    if (job.target_digits > precision_cap()) throw SeriesError("requested digits exceed the precision cap");
    const double log_tol = -static_cast<double>(job.target_digits);
    int guard = job.guard;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Precision prec{job.target_digits, guard};
        PrecisionScope scope(prec.bits());
        Complex S;
        double max_log = kNegInf, eval_err = 0, tail = 0;
        std::deque<double> mags;
        long k = job.start;
        std::optional<SeriesError> pending;
        long first_failure = 0;
        for (;; ++k) {
            if (k - job.start >= kMaxSeriesTerms) throw SeriesError("term limit reached");
            TermValue tv = job.term(k, prec);
            S += tv.value;
            eval_err += tv.error_bound;
            const double lt = abs(tv.value).log10_abs();
            max_log = std::max(max_log, abs(S).log10_abs());
            mags.push_front(lt);
            if (mags.size() > 4) mags.pop_back();
            if (k - job.start < 3) continue;
            const double scale = std::max(0.0, abs(S).log10_abs());
            const double goal = log_tol + scale - std::log10(4.0);
            if (std::all_of(mags.begin(), mags.end(), [](double m) { return m == kNegInf; })) {
                // a hypergeometric term stays zero once it vanishes off the poles of its quotient
                if (job.derivative_order == 0 && job.ratio_probe && exact_ratio_bound(*job.ratio_probe, k)) {
                    tail = 0;
                    break;
                }
                continue;
            }
            if (lt > goal + 1 || std::any_of(mags.begin(), mags.end(), [](double m) { return m == kNegInf; }))
                continue;
            const bool exact = job.derivative_order == 0 && job.ratio_probe && exact_ratio_bound(*job.ratio_probe, k);
            if (!exact && k - job.start < kMinHeuristicTerms) continue;
            try {
                tail = tail_from_mags(job, k, std::vector<double>(mags.begin(), mags.end()));
            } catch (const SeriesError& e) {
                if (!pending) pending = e, first_failure = k;
                if (k - first_failure >= kRetryWindow) throw *pending;
                continue;
            }
            if (std::log10(tail) < goal) break;
        }
        const long n = k - job.start + 1;
        const double mag = abs(S).log10_abs();
        const double scale = std::max(0.0, mag);
        const double round = static_cast<double>(n) * std::pow(10.0, max_log - prec.working_digits() + 1);
        const double total = tail + eval_err + round;
        // cancellation: the partial sums ran larger than the result
        const int lost = mag == kNegInf ? 0 : static_cast<int>(std::ceil(std::max(0.0, max_log - scale)));
        if (lost > guard - 10 && attempt < 3) {
            guard = job.guard + lost;
            continue;
        }
        if (total > std::pow(10.0, log_tol + scale)) {
            guard += 15;
            continue;
        }
        return {S, total, n, tail, prec.working_digits()};
    }
    throw SeriesError("error budget not met after raising precision");
}

RationalFunction probe_quotient(const HyperTerm& t0, Var var, const BigRational& other) {
    HyperTerm t = t0;
    // a non-integer phase has modulus 1
    if (t.phase_var == var && !(t.phase.get_den() == 1)) t.phase = 0;
    RationalFunction q = shift_quotient(t, var);
    if (var == Var::k) {
        return RationalFunction(Polynomial::from_upoly_k(q.num().subs_n(other)),
                                Polynomial::from_upoly_k(q.den().subs_n(other)));
    }
    return RationalFunction(Polynomial::from_upoly_k(q.num().subs_k(other)),
                            Polynomial::from_upoly_k(q.den().subs_k(other)));
}

SeriesJob term_series(const HyperTerm& t, Var var, const BigRational& other, long start, int digits,
                      const std::string& diff_var, int order) {
    SeriesJob job;
    job.start = start;
    job.target_digits = digits;
    job.derivative_order = order;
    job.ratio_probe = probe_quotient(t, var, other);
    const bool on_k = var == Var::k;
    job.term = [t, on_k, other, diff_var, order](long j, const Precision& prec) -> TermValue {
        if (order == 0) return on_k ? eval_term(t, other, BigRational(j), prec) : eval_term(t, BigRational(j), other, prec);
        Real o(other), x(j);
        return on_k ? derivative_value(t, diff_var, order, o, x, prec) : derivative_value(t, diff_var, order, x, o, prec);
    };
    return job;
}

}  // namespace wzforge
