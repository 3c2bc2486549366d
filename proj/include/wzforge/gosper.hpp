#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wzforge/hyperterm.hpp"

namespace wzforge {

// rho = (q(k) / r(k)) * (p(k+1) / p(k)) with gcd(q(k), r(k+j)) = 1 for j >= 0
struct GosperForm {
    Polynomial p;
    Polynomial q;
    Polynomial r;
};

// nonnegative integers j with gcd(a(k), b(k+j)) nontrivial over Q(n)
std::vector<long> dispersion_set(const Polynomial& a, const Polynomial& b);
GosperForm gosper_form(const RationalFunction& rho);

// R with R(k+1) rho(k) - R(k) = 1, or nothing if no hypergeometric
// antidifference exists
std::optional<RationalFunction> gosper_certificate(const RationalFunction& rho);

struct WZCertificate {
    RationalFunction mate_ratio;  // G = mate_ratio * F
    bool verified = false;
    RationalFunction residual;
};

struct WZMate {
    HyperTerm G;
    WZCertificate cert;
};

WZMate wz_mate(const HyperTerm& F);
WZCertificate verify_wz_pair(const HyperTerm& F, const HyperTerm& G);
// residual of Delta_n F = Delta_k (R F) for a given ratio
RationalFunction wz_residual(const HyperTerm& F, const RationalFunction& R);

// (F(n,-k-1), -G(n,-k)) for G = R F, the mate expressed over the
// regularized reflect_k(F)
struct ReflectedPair {
    HyperTerm F;
    RationalFunction mate_ratio;
};
ReflectedPair reflect_pair(const HyperTerm& F, const RationalFunction& R);

Json certificate_json(const std::string& pair_id, const WZCertificate& c);

}  // namespace wzforge
