#pragma once

#include <string>

#include "gonodyn/errors.hpp"
#include "gonodyn/scalar.hpp"

namespace gonodyn {

/// Which of the three parameter regimes the reduced map falls in.
/// Exactly one holds: p1 = p2 = 1, or p1 > 1 > p2, or p2 > 1 > p1.
enum class CaseTag { Equal, P1Dominant, P2Dominant };

inline const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::Equal: return "Equal";
        case CaseTag::P1Dominant: return "P1Dominant";
        default: return "P2Dominant";
    }
}

/// Heredity parameters of the two-type gonosomal operator.
///
///   a + b = 1        — split of (female1 x male1) and (female2 x male2) offspring
///   sigma1 + sigma2 = 1 — split of the mixed pair (female1 x male2)
///   p1 = sigma1 / a,  p2 = sigma2 / b — the only combinations the reduced map sees.
///
/// The trichotomy is forced: sigma1 > a  <=>  p1 > 1  <=>  p2 < 1.
template <class S>
struct GonosomalParams {
    S a, b, sigma1, sigma2, p1, p2;
    CaseTag case_tag;

    // Construction goes through the named factories below; a private default
    // constructor keeps aggregate initialization (which would bypass the
    // a + b = 1 bookkeeping) from compiling.
  private:
    GonosomalParams() = default;

  public:
    static GonosomalParams from_a_sigma(S a, S sigma1) {
        scalar_traits<S>::canonicalize(a);
        scalar_traits<S>::canonicalize(sigma1);
        if (!(a > S(0)) || !(a < S(1)))
            throw ConfigError("a must lie strictly inside (0,1)");
        if (!(sigma1 > S(0)) || !(sigma1 < S(1)))
            throw ConfigError("sigma1 must lie strictly inside (0,1)");
        GonosomalParams p;
        p.a = a;
        p.b = S(1) - a;
        p.sigma1 = sigma1;
        p.sigma2 = S(1) - sigma1;
        p.p1 = p.sigma1 / p.a;
        p.p2 = p.sigma2 / p.b;
        if (sigma1 == a)
            p.case_tag = CaseTag::Equal;
        else if (sigma1 > a)
            p.case_tag = CaseTag::P1Dominant;
        else
            p.case_tag = CaseTag::P2Dominant;
        return p;
    }

    /// Recover (a, sigma1) from the reduced-map rates. Requires p1 != p2 and an
    /// admissible pair (one rate above 1, the other below); Equal-case rates
    /// leave `a` free, so they must go through from_a_sigma directly.
    static GonosomalParams from_rates(S p1, S p2) {
        scalar_traits<S>::canonicalize(p1);
        scalar_traits<S>::canonicalize(p2);
        if (p1 == p2)
            throw ConfigError("p1 == p2 leaves 'a' undetermined; supply (a, sigma1) instead");
        S a = (S(1) - p2) / (p1 - p2);
        if (!(a > S(0)) || !(a < S(1)))
            throw ConfigError("rates (p1, p2) are not realizable by any a in (0,1)");
        return from_a_sigma(a, S(p1 * a));
    }
};

}  // namespace gonodyn
