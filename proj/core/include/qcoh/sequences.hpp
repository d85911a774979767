#pragma once

#include "qcoh/sixterm.hpp"

#include <string>
#include <vector>

namespace qcoh {

/// One displayed cohomology sequence with its gate verdicts.
struct SequenceReport {
    std::string name;
    std::int64_t m = 0;
    int degree = 0;
    std::vector<std::pair<std::string, bool>> bockstein_gates; // subgroup tag -> vanishes
    bool gates_passed = false;
    std::vector<FinAb> groups;
    std::vector<FinAbMap> maps;
    std::vector<bool> exact_at; // interior positions
    std::string details;

    bool all_exact() const
    {
        for (bool b : exact_at)
            if (!b) return false;
        return true;
    }
    bool exact_when_gated() const { return !gates_passed || all_exact(); }
};

/// The cyclic-quotient six-term display
///   H^n(G) --m/k res--> H^n(H)_S --cor--> H^n(G) --u cup--> H^{n+1}(G)
///   --res--> H^{n+1}(H)^S --m/k cor--> H^{n+1}(G)
/// for H normal with G/H cyclic of order k | m; k = m is the classical
/// restricted display with no scaling.
SequenceReport cyclic_quotient_sequence(CohomologyContext& ctx, const Subgroup& h, std::int64_t m,
                                        const ModulePtr& t2, int n);

/// The two five-term displays for a cyclic tower H <= K <= G where G/H is
/// cyclic of order k divisible by m and K/H is its order-m subgroup; built
/// directly from res/cor/cup, with a Shapiro-transport agreement check
/// against the six-term machinery of the sigma quadruple and its dual.
struct TowerSequenceReports {
    SequenceReport first;
    SequenceReport second;
    // transport of the six-term middle arrows through the evaluation
    // isomorphism: for the sigma quadruple nu corresponds to cor o (u cup),
    // for its dual to (u cup) o res
    bool nu_agrees_with_shapiro = false;
    int nu_shapiro_sign = 0; // +1 or -1 when agreement holds
    bool dual_nu_agrees_with_shapiro = false;
    int dual_nu_shapiro_sign = 0;
};
TowerSequenceReports cyclic_tower_sequences(CohomologyContext& ctx, const Subgroup& h,
                                            std::int64_t m, const ModulePtr& t2, int n);

/// The first dihedral display over Gamma_k (4 | k), with the five stabilizer
/// subgroups standing in for the intermediate fields.
SequenceReport dihedral_sequence_first(CohomologyContext& ctx, int k, const ModulePtr& t2, int n);

/// The second dihedral display over Gamma_k (k even), the restricted-quadruple
/// variant.
SequenceReport dihedral_sequence_second(CohomologyContext& ctx, int k, const ModulePtr& t2, int n);

/// The biquadratic six-term display over the Klein group, with the pairing
/// through the self-duality characters chi_theta.
SequenceReport biquadratic_sequence(CohomologyContext& ctx, const ModulePtr& t2, int n);

/// Character values of the cyclic quotient K/L inside Z/m: g -> (m/d) e(g)
/// where d = [K : L] and e is the exponent with respect to the canonical
/// generator.  Requires K/L cyclic with d | m.
std::vector<std::int64_t> quotient_character(const Subgroup& l_in_k, std::int64_t m);

} // namespace qcoh
