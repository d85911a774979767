#pragma once

#include "qcoh/cochain.hpp"
#include "qcoh/finab.hpp"
#include "qcoh/subquotient.hpp"

#include <map>
#include <memory>

namespace qcoh {

struct CohomologyOptions {
    int degree_cap = 3;
    int group_order_cap = 48;
    std::int64_t dim_ceiling = 200000;
};

/// H^n(G, M) as elementary divisors plus canonical cocycle representatives
/// and a class projection defined on cocycles.
class CohomologyGroup {
public:
    CohomologyGroup(std::shared_ptr<const CochainComplex> complex, int degree,
                    SubquotientStructure structure);

    const FinAb& group_structure() const { return finab_; }
    const std::vector<std::int64_t>& divisors() const { return structure_.divisors(); }
    int degree() const { return degree_; }
    const std::shared_ptr<const CochainComplex>& complex() const { return complex_; }

    /// Representative cocycle of a coordinate vector.
    std::vector<std::int64_t> representative(const std::vector<std::int64_t>& coords) const;
    std::vector<std::int64_t> rep_of_basis(int i) const;
    /// Coordinates of a cocycle (throws when the vector is not a cocycle).
    std::vector<std::int64_t> project(const std::vector<std::int64_t>& cocycle) const;

private:
    std::shared_ptr<const CochainComplex> complex_;
    int degree_;
    SubquotientStructure structure_;
    FinAb finab_;
};

using CohomPtr = std::shared_ptr<const CohomologyGroup>;

struct CohomologyMap {
    CohomPtr source;
    CohomPtr target;
    FinAbMap map;

    bool is_zero() const { return map.is_zero(); }
};

/// Computation context: options plus a pure memo of computed groups.
class CohomologyContext {
public:
    explicit CohomologyContext(CohomologyOptions opts = {}) : opts_(opts) {}

    const CohomologyOptions& options() const { return opts_; }

    CohomPtr cohomology(const GroupPtr& g, const ModulePtr& m, int n);

    /// Map induced by an equivariant coefficient map (post-composition).
    CohomologyMap induced(const ModuleMap& f, int n);

    /// Cochain restriction to a subgroup; target coefficients are the
    /// restricted module.
    CohomologyMap res(const Subgroup& h, const ModulePtr& m, int n);

    /// Transfer with the subgroup's frozen coset representatives.
    CohomologyMap cor(const Subgroup& h, const ModulePtr& m, int n);

    /// Connecting map of a short exact sequence of Z/N modules given by
    /// inject/project matrices (snake construction on cochains).
    CohomologyMap connecting(const ModuleMap& inject, const ModuleMap& project, int n);

    /// Bockstein of the coefficient triple of a Z/m^2 module, acting on
    /// H^n(G, M1).
    CohomologyMap bockstein(const GroupPtr& g, const ModulePtr& m2, int n);
    bool bockstein_vanishes(const GroupPtr& g, const ModulePtr& m2, int n);

    /// The snake construction run on the coefficient triple M1 -> M2 -> M1
    /// itself: lift along pi with the canonical entrywise set-section, take
    /// the coboundary over Z/m^2, pull back along tau by dividing.  Must
    /// agree with bockstein() bit-for-bit.
    CohomologyMap connecting_bockstein(const BocksteinTriple& t, int n);

    /// Cup product with a degree-1 class of trivial rank-1 coefficients;
    /// u_values[g] in Z/m for every group element (a 1-cocycle).
    CohomologyMap cup1(const std::vector<std::int64_t>& u_values, const ModulePtr& m, int n);

    /// Conjugation action of Sigma = G/H on H^n(H, M|_H); one matrix per
    /// quotient element, indexed like quotient_group(h).
    std::vector<FinAbMap> sigma_action(const Subgroup& h, const ModulePtr& m, int n);
    FinAbSubgroup sigma_invariants(const Subgroup& h, const ModulePtr& m, int n);
    FinAbQuotient sigma_coinvariants(const Subgroup& h, const ModulePtr& m, int n);

    /// The standard evaluation map H^n(G, Z[G/H] (x) M) -> H^n(H, M|_H):
    /// restrict to H-cochains, take the identity-coset block.  An
    /// isomorphism (Shapiro); bijectivity is verified.
    CohomologyMap shapiro(const Subgroup& h, const ModulePtr& coset_tensor_m, const ModulePtr& m,
                          int n);

    /// Build a class-level map from a cochain-level transformation.
    CohomologyMap map_from_cochain(const CohomPtr& src, const CohomPtr& tgt,
                                   const std::function<std::vector<std::int64_t>(
                                       const std::vector<std::int64_t>&)>& f);

private:
    CohomologyOptions opts_;
    std::map<std::string, CohomPtr> cache_;
    std::map<std::string, std::shared_ptr<const CochainComplex>> complex_cache_;

    std::shared_ptr<const CochainComplex> complex_of(const GroupPtr& g, const ModulePtr& m);
};

} // namespace qcoh
