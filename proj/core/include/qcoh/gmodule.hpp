#pragma once

#include "qcoh/group.hpp"
#include "qcoh/gset.hpp"
#include "qcoh/embedding.hpp"
#include "qcoh/intmat.hpp"
#include "qcoh/modmat.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qcoh {

/// Coefficient ring: Z when modulus == 0, Z/modulus otherwise.
struct RingSpec {
    std::int64_t modulus = 0;
    bool is_integers() const { return modulus == 0; }
    bool operator==(const RingSpec&) const = default;
};

inline RingSpec ring_z() { return RingSpec{0}; }
inline RingSpec ring_mod(std::int64_t n) { return RingSpec{n}; }

/// Free module of finite rank over Z or Z/N with a group action given by one
/// invertible matrix per element.  rho(e) = I and full multiplicativity are
/// checked on construction.
class GModule {
public:
    GModule(GroupPtr group, RingSpec ring, int rank, std::vector<IntMatrix> action,
            std::string name);

    const GroupPtr& group() const { return group_; }
    const RingSpec& ring() const { return ring_; }
    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const IntMatrix& action(int g) const { return action_[g]; }
    ModMatrix action_mod(int g) const;

    bool is_permutational() const;
    std::string cache_key() const;

private:
    GroupPtr group_;
    RingSpec ring_;
    int rank_;
    std::vector<IntMatrix> action_;
    std::string name_;
};

using ModulePtr = std::shared_ptr<const GModule>;

/// Equivariant map of G-modules over a common ring; equivariance is checked
/// on construction.
class ModuleMap {
public:
    ModuleMap(ModulePtr source, ModulePtr target, IntMatrix m);

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    const IntMatrix& matrix() const { return m_; }
    ModMatrix matrix_mod() const;

    ModuleMap compose(const ModuleMap& inner) const; ///< this after inner
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap operator-(const ModuleMap& o) const;
    ModuleMap scaled(const Int& s) const;
    bool is_zero() const;

private:
    ModulePtr source_;
    ModulePtr target_;
    IntMatrix m_;
};

ModulePtr perm_module(const GSet& x, RingSpec ring);
ModulePtr trivial_module(const GroupPtr& g, RingSpec ring, int rank);

/// Twist by a character into the unit group; chi[g] must be multiplicative.
ModulePtr character_twist(const ModulePtr& m, const std::vector<std::int64_t>& chi);

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b);
ModulePtr dual_module(const ModulePtr& m);
ModuleMap dual_map(const ModuleMap& f);
ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);

/// Entries reduced into Z/target; source must be Z or have target | modulus.
ModulePtr reduce_mod(const ModulePtr& m, std::int64_t target_modulus);

/// The coefficient triple M1 -> M2 -> M1 for a Z/m^2 module M2, with
/// tau = m * (entrywise lift) and pi = reduction; tau o pi = m on M2.
/// The maps cross rings, so they are stored as plain matrices; cross-ring
/// equivariance is verified on construction.
struct BocksteinTriple {
    ModulePtr m1;  // over Z/m
    ModulePtr m2;  // over Z/m^2
    IntMatrix tau; // M1 -> M2, multiplication by m on shared coordinates
    IntMatrix pi;  // M2 -> M1, reduction
    std::int64_t m;
};
BocksteinTriple bockstein_triple(const ModulePtr& m2);

/// Substructures come with explicit coordinates: `module` is free with a
/// basis embedded by `include` (columns) or presented by `project`.
struct SubmoduleResult {
    ModulePtr module;
    ModuleMap include; // module -> ambient
};
struct QuotientModuleResult {
    ModulePtr module;
    ModuleMap project; // ambient -> module
    IntMatrix section; // module -> ambient coordinate section (not equivariant)
};

SubmoduleResult kernel_module(const ModuleMap& f);
SubmoduleResult image_module(const ModuleMap& f);

struct FiberProductResult {
    ModulePtr module;
    ModuleMap to_first;
    ModuleMap to_second;
};
/// {(m, n) : f(m) = g(n)} for f: M -> P, g: N -> P; must be free over the ring.
FiberProductResult fiber_product(const ModuleMap& f, const ModuleMap& g);

struct PushoutResult {
    ModulePtr module;
    ModuleMap from_first;
    ModuleMap from_second;
};
/// (M (+) N) / {(f(p), -g(p))} for f: P -> M, g: P -> N; must be free.
PushoutResult pushout(const ModuleMap& f, const ModuleMap& g);

/// Quotient of `ambient` by the invariant span of the given relation columns.
/// The quotient must be free over the ring (all elementary divisors trivial);
/// otherwise throws.
QuotientModuleResult quotient_free(const ModulePtr& ambient, const IntMatrix& relation_cols,
                                   const std::string& name);

ModulePtr restrict_action(const ModulePtr& m, const GroupEmbedding& e);

/// Pullback of the action along a surjection G -> Q given element-wise;
/// the matrices stay, each g acts through its image.
ModulePtr inflate_action(const ModulePtr& m, const GroupPtr& g,
                         const std::vector<int>& image_in_quotient);
SubmoduleResult invariants(const ModulePtr& m);
QuotientModuleResult coinvariants(const ModulePtr& m);

/// Extension 0 -> A -> N -> D -> 0 with verified exactness bookkeeping.
struct ModuleExtension {
    ModulePtr left;
    ModulePtr middle;
    ModulePtr right;
    ModuleMap inject;  // left -> middle
    ModuleMap project; // middle -> right
};
ModuleExtension make_extension(ModuleMap inject, ModuleMap project);

/// Free basis of the span of the given columns over Z/N; nullopt if the span
/// is not a free module.  Basis columns are deterministic.
std::optional<ModMatrix> free_basis_of_span(const ModMatrix& generator_cols);

} // namespace qcoh
