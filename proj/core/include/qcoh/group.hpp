#pragma once

#include <memory>
#include <string>
#include <vector>

namespace qcoh {

/// Finite group as a full multiplication table.  Element 0 is the identity.
/// Orders stay small (<= 48), so every axiom is checked on construction.
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::vector<int>> table, std::string name,
                std::vector<int> generators = {});

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    int identity() const { return 0; }
    const std::string& name() const { return name_; }
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    int element_order(int a) const;
    bool is_abelian() const;

private:
    int order_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<int> generators_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupSpec {
    enum Kind { Trivial, Cyclic, Dihedral, KleinFour, Symmetric } kind;
    int k = 1;
};

/// trivial, cyclic(k), dihedral(k) of order 2k, klein_four, symmetric(n<=4).
GroupPtr build_group(const GroupSpec& spec);

/// Shares identity between structurally equal groups: the same table always
/// returns the same pointer, so caches keyed on group identity behave.
GroupPtr intern_group(std::vector<std::vector<int>> table, const std::string& name);
GroupPtr build_trivial();
GroupPtr build_cyclic(int k);
GroupPtr build_dihedral(int k); ///< order 2k; element r + k*f acts as v_i -> (-1)^f i + r
GroupPtr build_klein_four();
GroupPtr build_symmetric(int n);

/// Subgroup with canonical (minimal-index) left-coset representatives.
class Subgroup {
public:
    Subgroup(GroupPtr parent, const std::vector<int>& generator_indices);

    const GroupPtr& parent() const { return parent_; }
    const std::vector<int>& elements() const { return elements_; } ///< sorted
    int order() const { return int(elements_.size()); }
    int index() const { return parent_->order() / order(); }
    bool contains(int g) const;
    /// Position of parent element g in elements(), -1 if absent.
    int position(int g) const;

    /// Minimal-index representatives of the left cosets gH, rep of H first.
    const std::vector<int>& coset_reps() const { return coset_reps_; }
    /// Representative of the coset g H.
    int coset_rep_of(int g) const { return rep_of_[g]; }

    /// The subgroup as a standalone group; element i corresponds to elements()[i].
    GroupPtr as_group() const { return as_group_; }

private:
    GroupPtr parent_;
    std::vector<int> elements_;
    std::vector<int> position_; // parent index -> subgroup index or -1
    std::vector<int> coset_reps_;
    std::vector<int> rep_of_;
    GroupPtr as_group_;
};

bool is_normal(const Subgroup& h);

/// Quotient G/H for normal H; element i of the quotient is the coset of
/// coset_reps()[i].  Throws for non-normal subgroups.
GroupPtr quotient_group(const Subgroup& h);

/// Coset index of g in the quotient ordering used by quotient_group.
int coset_index(const Subgroup& h, int g);

} // namespace qcoh
