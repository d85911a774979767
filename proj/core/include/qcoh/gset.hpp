#pragma once

#include "qcoh/group.hpp"

#include <string>
#include <vector>

namespace qcoh {

class GroupEmbedding;

/// Finite left G-set given by its full action table.  The action is verified
/// to be a homomorphism on construction.
class GSet {
public:
    GSet(GroupPtr group, std::vector<std::vector<int>> act, std::string name);

    const GroupPtr& group() const { return group_; }
    int points() const { return points_; }
    /// g . p
    int act(int p, int g) const { return act_[p][g]; }
    const std::string& name() const { return name_; }

    bool transitive() const;
    std::vector<std::vector<int>> orbits() const;
    /// Stabilizer of a point, as parent-group element indices.
    std::vector<int> stabilizer(int p) const;

private:
    GroupPtr group_;
    int points_;
    std::vector<std::vector<int>> act_; // act_[p][g]
    std::string name_;
};

GSet regular_gset(const GroupPtr& g);
GSet vertices_gset(const GroupPtr& dihedral_or_cyclic, int k);
GSet edges_gset(const GroupPtr& dihedral, int k);
GSet flags_gset(const GroupPtr& dihedral, int k);
/// Natural n-point set for symmetric(n).
GSet points_gset(const GroupPtr& symmetric, int n);
GSet cosets_gset(const Subgroup& h);
/// X / Pi with the induced action of the full group; errors when the orbit
/// partition is not invariant.
GSet orbits_mod(const Subgroup& pi, const GSet& x);
GSet two_subsets(const GSet& x);
/// Quotient of two_subsets(4-point set) by the complement involution.
GSet complement_quotient(const GSet& ground, const GSet& subsets);

/// Orbit decomposition of x under a subgroup acting through an embedding;
/// each orbit becomes a GSet over the embedding's source group.  Point lists
/// report the original indices, sorted.
struct OrbitPiece {
    GSet gset;
    std::vector<int> original_points;
};
std::vector<OrbitPiece> orbits_under(const GSet& x, const GroupEmbedding& e);

/// Half-rotation maps for the k-gon with the fixed labeling
/// sigma^{1/2}: v_i -> e_i, e_i -> v_{i+1};  sigma^{-1/2}: v_i -> e_{i-1}, e_i -> v_i.
struct HalfRotation {
    std::vector<int> vert_to_edge;
    std::vector<int> edge_to_vert;
};
HalfRotation half_rotation(int k, int sign);

} // namespace qcoh
