#pragma once

#include "qcoh/group.hpp"

#include <vector>

namespace qcoh {

/// Injective homomorphism between finite groups, stored element-by-element.
class GroupEmbedding {
public:
    GroupEmbedding(GroupPtr source, GroupPtr target, std::vector<int> map);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    int image_of(int g) const { return map_[g]; }
    const std::vector<int>& map() const { return map_; }

private:
    GroupPtr source_;
    GroupPtr target_;
    std::vector<int> map_;
};

enum class EmbedVariant { VertexTransitive, EdgeTransitive };

/// Gamma_{k/2} into Gamma_k; the vertex-transitive variant acts transitively
/// on the k vertices, the edge-transitive one on the k edges.  Requires 4 | k.
GroupEmbedding embed_dihedral_index2(int k, EmbedVariant variant);

/// Klein four group into Gamma_4, transitive on vertices or on edges.
GroupEmbedding embed_klein_in_dihedral4(EmbedVariant variant);

/// Identity embedding of a subgroup's abstract group into the parent.
GroupEmbedding embed_subgroup(const Subgroup& h);

GroupEmbedding identity_embedding(const GroupPtr& g);

} // namespace qcoh
