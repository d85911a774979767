#include "qcoh/embedding.hpp"

#include "qcoh/gset.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace qcoh {

GroupEmbedding::GroupEmbedding(GroupPtr source, GroupPtr target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map))
{
    if (int(map_.size()) != source_->order())
        throw std::invalid_argument("GroupEmbedding: map size mismatch");
    std::set<int> image;
    for (int v : map_) {
        if (v < 0 || v >= target_->order()) throw std::invalid_argument("GroupEmbedding: out of range");
        image.insert(v);
    }
    if (int(image.size()) != source_->order())
        throw std::invalid_argument("GroupEmbedding: not injective");
    for (int a = 0; a < source_->order(); ++a)
        for (int b = 0; b < source_->order(); ++b)
            if (map_[source_->mul(a, b)] != target_->mul(map_[a], map_[b]))
                throw std::invalid_argument("GroupEmbedding: not a homomorphism");
}

GroupEmbedding embed_dihedral_index2(int k, EmbedVariant variant)
{
    if (k % 4 != 0) throw std::invalid_argument("embed_dihedral_index2: k divisible by 4 required");
    GroupPtr big = build_dihedral(k);
    GroupPtr small = build_dihedral(k / 2);
    const int h = k / 2;
    std::vector<int> map(small->order());
    for (int g = 0; g < small->order(); ++g) {
        int r = g % h, f = g / h;
        int image;
        if (variant == EmbedVariant::VertexTransitive) {
            // sigma' -> sigma^2, tau' -> sigma tau
            image = f ? (2 * r + 1) % k + k : (2 * r) % k;
        } else {
            // sigma' -> sigma^2, tau' -> tau
            image = f ? (2 * r) % k + k : (2 * r) % k;
        }
        map[g] = image;
    }
    GroupEmbedding e(small, big, std::move(map));
    // the promised transitivity property, checked by orbit computation
    GSet target = variant == EmbedVariant::VertexTransitive ? vertices_gset(big, k) : edges_gset(big, k);
    auto pieces = orbits_under(target, e);
    if (pieces.size() != 1)
        throw std::logic_error("embed_dihedral_index2: transitivity property failed");
    return e;
}

GroupEmbedding embed_klein_in_dihedral4(EmbedVariant variant)
{
    GroupPtr big = build_dihedral(4);
    GroupPtr klein = build_klein_four();
    // klein elements: 0=1, 1=a, 2=b, 3=c with c = ab
    std::vector<int> map(4);
    map[0] = 0;
    map[1] = 2; // a -> sigma^2
    if (variant == EmbedVariant::VertexTransitive) {
        map[2] = 4 + 1; // b -> sigma tau
        map[3] = 4 + 3; // c -> sigma^3 tau
    } else {
        map[2] = 4 + 0; // b -> tau
        map[3] = 4 + 2; // c -> sigma^2 tau
    }
    GroupEmbedding e(klein, big, std::move(map));
    GSet target = variant == EmbedVariant::VertexTransitive ? vertices_gset(big, 4) : edges_gset(big, 4);
    auto pieces = orbits_under(target, e);
    if (pieces.size() != 1)
        throw std::logic_error("embed_klein_in_dihedral4: transitivity property failed");
    return e;
}

GroupEmbedding embed_subgroup(const Subgroup& h)
{
    std::vector<int> map(h.order());
    for (int i = 0; i < h.order(); ++i) map[i] = h.elements()[i];
    return GroupEmbedding(h.as_group(), h.parent(), std::move(map));
}

GroupEmbedding identity_embedding(const GroupPtr& g)
{
    std::vector<int> map(g->order());
    std::iota(map.begin(), map.end(), 0);
    return GroupEmbedding(g, g, std::move(map));
}

} // namespace qcoh
