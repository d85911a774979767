#include "qcoh/gset.hpp"

#include "qcoh/embedding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qcoh {

GSet::GSet(GroupPtr group, std::vector<std::vector<int>> act, std::string name)
    : group_(std::move(group)), points_(int(act.size())), act_(std::move(act)), name_(std::move(name))
{
    const int n = group_->order();
    for (const auto& row : act_) {
        if (int(row.size()) != n) throw std::invalid_argument("GSet: ragged action table");
        for (int v : row)
            if (v < 0 || v >= points_) throw std::invalid_argument("GSet: point out of range");
    }
    for (int p = 0; p < points_; ++p)
        if (act_[p][0] != p) throw std::invalid_argument("GSet: identity must act trivially");
    for (int p = 0; p < points_; ++p)
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h)
                if (act_[act_[p][h]][g] != act_[p][group_->mul(g, h)])
                    throw std::invalid_argument("GSet: action is not a homomorphism");
}

bool GSet::transitive() const { return points_ == 0 || int(orbits()[0].size()) == points_; }

std::vector<std::vector<int>> GSet::orbits() const
{
    std::vector<int> seen(points_, 0);
    std::vector<std::vector<int>> out;
    for (int p = 0; p < points_; ++p) {
        if (seen[p]) continue;
        std::vector<int> orb;
        for (int g = 0; g < group_->order(); ++g) {
            int q = act_[p][g];
            if (!seen[q]) {
                seen[q] = 1;
                orb.push_back(q);
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<int> GSet::stabilizer(int p) const
{
    std::vector<int> s;
    for (int g = 0; g < group_->order(); ++g)
        if (act_[p][g] == p) s.push_back(g);
    return s;
}

GSet regular_gset(const GroupPtr& g)
{
    std::vector<std::vector<int>> act(g->order(), std::vector<int>(g->order()));
    for (int p = 0; p < g->order(); ++p)
        for (int x = 0; x < g->order(); ++x) act[p][x] = g->mul(x, p);
    return GSet(g, std::move(act), "regular");
}

namespace {

int posmod(int a, int k) { return (a % k + k) % k; }

// decode a dihedral element r + k*f
struct DiEl {
    int r, f;
};
DiEl dihedral_decode(int g, int k) { return {g % k, g / k}; }

} // namespace

GSet vertices_gset(const GroupPtr& grp, int k)
{
    if (grp->order() != 2 * k && grp->order() != k)
        throw std::invalid_argument("vertices_gset: group is not dihedral(k) or cyclic(k)");
    std::vector<std::vector<int>> act(k, std::vector<int>(grp->order()));
    const bool dihedral = grp->order() == 2 * k;
    for (int i = 0; i < k; ++i)
        for (int g = 0; g < grp->order(); ++g) {
            if (dihedral) {
                auto [r, f] = dihedral_decode(g, k);
                act[i][g] = posmod(f ? -i + r : i + r, k);
            } else {
                act[i][g] = posmod(i + g, k);
            }
        }
    return GSet(grp, std::move(act), "vertices(" + std::to_string(k) + ")");
}

GSet edges_gset(const GroupPtr& grp, int k)
{
    if (grp->order() != 2 * k && grp->order() != k)
        throw std::invalid_argument("edges_gset: group is not dihedral(k) or cyclic(k)");
    std::vector<std::vector<int>> act(k, std::vector<int>(grp->order()));
    const bool dihedral = grp->order() == 2 * k;
    for (int i = 0; i < k; ++i)
        for (int g = 0; g < grp->order(); ++g) {
            if (dihedral) {
                auto [r, f] = dihedral_decode(g, k);
                // edge {v_i, v_{i+1}} maps to {v_{±i+r}, v_{±(i+1)+r}}
                act[i][g] = posmod(f ? r - i - 1 : i + r, k);
            } else {
                act[i][g] = posmod(i + g, k);
            }
        }
    return GSet(grp, std::move(act), "edges(" + std::to_string(k) + ")");
}

GSet flags_gset(const GroupPtr& grp, int k)
{
    if (grp->order() != 2 * k) throw std::invalid_argument("flags_gset: dihedral group required");
    GSet verts = vertices_gset(grp, k);
    GSet edges = edges_gset(grp, k);
    // flag 2i+s = (edge e_i, vertex v_{i+s}), s in {0,1}
    std::vector<std::vector<int>> act(2 * k, std::vector<int>(grp->order()));
    for (int i = 0; i < k; ++i)
        for (int s = 0; s < 2; ++s)
            for (int g = 0; g < grp->order(); ++g) {
                int e = edges.act(i, g);
                int v = verts.act(posmod(i + s, k), g);
                int s2 = v == e ? 0 : 1;
                if (v != e && v != posmod(e + 1, k))
                    throw std::logic_error("flags_gset: vertex left its edge");
                act[2 * i + s][g] = 2 * e + s2;
            }
    return GSet(grp, std::move(act), "flags(" + std::to_string(k) + ")");
}

GSet points_gset(const GroupPtr& symmetric, int n)
{
    // reconstruct the permutations in lexicographic order to match build_symmetric
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    if (int(perms.size()) != symmetric->order())
        throw std::invalid_argument("points_gset: group is not symmetric(n)");
    std::vector<std::vector<int>> act(n, std::vector<int>(symmetric->order()));
    for (int i = 0; i < n; ++i)
        for (int g = 0; g < symmetric->order(); ++g) act[i][g] = perms[g][i];
    return GSet(symmetric, std::move(act), "points(" + std::to_string(n) + ")");
}

GSet cosets_gset(const Subgroup& h)
{
    const auto& g = *h.parent();
    const int q = h.index();
    std::vector<std::vector<int>> act(q, std::vector<int>(g.order()));
    for (int i = 0; i < q; ++i)
        for (int x = 0; x < g.order(); ++x)
            act[i][x] = coset_index(h, g.mul(x, h.coset_reps()[i]));
    return GSet(h.parent(), std::move(act), "cosets");
}

GSet orbits_mod(const Subgroup& pi, const GSet& x)
{
    if (pi.parent() != x.group()) throw std::invalid_argument("orbits_mod: group mismatch");
    // orbit partition of the subgroup action
    std::vector<int> orbit_of(x.points(), -1);
    std::vector<std::vector<int>> classes;
    for (int p = 0; p < x.points(); ++p) {
        if (orbit_of[p] >= 0) continue;
        int id = int(classes.size());
        std::vector<int> cls;
        for (int h : pi.elements()) {
            int q = x.act(p, h);
            if (orbit_of[q] < 0) {
                orbit_of[q] = id;
                cls.push_back(q);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    const int m = int(classes.size());
    std::vector<std::vector<int>> act(m, std::vector<int>(x.group()->order()));
    for (int c = 0; c < m; ++c)
        for (int g = 0; g < x.group()->order(); ++g) {
            int image = orbit_of[x.act(classes[c][0], g)];
            for (int p : classes[c])
                if (orbit_of[x.act(p, g)] != image)
                    throw std::invalid_argument("orbits_mod: orbit partition is not invariant");
            act[c][g] = image;
        }
    return GSet(x.group(), std::move(act), x.name() + "/pi");
}

GSet two_subsets(const GSet& x)
{
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < x.points(); ++a)
        for (int b = a + 1; b < x.points(); ++b) pairs.push_back({a, b});
    auto index_of = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b));
        return int(it - pairs.begin());
    };
    std::vector<std::vector<int>> act(pairs.size(), std::vector<int>(x.group()->order()));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (int g = 0; g < x.group()->order(); ++g)
            act[i][g] = index_of(x.act(pairs[i].first, g), x.act(pairs[i].second, g));
    return GSet(x.group(), std::move(act), "two_subsets(" + x.name() + ")");
}

GSet complement_quotient(const GSet& ground, const GSet& subsets)
{
    if (ground.points() != 4) throw std::invalid_argument("complement_quotient: 4-point ground set required");
    if (subsets.points() != 6) throw std::invalid_argument("complement_quotient: expects the 6 two-subsets");
    // reconstruct pair labels in the two_subsets order
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) pairs.push_back({a, b});
    auto complement_of = [&](int i) {
        std::vector<int> used = {pairs[i].first, pairs[i].second}, rest;
        for (int v = 0; v < 4; ++v)
            if (v != used[0] && v != used[1]) rest.push_back(v);
        auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(rest[0], rest[1]));
        return int(it - pairs.begin());
    };
    std::vector<int> class_of(6, -1);
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < 6; ++i) {
        if (class_of[i] >= 0) continue;
        int id = int(classes.size());
        class_of[i] = class_of[complement_of(i)] = id;
        classes.push_back({i, complement_of(i)});
    }
    std::vector<std::vector<int>> act(classes.size(), std::vector<int>(subsets.group()->order()));
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int g = 0; g < subsets.group()->order(); ++g) {
            int image = class_of[subsets.act(classes[c][0], g)];
            if (class_of[subsets.act(classes[c][1], g)] != image)
                throw std::invalid_argument("complement_quotient: involution not equivariant");
            act[c][g] = image;
        }
    return GSet(subsets.group(), std::move(act), "pairs_mod_complement");
}

std::vector<OrbitPiece> orbits_under(const GSet& x, const GroupEmbedding& e)
{
    if (e.target() != x.group()) throw std::invalid_argument("orbits_under: embedding target mismatch");
    const auto& src = *e.source();
    std::vector<int> orbit_of(x.points(), -1);
    std::vector<std::vector<int>> classes;
    for (int p = 0; p < x.points(); ++p) {
        if (orbit_of[p] >= 0) continue;
        int id = int(classes.size());
        std::vector<int> cls;
        for (int g = 0; g < src.order(); ++g) {
            int q = x.act(p, e.image_of(g));
            if (orbit_of[q] < 0) {
                orbit_of[q] = id;
                cls.push_back(q);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    std::vector<OrbitPiece> out;
    for (const auto& cls : classes) {
        std::map<int, int> local;
        for (std::size_t i = 0; i < cls.size(); ++i) local[cls[i]] = int(i);
        std::vector<std::vector<int>> act(cls.size(), std::vector<int>(src.order()));
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (int g = 0; g < src.order(); ++g) act[i][g] = local.at(x.act(cls[i], e.image_of(g)));
        out.push_back({GSet(e.source(), std::move(act), x.name() + "-orbit"), cls});
    }
    return out;
}

HalfRotation half_rotation(int k, int sign)
{
    if (k < 3) throw std::invalid_argument("half_rotation: k >= 3 required");
    HalfRotation h;
    h.vert_to_edge.resize(k);
    h.edge_to_vert.resize(k);
    for (int i = 0; i < k; ++i) {
        if (sign >= 0) {
            h.vert_to_edge[i] = i;              // v_i -> e_i
            h.edge_to_vert[i] = posmod(i + 1, k); // e_i -> v_{i+1}
        } else {
            h.vert_to_edge[i] = posmod(i - 1, k); // v_i -> e_{i-1}
            h.edge_to_vert[i] = i;                // e_i -> v_i
        }
    }
    return h;
}

} // namespace qcoh
