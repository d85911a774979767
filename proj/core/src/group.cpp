#include "qcoh/group.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcoh {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name,
                         std::vector<int> generators)
    : order_(int(table.size())), table_(std::move(table)), generators_(std::move(generators)),
      name_(std::move(name))
{
    if (order_ == 0) throw std::invalid_argument("FiniteGroup: empty table");
    for (const auto& row : table_) {
        if (int(row.size()) != order_) throw std::invalid_argument("FiniteGroup: ragged table");
        for (int v : row)
            if (v < 0 || v >= order_) throw std::invalid_argument("FiniteGroup: entry out of range");
    }
    for (int a = 0; a < order_; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw std::invalid_argument("FiniteGroup: element 0 is not an identity");
    inverse_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (table_[a][b] == 0) {
                if (table_[b][a] != 0) throw std::invalid_argument("FiniteGroup: one-sided inverse");
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
    }
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            for (int c = 0; c < order_; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("FiniteGroup: associativity fails");
}

int FiniteGroup::element_order(int a) const
{
    int x = a, n = 1;
    while (x != 0) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

namespace {

// Constructors are memoized so that independently requested copies of the
// same group share identity; maps and caches key on the pointer.
GroupPtr memoized(const std::string& key, const std::function<GroupPtr()>& make)
{
    static std::mutex mutex;
    static std::map<std::string, GroupPtr> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GroupPtr g = make();
    cache.emplace(key, g);
    return g;
}

} // namespace

GroupPtr build_trivial()
{
    return memoized("trivial", [] {
        return std::make_shared<FiniteGroup>(std::vector<std::vector<int>>{{0}}, "trivial");
    });
}

GroupPtr build_cyclic(int k)
{
    if (k < 1) throw std::invalid_argument("build_cyclic: k >= 1 required");
    if (k == 1) return build_trivial();
    return memoized("cyclic" + std::to_string(k), [k] {
        std::vector<std::vector<int>> t(k, std::vector<int>(k));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) t[a][b] = (a + b) % k;
        return std::make_shared<FiniteGroup>(std::move(t), "cyclic(" + std::to_string(k) + ")",
                                             std::vector<int>{1 % k});
    });
}

GroupPtr build_dihedral(int k)
{
    if (k < 1) throw std::invalid_argument("build_dihedral: k >= 1 required");
    return memoized("dihedral" + std::to_string(k), [k] {
        // element r + k*f sends vertex i to (-1)^f i + r
        const int n = 2 * k;
        auto enc = [k](int r, int f) { return ((r % k) + k) % k + k * f; };
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ra = a % k, fa = a / k, rb = b % k, fb = b / k;
                // (ra,fa)*(rb,fb): i -> (-1)^fb i + rb -> (-1)^fa((-1)^fb i + rb) + ra
                int f = (fa + fb) % 2;
                int r = (fa ? -rb : rb) + ra;
                t[a][b] = enc(r, f);
            }
        return std::make_shared<FiniteGroup>(std::move(t), "dihedral(" + std::to_string(k) + ")",
                                             std::vector<int>{enc(1, 0), enc(0, 1)});
    });
}

GroupPtr build_klein_four()
{
    return memoized("klein_four", [] {
        // {1, a, b, c} with every non-identity element of order 2
        std::vector<std::vector<int>> t = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        return std::make_shared<FiniteGroup>(std::move(t), "klein_four", std::vector<int>{1, 2});
    });
}

namespace {

std::vector<std::vector<int>> all_permutations(int n)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

GroupPtr build_symmetric(int n)
{
    if (n < 1 || n > 4) throw std::invalid_argument("build_symmetric: n <= 4 supported");
    if (n == 1) return build_trivial();
    return memoized("symmetric" + std::to_string(n), [n] {
        auto perms = all_permutations(n); // identity is lexicographically first
        auto index_of = [&](const std::vector<int>& p) {
            auto it = std::lower_bound(perms.begin(), perms.end(), p);
            return int(it - perms.begin());
        };
        const int m = int(perms.size());
        std::vector<std::vector<int>> t(m, std::vector<int>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                std::vector<int> c(n);
                for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
                t[a][b] = index_of(c);
            }
        std::vector<int> transposition(n), cycle(n);
        std::iota(transposition.begin(), transposition.end(), 0);
        std::swap(transposition[0], transposition[1]);
        for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
        return std::make_shared<FiniteGroup>(
            std::move(t), "symmetric(" + std::to_string(n) + ")",
            std::vector<int>{index_of(transposition), index_of(cycle)});
    });
}

GroupPtr build_group(const GroupSpec& spec)
{
    switch (spec.kind) {
    case GroupSpec::Trivial: return build_trivial();
    case GroupSpec::Cyclic: return build_cyclic(spec.k);
    case GroupSpec::Dihedral: return build_dihedral(spec.k);
    case GroupSpec::KleinFour: return build_klein_four();
    case GroupSpec::Symmetric: return build_symmetric(spec.k);
    }
    throw std::invalid_argument("build_group: unknown kind");
}

GroupPtr intern_group(std::vector<std::vector<int>> table, const std::string& name)
{
    std::string key = "tbl:";
    for (const auto& row : table)
        for (int v : row) {
            key += std::to_string(v);
            key += ',';
        }
    return memoized(key, [&] { return std::make_shared<FiniteGroup>(std::move(table), name); });
}

Subgroup::Subgroup(GroupPtr parent, const std::vector<int>& generator_indices) : parent_(std::move(parent))
{
    for (int g : generator_indices)
        if (g < 0 || g >= parent_->order()) throw std::invalid_argument("Subgroup: bad generator");
    std::set<int> closure = {0};
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> cur(closure.begin(), closure.end());
        for (int a : cur)
            for (int g : generator_indices) {
                if (closure.insert(parent_->mul(a, g)).second) grew = true;
                if (closure.insert(parent_->mul(g, a)).second) grew = true;
            }
    }
    elements_.assign(closure.begin(), closure.end());
    position_.assign(parent_->order(), -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) position_[elements_[i]] = int(i);
    if (parent_->order() % order() != 0) throw std::logic_error("Subgroup: Lagrange violated");

    rep_of_.assign(parent_->order(), -1);
    for (int g = 0; g < parent_->order(); ++g) {
        if (rep_of_[g] >= 0) continue;
        // coset g H; minimal element is the representative
        std::vector<int> coset;
        int rep = parent_->order();
        for (int h : elements_) {
            int x = parent_->mul(g, h);
            coset.push_back(x);
            rep = std::min(rep, x);
        }
        for (int x : coset) rep_of_[x] = rep;
        coset_reps_.push_back(rep);
    }
    std::sort(coset_reps_.begin(), coset_reps_.end());

    std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b)
            t[a][b] = position_[parent_->mul(elements_[a], elements_[b])];
    as_group_ = intern_group(std::move(t), parent_->name() + "-sub");
}

bool Subgroup::contains(int g) const { return position_[g] >= 0; }

int Subgroup::position(int g) const { return position_[g]; }

bool is_normal(const Subgroup& h)
{
    const auto& g = *h.parent();
    for (int a = 0; a < g.order(); ++a)
        for (int x : h.elements())
            if (!h.contains(g.mul(g.mul(a, x), g.inverse(a)))) return false;
    return true;
}

int coset_index(const Subgroup& h, int g)
{
    int rep = h.coset_rep_of(g);
    auto it = std::lower_bound(h.coset_reps().begin(), h.coset_reps().end(), rep);
    return int(it - h.coset_reps().begin());
}

GroupPtr quotient_group(const Subgroup& h)
{
    if (!is_normal(h)) throw std::invalid_argument("quotient_group: subgroup is not normal");
    const auto& g = *h.parent();
    const int q = h.index();
    std::vector<std::vector<int>> t(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            t[a][b] = coset_index(h, g.mul(h.coset_reps()[a], h.coset_reps()[b]));
    // identity coset contains 0, whose rep is 0, the minimal coset rep
    return intern_group(std::move(t), g.name() + "-quot");
}

} // namespace qcoh
