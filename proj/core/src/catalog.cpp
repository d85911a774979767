#include "qcoh/catalog.hpp"

#include "qcoh/laurent.hpp"

#include <stdexcept>

namespace qcoh {

namespace {

int posmod(int a, int k) { return (a % k + k) % k; }

Summand perm_summand(const GSet& x, int offset)
{
    Summand s;
    s.gset = x;
    s.rank = x.points();
    for (int i = 0; i < x.points(); ++i) s.ambient_indices.push_back(offset + i);
    return s;
}

Summand trivial_summand(int rank, int offset)
{
    Summand s;
    s.rank = rank;
    for (int i = 0; i < rank; ++i) s.ambient_indices.push_back(offset + i);
    return s;
}

ExactQuadruple build_cyclic_entry(int k)
{
    if (k < 2) throw std::invalid_argument("cyclic: k >= 2 required");
    GroupPtr sigma = build_cyclic(k);
    GSet reg = regular_gset(sigma);
    ModulePtr a = trivial_module(sigma, ring_z(), 1);
    ModulePtr b = perm_module(reg, ring_z());
    ModulePtr c = b;
    ModulePtr d = a;

    IntMatrix norm_col(k, 1);
    for (int i = 0; i < k; ++i) norm_col.at(i, 0) = 1;
    IntMatrix one_row(1, k);
    for (int i = 0; i < k; ++i) one_row.at(0, i) = 1;
    IntMatrix one_minus_sigma(k, k);
    for (int i = 0; i < k; ++i) {
        one_minus_sigma.at(i, i) += 1;
        one_minus_sigma.at(posmod(i + 1, k), i) -= 1;
    }

    // homotopy: f with k - (1 + ... + x^{k-1}) = (1-x) f(x), applied as
    // multiplication in the group ring
    Laurent f = cyclic_homotopy_poly(k);
    IntMatrix f_mat(k, k);
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < int(f.coeffs.size()); ++t)
            f_mat.at(posmod(j + f.low + t, k), j) += f.coeffs[t];

    ModuleMap d_ab(a, b, norm_col);
    ModuleMap d_bc(b, c, one_minus_sigma);
    ModuleMap d_cd(c, d, one_row);
    HomotopyTriple h{ModuleMap(b, a, one_row), ModuleMap(c, b, f_mat), ModuleMap(d, c, norm_col),
                     k};
    std::array<std::vector<Summand>, 4> summands = {
        std::vector<Summand>{trivial_summand(1, 0)}, std::vector<Summand>{perm_summand(reg, 0)},
        std::vector<Summand>{perm_summand(reg, 0)}, std::vector<Summand>{trivial_summand(1, 0)}};
    return ExactQuadruple("cyclic(" + std::to_string(k) + ")", std::move(d_ab), std::move(d_bc),
                          std::move(d_cd), std::move(h), k, std::move(summands));
}

ExactQuadruple build_sigma_entry(int k, int m)
{
    if (m < 2 || k < m || k % m != 0) throw std::invalid_argument("sigma: need 2 <= m and m | k");
    GroupPtr sigma = build_cyclic(k);
    GSet reg = regular_gset(sigma);
    Subgroup pi(sigma, {k / m}); // cyclic of order m
    GSet cosets = cosets_gset(pi);
    const int q = k / m; // |Sigma/Pi|

    ModulePtr a = trivial_module(sigma, ring_z(), 1);
    ModulePtr b = direct_sum(perm_module(reg, ring_z()), trivial_module(sigma, ring_z(), 1));
    ModulePtr c = direct_sum(perm_module(reg, ring_z()), perm_module(cosets, ring_z()));
    ModulePtr d = perm_module(cosets, ring_z());

    // first map (1 + ... + sigma^{k-1}, -m)
    IntMatrix d_ab(k + 1, 1);
    for (int i = 0; i < k; ++i) d_ab.at(i, 0) = 1;
    d_ab.at(k, 0) = -m;

    // U11 = 1 - sigma, U12 = 0, U21 = pr_Pi, U22 = 1 + ... + sigmabar^{k/m-1}
    IntMatrix u(k + q, k + 1);
    for (int j = 0; j < k; ++j) {
        u.at(j, j) += 1;
        u.at(posmod(j + 1, k), j) -= 1;
        u.at(k + j % q, j) += 1; // pr_Pi: cosets of <sigma^{k/m}> are residues mod k/m
    }
    for (int i = 0; i < q; ++i) u.at(k + i, k) = 1;

    // third map (pr_Pi, -1 + sigmabar)
    IntMatrix d_cd(q, k + q);
    for (int j = 0; j < k; ++j) d_cd.at(j % q, j) += 1;
    for (int j = 0; j < q; ++j) {
        d_cd.at(j, k + j) -= 1;
        d_cd.at(posmod(j + 1, q), k + j) += 1;
    }

    std::array<std::vector<Summand>, 4> summands = {
        std::vector<Summand>{trivial_summand(1, 0)},
        std::vector<Summand>{perm_summand(reg, 0), trivial_summand(1, k)},
        std::vector<Summand>{perm_summand(reg, 0), perm_summand(cosets, k)},
        std::vector<Summand>{perm_summand(cosets, 0)}};
    return ExactQuadruple("sigma(" + std::to_string(k) + "," + std::to_string(m) + ")",
                          ModuleMap(a, b, d_ab), ModuleMap(b, c, u), ModuleMap(c, d, d_cd),
                          std::nullopt, m, std::move(summands));
}

ExactQuadruple build_dihedral_entry(int k)
{
    if (k % 4 != 0) throw std::invalid_argument("dihedral: k divisible by 4 required");
    GroupPtr gamma = build_dihedral(k);
    GSet verts = vertices_gset(gamma, k);
    GSet edges = edges_gset(gamma, k);
    Subgroup pi(gamma, {k / 2}); // <sigma^{k/2}>, central of order 2
    GSet vp = orbits_mod(pi, verts); // classes [v_j] = j mod k/2
    GSet ep = orbits_mod(pi, edges);
    const int h = k / 2;

    ModulePtr a = trivial_module(gamma, ring_z(), 1);
    ModulePtr b = direct_sum(perm_module(verts, ring_z()), trivial_module(gamma, ring_z(), 1));
    ModulePtr c = direct_sum(perm_module(edges, ring_z()), perm_module(vp, ring_z()));
    ModulePtr d = perm_module(ep, ring_z());

    // first map (#V, -2)
    IntMatrix d_ab(k + 1, 1);
    for (int i = 0; i < k; ++i) d_ab.at(i, 0) = 1;
    d_ab.at(k, 0) = -2;

    // U11 = sigma^{-1/2} + sigma^{1/2} (v_j -> e_{j-1} + e_j), U12 = #E,
    // U21 = pr_Pi, U22 = #V/Pi
    IntMatrix u(k + h, k + 1);
    for (int j = 0; j < k; ++j) {
        u.at(posmod(j - 1, k), j) += 1;
        u.at(j, j) += 1;
        u.at(k + j % h, j) += 1;
    }
    for (int i = 0; i < k; ++i) u.at(i, k) = 1;
    for (int i = 0; i < h; ++i) u.at(k + i, k) = 1;

    // third map (pr_Pi, -sigmabar^{-1/2} - sigmabar^{1/2})
    IntMatrix d_cd(h, k + h);
    for (int j = 0; j < k; ++j) d_cd.at(j % h, j) += 1;
    for (int j = 0; j < h; ++j) {
        d_cd.at(posmod(j - 1, h), k + j) -= 1;
        d_cd.at(j, k + j) -= 1;
    }

    // homotopy with dh + hd = 2; both pr_1 slots must enter negatively or
    // the identity fails at the A and C positions
    Laurent f = dihedral_homotopy_poly(k);

    IntMatrix h_ba(1, k + 1);
    for (int j = 0; j < k; ++j) h_ba.at(0, j) = -1; // -pr_1 on vertices
    h_ba.at(0, k) = -(k / 2) - 1;

    IntMatrix h_cb(k + 1, k + h);
    // H11 = psi = (sigma^{-1/2} + sigma^{1/2}) f(sigma): e_j -> f(sigma)(v_j + v_{j+1})
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < int(f.coeffs.size()); ++t) {
            const Int& cf = f.coeffs[t];
            if (cf == 0) continue;
            int s = f.low + t;
            h_cb.at(posmod(j + s, k), j) += cf;
            h_cb.at(posmod(j + 1 + s, k), j) += cf;
        }
    // H21 = -pr_1 on edges
    for (int j = 0; j < k; ++j) h_cb.at(k, j) = -1;
    // H12 = 1 + pi: [v_j] -> v_j + v_{j+k/2}
    for (int j = 0; j < h; ++j) {
        h_cb.at(j, k + j) += 1;
        h_cb.at(j + h, k + j) += 1;
    }
    // H22 = 0

    IntMatrix h_dc(k + h, h);
    // first block (1 + pi): [e_j] -> e_j + e_{j+k/2}
    for (int j = 0; j < h; ++j) {
        h_dc.at(j, j) += 1;
        h_dc.at(j + h, j) += 1;
    }
    // second block: [e_j] -> #V/Pi - fbar(sigmabar)([v_j] + [v_{j+1}])
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < h; ++i) h_dc.at(k + i, j) += 1;
        for (int t = 0; t < int(f.coeffs.size()); ++t) {
            const Int& cf = f.coeffs[t];
            if (cf == 0) continue;
            int s = f.low + t;
            h_dc.at(k + posmod(j + s, h), j) -= cf;
            h_dc.at(k + posmod(j + 1 + s, h), j) -= cf;
        }
    }

    HomotopyTriple hom{ModuleMap(b, a, h_ba), ModuleMap(c, b, h_cb), ModuleMap(d, c, h_dc), 2};
    std::array<std::vector<Summand>, 4> summands = {
        std::vector<Summand>{trivial_summand(1, 0)},
        std::vector<Summand>{perm_summand(verts, 0), trivial_summand(1, k)},
        std::vector<Summand>{perm_summand(edges, 0), perm_summand(vp, k)},
        std::vector<Summand>{perm_summand(ep, 0)}};
    return ExactQuadruple("dihedral(" + std::to_string(k) + ")", ModuleMap(a, b, d_ab),
                          ModuleMap(b, c, u), ModuleMap(c, d, d_cd), std::move(hom), 2,
                          std::move(summands));
}

ExactQuadruple build_remark18_entry(int k, int m)
{
    if (m < 2 || k < m || k % m != 0) throw std::invalid_argument("remark18: need 2 <= m and m | k");
    if (k < 3) throw std::invalid_argument("remark18: k >= 3 required");
    GroupPtr gamma = build_dihedral(k);
    GSet verts = vertices_gset(gamma, k);
    GSet edges = edges_gset(gamma, k);
    Subgroup pi(gamma, {k / m});
    GSet vp = orbits_mod(pi, verts); // classes = residues mod k/m
    const int q = k / m;
    const bool even = q % 2 == 0;

    GSet middle_set = even ? edges : verts; // "replace Delta'' by Delta' when k/m is odd"
    GSet dp = orbits_mod(pi, middle_set);

    ModulePtr a = perm_module(vp, ring_z());
    ModulePtr b = direct_sum(perm_module(verts, ring_z()), trivial_module(gamma, ring_z(), 1));
    ModulePtr c = direct_sum(perm_module(middle_set, ring_z()), trivial_module(gamma, ring_z(), 1));
    ModulePtr d = perm_module(dp, ring_z());

    // first map (#Pi, -pr_1)
    IntMatrix d_ab(k + 1, q);
    for (int j = 0; j < q; ++j) {
        for (int t = 0; t < m; ++t) d_ab.at(posmod(j + t * q, k), j) = 1;
        d_ab.at(k, j) = -1;
    }

    // U11 = sigma^{-(q-1)/2} + ... + sigma^{(q-1)/2} (half-integer exponents
    // when q is even, mapping vertices to the window of q nearest edges),
    // U12 = #middle, U21 = pr_1, U22 = m
    IntMatrix u(k + 1, k + 1);
    for (int j = 0; j < k; ++j) {
        if (even) {
            for (int t = -q / 2; t <= q / 2 - 1; ++t) u.at(posmod(j + t, k), j) += 1;
        } else {
            for (int t = -(q - 1) / 2; t <= (q - 1) / 2; ++t) u.at(posmod(j + t, k), j) += 1;
        }
        u.at(k, j) = 1;
    }
    for (int i = 0; i < k; ++i) u.at(i, k) = 1;
    u.at(k, k) = m;

    // third map (pr_Pi, -#middle/Pi)
    IntMatrix d_cd(q, k + 1);
    for (int j = 0; j < k; ++j) d_cd.at(j % q, j) = 1;
    for (int i = 0; i < q; ++i) d_cd.at(i, k) = -1;

    std::array<std::vector<Summand>, 4> summands = {
        std::vector<Summand>{perm_summand(vp, 0)},
        std::vector<Summand>{perm_summand(verts, 0), trivial_summand(1, k)},
        std::vector<Summand>{perm_summand(middle_set, 0), trivial_summand(1, k)},
        std::vector<Summand>{perm_summand(dp, 0)}};
    return ExactQuadruple("remark18(" + std::to_string(k) + "," + std::to_string(m) + ")",
                          ModuleMap(a, b, d_ab), ModuleMap(b, c, u), ModuleMap(c, d, d_cd),
                          std::nullopt, m, std::move(summands));
}

ExactQuadruple build_s4_entry()
{
    GroupPtr s4 = build_symmetric(4);
    GSet x4 = points_gset(s4, 4);
    GSet x6 = two_subsets(x4);
    GSet x3 = complement_quotient(x4, x6);

    // recover the subset membership and class structure used by two_subsets
    std::vector<std::pair<int, int>> pairs;
    for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = a2 + 1; b2 < 4; ++b2) pairs.push_back({a2, b2});

    ModulePtr a = trivial_module(s4, ring_z(), 1);
    ModulePtr b = direct_sum(perm_module(x4, ring_z()), trivial_module(s4, ring_z(), 1));
    ModulePtr c = direct_sum(perm_module(x6, ring_z()), trivial_module(s4, ring_z(), 1));
    ModulePtr d = perm_module(x3, ring_z());

    IntMatrix d_ab(5, 1);
    for (int i = 0; i < 4; ++i) d_ab.at(i, 0) = 1;
    d_ab.at(4, 0) = -2;

    // U11: x -> sum of the three two-subsets containing x;
    // U12 = #X6 : Z -> Z[X6], U21 = pr_1 : Z[X4] -> Z, U22 = 2
    IntMatrix u(7, 5);
    for (int x = 0; x < 4; ++x) {
        for (int s = 0; s < 6; ++s)
            if (pairs[s].first == x || pairs[s].second == x) u.at(s, x) = 1;
        u.at(6, x) = 1;
    }
    for (int s = 0; s < 6; ++s) u.at(s, 4) = 1;
    u.at(6, 4) = 2;

    // class of each two-subset modulo the complement involution, in the
    // ordering used by complement_quotient
    std::vector<int> class_of(6, -1);
    {
        auto complement_of = [&](int i) {
            std::vector<int> rest;
            for (int v = 0; v < 4; ++v)
                if (v != pairs[i].first && v != pairs[i].second) rest.push_back(v);
            for (int s = 0; s < 6; ++s)
                if (pairs[s].first == rest[0] && pairs[s].second == rest[1]) return s;
            return -1;
        };
        int next = 0;
        for (int i = 0; i < 6; ++i)
            if (class_of[i] < 0) {
                class_of[i] = class_of[complement_of(i)] = next++;
            }
    }
    IntMatrix d_cd(3, 7);
    for (int s = 0; s < 6; ++s) d_cd.at(class_of[s], s) = 1;
    for (int t = 0; t < 3; ++t) d_cd.at(t, 6) = -1;

    std::array<std::vector<Summand>, 4> summands = {
        std::vector<Summand>{trivial_summand(1, 0)},
        std::vector<Summand>{perm_summand(x4, 0), trivial_summand(1, 4)},
        std::vector<Summand>{perm_summand(x6, 0), trivial_summand(1, 6)},
        std::vector<Summand>{perm_summand(x3, 0)}};
    return ExactQuadruple("s4", ModuleMap(a, b, d_ab), ModuleMap(b, c, u), ModuleMap(c, d, d_cd),
                          std::nullopt, 2, std::move(summands));
}

/// Gaussian cancellation of an acyclic pair: b0 a fixed trivial coordinate of
/// B with d2(b0) hitting the fixed coordinate c0 with a unit; the reduced
/// quadruple drops both coordinates.
ExactQuadruple cancel_unit_pair(const ExactQuadruple& q, int bi, int ci, const std::string& name)
{
    const IntMatrix& d1 = q.d_ab().matrix();
    const IntMatrix& d2 = q.d_bc().matrix();
    const IntMatrix& d3 = q.d_cd().matrix();
    const int rb = q.module(1)->rank(), rc = q.module(2)->rank();

    IntMatrix c0 = d2.col(bi);
    Int unit = c0.at(ci, 0);
    if (unit != 1 && unit != -1) throw std::invalid_argument("cancel_unit_pair: entry not a unit");

    // new C basis: n_j = e_j (j != ci), n_ci = d2(b0); vector v has new
    // coordinates Nc^-1 v
    IntMatrix nc = IntMatrix::identity(rc);
    for (int r = 0; r < rc; ++r) nc.at(r, ci) = c0.at(r, 0);
    // inverse of the elementary-column matrix
    IntMatrix nc_inv = IntMatrix::identity(rc);
    for (int r = 0; r < rc; ++r)
        nc_inv.at(r, ci) = r == ci ? (unit == 1 ? Int(1) : Int(-1)) : -c0.at(r, 0) * (unit == 1 ? 1 : -1);
    if (!((nc * nc_inv) == IntMatrix::identity(rc))) throw std::logic_error("cancel: bad inverse");

    IntMatrix d2_new = nc_inv * d2;
    // new B basis: b_j' = e_j - gamma_j b0 with gamma_j the ci-row entry
    IntMatrix nb = IntMatrix::identity(rb);
    for (int j = 0; j < rb; ++j)
        if (j != bi) nb.at(bi, j) = -d2_new.at(ci, j);
    IntMatrix nb_inv = IntMatrix::identity(rb);
    for (int j = 0; j < rb; ++j)
        if (j != bi) nb_inv.at(bi, j) = d2_new.at(ci, j);

    IntMatrix d2_adj = d2_new * nb;
    IntMatrix d1_adj = nb_inv * d1;
    IntMatrix d3_adj = d3 * nc;

    // sanity: b0 column is the ci unit, the ci row vanishes elsewhere, d1
    // avoids b0 and d3 kills c0'
    for (int j = 0; j < rb; ++j)
        if (j != bi && d2_adj.at(ci, j) != 0) throw std::logic_error("cancel: row not cleared");
    for (int j = 0; j < d1_adj.cols(); ++j)
        if (d1_adj.at(bi, j) != 0) throw std::logic_error("cancel: d1 still hits b0");
    for (int i = 0; i < d3_adj.rows(); ++i)
        if (d3_adj.at(i, ci) != 0) throw std::logic_error("cancel: d3 does not kill c0");

    auto drop = [](const IntMatrix& m, int drop_row, int drop_col) {
        IntMatrix out(m.rows() - (drop_row >= 0 ? 1 : 0), m.cols() - (drop_col >= 0 ? 1 : 0));
        for (int r = 0, rr = 0; r < m.rows(); ++r) {
            if (r == drop_row) continue;
            for (int cidx = 0, cc = 0; cidx < m.cols(); ++cidx) {
                if (cidx == drop_col) continue;
                out.at(rr, cc) = m.at(r, cidx);
                ++cc;
            }
            ++rr;
        }
        return out;
    };

    // transformed actions, then delete the cancelled coordinates
    auto transform_module = [&](const ModulePtr& mod, const IntMatrix& n, const IntMatrix& n_inv,
                                int dropped, const std::string& mname) {
        std::vector<IntMatrix> action;
        for (int g = 0; g < mod->group()->order(); ++g) {
            IntMatrix m = n_inv * mod->action(g) * n;
            for (int t = 0; t < m.rows(); ++t) {
                if (t == dropped) continue;
                if (m.at(t, dropped) != 0 || m.at(dropped, t) != 0)
                    throw std::invalid_argument("cancel_unit_pair: coordinate is not a G-summand");
            }
            action.push_back(drop(m, dropped, dropped));
        }
        return std::make_shared<GModule>(mod->group(), mod->ring(), mod->rank() - 1,
                                         std::move(action), mname);
    };

    ModulePtr b_new = transform_module(q.module(1), nb, nb_inv, bi, q.module(1)->name() + "~");
    ModulePtr c_new = transform_module(q.module(2), nc, nc_inv, ci, q.module(2)->name() + "~");

    ModuleMap d1n(q.module(0), b_new, drop(d1_adj, bi, -1));
    ModuleMap d2n(b_new, c_new, drop(drop(d2_adj, ci, -1), -1, bi));
    ModuleMap d3n(c_new, q.module(3), drop(d3_adj, -1, ci));
    return ExactQuadruple(name, std::move(d1n), std::move(d2n), std::move(d3n), std::nullopt,
                          q.default_scalar(), {});
}

ExactQuadruple build_biquadratic2_entry()
{
    ExactQuadruple restricted =
        restrict_quadruple(catalog_build("dihedral", 4), embed_klein_in_dihedral4(EmbedVariant::EdgeTransitive));
    // B's trivial Z coordinate is index 4; the Delta'/Pi part of C is the
    // trivial 2-dimensional block at indices 4, 5, and d2 sends the Z of B
    // to (1,1) there: cancel against the first of those coordinates.
    return cancel_unit_pair(restricted, 4, 4, "biquadratic2");
}

} // namespace

const std::vector<CatalogEntryInfo>& catalog_entries()
{
    static const std::vector<CatalogEntryInfo> entries = {
        {"cyclic", "Z -> Z[S] -> Z[S] -> Z", "k >= 2", true, false},
        {"sigma", "Z -> Z[S](+)Z -> Z[S](+)Z[S/P] -> Z[S/P]", "m | k", true, true},
        {"dihedral", "Z -> Z[V](+)Z -> Z[E](+)Z[V/P] -> Z[E/P]", "4 | k", true, false},
        {"dihedral_plus", "restriction of dihedral(k) to the vertex-transitive index-2 subgroup",
         "4 | k", true, false},
        {"biquadratic", "Z -> Z[T](+)Z -> Z[T/a](+)Z[T/b](+)Z[T/c] -> Z^2", "", false, false},
        {"biquadratic2", "Z -> Z[T/a](+)Z[T/b] -> Z[T](+)Z -> Z[T/c]", "", false, false},
        {"remark18", "Z[V/P] -> Z[V](+)Z -> Z[E](+)Z -> Z[E/P] (E -> V when k/m odd)", "m | k",
         true, true},
        {"s4", "Z -> Z[X4](+)Z -> Z[X6](+)Z -> Z[X3]", "", false, false},
    };
    return entries;
}

ExactQuadruple catalog_build(const std::string& family, int k, int m)
{
    if (family == "cyclic") return build_cyclic_entry(k);
    if (family == "sigma") return build_sigma_entry(k, m);
    if (family == "dihedral") return build_dihedral_entry(k);
    if (family == "dihedral_plus")
        return restrict_quadruple(build_dihedral_entry(k),
                                  embed_dihedral_index2(k, EmbedVariant::VertexTransitive));
    if (family == "biquadratic")
        return restrict_quadruple(build_dihedral_entry(4),
                                  embed_klein_in_dihedral4(EmbedVariant::VertexTransitive));
    if (family == "biquadratic2") return build_biquadratic2_entry();
    if (family == "remark18") return build_remark18_entry(k, m);
    if (family == "s4") return build_s4_entry();
    throw std::invalid_argument("catalog_build: unknown family " + family);
}

QuadrupleIso remark18_selfduality(int k, int m)
{
    const int q = k / m;
    GroupPtr gamma = build_dihedral(k);
    QuadrupleIso iso;
    iso.automorphism.resize(2 * k);
    if (q % 2 != 0) {
        for (int g = 0; g < 2 * k; ++g) iso.automorphism[g] = g;
        ExactQuadruple base = catalog_build("remark18", k, m);
        for (int i = 0; i < 4; ++i) iso.maps[i] = IntMatrix::identity(base.module(i)->rank());
        return iso;
    }
    // even case: vertices and edges change roles; twist by sigma^r tau^f ->
    // sigma^{r+f} tau^f and shift edge indices by one on the way back
    for (int g = 0; g < 2 * k; ++g) {
        int r = g % k, f = g / k;
        iso.automorphism[g] = (r + f) % k + k * f;
    }
    // dual modules: [E/P], E (+) Z, V (+) Z, [V/P]  ->  [V/P], V (+) Z, E (+) Z, [E/P]
    IntMatrix phi_a(q, q), phi_d(q, q), phi_b(k + 1, k + 1), phi_c(k + 1, k + 1);
    for (int i = 0; i < q; ++i) {
        phi_a.at(posmod(i + 1, q), i) = 1; // [e_i]* -> [v_{i+1}]
        phi_d.at(i, i) = 1;                // [v_i]* -> [e_i]
    }
    for (int i = 0; i < k; ++i) {
        phi_b.at(posmod(i + 1, k), i) = 1; // e_i* -> v_{i+1}
        phi_c.at(i, i) = 1;                // v_i* -> e_i
    }
    phi_b.at(k, k) = 1;
    phi_c.at(k, k) = 1;
    iso.maps = {phi_a, phi_b, phi_c, phi_d};
    return iso;
}

std::vector<std::int64_t> canonical_twist(const ExactQuadruple& q, std::int64_t m)
{
    const std::int64_t n2 = m * m;
    const auto& g = *q.group();
    // cyclic groups: send a generator of minimal index to 1 + m (order m);
    // others: a sign character with kernel of index 2
    if (g.is_abelian() && !g.generators().empty() && g.element_order(g.generators()[0]) == g.order()) {
        const int gen = g.generators()[0];
        const int ord = g.order();
        if (ord % m == 0) {
            // chi(gen) = 1 + m has multiplicative order m | ord
            std::vector<std::int64_t> chi(g.order(), 1);
            std::int64_t val = 1;
            std::vector<std::int64_t> pow_of(g.order(), 0);
            int x = 0;
            for (int e = 0; e < ord; ++e) {
                pow_of[x] = e;
                x = g.mul(x, gen);
            }
            for (int a = 0; a < g.order(); ++a) {
                val = 1;
                for (int e = 0; e < pow_of[a]; ++e) val = val * (1 + m) % n2;
                chi[a] = val;
            }
            return chi;
        }
    }
    // index-2 kernel: prefer a subgroup of index 2 (rotations, even
    // permutations paired with V4... use: elements expressible as squares)
    std::vector<std::int64_t> chi(g.order(), 1);
    // find a surjective homomorphism onto {+-1}: try kernels = normal
    // subgroups of index 2 generated by squares and commutators
    std::vector<int> gens;
    for (int a = 0; a < g.order(); ++a) gens.push_back(g.mul(a, a));
    Subgroup sq(q.group(), gens);
    if (sq.index() % 2 != 0) throw std::invalid_argument("canonical_twist: no order-2 character");
    // extend the square subgroup to an index-2 subgroup deterministically
    std::vector<int> hgens(sq.elements().begin(), sq.elements().end());
    Subgroup h = sq;
    while (h.index() > 2) {
        for (int a = 1; a < g.order(); ++a)
            if (!h.contains(a)) {
                std::vector<int> ng = hgens;
                ng.push_back(a);
                Subgroup trial(q.group(), ng);
                if (trial.index() >= 2 && trial.index() % 2 == 0) {
                    hgens = ng;
                    h = trial;
                    break;
                }
            }
    }
    for (int a = 0; a < g.order(); ++a) chi[a] = h.contains(a) ? 1 : n2 - 1;
    return chi;
}

} // namespace qcoh
