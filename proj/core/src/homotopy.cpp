#include "qcoh/homotopy.hpp"

#include <numeric>
#include <stdexcept>

namespace qcoh {

namespace {

struct Block {
    int rows, cols, offset; // unknown matrix of shape rows x cols
};

} // namespace

std::optional<HomotopyTriple> solve_homotopy(const ExactQuadruple& q, std::int64_t m,
                                             int ordering_variant)
{
    const int ra = q.module(0)->rank(), rb = q.module(1)->rank(), rc = q.module(2)->rank(),
              rd = q.module(3)->rank();
    Block hba{ra, rb, 0};
    Block hcb{rb, rc, ra * rb};
    Block hdc{rc, rd, ra * rb + rb * rc};
    const int unknowns = ra * rb + rb * rc + rc * rd;

    std::vector<int> generators = q.group()->generators();
    if (generators.empty())
        for (int g = 1; g < q.group()->order(); ++g) generators.push_back(g);

    // rows of the linear system
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    auto new_row = [&]() -> std::vector<Int>& {
        rows.emplace_back(unknowns, 0);
        rhs.emplace_back(0);
        return rows.back();
    };
    auto idx = [](const Block& b, int i, int j) { return b.offset + i * b.cols + j; };

    const IntMatrix& dab = q.d_ab().matrix();
    const IntMatrix& dbc = q.d_bc().matrix();
    const IntMatrix& dcd = q.d_cd().matrix();

    // h_ba * d_ab = m I_a
    for (int i = 0; i < ra; ++i)
        for (int l = 0; l < ra; ++l) {
            auto& row = new_row();
            for (int j = 0; j < rb; ++j) row[idx(hba, i, j)] = dab.at(j, l);
            rhs.back() = i == l ? m : 0;
        }
    // d_ab * h_ba + h_cb * d_bc = m I_b
    for (int i = 0; i < rb; ++i)
        for (int l = 0; l < rb; ++l) {
            auto& row = new_row();
            for (int j = 0; j < ra; ++j) row[idx(hba, j, l)] += dab.at(i, j);
            for (int j = 0; j < rc; ++j) row[idx(hcb, i, j)] += dbc.at(j, l);
            rhs.back() = i == l ? m : 0;
        }
    // d_bc * h_cb + h_dc * d_cd = m I_c
    for (int i = 0; i < rc; ++i)
        for (int l = 0; l < rc; ++l) {
            auto& row = new_row();
            for (int j = 0; j < rb; ++j) row[idx(hcb, j, l)] += dbc.at(i, j);
            for (int j = 0; j < rd; ++j) row[idx(hdc, i, j)] += dcd.at(j, l);
            rhs.back() = i == l ? m : 0;
        }
    // d_cd * h_dc = m I_d
    for (int i = 0; i < rd; ++i)
        for (int l = 0; l < rd; ++l) {
            auto& row = new_row();
            for (int j = 0; j < rc; ++j) row[idx(hdc, j, l)] += dcd.at(i, j);
            rhs.back() = i == l ? m : 0;
        }
    // equivariance per generator: h rho_src(g) - rho_tgt(g) h = 0
    auto equivariance = [&](const Block& b, const ModulePtr& src, const ModulePtr& tgt) {
        for (int g : generators) {
            const IntMatrix& rs = src->action(g);
            const IntMatrix& rt = tgt->action(g);
            for (int i = 0; i < b.rows; ++i)
                for (int l = 0; l < b.cols; ++l) {
                    auto& row = new_row();
                    for (int j = 0; j < b.cols; ++j) row[idx(b, i, j)] += rs.at(j, l);
                    for (int j = 0; j < b.rows; ++j) row[idx(b, j, l)] -= rt.at(i, j);
                }
        }
    };
    equivariance(hba, q.module(1), q.module(0));
    equivariance(hcb, q.module(2), q.module(1));
    equivariance(hdc, q.module(3), q.module(2));

    // column permutation for the ordering variant
    std::vector<int> perm(unknowns);
    std::iota(perm.begin(), perm.end(), 0);
    if (ordering_variant % 2 == 1) std::reverse(perm.begin(), perm.end());

    IntMatrix a(int(rows.size()), unknowns);
    IntMatrix b(int(rows.size()), 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < unknowns; ++c) a.at(int(r), c) = rows[r][perm[c]];
        b.at(int(r), 0) = rhs[r];
    }
    auto x = solve_z(a, b);
    if (!x) return std::nullopt;
    std::vector<Int> sol(unknowns);
    for (int c = 0; c < unknowns; ++c) sol[perm[c]] = x->at(c, 0);

    auto extract = [&](const Block& blk) {
        IntMatrix m2(blk.rows, blk.cols);
        for (int i = 0; i < blk.rows; ++i)
            for (int j = 0; j < blk.cols; ++j) m2.at(i, j) = sol[idx(blk, i, j)];
        return m2;
    };
    HomotopyTriple h{ModuleMap(q.module(1), q.module(0), extract(hba)),
                     ModuleMap(q.module(2), q.module(1), extract(hcb)),
                     ModuleMap(q.module(3), q.module(2), extract(hdc)), m};
    return h;
}

ExactQuadruple ensure_homotopy(const ExactQuadruple& q)
{
    if (q.homotopy()) return q;
    auto h = solve_homotopy(q, q.default_scalar());
    if (!h) throw std::runtime_error("ensure_homotopy: no equivariant homotopy found for " + q.name());
    return q.with_homotopy(std::move(*h));
}

} // namespace qcoh
