#include "qcoh/cochain.hpp"

namespace qcoh {

CochainComplex::CochainComplex(GroupPtr group, ModulePtr module)
    : group_(std::move(group)), module_(std::move(module))
{
    if (module_->ring().is_integers())
        throw std::invalid_argument("CochainComplex: modular coefficients required");
    if (module_->group() != group_)
        throw std::invalid_argument("CochainComplex: module is not over this group");
    n_ = module_->ring().modulus;
    q_ = group_->order() - 1;
    for (int g = 0; g < group_->order(); ++g) action_.push_back(module_->action_mod(g));
}

std::int64_t CochainComplex::dim(int degree) const
{
    std::int64_t d = module_->rank();
    for (int i = 0; i < degree; ++i) d *= q_;
    return d;
}

std::vector<int> CochainComplex::tuple_of(int degree, std::int64_t flat) const
{
    std::vector<int> t(degree);
    for (int i = degree - 1; i >= 0; --i) {
        t[i] = int(flat % q_) + 1;
        flat /= q_;
    }
    return t;
}

std::int64_t CochainComplex::flat_of(const std::vector<int>& tuple) const
{
    std::int64_t f = 0;
    for (int g : tuple) f = f * q_ + (g - 1);
    return f;
}

std::vector<std::int64_t> CochainComplex::coboundary(int n, const std::vector<std::int64_t>& f) const
{
    if (std::int64_t(f.size()) != dim(n)) throw std::invalid_argument("coboundary: dim mismatch");
    const int rank = module_->rank();
    std::vector<std::int64_t> out(dim(n + 1), 0);
    std::vector<int> tuple(n + 1);
    const std::int64_t tuples = dim(n + 1) / rank;
    for (std::int64_t t = 0; t < tuples; ++t) {
        {
            std::int64_t flat = t;
            for (int i = n; i >= 0; --i) {
                tuple[i] = int(flat % q_) + 1;
                flat /= q_;
            }
        }
        std::int64_t* dst = &out[t * rank];
        // g1 . f(g2, ..., g_{n+1})
        {
            std::int64_t sub = 0;
            for (int i = 1; i <= n; ++i) sub = sub * q_ + (tuple[i] - 1);
            const ModMatrix& rho = action_[tuple[0]];
            const std::int64_t* src = &f[sub * rank];
            for (int r = 0; r < rank; ++r) {
                std::int64_t acc = 0;
                for (int c = 0; c < rank; ++c) acc += rho.at(r, c) * src[c];
                dst[r] = (dst[r] + acc) % n_;
            }
        }
        // alternating inner merges
        int sign = -1;
        for (int i = 0; i + 1 <= n; ++i) {
            int merged = group_->mul(tuple[i], tuple[i + 1]);
            if (merged != 0) {
                std::int64_t sub = 0;
                for (int j = 0; j <= n; ++j) {
                    if (j == i + 1) continue;
                    int val = j == i ? merged : tuple[j];
                    sub = sub * q_ + (val - 1);
                }
                const std::int64_t* src = &f[sub * rank];
                for (int r = 0; r < rank; ++r)
                    dst[r] = mod_reduce(dst[r] + sign * src[r], n_);
            }
            sign = -sign;
        }
        // (-1)^{n+1} f(g1, ..., g_n)
        {
            std::int64_t sub = 0;
            for (int i = 0; i < n; ++i) sub = sub * q_ + (tuple[i] - 1);
            const std::int64_t* src = &f[sub * rank];
            for (int r = 0; r < rank; ++r)
                dst[r] = mod_reduce(dst[r] + sign * src[r], n_);
        }
    }
    return out;
}

void CochainComplex::coboundary_rows(int n, const std::function<void(const SparseRow&)>& sink) const
{
    const int rank = module_->rank();
    const std::int64_t tuples = dim(n + 1) / rank;
    std::vector<int> tuple(n + 1);
    SparseRow row;
    for (std::int64_t t = 0; t < tuples; ++t) {
        {
            std::int64_t flat = t;
            for (int i = n; i >= 0; --i) {
                tuple[i] = int(flat % q_) + 1;
                flat /= q_;
            }
        }
        std::int64_t head_sub = 0;
        for (int i = 1; i <= n; ++i) head_sub = head_sub * q_ + (tuple[i] - 1);
        std::int64_t tail_sub = 0;
        for (int i = 0; i < n; ++i) tail_sub = tail_sub * q_ + (tuple[i] - 1);
        const ModMatrix& rho = action_[tuple[0]];
        const int tail_sign = (n + 1) % 2 == 0 ? 1 : -1;

        for (int r = 0; r < rank; ++r) {
            row.clear();
            for (int c = 0; c < rank; ++c) {
                std::int64_t v = rho.at(r, c);
                if (v) row.push_back({int(head_sub * rank + c), v});
            }
            int sign = -1;
            for (int i = 0; i + 1 <= n; ++i) {
                int merged = group_->mul(tuple[i], tuple[i + 1]);
                if (merged != 0) {
                    std::int64_t sub = 0;
                    for (int j = 0; j <= n; ++j) {
                        if (j == i + 1) continue;
                        int val = j == i ? merged : tuple[j];
                        sub = sub * q_ + (val - 1);
                    }
                    row.push_back({int(sub * rank + r), mod_reduce(sign, n_)});
                }
                sign = -sign;
            }
            row.push_back({int(tail_sub * rank + r), mod_reduce(tail_sign, n_)});
            sink(row);
        }
    }
}

ModMatrix CochainComplex::coboundary_matrix(int n) const
{
    ModMatrix m(int(dim(n + 1)), int(dim(n)), n_);
    std::int64_t r = 0;
    coboundary_rows(n, [&](const SparseRow& row) {
        for (auto [pos, val] : row) m.at(int(r), pos) = mod_reduce(m.at(int(r), pos) + val, n_);
        ++r;
    });
    return m;
}

} // namespace qcoh
