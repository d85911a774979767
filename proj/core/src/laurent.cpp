#include "qcoh/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcoh {

Laurent Laurent::monomial(const Int& c, int power)
{
    Laurent l;
    l.low = power;
    l.coeffs = {c};
    return l.trimmed();
}

Laurent Laurent::trimmed() const
{
    Laurent l = *this;
    while (!l.coeffs.empty() && l.coeffs.back() == 0) l.coeffs.pop_back();
    std::size_t lead = 0;
    while (lead < l.coeffs.size() && l.coeffs[lead] == 0) ++lead;
    if (lead) {
        l.coeffs.erase(l.coeffs.begin(), l.coeffs.begin() + lead);
        l.low += int(lead);
    }
    if (l.coeffs.empty()) l.low = 0;
    return l;
}

bool Laurent::is_zero() const { return trimmed().coeffs.empty(); }

bool Laurent::operator==(const Laurent& o) const
{
    Laurent a = trimmed(), b = o.trimmed();
    return a.low == b.low && a.coeffs == b.coeffs;
}

Int Laurent::coeff(int power) const
{
    int idx = power - low;
    if (idx < 0 || idx >= int(coeffs.size())) return 0;
    return coeffs[idx];
}

Laurent Laurent::reversed() const
{
    Laurent l;
    l.coeffs.assign(coeffs.rbegin(), coeffs.rend());
    l.low = -(low + int(coeffs.size()) - 1);
    return l.trimmed();
}

Laurent laurent_add(const Laurent& a, const Laurent& b)
{
    if (a.coeffs.empty()) return b.trimmed();
    if (b.coeffs.empty()) return a.trimmed();
    int low = std::min(a.low, b.low);
    int high = std::max(a.low + int(a.coeffs.size()), b.low + int(b.coeffs.size()));
    Laurent s;
    s.low = low;
    s.coeffs.assign(high - low, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) s.coeffs[a.low - low + i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) s.coeffs[b.low - low + i] += b.coeffs[i];
    return s.trimmed();
}

Laurent laurent_sub(const Laurent& a, const Laurent& b)
{
    Laurent nb = b;
    for (auto& c : nb.coeffs) c = -c;
    return laurent_add(a, nb);
}

Laurent laurent_mul(const Laurent& a, const Laurent& b)
{
    if (a.coeffs.empty() || b.coeffs.empty()) return Laurent{};
    Laurent p;
    p.low = a.low + b.low;
    p.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) p.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return p.trimmed();
}

Laurent laurent_div_exact(const Laurent& num, const Laurent& den)
{
    Laurent n = num.trimmed(), d = den.trimmed();
    if (d.coeffs.empty()) throw std::invalid_argument("laurent_div_exact: division by zero");
    if (n.coeffs.empty()) return Laurent{};
    // divide from the top; require exact leading-coefficient division throughout
    Laurent q;
    q.low = (n.low + int(n.coeffs.size()) - 1) - (d.low + int(d.coeffs.size()) - 1);
    // work in plain polynomial coordinates
    std::vector<Int> r = n.coeffs, dd = d.coeffs;
    std::vector<Int> quot;
    int qlen = int(r.size()) - int(dd.size()) + 1;
    if (qlen <= 0) throw std::invalid_argument("laurent_div_exact: not divisible");
    quot.assign(qlen, 0);
    for (int i = int(r.size()) - 1; i >= int(dd.size()) - 1; --i) {
        Int lead = r[i];
        if (lead == 0) continue;
        if (lead % dd.back() != 0) throw std::invalid_argument("laurent_div_exact: not divisible");
        Int q0 = lead / dd.back();
        int shift = i - (int(dd.size()) - 1);
        quot[shift] = q0;
        for (std::size_t j = 0; j < dd.size(); ++j) r[shift + j] -= q0 * dd[j];
    }
    for (const Int& c : r)
        if (c != 0) throw std::invalid_argument("laurent_div_exact: nonzero remainder");
    Laurent out;
    out.low = n.low - d.low;
    out.coeffs = std::move(quot);
    return out.trimmed();
}

Laurent cyclic_homotopy_poly(int k)
{
    if (k < 1) throw std::invalid_argument("cyclic_homotopy_poly: k >= 1");
    // k - (1 + ... + x^{k-1}) = (1 - x) f(x)
    Laurent num;
    num.low = 0;
    num.coeffs.assign(k, -1);
    num.coeffs[0] += k;
    Laurent den;
    den.low = 0;
    den.coeffs = {1, -1};
    Laurent f = laurent_div_exact(num.trimmed(), den);
    // check: f = sum_i (k-1-i) x^i
    return f;
}

Laurent dihedral_homotopy_poly(int k)
{
    if (k % 2 != 0) throw std::invalid_argument("dihedral_homotopy_poly: even k required");
    Laurent rhs;
    rhs.low = -k / 2 + 1;
    rhs.coeffs.assign(k - 1, 1);
    rhs.coeffs[k / 2 - 1] += 1; // the extra "1 +" at x^0
    Laurent den;
    den.low = -1;
    den.coeffs = {1, 2, 1}; // x^{-1} + 2 + x = (x^{1/2} + x^{-1/2})^2
    return laurent_div_exact(rhs, den);
}

} // namespace qcoh
