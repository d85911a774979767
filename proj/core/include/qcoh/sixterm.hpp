#pragma once

#include "qcoh/cohomology.hpp"
#include "qcoh/homotopy.hpp"
#include "qcoh/quadruple.hpp"

#include <optional>

namespace qcoh {

/// Exact triple X2 -> Y2 -> Z2 of Z/m^2 modules with a homotopy satisfying
/// d h + h d = m, its mod-m reduction, and the derived map h_XZ: Z1 -> X1
/// with h_XZ o p1 = h1 and i1 o h_XZ = -h1.
struct TripleWithHomotopy {
    std::int64_t m;
    ModuleMap i2, p2;     // X2 -> Y2 -> Z2
    ModuleMap h_yx, h_zy; // Y2 -> X2, Z2 -> Y2
    ModulePtr x1, y1, z1; // reductions mod m
    ModuleMap i1, p1;
    ModuleMap h_yx1, h_zy1;
    ModuleMap h_xz; // Z1 -> X1

    const ModulePtr& x2() const { return i2.source(); }
    const ModulePtr& y2() const { return i2.target(); }
    const ModulePtr& z2() const { return p2.target(); }
};

/// Validates the triple (exactness over Z/m^2, homotopy identities) and
/// derives h_XZ; throws on violations.
TripleWithHomotopy make_triple(ModuleMap i2, ModuleMap p2, ModuleMap h_yx, ModuleMap h_zy,
                               std::int64_t m);

struct SplitQuadruple {
    ModulePtr l2;
    TripleWithHomotopy first;  // A2 -> B2 -> L2
    TripleWithHomotopy second; // L2 -> C2 -> D2
};

/// Cuts the tensored quadruple at the image of B2 -> C2, built from the
/// integer image basis tensored with the coefficients; both triples carry
/// the induced homotopies.
SplitQuadruple split_quadruple(const ExactQuadruple& qz, const TensoredQuadruple& q);

/// delta_XZ == beta_X o H(h_XZ) - H(h_XZ) o beta_Z on H^n(Z1).
bool degree_shift_identity(CohomologyContext& ctx, const TripleWithHomotopy& t, int n);

/// Extension-level proof of the same identity by finite enumeration: the
/// middle homology module of X1 -> (X2 x_{X1} Z1) (+) (X1 u_{Z1} Z2) -> Z1
/// is isomorphic to Y1 via f(y1) = (h(y2), p1(y1)) (+) (h1(y1), p(y2)).
/// Returns false on any violation; skips nothing.
bool degree_shift_extension_check(const TripleWithHomotopy& t);

/// Largest module order appearing in the triple (gate for the enumeration).
Int triple_max_order(const TripleWithHomotopy& t);

/// The extension A1 -> N -> D1 with its verification data.
struct NExtensionResult {
    ModuleExtension ext;
    ModuleMap h_ld; // D1 -> L1
    ModuleMap h_al; // L1 -> A1
    bool pushout_splits = false;
    bool pullback_splits = false;
    bool nu_equals_delta_hld = false;
    bool nu_equals_minus_hal_delta = false;
    CohomologyMap nu; // H^n(D1) -> H^{n+1}(A1), from the extension's snake
};
NExtensionResult build_n_extension(CohomologyContext& ctx, const ExactQuadruple& qz,
                                   const TensoredQuadruple& q, int n);

struct SixTermReport {
    std::int64_t m = 0;
    int degree = 0;
    std::string quadruple_name;
    std::array<bool, 4> bockstein_vanishes{}; // A, B, C, D at degree n
    bool gates_passed = false;
    // groups of the display, left to right
    std::vector<FinAb> groups;
    std::vector<FinAbMap> maps; // the five arrows
    std::array<bool, 4> exact_at_interior{};
    bool exact_when_gated() const
    {
        if (!gates_passed) return true; // nothing asserted
        return exact_at_interior[0] && exact_at_interior[1] && exact_at_interior[2] &&
               exact_at_interior[3];
    }
    bool n_extension_ok = false;
    std::string details;
};

/// Gated six-term check: computes the display
/// H^n(B1 (+) D1) -> H^n(C1) -> H^n(D1) -> H^{n+1}(A1) -> H^{n+1}(B1)
/// -> H^{n+1}(A1 (+) C1), gates on the four Bockstein verdicts, and checks
/// exactness at the interior positions when the gates pass.
SixTermReport six_term(CohomologyContext& ctx, const ExactQuadruple& q, const ModulePtr& t2,
                       int n);

/// nu and the N-extension are independent of the homotopy choice.
struct NuIndependenceResult {
    bool nu_equal = false;
    bool extensions_isomorphic = false; // checked when A1, D1 are permutational
    bool applicable_extension_check = false;
};
NuIndependenceResult nu_independence(CohomologyContext& ctx, const ExactQuadruple& q,
                                     const HomotopyTriple& h1, const HomotopyTriple& h2,
                                     const ModulePtr& t2, int n);

/// Equivariant section solver: s with proj o s = id and s equivariant,
/// over Z/N.  Used for the split-composition checks.
std::optional<IntMatrix> equivariant_section(const ModuleMap& proj);

} // namespace qcoh
