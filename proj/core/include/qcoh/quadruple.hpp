#pragma once

#include "qcoh/gmodule.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qcoh {

/// Degree -1 triple h with d h + h d = scalar in all four positions.
struct HomotopyTriple {
    ModuleMap h_ba; // B -> A
    ModuleMap h_cb; // C -> B
    ModuleMap h_dc; // D -> C
    std::int64_t scalar;
};

/// Direct summand bookkeeping for the quadruple modules: permutational
/// pieces remember their G-set, trivial pieces just a rank.  ambient_indices
/// lists the coordinates of the piece inside the module.
struct Summand {
    std::optional<GSet> gset;
    int rank = 0;
    std::vector<int> ambient_indices;
    bool permutational() const { return gset.has_value(); }
};

/// Four-term complex of integer G-modules A -> B -> C -> D with equivariant
/// differentials, optionally carrying a chain homotopy.  d o d = 0 and
/// exactness are verified by verify(), not forced at construction, so
/// negative controls are representable.
class ExactQuadruple {
public:
    ExactQuadruple(std::string name, ModuleMap d_ab, ModuleMap d_bc, ModuleMap d_cd,
                   std::optional<HomotopyTriple> homotopy, std::int64_t default_scalar,
                   std::array<std::vector<Summand>, 4> summands = {});

    const std::string& name() const { return name_; }
    const GroupPtr& group() const { return group_; }
    const ModulePtr& module(int i) const { return modules_[i]; } ///< 0..3 = A..D
    const ModuleMap& d_ab() const { return diffs_[0]; }
    const ModuleMap& d_bc() const { return diffs_[1]; }
    const ModuleMap& d_cd() const { return diffs_[2]; }
    const std::optional<HomotopyTriple>& homotopy() const { return homotopy_; }
    std::int64_t default_scalar() const { return default_scalar_; }
    const std::array<std::vector<Summand>, 4>& summands() const { return summands_; }

    ExactQuadruple with_homotopy(HomotopyTriple h) const;

private:
    std::string name_;
    GroupPtr group_;
    std::array<ModulePtr, 4> modules_;
    std::vector<ModuleMap> diffs_;
    std::optional<HomotopyTriple> homotopy_;
    std::int64_t default_scalar_;
    std::array<std::vector<Summand>, 4> summands_;
};

struct QuadrupleReport {
    bool complex_ok = false;
    bool injective_at_a = false;
    bool exact_at_b = false;
    bool exact_at_c = false;
    bool surjective_at_d = false;
    std::optional<bool> homotopy_ok;
    std::string details;

    bool all_ok() const
    {
        return complex_ok && injective_at_a && exact_at_b && exact_at_c && surjective_at_d &&
               homotopy_ok.value_or(true);
    }
};

/// Equivariance, d o d = 0, integral exactness, and the homotopy identity
/// (when a homotopy is stored).
QuadrupleReport verify(const ExactQuadruple& q);

/// Hom_Z(Q, Z): reversed, transposed, homotopy dualized.
ExactQuadruple dualize(const ExactQuadruple& q);

/// Same matrices, action restricted along the embedding; summand
/// decomposition recomputed as orbits.
ExactQuadruple restrict_quadruple(const ExactQuadruple& q, const GroupEmbedding& e);

/// Four-term sequence of free Z/m^2 modules obtained by tensoring with a
/// coefficient module.
struct TensoredQuadruple {
    std::string name;
    GroupPtr group;
    std::int64_t m;                    // scalar; modules live over m^2
    ModulePtr coeff;                   // the coefficient module T2 over Z/m^2
    std::array<ModulePtr, 4> modules;  // over Z/m^2
    std::vector<ModuleMap> diffs;      // three maps
    std::optional<HomotopyTriple> homotopy;
};

/// Q (x) T2 where T2 is free over Z/m^2; the stored homotopy is rescaled by
/// m / scalar(Q) when the scalars differ (requires scalar(Q) | m).
TensoredQuadruple tensor_with(const ExactQuadruple& q, const ModulePtr& t2, std::int64_t m);

bool verify_tensored(const TensoredQuadruple& t);

/// Isomorphism-of-quadruples witness: per-position invertible matrices
/// commuting with the differentials, equivariant after twisting the source
/// action by a group automorphism.
struct QuadrupleIso {
    std::array<IntMatrix, 4> maps;
    std::vector<int> automorphism; // target-group automorphism used for the twist
};

/// Checks that `iso` is a genuine isomorphism from `src` to `dst`.
bool check_quadruple_iso(const ExactQuadruple& src, const ExactQuadruple& dst,
                         const QuadrupleIso& iso);

} // namespace qcoh
