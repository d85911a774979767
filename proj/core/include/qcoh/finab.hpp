#pragma once

#include "qcoh/intmat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcoh {

/// Finite abelian group presented as (+)_i Z/d_i with every d_i > 1.
/// Canonical cohomology groups carry a divisibility chain; direct sums keep
/// the concatenated list as-is.  Elements are coordinate vectors reduced mod
/// the divisors.
class FinAb {
public:
    FinAb() = default;
    explicit FinAb(std::vector<std::int64_t> divisors);
    static FinAb product(std::vector<std::int64_t> divisors) { return FinAb(std::move(divisors)); }
    bool is_chain() const;

    const std::vector<std::int64_t>& divisors() const { return divisors_; }
    int rank() const { return int(divisors_.size()); }
    Int order() const;
    bool trivial() const { return divisors_.empty(); }

    std::vector<std::int64_t> reduce(std::vector<Int> v) const;
    bool operator==(const FinAb& o) const = default;

    static FinAb direct_sum(const FinAb& a, const FinAb& b);

private:
    std::vector<std::int64_t> divisors_;
};

/// Homomorphism between FinAb groups, stored as an integer matrix acting on
/// coordinates.  Well-definedness (M * d_i e_i = 0 in the target) is checked
/// on construction.
class FinAbMap {
public:
    FinAbMap() = default;
    FinAbMap(FinAb src, FinAb tgt, IntMatrix m);

    static FinAbMap zero(const FinAb& src, const FinAb& tgt);
    static FinAbMap identity(const FinAb& g);

    const FinAb& source() const { return src_; }
    const FinAb& target() const { return tgt_; }
    const IntMatrix& matrix() const { return m_; }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;
    FinAbMap compose(const FinAbMap& inner) const; ///< this after inner
    FinAbMap operator+(const FinAbMap& o) const;
    FinAbMap operator-(const FinAbMap& o) const;
    FinAbMap scaled(std::int64_t s) const;
    bool is_zero() const;
    bool equal_to(const FinAbMap& o) const;

    /// Order of the image subgroup.
    Int image_order() const;
    /// Order of the kernel subgroup.
    Int kernel_order() const;
    /// Generators of the kernel subgroup (columns, in source coordinates).
    IntMatrix kernel_generators() const;

    bool injective() const;
    bool surjective() const;
    bool bijective() const { return injective() && surjective(); }

    /// Block map [a, b] : A (+) B -> T.
    static FinAbMap block_row(const FinAbMap& a, const FinAbMap& b);
    /// Block map [a; b] : S -> A (+) B.
    static FinAbMap block_col(const FinAbMap& a, const FinAbMap& b);
    static FinAbMap direct_sum(const FinAbMap& a, const FinAbMap& b);

private:
    FinAb src_, tgt_;
    IntMatrix m_; // tgt.rank x src.rank
    void canonicalize();
};

/// Order of the subgroup of `g` generated by the columns of `gens`.
Int subgroup_order(const FinAb& g, const IntMatrix& gens);

/// Subgroup presented on its own divisors, with the inclusion map.
struct FinAbSubgroup {
    FinAb sub;
    FinAbMap include; // sub -> parent
};
FinAbSubgroup subgroup_from_generators(const FinAb& parent, const IntMatrix& gens);

/// Quotient presented on its own divisors, with the projection map.
struct FinAbQuotient {
    FinAb quot;
    FinAbMap project; // parent -> quot
};
FinAbQuotient quotient_by_generators(const FinAb& parent, const IntMatrix& gens);

/// Some x with f(x) = y, or nullopt.
std::optional<std::vector<std::int64_t>> finab_preimage(const FinAbMap& f,
                                                        const std::vector<std::int64_t>& y);

/// f restricted to a subgroup of its source (composition with include).
FinAbMap restrict_to_subgroup(const FinAbMap& f, const FinAbSubgroup& sub);

/// f with target corestricted to a subgroup containing its image; throws when
/// the image is not contained in the subgroup.
FinAbMap corestrict_to_subgroup(const FinAbMap& f, const FinAbSubgroup& sub);

/// f descended to a quotient of its source (f must kill the denominators).
FinAbMap descend_to_quotient(const FinAbMap& f, const FinAbQuotient& quot);

/// Checks g o f == 0 and im(f) == ker(g) by order comparison.
struct ExactnessVerdict {
    bool composite_zero = false;
    bool exact = false;
    Int image_order = 0;
    Int kernel_order = 0;
};
ExactnessVerdict exact_at(const FinAbMap& f, const FinAbMap& g);

} // namespace qcoh
