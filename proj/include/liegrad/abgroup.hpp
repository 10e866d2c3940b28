#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liegrad/cyclofield.hpp"
#include "liegrad/errors.hpp"

namespace liegrad {

using IntMat = std::vector<std::vector<Int>>;

/// Smith decomposition U*A*V = D with U, V unimodular and D diagonal with
/// the divisibility chain d1 | d2 | ... along the diagonal.
struct SmithResult {
    IntMat D;
    IntMat U;
    IntMat V;
    IntMat Vinv;
};

SmithResult smith_normal_form(const IntMat& A);

IntMat int_mat_identity(size_t n);
IntMat int_mat_mul(const IntMat& A, const IntMat& B);

/// Element of an AbGroup in canonical coordinates: free coordinates first
/// (unbounded), then torsion coordinates reduced into [0, d_i).
struct GroupElem {
    std::vector<Int> coords;

    bool operator==(const GroupElem& o) const { return coords == o.coords; }
    bool operator<(const GroupElem& o) const { return coords < o.coords; }
};

/// Isomorphism type: free rank and invariant factors d1 | d2 | ... (each >= 2).
struct IsoType {
    long rank = 0;
    std::vector<Int> torsion;

    bool operator==(const IsoType& o) const { return rank == o.rank && torsion == o.torsion; }
    bool operator!=(const IsoType& o) const { return !(*this == o); }
    std::string to_string() const;
};

class AbGroup;

/// A subgroup together with its embedding into the ambient group.
struct SubgroupInfo {
    std::shared_ptr<const AbGroup> group;     // the subgroup, canonical form
    std::vector<GroupElem> generators;        // ambient coordinates
    /// Ambient element -> subgroup canonical coordinates; nullopt if the
    /// element is not in the subgroup.
    std::optional<GroupElem> to_subgroup(const GroupElem& ambient) const;
    /// Subgroup element -> ambient coordinates.
    GroupElem to_ambient(const GroupElem& sub) const;

    // implementation data
    std::shared_ptr<const AbGroup> ambient;
    IntMat gen_matrix;                        // rows = generators, ambient coords
};

/// Finitely presented abelian group in Smith canonical form.  Immutable
/// after construction.
class AbGroup : public std::enable_shared_from_this<AbGroup> {
public:
    /// Group Z^g / row-span(relations).  Each relation row has g entries.
    static std::shared_ptr<const AbGroup> from_presentation(size_t num_generators, const IntMat& relations);

    long rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    size_t coord_count() const { return static_cast<size_t>(rank_) + torsion_.size(); }
    IsoType iso_type() const { return {rank_, torsion_}; }
    bool is_trivial() const { return coord_count() == 0; }
    /// Number of elements; nullopt when infinite.
    std::optional<Int> group_order() const;

    GroupElem identity() const;
    /// Canonical image of presentation generator i.
    GroupElem gen(size_t i) const;
    size_t num_presentation_generators() const { return num_gens_; }

    GroupElem reduce(GroupElem e) const;
    GroupElem add(const GroupElem& a, const GroupElem& b) const;
    GroupElem neg(const GroupElem& a) const;
    GroupElem sub(const GroupElem& a, const GroupElem& b) const;
    GroupElem scale(const Int& k, const GroupElem& a) const;
    bool eq(const GroupElem& a, const GroupElem& b) const;
    bool is_identity(const GroupElem& a) const;
    /// Element order; nullopt = infinite.
    std::optional<Int> order(const GroupElem& a) const;

    /// Canonical coordinates of a word in the presentation generators.
    GroupElem from_presentation_coords(const std::vector<Int>& word) const;

    /// Subgroup generated by the given elements, with embedding maps.
    SubgroupInfo subgroup(const std::vector<GroupElem>& gens) const;

    /// Quotient by the subgroup generated by the given elements.
    std::shared_ptr<const AbGroup> quotient(const std::vector<GroupElem>& hgens) const;

    /// All elements; throws GroupError when the group is infinite.
    std::vector<GroupElem> all_elements() const;

    /// External direct sum A + B (iso-type computation helper).
    static std::shared_ptr<const AbGroup> direct_sum(const AbGroup& a, const AbGroup& b);

private:
    AbGroup() = default;

    size_t num_gens_ = 0;
    IntMat relations_;
    long rank_ = 0;
    std::vector<Int> torsion_;
    // Presentation coords -> canonical: w = x * V, then keep the columns
    // listed in torsion_cols_ (mod d) and free_cols_.
    IntMat V_;
    IntMat Vinv_;
    std::vector<size_t> free_cols_;
    std::vector<size_t> torsion_cols_;
};

using AbGroupPtr = std::shared_ptr<const AbGroup>;

/// Basis (rows of U matching zero rows of D) of {x : x * A = 0} over Z.
IntMat integer_row_kernel(const IntMat& A, size_t cols);

} // namespace liegrad
