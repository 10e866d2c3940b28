#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liegrad/abgroup.hpp"
#include "liegrad/exactlinalg.hpp"

namespace liegrad {

enum class ProductKind { Associative, Bracket, Table };

/// A finite dimensional algebra presented on a coordinate space: an
/// underlying subspace of F^ambient together with a bilinear product.
/// Associative/Bracket products live on a matrix algebra (ambient = n^2,
/// row-major flattening); Table products use explicit structure constants.
class Algebra {
public:
    static std::shared_ptr<const Algebra> matrix_algebra(FieldPtr F, size_t n, std::string name = "M_n");
    static std::shared_ptr<const Algebra> matrix_lie(FieldPtr F, size_t n, Subspace space, std::string name);
    static std::shared_ptr<const Algebra> matrix_assoc_sub(FieldPtr F, size_t n, Subspace space, std::string name);
    static std::shared_ptr<const Algebra> from_table(FieldPtr F, std::vector<std::vector<std::vector<Scalar>>> table,
                                                     std::string name);

    const FieldPtr& field() const { return F_; }
    size_t ambient() const { return ambient_; }
    size_t matrix_size() const { return msize_; }
    ProductKind kind() const { return kind_; }
    const Subspace& space() const { return space_; }
    size_t dim() const { return space_.dim(); }
    const std::string& name() const { return name_; }

    std::vector<Scalar> mul(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const;
    /// Product of all basis pairs stays inside the underlying subspace.
    bool is_closed() const;

    bool same_underlying(const Algebra& other) const;

private:
    Algebra() = default;
    FieldPtr F_;
    size_t ambient_ = 0;
    size_t msize_ = 0;
    ProductKind kind_ = ProductKind::Associative;
    Subspace space_;
    std::vector<std::vector<std::vector<Scalar>>> table_;
    std::string name_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A realized grading: distinct degrees with nonzero components.
struct Grading {
    AlgebraPtr algebra;
    AbGroupPtr group;
    std::vector<std::pair<GroupElem, Subspace>> components;

    const Subspace* component_at(const GroupElem& degree) const;
    std::vector<size_t> profile() const; // sorted dimensions
};

/// Components sorted by degree; zero components dropped; degrees reduced.
Grading make_grading(AlgebraPtr alg, AbGroupPtr group,
                     std::vector<std::pair<GroupElem, Subspace>> comps);

struct VerifyReport {
    bool ok = true;
    std::string message;
    std::optional<std::pair<size_t, size_t>> offending_pair;
};

/// Check the direct sum condition and every pairwise product containment.
VerifyReport verify_grading(const Grading& g);

std::vector<size_t> component_profile(const Grading& g);

struct UniversalResult {
    AbGroupPtr group;
    Grading grading; // same pieces, degrees relabeled in the universal group
};

/// Universal group of a decomposition: free abelian group on the pieces
/// modulo x_i + x_j = x_k for every nonzero product C_i * C_j inside C_k.
/// Throws NotAGradingError if a product straddles pieces or if two pieces
/// end up with the same degree.
UniversalResult universal_group(const AlgebraPtr& alg, const std::vector<Subspace>& pieces);
UniversalResult universal_group(const Grading& g);

/// Every component of fine is contained in a component of coarse.
bool is_refinement(const Grading& fine, const Grading& coarse);

/// A character of the grading group: images of the canonical generators.
/// Torsion generators must map to roots of unity of dividing order.
class Character {
public:
    Character(AbGroupPtr group, std::vector<Scalar> gen_values, FieldPtr field = nullptr);
    const AbGroupPtr& group() const { return group_; }
    Scalar value(const GroupElem& e) const;
    Character pointwise_mul(const Character& other) const;

private:
    AbGroupPtr group_;
    std::vector<Scalar> gen_values_;
    FieldPtr field_;
};

/// The diagonal automorphism x |-> chi(g) x on each component, returned as
/// a matrix on the ambient coordinate space (identity on a fixed complement
/// of the algebra).  check_automorphism verifies product preservation on the
/// algebra basis.
Matrix character_action(const Grading& g, const Character& chi, bool check_automorphism = true);

/// Split every component into eigenspaces of psi (an ambient-coordinate
/// linear map preserving each component).  Eigenvalues are searched among
/// the candidate scalars; the eigenspaces must exhaust each component.
std::vector<Subspace> eigenspace_refine(const Grading& g, const Matrix& psi,
                                        const std::vector<Scalar>& candidates);

/// Matrix of ad(x) = [x, .] on the algebra's basis coordinates.
Matrix ad_matrix(const Algebra& alg, const std::vector<Scalar>& x);

/// Monic minimal polynomial coefficients (ascending) of a square matrix.
std::vector<Scalar> minimal_polynomial(const Matrix& m);
bool poly_is_squarefree(const std::vector<Scalar>& p);
bool is_nilpotent_matrix(const Matrix& m, unsigned long bound);
/// Exact semisimplicity: squarefree minimal polynomial.
bool is_semisimple_matrix(const Matrix& m);

/// {x in L : [x, S] subset of S} for a subspace S of the Lie algebra L.
Subspace normalizer_in(const Algebra& alg, const Subspace& L, const Subspace& S);
bool is_abelian_subspace(const Algebra& alg, const Subspace& S);

} // namespace liegrad
