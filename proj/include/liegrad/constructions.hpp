#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liegrad/gradcore.hpp"

namespace liegrad {

/// Index of a homogeneous line of the 2^m x 2^m graded division algebra:
/// an element of Z_2^{2m}, read as m pairs (a_i, b_i) with a_i = bit 2i and
/// b_i = bit 2i+1.  Pair (0,0) -> I, (1,0) -> q1, (0,1) -> q2, (1,1) -> q3.
struct Label {
    uint32_t bits = 0;
    auto operator<=>(const Label&) const = default;
};

Label label_add(Label a, Label b);
/// tau eigenvalue: (-1)^(number of (1,1) pairs).
int label_sign(Label a, int m);
/// Quadratic form: number of (1,1) pairs mod 2 (sign = (-1)^q).
int label_q(Label a, int m);
/// Alternating form induced by the commutation relations.
int label_beta(Label a, Label b, int m);
std::string label_to_string(Label a, int m);
Label label_from_string(const std::string& s, int m);

enum class Kind { SlInner, SlOuter, Ortho, Sympl };

std::string kind_to_string(Kind k);

/// Parameter sequence naming one construction.
struct Descriptor {
    Kind kind = Kind::SlOuter;
    int m = 0;                       // tensor factors (outer) / Cartan size (inner)
    int s = 0;                       // hyperbolic pairs (outer kinds)
    std::vector<Label> d;            // diagonal labels (outer kinds)
    std::vector<long> prime_powers;  // sl-inner, ascending

    int r() const { return static_cast<int>(d.size()); }
    int n() const;
    int epsilon() const; // +1 ortho, -1 sympl; 0 otherwise
    /// Throws DescriptorError on constraint violations.
    void validate() const;
    std::string to_text() const;
    static Descriptor parse(const std::string& text);

    auto operator<=>(const Descriptor&) const = default;
};

/// The m-fold tensor power of the graded 2x2 matrix algebra, realized in
/// M_{2^m}, with the per-factor transpose involution tau.
class QTensor {
public:
    QTensor(FieldPtr F, int m);

    int m() const { return m_; }
    size_t dim() const { return size_t(1) << m_; }          // 2^m
    size_t label_count() const { return size_t(1) << (2 * m_); } // 4^m
    const FieldPtr& field() const { return F_; }

    std::vector<Label> labels() const;
    Matrix realize(Label a) const;
    /// x_a x_b = cocycle(a,b) * x_{a+b}, value +-1.
    int cocycle(Label a, Label b) const;
    int sign(Label a) const { return label_sign(a, m_); }
    int beta(Label a, Label b) const { return label_beta(a, b, m_); }
    /// tau = transpose in the realization; tau(x_a) = sign(a) x_a.
    Matrix tau(const Matrix& x) const { return x.transpose(); }

    /// The Z_2^{2m} grading on M_{2^m} with components F x_a.
    Grading grading() const;

private:
    FieldPtr F_;
    int m_;
    int factor_cocycle_[4][4];
};

struct PauliResult {
    Grading grading; // on M_n associative, group Z_n^2
    Matrix x, y;
};
PauliResult pauli(FieldPtr F, size_t n);

/// Grading on M_m by Z^{m-1}: E_ij homogeneous of degree eps_{i-1}-eps_{j-1}.
Grading cartan_matrix_grading(FieldPtr F, size_t m);

/// Every component is one-dimensional with an invertible representative.
bool is_graded_division(const Grading& g);

struct InnerResult {
    Descriptor desc;
    Grading on_matrix; // M_n, Cartan x Pauli Kronecker combination
    Grading on_sl;     // restriction to the traceless part (bracket)
};
InnerResult inner_grading(FieldPtr F, const Descriptor& desc);

/// Traceless slice of a subspace of M_n (coordinates F^{n^2}).
Subspace traceless_slice(const FieldPtr& F, const Subspace& S, size_t n);
Subspace traceless_subspace(const FieldPtr& F, size_t n);

/// Group-theoretic skeleton of an outer descriptor: the presented group
/// generated by T = Z_2^{2m} and g_1..g_{r+2s} with g_i^2 = deg(d_i) and
/// g_{r+2i-1} + g_{r+2i} = 0, plus the subgroup generated by T and the
/// differences g_i - g_j.
struct GroupData {
    AbGroupPtr Gtilde;
    std::vector<GroupElem> gdeg; // images of g_1..g_{r+2s}
    std::vector<GroupElem> tdeg; // images of the 2m T-generators
    SubgroupInfo Gbar;

    GroupElem label_elem(Label a) const; // label -> Gtilde element
};
GroupData build_group_data(const Descriptor& desc);

/// A realized sesquilinear form for an outer descriptor, with the graded
/// module basis bookkeeping and the coarse grading it induces on M_n.
struct FormData {
    Descriptor desc;
    FieldPtr F;
    int n = 0, q = 0, k = 0; // q = 2^m, k = r + 2s
    QTensor Q;
    GroupData groups;
    Matrix MB, MBinv; // realized n x n

    struct RBasisElem {
        int i, j;
        Label t;
        GroupElem deg_tilde;
        GroupElem deg_bar;
    };
    std::vector<RBasisElem> rbasis; // all (i,j,t), n^2 elements

    Grading coarse; // on M_n associative, group = Gbar

    Matrix realize_unit(int i, int j, Label t) const; // E_ij tensor x_t
    /// phi(x) = MB^{-1} x^t MB (the block tau-transpose is the plain
    /// transpose in this realization).
    Matrix adjoint_of(const Matrix& x) const;
    /// phi as a linear map on flattened M_n.
    Matrix adjoint_ambient() const;
    Matrix neg_adjoint_ambient() const;
    /// MB^{-1} MB^t is a scalar multiple of the identity.
    bool phi_involutive() const;
};
FormData build_form(FieldPtr F, const Descriptor& desc);

/// Exact checks of the form axioms, done symbolically on the monomial
/// basis (cross-validated against the realized matrices).
struct FormChecks {
    bool sesquilinear = false;        // B(vd,w) = tau(d) B(v,w), B(v,wd) = B(v,w) d
    bool hermitian = false;           // B(v,w) = eps tau(B(w,v)) for ortho/sympl
    bool degree_compatible = false;   // B(V_g,V_h) in D_{g+h}; identity part vanishes iff g+h != e
    bool adjoint_identity = false;    // B(xv, w) = B(v, phi(x) w) on all basis triples
    bool symbolic_matches_realized = false;
    bool ok() const {
        return sesquilinear && hermitian && degree_compatible && adjoint_identity &&
               symbolic_matches_realized;
    }
};
FormChecks check_form(const FormData& fd);

struct OuterSlResult {
    FormData form;
    AlgebraPtr sl;           // traceless part of M_n with the bracket
    Grading coarse_sl;       // Gbar-grading restricted to sl_n
    Grading fine;            // refined by -phi, relabeled over the universal group
    AbGroupPtr universal;
    bool phi_involutive = false;
    GroupElem kernel_elem;   // order-2 element h with U/<h> = Gbar
    bool kernel_is_z2 = false;
    bool quotient_matches_gbar = false;
    bool splits_as_gbar_x_z2 = false; // iso(U) == iso(Gbar x Z2)
};
OuterSlResult outer_grading_sl(const Descriptor& desc, FieldPtr F = nullptr);

struct SkewResult {
    FormData form;
    AlgebraPtr skew;         // K(R,phi) with the bracket
    Grading fine;            // degrees in Gbar coordinates
    Grading fine_universal;  // relabeled over the universal group
    AbGroupPtr universal;
    bool universal_matches_gbar = false;
};
SkewResult skew_grading(const Descriptor& desc, FieldPtr F = nullptr);

/// Conductor policy: 4 for outer kinds joined with the exponent of the
/// torsion of Gbar; the Pauli orders for inner kinds.
FieldPtr default_field_for(const Descriptor& desc);

struct OctonionResult {
    AlgebraPtr algebra; // 8-dimensional, nonassociative, table product
    Grading grading;    // Z_2^3, all eight components one-dimensional
};
/// Three doubling steps from the rationals with parameters (-1,-1,-1).
OctonionResult octonions(FieldPtr F);

/// Derivations D(xy) = D(x)y + x D(y) of an algebra presented on its full
/// coordinate space, as a Lie algebra of matrices.
AlgebraPtr derivation_algebra(const AlgebraPtr& A);

/// Der_alpha = {D : D(A_beta) subset A_{alpha+beta} for all beta}; the
/// pieces must sum to the whole derivation algebra.
Grading induced_derivation_grading(const AlgebraPtr& A, const Grading& gA, const AlgebraPtr& der);

} // namespace liegrad
