#pragma once

#include <map>
#include <string>
#include <vector>

#include "liegrad/constructions.hpp"

namespace liegrad {

/// Which label maps the induced equivalences of the graded division algebra
/// are allowed to use: the full symplectic group of the commutation form, or
/// only the stabilizer of the sign form.
enum class ActionMode { FullSymplectic, SignPreserving };

std::string action_mode_to_string(ActionMode m);

/// One equivalence class of fine-grading descriptors.
struct ClassRecord {
    Descriptor rep;              // lexicographically least valid representative
    IsoType group;               // universal group of the constructed grading
    std::vector<size_t> profile; // sorted component dimensions
    size_t class_size = 0;       // valid label multisets in the class
    ActionMode mode = ActionMode::FullSymplectic;
};

/// Partition of label multisets under single moves d_i -> S(t + d_i) with S
/// in the chosen symplectic subgroup and t ranging over the allowed
/// translations, closed transitively through valid multisets.
class LabelClassifier {
public:
    /// All equivalence classes of valid size-r multisets for the kind, each
    /// class sorted, classes ordered by least member.
    std::vector<std::vector<std::vector<Label>>> classes(Kind kind, int m, int r, ActionMode mode);

    bool equivalent(const Descriptor& a, const Descriptor& b, ActionMode mode);
    Descriptor canonical(const Descriptor& d, ActionMode mode);

private:
    struct OrbitTable {
        std::map<std::vector<uint32_t>, size_t> orbit_of;
        std::vector<std::vector<std::vector<uint32_t>>> members;
    };
    const OrbitTable& orbit_table(int m, int r, ActionMode mode);
    std::map<std::tuple<int, int, int>, OrbitTable> cache_;
};

/// Symplectic transvections x -> x + beta(x,v) v as label permutations; the
/// generator set of the chosen mode (sign-1 vectors only for SignPreserving).
std::vector<std::vector<uint32_t>> transvection_generators(int m, ActionMode mode);

/// The full group generated by the transvections, as label permutations
/// (feasible for m <= 2).  Used by the brute-force oracle.
std::vector<std::vector<uint32_t>> symplectic_group_elements(int m, ActionMode mode);

/// Brute-force partition by explicit enumeration of all group elements and
/// translations; independent of the orbit-table path.
std::vector<std::vector<std::vector<Label>>> oracle_partition(Kind kind, int m, int r, ActionMode mode);

/// All inner fine-grading descriptors of sl_n (n >= 3): decompositions
/// n = m * prod(prime powers); all-2 factor lists require m >= 3.
std::vector<Descriptor> enumerate_inner_sl(int n);

std::vector<ClassRecord> enumerate_outer_sl(int n, int max_m = 3);
std::vector<ClassRecord> enumerate_skew(int n, int eps, ActionMode mode = ActionMode::FullSymplectic,
                                        int max_m = 3);

bool descriptor_equivalent(const Descriptor& a, const Descriptor& b,
                           ActionMode mode = ActionMode::FullSymplectic);

/// Universal group and component profile of the constructed class
/// representative (a necessary condition for equivalence, not sufficient).
std::pair<IsoType, std::vector<size_t>> fingerprint(const Descriptor& d);

enum class AlgebraFamily { SL, SO, SP };

struct Catalog {
    AlgebraFamily family;
    int n = 0;
    ActionMode mode = ActionMode::FullSymplectic;
    std::vector<ClassRecord> inner; // sl only
    std::vector<ClassRecord> outer;
    std::vector<std::string> notes;
    size_t total() const { return inner.size() + outer.size(); }
};

/// Full catalog for sl_n / so_n / sp_n at desk scale.
Catalog classify_algebra(AlgebraFamily family, int n, ActionMode mode = ActionMode::FullSymplectic,
                         int max_m = 3, int max_n = 16);

} // namespace liegrad
