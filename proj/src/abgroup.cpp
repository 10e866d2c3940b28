#include "liegrad/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace liegrad {

IntMat int_mat_identity(size_t n) {
    IntMat I(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMat int_mat_mul(const IntMat& A, const IntMat& B) {
    if (A.empty() || B.empty()) return {};
    size_t m = A.size(), k = A[0].size(), n = B[0].size();
    if (k != B.size()) throw GroupError("int_mat_mul: shape mismatch");
    IntMat C(m, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

namespace {

struct SmithWork {
    IntMat D, U, V, Vinv;
    size_t m, n;

    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        std::swap(D[i], D[j]);
        std::swap(U[i], U[j]);
    }
    void swap_cols(size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < m; ++r) std::swap(D[r][i], D[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
        std::swap(Vinv[i], Vinv[j]);
    }
    // row_i += k * row_j
    void add_row(size_t i, size_t j, const Int& k) {
        for (size_t c = 0; c < n; ++c) D[i][c] += k * D[j][c];
        for (size_t c = 0; c < m; ++c) U[i][c] += k * U[j][c];
    }
    // col_j += k * col_i  (Vinv row_i -= k * Vinv row_j)
    void add_col(size_t j, size_t i, const Int& k) {
        for (size_t r = 0; r < m; ++r) D[r][j] += k * D[r][i];
        for (size_t r = 0; r < n; ++r) V[r][j] += k * V[r][i];
        for (size_t c = 0; c < n; ++c) Vinv[i][c] -= k * Vinv[j][c];
    }
    void negate_row(size_t i) {
        for (size_t c = 0; c < n; ++c) D[i][c] = -D[i][c];
        for (size_t c = 0; c < m; ++c) U[i][c] = -U[i][c];
    }

    bool find_pivot(size_t p, size_t& pi, size_t& pj) const {
        bool found = false;
        Int best;
        for (size_t i = p; i < m; ++i)
            for (size_t j = p; j < n; ++j) {
                if (D[i][j] == 0) continue;
                Int a = abs(D[i][j]);
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        return found;
    }

    bool is_lone(size_t p) const {
        for (size_t i = p + 1; i < m; ++i)
            if (D[i][p] != 0) return false;
        for (size_t j = p + 1; j < n; ++j)
            if (D[p][j] != 0) return false;
        return true;
    }
};

} // namespace

SmithResult smith_normal_form(const IntMat& A) {
    size_t m = A.size();
    size_t n = m == 0 ? 0 : A[0].size();
    for (const auto& row : A)
        if (row.size() != n) throw GroupError("smith_normal_form: ragged matrix");

    SmithWork w{A, int_mat_identity(m), int_mat_identity(n), int_mat_identity(n), m, n};
    size_t nmin = std::min(m, n);

    for (size_t p = 0; p < nmin; ++p) {
        size_t pi = p, pj = p;
        if (!w.find_pivot(p, pi, pj)) break; // remaining submatrix is zero
        w.swap_rows(p, pi);
        w.swap_cols(p, pj);

        while (true) {
            // Reduce column p below and row p to the right.
            for (size_t i = p + 1; i < m; ++i) {
                if (w.D[i][p] == 0) continue;
                Int k = w.D[i][p] / w.D[p][p];
                if (k != 0) w.add_row(i, p, -k);
            }
            for (size_t j = p + 1; j < n; ++j) {
                if (w.D[p][j] == 0) continue;
                Int k = w.D[p][j] / w.D[p][p];
                if (k != 0) w.add_col(j, p, -k);
            }
            if (!w.is_lone(p)) {
                // Remainders became new, smaller pivots.
                if (!w.find_pivot(p, pi, pj)) throw GroupError("smith: lost pivot");
                w.swap_rows(p, pi);
                w.swap_cols(p, pj);
                continue;
            }
            // Enforce divisibility of the remaining submatrix.
            bool divides_all = true;
            for (size_t i = p + 1; i < m && divides_all; ++i)
                for (size_t j = p + 1; j < n && divides_all; ++j)
                    if (w.D[i][j] % w.D[p][p] != 0) {
                        w.add_row(p, i, Int(1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (w.D[p][p] < 0) w.negate_row(p);
    }

    return SmithResult{std::move(w.D), std::move(w.U), std::move(w.V), std::move(w.Vinv)};
}

IntMat integer_row_kernel(const IntMat& A, size_t cols) {
    size_t m = A.size();
    if (m == 0) return {};
    for (const auto& r : A)
        if (r.size() != cols) throw GroupError("integer_row_kernel: ragged matrix");
    SmithResult s = smith_normal_form(A);
    IntMat out;
    size_t nmin = std::min(m, cols);
    for (size_t i = 0; i < m; ++i) {
        bool zero_row = i >= nmin || s.D[i][i] == 0;
        if (zero_row) out.push_back(s.U[i]);
    }
    return out;
}

std::string IsoType::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (size_t i = 0; i < torsion.size();) {
        size_t j = i;
        while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
        if (!first) os << " x ";
        os << "Z" << torsion[i].get_str();
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    if (first) os << "1";
    return os.str();
}

std::shared_ptr<const AbGroup> AbGroup::from_presentation(size_t num_generators, const IntMat& relations) {
    for (const auto& row : relations)
        if (row.size() != num_generators)
            throw GroupError("from_presentation: relation arity mismatch");
    auto g = std::shared_ptr<AbGroup>(new AbGroup());
    g->num_gens_ = num_generators;
    g->relations_ = relations;
    if (relations.empty()) {
        g->V_ = int_mat_identity(num_generators);
        g->Vinv_ = int_mat_identity(num_generators);
        for (size_t j = 0; j < num_generators; ++j) g->free_cols_.push_back(j);
        g->rank_ = static_cast<long>(num_generators);
        return g;
    }
    SmithResult s = smith_normal_form(relations);
    g->V_ = std::move(s.V);
    g->Vinv_ = std::move(s.Vinv);
    size_t nmin = std::min(relations.size(), num_generators);
    for (size_t j = 0; j < num_generators; ++j) {
        Int d = j < nmin ? s.D[j][j] : Int(0);
        if (d == 0) {
            g->free_cols_.push_back(j);
        } else if (d >= 2) {
            g->torsion_cols_.push_back(j);
            g->torsion_.push_back(d);
        } // d == 1: generator dies
    }
    g->rank_ = static_cast<long>(g->free_cols_.size());
    return g;
}

std::optional<Int> AbGroup::group_order() const {
    if (rank_ > 0) return std::nullopt;
    Int o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
}

GroupElem AbGroup::identity() const {
    return GroupElem{std::vector<Int>(coord_count(), Int(0))};
}

GroupElem AbGroup::from_presentation_coords(const std::vector<Int>& word) const {
    if (word.size() != num_gens_) throw GroupError("from_presentation_coords: arity mismatch");
    std::vector<Int> w(num_gens_, Int(0));
    for (size_t i = 0; i < num_gens_; ++i) {
        if (word[i] == 0) continue;
        for (size_t j = 0; j < num_gens_; ++j) w[j] += word[i] * V_[i][j];
    }
    GroupElem e;
    e.coords.reserve(coord_count());
    for (size_t f : free_cols_) e.coords.push_back(w[f]);
    for (size_t k = 0; k < torsion_cols_.size(); ++k) e.coords.push_back(w[torsion_cols_[k]]);
    return reduce(std::move(e));
}

GroupElem AbGroup::gen(size_t i) const {
    if (i >= num_gens_) throw GroupError("gen: index out of range");
    std::vector<Int> word(num_gens_, Int(0));
    word[i] = 1;
    return from_presentation_coords(word);
}

GroupElem AbGroup::reduce(GroupElem e) const {
    if (e.coords.size() != coord_count()) throw GroupError("reduce: coordinate arity mismatch");
    for (size_t k = 0; k < torsion_.size(); ++k) {
        Int& c = e.coords[static_cast<size_t>(rank_) + k];
        c %= torsion_[k];
        if (c < 0) c += torsion_[k];
    }
    return e;
}

GroupElem AbGroup::add(const GroupElem& a, const GroupElem& b) const {
    GroupElem r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return reduce(std::move(r));
}

GroupElem AbGroup::neg(const GroupElem& a) const {
    GroupElem r = a;
    for (auto& c : r.coords) c = -c;
    return reduce(std::move(r));
}

GroupElem AbGroup::sub(const GroupElem& a, const GroupElem& b) const { return add(a, neg(b)); }

GroupElem AbGroup::scale(const Int& k, const GroupElem& a) const {
    GroupElem r = a;
    for (auto& c : r.coords) c *= k;
    return reduce(std::move(r));
}

bool AbGroup::eq(const GroupElem& a, const GroupElem& b) const {
    return reduce(a).coords == reduce(b).coords;
}

bool AbGroup::is_identity(const GroupElem& a) const {
    for (const auto& c : reduce(a).coords)
        if (c != 0) return false;
    return true;
}

std::optional<Int> AbGroup::order(const GroupElem& a) const {
    GroupElem r = reduce(a);
    for (long i = 0; i < rank_; ++i)
        if (r.coords[static_cast<size_t>(i)] != 0) return std::nullopt;
    Int o = 1;
    for (size_t k = 0; k < torsion_.size(); ++k) {
        const Int& c = r.coords[static_cast<size_t>(rank_) + k];
        if (c == 0) continue;
        Int g = gcd(c, torsion_[k]);
        Int piece = torsion_[k] / g;
        o = lcm(o, piece);
    }
    return o;
}

SubgroupInfo AbGroup::subgroup(const std::vector<GroupElem>& gens) const {
    size_t k = gens.size();
    size_t nc = coord_count();
    IntMat M(k, std::vector<Int>(nc, Int(0)));
    for (size_t i = 0; i < k; ++i) {
        if (gens[i].coords.size() != nc) throw GroupError("subgroup: generator arity mismatch");
        M[i] = reduce(gens[i]).coords;
    }
    // Relations of the subgroup: words a with a*M in the torsion lattice.
    size_t t = torsion_.size();
    IntMat stacked = M;
    for (size_t j = 0; j < t; ++j) {
        std::vector<Int> row(nc, Int(0));
        row[static_cast<size_t>(rank_) + j] = torsion_[j];
        stacked.push_back(std::move(row));
    }
    IntMat kernel = integer_row_kernel(stacked, nc);
    IntMat rels;
    for (const auto& row : kernel) rels.emplace_back(row.begin(), row.begin() + static_cast<long>(k));

    SubgroupInfo info;
    info.group = from_presentation(k, rels);
    info.generators = gens;
    info.ambient = shared_from_this();
    info.gen_matrix = std::move(M);
    return info;
}

std::optional<GroupElem> SubgroupInfo::to_subgroup(const GroupElem& amb) const {
    size_t nc = ambient->coord_count();
    size_t k = generators.size();
    size_t t = ambient->torsion().size();
    GroupElem x = ambient->reduce(amb);

    IntMat stacked = gen_matrix;
    for (size_t j = 0; j < t; ++j) {
        std::vector<Int> row(nc, Int(0));
        row[static_cast<size_t>(ambient->rank()) + j] = ambient->torsion()[j];
        stacked.push_back(std::move(row));
    }
    if (stacked.empty()) {
        // trivial subgroup: only the identity is a member
        if (!ambient->is_identity(x)) return std::nullopt;
        return group->identity();
    }
    // Solve z * stacked = x over Z via the Smith form.
    SmithResult s = smith_normal_form(stacked);
    size_t rows = stacked.size();
    std::vector<Int> y(nc, Int(0));
    for (size_t j = 0; j < nc; ++j)
        for (size_t i = 0; i < nc; ++i) y[j] += x.coords[i] * s.V[i][j];
    std::vector<Int> z(rows, Int(0));
    size_t nmin = std::min(rows, nc);
    for (size_t j = 0; j < nc; ++j) {
        if (j < nmin && s.D[j][j] != 0) {
            if (y[j] % s.D[j][j] != 0) return std::nullopt;
            z[j] = y[j] / s.D[j][j];
        } else if (y[j] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> a(k, Int(0));
    for (size_t i = 0; i < rows; ++i) {
        if (z[i] == 0) continue;
        for (size_t j = 0; j < k; ++j) a[j] += z[i] * s.U[i][j];
    }
    return group->from_presentation_coords(a);
}

GroupElem SubgroupInfo::to_ambient(const GroupElem& sub) const {
    // Express the subgroup element as an integer word in the presentation
    // generators (solve over Z against the gen() images), then push the word
    // through the ambient generator list.
    const AbGroup& H = *group;
    size_t n = H.num_presentation_generators();
    GroupElem r = H.reduce(sub);
    IntMat rows(n);
    for (size_t i = 0; i < n; ++i) rows[i] = H.gen(i).coords;
    size_t t = H.torsion().size();
    size_t nc = H.coord_count();
    for (size_t j = 0; j < t; ++j) {
        std::vector<Int> row(nc, Int(0));
        row[static_cast<size_t>(H.rank()) + j] = H.torsion()[j];
        rows.push_back(std::move(row));
    }
    SmithResult s = smith_normal_form(rows);
    size_t m = rows.size();
    std::vector<Int> y(nc, Int(0));
    for (size_t j = 0; j < nc; ++j)
        for (size_t i = 0; i < nc; ++i) y[j] += r.coords[i] * s.V[i][j];
    std::vector<Int> z(m, Int(0));
    size_t nmin = std::min(m, nc);
    for (size_t j = 0; j < nc; ++j) {
        if (j < nmin && s.D[j][j] != 0) {
            if (y[j] % s.D[j][j] != 0) throw GroupError("to_ambient: inconsistent element");
            z[j] = y[j] / s.D[j][j];
        } else if (y[j] != 0) {
            throw GroupError("to_ambient: inconsistent element");
        }
    }
    std::vector<Int> word(n, Int(0));
    for (size_t i = 0; i < m; ++i) {
        if (z[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) word[j] += z[i] * s.U[i][j];
    }
    GroupElem out = ambient->identity();
    for (size_t i = 0; i < n; ++i)
        if (word[i] != 0) out = ambient->add(out, ambient->scale(word[i], generators[i]));
    return out;
}

std::shared_ptr<const AbGroup> AbGroup::quotient(const std::vector<GroupElem>& hgens) const {
    size_t nc = coord_count();
    IntMat rels;
    for (size_t j = 0; j < torsion_.size(); ++j) {
        std::vector<Int> row(nc, Int(0));
        row[static_cast<size_t>(rank_) + j] = torsion_[j];
        rels.push_back(std::move(row));
    }
    for (const auto& h : hgens) {
        if (h.coords.size() != nc) throw GroupError("quotient: element arity mismatch");
        rels.push_back(reduce(h).coords);
    }
    return from_presentation(nc, rels);
}

std::vector<GroupElem> AbGroup::all_elements() const {
    if (rank_ > 0) throw GroupError("all_elements: group is infinite");
    std::vector<GroupElem> out;
    GroupElem cur = identity();
    size_t t = torsion_.size();
    while (true) {
        out.push_back(cur);
        size_t k = 0;
        for (; k < t; ++k) {
            cur.coords[k] += 1;
            if (cur.coords[k] < torsion_[k]) break;
            cur.coords[k] = 0;
        }
        if (k == t) break;
    }
    return out;
}

std::shared_ptr<const AbGroup> AbGroup::direct_sum(const AbGroup& a, const AbGroup& b) {
    size_t na = a.coord_count(), nb = b.coord_count();
    IntMat rels;
    for (size_t j = 0; j < a.torsion_.size(); ++j) {
        std::vector<Int> row(na + nb, Int(0));
        row[static_cast<size_t>(a.rank_) + j] = a.torsion_[j];
        rels.push_back(std::move(row));
    }
    for (size_t j = 0; j < b.torsion_.size(); ++j) {
        std::vector<Int> row(na + nb, Int(0));
        row[na + static_cast<size_t>(b.rank_) + j] = b.torsion_[j];
        rels.push_back(std::move(row));
    }
    return from_presentation(na + nb, rels);
}

} // namespace liegrad
