#include "liegrad/gradcore.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace liegrad {

std::shared_ptr<const Algebra> Algebra::matrix_algebra(FieldPtr F, size_t n, std::string name) {
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->F_ = F;
    a->ambient_ = n * n;
    a->msize_ = n;
    a->kind_ = ProductKind::Associative;
    a->space_ = Subspace::full(F, n * n);
    a->name_ = std::move(name);
    return a;
}

std::shared_ptr<const Algebra> Algebra::matrix_lie(FieldPtr F, size_t n, Subspace space, std::string name) {
    if (space.ambient() != n * n) throw LinAlgError("matrix_lie: ambient mismatch");
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->F_ = F;
    a->ambient_ = n * n;
    a->msize_ = n;
    a->kind_ = ProductKind::Bracket;
    a->space_ = std::move(space);
    a->name_ = std::move(name);
    return a;
}

std::shared_ptr<const Algebra> Algebra::matrix_assoc_sub(FieldPtr F, size_t n, Subspace space, std::string name) {
    if (space.ambient() != n * n) throw LinAlgError("matrix_assoc_sub: ambient mismatch");
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->F_ = F;
    a->ambient_ = n * n;
    a->msize_ = n;
    a->kind_ = ProductKind::Associative;
    a->space_ = std::move(space);
    a->name_ = std::move(name);
    return a;
}

std::shared_ptr<const Algebra> Algebra::from_table(FieldPtr F,
                                                   std::vector<std::vector<std::vector<Scalar>>> table,
                                                   std::string name) {
    auto a = std::shared_ptr<Algebra>(new Algebra());
    size_t d = table.size();
    for (const auto& row : table) {
        if (row.size() != d) throw LinAlgError("from_table: table not square");
        for (const auto& entry : row)
            if (entry.size() != d) throw LinAlgError("from_table: entry dimension mismatch");
    }
    a->F_ = F;
    a->ambient_ = d;
    a->msize_ = 0;
    a->kind_ = ProductKind::Table;
    a->space_ = Subspace::full(F, d);
    a->table_ = std::move(table);
    a->name_ = std::move(name);
    return a;
}

std::vector<Scalar> Algebra::mul(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
    switch (kind_) {
    case ProductKind::Associative: {
        Matrix a = Matrix::unflatten(F_, msize_, msize_, u);
        Matrix b = Matrix::unflatten(F_, msize_, msize_, v);
        return (a * b).flatten();
    }
    case ProductKind::Bracket: {
        Matrix a = Matrix::unflatten(F_, msize_, msize_, u);
        Matrix b = Matrix::unflatten(F_, msize_, msize_, v);
        return (a * b - b * a).flatten();
    }
    case ProductKind::Table: {
        std::vector<Scalar> r(ambient_, F_->zero());
        for (size_t i = 0; i < ambient_; ++i) {
            if (u[i].is_zero()) continue;
            for (size_t j = 0; j < ambient_; ++j) {
                if (v[j].is_zero()) continue;
                Scalar c = u[i] * v[j];
                for (size_t k = 0; k < ambient_; ++k) {
                    if (table_[i][j][k].is_zero()) continue;
                    r[k] = r[k] + c * table_[i][j][k];
                }
            }
        }
        return r;
    }
    }
    throw Error("Algebra::mul: unreachable");
}

bool Algebra::is_closed() const {
    for (const auto& u : space_.basis())
        for (const auto& v : space_.basis())
            if (!space_.member(mul(u, v))) return false;
    return true;
}

bool Algebra::same_underlying(const Algebra& other) const {
    return kind_ == other.kind_ && ambient_ == other.ambient_ && msize_ == other.msize_ &&
           space_ == other.space_;
}

const Subspace* Grading::component_at(const GroupElem& degree) const {
    GroupElem d = group->reduce(degree);
    for (const auto& [deg, sub] : components)
        if (deg == d) return &sub;
    return nullptr;
}

std::vector<size_t> Grading::profile() const { return component_profile(*this); }

Grading make_grading(AlgebraPtr alg, AbGroupPtr group, std::vector<std::pair<GroupElem, Subspace>> comps) {
    Grading g;
    g.algebra = std::move(alg);
    g.group = std::move(group);
    for (auto& [deg, sub] : comps) {
        if (sub.dim() == 0) continue;
        g.components.emplace_back(g.group->reduce(deg), std::move(sub));
    }
    std::sort(g.components.begin(), g.components.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return g;
}

namespace {
std::string degree_str(const GroupElem& e) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.coords.size(); ++i) {
        if (i) os << ",";
        os << e.coords[i].get_str();
    }
    os << ")";
    return os.str();
}
} // namespace

VerifyReport verify_grading(const Grading& g) {
    VerifyReport rep;
    const auto& comps = g.components;
    std::set<std::vector<Int>> seen;
    for (const auto& [deg, sub] : comps) {
        if (sub.dim() == 0) return {false, "zero component stored at " + degree_str(deg), std::nullopt};
        if (!seen.insert(deg.coords).second)
            return {false, "duplicate degree " + degree_str(deg), std::nullopt};
        if (!g.algebra->space().contains(sub))
            return {false, "component " + degree_str(deg) + " leaves the algebra", std::nullopt};
    }
    size_t total = 0;
    Subspace sum(g.algebra->field(), g.algebra->ambient());
    for (const auto& [deg, sub] : comps) {
        total += sub.dim();
        sum = sum.sum_with(sub);
    }
    if (total != g.algebra->dim() || sum.dim() != total)
        return {false,
                "components do not decompose the algebra (dims " + std::to_string(total) + " vs " +
                    std::to_string(g.algebra->dim()) + ", span " + std::to_string(sum.dim()) + ")",
                std::nullopt};
    for (size_t i = 0; i < comps.size(); ++i) {
        for (size_t j = 0; j < comps.size(); ++j) {
            GroupElem target = g.group->add(comps[i].first, comps[j].first);
            const Subspace* dst = g.component_at(target);
            for (const auto& u : comps[i].second.basis()) {
                for (const auto& v : comps[j].second.basis()) {
                    auto p = g.algebra->mul(u, v);
                    if (vec_is_zero(p)) continue;
                    if (dst == nullptr || !dst->member(p)) {
                        rep.ok = false;
                        rep.message = "product of degrees " + degree_str(comps[i].first) + " and " +
                                      degree_str(comps[j].first) + " escapes component " + degree_str(target);
                        rep.offending_pair = {i, j};
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

std::vector<size_t> component_profile(const Grading& g) {
    std::vector<size_t> dims;
    dims.reserve(g.components.size());
    for (const auto& [deg, sub] : g.components) dims.push_back(sub.dim());
    std::sort(dims.begin(), dims.end());
    return dims;
}

UniversalResult universal_group(const AlgebraPtr& alg, const std::vector<Subspace>& pieces) {
    size_t K = pieces.size();
    size_t total = 0;
    Subspace sum(alg->field(), alg->ambient());
    for (const auto& p : pieces) {
        if (p.dim() == 0) throw NotAGradingError("universal_group: zero piece");
        total += p.dim();
        sum = sum.sum_with(p);
    }
    if (total != alg->dim() || sum.dim() != total)
        throw NotAGradingError("universal_group: pieces do not decompose the algebra");

    auto find_piece = [&](const std::vector<Scalar>& v) -> long {
        for (size_t k = 0; k < K; ++k)
            if (pieces[k].member(v)) return static_cast<long>(k);
        return -1;
    };

    std::set<std::vector<Int>> rel_set;
    for (size_t i = 0; i < K; ++i) {
        for (size_t j = 0; j < K; ++j) {
            long target = -1;
            for (const auto& u : pieces[i].basis()) {
                for (const auto& v : pieces[j].basis()) {
                    auto p = alg->mul(u, v);
                    if (vec_is_zero(p)) continue;
                    long k = find_piece(p);
                    if (k < 0)
                        throw NotAGradingError("universal_group: product of pieces " + std::to_string(i) +
                                               "," + std::to_string(j) + " straddles pieces");
                    if (target >= 0 && k != target)
                        throw NotAGradingError("universal_group: products of pieces " + std::to_string(i) +
                                               "," + std::to_string(j) + " hit two pieces");
                    target = k;
                }
            }
            if (target >= 0) {
                std::vector<Int> row(K, Int(0));
                row[i] += 1;
                row[j] += 1;
                row[static_cast<size_t>(target)] -= 1;
                if (std::any_of(row.begin(), row.end(), [](const Int& x) { return x != 0; }))
                    rel_set.insert(std::move(row));
            }
        }
    }
    IntMat rels(rel_set.begin(), rel_set.end());
    AbGroupPtr U = AbGroup::from_presentation(K, rels);

    std::vector<std::pair<GroupElem, Subspace>> comps;
    std::set<std::vector<Int>> degs;
    for (size_t i = 0; i < K; ++i) {
        GroupElem d = U->gen(i);
        if (!degs.insert(d.coords).second)
            throw NotAGradingError("universal_group: degree collision at piece " + std::to_string(i) +
                                   " (degree " + degree_str(d) + ")");
        comps.emplace_back(std::move(d), pieces[i]);
    }
    UniversalResult res;
    res.group = U;
    res.grading = make_grading(alg, U, std::move(comps));
    return res;
}

UniversalResult universal_group(const Grading& g) {
    std::vector<Subspace> pieces;
    pieces.reserve(g.components.size());
    for (const auto& [deg, sub] : g.components) pieces.push_back(sub);
    return universal_group(g.algebra, pieces);
}

bool is_refinement(const Grading& fine, const Grading& coarse) {
    if (!fine.algebra->same_underlying(*coarse.algebra))
        throw LinAlgError("is_refinement: gradings live on different algebras");
    for (const auto& [deg, sub] : fine.components) {
        bool inside_some = false;
        for (const auto& [cdeg, csub] : coarse.components) {
            if (csub.contains(sub)) {
                inside_some = true;
                break;
            }
        }
        if (!inside_some) return false;
    }
    return true;
}

Character::Character(AbGroupPtr group, std::vector<Scalar> gen_values, FieldPtr field)
    : group_(std::move(group)), gen_values_(std::move(gen_values)), field_(std::move(field)) {
    if (gen_values_.size() != group_->coord_count())
        throw GroupError("Character: one value per canonical generator required");
    if (!field_ && !gen_values_.empty()) field_ = gen_values_[0].field();
    if (!field_) throw GroupError("Character: field required for the trivial group");
    for (const auto& v : gen_values_)
        if (v.is_zero()) throw GroupError("Character: values must be nonzero");
    for (size_t k = 0; k < group_->torsion().size(); ++k) {
        const Scalar& v = gen_values_[static_cast<size_t>(group_->rank()) + k];
        Int d = group_->torsion()[k];
        if (!(v.pow(d.get_si()) == v.field()->one()))
            throw GroupError("Character: torsion generator image must be a root of unity of dividing order");
    }
}

Scalar Character::value(const GroupElem& e) const {
    GroupElem r = group_->reduce(e);
    Scalar out = field_->one();
    for (size_t i = 0; i < r.coords.size(); ++i) {
        if (r.coords[i] == 0) continue;
        out = out * gen_values_[i].pow(r.coords[i].get_si());
    }
    return out;
}

Character Character::pointwise_mul(const Character& other) const {
    if (group_ != other.group_) throw GroupError("Character: group mismatch");
    std::vector<Scalar> vals;
    vals.reserve(gen_values_.size());
    for (size_t i = 0; i < gen_values_.size(); ++i) vals.push_back(gen_values_[i] * other.gen_values_[i]);
    return Character(group_, std::move(vals), field_);
}

Matrix character_action(const Grading& g, const Character& chi, bool check_automorphism) {
    FieldPtr F = g.algebra->field();
    size_t D = g.algebra->ambient();
    std::vector<std::vector<Scalar>> cols;
    std::vector<Scalar> lambdas;
    Subspace grow(F, D);
    for (const auto& [deg, sub] : g.components) {
        Scalar l = chi.value(deg);
        for (const auto& b : sub.basis()) {
            cols.push_back(b);
            lambdas.push_back(l);
        }
        grow = grow.sum_with(sub);
    }
    // fixed complement: standard vectors independent of the components
    for (size_t k = 0; k < D && cols.size() < D; ++k) {
        std::vector<Scalar> e(D, F->zero());
        e[k] = F->one();
        if (grow.member(e)) continue;
        grow = grow.sum_with(Subspace::span(F, D, {e}));
        cols.push_back(std::move(e));
        lambdas.push_back(F->one());
    }
    Matrix V(F, D, D);
    for (size_t j = 0; j < D; ++j)
        for (size_t i = 0; i < D; ++i) V.at(i, j) = cols[j][i];
    Matrix Dm(F, D, D);
    for (size_t j = 0; j < D; ++j) Dm.at(j, j) = lambdas[j];
    Matrix P = V * Dm * V.inverse();

    if (check_automorphism) {
        const auto& basis = g.algebra->space().basis();
        for (const auto& u : basis)
            for (const auto& v : basis) {
                auto lhs = g.algebra->mul(P.apply(u), P.apply(v));
                auto rhs = P.apply(g.algebra->mul(u, v));
                if (!vec_is_zero(vec_sub(lhs, rhs)))
                    throw NotAGradingError("character_action: map is not an algebra automorphism");
            }
    }
    return P;
}

std::vector<Subspace> eigenspace_refine(const Grading& g, const Matrix& psi,
                                        const std::vector<Scalar>& candidates) {
    FieldPtr F = g.algebra->field();
    std::vector<Subspace> pieces;
    for (const auto& [deg, sub] : g.components) {
        size_t k = sub.dim();
        Matrix R(F, k, k);
        for (size_t j = 0; j < k; ++j) {
            std::vector<Scalar> img = psi.apply(sub.basis()[j]);
            std::vector<Scalar> coords;
            try {
                coords = sub.coordinates(img);
            } catch (const LinAlgError&) {
                throw CompatibilityError("eigenspace_refine: map does not preserve component " +
                                         degree_str(deg));
            }
            for (size_t i = 0; i < k; ++i) R.at(i, j) = coords[i];
        }
        size_t found = 0;
        for (const auto& lambda : candidates) {
            Subspace ns = eigenspace(R, lambda);
            if (ns.dim() == 0) continue;
            std::vector<std::vector<Scalar>> vecs;
            for (const auto& c : ns.basis()) {
                std::vector<Scalar> v(g.algebra->ambient(), F->zero());
                for (size_t i = 0; i < k; ++i)
                    if (!c[i].is_zero()) v = vec_add(v, vec_scale(c[i], sub.basis()[i]));
                vecs.push_back(std::move(v));
            }
            pieces.push_back(Subspace::span(F, g.algebra->ambient(), vecs));
            found += ns.dim();
        }
        if (found != k)
            throw SpectrumError("eigenspace_refine: eigenspaces cover " + std::to_string(found) + " of " +
                                std::to_string(k) + " dimensions in component " + degree_str(deg) +
                                "; enlarge the conductor");
    }
    return pieces;
}

Matrix ad_matrix(const Algebra& alg, const std::vector<Scalar>& x) {
    const auto& basis = alg.space().basis();
    size_t d = basis.size();
    Matrix m(alg.field(), d, d);
    for (size_t j = 0; j < d; ++j) {
        auto img = alg.mul(x, basis[j]);
        auto coords = alg.space().coordinates(img);
        for (size_t i = 0; i < d; ++i) m.at(i, j) = coords[i];
    }
    return m;
}

std::vector<Scalar> minimal_polynomial(const Matrix& m) {
    if (m.rows() != m.cols()) throw LinAlgError("minimal_polynomial: matrix not square");
    FieldPtr F = m.field();
    size_t n = m.rows();
    struct Entry {
        std::vector<Scalar> vec;
        size_t pivot;
        std::vector<Scalar> expr; // combination of powers reproducing vec
    };
    std::vector<Entry> entries;
    Matrix power = Matrix::identity(F, n);
    for (size_t k = 0;; ++k) {
        std::vector<Scalar> w = power.flatten();
        std::vector<Scalar> expr(k + 1, F->zero());
        expr[k] = F->one();
        for (const auto& ent : entries) {
            Scalar c = w[ent.pivot]; // copy: w is reassigned below
            if (c.is_zero()) continue;
            w = vec_sub(w, vec_scale(c, ent.vec));
            for (size_t i = 0; i < ent.expr.size(); ++i) expr[i] = expr[i] - c * ent.expr[i];
        }
        size_t p = 0;
        while (p < w.size() && w[p].is_zero()) ++p;
        if (p == w.size()) return expr; // monic minimal polynomial, degree k
        Scalar inv = w[p].inverse();
        w = vec_scale(inv, w);
        for (auto& c : expr) c = inv * c;
        expr.resize(k + 1, F->zero());
        entries.push_back({std::move(w), p, std::move(expr)});
        power = power * m;
        if (k > n * n + 1) throw LinAlgError("minimal_polynomial: no dependence found");
    }
}

namespace {
std::vector<Scalar> strip(std::vector<Scalar> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

std::vector<Scalar> spoly_mod(std::vector<Scalar> a, const std::vector<Scalar>& b) {
    a = strip(std::move(a));
    while (a.size() >= b.size() && !a.empty()) {
        Scalar lead = a.back() * b.back().inverse();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - lead * b[i];
        a = strip(std::move(a));
    }
    return a;
}
} // namespace

bool poly_is_squarefree(const std::vector<Scalar>& p) {
    std::vector<Scalar> a = strip(p);
    if (a.size() <= 1) return true;
    FieldPtr F = a[0].field();
    std::vector<Scalar> d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(F->from_int(static_cast<long>(i)) * a[i]);
    d = strip(std::move(d));
    std::vector<Scalar> r0 = a, r1 = d;
    while (!r1.empty()) {
        auto r2 = spoly_mod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.size() == 1;
}

bool is_nilpotent_matrix(const Matrix& m, unsigned long bound) { return m.pow(bound).is_zero(); }

bool is_semisimple_matrix(const Matrix& m) { return poly_is_squarefree(minimal_polynomial(m)); }

Subspace normalizer_in(const Algebra& alg, const Subspace& L, const Subspace& S) {
    FieldPtr F = alg.field();
    size_t dl = L.dim();
    size_t amb = alg.ambient();
    std::vector<std::vector<Scalar>> rows;
    for (const auto& s : S.basis()) {
        std::vector<std::vector<Scalar>> residuals;
        for (const auto& l : L.basis()) {
            std::vector<Scalar> r = alg.mul(l, s);
            for (size_t k = 0; k < S.basis().size(); ++k) {
                const Scalar& c = r[S.pivots()[k]];
                if (!c.is_zero()) r = vec_sub(r, vec_scale(c, S.basis()[k]));
            }
            residuals.push_back(std::move(r));
        }
        for (size_t coord = 0; coord < amb; ++coord) {
            std::vector<Scalar> row(dl, F->zero());
            bool nonzero = false;
            for (size_t i = 0; i < dl; ++i) {
                row[i] = residuals[i][coord];
                nonzero = nonzero || !row[i].is_zero();
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return L;
    Matrix C = Matrix::from_rows(F, rows);
    Subspace ker = nullspace(C);
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& c : ker.basis()) {
        std::vector<Scalar> v(amb, F->zero());
        for (size_t i = 0; i < dl; ++i)
            if (!c[i].is_zero()) v = vec_add(v, vec_scale(c[i], L.basis()[i]));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(F, amb, vecs);
}

bool is_abelian_subspace(const Algebra& alg, const Subspace& S) {
    for (const auto& u : S.basis())
        for (const auto& v : S.basis())
            if (!vec_is_zero(alg.mul(u, v))) return false;
    return true;
}

} // namespace liegrad
