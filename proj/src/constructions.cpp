#include "liegrad/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace liegrad {

Label label_add(Label a, Label b) { return Label{a.bits ^ b.bits}; }

int label_sign(Label a, int m) { return label_q(a, m) == 0 ? 1 : -1; }

int label_q(Label a, int m) {
    int count = 0;
    for (int i = 0; i < m; ++i) {
        uint32_t pair = (a.bits >> (2 * i)) & 3u;
        if (pair == 3u) ++count;
    }
    return count & 1;
}

int label_beta(Label a, Label b, int m) {
    int acc = 0;
    for (int i = 0; i < m; ++i) {
        uint32_t a1 = (a.bits >> (2 * i)) & 1u, a2 = (a.bits >> (2 * i + 1)) & 1u;
        uint32_t b1 = (b.bits >> (2 * i)) & 1u, b2 = (b.bits >> (2 * i + 1)) & 1u;
        acc += static_cast<int>(a1 * b2 + a2 * b1);
    }
    return acc & 1;
}

std::string label_to_string(Label a, int m) {
    if (m == 0) return "1";
    std::string s;
    for (int i = 0; i < m; ++i) {
        s += ((a.bits >> (2 * i)) & 1u) ? '1' : '0';
        s += ((a.bits >> (2 * i + 1)) & 1u) ? '1' : '0';
    }
    return s;
}

Label label_from_string(const std::string& s, int m) {
    if (m == 0) {
        if (s != "1") throw DescriptorError("label: expected \"1\" for m=0, got \"" + s + "\"");
        return Label{0};
    }
    if (s.size() != static_cast<size_t>(2 * m))
        throw DescriptorError("label \"" + s + "\": expected " + std::to_string(2 * m) + " bits");
    Label a;
    for (int i = 0; i < 2 * m; ++i) {
        char c = s[static_cast<size_t>(i)];
        if (c != '0' && c != '1') throw DescriptorError("label \"" + s + "\": bits must be 0/1");
        if (c == '1') a.bits |= (1u << i);
    }
    return a;
}

std::string kind_to_string(Kind k) {
    switch (k) {
    case Kind::SlInner: return "sl-inner";
    case Kind::SlOuter: return "sl-outer";
    case Kind::Ortho: return "ortho";
    case Kind::Sympl: return "sympl";
    }
    return "?";
}

int Descriptor::n() const {
    if (kind == Kind::SlInner) {
        long prod = m;
        for (long p : prime_powers) prod *= p;
        return static_cast<int>(prod);
    }
    return (1 << m) * (r() + 2 * s);
}

int Descriptor::epsilon() const {
    if (kind == Kind::Ortho) return 1;
    if (kind == Kind::Sympl) return -1;
    return 0;
}

namespace {
bool is_prime_power(long x) {
    if (x < 2) return false;
    long p = 2;
    while (p * p <= x && x % p != 0) ++p;
    if (p * p > x) p = x; // x is prime
    while (x % p == 0) x /= p;
    return x == 1;
}
} // namespace

void Descriptor::validate() const {
    if (kind == Kind::SlInner) {
        if (m < 1) throw DescriptorError("sl-inner: m >= 1 required");
        if (s != 0 || !d.empty()) throw DescriptorError("sl-inner: no s or d parameters");
        bool all_two = !prime_powers.empty();
        for (long p : prime_powers) {
            if (!is_prime_power(p))
                throw DescriptorError("sl-inner: " + std::to_string(p) + " is not a prime power");
            all_two = all_two && p == 2;
        }
        // at n = 2 the lone Pauli factor is fine; for larger n an all-2
        // factor list refines into an outer grading unless m >= 3
        if (all_two && m < 3 && n() > 2)
            throw DescriptorError("sl-inner: with all Pauli factors of size 2, m >= 3 is required");
        return;
    }
    if (m < 0 || m > 8) throw DescriptorError("descriptor: m out of range");
    if (s < 0) throw DescriptorError("descriptor: s >= 0 required");
    if (r() + 2 * s < 1) throw DescriptorError("descriptor: r + 2s >= 1 required");
    if (kind == Kind::SlOuter && n() < 2) throw DescriptorError("descriptor: n >= 2 required");
    for (Label a : d) {
        if (a.bits >= (1u << (2 * m))) throw DescriptorError("descriptor: label out of range");
        if (kind == Kind::Ortho && label_sign(a, m) != 1)
            throw DescriptorError("ortho: diagonal labels must be tau-symmetric (sign +1)");
        if (kind == Kind::Sympl && label_sign(a, m) != -1)
            throw DescriptorError(m == 0 ? "sympl: m = 0 forces r = 0 (no sign -1 labels exist)"
                                         : "sympl: diagonal labels must be tau-antisymmetric (sign -1)");
    }
    if (s == 0 && r() == 2 && d[0] == d[1])
        throw DescriptorError("descriptor (s=0, r=2, equal lines) is not fine");
}

std::string Descriptor::to_text() const {
    std::ostringstream os;
    os << kind_to_string(kind) << ":m=" << m;
    if (kind == Kind::SlInner) {
        if (!prime_powers.empty()) {
            os << ",pp=";
            for (size_t i = 0; i < prime_powers.size(); ++i) {
                if (i) os << ";";
                os << prime_powers[i];
            }
        }
        return os.str();
    }
    os << ",s=" << s;
    if (!d.empty()) {
        os << ",d=";
        for (size_t i = 0; i < d.size(); ++i) {
            if (i) os << ";";
            os << label_to_string(d[i], m);
        }
    }
    return os.str();
}

Descriptor Descriptor::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw DescriptorError("descriptor \"" + text + "\": missing kind prefix");
    std::string kind_s = text.substr(0, colon);
    Descriptor desc;
    if (kind_s == "sl-inner") desc.kind = Kind::SlInner;
    else if (kind_s == "sl-outer") desc.kind = Kind::SlOuter;
    else if (kind_s == "ortho") desc.kind = Kind::Ortho;
    else if (kind_s == "sympl") desc.kind = Kind::Sympl;
    else throw DescriptorError("descriptor: unknown kind \"" + kind_s + "\"");

    std::string rest = text.substr(colon + 1);
    bool saw_m = false;
    std::vector<std::string> dtokens;
    std::istringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw DescriptorError("descriptor: expected key=value, got \"" + item + "\"");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        auto split_semi = [](const std::string& v) {
            std::vector<std::string> out;
            std::istringstream vs(v);
            std::string tok;
            while (std::getline(vs, tok, ';'))
                if (!tok.empty()) out.push_back(tok);
            return out;
        };
        try {
            if (key == "m") {
                desc.m = std::stoi(val);
                saw_m = true;
            } else if (key == "s") {
                desc.s = std::stoi(val);
            } else if (key == "d") {
                dtokens = split_semi(val);
            } else if (key == "pp") {
                for (const auto& t : split_semi(val)) desc.prime_powers.push_back(std::stol(t));
            } else {
                throw DescriptorError("descriptor: unknown key \"" + key + "\"");
            }
        } catch (const std::invalid_argument&) {
            throw DescriptorError("descriptor: bad number in \"" + item + "\"");
        } catch (const std::out_of_range&) {
            throw DescriptorError("descriptor: number out of range in \"" + item + "\"");
        }
    }
    if (!saw_m) throw DescriptorError("descriptor: m= is required");
    for (const auto& t : dtokens) desc.d.push_back(label_from_string(t, desc.m));
    std::sort(desc.d.begin(), desc.d.end());
    std::sort(desc.prime_powers.begin(), desc.prime_powers.end());
    desc.validate();
    return desc;
}

QTensor::QTensor(FieldPtr F, int m) : F_(std::move(F)), m_(m) {
    if (m < 0 || m > 8) throw DescriptorError("QTensor: m out of range");
    Matrix qm[4] = {Matrix::identity(F_, 2), Matrix::from_ints(F_, {{1, 0}, {0, -1}}),
                    Matrix::from_ints(F_, {{0, 1}, {1, 0}}), Matrix::from_ints(F_, {{0, 1}, {-1, 0}})};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Matrix prod = qm[a] * qm[b];
            const Matrix& target = qm[a ^ b];
            if (prod == target) factor_cocycle_[a][b] = 1;
            else if (prod == -target) factor_cocycle_[a][b] = -1;
            else throw Error("QTensor: inconsistent generator products");
        }
}

std::vector<Label> QTensor::labels() const {
    std::vector<Label> out;
    out.reserve(label_count());
    for (uint32_t b = 0; b < label_count(); ++b) out.push_back(Label{b});
    return out;
}

Matrix QTensor::realize(Label a) const {
    Matrix qm[4] = {Matrix::identity(F_, 2), Matrix::from_ints(F_, {{1, 0}, {0, -1}}),
                    Matrix::from_ints(F_, {{0, 1}, {1, 0}}), Matrix::from_ints(F_, {{0, 1}, {-1, 0}})};
    Matrix out = Matrix::identity(F_, 1);
    for (int i = 0; i < m_; ++i) {
        uint32_t pair = (a.bits >> (2 * i)) & 3u;
        out = kron(out, qm[pair]);
    }
    return out;
}

int QTensor::cocycle(Label a, Label b) const {
    int c = 1;
    for (int i = 0; i < m_; ++i) {
        uint32_t pa = (a.bits >> (2 * i)) & 3u;
        uint32_t pb = (b.bits >> (2 * i)) & 3u;
        c *= factor_cocycle_[pa][pb];
    }
    return c;
}

Grading QTensor::grading() const {
    auto alg = Algebra::matrix_algebra(F_, dim(), "M" + std::to_string(dim()));
    IntMat rels;
    for (int i = 0; i < 2 * m_; ++i) {
        std::vector<Int> row(static_cast<size_t>(2 * m_), Int(0));
        row[static_cast<size_t>(i)] = 2;
        rels.push_back(std::move(row));
    }
    auto G = AbGroup::from_presentation(static_cast<size_t>(2 * m_), rels);
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (Label a : labels()) {
        std::vector<Int> coords(static_cast<size_t>(2 * m_), Int(0));
        for (int i = 0; i < 2 * m_; ++i)
            if ((a.bits >> i) & 1u) coords[static_cast<size_t>(i)] = 1;
        comps.emplace_back(G->reduce(GroupElem{coords}),
                           Subspace::span(F_, dim() * dim(), {realize(a).flatten()}));
    }
    return make_grading(alg, G, std::move(comps));
}

PauliResult pauli(FieldPtr F, size_t n) {
    if (n < 2) throw DescriptorError("pauli: n >= 2 required");
    Scalar eps = F->root_of_unity(static_cast<unsigned long>(n));
    Matrix x(F, n, n), y(F, n, n);
    for (size_t i = 0; i < n; ++i) {
        x.at(i, i) = eps.pow(static_cast<long>(i));
        y.at(i, (i + 1) % n) = F->one();
    }
    auto alg = Algebra::matrix_algebra(F, n, "M" + std::to_string(n));
    long ln = static_cast<long>(n);
    auto G = AbGroup::from_presentation(2, {{Int(ln), Int(0)}, {Int(0), Int(ln)}});
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            comps.emplace_back(GroupElem{{Int(static_cast<long>(i)), Int(static_cast<long>(j))}},
                               Subspace::span(F, n * n, {(x.pow(i) * y.pow(j)).flatten()}));
    return PauliResult{make_grading(alg, G, std::move(comps)), x, y};
}

Grading cartan_matrix_grading(FieldPtr F, size_t m) {
    if (m < 1) throw DescriptorError("cartan_matrix_grading: m >= 1 required");
    auto alg = Algebra::matrix_algebra(F, m, "M" + std::to_string(m));
    auto G = AbGroup::from_presentation(m - 1, {});
    std::map<std::vector<Int>, std::vector<std::vector<Scalar>>> buckets;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            std::vector<Int> deg(m - 1, Int(0));
            if (i >= 1) deg[i - 1] += 1;
            if (j >= 1) deg[j - 1] -= 1;
            Matrix e(F, m, m);
            e.at(i, j) = F->one();
            buckets[deg].push_back(e.flatten());
        }
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (auto& [deg, vecs] : buckets) comps.emplace_back(GroupElem{deg}, Subspace::span(F, m * m, vecs));
    return make_grading(alg, G, std::move(comps));
}

bool is_graded_division(const Grading& g) {
    for (const auto& [deg, sub] : g.components) {
        if (sub.dim() != 1) return false;
        Matrix m = Matrix::unflatten(g.algebra->field(), g.algebra->matrix_size(),
                                     g.algebra->matrix_size(), sub.basis()[0]);
        try {
            (void)m.inverse();
        } catch (const LinAlgError&) {
            return false;
        }
    }
    return true;
}

Subspace traceless_subspace(const FieldPtr& F, size_t n) {
    std::vector<std::vector<Scalar>> vecs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Matrix e(F, n, n);
            e.at(i, j) = F->one();
            vecs.push_back(e.flatten());
        }
    for (size_t i = 0; i + 1 < n; ++i) {
        Matrix e(F, n, n);
        e.at(i, i) = F->one();
        e.at(i + 1, i + 1) = F->from_int(-1);
        vecs.push_back(e.flatten());
    }
    return Subspace::span(F, n * n, vecs);
}

Subspace traceless_slice(const FieldPtr& F, const Subspace& S, size_t n) {
    std::vector<Scalar> traces;
    bool all_zero = true;
    for (const auto& b : S.basis()) {
        Scalar t = Matrix::unflatten(F, n, n, b).trace();
        all_zero = all_zero && t.is_zero();
        traces.push_back(t);
    }
    if (all_zero) return S;
    Matrix row(F, 1, S.dim());
    for (size_t i = 0; i < S.dim(); ++i) row.at(0, i) = traces[i];
    Subspace ker = nullspace(row);
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& c : ker.basis()) {
        std::vector<Scalar> v(S.ambient(), F->zero());
        for (size_t i = 0; i < S.dim(); ++i)
            if (!c[i].is_zero()) v = vec_add(v, vec_scale(c[i], S.basis()[i]));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(F, S.ambient(), vecs);
}

InnerResult inner_grading(FieldPtr F, const Descriptor& desc) {
    if (desc.kind != Kind::SlInner) throw DescriptorError("inner_grading: sl-inner descriptor required");
    desc.validate();
    size_t n = static_cast<size_t>(desc.n());
    struct PartComp {
        std::vector<Int> deg;
        std::vector<Matrix> basis;
    };
    std::vector<std::vector<PartComp>> parts;
    {
        size_t mm = static_cast<size_t>(desc.m);
        std::map<std::vector<Int>, std::vector<Matrix>> buckets;
        for (size_t i = 0; i < mm; ++i)
            for (size_t j = 0; j < mm; ++j) {
                std::vector<Int> deg(mm - 1, Int(0));
                if (i >= 1) deg[i - 1] += 1;
                if (j >= 1) deg[j - 1] -= 1;
                Matrix e(F, mm, mm);
                e.at(i, j) = F->one();
                buckets[deg].push_back(e);
            }
        std::vector<PartComp> pcs;
        for (auto& [deg, mats] : buckets) pcs.push_back({deg, mats});
        parts.push_back(std::move(pcs));
    }
    for (long pp : desc.prime_powers) {
        size_t np = static_cast<size_t>(pp);
        Scalar eps = F->root_of_unity(static_cast<unsigned long>(np));
        Matrix x(F, np, np), y(F, np, np);
        for (size_t i = 0; i < np; ++i) {
            x.at(i, i) = eps.pow(static_cast<long>(i));
            y.at(i, (i + 1) % np) = F->one();
        }
        std::vector<PartComp> pcs;
        for (size_t i = 0; i < np; ++i)
            for (size_t j = 0; j < np; ++j)
                pcs.push_back({{Int(static_cast<long>(i)), Int(static_cast<long>(j))},
                               {x.pow(i) * y.pow(j)}});
        parts.push_back(std::move(pcs));
    }
    size_t ngens = static_cast<size_t>(desc.m - 1) + 2 * desc.prime_powers.size();
    IntMat rels;
    {
        size_t off = static_cast<size_t>(desc.m - 1);
        for (long pp : desc.prime_powers) {
            for (int c = 0; c < 2; ++c) {
                std::vector<Int> row(ngens, Int(0));
                row[off + static_cast<size_t>(c)] = pp;
                rels.push_back(std::move(row));
            }
            off += 2;
        }
    }
    auto G = AbGroup::from_presentation(ngens, rels);
    auto alg = Algebra::matrix_algebra(F, n, "M" + std::to_string(n));

    std::vector<std::pair<GroupElem, Subspace>> comps;
    std::vector<size_t> idx(parts.size(), 0);
    while (true) {
        std::vector<Int> pres;
        std::vector<Matrix> mats = {Matrix::identity(F, 1)};
        for (size_t p = 0; p < parts.size(); ++p) {
            const PartComp& pc = parts[p][idx[p]];
            pres.insert(pres.end(), pc.deg.begin(), pc.deg.end());
            std::vector<Matrix> next;
            for (const auto& a : mats)
                for (const auto& b : pc.basis) next.push_back(kron(a, b));
            mats = std::move(next);
        }
        std::vector<std::vector<Scalar>> vecs;
        for (const auto& mmat : mats) vecs.push_back(mmat.flatten());
        comps.emplace_back(G->from_presentation_coords(pres), Subspace::span(F, n * n, vecs));
        size_t p = 0;
        for (; p < parts.size(); ++p) {
            if (++idx[p] < parts[p].size()) break;
            idx[p] = 0;
        }
        if (p == parts.size()) break;
    }
    InnerResult res;
    res.desc = desc;
    res.on_matrix = make_grading(alg, G, comps);

    auto sl = Algebra::matrix_lie(F, n, traceless_subspace(F, n), "sl" + std::to_string(n));
    std::vector<std::pair<GroupElem, Subspace>> slcomps;
    for (const auto& [deg, sub] : res.on_matrix.components)
        slcomps.emplace_back(deg, traceless_slice(F, sub, n));
    res.on_sl = make_grading(sl, G, std::move(slcomps));
    return res;
}

GroupElem GroupData::label_elem(Label a) const {
    GroupElem e = Gtilde->identity();
    for (size_t i = 0; i < tdeg.size(); ++i)
        if ((a.bits >> i) & 1u) e = Gtilde->add(e, tdeg[i]);
    return e;
}

GroupData build_group_data(const Descriptor& desc) {
    desc.validate();
    int m = desc.m, r = desc.r(), s = desc.s;
    int k = r + 2 * s;
    size_t ngens = static_cast<size_t>(2 * m + k);
    IntMat rels;
    for (int i = 0; i < 2 * m; ++i) {
        std::vector<Int> row(ngens, Int(0));
        row[static_cast<size_t>(i)] = 2;
        rels.push_back(std::move(row));
    }
    for (int i = 0; i < r; ++i) {
        // 2 g_i = deg(d_i)
        std::vector<Int> row(ngens, Int(0));
        row[static_cast<size_t>(2 * m + i)] = 2;
        for (int b = 0; b < 2 * m; ++b)
            if ((desc.d[static_cast<size_t>(i)].bits >> b) & 1u) row[static_cast<size_t>(b)] = -1;
        rels.push_back(std::move(row));
    }
    for (int p = 0; p < s; ++p) {
        std::vector<Int> row(ngens, Int(0));
        row[static_cast<size_t>(2 * m + r + 2 * p)] = 1;
        row[static_cast<size_t>(2 * m + r + 2 * p + 1)] = 1;
        rels.push_back(std::move(row));
    }
    GroupData gd;
    gd.Gtilde = AbGroup::from_presentation(ngens, rels);
    for (int i = 0; i < 2 * m; ++i) gd.tdeg.push_back(gd.Gtilde->gen(static_cast<size_t>(i)));
    for (int i = 0; i < k; ++i) gd.gdeg.push_back(gd.Gtilde->gen(static_cast<size_t>(2 * m + i)));
    std::vector<GroupElem> bargens = gd.tdeg;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            bargens.push_back(
                gd.Gtilde->sub(gd.gdeg[static_cast<size_t>(i)], gd.gdeg[static_cast<size_t>(j)]));
    gd.Gbar = gd.Gtilde->subgroup(bargens);
    return gd;
}

Matrix FormData::realize_unit(int i, int j, Label t) const {
    Matrix E(F, static_cast<size_t>(k), static_cast<size_t>(k));
    E.at(static_cast<size_t>(i), static_cast<size_t>(j)) = F->one();
    return kron(E, Q.realize(t));
}

Matrix FormData::adjoint_of(const Matrix& x) const { return MBinv * x.transpose() * MB; }

Matrix FormData::adjoint_ambient() const {
    size_t nn = static_cast<size_t>(n);
    Matrix psi(F, nn * nn, nn * nn);
    // phi(unit_pq) = outer product of column q of MBinv with row p of MB
    for (size_t p = 0; p < nn; ++p)
        for (size_t q2 = 0; q2 < nn; ++q2) {
            size_t col = p * nn + q2;
            for (size_t a = 0; a < nn; ++a) {
                if (MBinv.at(a, q2).is_zero()) continue;
                for (size_t b = 0; b < nn; ++b) {
                    if (MB.at(p, b).is_zero()) continue;
                    psi.at(a * nn + b, col) = MBinv.at(a, q2) * MB.at(p, b);
                }
            }
        }
    return psi;
}

Matrix FormData::neg_adjoint_ambient() const { return F->from_int(-1) * adjoint_ambient(); }

bool FormData::phi_involutive() const {
    return (MBinv * MB.transpose()).is_scalar_multiple_of_identity();
}

FormData build_form(FieldPtr F, const Descriptor& desc) {
    if (desc.kind == Kind::SlInner) throw DescriptorError("build_form: outer descriptor required");
    desc.validate();
    FormData fd{desc, F,  desc.n(), 1 << desc.m, desc.r() + 2 * desc.s, QTensor(F, desc.m),
                build_group_data(desc), Matrix(), Matrix(), {}, {}};
    size_t nn = static_cast<size_t>(fd.n);
    int r = desc.r(), s = desc.s, eps = desc.kind == Kind::Sympl ? -1 : 1;

    Matrix MB(F, nn, nn);
    size_t q = static_cast<size_t>(fd.q);
    auto put_block = [&](int bi, int bj, const Matrix& blk) {
        for (size_t a = 0; a < q; ++a)
            for (size_t b = 0; b < q; ++b)
                MB.at(static_cast<size_t>(bi) * q + a, static_cast<size_t>(bj) * q + b) = blk.at(a, b);
    };
    for (int i = 0; i < r; ++i) put_block(i, i, fd.Q.realize(desc.d[static_cast<size_t>(i)]));
    Matrix Iq = Matrix::identity(F, q);
    for (int p = 0; p < s; ++p) {
        put_block(r + 2 * p, r + 2 * p + 1, Iq);
        put_block(r + 2 * p + 1, r + 2 * p, F->from_int(eps) * Iq);
    }
    fd.MB = MB;
    fd.MBinv = MB.inverse();

    {
        std::set<std::vector<Int>> timg;
        for (Label a : fd.Q.labels()) timg.insert(fd.groups.label_elem(a).coords);
        if (timg.size() != fd.Q.label_count())
            throw Error("build_form: torsion subgroup does not embed faithfully");
    }
    std::map<std::vector<Int>, std::vector<std::vector<Scalar>>> buckets;
    for (int i = 0; i < fd.k; ++i)
        for (int j = 0; j < fd.k; ++j)
            for (Label t : fd.Q.labels()) {
                GroupElem deg = fd.groups.Gtilde->add(
                    fd.groups.Gtilde->sub(fd.groups.gdeg[static_cast<size_t>(i)],
                                          fd.groups.gdeg[static_cast<size_t>(j)]),
                    fd.groups.label_elem(t));
                auto bar = fd.groups.Gbar.to_subgroup(deg);
                if (!bar) throw Error("build_form: basis degree escapes the grading subgroup");
                fd.rbasis.push_back({i, j, t, deg, *bar});
                buckets[bar->coords].push_back(fd.realize_unit(i, j, t).flatten());
            }
    auto alg = Algebra::matrix_algebra(F, nn, "M" + std::to_string(nn));
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (auto& [coords, vecs] : buckets)
        comps.emplace_back(GroupElem{coords}, Subspace::span(F, nn * nn, vecs));
    fd.coarse = make_grading(alg, fd.groups.Gbar.group, std::move(comps));
    return fd;
}

namespace {

// sign * x_label, absent = 0
struct Mono {
    int sign;
    Label lab;
};
using OptMono = std::optional<Mono>;

struct SymForm {
    const FormData& fd;
    int r, s, eps, k;
    std::vector<std::vector<OptMono>> MB, MBinv;

    explicit SymForm(const FormData& f) : fd(f) {
        r = f.desc.r();
        s = f.desc.s;
        eps = f.desc.kind == Kind::Sympl ? -1 : 1;
        k = f.k;
        MB.assign(static_cast<size_t>(k), std::vector<OptMono>(static_cast<size_t>(k)));
        MBinv = MB;
        for (int i = 0; i < r; ++i) {
            Label di = f.desc.d[static_cast<size_t>(i)];
            MB[static_cast<size_t>(i)][static_cast<size_t>(i)] = Mono{1, di};
            MBinv[static_cast<size_t>(i)][static_cast<size_t>(i)] = Mono{f.Q.cocycle(di, di), di};
        }
        for (int p = 0; p < s; ++p) {
            size_t a = static_cast<size_t>(r + 2 * p), b = a + 1;
            MB[a][b] = Mono{1, Label{0}};
            MB[b][a] = Mono{eps, Label{0}};
            MBinv[a][b] = Mono{eps, Label{0}};
            MBinv[b][a] = Mono{1, Label{0}};
        }
    }

    OptMono mul(const OptMono& x, const OptMono& y) const {
        if (!x || !y) return std::nullopt;
        return Mono{x->sign * y->sign * fd.Q.cocycle(x->lab, y->lab), label_add(x->lab, y->lab)};
    }

    // B(e_i x_a, e_j x_b) = tau(x_a) (MB)_ij x_b
    OptMono B(int i, Label a, int j, Label b) const {
        OptMono mb = MB[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (!mb) return std::nullopt;
        return mul(mul(Mono{fd.Q.sign(a), a}, mb), Mono{1, b});
    }

    struct SymUnit {
        int sign;
        int i, j;
        Label t;
    };

    // phi(E_ij x_t) = MBinv (E_ji tau(x_t)) MB, a single signed unit
    SymUnit phi(int i, int j, Label t) const {
        int a = -1, b = -1;
        OptMono left, right;
        for (int row = 0; row < k; ++row)
            if (MBinv[static_cast<size_t>(row)][static_cast<size_t>(j)]) {
                a = row;
                left = MBinv[static_cast<size_t>(row)][static_cast<size_t>(j)];
            }
        for (int col = 0; col < k; ++col)
            if (MB[static_cast<size_t>(i)][static_cast<size_t>(col)]) {
                b = col;
                right = MB[static_cast<size_t>(i)][static_cast<size_t>(col)];
            }
        if (a < 0 || b < 0) throw Error("SymForm::phi: MB is not block-monomial");
        OptMono val = mul(mul(left, Mono{fd.Q.sign(t), t}), right);
        return SymUnit{val->sign, a, b, val->lab};
    }

    bool eq(const OptMono& x, const OptMono& y) const {
        if (!x && !y) return true;
        if (!x || !y) return false;
        return x->sign == y->sign && x->lab == y->lab;
    }
};

} // namespace

FormChecks check_form(const FormData& fd) {
    FormChecks out;
    SymForm sf(fd);
    const auto labels = fd.Q.labels();
    const int k = fd.k;

    out.sesquilinear = true;
    for (int i = 0; i < k && out.sesquilinear; ++i)
        for (int j = 0; j < k && out.sesquilinear; ++j)
            for (Label a : labels)
                for (Label b : labels)
                    for (Label c : labels) {
                        // B(v x_c, w) = tau(x_c) B(v, w)
                        OptMono lhs = sf.B(i, label_add(a, c), j, b);
                        if (lhs) lhs->sign *= fd.Q.cocycle(a, c);
                        OptMono rhs = sf.mul(Mono{fd.Q.sign(c), c}, sf.B(i, a, j, b));
                        // B(v, w x_c) = B(v, w) x_c
                        OptMono lhs2 = sf.B(i, a, j, label_add(b, c));
                        if (lhs2) lhs2->sign *= fd.Q.cocycle(b, c);
                        OptMono rhs2 = sf.mul(sf.B(i, a, j, b), Mono{1, c});
                        if (!sf.eq(lhs, rhs) || !sf.eq(lhs2, rhs2)) {
                            out.sesquilinear = false;
                            break;
                        }
                    }

    if (fd.desc.kind == Kind::Ortho || fd.desc.kind == Kind::Sympl) {
        int eps = fd.desc.epsilon();
        out.hermitian = true;
        for (int i = 0; i < k && out.hermitian; ++i)
            for (int j = 0; j < k && out.hermitian; ++j)
                for (Label a : labels)
                    for (Label b : labels) {
                        OptMono lhs = sf.B(i, a, j, b);
                        OptMono rhs = sf.B(j, b, i, a);
                        if (rhs) rhs->sign *= eps * fd.Q.sign(rhs->lab); // eps * tau
                        if (!sf.eq(lhs, rhs)) {
                            out.hermitian = false;
                            break;
                        }
                    }
    } else {
        out.hermitian = true; // not applicable to the sl kinds
    }

    // nonzero B(V_g, V_h) lands in D_{g+h}; since the identity label maps to
    // e, the identity part of B(V_g, V_h) vanishes exactly when g+h != e
    out.degree_compatible = true;
    {
        const AbGroup& G = *fd.groups.Gtilde;
        for (int i = 0; i < k && out.degree_compatible; ++i)
            for (int j = 0; j < k && out.degree_compatible; ++j)
                for (Label a : labels)
                    for (Label b : labels) {
                        OptMono v = sf.B(i, a, j, b);
                        if (!v) continue;
                        GroupElem g =
                            G.add(fd.groups.gdeg[static_cast<size_t>(i)], fd.groups.label_elem(a));
                        GroupElem h =
                            G.add(fd.groups.gdeg[static_cast<size_t>(j)], fd.groups.label_elem(b));
                        if (!G.eq(G.add(g, h), fd.groups.label_elem(v->lab))) {
                            out.degree_compatible = false;
                            break;
                        }
                    }
    }

    out.adjoint_identity = true;
    for (int i0 = 0; i0 < k && out.adjoint_identity; ++i0)
        for (int j0 = 0; j0 < k && out.adjoint_identity; ++j0)
            for (Label t : labels) {
                SymForm::SymUnit px = sf.phi(i0, j0, t);
                for (int i = 0; i < k && out.adjoint_identity; ++i)
                    for (Label a : labels)
                        for (int j = 0; j < k; ++j)
                            for (Label b : labels) {
                                OptMono lhs;
                                if (i == j0) {
                                    lhs = sf.B(i0, label_add(t, a), j, b);
                                    if (lhs) lhs->sign *= fd.Q.cocycle(t, a);
                                }
                                OptMono rhs;
                                if (px.j == j) {
                                    rhs = sf.B(i, a, px.i, label_add(px.t, b));
                                    if (rhs) rhs->sign *= px.sign * fd.Q.cocycle(px.t, b);
                                }
                                if (!sf.eq(lhs, rhs)) {
                                    out.adjoint_identity = false;
                                    break;
                                }
                            }
            }

    out.symbolic_matches_realized = true;
    for (int i = 0; i < k && out.symbolic_matches_realized; ++i)
        for (int j = 0; j < k && out.symbolic_matches_realized; ++j)
            for (Label t : labels) {
                SymForm::SymUnit px = sf.phi(i, j, t);
                Matrix lhs = fd.adjoint_of(fd.realize_unit(i, j, t));
                Matrix rhs = fd.F->from_int(px.sign) * fd.realize_unit(px.i, px.j, px.t);
                if (!(lhs == rhs)) out.symbolic_matches_realized = false;
            }
    return out;
}

FieldPtr default_field_for(const Descriptor& desc) {
    if (desc.kind == Kind::SlInner) {
        std::vector<unsigned long> orders = {4};
        for (long p : desc.prime_powers) orders.push_back(static_cast<unsigned long>(p));
        return make_field(orders);
    }
    if (desc.kind == Kind::SlOuter) {
        GroupData gd = build_group_data(desc);
        unsigned long e = 1;
        const auto& tor = gd.Gbar.group->torsion();
        if (!tor.empty()) e = static_cast<unsigned long>(tor.back().get_ui());
        return make_field({4, e});
    }
    return make_field({4});
}

OuterSlResult outer_grading_sl(const Descriptor& desc, FieldPtr F) {
    if (desc.kind != Kind::SlOuter) throw DescriptorError("outer_grading_sl: sl-outer descriptor required");
    desc.validate();
    if (!F) F = default_field_for(desc);
    OuterSlResult res{build_form(F, desc), nullptr, {}, {}, nullptr, false, {}, false, false, false};
    FormData& fd = res.form;
    size_t nn = static_cast<size_t>(fd.n);

    res.sl = Algebra::matrix_lie(F, nn, traceless_subspace(F, nn), "sl" + std::to_string(nn));
    std::vector<std::pair<GroupElem, Subspace>> slcomps;
    for (const auto& [deg, sub] : fd.coarse.components)
        slcomps.emplace_back(deg, traceless_slice(F, sub, nn));
    res.coarse_sl = make_grading(res.sl, fd.groups.Gbar.group, std::move(slcomps));

    Matrix psi = fd.neg_adjoint_ambient();
    auto pieces = eigenspace_refine(res.coarse_sl, psi, F->all_roots_of_unity());
    auto uni = universal_group(res.sl, pieces);
    res.fine = std::move(uni.grading);
    res.universal = uni.group;
    res.phi_involutive = fd.phi_involutive();

    const AbGroup& U = *res.universal;
    const AbGroup& GB = *fd.groups.Gbar.group;
    // coarsening map on the support: piece i (presentation generator i of U)
    // sits inside a unique coarse component, whose degree it inherits
    IntMat Ppres(pieces.size(), std::vector<Int>(GB.coord_count(), Int(0)));
    for (size_t i = 0; i < pieces.size(); ++i) {
        const GroupElem* bar = nullptr;
        for (const auto& [cdeg, csub] : res.coarse_sl.components)
            if (csub.contains(pieces[i])) {
                bar = &cdeg;
                break;
            }
        if (!bar) throw Error("outer_grading_sl: refined piece escapes the coarse grading");
        Ppres[i] = bar->coords;
    }
    IntMat stacked = Ppres;
    for (size_t t = 0; t < GB.torsion().size(); ++t) {
        std::vector<Int> row(GB.coord_count(), Int(0));
        row[static_cast<size_t>(GB.rank()) + t] = GB.torsion()[t];
        stacked.push_back(std::move(row));
    }
    IntMat ker = integer_row_kernel(stacked, GB.coord_count());
    std::vector<GroupElem> kgens;
    for (const auto& krow : ker) {
        std::vector<Int> word(krow.begin(), krow.begin() + static_cast<long>(pieces.size()));
        kgens.push_back(U.from_presentation_coords(word));
    }
    auto ksub = U.subgroup(kgens);
    res.kernel_is_z2 = ksub.group->iso_type() == IsoType{0, {Int(2)}};
    if (res.kernel_is_z2) {
        for (const auto& e : ksub.group->all_elements()) {
            if (ksub.group->is_identity(e)) continue;
            res.kernel_elem = ksub.to_ambient(e);
        }
        auto quot = U.quotient({res.kernel_elem});
        res.quotient_matches_gbar = quot->iso_type() == GB.iso_type();
    }
    auto z2 = AbGroup::from_presentation(1, {{Int(2)}});
    res.splits_as_gbar_x_z2 = U.iso_type() == AbGroup::direct_sum(GB, *z2)->iso_type();
    return res;
}

SkewResult skew_grading(const Descriptor& desc, FieldPtr F) {
    if (desc.kind != Kind::Ortho && desc.kind != Kind::Sympl)
        throw DescriptorError("skew_grading: ortho or sympl descriptor required");
    desc.validate();
    if (!F) F = default_field_for(desc);
    SkewResult res{build_form(F, desc), nullptr, {}, {}, nullptr, false};
    FormData& fd = res.form;
    size_t nn = static_cast<size_t>(fd.n);
    if (!fd.phi_involutive()) throw Error("skew_grading: adjoint is not an involution");

    Subspace K = eigenspace(fd.adjoint_ambient(), F->from_int(-1));
    res.skew = Algebra::matrix_lie(F, nn, K,
                                   (desc.kind == Kind::Ortho ? "so" : "sp") + std::to_string(nn));
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (const auto& [deg, sub] : fd.coarse.components) comps.emplace_back(deg, K.intersect(sub));
    res.fine = make_grading(res.skew, fd.groups.Gbar.group, std::move(comps));
    auto uni = universal_group(res.fine);
    res.fine_universal = std::move(uni.grading);
    res.universal = uni.group;
    res.universal_matches_gbar = res.universal->iso_type() == fd.groups.Gbar.group->iso_type();
    return res;
}

OctonionResult octonions(FieldPtr F) {
    struct CD {
        size_t dim;
        std::vector<std::vector<std::vector<int>>> table;
        std::vector<int> conj;
        std::vector<uint32_t> deg;
    };
    CD cd{1, {{{1}}}, {1}, {0}};
    const int mu = -1;
    for (int step = 0; step < 3; ++step) {
        size_t d = cd.dim, nd = 2 * d;
        CD nx;
        nx.dim = nd;
        nx.table.assign(nd, std::vector<std::vector<int>>(nd, std::vector<int>(nd, 0)));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                for (size_t t = 0; t < d; ++t) {
                    int c = cd.table[i][j][t];
                    if (c == 0) continue;
                    // (a,0)(b,0) = (ab, 0)
                    nx.table[i][j][t] += c;
                    // (a,0)(0,b) = (0, b a)
                    nx.table[j][d + i][d + t] += c;
                    // (0,a)(b,0) = (0, a conj(b))
                    nx.table[d + i][j][d + t] += cd.conj[j] * c;
                    // (0,a)(0,b) = (mu conj(b) a, 0): here (a,b) = (j,i)
                    nx.table[d + j][d + i][t] += mu * cd.conj[i] * c;
                }
        nx.conj.assign(nd, -1);
        nx.deg.assign(nd, 0);
        for (size_t i = 0; i < d; ++i) {
            nx.conj[i] = cd.conj[i];
            nx.deg[i] = cd.deg[i];
            nx.deg[d + i] = cd.deg[i] | (1u << step);
        }
        cd = std::move(nx);
    }
    std::vector<std::vector<std::vector<Scalar>>> table(8, std::vector<std::vector<Scalar>>(8));
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j) {
            std::vector<Scalar> v(8, F->zero());
            for (size_t t = 0; t < 8; ++t) v[t] = F->from_int(cd.table[i][j][t]);
            table[i][j] = std::move(v);
        }
    OctonionResult res;
    res.algebra = Algebra::from_table(F, std::move(table), "octonions");
    IntMat rels = {{Int(2), Int(0), Int(0)}, {Int(0), Int(2), Int(0)}, {Int(0), Int(0), Int(2)}};
    auto G = AbGroup::from_presentation(3, rels);
    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (size_t i = 0; i < 8; ++i) {
        std::vector<Int> coords = {Int((cd.deg[i] >> 0) & 1), Int((cd.deg[i] >> 1) & 1),
                                   Int((cd.deg[i] >> 2) & 1)};
        std::vector<Scalar> e(8, F->zero());
        e[i] = F->one();
        comps.emplace_back(GroupElem{coords}, Subspace::span(F, 8, {e}));
    }
    res.grading = make_grading(res.algebra, G, std::move(comps));
    return res;
}

AlgebraPtr derivation_algebra(const AlgebraPtr& A) {
    if (A->dim() != A->ambient())
        throw LinAlgError("derivation_algebra: algebra must live on its full coordinate space");
    FieldPtr F = A->field();
    size_t d = A->ambient();
    std::vector<std::vector<std::vector<Scalar>>> c(d, std::vector<std::vector<Scalar>>(d));
    auto unit = [&](size_t i) {
        std::vector<Scalar> e(d, F->zero());
        e[i] = F->one();
        return e;
    };
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) c[i][j] = A->mul(unit(i), unit(j));
    std::vector<std::vector<Scalar>> rows;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t p = 0; p < d; ++p) {
                std::vector<Scalar> row(d * d, F->zero());
                bool nonzero = false;
                for (size_t q = 0; q < d; ++q) {
                    if (!c[i][j][q].is_zero()) {
                        row[p * d + q] = row[p * d + q] + c[i][j][q];
                        nonzero = true;
                    }
                    if (!c[q][j][p].is_zero()) {
                        row[q * d + i] = row[q * d + i] - c[q][j][p];
                        nonzero = true;
                    }
                    if (!c[i][q][p].is_zero()) {
                        row[q * d + j] = row[q * d + j] - c[i][q][p];
                        nonzero = true;
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    Subspace der = rows.empty() ? Subspace::full(F, d * d) : nullspace(Matrix::from_rows(F, rows));
    return Algebra::matrix_lie(F, d, der, "Der(" + A->name() + ")");
}

Grading induced_derivation_grading(const AlgebraPtr& A, const Grading& gA, const AlgebraPtr& der) {
    if (A->dim() != A->ambient())
        throw LinAlgError("induced_derivation_grading: algebra must live on its full coordinate space");
    FieldPtr F = A->field();
    size_t d = A->ambient();
    size_t dd = der->dim();
    std::vector<Matrix> derbasis;
    for (const auto& b : der->space().basis()) derbasis.push_back(Matrix::unflatten(F, d, d, b));

    std::vector<std::pair<GroupElem, Subspace>> comps;
    size_t total = 0;
    Subspace span_all(F, d * d);
    for (const auto& alpha : gA.group->all_elements()) {
        std::vector<std::vector<Scalar>> rows;
        for (const auto& [beta, sub] : gA.components) {
            const Subspace* target = gA.component_at(gA.group->add(alpha, beta));
            for (const auto& v : sub.basis()) {
                std::vector<std::vector<Scalar>> images;
                for (size_t l = 0; l < dd; ++l) {
                    std::vector<Scalar> w = derbasis[l].apply(v);
                    if (target) {
                        for (size_t kk = 0; kk < target->basis().size(); ++kk) {
                            Scalar cc = w[target->pivots()[kk]];
                            if (!cc.is_zero()) w = vec_sub(w, vec_scale(cc, target->basis()[kk]));
                        }
                    }
                    images.push_back(std::move(w));
                }
                for (size_t coord = 0; coord < d; ++coord) {
                    std::vector<Scalar> row(dd, F->zero());
                    bool nonzero = false;
                    for (size_t l = 0; l < dd; ++l) {
                        row[l] = images[l][coord];
                        nonzero = nonzero || !row[l].is_zero();
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
        Subspace coeffs = rows.empty() ? Subspace::full(F, dd) : nullspace(Matrix::from_rows(F, rows));
        if (coeffs.dim() == 0) continue;
        std::vector<std::vector<Scalar>> vecs;
        for (const auto& cvec : coeffs.basis()) {
            std::vector<Scalar> v(d * d, F->zero());
            for (size_t l = 0; l < dd; ++l)
                if (!cvec[l].is_zero()) v = vec_add(v, vec_scale(cvec[l], der->space().basis()[l]));
            vecs.push_back(std::move(v));
        }
        Subspace piece = Subspace::span(F, d * d, vecs);
        total += piece.dim();
        span_all = span_all.sum_with(piece);
        comps.emplace_back(alpha, std::move(piece));
    }
    if (total != dd || span_all.dim() != dd)
        throw NotAGradingError("induced_derivation_grading: graded pieces do not span the derivations");
    return make_grading(der, gA.group, std::move(comps));
}

} // namespace liegrad
