#include "liegrad/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace liegrad {

std::string action_mode_to_string(ActionMode m) {
    return m == ActionMode::FullSymplectic ? "full" : "signed";
}

namespace {

size_t label_space(int m) { return size_t(1) << (2 * m); }

bool label_valid_for(Kind kind, uint32_t bits, int m) {
    if (kind == Kind::Ortho) return label_q(Label{bits}, m) == 0;
    if (kind == Kind::Sympl) return label_q(Label{bits}, m) == 1;
    return true;
}

bool translation_allowed(Kind kind, uint32_t t, int m) {
    if (kind == Kind::Ortho || kind == Kind::Sympl) return label_q(Label{t}, m) == 0;
    return true;
}

std::vector<std::vector<uint32_t>> all_multisets(int m, int r) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur;
    size_t L = label_space(m);
    // nondecreasing sequences of length r over 0..L-1
    std::function<void(uint32_t)> rec = [&](uint32_t from) {
        if (cur.size() == static_cast<size_t>(r)) {
            out.push_back(cur);
            return;
        }
        for (uint32_t v = from; v < L; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<uint32_t> apply_perm(const std::vector<uint32_t>& perm, std::vector<uint32_t> ms) {
    for (auto& x : ms) x = perm[x];
    std::sort(ms.begin(), ms.end());
    return ms;
}

std::vector<uint32_t> translate(std::vector<uint32_t> ms, uint32_t t) {
    for (auto& x : ms) x ^= t;
    std::sort(ms.begin(), ms.end());
    return ms;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t(0)); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<std::vector<uint32_t>> transvection_generators(int m, ActionMode mode) {
    size_t L = label_space(m);
    std::vector<std::vector<uint32_t>> gens;
    for (uint32_t v = 1; v < L; ++v) {
        if (mode == ActionMode::SignPreserving && label_q(Label{v}, m) != 1) continue;
        std::vector<uint32_t> perm(L);
        for (uint32_t x = 0; x < L; ++x)
            perm[x] = label_beta(Label{x}, Label{v}, m) ? (x ^ v) : x;
        gens.push_back(std::move(perm));
    }
    if (mode == ActionMode::SignPreserving) {
        // tensor-factor swaps: sign-preserving transvections alone generate
        // only an index-2 subgroup of the plus-type orthogonal group in
        // dimension 4 over F2
        for (int i = 0; i + 1 < m; ++i) {
            std::vector<uint32_t> perm(L);
            for (uint32_t x = 0; x < L; ++x) {
                uint32_t lo = (x >> (2 * i)) & 3u, hi = (x >> (2 * i + 2)) & 3u;
                uint32_t y = x & ~(15u << (2 * i));
                perm[x] = y | (hi << (2 * i)) | (lo << (2 * i + 2));
            }
            gens.push_back(std::move(perm));
        }
    }
    if (gens.empty()) {
        std::vector<uint32_t> id(L);
        std::iota(id.begin(), id.end(), 0u);
        gens.push_back(std::move(id));
    }
    return gens;
}

std::vector<std::vector<uint32_t>> symplectic_group_elements(int m, ActionMode mode) {
    size_t L = label_space(m);
    std::vector<uint32_t> id(L);
    std::iota(id.begin(), id.end(), 0u);
    std::set<std::vector<uint32_t>> seen = {id};
    std::vector<std::vector<uint32_t>> queue = {id};
    auto gens = transvection_generators(m, mode);
    for (size_t head = 0; head < queue.size(); ++head) {
        std::vector<uint32_t> cur = queue[head];
        for (const auto& g : gens) {
            std::vector<uint32_t> nxt(L);
            for (uint32_t x = 0; x < L; ++x) nxt[x] = g[cur[x]];
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    return queue;
}

const LabelClassifier::OrbitTable& LabelClassifier::orbit_table(int m, int r, ActionMode mode) {
    auto key = std::make_tuple(m, r, static_cast<int>(mode));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    OrbitTable tab;
    auto universe = all_multisets(m, r);
    auto gens = transvection_generators(m, mode);
    for (const auto& ms : universe) {
        if (tab.orbit_of.count(ms)) continue;
        size_t id = tab.members.size();
        tab.members.push_back({});
        std::vector<std::vector<uint32_t>> queue = {ms};
        tab.orbit_of[ms] = id;
        for (size_t head = 0; head < queue.size(); ++head) {
            std::vector<uint32_t> cur = queue[head];
            tab.members[id].push_back(cur);
            for (const auto& g : gens) {
                auto nxt = apply_perm(g, cur);
                if (!tab.orbit_of.count(nxt)) {
                    tab.orbit_of[nxt] = id;
                    queue.push_back(nxt);
                }
            }
        }
        std::sort(tab.members[id].begin(), tab.members[id].end());
    }
    return cache_.emplace(key, std::move(tab)).first->second;
}

std::vector<std::vector<std::vector<Label>>> LabelClassifier::classes(Kind kind, int m, int r,
                                                                      ActionMode mode) {
    const OrbitTable& tab = orbit_table(m, r, mode);
    std::vector<std::vector<uint32_t>> valid;
    for (const auto& [ms, id] : tab.orbit_of) {
        bool ok = true;
        for (uint32_t x : ms) ok = ok && label_valid_for(kind, x, m);
        if (ok) valid.push_back(ms);
    }
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < valid.size(); ++i) index[valid[i]] = i;

    // first valid member of each orbit
    std::vector<long> first_valid(tab.members.size(), -1);
    for (size_t id = 0; id < tab.members.size(); ++id)
        for (const auto& ms : tab.members[id]) {
            auto it = index.find(ms);
            if (it != index.end()) {
                first_valid[id] = static_cast<long>(it->second);
                break;
            }
        }

    UnionFind uf(valid.size());
    // valid members of one symplectic orbit are mutually reachable (t = 0)
    for (size_t id = 0; id < tab.members.size(); ++id) {
        long anchor = first_valid[id];
        if (anchor < 0) continue;
        for (const auto& ms : tab.members[id]) {
            auto it = index.find(ms);
            if (it != index.end()) uf.unite(static_cast<size_t>(anchor), it->second);
        }
    }
    size_t L = label_space(m);
    for (size_t i = 0; i < valid.size(); ++i) {
        for (uint32_t t = 0; t < L; ++t) {
            if (!translation_allowed(kind, t, m)) continue;
            auto shifted = translate(valid[i], t);
            size_t oid = tab.orbit_of.at(shifted);
            if (first_valid[oid] >= 0) uf.unite(i, static_cast<size_t>(first_valid[oid]));
        }
    }
    std::map<size_t, std::vector<std::vector<uint32_t>>> grouped;
    for (size_t i = 0; i < valid.size(); ++i) grouped[uf.find(i)].push_back(valid[i]);
    std::vector<std::vector<std::vector<Label>>> out;
    for (auto& [root, members] : grouped) {
        std::sort(members.begin(), members.end());
        std::vector<std::vector<Label>> cls;
        for (const auto& ms : members) {
            std::vector<Label> labs;
            for (uint32_t x : ms) labs.push_back(Label{x});
            cls.push_back(std::move(labs));
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool LabelClassifier::equivalent(const Descriptor& a, const Descriptor& b, ActionMode mode) {
    if (a.kind != b.kind) throw DescriptorError("descriptor_equivalent: kind mismatch");
    if (a.kind == Kind::SlInner)
        return a.m == b.m && a.prime_powers == b.prime_powers;
    if (a.m != b.m || a.s != b.s || a.r() != b.r()) return false;
    if (a.r() == 0) return true;
    ActionMode use = mode;
    auto cls = classes(a.kind, a.m, a.r(), use);
    auto find_class = [&](const Descriptor& d) -> long {
        std::vector<Label> labs = d.d;
        std::sort(labs.begin(), labs.end());
        for (size_t i = 0; i < cls.size(); ++i)
            for (const auto& member : cls[i])
                if (member == labs) return static_cast<long>(i);
        return -1;
    };
    long ca = find_class(a), cb = find_class(b);
    if (ca < 0 || cb < 0) throw DescriptorError("descriptor_equivalent: invalid labels for kind");
    return ca == cb;
}

Descriptor LabelClassifier::canonical(const Descriptor& d, ActionMode mode) {
    if (d.kind == Kind::SlInner) return d;
    if (d.r() == 0) return d;
    auto cls = classes(d.kind, d.m, d.r(), mode);
    std::vector<Label> labs = d.d;
    std::sort(labs.begin(), labs.end());
    for (const auto& c : cls)
        for (const auto& member : c)
            if (member == labs) {
                Descriptor rep = d;
                rep.d = c.front();
                return rep;
            }
    throw DescriptorError("canonical: labels not valid for kind");
}

std::vector<std::vector<std::vector<Label>>> oracle_partition(Kind kind, int m, int r, ActionMode mode) {
    auto universe = all_multisets(m, r);
    std::vector<std::vector<uint32_t>> valid;
    for (const auto& ms : universe) {
        bool ok = true;
        for (uint32_t x : ms) ok = ok && label_valid_for(kind, x, m);
        if (ok) valid.push_back(ms);
    }
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < valid.size(); ++i) index[valid[i]] = i;

    auto group = symplectic_group_elements(m, mode);
    // valid images of each multiset under the whole group, computed lazily
    std::map<std::vector<uint32_t>, std::vector<size_t>> image_cache;
    auto valid_images = [&](const std::vector<uint32_t>& ms) -> const std::vector<size_t>& {
        auto it = image_cache.find(ms);
        if (it != image_cache.end()) return it->second;
        std::set<size_t> hits;
        for (const auto& g : group) {
            auto img = apply_perm(g, ms);
            auto f = index.find(img);
            if (f != index.end()) hits.insert(f->second);
        }
        return image_cache.emplace(ms, std::vector<size_t>(hits.begin(), hits.end())).first->second;
    };

    UnionFind uf(valid.size());
    size_t L = label_space(m);
    for (size_t i = 0; i < valid.size(); ++i)
        for (uint32_t t = 0; t < L; ++t) {
            if (!translation_allowed(kind, t, m)) continue;
            for (size_t j : valid_images(translate(valid[i], t))) uf.unite(i, j);
        }
    std::map<size_t, std::vector<std::vector<uint32_t>>> grouped;
    for (size_t i = 0; i < valid.size(); ++i) grouped[uf.find(i)].push_back(valid[i]);
    std::vector<std::vector<std::vector<Label>>> out;
    for (auto& [root, members] : grouped) {
        std::sort(members.begin(), members.end());
        std::vector<std::vector<Label>> cls;
        for (const auto& ms : members) {
            std::vector<Label> labs;
            for (uint32_t x : ms) labs.push_back(Label{x});
            cls.push_back(std::move(labs));
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<Descriptor> enumerate_inner_sl(int n) {
    if (n < 3) throw DescriptorError("enumerate_inner_sl: n >= 3 required");
    std::vector<Descriptor> out;
    // prime powers dividing n
    std::vector<long> pps;
    for (long q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        long f = 2;
        while (f * f <= q && q % f != 0) ++f;
        if (f * f > q) f = q;
        long t = q;
        while (t % f == 0) t /= f;
        if (t == 1) pps.push_back(q);
    }

    std::vector<long> cur;
    std::function<void(size_t, long)> rec = [&](size_t from, long prod) {
        if (n % prod == 0) {
            Descriptor d;
            d.kind = Kind::SlInner;
            d.m = static_cast<int>(n / prod);
            d.prime_powers = cur;
            bool all_two = !cur.empty() && std::all_of(cur.begin(), cur.end(), [](long x) { return x == 2; });
            if (!(all_two && d.m < 3)) out.push_back(d);
        }
        for (size_t i = from; i < pps.size(); ++i) {
            if (prod * pps[i] > n || n % (prod * pps[i]) != 0) continue;
            cur.push_back(pps[i]);
            rec(i, prod * pps[i]);
            cur.pop_back();
        }
    };
    rec(0, 1);
    std::sort(out.begin(), out.end(), [](const Descriptor& a, const Descriptor& b) {
        if (a.m != b.m) return a.m > b.m;
        return a.prime_powers < b.prime_powers;
    });
    return out;
}

namespace {

ClassRecord build_record(const Descriptor& rep, size_t class_size, ActionMode mode) {
    auto [iso, prof] = fingerprint(rep);
    return ClassRecord{rep, iso, prof, class_size, mode};
}

std::vector<ClassRecord> enumerate_outer(Kind kind, int n, ActionMode mode, int max_m) {
    std::vector<ClassRecord> out;
    LabelClassifier lc;
    for (int m = 0; m <= max_m; ++m) {
        long block = 1L << m;
        if (n % block != 0) continue;
        int kq = static_cast<int>(n / block);
        for (int s = kq / 2; s >= 0; --s) {
            int r = kq - 2 * s;
            if (r == 0) {
                Descriptor d;
                d.kind = kind;
                d.m = m;
                d.s = s;
                d.validate();
                out.push_back(build_record(d, 1, mode));
                continue;
            }
            for (const auto& cls : lc.classes(kind, m, r, mode)) {
                Descriptor d;
                d.kind = kind;
                d.m = m;
                d.s = s;
                d.d = cls.front();
                if (s == 0 && r == 2 && d.d[0] == d.d[1]) continue; // not fine
                d.validate();
                out.push_back(build_record(d, cls.size(), mode));
            }
        }
    }
    return out;
}

} // namespace

std::vector<ClassRecord> enumerate_outer_sl(int n, int max_m) {
    if (n < 3) throw DescriptorError("enumerate_outer_sl: n >= 3 required");
    return enumerate_outer(Kind::SlOuter, n, ActionMode::FullSymplectic, max_m);
}

std::vector<ClassRecord> enumerate_skew(int n, int eps, ActionMode mode, int max_m) {
    if (n < 5) throw DescriptorError("enumerate_skew: n >= 5 required");
    if (eps != 1 && eps != -1) throw DescriptorError("enumerate_skew: eps must be +1 or -1");
    if (eps == -1 && n % 2 != 0) throw DescriptorError("enumerate_skew: symplectic case requires even n");
    return enumerate_outer(eps == 1 ? Kind::Ortho : Kind::Sympl, n, mode, max_m);
}

bool descriptor_equivalent(const Descriptor& a, const Descriptor& b, ActionMode mode) {
    LabelClassifier lc;
    return lc.equivalent(a, b, mode);
}

std::pair<IsoType, std::vector<size_t>> fingerprint(const Descriptor& d) {
    d.validate();
    switch (d.kind) {
    case Kind::SlInner: {
        auto F = default_field_for(d);
        auto res = inner_grading(F, d);
        auto u = universal_group(res.on_sl);
        return {u.group->iso_type(), component_profile(u.grading)};
    }
    case Kind::SlOuter: {
        auto res = outer_grading_sl(d);
        return {res.universal->iso_type(), component_profile(res.fine)};
    }
    case Kind::Ortho:
    case Kind::Sympl: {
        auto res = skew_grading(d);
        return {res.universal->iso_type(), component_profile(res.fine_universal)};
    }
    }
    throw Error("fingerprint: unreachable");
}

Catalog classify_algebra(AlgebraFamily family, int n, ActionMode mode, int max_m, int max_n) {
    Catalog cat;
    cat.family = family;
    cat.n = n;
    cat.mode = mode;
    if (n > max_n)
        throw DescriptorError("classify: n = " + std::to_string(n) + " exceeds the cap " +
                              std::to_string(max_n) + " (raise --max-n)");
    switch (family) {
    case AlgebraFamily::SL: {
        if (n < 2) throw DescriptorError("classify sl: n >= 2 required");
        if (n == 2) {
            // the two fine gradings of sl_2: Cartan (by Z) and Pauli (by Z2^2)
            Descriptor cart;
            cart.kind = Kind::SlInner;
            cart.m = 2;
            Descriptor pli;
            pli.kind = Kind::SlInner;
            pli.m = 1;
            pli.prime_powers = {2};
            cat.inner.push_back(build_record(cart, 1, mode));
            cat.inner.push_back(build_record(pli, 1, mode));
            return cat;
        }
        for (const auto& d : enumerate_inner_sl(n)) cat.inner.push_back(build_record(d, 1, mode));
        cat.outer = enumerate_outer_sl(n, max_m);
        return cat;
    }
    case AlgebraFamily::SO: {
        if (n < 5) throw DescriptorError("classify so: n >= 5 required");
        if (n == 6)
            throw DescriptorError("classify so: so_6 is isomorphic to sl_4; classify sl 4 instead");
        cat.outer = enumerate_skew(n, +1, mode, max_m);
        if (n == 8)
            cat.notes.push_back("so_8: classes counted with respect to the matrix-involution "
                                "realization; triality identifications and the extra order-3 "
                                "families are out of scope");
        return cat;
    }
    case AlgebraFamily::SP: {
        if (n < 6 || n % 2 != 0) throw DescriptorError("classify sp: even n >= 6 required");
        cat.outer = enumerate_skew(n, -1, mode, max_m);
        return cat;
    }
    }
    throw Error("classify_algebra: unreachable");
}

} // namespace liegrad
