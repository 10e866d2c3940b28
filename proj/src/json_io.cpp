#include "liegrad/json_io.hpp"

namespace liegrad {

OrderedJson scalar_to_json(const Scalar& s) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& c : s.to_strings()) arr.push_back(c);
    return arr;
}

Scalar scalar_from_json(const FieldPtr& F, const OrderedJson& j) {
    std::vector<std::string> strs;
    for (const auto& c : j) strs.push_back(c.get<std::string>());
    return F->from_strings(strs);
}

OrderedJson group_to_json(const AbGroup& g) {
    OrderedJson out;
    out["rank"] = g.rank();
    OrderedJson tor = OrderedJson::array();
    for (const auto& d : g.torsion()) tor.push_back(d.get_str());
    out["torsion"] = tor;
    return out;
}

namespace {

OrderedJson vector_to_json(const std::vector<Scalar>& v) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& s : v) arr.push_back(scalar_to_json(s));
    return arr;
}

std::vector<Scalar> vector_from_json(const FieldPtr& F, const OrderedJson& j) {
    std::vector<Scalar> v;
    for (const auto& e : j) v.push_back(scalar_from_json(F, e));
    return v;
}

OrderedJson degree_to_json(const GroupElem& e) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& c : e.coords) arr.push_back(c.get_str());
    return arr;
}

GroupElem degree_from_json(const OrderedJson& j) {
    GroupElem e;
    for (const auto& c : j) e.coords.emplace_back(c.get<std::string>());
    return e;
}

} // namespace

OrderedJson grading_to_json(const Grading& g) {
    const Algebra& alg = *g.algebra;
    OrderedJson out;
    out["field"] = {{"conductor", alg.field()->conductor()}};
    OrderedJson ja;
    ja["name"] = alg.name();
    ja["matrix_size"] = alg.matrix_size();
    ja["product"] = alg.kind() == ProductKind::Associative ? "associative" : "bracket";
    ja["dim"] = alg.dim();
    OrderedJson abasis = OrderedJson::array();
    for (const auto& b : alg.space().basis()) abasis.push_back(vector_to_json(b));
    ja["basis"] = abasis;
    out["algebra"] = ja;
    out["group"] = group_to_json(*g.group);
    OrderedJson comps = OrderedJson::array();
    for (const auto& [deg, sub] : g.components) {
        OrderedJson jc;
        jc["degree"] = degree_to_json(deg);
        jc["dim"] = sub.dim();
        OrderedJson basis = OrderedJson::array();
        for (const auto& b : sub.basis()) basis.push_back(vector_to_json(b));
        jc["basis"] = basis;
        comps.push_back(jc);
    }
    out["components"] = comps;
    return out;
}

Grading grading_from_json(const OrderedJson& j) {
    FieldPtr F = Field::make(j.at("field").at("conductor").get<unsigned long>());
    const auto& ja = j.at("algebra");
    size_t n = ja.at("matrix_size").get<size_t>();
    std::string product = ja.at("product").get<std::string>();
    if (ja.at("basis").empty()) throw Error("grading json: empty algebra basis");
    std::vector<std::vector<Scalar>> abasis;
    for (const auto& b : ja.at("basis")) abasis.push_back(vector_from_json(F, b));
    Subspace space = Subspace::span(F, n * n, abasis);
    AlgebraPtr alg;
    std::string name = ja.value("name", "algebra");
    if (product == "associative")
        alg = Algebra::matrix_assoc_sub(F, n, space, name);
    else if (product == "bracket")
        alg = Algebra::matrix_lie(F, n, space, name);
    else
        throw Error("grading json: unknown product kind \"" + product + "\"");

    const auto& jg = j.at("group");
    long rank = jg.at("rank").get<long>();
    IntMat rels;
    size_t t = jg.at("torsion").size();
    size_t ngens = static_cast<size_t>(rank) + t;
    for (size_t i = 0; i < t; ++i) {
        std::vector<Int> row(ngens, Int(0));
        row[static_cast<size_t>(rank) + i] = Int(jg.at("torsion")[i].get<std::string>());
        rels.push_back(std::move(row));
    }
    auto G = AbGroup::from_presentation(ngens, rels);

    std::vector<std::pair<GroupElem, Subspace>> comps;
    for (const auto& jc : j.at("components")) {
        GroupElem deg = degree_from_json(jc.at("degree"));
        if (deg.coords.size() != G->coord_count()) throw Error("grading json: degree arity mismatch");
        std::vector<std::vector<Scalar>> basis;
        for (const auto& b : jc.at("basis")) basis.push_back(vector_from_json(F, b));
        comps.emplace_back(G->reduce(deg), Subspace::span(F, n * n, basis));
    }
    return make_grading(alg, G, std::move(comps));
}

OrderedJson record_to_json(const ClassRecord& r) {
    OrderedJson out;
    out["descriptor"] = r.rep.to_text();
    OrderedJson jg;
    jg["rank"] = r.group.rank;
    OrderedJson tor = OrderedJson::array();
    for (const auto& d : r.group.torsion) tor.push_back(d.get_str());
    jg["torsion"] = tor;
    out["group"] = jg;
    out["iso"] = r.group.to_string();
    out["profile"] = r.profile;
    out["class_size"] = r.class_size;
    out["mode"] = action_mode_to_string(r.mode);
    return out;
}

OrderedJson catalog_to_json(const Catalog& c) {
    OrderedJson out;
    switch (c.family) {
    case AlgebraFamily::SL: out["algebra"] = "sl"; break;
    case AlgebraFamily::SO: out["algebra"] = "so"; break;
    case AlgebraFamily::SP: out["algebra"] = "sp"; break;
    }
    out["n"] = c.n;
    out["mode"] = action_mode_to_string(c.mode);
    out["class_count"] = c.total();
    OrderedJson classes = OrderedJson::array();
    for (const auto& r : c.inner) classes.push_back(record_to_json(r));
    for (const auto& r : c.outer) classes.push_back(record_to_json(r));
    out["classes"] = classes;
    OrderedJson notes = OrderedJson::array();
    for (const auto& s : c.notes) notes.push_back(s);
    out["notes"] = notes;
    out["fingerprint_semantics"] = "group and profile agreement is a necessary condition for "
                                   "equivalence, not a decision procedure";
    return out;
}

std::string dump_json(const OrderedJson& j) { return j.dump(2) + "\n"; }

} // namespace liegrad
