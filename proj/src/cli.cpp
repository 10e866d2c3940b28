#include "liegrad/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "liegrad/json_io.hpp"

namespace liegrad {

namespace {

OrderedJson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    OrderedJson j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const OrderedJson& j, const std::string& out_path, std::ostream& out) {
    std::string text = dump_json(j);
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write file: " + out_path);
        f << text;
    }
}

ActionMode parse_mode(const std::string& mode) {
    if (mode == "full") return ActionMode::FullSymplectic;
    if (mode == "signed") return ActionMode::SignPreserving;
    throw Error("unknown --mode \"" + mode + "\" (expected full or signed)");
}

AlgebraFamily parse_family(const std::string& alg) {
    if (alg == "sl") return AlgebraFamily::SL;
    if (alg == "so") return AlgebraFamily::SO;
    if (alg == "sp") return AlgebraFamily::SP;
    throw Error("unknown --algebra \"" + alg + "\" (expected sl, so, or sp)");
}

Grading construct_grading(const std::string& desc_text, int n_flag) {
    Descriptor desc = Descriptor::parse(desc_text);
    if (n_flag > 0 && n_flag != desc.n())
        throw Error("--n " + std::to_string(n_flag) + " does not match the descriptor (n = " +
                    std::to_string(desc.n()) + ")");
    switch (desc.kind) {
    case Kind::SlInner: {
        auto res = inner_grading(default_field_for(desc), desc);
        return universal_group(res.on_sl).grading;
    }
    case Kind::SlOuter:
        return outer_grading_sl(desc).fine;
    case Kind::Ortho:
    case Kind::Sympl:
        return skew_grading(desc).fine_universal;
    }
    throw Error("construct: unreachable");
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact constructions and classification of fine gradings on sl_n, so_n, sp_n"};
    app.require_subcommand(1);

    std::string algebra, desc_text, out_path, in_path, a_path, b_path, mode_s = "full", format = "json";
    int n_flag = 0, max_m = 3, max_n = 16;

    auto* c_classify = app.add_subcommand("classify", "enumerate the fine grading classes of an algebra");
    c_classify->add_option("--algebra", algebra, "sl, so, or sp")->required();
    c_classify->add_option("--n", n_flag, "matrix size")->required();
    c_classify->add_option("--mode", mode_s, "label action mode: full or signed");
    c_classify->add_option("--max-m", max_m, "largest tensor exponent to enumerate");
    c_classify->add_option("--max-n", max_n, "largest n accepted");
    c_classify->add_option("--out", out_path, "write JSON here instead of stdout");
    c_classify->add_option("--format", format, "output format (json)");

    auto* c_construct = app.add_subcommand("construct", "construct one grading from a descriptor");
    c_construct->add_option("--desc", desc_text, "descriptor text form")->required();
    c_construct->add_option("--n", n_flag, "expected matrix size (cross-check)");
    c_construct->add_option("--out", out_path, "write JSON here instead of stdout");
    c_construct->add_option("--format", format, "output format (json)");

    auto* c_export = app.add_subcommand("export", "construct a grading and write it to a file");
    c_export->add_option("--desc", desc_text, "descriptor text form")->required();
    c_export->add_option("--n", n_flag, "expected matrix size (cross-check)");
    c_export->add_option("--out", out_path, "output path")->required();
    c_export->add_option("--format", format, "output format (json)");

    auto* c_verify = app.add_subcommand("verify", "re-check the grading axioms of a grading file");
    c_verify->add_option("--in", in_path, "grading JSON file")->required();
    c_verify->add_option("--format", format, "output format (json)");

    auto* c_refines = app.add_subcommand("refines", "compare two grading files for refinement");
    c_refines->add_option("--a", a_path, "first grading JSON file")->required();
    c_refines->add_option("--b", b_path, "second grading JSON file")->required();
    c_refines->add_option("--out", out_path, "write JSON here instead of stdout");
    c_refines->add_option("--format", format, "output format (json)");

    auto* c_profile = app.add_subcommand("profile", "component dimension profile of a grading");
    c_profile->add_option("--desc", desc_text, "descriptor text form");
    c_profile->add_option("--in", in_path, "grading JSON file");
    c_profile->add_option("--out", out_path, "write JSON here instead of stdout");
    c_profile->add_option("--format", format, "output format (json)");

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    std::string prog = "liegrad";
    argv.push_back(prog.data());
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (format != "json") throw Error("unsupported --format \"" + format + "\"");
        if (c_classify->parsed()) {
            Catalog cat = classify_algebra(parse_family(algebra), n_flag, parse_mode(mode_s), max_m, max_n);
            emit(catalog_to_json(cat), out_path, out);
            return 0;
        }
        if (c_construct->parsed() || c_export->parsed()) {
            Grading g = construct_grading(desc_text, n_flag);
            emit(grading_to_json(g), out_path, out);
            return 0;
        }
        if (c_verify->parsed()) {
            Grading g = grading_from_json(load_json_file(in_path));
            VerifyReport rep = verify_grading(g);
            OrderedJson j;
            j["ok"] = rep.ok;
            j["message"] = rep.ok ? "grading axioms hold" : rep.message;
            emit(j, out_path, out);
            return rep.ok ? 0 : 1;
        }
        if (c_refines->parsed()) {
            Grading a = grading_from_json(load_json_file(a_path));
            Grading b = grading_from_json(load_json_file(b_path));
            bool ab = is_refinement(a, b);
            bool ba = is_refinement(b, a);
            OrderedJson j;
            j["a_refines_b"] = ab;
            j["b_refines_a"] = ba;
            j["same_components"] = ab && ba;
            emit(j, out_path, out);
            return 0;
        }
        if (c_profile->parsed()) {
            if (desc_text.empty() == in_path.empty())
                throw Error("profile: exactly one of --desc or --in is required");
            Grading g = desc_text.empty() ? grading_from_json(load_json_file(in_path))
                                          : construct_grading(desc_text, 0);
            OrderedJson j;
            j["group"] = group_to_json(*g.group);
            j["profile"] = component_profile(g);
            emit(j, out_path, out);
            return 0;
        }
    } catch (const DescriptorError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace liegrad
