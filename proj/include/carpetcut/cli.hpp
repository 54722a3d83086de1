#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carpetcut/decider.hpp"
#include "carpetcut/fragility.hpp"
#include "carpetcut/hata.hpp"
#include "carpetcut/io.hpp"
#include "carpetcut/presets.hpp"

namespace carpetcut {

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::BadParameter, "cannot write " + path);
    f << text;
}

inline const char* yes_no(bool b) { return b ? "true" : "false"; }

} // namespace detail

/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cut points, fragility and Hata graphs of generalized Sierpinski carpets", "carpetcut"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t max_vertices = kDefaultMaxVertices;
    app.add_option("--max-vertices", max_vertices, "vertex cap for explicit Hata graphs")->capture_default_str();

    std::string spec_arg;
    std::size_t level = 1;
    std::string dot_path;
    std::string edges_path;
    std::string out_path;
    std::string x_text;
    std::string y_text;
    std::vector<std::string> mark_texts;
    bool list = false;

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("spec", spec_arg, "spec file or preset:NAME")->required();
    };
    auto add_level = [&](CLI::App* sub) { sub->add_option("--level", level, "word length n")->required(); };

    auto* validate = app.add_subcommand("validate", "check a spec and print its size");
    add_spec(validate);
    auto* analyze = app.add_subcommand("analyze", "connectivity, fragility and verdict summary");
    add_spec(analyze);
    auto* hata = app.add_subcommand("hata", "build the Hata graph at one level");
    add_spec(hata);
    add_level(hata);
    hata->add_option("--dot", dot_path, "write the graph as DOT text");
    hata->add_option("--edges", edges_path, "write the edge list, one 'u v' pair per line");
    auto* chi_cmd = app.add_subcommand("chi", "chi and long-tail flags at one level");
    add_spec(chi_cmd);
    add_level(chi_cmd);
    auto* essential = app.add_subcommand("essential", "cut vertices with component sizes and essentiality");
    add_spec(essential);
    add_level(essential);
    auto* decide = app.add_subcommand("decide", "decide whether the carpet has cut points");
    add_spec(decide);
    auto* cut = app.add_subcommand("is-cut-point", "test one rational point");
    add_spec(cut);
    cut->add_option("--x", x_text, "x coordinate as P/Q")->required();
    cut->add_option("--y", y_text, "y coordinate as P/Q")->required();
    auto* render = app.add_subcommand("render", "write the level-n approximation as SVG");
    add_spec(render);
    add_level(render);
    render->add_option("--out", out_path, "output SVG path")->required();
    render->add_option("--mark", mark_texts, "point x,y to mark (repeatable)");
    auto* presets = app.add_subcommand("presets", "named digit sets");
    presets->add_flag("--list", list, "list preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (presets->parsed()) {
            if (!list) {
                err << presets->help();
                return 2;
            }
            for (const auto& name : preset_names()) out << name << "\n";
            return 0;
        }
        const GscSpec spec = load_spec(spec_arg);
        if (validate->parsed()) {
            out << "valid n=" << spec.base() << " digits=" << spec.size() << "\n";
        } else if (analyze->parsed()) {
            out << "n=" << spec.base() << "\n";
            out << "digits=" << join_digits(spec.digits()) << "\n";
            const bool connected = is_connected_gsc(spec);
            out << "connected=" << detail::yes_no(connected) << "\n";
            if (connected) {
                const auto w = fragility_witness(spec);
                out << "fragile=" << detail::yes_no(w.has_value());
                if (w) out << " point=" << to_string(w->point);
                out << "\n";
            }
            out << "verdict=" << format_verdict(decide_cut_points(spec));
        } else if (hata->parsed()) {
            const HataGraph g(spec, level, max_vertices);
            out << "level=" << g.level() << " vertices=" << g.vertex_count() << " edges=" << g.edge_count()
                << " connected=" << detail::yes_no(g.connected()) << " cut_vertices=" << g.cut_vertices().size()
                << "\n";
            if (!dot_path.empty()) detail::write_file(dot_path, export_graph_text(g));
            if (!edges_path.empty()) detail::write_file(edges_path, export_edge_list(g));
        } else if (chi_cmd->parsed()) {
            const HataGraph g(spec, level, max_vertices);
            out << "level=" << level << " chi=" << chi(g);
            if (level >= 2) {
                const LongTail t = has_long_tail(spec, level, max_vertices);
                out << " long_tail=" << detail::yes_no(t.general) << " long_tail_strict=" << detail::yes_no(t.strict);
            }
            out << "\n";
        } else if (essential->parsed()) {
            std::vector<CellWord> chosen;
            for (const auto& r : essential_cut_vertices(spec, level, max_vertices)) {
                out << "cut_vertex=" << to_string(r.vertex) << " components=";
                for (std::size_t k = 0; k < r.component_sizes.size(); ++k) {
                    out << (k ? "," : "") << r.component_sizes[k];
                }
                out << " essential=" << detail::yes_no(r.essential) << "\n";
                if (r.essential) chosen.push_back(r.vertex);
            }
            out << "essential=" << join_words(chosen) << "\n";
        } else if (decide->parsed()) {
            out << format_verdict(decide_cut_points(spec));
        } else if (cut->parsed()) {
            const RationalPoint p{parse_rational(x_text), parse_rational(y_text)};
            out << detail::yes_no(is_cut_point(spec, p)) << "\n";
        } else if (render->parsed()) {
            std::vector<RationalPoint> marks;
            for (const auto& m : mark_texts) marks.push_back(parse_point(m));
            detail::write_file(out_path, render_svg(spec, level, marks, max_vertices));
            out << "wrote " << out_path << "\n";
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace carpetcut
