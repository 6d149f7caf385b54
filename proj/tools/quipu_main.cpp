#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quipu/filtration.hpp"
#include "quipu/render.hpp"

using namespace quipu;

namespace {

int exit_code(FiltrationResult::Kind k) {
    switch (k) {
        case FiltrationResult::Kind::Halt: return 0;
        case FiltrationResult::Kind::Grid: return 2;
        case FiltrationResult::Kind::Inconclusive: return 3;
        case FiltrationResult::Kind::NotConfluent: return 4;
    }
    return 1;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temperature-1 tile assembly analysis"};
    app.require_subcommand(1);

    std::string tas_path, quipu_path, out_path, dot_path, svg_path;
    std::int64_t window_half = 16;
    std::int64_t margin = -1;
    int cap = 12;
    std::string order = "SEWN";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("tas", tas_path, "TAS document (JSON)")->required();
        sub->add_option("--window", window_half, "window half size (default 16)");
        sub->add_option("--margin", margin, "growth margin (default max(cap, 8))");
    };

    CLI::App* build = app.add_subcommand("build", "run the quipu filtration");
    add_common(build);
    build->add_option("--cap", cap, "max |m|+|p| before Inconclusive (default 12)");
    build->add_option("--order", order, "direction order (default SEWN)");
    build->add_option("--out", out_path, "write the quipu document here");
    build->add_option("--dot", dot_path, "write a DOT rendering here");

    CLI::App* simulate = app.add_subcommand("simulate", "grow the maximal assembly");
    add_common(simulate);
    simulate->add_option("--svg", svg_path, "write an SVG rendering here");

    CLI::App* verify = app.add_subcommand("verify", "compare a quipu against the assembly");
    add_common(verify);
    verify->add_option("quipu", quipu_path, "quipu document (JSON)")->required();

    CLI::App* checkc = app.add_subcommand("check-confluence", "search a confluence violation");
    add_common(checkc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        TAS tas = load_tas_file(tas_path);
        Window window = Window::square(window_half);
        window.margin = margin >= 0 ? margin : std::max<std::int64_t>(cap, 8);

        if (build->parsed()) {
            FiltrationConfig cfg;
            cfg.window = window;
            cfg.cap = cap;
            cfg.dir_order = DirOrder::parse(order);
            FiltrationResult res = run_filtration(tas, cfg);
            std::string doc = result_to_json(res);
            if (out_path.empty())
                std::cout << doc;
            else
                write_file(out_path, doc);
            if (!dot_path.empty() && res.kind != FiltrationResult::Kind::NotConfluent)
                write_file(dot_path, quipu_to_dot(res.quipu));
            return exit_code(res.kind);
        }

        if (simulate->parsed()) {
            GrowResult grown = grow_max(tas, window);
            if (const auto* w = std::get_if<ConfluenceWitness>(&grown)) {
                nlohmann::ordered_json j;
                j["confluent"] = false;
                j["witness"] = {{"point", {w->point.x, w->point.y}},
                                {"tiles", {w->tile_a, w->tile_b}}};
                std::cout << j.dump(2) << "\n";
                return 4;
            }
            const Assembly& a = std::get<Assembly>(grown);
            nlohmann::ordered_json j;
            j["tiles"] = nlohmann::ordered_json::array();
            for (const auto& [pos, name] : a.tiles)
                j["tiles"].push_back({{"at", {pos.x, pos.y}}, {"tile", name}});
            std::cout << j.dump(2) << "\n";
            if (!svg_path.empty()) write_file(svg_path, render_svg(a, tas, window));
            return 0;
        }

        if (verify->parsed()) {
            std::ifstream in(quipu_path);
            if (!in) throw std::runtime_error("cannot open " + quipu_path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            Quipu q = quipu_from_json(text);
            GrowResult grown = grow_max(tas, window);
            if (std::holds_alternative<ConfluenceWitness>(grown)) {
                std::cerr << "system is not confluent in the window\n";
                return 4;
            }
            const Assembly& want = std::get<Assembly>(grown);
            Assembly got = alpha_within(q, window);
            nlohmann::ordered_json missing = nlohmann::ordered_json::array();
            nlohmann::ordered_json extra = nlohmann::ordered_json::array();
            nlohmann::ordered_json mismatch = nlohmann::ordered_json::array();
            for (const auto& [pos, name] : want.tiles) {
                const std::string* g = got.at(pos);
                if (!g)
                    missing.push_back({pos.x, pos.y});
                else if (*g != name)
                    mismatch.push_back({pos.x, pos.y});
            }
            for (const auto& [pos, name] : got.tiles)
                if (!want.has(pos)) extra.push_back({pos.x, pos.y});
            bool equal = missing.empty() && extra.empty() && mismatch.empty();
            nlohmann::ordered_json j;
            j["equal"] = equal;
            j["missing"] = missing;
            j["extra"] = extra;
            j["mismatched"] = mismatch;
            std::cout << j.dump(2) << "\n";
            return equal ? 0 : 1;
        }

        if (checkc->parsed()) {
            GrowResult grown = grow_max(tas, window);
            nlohmann::ordered_json j;
            if (const auto* w = std::get_if<ConfluenceWitness>(&grown)) {
                j["confluent"] = false;
                j["witness"] = {{"point", {w->point.x, w->point.y}},
                                {"tiles", {w->tile_a, w->tile_b}}};
                std::cout << j.dump(2) << "\n";
                return 4;
            }
            j["confluent"] = true;
            j["window"] = {{window.x_min, window.x_max}, {window.y_min, window.y_max}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
