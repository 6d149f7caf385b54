#include "quipu/render.hpp"

#include <sstream>

namespace quipu {

std::string render_svg(const Assembly& a, const TAS& tas, const Window& window) {
    const int cell = 28;
    std::int64_t w = window.x_max - window.x_min + 1;
    std::int64_t h = window.y_max - window.y_min + 1;
    auto px = [&](Vec2 p) { return (p.x - window.x_min) * cell; };
    auto py = [&](Vec2 p) { return (window.y_max - p.y) * cell; };  // y up

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell << "\" height=\""
       << h * cell << "\" font-family=\"monospace\" font-size=\"10\">\n";
    for (const auto& [pos, name] : a.tiles) {
        bool is_seed = pos == Vec2{0, 0};
        os << "<rect x=\"" << px(pos) << "\" y=\"" << py(pos) << "\" width=\"" << cell
           << "\" height=\"" << cell << "\" fill=\"" << (is_seed ? "#ffe9a8" : "#eef3f7")
           << "\" stroke=\"" << (is_seed ? "#c08000" : "#8899aa") << "\" stroke-width=\""
           << (is_seed ? 2 : 1) << "\"/>\n";
        os << "<text x=\"" << px(pos) + cell / 2 << "\" y=\"" << py(pos) + cell / 2 + 3
           << "\" text-anchor=\"middle\">" << name << "</text>\n";
        const TileType* t =
            (is_seed && !tas.seed_in_tileset) ? &tas.seed : tas.find_tile(name);
        if (!t) continue;
        auto glue_text = [&](Direction d, double fx, double fy) {
            const GlueLabel& g = t->glue_at(d);
            if (g.empty()) return;
            os << "<text x=\"" << px(pos) + fx * cell << "\" y=\"" << py(pos) + fy * cell
               << "\" text-anchor=\"middle\" font-size=\"7\" fill=\"#555\">" << g
               << "</text>\n";
        };
        glue_text(Direction::N, 0.5, 0.26);
        glue_text(Direction::S, 0.5, 0.92);
        glue_text(Direction::E, 0.86, 0.58);
        glue_text(Direction::W, 0.14, 0.58);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace quipu
