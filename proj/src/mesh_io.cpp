#include "ymhelix/mesh_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ymhelix/gluing.hpp"

namespace ymhelix {

using nlohmann::json;

void save_mesh(const Mesh& mesh, const std::string& path) {
    const auto& cx = *mesh.complex;
    const auto& m = *mesh.metric;
    json j;
    j["dimension"] = cx.dimension();
    json verts = json::array();
    for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
        auto c = m.coord(static_cast<VertexId>(v));
        verts.push_back(std::vector<double>(c.begin(), c.end()));
    }
    j["vertices"] = std::move(verts);
    json cells = json::array();
    const int n = cx.dimension();
    for (std::size_t c = 0; c < cx.count(n); ++c) {
        auto tv = cx.vertices(n, static_cast<SimplexId>(c));
        std::vector<VertexId> cell(tv.begin(), tv.end());
        // Emit with the geometric orientation encoded by a swap if negative.
        if (cx.cell_orientation(static_cast<SimplexId>(c)) < 0)
            std::swap(cell[0], cell[1]);
        cells.push_back(cell);
    }
    j["cells"] = std::move(cells);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    const int n = j.at("dimension").get<int>();
    const auto& verts = j.at("vertices");
    const int ed = verts.empty() ? n : static_cast<int>(verts[0].size());
    std::vector<double> coords;
    coords.reserve(verts.size() * ed);
    for (const auto& v : verts)
        for (const auto& x : v) coords.push_back(x.get<double>());
    std::vector<std::vector<VertexId>> cells;
    for (const auto& c : j.at("cells"))
        cells.push_back(c.get<std::vector<VertexId>>());

    std::vector<std::int8_t> orient;
    if (ed == n) {
        for (auto& c : cells) {
            std::vector<std::vector<double>> pts;
            for (VertexId v : c)
                pts.emplace_back(coords.begin() + static_cast<std::size_t>(v) * ed,
                                 coords.begin() + static_cast<std::size_t>(v) * ed + ed);
            orient.push_back(static_cast<std::int8_t>(orientation_sign(pts)));
        }
    }
    Mesh mesh;
    mesh.complex = std::make_shared<SimplicialComplex>(n, verts.size(),
                                                       std::move(cells), std::move(orient));
    mesh.metric = std::make_shared<MetricData>(*mesh.complex, std::move(coords), ed);
    mesh.name = "loaded";
    return mesh;
}

void save_cochain(const Cochain& c, const std::string& path) {
    json j;
    j["degree"] = c.degree;
    j["values"] = c.values;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

Cochain load_cochain(const SimplicialComplex& cx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    const int k = j.at("degree").get<int>();
    auto vals = j.at("values").get<std::vector<double>>();
    if (vals.size() != cx.count(k))
        throw std::runtime_error("cochain length does not match complex");
    return Cochain(cx, k, std::move(vals));
}

Mesh make_named_mesh(const std::string& name, int res) {
    if (res < 1) throw std::invalid_argument("resolution must be >= 1");
    if (name == "box2")
        return build_box(2, {res, res}, {1.0, 1.0});
    if (name == "box3")
        return build_box(3, {res, res, res}, {1.0, 1.0, 1.0});
    if (name == "box4")
        return build_box(4, {res, res, res, res}, {1.0, 1.0, 1.0, 1.0});
    if (name == "annulus")
        return build_annulus(res, std::max(3, 6 * res), 1.0, 2.0);
    if (name == "solidtorus")
        return build_solid_torus(std::max(3, 4 * res), std::max(1, res / 2 + 1));
    if (name == "torus3")
        return make_periodic_box3(res, 2 * 3.14159265358979323846);
    throw std::invalid_argument("unknown mesh name: " + name);
}

}  // namespace ymhelix
