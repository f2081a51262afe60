#include "nscrit/io.hpp"

#include <bit>
#include <fstream>

namespace nscrit {

static_assert(std::endian::native == std::endian::little,
              "NSF1 writer assumes a little-endian host");

nlohmann::json grid_to_json(const Grid& g) {
    return {{"dim", g.dim()},
            {"L", g.box_length()},
            {"n_space", g.n_space()},
            {"n_time", g.n_time()},
            {"t_min", g.t_min()},
            {"t_max", g.t_max()},
            {"spacing",
             g.spacing() == TimeSpacing::Uniform ? "uniform" : "geometric"}};
}

GridPtr grid_from_json(const nlohmann::json& j) {
    const std::string spacing = j.value("spacing", "uniform");
    if (spacing != "uniform" && spacing != "geometric")
        throw std::invalid_argument("grid: unknown spacing '" + spacing + "'");
    return make_grid(j.at("dim").get<int>(), j.at("L").get<double>(),
                     j.at("n_space").get<int>(), j.at("t_min").get<double>(),
                     j.at("t_max").get<double>(), j.at("n_time").get<int>(),
                     spacing == "uniform" ? TimeSpacing::Uniform
                                          : TimeSpacing::Geometric);
}

void write_nsf1(const std::string& path, const SpaceTimeField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    nlohmann::json header = grid_to_json(*f.grid());
    header["components"] = f.components();
    os << "NSF1\n" << header.dump() << "\n";
    // memory layout is (component, time, space) with x fastest, which is the
    // file's (component, time, z, y, x) order
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed: " + path);
}

SpaceTimeField read_nsf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string magic, header_line;
    std::getline(is, magic);
    if (magic != "NSF1") throw std::runtime_error("not an NSF1 file: " + path);
    std::getline(is, header_line);
    nlohmann::json header = nlohmann::json::parse(header_line);
    GridPtr g = grid_from_json(header);
    SpaceTimeField f(g, header.at("components").get<int>());
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (is.gcount() !=
        static_cast<std::streamsize>(f.values().size() * sizeof(double)))
        throw std::runtime_error("truncated NSF1 payload: " + path);
    return f;
}

nlohmann::json report_to_json(const NormReport& r) {
    nlohmann::json j{{"space", r.space},
                     {"value", r.value},
                     {"branch", r.branch},
                     {"sampling",
                      {{"n_T_samples", r.n_T_samples},
                       {"n_centers", r.n_centers},
                       {"n_radii", r.n_radii}}}};
    if (r.witness) {
        const CylinderSpec& w = *r.witness;
        const char* kinds[] = {"Q", "R", "S", "centered"};
        j["witness"] = {{"kind", kinds[static_cast<int>(w.kind)]},
                        {"T", w.T},
                        {"center", {w.center[0], w.center[1], w.center[2]}},
                        {"radius", w.radius},
                        {"t_center", w.t_center}};
    }
    if (r.witness_time_index >= 0) j["witness_time_index"] = r.witness_time_index;
    return j;
}

nlohmann::json report_to_json(const EstimateReport& r) {
    return {{"operator", r.op},
            {"ensemble_size", r.ensemble_size},
            {"grid", r.grid_desc},
            {"constants",
             {{"mean", r.mean}, {"max", r.max}, {"per_sample", r.per_sample}}},
            {"witness", r.witness}};
}

nlohmann::json trace_to_json(const SolutionTrace& t) {
    return {{"iterates", t.iterates},
            {"increments", t.increments},
            {"certified", t.certified},
            {"converged", t.converged},
            {"C0", t.C0},
            {"margin", t.margin},
            {"data_norm", t.data_norm},
            {"solution_norm", t.solution_norm},
            {"bound_ok", t.bound_ok}};
}

nlohmann::json report_to_json(const TrendReport& r) {
    return {{"case", r.case_id},
            {"sweep", r.sweep},
            {"measured", r.measured},
            {"abscissa", r.abscissa},
            {"model", r.model},
            {"fit",
             {{"slope", r.fit.slope},
              {"intercept", r.fit.intercept},
              {"r2", r.fit.r2}}},
            {"extras", r.extras}};
}

}  // namespace nscrit
