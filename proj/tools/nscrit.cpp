#include <CLI11.hpp>
#include <fstream>
#include <numbers>
#include <iostream>

#include "nscrit/io.hpp"

using namespace nscrit;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        std::ofstream os(output);
        if (!os) throw std::runtime_error("cannot open for writing: " + output);
        os << j.dump(2) << "\n";
    }
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

GridPtr grid_from_cli(int dim, double L, int n, double t_min, double t_max,
                      int nt, const std::string& spacing) {
    if (spacing != "uniform" && spacing != "geometric")
        throw std::invalid_argument("unknown spacing '" + spacing + "'");
    return make_grid(dim, L, n, t_min, t_max, nt,
                     spacing == "uniform" ? TimeSpacing::Uniform
                                          : TimeSpacing::Geometric);
}

int run_solve(const std::string& config_path, const std::string& output,
              const std::string& trace_path, bool require_certified) {
    std::ifstream is(config_path);
    if (!is) throw std::invalid_argument("cannot open config: " + config_path);
    json cfg = json::parse(is);

    GridPtr grid = grid_from_json(cfg.at("grid"));
    const Grid& g = *grid;

    SpatialField u0(grid, g.dim());
    const json& ju0 = cfg.at("u0");
    if (ju0.is_string()) {
        const std::string preset = ju0.get<std::string>();
        if (preset == "zero") {
            // stays zero
        } else if (preset == "single_mode") {
            const double eps = cfg.value("amplitude", 1e-3);
            const double k = 2.0 * std::numbers::pi / g.box_length();
            for (std::int64_t s = 0; s < g.n_points(); ++s) {
                auto idx = g.unflatten(s);
                u0.at(0, s) = eps * std::sin(k * idx[1] * g.dx());
            }
        } else {
            throw std::invalid_argument("unknown u0 preset '" + preset + "'");
        }
    } else {
        SpaceTimeField f = read_nsf1(ju0.at("nsf").get<std::string>());
        u0 = f.slice_field(0);
    }

    SpaceTimeField F(grid, g.dim() * g.dim());
    const json& jF = cfg.at("F");
    if (jF.is_string()) {
        if (jF.get<std::string>() != "zero")
            throw std::invalid_argument("unknown F preset '" +
                                        jF.get<std::string>() + "'");
    } else {
        F = read_nsf1(jF.at("nsf").get<std::string>());
    }

    ProblemData data(std::move(u0), std::move(F));
    const std::string space = cfg.value("space", "ykt");
    auto sp = parse_space(space);
    if (!sp) throw std::invalid_argument("unknown space '" + space + "'");
    data.space = *sp;
    data.params.q = cfg.value("q", 6.0);
    data.params.p = cfg.value("p", 2.0);
    data.C0 = cfg.value("C0", 0.0);
    if (data.C0 <= 0) {
        // conservative default: twice the empirical bilinear constant
        EstimateReport est = estimate_C0(grid, data.space, data.params, 5, 20260826);
        data.C0 = 2.0 * est.max;
    }

    SolutionTrace trace = picard_solve(data, cfg.value("max_iter", 20),
                                       cfg.value("tol", 1e-10));
    json jt = trace_to_json(trace);
    jt["residual"] = residual(data, trace.u);
    jt["margin"] = smallness_margin(data, data.C0);
    if (trace_path.empty()) {
        std::cout << jt.dump(2) << std::endl;
    } else {
        std::ofstream os(trace_path);
        os << jt.dump(2) << "\n";
    }
    if (!output.empty()) write_nsf1(output, trace.u);
    if (require_certified && !trace.certified) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for mild Navier-Stokes solutions in "
                 "critical spaces"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Picard solve from a JSON config");
    std::string cfg_path, solve_out, trace_out;
    bool require_certified = false;
    solve->add_option("--config", cfg_path)->required();
    solve->add_option("--output", solve_out);
    solve->add_option("--trace", trace_out);
    solve->add_flag("--require-certified", require_certified);

    // norm
    auto* norm = app.add_subcommand("norm", "evaluate a critical norm");
    std::string norm_space = "y2", norm_input, norm_out;
    double q = 6, p = 2, lambda = 5;
    norm->add_option("--space", norm_space);
    norm->add_option("--input", norm_input)->required();
    norm->add_option("--q", q);
    norm->add_option("--p", p);
    norm->add_option("--lambda", lambda);
    norm->add_option("--output", norm_out);

    // estimate
    auto* est = app.add_subcommand("estimate", "ensemble operator-constant sweep");
    std::string est_op = "kernel", est_out, est_sigma = "abs";
    int est_dim = 3, est_n = 16, est_nt = 12, est_fields = 8;
    double est_L = 2.0 * std::numbers::pi, est_tmin = 1.0 / 64, est_tmax = 1.0;
    double est_beta = 1.0, est_p = 3.0, est_q = 6.0;
    std::uint64_t est_seed = 1;
    est->add_option("--op", est_op,
                    "kernel | kt | fefferman-phong | theo5 | embed-yktq | "
                    "embed-morrey | c0");
    est->add_option("--sigma", est_sigma, "abs | deriv | leray (for --op kernel)");
    est->add_option("--dim", est_dim);
    est->add_option("--n", est_n);
    est->add_option("--nt", est_nt);
    est->add_option("--L", est_L);
    est->add_option("--t-min", est_tmin);
    est->add_option("--t-max", est_tmax);
    est->add_option("--beta", est_beta);
    est->add_option("--p", est_p);
    est->add_option("--q", est_q);
    est->add_option("--n-fields", est_fields);
    est->add_option("--seed", est_seed);
    est->add_option("--output", est_out);

    // cx
    auto* cx = app.add_subcommand("cx", "appendix counterexample trends");
    std::string cx_case, cx_out, cx_csv;
    std::string cx_deltas = "1e-2,1e-3,1e-4,1e-5,1e-6";
    std::string cx_ns = "4,8,16,32,64", cx_rs = "2,4,8,16,32";
    std::string cx_eps = "1e-1,1e-2,1e-3,1e-4,1e-5";
    std::string cx_obs_deltas = "0.25,0.1,0.04";
    cx->add_option("--case", cx_case,
                   "y2-unbounded | hilbert-l1 | kt-blowup | multiplier-gap | "
                   "ykt-obstruction")
        ->required();
    cx->add_option("--deltas", cx_deltas);
    cx->add_option("--ns", cx_ns);
    cx->add_option("--rs", cx_rs);
    cx->add_option("--eps", cx_eps);
    cx->add_option("--obs-deltas", cx_obs_deltas);
    cx->add_option("--output", cx_out);
    cx->add_option("--csv", cx_csv);

    // partition
    auto* part = app.add_subcommand("partition", "dyadic space-time partition");
    int part_dim = 3, part_n = 8, part_nt = 16;
    double part_L = 1.0, part_tmin = 1.0 / 64, part_tmax = 1.0;
    std::string part_spacing = "geometric", part_out, part_mask_csv;
    part->add_option("--dim", part_dim);
    part->add_option("--n", part_n);
    part->add_option("--nt", part_nt);
    part->add_option("--L", part_L);
    part->add_option("--t-min", part_tmin);
    part->add_option("--t-max", part_tmax);
    part->add_option("--spacing", part_spacing);
    part->add_option("--output", part_out);
    part->add_option("--mask-csv", part_mask_csv,
                     "write the first piece's mask as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return run_solve(cfg_path, solve_out, trace_out, require_certified);

        if (norm->parsed()) {
            SpaceTimeField f = read_nsf1(norm_input);
            NormReport rep;
            if (norm_space == "morrey") {
                rep = norm_morrey(f, p, lambda);
            } else if (norm_space == "bmo-1") {
                // initial data: the first time slice, heat-extended on the
                // file's own ladder
                rep = norm_bmo_neg1(f.slice_field(0), f.grid());
            } else {
                auto sp = parse_space(norm_space);
                if (!sp)
                    throw std::invalid_argument("unknown space '" + norm_space + "'");
                NormParams par;
                par.q = q;
                par.p = p;
                rep = space_norm(f, *sp, par);
            }
            emit(report_to_json(rep), norm_out);
            return 0;
        }

        if (est->parsed()) {
            GridPtr grid = grid_from_cli(est_dim, est_L, est_n, est_tmin,
                                         est_tmax, est_nt, "geometric");
            json out;
            if (est_op == "kernel") {
                Symbol sigma = est_sigma == "abs"     ? symbols::abs_xi()
                               : est_sigma == "deriv" ? symbols::deriv(0)
                               : est_sigma == "leray"
                                   ? symbols::leray_div(0, 1, 0)
                                   : throw std::invalid_argument(
                                         "unknown sigma '" + est_sigma + "'");
                out = report_to_json(
                    estimate_kernel_domination(grid, sigma, est_fields, est_seed));
            } else if (est_op == "kt") {
                out = json::array();
                for (const auto& r :
                     estimate_kt_carleson(grid, est_fields, est_seed))
                    out.push_back(report_to_json(r));
            } else if (est_op == "fefferman-phong") {
                out = report_to_json(estimate_fefferman_phong(
                    grid, est_beta, est_p, est_fields, est_seed));
            } else if (est_op == "theo5") {
                out = report_to_json(
                    estimate_theo5(grid, est_q, est_fields, est_seed));
            } else if (est_op == "embed-yktq") {
                out = report_to_json(
                    estimate_embedding_yktq(grid, est_q, est_fields, est_seed));
            } else if (est_op == "embed-morrey") {
                out = report_to_json(
                    estimate_embedding_morrey(grid, est_q, est_fields, est_seed));
            } else if (est_op == "c0") {
                NormParams par;
                par.q = est_q;
                par.p = est_p;
                out = report_to_json(
                    estimate_C0(grid, NormSpace::YKT, par, est_fields, est_seed));
            } else {
                throw std::invalid_argument("unknown estimate op '" + est_op + "'");
            }
            emit(out, est_out);
            return 0;
        }

        if (cx->parsed()) {
            TrendReport rep;
            if (cx_case == "y2-unbounded")
                rep = cx_y2_unbounded(parse_list(cx_ns));
            else if (cx_case == "hilbert-l1")
                rep = cx_hilbert_L1(parse_list(cx_rs));
            else if (cx_case == "kt-blowup")
                rep = cx_kt_blowup(parse_list(cx_deltas));
            else if (cx_case == "multiplier-gap")
                rep = cx_multiplier_gap(parse_list(cx_eps));
            else if (cx_case == "ykt-obstruction")
                rep = cx_ykt_obstruction(parse_list(cx_obs_deltas));
            else
                throw std::invalid_argument("unknown case '" + cx_case + "'");
            emit(report_to_json(rep), cx_out);
            if (!cx_csv.empty()) {
                std::ofstream os(cx_csv);
                if (!os) throw std::runtime_error("cannot open: " + cx_csv);
                os << trend_to_csv(rep);
            }
            return 0;
        }

        if (part->parsed()) {
            GridPtr grid = grid_from_cli(part_dim, part_L, part_n, part_tmin,
                                         part_tmax, part_nt, part_spacing);
            auto pieces = dyadic_partition(grid);
            json out = json::array();
            for (const auto& pc : pieces)
                out.push_back({{"j", pc.cell.j},
                               {"k", {pc.cell.k[0], pc.cell.k[1], pc.cell.k[2]}},
                               {"kind", pc.cell.q_kind ? "Q" : "R"},
                               {"samples", pc.mask.count()}});
            emit(out, part_out);
            if (!part_mask_csv.empty() && !pieces.empty()) {
                std::ofstream os(part_mask_csv);
                os << mask_to_csv(pieces.front().mask);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
