#pragma once

#include <json.hpp>

#include "nscrit/ensemble.hpp"
#include "nscrit/harness.hpp"
#include "nscrit/solver.hpp"

namespace nscrit {

// NSF1 field files: ASCII magic "NSF1\n", a one-line JSON header
// {dim, L, n_space, n_time, t_min, t_max, spacing, components}, then
// little-endian float64 samples in (component, time, z, y, x) order.
void write_nsf1(const std::string& path, const SpaceTimeField& f);
SpaceTimeField read_nsf1(const std::string& path);

nlohmann::json grid_to_json(const Grid& g);
GridPtr grid_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const NormReport& r);
nlohmann::json report_to_json(const EstimateReport& r);
nlohmann::json trace_to_json(const SolutionTrace& t);
nlohmann::json report_to_json(const TrendReport& r);

}  // namespace nscrit
