#pragma once

#include <string>

#include <json.hpp>

#include "ivgreen/degenerate.hpp"

namespace ivgreen {

using Json = nlohmann::json;

/// Deterministic JSON text: keys sorted, two-space indent, every double
/// printed with 17 significant digits ("%.17g"), non-finite doubles as null.
std::string render_json(const Json& value);

/// Sweep CSV: n, epsilon, omega_1..omega_m, probe_id, g_exact, g_approx,
/// abs_error, ratio; one row per (n, probe).
std::string sweep_csv(const SweepResult& sweep, int center_count);

/// Generic CSV from a header and rows of already-formatted cells.
std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Sweep rows as JSON objects.
Json sweep_json(const SweepResult& sweep);

}  // namespace ivgreen
