#include "ivgreen/report.hpp"

#include <cmath>

#include "ivgreen/errors.hpp"

namespace ivgreen {

namespace {

std::string quote(const std::string& s) {
  // Reuse the library's escaping for strings.
  return Json(s).dump();
}

void write(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      // nlohmann::json objects are std::map-backed, hence already sorted.
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + quote(it.key()) + ": ";
        write(it.value(), indent + 2, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i > 0) out += ", ";
          write(v[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        write(v[i], indent + 2, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

std::string cell(double d) { return std::isfinite(d) ? format_double(d) : (std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf")); }

}  // namespace

std::string render_json(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ",";
      out += cells[i];
    }
    out += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string sweep_csv(const SweepResult& sweep, int center_count) {
  std::vector<std::string> header = {"n", "epsilon"};
  for (int k = 1; k <= center_count; ++k) header.push_back("omega_" + std::to_string(k));
  for (const char* c : {"probe_id", "g_exact", "g_approx", "abs_error", "ratio"}) header.emplace_back(c);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : sweep.rows) {
    if (r.quantity != "g") continue;
    std::vector<std::string> row = {std::to_string(r.n), cell(r.epsilon)};
    for (double w : r.omegas) row.push_back(cell(w));
    row.push_back(std::to_string(r.probe_id));
    for (double d : {r.exact, r.approx, r.abs_error, r.ratio}) row.push_back(cell(d));
    rows.push_back(std::move(row));
  }
  return render_csv(header, rows);
}

Json sweep_json(const SweepResult& sweep) {
  Json rows = Json::array();
  for (const auto& r : sweep.rows) {
    Json j;
    j["n"] = r.n;
    j["epsilon"] = r.epsilon;
    j["omegas"] = r.omegas;
    j["quantity"] = r.quantity;
    if (r.quantity == "g") {
      j["probe_id"] = r.probe_id;
      j["probe"] = {r.probe.real(), r.probe.imag()};
    } else if (r.quantity == "hm") {
      j["band"] = r.probe_id;
    }
    j["exact"] = r.exact;
    j["approx"] = r.approx;
    j["abs_error"] = r.abs_error;
    j["ratio"] = r.ratio;
    rows.push_back(std::move(j));
  }
  Json out;
  out["rows"] = std::move(rows);
  out["capacity_single_cap_reading"] = sweep.cap_single_reading;
  out["capacity_double_cap_reading"] = sweep.cap_double_reading;
  out["bounded"] = sweep.verdict.bounded;
  out["failures"] = sweep.verdict.failures;
  out["verdict"] = sweep.verdict.bounded ? "PASS" : "FAIL";
  return out;
}

}  // namespace ivgreen
