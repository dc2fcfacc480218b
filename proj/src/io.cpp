#include "hcsc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace hcsc::io {
namespace {

void dump_value(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_value(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_value(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    default:
      out += j.dump();
  }
}

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("profile JSON: missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

template <class Row, class Fn>
std::string csv(std::string_view header, const std::vector<Row>& rows, Fn&& emit) {
  std::string out(header);
  out += '\n';
  for (const auto& r : rows) {
    emit(r, out);
    out += '\n';
  }
  return out;
}

void cell(std::string& out, double v) {
  out += format_double(v);
  out += ',';
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  return out;
}

nlohmann::json profile_to_json(const MetricProfile& profile) {
  const auto& p = profile.params();
  const auto& c = profile.consts();
  nlohmann::json j;
  j["m"] = p.m();
  j["scalar_curvature"] = p.scalar_curvature();
  j["beta"] = p.beta();
  j["k"] = c.k;
  j["K"] = c.K;
  j["T"] = c.T;
  j["f_max"] = c.f_max;
  j["generator"] = std::string(to_string(profile.generator()));
  if (profile.generator() == Generator::numeric_ivp) {
    j["tolerance"] = profile.tolerance();
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : profile.grid()) {
    samples.push_back({{"t", s.t}, {"f", s.f}, {"fp", s.fp}, {"fpp", s.fpp}});
  }
  j["samples"] = std::move(samples);
  return j;
}

MetricProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_integer()) {
    throw std::invalid_argument("profile JSON: missing integer field 'm'");
  }
  const SolverParams params(j.at("m").get<int>(), require_number(j, "scalar_curvature"));
  if (require_number(j, "beta") != params.beta()) {
    throw std::invalid_argument("profile JSON: beta inconsistent with scalar_curvature");
  }
  EllipticConstants c = derive_constants(params);
  c.k = require_number(j, "k");
  c.K = require_number(j, "K");
  c.T = require_number(j, "T");
  c.f_max = require_number(j, "f_max");
  if (!j.contains("generator") || !j.at("generator").is_string()) {
    throw std::invalid_argument("profile JSON: missing field 'generator'");
  }
  const Generator gen = generator_from_string(j.at("generator").get<std::string>());
  const double tol = gen == Generator::numeric_ivp ? require_number(j, "tolerance") : 0.0;
  if (!j.contains("samples") || !j.at("samples").is_array() || j.at("samples").size() < 2) {
    throw std::invalid_argument("profile JSON: 'samples' must be an array of at least two nodes");
  }
  std::vector<ProfileSample> grid;
  grid.reserve(j.at("samples").size());
  for (const auto& s : j.at("samples")) {
    grid.push_back({require_number(s, "t"), require_number(s, "f"), require_number(s, "fp"), require_number(s, "fpp")});
  }
  const double half = grid.back().t;
  return MetricProfile(params, c, half, std::move(grid), gen, tol);
}

std::string profile_to_string(const MetricProfile& profile) { return dump_json(profile_to_json(profile)) + "\n"; }

MetricProfile profile_from_string(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("profile JSON: ") + e.what());
  }
  return profile_from_json(j);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string curvature_csv(const std::vector<CurvatureRow>& rows) {
  return csv(kCurvatureCsvHeader, rows, [](const CurvatureRow& r, std::string& out) {
    for (double v : {r.t, r.f, r.fp, r.R, r.ric1, r.ric3, r.ric4, r.w2, r.b1, r.b3, r.b4}) cell(out, v);
    out += r.route;
  });
}

nlohmann::json report_to_json(const FunctionalReport& r) {
  nlohmann::json j;
  j["m"] = r.params.m();
  j["scalar_curvature"] = r.params.scalar_curvature();
  j["beta"] = r.params.beta();
  j["T"] = r.integrals.T;
  j["volume"] = r.volume;
  j["volume_closed"] = r.volume_closed;
  j["yamabe"] = r.yamabe;
  j["bt_value"] = {{"intercept", r.bt.intercept}, {"slope", r.bt.slope}};
  j["int_f"] = r.integrals.int_f;
  j["int_f3"] = r.integrals.int_f3;
  j["int_f5"] = r.integrals.int_f5;
  j["int_f_quadrature"] = r.int_f_quadrature;
  j["int_f3_quadrature"] = r.int_f3_quadrature;
  j["int_f5_quadrature"] = r.int_f5_quadrature;
  j["cgb_integral"] = r.cgb_integral;
  j["weyl_restricted"] = r.weyl_restricted;
  j["eigen_lower"] = r.eigen_lower;
  j["eigen_upper"] = r.eigen_upper;
  j["total_eigen_upper"] = r.total_eigen_upper;
  j["stability"] = std::string(to_string(r.stability));
  return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  return csv(kSweepCsvHeader, rows, [](const SweepRow& r, std::string& out) {
    out += std::to_string(r.m);
    out += ',';
    for (double v : {r.R, r.t, r.volume, r.yamabe, r.bt_closed, r.bt_quadrature, r.cgb, r.eigen_lower, r.eigen_upper}) {
      cell(out, v);
    }
    out += to_string(r.stability);
  });
}

std::string trajectory_csv(const BachFlatTrajectory& traj) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    cell(out, s.x);
    cell(out, s.y);
    cell(out, s.yp);
    if (i + 1 == traj.samples.size()) out += to_string(traj.termination);
    out += '\n';
  }
  return out;
}

std::string grid_csv(const std::vector<GridShot>& shots) {
  return csv(kGridCsvHeader, shots, [](const GridShot& g, std::string& out) {
    cell(out, g.y0);
    cell(out, g.yp0);
    out += to_string(g.termination);
    out += ',';
    out += format_double(g.min_y);
    out += ',';
    out += format_double(g.x_at_termination);
  });
}

}  // namespace hcsc::io
