#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hcsc/bachflat.hpp"
#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature.hpp"
#include "hcsc/functionals.hpp"

namespace hcsc::io {

// Shortest decimal that parses back to the same double (std::to_chars).
std::string format_double(double v);

// Serializes with every floating-point number in shortest round-trip form.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json profile_to_json(const MetricProfile& profile);
// Throws std::invalid_argument on schema violations.
MetricProfile profile_from_json(const nlohmann::json& j);

std::string profile_to_string(const MetricProfile& profile);
MetricProfile profile_from_string(std::string_view text);

// Writes to a sibling temporary file and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

struct CurvatureRow {
  double t;
  double f;
  double fp;
  double R;
  double ric1;
  double ric3;
  double ric4;
  double w2;
  double b1;
  double b3;
  double b4;
  std::string route;
};

inline constexpr std::string_view kCurvatureCsvHeader = "t,f,fp,R,Ric1,Ric3,Ric4,W2,B1,B3,B4,route";

std::string curvature_csv(const std::vector<CurvatureRow>& rows);

nlohmann::json report_to_json(const FunctionalReport& report);

struct SweepRow {
  int m;
  double R;
  double t;
  double volume;
  double yamabe;
  double bt_closed;
  double bt_quadrature;
  double cgb;
  double eigen_lower;
  double eigen_upper;
  Stability stability;
};

inline constexpr std::string_view kSweepCsvHeader =
    "m,R,t,volume,yamabe,bt_closed,bt_quadrature,cgb,eigen_lower,eigen_upper,stability";

std::string sweep_csv(const std::vector<SweepRow>& rows);

inline constexpr std::string_view kTrajectoryCsvHeader = "x,y,yp,termination";
inline constexpr std::string_view kGridCsvHeader = "y0,yp0,termination,min_y,x_at_termination";

std::string trajectory_csv(const BachFlatTrajectory& traj);
std::string grid_csv(const std::vector<GridShot>& shots);

}  // namespace hcsc::io
