// sig2d - CSV/JSON serialization and SVG figure emission

#ifndef SIG2D_IO_HPP_
#define SIG2D_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "sig2d/causal.hpp"

namespace sig2d {

// %.17g; round-trips doubles exactly and keeps outputs byte-deterministic.
std::string fmt17(double v);

struct FieldSampleRow {
  double t, x;
  double g_tt, g_tx, g_xx, det;
  char class_code;      // L, R, N, D
  bool has_slopes = false;
  bool s1_vertical = false, s2_vertical = false;
  double slope1 = 0.0, slope2 = 0.0;
};

// Row-major grid scan (t outer, x inner), grid_n points per axis.
std::vector<FieldSampleRow> field_scan(const MetricField& m, const Rect& window, int grid_n);

std::string field_csv(const std::vector<FieldSampleRow>& rows);
std::string radical_csv(const RadicalScan& scan);
std::string geodesic_csv(const GeodesicTrace& trace);

nlohmann::json seam_events_json(const GeodesicTrace& trace);
nlohmann::json seam_report_json(const SeamReport& rep);
nlohmann::json seam_reports_json(const std::vector<SeamReport>& reps);
nlohmann::json trapping_json(const TrappingReport& rep);

struct Verdict {
  std::string check;
  bool required = true;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string oracle;
};

nlohmann::json verdict_json(const Verdict& v);
nlohmann::json verdicts_json(const std::vector<Verdict>& vs);

void write_text_file(const std::string& path, const std::string& content);

// Cone-field figure: cross glyphs at Lorentzian samples, stationary-stripe
// shading and Killing-null dashes for rotating models, dashed det=0 loci.
// Horizontal axis x, vertical axis t.
std::string field_svg(const MetricField& m, const Rect& window, int grid_n);

// Same figure with a trace polyline overlaid.
std::string geodesic_svg(const MetricField& m, const Rect& window, int grid_n,
                         const GeodesicTrace& trace);

}  // namespace sig2d

#endif
