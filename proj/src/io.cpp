// sig2d - CSV/JSON writers and SVG plots

#include "sig2d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sig2d {

namespace {

const char* radical_class_name(RadicalClass c) {
  return c == RadicalClass::Tangent ? "tangent" : "transverse";
}

std::string slope_cell(bool present, bool vertical, double v) {
  if (!present) return "nan";
  if (vertical) return "inf";
  return fmt17(v);
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<FieldSampleRow> field_scan(const MetricField& m, const Rect& window, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("field_scan: grid_n >= 2");
  std::vector<FieldSampleRow> rows;
  rows.reserve(static_cast<size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    double t = window.t_min + (window.t_max - window.t_min) * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      double x = window.x_min + (window.x_max - window.x_min) * j / (grid_n - 1);
      ChartPoint p{t, x};
      MetricSample s = m.sample(p);
      FieldSampleRow row{t, x, s.g_tt, s.g_tx, s.g_xx, s.det, signature_code(s.cls)};
      if (s.cls == SignatureClass::Lorentzian) {
        auto [a, b] = null_slopes(m, p);
        row.has_slopes = true;
        row.s1_vertical = a.vertical;
        row.s2_vertical = b.vertical;
        row.slope1 = a.value;
        row.slope2 = b.value;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string field_csv(const std::vector<FieldSampleRow>& rows) {
  std::string out = "t,x,g_tt,g_tx,g_xx,det,class_code,slope1,slope2\n";
  for (const FieldSampleRow& r : rows) {
    out += fmt17(r.t) + ',' + fmt17(r.x) + ',' + fmt17(r.g_tt) + ',' + fmt17(r.g_tx) + ',' +
           fmt17(r.g_xx) + ',' + fmt17(r.det) + ',' + r.class_code + ',' +
           slope_cell(r.has_slopes, r.s1_vertical, r.slope1) + ',' +
           slope_cell(r.has_slopes, r.s2_vertical, r.slope2) + '\n';
  }
  return out;
}

std::string radical_csv(const RadicalScan& scan) {
  std::string out = "s,t,x,rad_t,rad_x,tan_t,tan_x,alignment,class\n";
  for (const RadicalReport& r : scan.reports) {
    out += fmt17(r.s) + ',' + fmt17(r.point.t) + ',' + fmt17(r.point.x) + ',' +
           fmt17(r.radical_dir.vt) + ',' + fmt17(r.radical_dir.vx) + ',' +
           fmt17(r.h_tangent_dir.vt) + ',' + fmt17(r.h_tangent_dir.vx) + ',' +
           fmt17(r.alignment) + ',' + radical_class_name(r.cls) + '\n';
  }
  return out;
}

std::string geodesic_csv(const GeodesicTrace& trace) {
  std::string out = "lambda,t,x,vt,vx,E,norm2\n";
  for (const TraceSample& s : trace.samples) {
    out += fmt17(s.lambda) + ',' + fmt17(s.point.t) + ',' + fmt17(s.point.x) + ',' +
           fmt17(s.vt) + ',' + fmt17(s.vx) + ',' + fmt17(s.energy) + ',' + fmt17(s.norm2) +
           '\n';
  }
  return out;
}

nlohmann::json seam_events_json(const GeodesicTrace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SeamEvent& e : trace.seam_events)
    arr.push_back({{"lambda", e.lambda}, {"seam", e.seam}});
  return arr;
}

nlohmann::json seam_report_json(const SeamReport& rep) {
  nlohmann::json samples = nlohmann::json::array();
  for (const SeamSample& s : rep.samples)
    samples.push_back({{"s", s.s}, {"dgtt", s.d0}, {"dgtx", s.d1}, {"dgxx", s.d2}});
  return nlohmann::json{{"seam", rep.seam},
                        {"order", rep.order},
                        {"samples", samples},
                        {"max_abs_mismatch", rep.max_abs_mismatch}};
}

nlohmann::json seam_reports_json(const std::vector<SeamReport>& reps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SeamReport& r : reps) arr.push_back(seam_report_json(r));
  return arr;
}

nlohmann::json trapping_json(const TrappingReport& rep) {
  return nlohmann::json{{"k", rep.k},
                        {"n_curves", rep.n_curves},
                        {"n_escaped", rep.n_escaped},
                        {"max_excursion", rep.max_excursion},
                        {"min_E", rep.min_E},
                        {"max_E", rep.max_E},
                        {"seed", rep.seed}};
}

nlohmann::json verdict_json(const Verdict& v) {
  return nlohmann::json{{"check", v.check},     {"required", v.required},
                        {"passed", v.passed},   {"measured", v.measured},
                        {"threshold", v.threshold}, {"oracle", v.oracle}};
}

nlohmann::json verdicts_json(const std::vector<Verdict>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Verdict& v : vs) arr.push_back(verdict_json(v));
  return arr;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

// (x,t) data coordinates onto a fixed pixel canvas, t increasing upward
struct SvgMapper {
  Rect w;
  double px = 720.0, margin = 40.0;

  double X(double x) const { return margin + (x - w.x_min) / (w.x_max - w.x_min) * px; }
  double Y(double t) const { return margin + (w.t_max - t) / (w.t_max - w.t_min) * px; }
  double width() const { return px + 2 * margin; }
};

void svg_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  out += buf;
}

void svg_line(std::string& out, const SvgMapper& mp, double x1, double t1, double x2, double t2,
              const char* style) {
  out += "<line x1=\"";
  svg_num(out, mp.X(x1));
  out += "\" y1=\"";
  svg_num(out, mp.Y(t1));
  out += "\" x2=\"";
  svg_num(out, mp.X(x2));
  out += "\" y2=\"";
  svg_num(out, mp.Y(t2));
  out += "\" ";
  out += style;
  out += "/>\n";
}

void svg_polyline(std::string& out, const SvgMapper& mp, const std::vector<ChartPoint>& pts,
                  const char* style) {
  if (pts.size() < 2) return;
  out += "<polyline points=\"";
  for (const ChartPoint& p : pts) {
    svg_num(out, mp.X(p.x));
    out += ',';
    svg_num(out, mp.Y(p.t));
    out += ' ';
  }
  out += "\" ";
  out += style;
  out += "/>\n";
}

std::string field_svg_body(const MetricField& m, const Rect& window, int grid_n,
                           const GeodesicTrace* trace) {
  SvgMapper mp{window};
  std::string out;
  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                mp.width(), mp.width(), mp.width(), mp.width());
  out = head;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  bool rotating = m.kind() == MetricField::Kind::Rotating;
  if (rotating) {
    // stationary stripes (k - 1/4, k + 1/4)
    for (int k = static_cast<int>(std::floor(window.x_min)) - 1;
         k <= static_cast<int>(std::ceil(window.x_max)) + 1; ++k) {
      double lo = std::max(k - 0.25, window.x_min), hi = std::min(k + 0.25, window.x_max);
      if (lo >= hi) continue;
      out += "<rect x=\"";
      svg_num(out, mp.X(lo));
      out += "\" y=\"";
      svg_num(out, mp.Y(window.t_max));
      out += "\" width=\"";
      svg_num(out, mp.X(hi) - mp.X(lo));
      out += "\" height=\"";
      svg_num(out, mp.Y(window.t_min) - mp.Y(window.t_max));
      out += "\" fill=\"#dce9f7\"/>\n";
    }
    // Killing-null boundaries x = 1/4 + k/2
    for (int k = static_cast<int>(std::floor(2 * window.x_min)) - 1;
         k <= static_cast<int>(std::ceil(2 * window.x_max)) + 1; ++k) {
      double x = 0.25 + 0.5 * k;
      if (x < window.x_min || x > window.x_max) continue;
      svg_line(out, mp, x, window.t_min, x, window.t_max,
               "stroke=\"#4477aa\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
    }
  }

  // dashed degeneracy loci
  for (const Polyline& locus : degeneracy_locus(m, window, 161)) {
    svg_polyline(out, mp, locus.pts,
                 "fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" "
                 "stroke-dasharray=\"5 4\"");
  }

  // cone cross glyphs, 0.4 grid cells long
  double cell_x = (window.x_max - window.x_min) / (grid_n - 1);
  double cell_t = (window.t_max - window.t_min) / (grid_n - 1);
  double half = 0.2;
  for (const FieldSampleRow& r : field_scan(m, window, grid_n)) {
    if (!r.has_slopes) continue;
    auto leg = [&](bool vertical, double slope) {
      double dx, dt;
      if (vertical) {
        dx = 0.0;
        dt = 1.0;
      } else {
        double n = std::hypot(1.0, slope);
        dx = 1.0 / n;
        dt = slope / n;
      }
      svg_line(out, mp, r.x - half * cell_x * dx, r.t - half * cell_t * dt,
               r.x + half * cell_x * dx, r.t + half * cell_t * dt,
               "stroke=\"#222222\" stroke-width=\"0.8\"");
    };
    leg(r.s1_vertical, r.slope1);
    leg(r.s2_vertical, r.slope2);
  }

  if (trace) {
    std::vector<ChartPoint> pts;
    pts.reserve(trace->samples.size());
    for (const TraceSample& s : trace->samples) pts.push_back(s.point);
    svg_polyline(out, mp, pts, "fill=\"none\" stroke=\"#ee7733\" stroke-width=\"2\"");
  }

  // frame
  svg_line(out, mp, window.x_min, window.t_min, window.x_max, window.t_min,
           "stroke=\"black\" stroke-width=\"1\"");
  svg_line(out, mp, window.x_min, window.t_max, window.x_max, window.t_max,
           "stroke=\"black\" stroke-width=\"1\"");
  svg_line(out, mp, window.x_min, window.t_min, window.x_min, window.t_max,
           "stroke=\"black\" stroke-width=\"1\"");
  svg_line(out, mp, window.x_max, window.t_min, window.x_max, window.t_max,
           "stroke=\"black\" stroke-width=\"1\"");
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string field_svg(const MetricField& m, const Rect& window, int grid_n) {
  return field_svg_body(m, window, grid_n, nullptr);
}

std::string geodesic_svg(const MetricField& m, const Rect& window, int grid_n,
                         const GeodesicTrace& trace) {
  return field_svg_body(m, window, grid_n, &trace);
}

}  // namespace sig2d
