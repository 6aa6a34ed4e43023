#include "so3track/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace so3track {

const char* const kCsvHeader =
    "t,Rr11,Rr12,Rr13,Rr21,Rr22,Rr23,Rr31,Rr32,Rr33,"
    "R111,R112,R113,R121,R122,R123,R131,R132,R133,"
    "theta,d_R,d_F,W,omega1_norm,regularized";

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_csv(std::span<const TrajectoryRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& rec : records) {
    out += format_double(rec.t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out += ',' + format_double(rec.Rr(i, j));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out += ',' + format_double(rec.R1(i, j));
    out += ',' + format_double(rec.theta);
    out += ',' + format_double(rec.d_R);
    out += ',' + format_double(rec.d_F);
    out += ',' + format_double(rec.W);
    out += ',' + format_double(rec.omega1_norm);
    out += rec.regularized ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
      f.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed: " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("rename failed: " + path);
  }
}

void write_csv(const std::string& path, std::span<const TrajectoryRecord> records) {
  atomic_write(path, format_csv(records));
}

void write_report(const std::string& path, const ConvergenceReport& report) {
  atomic_write(path, format_report(report));
}

namespace {

// Short fixed-precision coordinates keep the SVG compact and deterministic.
std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Panel {
  double x0, y0, w, h;        // pixel box
  double tmin, tmax;          // data x range
  double vmin, vmax;          // data y range (log10 units for log panels)
  double px(double t) const { return x0 + (t - tmin) / (tmax - tmin) * w; }
  double py(double v) const { return y0 + h - (v - vmin) / (vmax - vmin) * h; }
};

void polyline(std::string& svg, const Panel& p,
              std::span<const TrajectoryRecord> records,
              double (*value)(const TrajectoryRecord&), const char* stroke,
              const char* dash) {
  svg += "<polyline fill=\"none\" stroke=\"";
  svg += stroke;
  svg += "\" stroke-width=\"1\"";
  if (dash[0] != '\0') {
    svg += " stroke-dasharray=\"";
    svg += dash;
    svg += "\"";
  }
  svg += " points=\"";
  for (const auto& rec : records) {
    const double v = std::clamp(value(rec), p.vmin, p.vmax);
    svg += coord(p.px(rec.t)) + ',' + coord(p.py(v)) + ' ';
  }
  svg += "\"/>\n";
}

void frame(std::string& svg, const Panel& p, const std::string& title) {
  svg += "<rect x=\"" + coord(p.x0) + "\" y=\"" + coord(p.y0) + "\" width=\"" +
         coord(p.w) + "\" height=\"" + coord(p.h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + coord(p.x0) + "\" y=\"" + coord(p.y0 - 6) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + title + "</text>\n";
}

}  // namespace

std::string format_svg_plot(std::span<const TrajectoryRecord> records,
                            const ControllerKind& kind) {
  const double tmin = records.empty() ? 0.0 : records.front().t;
  const double tmax = records.empty() ? 1.0 : std::max(records.back().t, tmin + 1e-9);
  const bool geo = uses_geodesic(kind.tag);

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"520\" "
      "viewBox=\"0 0 640 520\">\n";

  Panel top{60, 30, 540, 190, tmin, tmax, -1.05, 1.05};
  frame(svg, top, "attitude tracking: Rr(i,1) dashed, R1(i,1) solid, i = 1, 2");
  polyline(svg, top, records, [](const TrajectoryRecord& r) { return r.Rr(0, 0); },
           "#1f77b4", "4 3");
  polyline(svg, top, records, [](const TrajectoryRecord& r) { return r.R1(0, 0); },
           "#1f77b4", "");
  polyline(svg, top, records, [](const TrajectoryRecord& r) { return r.Rr(1, 0); },
           "#d62728", "4 3");
  polyline(svg, top, records, [](const TrajectoryRecord& r) { return r.R1(1, 0); },
           "#d62728", "");

  Panel bottom{60, 290, 540, 190, tmin, tmax, -16.0, 1.0};
  frame(svg, bottom, geo ? "tracking error d_R, log10" : "tracking error d_F, log10");
  polyline(svg, bottom, records,
           geo ? +[](const TrajectoryRecord& r) {
                   return std::log10(std::max(std::isnan(r.d_R) ? M_PI : r.d_R, 1e-16));
                 }
               : +[](const TrajectoryRecord& r) {
                   return std::log10(std::max(r.d_F, 1e-16));
                 },
           "#2ca02c", "");

  svg += "<text x=\"300\" y=\"510\" font-family=\"sans-serif\" font-size=\"12\">t [";
  svg += coord(tmin) + ", " + coord(tmax) + "] s</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_svg_plot(const std::string& path,
                    std::span<const TrajectoryRecord> records,
                    const ControllerKind& kind) {
  atomic_write(path, format_svg_plot(records, kind));
}

}  // namespace so3track
