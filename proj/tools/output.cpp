// Copyright 2026 The scq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cli.hpp"

namespace scq::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io-failure", "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("io-failure", "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("io-failure", "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string rates_csv(const std::vector<StudyRow>& rows) {
  std::ostringstream os;
  os << "alpha_sq,r,kappa_ratio_name,kappa_ratio_value,gamma_bit,gamma_bit_stderr,"
        "gamma_phase,gamma_phase_stderr,floor_clipped,r_db,cutoff\n";
  for (const StudyRow& row : rows) {
    const RateFit& b = row.rates.bit;
    const RateFit& p = row.rates.phase;
    const bool has_bit = b.n_points > 0;
    const bool has_phase = p.n_points > 0;
    os << format_number(row.alpha_sq) << ',' << format_number(row.r) << ',' << row.knob_name
       << ',' << format_number(row.knob_value) << ','
       << (has_bit ? format_number(b.rate) : "") << ','
       << (has_bit ? format_number(b.std_error) : "") << ','
       << (has_phase ? format_number(p.rate) : "") << ','
       << (has_phase ? format_number(p.std_error) : "") << ','
       << ((b.floor_clipped || p.floor_clipped) ? "true" : "false") << ','
       << format_number(squeezing_db(row.r)) << ',' << row.rates.cutoff << '\n';
  }
  return os.str();
}

std::string error_json(const std::string& category, const std::string& message) {
  return Json{{"error", category}, {"message", message}}.dump();
}

namespace {

constexpr double kWidth = 680.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 78.0;
constexpr double kRight = 170.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double map(double v) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int step = std::max(1, int(std::ceil((hi - lo) / 8.0)));
      for (int e = int(std::ceil(lo - 1e-9)); e <= int(std::floor(hi + 1e-9)); e += step) {
        out.push_back(std::pow(10.0, e));
      }
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
      out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
  }
};

Axis make_axis(bool log, std::vector<double> values, double pixel_lo, double pixel_hi) {
  Axis a;
  a.log = log;
  a.pixel_lo = pixel_lo;
  a.pixel_hi = pixel_hi;
  if (values.empty()) values = {1.0};
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double lo = log ? std::log10(*mn) : *mn;
  double hi = log ? std::log10(*mx) : *mx;
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi <= lo) hi = lo + 1.0;
  } else {
    const double pad = hi > lo ? 0.05 * (hi - lo) : std::max(1.0, std::abs(lo)) * 0.5;
    lo -= pad;
    hi += pad;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const PlotSeries& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const bool ok_x = std::isfinite(s.x[i]) && (!spec.log_x || s.x[i] > 0.0);
      const bool ok_y = std::isfinite(s.y[i]) && (!spec.log_y || s.y[i] > 0.0);
      if (ok_x && ok_y) {
        xs.push_back(s.x[i]);
        ys.push_back(s.y[i]);
      }
    }
  }
  const Axis ax = make_axis(spec.log_x, xs, kLeft, kWidth - kRight);
  const Axis ay = make_axis(spec.log_y, ys, kHeight - kBottom, kTop);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed((kLeft + kWidth - kRight) / 2) << "\" y=\"22\" text-anchor=\"middle\""
     << " font-size=\"14\">" << escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
     << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double px = ax.map(t);
    os << "<line x1=\"" << fixed(px) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << fixed(px)
       << "\" y2=\"" << kTop << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << fixed(px) << "\" y=\"" << kHeight - kBottom + 16
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = ay.map(t);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(py) << "\" x2=\"" << kWidth - kRight
       << "\" y2=\"" << fixed(py) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py + 4) << "\" text-anchor=\"end\">"
       << tick_label(t) << "</text>\n";
  }
  os << "<text x=\"" << fixed((kLeft + kWidth - kRight) / 2) << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << fixed((kTop + kHeight - kBottom) / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const PlotSeries& s = spec.series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    std::ostringstream pts;
    std::ostringstream marks;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]) &&
                      (!spec.log_x || s.x[i] > 0.0) && (!spec.log_y || s.y[i] > 0.0);
      if (!ok) continue;
      const double px = ax.map(s.x[i]);
      const double py = ay.map(s.y[i]);
      pts << fixed(px) << ',' << fixed(py) << ' ';
      if (!s.dashed) {
        marks << "<circle cx=\"" << fixed(px) << "\" cy=\"" << fixed(py) << "\" r=\"3\" fill=\""
              << color << "\"/>\n";
      }
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
    os << marks.str();
    const double ly = kTop + 14 + 18 * double(k);
    const double lx = kWidth - kRight + 12;
    os << "<line x1=\"" << lx << "\" y1=\"" << fixed(ly - 4) << "\" x2=\"" << lx + 22 << "\" y2=\""
       << fixed(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << lx + 28 << "\" y=\"" << fixed(ly) << "\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scq::cli
