#include "rtctl/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rtctl::harness {

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

struct Panel {
  std::string title;
  std::string unit;
  std::function<double(const plant::IntervalSample&)> value;
  std::string colour;
  std::optional<double> reference;
};

void draw_panel(std::ostream& out, const RunReport& report, const Panel& panel, double top) {
  constexpr double left = 70.0, width = 560.0, height = 200.0;
  const auto& samples = report.samples;

  double lo = panel.reference.value_or(0.0), hi = lo;
  for (const auto& s : samples) {
    lo = std::min(lo, panel.value(s));
    hi = std::max(hi, panel.value(s));
  }
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double n = std::max<double>(1.0, static_cast<double>(samples.size()));
  auto px = [&](double k) { return left + width * (k - 1.0) / std::max(1.0, n - 1.0); };
  auto py = [&](double v) { return top + height * (hi - v) / (hi - lo); };

  out << "<text x=\"" << left << "\" y=\"" << top - 8 << "\" font-size=\"13\">" << panel.title << " ("
      << panel.unit << ")</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" font-size=\"10\" text-anchor=\"end\">"
        << std::setprecision(4) << v << "</text>\n";
  }
  if (panel.reference) {
    out << "<line x1=\"" << left << "\" x2=\"" << left + width << "\" y1=\"" << py(*panel.reference)
        << "\" y2=\"" << py(*panel.reference) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  if (samples.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << panel.colour << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& s : samples) out << px(s.k) << ',' << py(panel.value(s)) << ' ';
  out << "\"/>\n";
  for (const auto& s : samples) {
    out << "<circle cx=\"" << px(s.k) << "\" cy=\"" << py(panel.value(s)) << "\" r=\"2.5\" fill=\""
        << panel.colour << "\"/>\n";
  }
}

}  // namespace

void write_csv(const RunReport& report, std::ostream& out) {
  for (const auto& [key, value] : report.config.resolved()) out << "# " << key << " = " << value << '\n';
  out << kCsvHeader << '\n';
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed;
  for (const auto& s : report.samples) {
    out << s.k << ',' << std::setprecision(3) << s.window_end << ',' << s.applied_max_requests << ','
        << std::setprecision(6) << s.mean_response << ',' << s.n_observed << ',' << s.error << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

void emit_csv(const RunReport& report, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_csv(report, out); });
}

void write_svg(const RunReport& report, std::ostream& out) {
  std::ostringstream body;
  body << std::fixed << std::setprecision(2);
  const double reference = report.config.reference;
  draw_panel(body, report,
             {"max_requests", "workers", [](const auto& s) { return double(s.applied_max_requests); }, "#1f5fa8",
              std::nullopt},
             40.0);
  draw_panel(body, report,
             {"response time", "s", [](const auto& s) { return s.mean_response; }, "#b33a1f", reference}, 300.0);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\"540\" viewBox=\"0 0 660 540\" "
         "font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"330\" y=\"18\" font-size=\"14\" text-anchor=\"middle\">controller="
      << to_string(report.config.controller) << " reference=" << reference << " s seed=" << report.config.seed
      << "</text>\n"
      << body.str() << "<text x=\"350\" y=\"530\" font-size=\"11\" text-anchor=\"middle\">measurement interval k</text>\n"
      << "</svg>\n";
}

void emit_svg(const RunReport& report, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_svg(report, out); });
}

void write_comparison(const ComparisonReport& report, std::ostream& out) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(3);
  out << "reference = " << report.prop.config.reference << " s, seed = " << report.prop.config.seed
      << ", final half = intervals " << report.prop.samples.size() / 2 + 1 << ".." << report.prop.samples.size()
      << '\n';
  out << "controller,mean_response_sec,mean_max_requests,rms_error_sec,converged\n";
  for (const auto* run : {&report.prop, &report.fuzzy}) {
    out << to_string(run->config.controller) << ',' << run->summary.mean_response << ','
        << run->summary.mean_max_requests << ',' << run->summary.rms_error << ','
        << (run->summary.converged ? "yes" : "no") << '\n';
  }
  out << "efficiency_delta (prop - fuzzy mean max_requests) = " << std::showpos << report.efficiency_delta
      << std::noshowpos << '\n';
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace rtctl::harness
