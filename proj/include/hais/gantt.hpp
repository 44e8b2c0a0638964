#pragma once

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "hais/decoder.hpp"
#include "hais/graph.hpp"
#include "hais/io.hpp"

namespace hais {

// ASCII timeline, one row per processor; idle stretches are shown as gaps.
inline std::string gantt_text(const Schedule& s, const TaskGraph& g) {
  std::ostringstream os;
  for (std::size_t p = 0; p < s.proc_order.size(); ++p) {
    os << 'p' << p << " |";
    Time cursor = 0.0;
    for (int t : s.proc_order[p]) {
      const ScheduleEntry& e = s.entries[t - 1];
      if (e.start > cursor + kTimeEps)
        os << " idle " << format_time(cursor) << '-' << format_time(e.start)
           << " |";
      os << " T" << g.original_ids[t] << ' ' << format_time(e.start) << '-'
         << format_time(e.finish) << " |";
      cursor = e.finish;
    }
    os << "\n";
  }
  os << "makespan " << format_time(s.makespan) << "\n";
  return os.str();
}

// Minimal SVG: one bar per scheduled task, bar extents proportional to
// [AST, AFT), coordinates rendered to 3 decimal places.
inline std::string gantt_svg(const Schedule& s, const TaskGraph& g) {
  const double row_h = 28.0;
  const double label_w = 40.0;
  const double body_w = 760.0;
  const int procs = static_cast<int>(s.proc_order.size());
  const double span = std::max(s.makespan, 1e-9);
  const double scale = body_w / span;

  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << fmt(label_w + body_w + 10) << "\" height=\""
     << fmt(procs * row_h + 30) << "\">\n";
  for (int p = 0; p < procs; ++p) {
    const double y = 10.0 + p * row_h;
    os << "  <text x=\"4\" y=\"" << fmt(y + row_h * 0.6)
       << "\" font-size=\"12\">p" << p << "</text>\n";
    for (int t : s.proc_order[p]) {
      const ScheduleEntry& e = s.entries[t - 1];
      const double x = label_w + e.start * scale;
      const double w = std::max((e.finish - e.start) * scale, 0.5);
      os << "  <rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
         << fmt(w) << "\" height=\"" << fmt(row_h - 6)
         << "\" fill=\"#4a90d9\" stroke=\"#1c3d5a\"/>\n";
      os << "  <text x=\"" << fmt(x + 2) << "\" y=\""
         << fmt(y + row_h * 0.55) << "\" font-size=\"10\">T"
         << g.original_ids[t] << "</text>\n";
    }
  }
  os << "  <text x=\"" << fmt(label_w) << "\" y=\""
     << fmt(procs * row_h + 24) << "\" font-size=\"12\">makespan "
     << format_time(s.makespan) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace hais
