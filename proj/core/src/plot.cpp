#include "vext/plot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vext {

namespace {

const char* kFills[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<SetExpr>& sets,
                       const std::vector<SequenceSpec>& sequences,
                       const std::vector<PlotArrow>& arrows, const PlotOptions& opts) {
  for (const SetExpr& s : sets)
    if (s.dim() != 2) fail(ErrorCode::DimensionMismatch, "plot: only 2-D sets are supported");

  const double sx = opts.width / (opts.x_max - opts.x_min);
  const double sy = opts.height / (opts.y_max - opts.y_min);
  auto X = [&](double x) { return (x - opts.x_min) * sx; };
  auto Y = [&](double y) { return opts.height - (y - opts.y_min) * sy; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
      << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << fmt(X(opts.x_min)) << "\" y1=\"" << fmt(Y(0)) << "\" x2=\""
      << fmt(X(opts.x_max)) << "\" y2=\"" << fmt(Y(0)) << "\" stroke=\"#bbbbbb\"/>\n";
  svg << "<line x1=\"" << fmt(X(0)) << "\" y1=\"" << fmt(Y(opts.y_min)) << "\" x2=\"" << fmt(X(0))
      << "\" y2=\"" << fmt(Y(opts.y_max)) << "\" stroke=\"#bbbbbb\"/>\n";

  const double hx = (opts.x_max - opts.x_min) / opts.cells;
  const double hy = (opts.y_max - opts.y_min) / opts.cells;
  for (std::size_t si = 0; si < sets.size(); ++si) {
    const SetExpr& s = sets[si];
    const char* fill = kFills[si % 6];
    if (std::holds_alternative<GraphData>(s.node())) {
      // curves as a polyline per continuity stretch
      const auto& g = std::get<GraphData>(s.node());
      std::ostringstream pts;
      bool open = false;
      for (int i = 0; i <= 4 * opts.cells; ++i) {
        double x = opts.x_min + (opts.x_max - opts.x_min) * i / (4.0 * opts.cells);
        double y = g.g.eval(x);
        if (!std::isfinite(y) || y < opts.y_min || y > opts.y_max) {
          if (open) {
            svg << "<polyline fill=\"none\" stroke=\"" << fill << "\" stroke-width=\"1.2\" points=\""
                << pts.str() << "\"/>\n";
            pts.str("");
            open = false;
          }
          continue;
        }
        pts << fmt(X(x)) << "," << fmt(Y(y)) << " ";
        open = true;
      }
      if (open)
        svg << "<polyline fill=\"none\" stroke=\"" << fill << "\" stroke-width=\"1.2\" points=\""
            << pts.str() << "\"/>\n";
      continue;
    }
    // shaded membership cells, merged per row
    svg << "<g fill=\"" << fill << "\" fill-opacity=\"0.25\">\n";
    for (int iy = 0; iy < opts.cells; ++iy) {
      double y = opts.y_min + (iy + 0.5) * hy;
      int run_start = -1;
      for (int ix = 0; ix <= opts.cells; ++ix) {
        bool in = false;
        if (ix < opts.cells) {
          double x = opts.x_min + (ix + 0.5) * hx;
          in = contains(s, Point{x, y}, 1e-9);
        }
        if (in && run_start < 0) run_start = ix;
        if (!in && run_start >= 0) {
          double x0 = opts.x_min + run_start * hx, x1 = opts.x_min + ix * hx;
          svg << "<rect x=\"" << fmt(X(x0)) << "\" y=\"" << fmt(Y(y + hy / 2)) << "\" width=\""
              << fmt((x1 - x0) * sx) << "\" height=\"" << fmt(hy * sy) << "\"/>\n";
          run_start = -1;
        }
      }
    }
    svg << "</g>\n";
  }

  for (std::size_t qi = 0; qi < sequences.size(); ++qi) {
    const SequenceSpec& q = sequences[qi];
    for (int s = 0; s < q.n_sets(); ++s) {
      const char* fill = kFills[(qi + s) % 6];
      for (int k = 1; k <= opts.seq_points; ++k) {
        Point p = q.eval(s, k);
        if (p.dim() != 2) fail(ErrorCode::DimensionMismatch, "plot: sequences must be 2-D");
        double x = p.coords[0], y = p.coords[1];
        if (x < opts.x_min || x > opts.x_max || y < opts.y_min || y > opts.y_max) continue;
        svg << "<circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y)) << "\" r=\"3\" fill=\"" << fill
            << "\"/>\n";
        svg << "<text x=\"" << fmt(X(x) + 4) << "\" y=\"" << fmt(Y(y) - 4)
            << "\" font-size=\"9\" fill=\"#333333\">" << k << "</text>\n";
      }
    }
  }

  for (const PlotArrow& a : arrows) {
    double x1 = X(a.from.coords[0]), y1 = Y(a.from.coords[1]);
    double x2 = X(a.to.coords[0]), y2 = Y(a.to.coords[1]);
    svg << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\""
        << fmt(y2) << "\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
    // arrow head
    double dx = x2 - x1, dy = y2 - y1;
    double n = std::hypot(dx, dy);
    if (n > 1e-9) {
      dx /= n;
      dy /= n;
      svg << "<polygon points=\"" << fmt(x2) << "," << fmt(y2) << " " << fmt(x2 - 6 * dx + 3 * dy)
          << "," << fmt(y2 - 6 * dy - 3 * dx) << " " << fmt(x2 - 6 * dx - 3 * dy) << ","
          << fmt(y2 - 6 * dy + 3 * dx) << "\" fill=\"#222222\"/>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

void save_svg(const std::string& path, const std::string& svg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ConfigError, "cannot write svg file: " + path);
  out << svg;
}

}  // namespace vext
