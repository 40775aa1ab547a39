#include "minsum/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "minsum/walks.hpp"

namespace minsum {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double max_edge_row_l1(const WeightedGraph& g, const Eigen::MatrixXd& rows_by_vertex) {
  double best = 0.0;
  for (const Edge& e : g.edges()) {
    best = std::max(best, (rows_by_vertex.row(e.tail) - rows_by_vertex.row(e.head))
                              .lpNorm<1>());
  }
  return best;
}

double max_edge_col_l1(const WeightedGraph& g, const Eigen::MatrixXd& kernel) {
  double best = 0.0;
  for (const Edge& e : g.edges()) {
    best = std::max(best,
                    (kernel.col(e.tail) - kernel.col(e.head)).lpNorm<1>());
  }
  return best;
}

}  // namespace

DecayFamily parse_decay_family(const std::string& s) {
  if (s == "connected-cycle") return DecayFamily::ConnectedCycle;
  if (s == "torus") return DecayFamily::Torus;
  throw Error(ErrorCode::InvalidParameter, "unknown family: " + s);
}

DecayWhich parse_decay_which(const std::string& s) {
  if (s == "delta") return DecayWhich::Delta;
  if (s == "delta-sum") return DecayWhich::DeltaSum;
  if (s == "delta-tilde") return DecayWhich::DeltaTilde;
  if (s == "delta-tilde-sum") return DecayWhich::DeltaTildeSum;
  throw Error(ErrorCode::InvalidParameter, "unknown matrix family: " + s);
}

DecayResult tv_decay(DecayFamily family, int d, int n, int t_max,
                     DecayWhich which) {
  if (d < 4 || d % 2 != 0) {
    throw Error(ErrorCode::InvalidParameter,
                "decay experiment requires even d >= 4");
  }
  if (t_max < 3) {
    throw Error(ErrorCode::InvalidParameter, "t-max must be >= 3");
  }
  WeightedGraph g = family == DecayFamily::ConnectedCycle
                        ? make_k_connected_cycle(n, d / 2)
                        : make_torus(std::vector<int>(d / 2, n));

  DecayResult result;
  result.family =
      family == DecayFamily::ConnectedCycle ? "connected-cycle" : "torus";
  result.d = d;
  result.n = n;

  // Both families are vertex-transitive, so one BFS gives the diameter.
  {
    std::vector<int> dist(g.n_vertices(), -1);
    std::vector<int> queue{0};
    dist[0] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (const IncidentEdge& ie : g.incident(v)) {
        if (dist[ie.neighbor] < 0) {
          dist[ie.neighbor] = dist[v] + 1;
          queue.push_back(ie.neighbor);
        }
      }
    }
    result.diameter = *std::max_element(dist.begin(), dist.end());
  }
  result.window_tmax = result.diameter / d;

  bool tilde = which == DecayWhich::DeltaTilde || which == DecayWhich::DeltaTildeSum;
  bool summed = which == DecayWhich::DeltaSum || which == DecayWhich::DeltaTildeSum;
  switch (which) {
    case DecayWhich::Delta: result.which = "delta"; break;
    case DecayWhich::DeltaSum: result.which = "delta-sum"; break;
    case DecayWhich::DeltaTilde: result.which = "delta-tilde"; break;
    case DecayWhich::DeltaTildeSum: result.which = "delta-tilde-sum"; break;
  }

  if (!tilde) {
    NonBacktrackingWalker walker = NonBacktrackingWalker::all_sources(g);
    Eigen::MatrixXd prev;
    for (int t = 1; t <= t_max + (summed ? 1 : 0); ++t) {
      Eigen::MatrixXd P = walker.distribution();
      if (!summed && t <= t_max) {
        result.rows.push_back({t, max_edge_row_l1(g, P)});
      } else if (summed && t >= 2) {
        // value reported at t-1: ||Delta^(t-1) + Delta^(t)||_inf
        result.rows.push_back({t - 1, max_edge_row_l1(g, prev + P)});
      }
      prev = std::move(P);
      walker.step();
    }
  } else {
    DeltaTildeKernel kernel(g);
    for (int t = 1; t <= t_max; ++t) {
      if (!summed) {
        result.rows.push_back({t, max_edge_col_l1(g, kernel.kernel())});
      } else if (t >= 2) {
        // ||Delta~^(t-1) + Delta~^(t)||_inf reported at t
        result.rows.push_back(
            {t, max_edge_col_l1(g, kernel.kernel_prev() + kernel.kernel())});
      }
      if (t < t_max) kernel.step();
    }
  }

  // Log-log least squares over the pre-wrap rows.
  std::vector<DecayRow> window;
  for (const DecayRow& row : result.rows) {
    if (row.t <= result.window_tmax && row.value > 0.0) window.push_back(row);
  }
  if (window.size() >= 4) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const DecayRow& row : window) {
      double x = std::log(static_cast<double>(row.t));
      double y = std::log(row.value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double k = static_cast<double>(window.size());
    double denom = k * sxx - sx * sx;
    if (denom > 0) {
      result.slope = (k * sxy - sx * sy) / denom;
      result.intercept = (sy - result.slope * sx) / k;
      result.fit_valid = true;
    }
  }
  return result;
}

std::string decay_to_csv(const DecayResult& result) {
  std::ostringstream out;
  out << "t,norm\n";
  for (const DecayRow& row : result.rows) {
    out << row.t << "," << format_double(row.value) << "\n";
  }
  return out.str();
}

std::string decay_to_svg(const DecayResult& result) {
  const int width = 640, height = 480, margin = 56;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  if (!result.rows.empty()) {
    double xmin = std::log(static_cast<double>(result.rows.front().t));
    double xmax = std::log(static_cast<double>(result.rows.back().t));
    double ymin = 1e300, ymax = -1e300;
    for (const DecayRow& row : result.rows) {
      if (row.value > 0) {
        ymin = std::min(ymin, std::log(row.value));
        ymax = std::max(ymax, std::log(row.value));
      }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double lx) {
      return margin + (lx - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto py = [&](double ly) {
      return height - margin - (ly - ymin) / (ymax - ymin) * (height - 2 * margin);
    };
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const DecayRow& row : result.rows) {
      if (row.value <= 0) continue;
      svg << px(std::log(static_cast<double>(row.t))) << ","
          << py(std::log(row.value)) << " ";
    }
    svg << "\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin
        << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\""
        << margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
        << "\" font-size=\"13\" text-anchor=\"middle\">t (log scale)</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << height / 2 << ")\">norm (log scale)</text>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" "
        << "text-anchor=\"middle\">" << result.family << " n=" << result.n
        << " d=" << result.d << " " << result.which;
    if (result.fit_valid) {
      svg << " (slope " << format_double(result.slope) << " on t&#8804;"
          << result.window_tmax << ")";
    }
    svg << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace minsum
