#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "tribody/central_config.hpp"
#include "tribody/error.hpp"
#include "tribody/numerics.hpp"

namespace tribody {

std::size_t CriticalPath::point_count() const {
  std::size_t n = 0;
  for (const auto& line : polylines) n += line.size();
  return n;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Graph {
  std::vector<ChartPoint> points;
  std::vector<std::array<int, 2>> links;

  void connect(int u, int v) {
    for (int* slot : {&links[static_cast<std::size_t>(u)][0], &links[static_cast<std::size_t>(u)][1]}) {
      if (*slot < 0) { *slot = v; break; }
    }
    for (int* slot : {&links[static_cast<std::size_t>(v)][0], &links[static_cast<std::size_t>(v)][1]}) {
      if (*slot < 0) { *slot = u; break; }
    }
  }
};

std::vector<std::vector<ChartPoint>> chain(const Graph& g) {
  const std::size_t n = g.points.size();
  std::vector<char> used(n, 0);
  std::vector<std::vector<ChartPoint>> lines;

  auto walk = [&](int start) {
    std::vector<ChartPoint> line;
    int prev = -1, cur = start;
    while (cur >= 0 && !used[static_cast<std::size_t>(cur)]) {
      used[static_cast<std::size_t>(cur)] = 1;
      line.push_back(g.points[static_cast<std::size_t>(cur)]);
      const auto& l = g.links[static_cast<std::size_t>(cur)];
      const int next = l[0] >= 0 && l[0] != prev ? l[0] : (l[1] != prev ? l[1] : -1);
      prev = cur;
      cur = next;
    }
    // Close loops by repeating the first point.
    if (cur == start && line.size() > 2) line.push_back(line.front());
    return line;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = g.links[i];
    const int degree = (l[0] >= 0) + (l[1] >= 0);
    if (!used[i] && degree <= 1) lines.push_back(walk(static_cast<int>(i)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) lines.push_back(walk(static_cast<int>(i)));
  }
  return lines;
}

}  // namespace

CriticalPath critical_path_contour(const ShapeChart& chart, double level, const ChartWindow& w,
                                   int grid_n) {
  if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "contour level must be positive");
  if (grid_n < 2) throw Error(ErrorKind::InvalidArgument, "grid_n must be at least 2");
  if (!(w.x1 > w.x0) || !(w.y1 > w.y0)) throw Error(ErrorKind::InvalidArgument, "empty window");

  const auto N = static_cast<std::size_t>(grid_n);
  const double hx = (w.x1 - w.x0) / grid_n;
  const double hy = (w.y1 - w.y0) / grid_n;
  auto X = [&](std::size_t i) { return i == N ? w.x1 : w.x0 + static_cast<double>(i) * hx; };
  auto Y = [&](std::size_t j) { return j == N ? w.y1 : w.y0 + static_cast<double>(j) * hy; };

  auto f = [&](double x, double y) { return mu_on_chart(x, y, chart) - level; };
  auto guarded = [](double x, double y) {
    return std::hypot(x + 1.0, y) < kChartGuard || std::hypot(x - 1.0, y) < kChartGuard;
  };
  auto node_value = [&](std::size_t i, std::size_t j) {
    const double x = X(i), y = Y(j);
    return guarded(x, y) ? kNaN : f(x, y);
  };

  Graph g;
  std::unordered_map<std::uint64_t, int> edge_point;
  // Edge ids: horizontal (i,j)-(i+1,j) and vertical (i,j)-(i,j+1).
  auto edge_id = [&](bool vertical, std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(j) * (N + 1) + i) * 2 + (vertical ? 1 : 0);
  };
  const double tol = 1e-10 * level;

  auto crossing = [&](bool vertical, std::size_t i, std::size_t j, double f0, double f1) -> int {
    const std::uint64_t id = edge_id(vertical, i, j);
    if (auto it = edge_point.find(id); it != edge_point.end()) return it->second;
    const double x0 = X(i), y0 = Y(j);
    const double x1 = vertical ? x0 : X(i + 1);
    const double y1 = vertical ? Y(j + 1) : y0;
    auto along = [&](double t) { return f(x0 + t * (x1 - x0), y0 + t * (y1 - y0)); };
    double t;
    if (f0 == 0.0) {
      t = 0.0;
    } else if (f1 == 0.0) {
      t = 1.0;
    } else {
      t = numerics::solve_bracketed(along, 0.0, 1.0, 1e-15);
      if (std::abs(along(t)) > tol) t = numerics::solve_bracketed(along, 0.0, 1.0, 0.0, 2000);
    }
    const int idx = static_cast<int>(g.points.size());
    g.points.push_back({x0 + t * (x1 - x0), y0 + t * (y1 - y0)});
    g.links.push_back({-1, -1});
    edge_point.emplace(id, idx);
    return idx;
  };

  std::vector<double> lower(N + 1), upper(N + 1);
  for (std::size_t i = 0; i <= N; ++i) lower[i] = node_value(i, 0);

  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i <= N; ++i) upper[i] = node_value(i, j + 1);
    for (std::size_t i = 0; i < N; ++i) {
      // Corners: 0 bottom-left, 1 bottom-right, 2 top-right, 3 top-left.
      const std::array<double, 4> c{lower[i], lower[i + 1], upper[i + 1], upper[i]};
      if (std::isnan(c[0]) || std::isnan(c[1]) || std::isnan(c[2]) || std::isnan(c[3])) continue;
      std::array<bool, 4> pos{};
      for (std::size_t k = 0; k < 4; ++k) pos[k] = c[k] >= 0.0;
      const int count = (pos[0] != pos[1]) + (pos[1] != pos[2]) + (pos[2] != pos[3]) + (pos[3] != pos[0]);
      if (count == 0) continue;

      // Edges: 0 bottom, 1 right, 2 top, 3 left.
      std::array<int, 4> e{-1, -1, -1, -1};
      if (pos[0] != pos[1]) e[0] = crossing(false, i, j, c[0], c[1]);
      if (pos[1] != pos[2]) e[1] = crossing(true, i + 1, j, c[1], c[2]);
      if (pos[3] != pos[2]) e[2] = crossing(false, i, j + 1, c[3], c[2]);
      if (pos[0] != pos[3]) e[3] = crossing(true, i, j, c[0], c[3]);

      if (count == 2) {
        int first = -1;
        for (int v : e) {
          if (v < 0) continue;
          if (first < 0) first = v; else g.connect(first, v);
        }
      } else {
        const bool centre_pos = f(X(i) + 0.5 * hx, Y(j) + 0.5 * hy) >= 0.0;
        if (centre_pos == pos[0]) {
          g.connect(e[0], e[1]);
          g.connect(e[2], e[3]);
        } else {
          g.connect(e[3], e[0]);
          g.connect(e[1], e[2]);
        }
      }
    }
    lower.swap(upper);
  }

  if (g.points.empty()) {
    throw Error(ErrorKind::EmptyContour, "mu never crosses the requested level in the window");
  }
  CriticalPath path;
  path.level = level;
  path.polylines = chain(g);
  return path;
}

}  // namespace tribody
