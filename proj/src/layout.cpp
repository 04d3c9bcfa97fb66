//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/layout.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ocsrkit {
namespace {

constexpr double kPi = std::numbers::pi;

Point polar(Point origin, double angle, double len = 1.0) {
  return { origin.x + len * std::cos(angle), origin.y + len * std::sin(angle) };
}

double angle_of(Point from, Point to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

class Layout {
public:
  explicit Layout(const MolGraph &g)
      : g_(g), pos_(g.atom_count()), placed_(g.atom_count(), 0),
        turn_(g.atom_count(), 1), ring_system_(g.rings().size(), -1),
        systems_done_() {
    group_ring_systems();
  }

  std::vector<Point> run() {
    double offset = 0;
    bool first = true;
    for (int root = 0; root < g_.atom_count(); ++root) {
      if (placed_[root])
        continue;
      std::vector<int> members;
      start_component(root, members);
      if (!first) {
        double min_x = std::numeric_limits<double>::infinity();
        double max_y = -std::numeric_limits<double>::infinity();
        double min_y = std::numeric_limits<double>::infinity();
        for (int a: members) {
          min_x = std::min(min_x, pos_[a].x);
          min_y = std::min(min_y, pos_[a].y);
          max_y = std::max(max_y, pos_[a].y);
        }
        for (int a: members) {
          pos_[a].x += offset - min_x;
          pos_[a].y -= (min_y + max_y) / 2;
        }
      }
      double max_x = -std::numeric_limits<double>::infinity();
      for (int a: members)
        max_x = std::max(max_x, pos_[a].x);
      offset = max_x + 2.0;
      first = false;
    }
    for (Point &p: pos_) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        p = {};
    }
    return pos_;
  }

private:
  void group_ring_systems() {
    const auto &rings = g_.rings();
    std::vector<int> atom_system(g_.atom_count(), -1);
    int next = 0;
    for (std::size_t r = 0; r < rings.size(); ++r) {
      int sys = -1;
      for (int a: rings[r])
        if (atom_system[a] >= 0)
          sys = atom_system[a];
      if (sys < 0)
        sys = next++;
      // Merge any systems already touching this ring.
      for (int a: rings[r]) {
        int old = atom_system[a];
        if (old >= 0 && old != sys) {
          for (auto &s: ring_system_)
            if (s == old)
              s = sys;
          for (auto &s: atom_system)
            if (s == old)
              s = sys;
        }
        atom_system[a] = sys;
      }
      ring_system_[r] = sys;
    }
    atom_ring_system_ = std::move(atom_system);
    systems_done_.assign(next, 0);
  }

  void start_component(int root, std::vector<int> &members) {
    const std::size_t before = order_.size();
    pos_[root] = { 0, 0 };
    if (atom_ring_system_[root] >= 0) {
      place_ring_system(root, { 0, 0 }, 0.0, -1);
    } else {
      mark(root);
    }
    for (std::size_t i = before; i < order_.size(); ++i)
      extend(order_[i]);
    members.assign(order_.begin() + static_cast<long>(before), order_.end());
  }

  void mark(int atom) {
    placed_[atom] = 1;
    order_.push_back(atom);
  }

  // Places unplaced neighbours of a placed atom.
  void extend(int u) {
    std::vector<int> todo;
    double sx = 0, sy = 0;
    int placed_nbrs = 0;
    for (const Neighbor &nb: g_.neighbors(u)) {
      if (placed_[nb.atom]) {
        double a = angle_of(pos_[nb.atom], pos_[u]);
        sx += std::cos(a);
        sy += std::sin(a);
        ++placed_nbrs;
      } else {
        todo.push_back(nb.atom);
      }
    }
    if (todo.empty())
      return;

    std::vector<double> angles;
    const int k = static_cast<int>(todo.size());
    if (placed_nbrs == 0) {
      for (int i = 0; i < k; ++i)
        angles.push_back(2 * kPi * i / std::max(k, 3) - (k > 1 ? kPi / 6 : 0));
    } else {
      double base = std::hypot(sx, sy) < 1e-9 ? 0.0 : std::atan2(sy, sx);
      if (k == 1 && placed_nbrs == 1) {
        angles.push_back(base + turn_[u] * kPi / 3);
      } else if (k == 1) {
        angles.push_back(base);
      } else {
        const double span = placed_nbrs == 1 ? 4 * kPi / 3 : 2 * kPi / 3;
        const double spread = std::min(span / (k - 1), 2 * kPi / 3);
        const double start = base + spread * (k - 1) / 2;
        for (int i = 0; i < k; ++i)
          angles.push_back(start - spread * i);
      }
    }

    for (int i = 0; i < k; ++i) {
      int v = todo[i];
      if (placed_[v])
        continue;  // placed as part of a ring system meanwhile
      Point p = polar(pos_[u], angles[i]);
      turn_[v] = -turn_[u];
      if (atom_ring_system_[v] >= 0
          && !systems_done_[atom_ring_system_[v]]) {
        place_ring_system(v, p, angles[i], u);
      } else {
        pos_[v] = p;
        mark(v);
      }
    }
  }

  static double circumradius(std::size_t size, double side = 1.0) {
    return side / (2 * std::sin(kPi / static_cast<double>(size)));
  }

  // Regular polygon through `path` with path[0] at `at`, centre in direction
  // `outward` from it.
  void polygon_from_vertex(const std::vector<int> &path, Point at,
                           double outward) {
    const std::size_t n = path.size();
    const double r = circumradius(n);
    Point centre = polar(at, outward, r);
    const double start = outward + kPi;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed_[path[i]])
        continue;
      pos_[path[i]] = polar(centre, start + 2 * kPi * i / n, r);
      mark(path[i]);
    }
  }

  void place_ring_system(int anchor, Point at, double outward, int from) {
    (void)from;
    const int sys = atom_ring_system_[anchor];
    systems_done_[sys] = 1;
    const auto &rings = g_.rings();
    const auto &paths = g_.ring_paths();

    std::vector<std::size_t> todo;
    for (std::size_t r = 0; r < rings.size(); ++r)
      if (ring_system_[r] == sys)
        todo.push_back(r);

    // First ring: the one containing the anchor.
    std::size_t first = todo.front();
    for (std::size_t r: todo) {
      if (std::binary_search(rings[r].begin(), rings[r].end(), anchor)) {
        first = r;
        break;
      }
    }
    {
      std::vector<int> path = paths[first];
      std::rotate(path.begin(), std::find(path.begin(), path.end(), anchor),
                  path.end());
      pos_[anchor] = at;
      mark(anchor);
      polygon_from_vertex(path, at, outward);
    }
    std::vector<char> done(rings.size(), 0);
    done[first] = 1;

    for (;;) {
      // Prefer rings fused on exactly one placed edge.
      long best = -1;
      int best_score = -1;
      for (std::size_t r: todo) {
        if (done[r])
          continue;
        int placed = 0;
        for (int a: rings[r])
          placed += placed_[a];
        if (placed == 0)
          continue;
        int score = placed == 2 ? 1000 : placed;
        if (score > best_score) {
          best_score = score;
          best = static_cast<long>(r);
        }
      }
      if (best < 0)
        break;
      done[best] = 1;
      place_ring(paths[best], sys);
    }
  }

  Point system_centroid(int sys) const {
    double x = 0, y = 0;
    int c = 0;
    for (int a = 0; a < g_.atom_count(); ++a) {
      if (placed_[a] && atom_ring_system_[a] == sys) {
        x += pos_[a].x;
        y += pos_[a].y;
        ++c;
      }
    }
    return c ? Point { x / c, y / c } : Point {};
  }

  void place_ring(std::vector<int> path, int sys) {
    const std::size_t n = path.size();
    std::vector<std::size_t> placed_at;
    for (std::size_t i = 0; i < n; ++i)
      if (placed_[path[i]])
        placed_at.push_back(i);
    if (placed_at.size() == n)
      return;
    const Point centroid = system_centroid(sys);

    if (placed_at.size() == 1) {
      std::rotate(path.begin(), path.begin() + static_cast<long>(placed_at[0]),
                  path.end());
      Point p = pos_[path[0]];
      polygon_from_vertex(path, p, angle_of(centroid, p));
      return;
    }

    if (placed_at.size() == 2) {
      std::size_t i = placed_at[0], j = placed_at[1];
      bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Orient so path[0], path[1] are the shared edge.
        if (i == 0 && j == n - 1) {
          std::rotate(path.begin(), path.begin() + static_cast<long>(j),
                      path.end());
        } else {
          std::rotate(path.begin(), path.begin() + static_cast<long>(i),
                      path.end());
        }
        Point a = pos_[path[0]], b = pos_[path[1]];
        double side = std::hypot(b.x - a.x, b.y - a.y);
        if (side < 1e-9)
          side = 1.0;
        Point mid { (a.x + b.x) / 2, (a.y + b.y) / 2 };
        double normal = angle_of(a, b) + kPi / 2;
        double apothem = side / (2 * std::tan(kPi / static_cast<double>(n)));
        Point c1 = polar(mid, normal, apothem);
        Point c2 = polar(mid, normal + kPi, apothem);
        auto d2 = [](Point p, Point q) {
          return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
        };
        Point centre = d2(c1, centroid) > d2(c2, centroid) ? c1 : c2;
        double r = circumradius(n, side);
        double ta = angle_of(centre, a), tb = angle_of(centre, b);
        double step = 2 * kPi / static_cast<double>(n);
        double diff = std::remainder(tb - ta, 2 * kPi);
        if (diff < 0)
          step = -step;
        for (std::size_t k = 2; k < n; ++k) {
          if (placed_[path[k]])
            continue;
          pos_[path[k]] = polar(centre, ta + step * static_cast<double>(k), r);
          mark(path[k]);
        }
        return;
      }
    }

    // Bridged: unplaced runs go on a bulge between their placed ends.
    for (std::size_t s = 0; s < placed_at.size(); ++s) {
      std::size_t from = placed_at[s];
      std::size_t to = placed_at[(s + 1) % placed_at.size()];
      std::size_t len = (to + n - from) % n;
      if (len <= 1)
        continue;
      Point a = pos_[path[from]], b = pos_[path[to]];
      Point mid { (a.x + b.x) / 2, (a.y + b.y) / 2 };
      double away = angle_of(centroid, mid);
      for (std::size_t k = 1; k < len; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(len);
        Point p { a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t };
        double bulge = 0.8 * std::sin(kPi * t);
        int atom = path[(from + k) % n];
        if (placed_[atom])
          continue;
        pos_[atom] = polar(p, away, bulge);
        mark(atom);
      }
    }
  }

  const MolGraph &g_;
  std::vector<Point> pos_;
  std::vector<char> placed_;
  std::vector<int> turn_;
  std::vector<int> ring_system_;
  std::vector<int> atom_ring_system_;
  std::vector<char> systems_done_;
  std::vector<int> order_;
};

}  // namespace

std::vector<Point> layout2d(const MolGraph &g) {
  return Layout(g).run();
}

std::vector<Point> layout2d(const ESmilesDoc &doc) {
  return layout2d(doc.graph);
}

}  // namespace ocsrkit
