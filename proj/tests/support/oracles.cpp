#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

double dotp(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

// x in alpha (P - c) + c  <=>  <x, y_i> <= <c, y_i> + alpha (b_i - <c, y_i>) for all i.
bool in_scaled(const Halfspaces& p, const Vec& c, const Vec& x, double alpha) {
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const double cy = dotp(c, p.rows[i]);
    if (dotp(x, p.rows[i]) > cy + alpha * (p.offsets[i] - cy)) {
      return false;
    }
  }
  return true;
}

} // namespace

double scaling_distance_bisection(const Halfspaces& p, const Vec& c, const Vec& x) {
  if (in_scaled(p, c, x, 0.0)) {
    return 0.0;
  }
  double hi = 1.0;
  while (!in_scaled(p, c, x, hi)) {
    hi *= 2.0;
    if (hi > std::ldexp(1.0, 60)) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    (in_scaled(p, c, x, mid) ? hi : lo) = mid;
  }
  return hi;
}

double auc_pairwise(const std::vector<double>& scores, const std::vector<bool>& positive) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) {
      continue;
    }
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) {
        continue;
      }
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / pairs;
}

std::vector<std::pair<double, double>> convex_hull_2d(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    return pts;
  }
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) {
      --k;
    }
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) {
      --k;
    }
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double polygon_area(const std::vector<std::pair<double, double>>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    s += a.first * b.second - b.first * a.second;
  }
  return 0.5 * std::abs(s);
}

double halfplane_area(const Halfspaces& p, double box) {
  std::vector<std::pair<double, double>> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  for (std::size_t i = 0; i < p.rows.size() && !poly.empty(); ++i) {
    const double a = p.rows[i][0];
    const double b = p.rows[i][1];
    const double off = p.offsets[i];
    std::vector<std::pair<double, double>> next;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const auto& u = poly[j];
      const auto& v = poly[(j + 1) % poly.size()];
      const double fu = a * u.first + b * u.second - off;
      const double fv = a * v.first + b * v.second - off;
      if (fu <= 0) {
        next.push_back(u);
      }
      if ((fu < 0 && fv > 0) || (fu > 0 && fv < 0)) {
        const double t = fu / (fu - fv);
        next.emplace_back(u.first + t * (v.first - u.first), u.second + t * (v.second - u.second));
      }
    }
    poly = std::move(next);
  }
  return poly.size() < 3 ? 0.0 : polygon_area(poly);
}

double chebyshev_radius_grid(const Halfspaces& p, double lo, double hi, double h) {
  double best = -std::numeric_limits<double>::infinity();
  for (double gx = lo; gx <= hi; gx += h) {
    for (double gy = lo; gy <= hi; gy += h) {
      double r = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < p.rows.size(); ++i) {
        r = std::min(r, p.offsets[i] - (p.rows[i][0] * gx + p.rows[i][1] * gy));
      }
      best = std::max(best, r);
    }
  }
  return best;
}

Halfspaces convex_hull_3d_facets(const std::vector<Vec>& points, double tol) {
  Halfspaces out;
  out.dim = 3;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec& a = points[i];
        const Vec& b = points[j];
        const Vec& c = points[k];
        const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        Vec nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        const double len = std::sqrt(dotp(nrm, nrm));
        if (len < 1e-12) {
          continue;
        }
        for (double& t : nrm) {
          t /= len;
        }
        const double off = dotp(nrm, a);
        bool above = false;
        bool below = false;
        for (std::size_t q = 0; q < n && !(above && below); ++q) {
          const double s = dotp(nrm, points[q]) - off;
          above = above || s > tol;
          below = below || s < -tol;
        }
        if (above && below) {
          continue;
        }
        if (above) {
          for (double& t : nrm) {
            t = -t;
          }
          out.rows.push_back(nrm);
          out.offsets.push_back(-off);
        } else {
          out.rows.push_back(nrm);
          out.offsets.push_back(off);
        }
      }
    }
  }
  return out;
}

bool inside(const Halfspaces& p, const Vec& x, double tol) {
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (dotp(p.rows[i], x) > p.offsets[i] + tol) {
      return false;
    }
  }
  return true;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) {
      ++i;
    }
    while (j < b.size() && b[j] <= t) {
      ++j;
    }
    best = std::max(best, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                   static_cast<double>(j) / static_cast<double>(b.size())));
  }
  return best;
}

std::uint64_t TestRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double TestRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double TestRng::normal() {
  // Box-Muller; u1 kept away from zero.
  const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

Vec random_unit(TestRng& rng, std::size_t dim) {
  Vec v(dim);
  double n = 0.0;
  do {
    for (double& t : v) {
      t = rng.normal();
    }
    n = std::sqrt(dotp(v, v));
  } while (n < 1e-12);
  for (double& t : v) {
    t /= n;
  }
  return v;
}

} // namespace oracle
