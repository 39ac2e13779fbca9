#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "graft/errors.hpp"
#include "graft/moebius.hpp"
#include "graft/word.hpp"

namespace graft {

// Fixed generic rotation of the polygon; part of the canonical surface
// model so every result is reproducible bit for bit.
inline constexpr double kPolygonOffset = 0.01;

// Regular 4g-gon fundamental polygon for the genus-g surface group, with
// the side labels a1 b1 a1^-1 b1^-1 ... read counterclockwise and the
// standard side pairings. Crossing side k outward reads letter(k); the
// tile across side k is pairing(k) applied to the polygon.
class FundamentalPolygon {
 public:
  struct Side {
    Geodesic carrier;
    GeodesicSegment segment;
    Letter letter;
    int partner;
    bool owned;  // half-open convention: a boundary point belongs to the
                 // positive-letter copy of its glued side
  };

  explicit FundamentalPolygon(int genus) : genus_(genus) {
    if (genus < 2) fail(ErrorKind::UnsupportedGenus, "fundamental polygon needs genus >= 2");
    int n = 4 * genus;
    // Circumradius from the right triangle (center, side midpoint, vertex)
    // with angles pi/n, pi/2, pi/n: cosh R = cot(pi/n)^2. Correctness is
    // enforced by the angle and relator invariants, not trusted from here.
    double cot = 1.0 / std::tan(kPi / n);
    double cosh_r = cot * cot;
    double euclid = std::sqrt((cosh_r - 1.0) / (cosh_r + 1.0));
    vertices_.reserve(n);
    for (int k = 0; k < n; ++k)
      vertices_.push_back(std::polar(euclid, kPolygonOffset + 2.0 * kPi * k / n));
    sides_.reserve(n);
    for (int k = 0; k < n; ++k) {
      cplx v0 = vertices_[k];
      cplx v1 = vertices_[(k + 1) % n];
      Geodesic carrier = geodesic_through(v0, v1);
      int m = k / 4;
      int r = k % 4;
      Letter letter{static_cast<std::uint8_t>(r % 2), static_cast<std::uint16_t>(m + 1),
                    static_cast<std::int8_t>(r < 2 ? 1 : -1)};
      int partner = (r < 2) ? k + 2 : k - 2;
      sides_.push_back(Side{carrier, GeodesicSegment(carrier, v0, v1), letter, partner, r < 2});
    }
    pairings_.reserve(n);
    for (int k = 0; k < n; ++k) {
      // pairing(k) carries the partner side onto side k with endpoints
      // reversed, so the glued surface is orientable.
      int q = sides_[k].partner;
      MoebiusMap m = map_point_pair(vertices_[q], vertices_[(q + 1) % n],
                                    vertices_[(k + 1) % n], vertices_[k]);
      pairings_.push_back(m);
    }
    pairing_invs_.reserve(n);
    for (int k = 0; k < n; ++k) pairing_invs_.push_back(pairings_[k].inverse());
  }

  int genus() const { return genus_; }
  int side_count() const { return 4 * genus_; }
  const std::vector<cplx>& vertices() const { return vertices_; }
  const Side& side(int k) const { return sides_[static_cast<std::size_t>(k)]; }
  const MoebiusMap& pairing(int k) const { return pairings_[static_cast<std::size_t>(k)]; }
  const MoebiusMap& pairing_inv(int k) const { return pairing_invs_[static_cast<std::size_t>(k)]; }

  int side_of_letter(const Letter& l) const {
    return 4 * (l.index - 1) + (l.kind == 0 ? 0 : 1) + (l.sign < 0 ? 2 : 0);
  }

  const MoebiusMap& generator_map(const Letter& l) const {
    return pairings_[static_cast<std::size_t>(side_of_letter(l))];
  }

  // Signed clearance of z from side k: positive on the polygon side.
  double side_margin(cplx z, int k) const {
    const Geodesic& g = sides_[static_cast<std::size_t>(k)].carrier;
    return std::abs(z - g.center) - g.radius;
  }

  bool contains(cplx z, double tol = kTolGeom) const {
    for (int k = 0; k < side_count(); ++k)
      if (side_margin(z, k) < -tol) return false;
    return true;
  }

  // Side whose segment passes within tol of z, if any.
  std::optional<int> side_near(cplx z, double tol = kTolGeom) const {
    for (int k = 0; k < side_count(); ++k) {
      const Side& s = sides_[static_cast<std::size_t>(k)];
      if (std::abs(side_margin(z, k)) <= tol && s.segment.contains_param(s.carrier.param(z), tol))
        return k;
    }
    return std::nullopt;
  }

  // Half-open membership: interior points, or boundary points lying on an
  // owned (positive-letter) side.
  bool owns_point(cplx z, double tol = kTolGeom) const {
    if (!contains(z, tol)) return false;
    if (auto k = side_near(z, tol)) return sides_[static_cast<std::size_t>(*k)].owned;
    return true;
  }

  double min_vertex_distance(const Geodesic& g) const {
    double best = 1e9;
    for (cplx v : vertices_) best = std::min(best, g.dist_to_carrier(v));
    return best;
  }

  // Tile transformation G with G^-1(z) in the polygon. Walks the tiling by
  // crossing the most violated side; each step strictly decreases the
  // distance to the orbit of the origin, so the walk terminates.
  MoebiusMap locate_tile(cplx z) const {
    MoebiusMap g = MoebiusMap::identity();
    cplx cur = z;
    for (int iter = 0; iter < 20000; ++iter) {
      int worst = -1;
      double worst_margin = -kTolGeom;
      for (int k = 0; k < side_count(); ++k) {
        double m = side_margin(cur, k);
        if (m < worst_margin) { worst_margin = m; worst = k; }
      }
      if (worst < 0) return g;
      cur = pairing_invs_[static_cast<std::size_t>(worst)].apply(cur);
      g = compose(g, pairings_[static_cast<std::size_t>(worst)]);
    }
    fail(ErrorKind::Internal, "tile walk failed to terminate");
  }

  MoebiusMap holonomy(const Word& w) const {
    MoebiusMap h = MoebiusMap::identity();
    for (const Letter& l : w) h = compose(h, generator_map(l));
    return h;
  }

  MoebiusMap holonomy(const std::string& text) const { return holonomy(parse_word(text, genus_)); }

  // Interior angle at vertex k, measured between the two incident sides.
  double interior_angle(int k) const {
    int n = side_count();
    cplx v = vertices_[static_cast<std::size_t>(k)];
    const Side& in = sides_[static_cast<std::size_t>((k + n - 1) % n)];
    const Side& out = sides_[static_cast<std::size_t>(k)];
    cplx prev = vertices_[static_cast<std::size_t>((k + n - 1) % n)];
    cplx next = vertices_[static_cast<std::size_t>((k + 1) % n)];
    cplx u = in.carrier.tangent_at(v);
    if (dot2(u, prev - v) < 0) u = -u;
    cplx w = out.carrier.tangent_at(v);
    if (dot2(w, next - v) < 0) w = -w;
    double c = std::clamp(dot2(u, w), -1.0, 1.0);
    return std::acos(c);
  }

 private:
  int genus_;
  std::vector<cplx> vertices_;
  std::vector<Side> sides_;
  std::vector<MoebiusMap> pairings_;
  std::vector<MoebiusMap> pairing_invs_;
};

// One step of tracing a geodesic through the tiling.
struct DevelopStep {
  GeodesicSegment segment;  // maximal sub-arc inside the base polygon
  int exit_side;
  Letter exit_letter;
  MoebiusMap next_tile;
};

// Traces the geodesic `geo` (a lift in disk coordinates) across the tile
// start_tile * polygon: pulls it back to base coordinates, clips it against
// the polygon, and reports the exit crossing. `forward` gives the traversal
// direction as a sign on the carrier parameter.
inline DevelopStep develop_segment(const FundamentalPolygon& poly, const Geodesic& geo,
                                   const MoebiusMap& start_tile, double forward = 1.0) {
  Geodesic local = apply(start_tile.inverse(), geo);
  if (poly.min_vertex_distance(local) < kTolVertex)
    fail(ErrorKind::VertexGrazing, "geodesic passes too close to a polygon vertex");
  struct Hit { double t; int side; cplx z; };
  std::vector<Hit> hits;
  for (int k = 0; k < poly.side_count(); ++k) {
    const auto& side = poly.side(k);
    CarrierIntersection ci = intersect_carriers(local, side.carrier);
    if (ci.coincident)
      fail(ErrorKind::VertexGrazing, "geodesic runs along a polygon side");
    for (cplx z : ci.points) {
      if (!side.segment.contains_param(side.carrier.param(z), kTolGeom)) continue;
      hits.push_back(Hit{forward * local.param(z), k, z});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.t < y.t; });
  // Merge duplicate detections of the same boundary point (numerically
  // identical hits found through two adjacent sides are vertex hits, which
  // the grazing guard above already excluded).
  if (hits.size() != 2) {
    if (hits.size() < 2) fail(ErrorKind::NoIntersection, "geodesic misses the polygon");
    fail(ErrorKind::VertexGrazing, "ambiguous polygon crossing");
  }
  cplx mid = local.point_at(forward * (hits[0].t + hits[1].t) / 2.0);
  if (!poly.contains(mid, kTolVertex))
    fail(ErrorKind::NoIntersection, "geodesic misses the polygon interior");
  const Hit& exit = hits[1];
  const auto& side = poly.side(exit.side);
  return DevelopStep{GeodesicSegment(local, hits[0].z, exit.z), exit.side, side.letter,
                     compose(start_tile, poly.pairing(exit.side))};
}

}  // namespace graft
