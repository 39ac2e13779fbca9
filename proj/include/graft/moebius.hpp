#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "graft/errors.hpp"

namespace graft {

using cplx = std::complex<double>;

// Three separated tolerance scales so failures are attributable.
inline constexpr double kTolNorm = 1e-12;   // matrix normalization
inline constexpr double kTolGeom = 1e-9;    // geometric coincidence
inline constexpr double kTolVertex = 1e-7;  // vertex-grazing guard
inline constexpr double kTolAngle = 1e-6;   // near-tangency crossing angle
inline constexpr double kPi = 3.14159265358979323846;

inline double cross2(cplx u, cplx v) { return std::imag(std::conj(u) * v); }
inline double dot2(cplx u, cplx v) { return std::real(std::conj(u) * v); }

// Hyperbolic distance in the unit-disk model.
inline double hyp_dist(cplx z, cplx w) {
  double num = std::abs(z - w);
  double den = std::abs(1.0 - std::conj(z) * w);
  return 2.0 * std::atanh(num / den);
}

// Orientation-preserving isometry of the disk model, stored as a real
// SL(2,R) matrix acting through the Cayley transform. A map and its
// negation are the same isometry.
struct MoebiusMap {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  MoebiusMap() = default;
  MoebiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    normalize();
  }

  static MoebiusMap identity() { return MoebiusMap(); }

  // SU(1,1) coefficients of the conjugated action: z -> (alpha z + beta) / (conj(beta) z + conj(alpha)).
  cplx su_alpha() const { return cplx((a + d) / 2.0, (b - c) / 2.0); }
  cplx su_beta() const { return cplx((a - d) / 2.0, -(b + c) / 2.0); }

  static MoebiusMap from_su11(cplx alpha, cplx beta) {
    return MoebiusMap(alpha.real() + beta.real(), alpha.imag() - beta.imag(),
                      -(alpha.imag() + beta.imag()), alpha.real() - beta.real());
  }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }

  void normalize() {
    double dt = det();
    if (dt <= 0.0) fail(ErrorKind::Internal, "MoebiusMap with non-positive determinant");
    if (std::abs(dt - 1.0) > kTolNorm) {
      double s = std::sqrt(dt);
      a /= s; b /= s; c /= s; d /= s;
    }
  }

  MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }

  cplx apply(cplx z) const {
    cplx al = su_alpha(), be = su_beta();
    return (al * z + be) / (std::conj(be) * z + std::conj(al));
  }

  // Image of a boundary point, snapped back to the unit circle.
  cplx apply_boundary(cplx z) const {
    cplx w = apply(z);
    double m = std::abs(w);
    if (m < 0.5) fail(ErrorKind::Internal, "boundary point mapped far from circle");
    return w / m;
  }
};

inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return MoebiusMap(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                    m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
}

// Equality as isometries: matrices agree up to global sign.
inline bool approx_equal_projective(const MoebiusMap& m, const MoebiusMap& n, double tol = kTolGeom) {
  double dplus = std::max(std::max(std::abs(m.a - n.a), std::abs(m.b - n.b)),
                          std::max(std::abs(m.c - n.c), std::abs(m.d - n.d)));
  double dminus = std::max(std::max(std::abs(m.a + n.a), std::abs(m.b + n.b)),
                           std::max(std::abs(m.c + n.c), std::abs(m.d + n.d)));
  return std::min(dplus, dminus) <= tol;
}

inline bool is_identity_projective(const MoebiusMap& m, double tol = kTolGeom) {
  return approx_equal_projective(m, MoebiusMap::identity(), tol);
}

// Disk translation taking a to the origin.
inline MoebiusMap disk_translation_to_origin(cplx a) {
  double s = std::sqrt(1.0 - std::norm(a));
  return MoebiusMap::from_su11(cplx(1.0 / s, 0.0), -a / s);
}

inline MoebiusMap disk_rotation(double theta) {
  return MoebiusMap::from_su11(std::polar(1.0, theta / 2.0), cplx(0.0, 0.0));
}

// The unique orientation-preserving isometry with u1 -> w1 and u2 -> w2.
// Requires d(u1,u2) = d(w1,w2); the residual is checked by the caller's
// geometric invariants rather than here.
inline MoebiusMap map_point_pair(cplx u1, cplx u2, cplx w1, cplx w2) {
  MoebiusMap tu = disk_translation_to_origin(u1);
  MoebiusMap tw = disk_translation_to_origin(w1);
  double theta = std::arg(tw.apply(w2)) - std::arg(tu.apply(u2));
  return compose(tw.inverse(), compose(disk_rotation(theta), tu));
}

// === Geodesics ===

// Complete geodesic of the disk model: the circular arc (or diameter)
// orthogonal to the unit circle with the given ideal endpoints.
// Endpoints are unordered; construction canonicalizes by boundary angle.
struct Geodesic {
  cplx e1, e2;          // ideal endpoints, |e| = 1
  bool diameter = false;
  cplx center{};        // circle carrier: center (|center| > 1)
  double radius = 0.0;  // circle carrier: radius
  cplx dir{};           // diameter carrier: unit direction (= canonical e1)

  Geodesic(cplx p, cplx q) {
    p /= std::abs(p);
    q /= std::abs(q);
    if (std::abs(p - q) <= kTolGeom)
      fail(ErrorKind::Internal, "geodesic endpoints coincide");
    // Canonical order by boundary angle in [0, 2*pi).
    double ap = std::arg(p), aq = std::arg(q);
    if (ap < 0) ap += 2 * kPi;
    if (aq < 0) aq += 2 * kPi;
    if (ap <= aq) { e1 = p; e2 = q; } else { e1 = q; e2 = p; }
    double det = cross2(e1, e2);
    if (std::abs(det) < kTolGeom) {
      diameter = true;
      dir = e1;
    } else {
      center = cplx((e2.imag() - e1.imag()) / det, (e1.real() - e2.real()) / det);
      radius = std::sqrt(std::norm(center) - 1.0);
    }
  }

  // Monotone parameter along the carrier; used only for ordering and
  // interval membership, not as arclength.
  double param(cplx z) const {
    if (diameter) return dot2(dir, z);
    return std::remainder(std::arg(z - center) - std::arg(-center), 2 * kPi);
  }

  cplx point_at(double t) const {
    if (diameter) return t * dir;
    return center + radius * std::polar(1.0, std::arg(-center) + t);
  }

  double dist_to_carrier(cplx z) const {
    if (diameter) return std::abs(cross2(dir, z));
    return std::abs(std::abs(z - center) - radius);
  }

  bool on_carrier(cplx z, double tol = kTolGeom) const { return dist_to_carrier(z) <= tol; }

  cplx closest_point_to_origin() const {
    if (diameter) return cplx(0.0, 0.0);
    double m = std::abs(center);
    return center * ((m - radius) / m);
  }

  // Unit tangent at a carrier point; sign is arbitrary (param-increasing).
  cplx tangent_at(cplx z) const {
    if (diameter) return dir;
    cplx rad = (z - center) / std::abs(z - center);
    cplx t = cplx(-rad.imag(), rad.real());
    // param increases counterclockwise around the center iff arg grows.
    return t;
  }
};

inline bool same_geodesic(const Geodesic& g, const Geodesic& h, double tol = kTolVertex) {
  return (std::abs(g.e1 - h.e1) <= tol && std::abs(g.e2 - h.e2) <= tol) ||
         (std::abs(g.e1 - h.e2) <= tol && std::abs(g.e2 - h.e1) <= tol);
}

// Geodesic through two interior points of the disk.
inline Geodesic geodesic_through(cplx u, cplx v) {
  if (std::abs(u - v) <= kTolGeom) fail(ErrorKind::Internal, "geodesic through coincident points");
  double det = cross2(u, v);
  if (std::abs(det) < kTolNorm * 10) {
    cplx d = (v - u) / std::abs(v - u);
    return Geodesic(d, -d);
  }
  // Orthogonal circle: Re(conj(p) c) = (1+|p|^2)/2 for p = u, v.
  double bu = (1.0 + std::norm(u)) / 2.0;
  double bv = (1.0 + std::norm(v)) / 2.0;
  cplx c((bu * v.imag() - bv * u.imag()) / det, (bv * u.real() - bu * v.real()) / det);
  double r = std::sqrt(std::norm(c) - 1.0);
  // Ideal endpoints of the orthogonal circle.
  double m2 = std::norm(c);
  cplx ortho(-c.imag(), c.real());
  cplx p1 = (c + ortho * std::sqrt(m2 - 1.0)) / m2;
  cplx p2 = (c - ortho * std::sqrt(m2 - 1.0)) / m2;
  return Geodesic(p1, p2);
}

inline Geodesic apply(const MoebiusMap& m, const Geodesic& g) {
  return Geodesic(m.apply_boundary(g.e1), m.apply_boundary(g.e2));
}

// Transverse intersection points of two complete geodesics, inside the
// open disk. Coincident carriers are reported through the flag.
struct CarrierIntersection {
  bool coincident = false;
  std::vector<cplx> points;
};

inline CarrierIntersection intersect_carriers(const Geodesic& g, const Geodesic& h) {
  CarrierIntersection out;
  if (same_geodesic(g, h)) {
    out.coincident = true;
    return out;
  }
  auto keep = [&out](cplx z) {
    if (std::abs(z) < 1.0 - kTolNorm) out.points.push_back(z);
  };
  if (g.diameter && h.diameter) {
    keep(cplx(0.0, 0.0));
    return out;
  }
  if (g.diameter || h.diameter) {
    const Geodesic& dia = g.diameter ? g : h;
    const Geodesic& cir = g.diameter ? h : g;
    double hh = dot2(dia.dir, cir.center);
    double disc = hh * hh - 1.0;
    if (disc <= 0.0) return out;
    double s = std::sqrt(disc);
    keep((hh - s) * dia.dir);
    keep((hh + s) * dia.dir);
    return out;
  }
  cplx delta = h.center - g.center;
  double d = std::abs(delta);
  if (d < kTolNorm) return out;
  double aa = (d * d + g.radius * g.radius - h.radius * h.radius) / (2.0 * d);
  double h2 = g.radius * g.radius - aa * aa;
  if (h2 <= 0.0) return out;
  cplx base = g.center + aa * delta / d;
  cplx off = std::sqrt(h2) * cplx(-delta.imag(), delta.real()) / d;
  keep(base + off);
  keep(base - off);
  return out;
}

// Geodesic arc between two points of the same carrier.
struct GeodesicSegment {
  Geodesic carrier;
  cplx p_from, p_to;
  double t_from, t_to;

  GeodesicSegment(const Geodesic& g, cplx from, cplx to)
      : carrier(g), p_from(from), p_to(to), t_from(g.param(from)), t_to(g.param(to)) {
    if (!g.on_carrier(from) || !g.on_carrier(to))
      fail(ErrorKind::Internal, "segment endpoint off its carrier");
  }

  double t_min() const { return std::min(t_from, t_to); }
  double t_max() const { return std::max(t_from, t_to); }

  bool contains_param(double t, double pad = kTolGeom) const {
    return t >= t_min() - pad && t <= t_max() + pad;
  }

  cplx midpoint() const { return carrier.point_at((t_from + t_to) / 2.0); }
};

// Fixed-point pair of a hyperbolic isometry, as (repelling, attracting).
inline std::array<cplx, 2> axis_fixed_points(const MoebiusMap& m) {
  if (std::abs(m.trace()) <= 2.0 + kTolGeom)
    fail(ErrorKind::NotHyperbolic, "axis of a non-hyperbolic map");
  cplx al = m.su_alpha(), be = m.su_beta();
  double y = al.imag();
  double s = std::sqrt(std::norm(be) - y * y);
  cplx z1 = (cplx(0.0, y) + s) / std::conj(be);
  cplx z2 = (cplx(0.0, y) - s) / std::conj(be);
  z1 /= std::abs(z1);
  z2 /= std::abs(z2);
  // Attracting fixed point: |f'(z)| = |conj(be) z + conj(al)|^-2 > ... < 1.
  double d1 = std::abs(std::conj(be) * z1 + std::conj(al));
  if (d1 > 1.0) return {z2, z1};
  return {z1, z2};
}

// Axis of a hyperbolic isometry as an unoriented geodesic.
inline Geodesic axis_of(const MoebiusMap& m) {
  auto fp = axis_fixed_points(m);
  return Geodesic(fp[0], fp[1]);
}

}  // namespace graft
