// sig2d - fundamental domains, seam identifications, tangent transport

#ifndef SIG2D_QUOTIENT_HPP_
#define SIG2D_QUOTIENT_HPP_

#include <functional>
#include <string>
#include <vector>

#include "sig2d/geometry.hpp"

namespace sig2d {

enum class Topology { Plane, InfiniteMobius, CompactMobius, RP2Square };

std::string topology_name(Topology t);

struct Mat2 {
  // row-major [[a, b], [c, d]]
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return Mat2{}; }
  static Mat2 diag(double p, double q) { return Mat2{p, 0.0, 0.0, q}; }

  double det() const { return a * d - b * c; }
  bool is_identity(double tol = 0.0) const;

  Mat2 operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
  }
  void apply(double& vt, double& vx) const {
    double nt = a * vt + b * vx;
    double nx = c * vt + d * vx;
    vt = nt;
    vx = nx;
  }
};

struct CanonicalResult {
  ChartPoint point;      // in the fundamental domain
  Mat2 jacobian;         // accumulated deck-map differential (raw -> canonical)
  bool moved = false;
  std::string seam;      // id of the (last) germ applied, empty if none
};

// One identification germ: an edge of the fundamental domain, the deck map
// attaching it to the opposite edge, and the (constant) Jacobian of that map.
struct SeamGerm {
  std::string id;
  std::function<ChartPoint(double)> near;      // seam parameter s in [0,1] -> edge point
  std::function<ChartPoint(ChartPoint)> deck;  // smooth extension near the edge
  Mat2 jac;                                    // differential of deck
  double nt, nx;                               // inward transverse direction at the near edge
};

struct SeamSample {
  double s;
  double d0, d1, d2;  // mismatch entries (metric: dgtt,dgtx,dgxx; vector: dvt,dvx,0)
};

struct SeamReport {
  std::string seam;
  int order = 0;
  std::vector<SeamSample> samples;
  double max_abs_mismatch = 0.0;
};

class Manifold {
 public:
  explicit Manifold(Topology topo);

  Topology topology() const { return topo_; }
  const std::vector<SeamGerm>& seams() const { return seams_; }

  // Folds a raw chart point into the fundamental domain and reports the
  // accumulated deck-map differential. Plane is the identity. RP2Square
  // applies at most one germ per edge pair; points farther outside the
  // square are rejected.
  CanonicalResult canonicalize(const ChartPoint& raw) const;

  // Push-forward of v under the canonicalizing deck maps.
  TangentVector transport_vector(const TangentVector& v) const;

  // Per-seam mismatch G_near - J^T G_far(deck(.)) J (order 0) or the
  // transverse-derivative analogue (order 1, central differences h = 1e-5).
  std::vector<SeamReport> seam_compatibility(const MetricField& m, int order,
                                             int n_samples) const;

  // Mismatch between V on the near edge and V transported back from the far
  // side; zero iff V descends to the quotient along that seam.
  std::vector<SeamReport> vector_field_seam_check(const VectorField& V,
                                                  int n_samples) const;

 private:
  Topology topo_;
  std::vector<SeamGerm> seams_;
};

// Boundary point of the compact Moebius strip reached by the crosscap
// attaching map at disk-boundary angle theta in [0, 2*pi).
ChartPoint attach_psi(double theta);

}  // namespace sig2d

#endif
