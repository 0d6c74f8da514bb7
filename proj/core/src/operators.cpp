#include "stagfv/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "parallel.hpp"

namespace stagfv {

namespace {

bool invert3(const double m[3][3], double inv[3][3]) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  const double scale = m[0][0] + m[1][1] + m[2][2];
  if (!(std::abs(det) > 1e-14 * scale * scale * scale)) return false;
  const double r = 1.0 / det;
  inv[0][0] = c00 * r;
  inv[1][0] = c01 * r;
  inv[2][0] = c02 * r;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * r;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * r;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * r;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * r;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * r;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * r;
  return true;
}

// Dual edges touching each slot of a kind: edge index, orientation (+1 when
// the edge leaves the slot's half-diamond) and the slot on the other end.
struct SlotIncidence {
  int count = 0;
  int edge[kMaxCellFaces] = {};
  double sign[kMaxCellFaces] = {};
  int other[kMaxCellFaces] = {};
};

using KindIncidence = std::array<SlotIncidence, kMaxCellFaces>;

const KindIncidence& incidence(CellKind kind) noexcept {
  static const auto all = [] {
    std::array<KindIncidence, kNumCellKinds> out{};
    for (int i = 0; i < kNumCellKinds; ++i) {
      const CompiledTable& t = compiled_table(static_cast<CellKind>(i));
      for (int e = 0; e < t.num_edges; ++e) {
        const int a = t.edges[e].from;
        const int b = t.edges[e].to;
        SlotIncidence& sa = out[i][a];
        sa.edge[sa.count] = e;
        sa.sign[sa.count] = 1.0;
        sa.other[sa.count++] = b;
        SlotIncidence& sb = out[i][b];
        sb.edge[sb.count] = e;
        sb.sign[sb.count] = -1.0;
        sb.other[sb.count++] = a;
      }
    }
    return out;
  }();
  return all[static_cast<std::size_t>(kind)];
}

Vec3 neighbour_offset(const Discretization& d, Index k, Index f) {
  const Index other = d.owner[f] == k ? d.neighbor[f] : d.owner[f];
  if (other == kNoCell) return 2.0 * (d.fcentroid[f] - d.ccentroid[k]);
  return d.ccentroid[other] - d.ccentroid[k];
}

}  // namespace

Discretization::Discretization(const Mesh& mesh)
    : mesh_(&mesh),
      dim_(mesh.dimension()),
      nc_(static_cast<Index>(mesh.num_cells())),
      nf_(static_cast<Index>(mesh.num_faces())) {
  const auto nf = static_cast<std::size_t>(nf_);
  const auto nc = static_cast<std::size_t>(nc_);
  owner.resize(nf);
  neighbor.resize(nf);
  sn.resize(nf);
  normal.resize(nf);
  fcentroid.resize(nf);
  area.resize(nf);
  dual_vol.resize(nf);
  half_owner.resize(nf);
  half_neighbor.resize(nf);
  oslot.resize(nf);
  nslot.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const Face& fc = mesh.faces()[f];
    owner[f] = fc.owner;
    neighbor[f] = fc.neighbor;
    sn[f] = fc.area_vector();
    normal[f] = fc.normal;
    fcentroid[f] = fc.centroid;
    area[f] = fc.area;
    dual_vol[f] = fc.dual_volume;
    half_owner[f] = fc.half_owner;
    half_neighbor[f] = fc.half_neighbor;
    oslot[f] = static_cast<std::int64_t>(slot(fc.owner, fc.owner_slot));
    nslot[f] = fc.is_boundary() ? -1 : static_cast<std::int64_t>(slot(fc.neighbor, fc.neighbor_slot));
  }
  vol.resize(nc);
  ccentroid.resize(nc);
  kind.resize(nc);
  nfaces.resize(nc);
  cface.assign(nc * kMaxCellFaces, kNoCell);
  corient.assign(nc * kMaxCellFaces, 0);
  eps_area.resize(nc);
  size.resize(nc);
  lsq_w.assign(nc * kMaxCellFaces, Vec3{});
  const double expo = (dim_ - 1.0) / dim_;
  for (std::size_t k = 0; k < nc; ++k) ccentroid[k] = mesh.cells()[k].centroid;
  for (std::size_t k = 0; k < nc; ++k) {
    const Cell& c = mesh.cells()[k];
    vol[k] = c.volume;
    kind[k] = c.kind;
    nfaces[k] = static_cast<std::uint8_t>(c.face_count());
    double sum_area = 0.0;
    for (int s = 0; s < c.face_count(); ++s) {
      cface[slot(static_cast<Index>(k), s)] = c.faces[s];
      corient[slot(static_cast<Index>(k), s)] = c.orientation[s];
      sum_area += area[static_cast<std::size_t>(c.faces[s])];
    }
    size[k] = c.volume / sum_area;
    eps_area[k] = 0.5 * std::pow(c.volume, expo);

    double m[3][3] = {};
    for (int s = 0; s < c.face_count(); ++s) {
      const Vec3 dx = neighbour_offset(*this, static_cast<Index>(k), c.faces[s]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += dx[i] * dx[j];
    }
    if (dim_ == 2) m[2][2] = 1.0;
    double inv[3][3];
    if (!invert3(m, inv)) continue;  // weights stay zero: first-order fallback
    for (int s = 0; s < c.face_count(); ++s) {
      const Vec3 dx = neighbour_offset(*this, static_cast<Index>(k), c.faces[s]);
      Vec3 w{};
      for (int i = 0; i < 3; ++i) w[i] = inv[i][0] * dx[0] + inv[i][1] * dx[1] + inv[i][2] * dx[2];
      if (dim_ == 2) w[2] = 0.0;
      lsq_w[slot(static_cast<Index>(k), s)] = w;
    }
  }
}

double minmod(double a, double b) noexcept {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double interpolate(FaceScheme scheme, double qk, double ql, bool upwind_owner) noexcept {
  if (scheme == FaceScheme::Centered) return 0.5 * (qk + ql);
  return upwind_owner ? qk : ql;
}

void cell_gradients(const Discretization& d, std::span<const double> q,
                    std::span<const double> ghost, std::vector<Vec3>& grad) {
  grad.resize(static_cast<std::size_t>(d.num_cells()));
  const Index nc = d.num_cells();
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    Vec3 g{};
    const double qk = q[k];
    for (int s = 0; s < d.nfaces[k]; ++s) {
      const std::size_t sl = d.slot(k, s);
      const Index f = d.cface[sl];
      const Index other = d.owner[f] == k ? d.neighbor[f] : d.owner[f];
      double qn;
      if (other != kNoCell) {
        qn = q[other];
      } else {
        qn = ghost.empty() ? qk : ghost[f];
      }
      const double dq = qn - qk;
      const Vec3& w = d.lsq_w[sl];
      g[0] += w[0] * dq;
      g[1] += w[1] * dq;
      g[2] += w[2] * dq;
    }
    grad[k] = g;
  }
}

namespace {

inline double face_value_impl(const Discretization& d, FaceScheme scheme, Index f,
                              bool outflow_owner, std::span<const double> q,
                              std::span<const double> ghost, std::span<const Vec3> grad) {
  const Index k = d.owner[f];
  const Index l = d.neighbor[f];
  if (l == kNoCell) {
    if (outflow_owner || ghost.empty()) return q[k];
    return ghost[f];
  }
  if (scheme != FaceScheme::MusclMinmod || grad.empty()) {
    return interpolate(scheme, q[k], q[l], outflow_owner);
  }
  const Index up = outflow_owner ? k : l;
  const Index dn = outflow_owner ? l : k;
  const double qu = q[up];
  const double qd = q[dn];
  const double fwd = qd - qu;
  const double back = 2.0 * dot(grad[up], d.ccentroid[dn] - d.ccentroid[up]) - fwd;
  const double v = qu + 0.5 * minmod(back, fwd);
  return std::clamp(v, std::min(qu, qd), std::max(qu, qd));
}

}  // namespace

double face_value(const Discretization& d, FaceScheme scheme, Index f, bool outflow_owner,
                  std::span<const double> q, std::span<const double> ghost,
                  std::span<const Vec3> grad) {
  return face_value_impl(d, scheme, f, outflow_owner, q, ghost, grad);
}

void primal_mass_fluxes(const Discretization& d, const State& s, FaceScheme scheme,
                        const BoundaryClosure* bc, std::vector<double>& flux) {
  const Index nf = d.num_faces();
  flux.resize(static_cast<std::size_t>(nf));
  std::vector<Vec3> grad;
  std::span<const double> ghost;
  if (bc) ghost = bc->rho;
  if (scheme == FaceScheme::MusclMinmod) cell_gradients(d, s.rho, ghost, grad);
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    if (bc) {
      const BcType t = bc->type[f];
      if (t == BcType::SlipWall || t == BcType::ReflexiveWall) {
        flux[f] = 0.0;
        continue;
      }
    }
    const double un = dot(s.u[f], d.sn[f]);
    flux[f] = un * face_value_impl(d, scheme, f, un >= 0.0, s.rho, ghost, grad);
  }
}

FluxField primal_mass_fluxes(const Discretization& d, const State& s, FaceScheme scheme,
                             const BoundaryClosure* bc) {
  FluxField out;
  primal_mass_fluxes(d, s, scheme, bc, out.primal);
  reconstruct_dual_fluxes(d, out);
  return out;
}

void reconstruct_dual_fluxes(const Discretization& d, FluxField& flux) {
  const Index nc = d.num_cells();
  flux.dual.resize(static_cast<std::size_t>(nc) * kMaxDualEdges);
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    const CompiledTable& t = compiled_table(d.kind[k]);
    double fk[kMaxCellFaces];
    for (int s = 0; s < t.num_faces; ++s) {
      const std::size_t sl = d.slot(k, s);
      fk[s] = d.corient[sl] * flux.primal[d.cface[sl]];
    }
    double* out = flux.dual.data() + static_cast<std::size_t>(k) * kMaxDualEdges;
    for (int e = 0; e < t.num_edges; ++e) {
      double v = 0.0;
      for (int s = 0; s < t.num_faces; ++s) v += t.alpha[e][s] * fk[s];
      out[e] = v;
    }
  }
}

std::vector<double> mass_divergence(const Discretization& d, std::span<const double> primal) {
  const Index nc = d.num_cells();
  std::vector<double> out(static_cast<std::size_t>(nc));
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    double sum = 0.0;
    for (int s = 0; s < d.nfaces[k]; ++s) {
      const std::size_t sl = d.slot(k, s);
      sum += d.corient[sl] * primal[d.cface[sl]];
    }
    out[k] = sum / d.vol[k];
  }
  return out;
}

void energy_divergence(const Discretization& d, std::span<const double> primal, const State& s,
                       FaceScheme scheme, const BoundaryClosure* bc, std::vector<double>& out) {
  const Index nf = d.num_faces();
  const Index nc = d.num_cells();
  std::vector<double> fe(static_cast<std::size_t>(nf));
  std::vector<Vec3> grad;
  std::span<const double> ghost;
  if (bc) ghost = bc->e;
  if (scheme == FaceScheme::MusclMinmod) cell_gradients(d, s.e, ghost, grad);
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const double F = primal[f];
    fe[f] = F == 0.0 ? 0.0 : F * face_value_impl(d, scheme, f, F >= 0.0, s.e, ghost, grad);
  }
  out.resize(static_cast<std::size_t>(nc));
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    double sum = 0.0;
    for (int sl = 0; sl < d.nfaces[k]; ++sl) {
      const std::size_t i = d.slot(k, sl);
      sum += d.corient[i] * fe[d.cface[i]];
    }
    out[k] = sum / d.vol[k];
  }
}

std::vector<double> energy_divergence(const Discretization& d, std::span<const double> primal,
                                      const State& s, FaceScheme scheme,
                                      const BoundaryClosure* bc) {
  std::vector<double> out;
  energy_divergence(d, primal, s, scheme, bc, out);
  return out;
}

void velocity_divergence(const Discretization& d, std::span<const Vec3> u,
                         std::vector<double>& out) {
  const Index nc = d.num_cells();
  out.resize(static_cast<std::size_t>(nc));
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    double sum = 0.0;
    for (int s = 0; s < d.nfaces[k]; ++s) {
      const std::size_t sl = d.slot(k, s);
      const Index f = d.cface[sl];
      sum += d.corient[sl] * dot(u[f], d.sn[f]);
    }
    out[k] = sum / d.vol[k];
  }
}

std::vector<double> velocity_divergence(const Discretization& d, std::span<const Vec3> u) {
  std::vector<double> out;
  velocity_divergence(d, u, out);
  return out;
}

void pressure_gradient(const Discretization& d, std::span<const double> p,
                       const BoundaryClosure* bc, std::vector<Vec3>& out) {
  const Index nf = d.num_faces();
  out.resize(static_cast<std::size_t>(nf));
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const Index k = d.owner[f];
    const Index l = d.neighbor[f];
    double jump;
    if (l != kNoCell) {
      jump = p[l] - p[k];
    } else {
      jump = bc ? bc->p[f] - p[k] : 0.0;
    }
    out[f] = (jump / d.dual_vol[f]) * d.sn[f];
  }
}

std::vector<Vec3> pressure_gradient(const Discretization& d, std::span<const double> p,
                                    const BoundaryClosure* bc) {
  std::vector<Vec3> out;
  pressure_gradient(d, p, bc, out);
  return out;
}

void dual_density(const Discretization& d, std::span<const double> rho, std::vector<double>& out) {
  const Index nf = d.num_faces();
  out.resize(static_cast<std::size_t>(nf));
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const Index l = d.neighbor[f];
    if (l == kNoCell) {
      out[f] = rho[d.owner[f]];
    } else {
      out[f] = (d.half_owner[f] * rho[d.owner[f]] + d.half_neighbor[f] * rho[l]) / d.dual_vol[f];
    }
  }
}

std::vector<double> dual_density(const Discretization& d, std::span<const double> rho) {
  std::vector<double> out;
  dual_density(d, rho, out);
  return out;
}

void momentum_convection(const Discretization& d, const FluxField& flux, std::span<const Vec3> u,
                         FaceScheme scheme, std::vector<Vec3>& out,
                         std::vector<double>* dual_mass_sum, std::vector<double>* kinetic_flux) {
  const Index nf = d.num_faces();
  const bool centered = scheme == FaceScheme::Centered;
  const bool want_mass = dual_mass_sum != nullptr;
  const bool want_kin = kinetic_flux != nullptr;
  out.resize(static_cast<std::size_t>(nf));
  if (want_mass) dual_mass_sum->resize(static_cast<std::size_t>(nf));
  if (want_kin) kinetic_flux->resize(static_cast<std::size_t>(nf));
  // Each face gathers the dual edges of its two half-diamonds: no write races
  // and a fixed summation order.
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const Vec3& uf = u[f];
    Vec3 c{};
    double msum = 0.0;
    double ksum = 0.0;
    auto side = [&](std::int64_t sl) {
      const auto k = static_cast<Index>(sl / kMaxCellFaces);
      const int a = static_cast<int>(sl % kMaxCellFaces);
      const SlotIncidence& inc = incidence(d.kind[k])[a];
      const double* fl = flux.dual.data() + static_cast<std::size_t>(k) * kMaxDualEdges;
      const std::size_t base = d.slot(k, 0);
      for (int j = 0; j < inc.count; ++j) {
        const double F = inc.sign[j] * fl[inc.edge[j]];
        const Vec3& ub = u[d.cface[base + inc.other[j]]];
        const Vec3 ue = centered ? 0.5 * (uf + ub) : (F >= 0.0 ? uf : ub);
        c += F * ue;
        msum += F;
        if (want_kin) ksum += 0.5 * F * norm2(ue);
      }
    };
    side(d.oslot[f]);
    if (d.nslot[f] >= 0) {
      side(d.nslot[f]);
    } else {
      // The boundary face itself closes D_σ.
      const double F = flux.primal[f];
      c += F * uf;
      msum += F;
      if (want_kin) ksum += 0.5 * F * norm2(uf);
    }
    out[f] = (1.0 / d.dual_vol[f]) * c;
    if (want_mass) (*dual_mass_sum)[f] = msum;
    if (want_kin) (*kinetic_flux)[f] = ksum;
  }
}

void momentum_terms(const Discretization& d, const FluxField& flux, std::span<const Vec3> u,
                    FaceScheme scheme, std::span<const double> p, const BoundaryClosure* bc,
                    double nu, MomentumTerms& out) {
  const Index nf = d.num_faces();
  const bool centered = scheme == FaceScheme::Centered;
  const bool stabilized = nu > 0.0;
  out.convection.resize(static_cast<std::size_t>(nf));
  out.pressure.resize(static_cast<std::size_t>(nf));
  if (stabilized) {
    out.stabilization.resize(static_cast<std::size_t>(nf));
  } else {
    out.stabilization.clear();
  }
  out.dual_mass_sum.resize(static_cast<std::size_t>(nf));
  out.kinetic_flux.resize(static_cast<std::size_t>(nf));
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const Vec3& uf = u[f];
    Vec3 c{};
    Vec3 st{};
    double msum = 0.0;
    double ksum = 0.0;
    auto side = [&](std::int64_t sl) {
      const auto k = static_cast<Index>(sl / kMaxCellFaces);
      const int a = static_cast<int>(sl % kMaxCellFaces);
      const SlotIncidence& inc = incidence(d.kind[k])[a];
      const double* fl = flux.dual.data() + static_cast<std::size_t>(k) * kMaxDualEdges;
      const std::size_t base = d.slot(k, 0);
      Vec3 jump{};
      for (int j = 0; j < inc.count; ++j) {
        const double F = inc.sign[j] * fl[inc.edge[j]];
        const Vec3& ub = u[d.cface[base + inc.other[j]]];
        const Vec3 ue = centered ? 0.5 * (uf + ub) : (F >= 0.0 ? uf : ub);
        c += F * ue;
        msum += F;
        ksum += 0.5 * F * norm2(ue);
        jump += uf - ub;
      }
      if (stabilized) st += (nu * d.eps_area[k]) * jump;
    };
    side(d.oslot[f]);
    const Index l = d.neighbor[f];
    double dp;
    if (l != kNoCell) {
      side(d.nslot[f]);
      dp = p[l] - p[d.owner[f]];
    } else {
      const double F = flux.primal[f];
      c += F * uf;
      msum += F;
      ksum += 0.5 * F * norm2(uf);
      dp = bc ? bc->p[f] - p[d.owner[f]] : 0.0;
    }
    const double inv = 1.0 / d.dual_vol[f];
    out.convection[f] = inv * c;
    out.pressure[f] = (inv * dp) * d.sn[f];
    if (stabilized) out.stabilization[f] = inv * st;
    out.dual_mass_sum[f] = msum;
    out.kinetic_flux[f] = ksum;
  }
}

std::vector<Vec3> momentum_convection(const Discretization& d, const FluxField& flux,
                                      std::span<const Vec3> u, FaceScheme scheme) {
  std::vector<Vec3> out;
  momentum_convection(d, flux, u, scheme, out);
  return out;
}

std::vector<double> dual_mass_flux_sum(const Discretization& d, const FluxField& flux) {
  const Index nc = d.num_cells();
  const Index nf = d.num_faces();
  std::vector<double> acc(static_cast<std::size_t>(nc) * kMaxCellFaces, 0.0);
  for (Index k = 0; k < nc; ++k) {
    const CompiledTable& t = compiled_table(d.kind[k]);
    const double* fl = flux.dual.data() + static_cast<std::size_t>(k) * kMaxDualEdges;
    const std::size_t base = d.slot(k, 0);
    for (int e = 0; e < t.num_edges; ++e) {
      acc[base + t.edges[e].from] += fl[e];
      acc[base + t.edges[e].to] -= fl[e];
    }
  }
  std::vector<double> out(static_cast<std::size_t>(nf));
  for (Index f = 0; f < nf; ++f) {
    double s = acc[static_cast<std::size_t>(d.oslot[f])];
    if (d.nslot[f] >= 0) {
      s += acc[static_cast<std::size_t>(d.nslot[f])];
    } else {
      s += flux.primal[f];
    }
    out[f] = s;
  }
  return out;
}

std::vector<double> dual_mass_residual(const Discretization& d, std::span<const double> rho_n,
                                       std::span<const double> rho_np1, const FluxField& flux,
                                       double dt) {
  std::vector<double> rd0, rd1;
  dual_density(d, rho_n, rd0);
  dual_density(d, rho_np1, rd1);
  std::vector<double> r = dual_mass_flux_sum(d, flux);
  for (std::size_t f = 0; f < r.size(); ++f) r[f] += d.dual_vol[f] / dt * (rd1[f] - rd0[f]);
  return r;
}

void stabilization(const Discretization& d, std::span<const Vec3> u, double nu,
                   std::vector<Vec3>& out) {
  const Index nf = d.num_faces();
  out.resize(static_cast<std::size_t>(nf));
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const Vec3& uf = u[f];
    Vec3 c{};
    auto side = [&](std::int64_t sl) {
      const auto k = static_cast<Index>(sl / kMaxCellFaces);
      const int a = static_cast<int>(sl % kMaxCellFaces);
      const SlotIncidence& inc = incidence(d.kind[k])[a];
      const std::size_t base = d.slot(k, 0);
      Vec3 s{};
      for (int j = 0; j < inc.count; ++j) s += uf - u[d.cface[base + inc.other[j]]];
      c += (nu * d.eps_area[k]) * s;
    };
    side(d.oslot[f]);
    if (d.nslot[f] >= 0) side(d.nslot[f]);
    out[f] = (1.0 / d.dual_vol[f]) * c;
  }
}

}  // namespace stagfv
