#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stagfv/dualflux.hpp"
#include "stagfv/mesh.hpp"

namespace stagfv {

enum class FaceScheme : std::uint8_t { Upwind, Centered, MusclMinmod };

enum class BcType : std::uint8_t { Interior, Dirichlet, Outlet, SlipWall, ReflexiveWall };

/// Staggered unknowns: ρ, e, p on cells, velocity on faces.
struct State {
  std::vector<double> rho;
  std::vector<double> e;
  std::vector<double> p;
  std::vector<Vec3> u;
  double time = 0.0;
  long step = 0;
};

/// Flat copies of the mesh quantities the kernels touch every step.
class Discretization {
 public:
  explicit Discretization(const Mesh& mesh);

  const Mesh& mesh() const noexcept { return *mesh_; }
  int dim() const noexcept { return dim_; }
  Index num_cells() const noexcept { return nc_; }
  Index num_faces() const noexcept { return nf_; }

  // faces
  std::vector<Index> owner, neighbor;
  std::vector<Vec3> sn;  // |σ| n, n outward from the owner
  std::vector<Vec3> normal;
  std::vector<Vec3> fcentroid;
  std::vector<double> area, dual_vol, half_owner, half_neighbor;
  std::vector<std::int64_t> oslot, nslot;  // cell-slot index of each side, -1 on the boundary
  // cells
  std::vector<double> vol;
  std::vector<Vec3> ccentroid;
  std::vector<CellKind> kind;
  std::vector<std::uint8_t> nfaces;
  std::vector<Index> cface;          // kMaxCellFaces per cell
  std::vector<std::int8_t> corient;  // +1 owner, -1 neighbor
  std::vector<double> eps_area;      // dual-face measure used by the stabilization
  std::vector<Vec3> lsq_w;           // gradient weights, kMaxCellFaces per cell
  std::vector<double> size;          // |K| / Σ|σ|

  std::size_t slot(Index k, int s) const noexcept {
    return static_cast<std::size_t>(k) * kMaxCellFaces + static_cast<std::size_t>(s);
  }

 private:
  const Mesh* mesh_;
  int dim_;
  Index nc_, nf_;
};

/// Boundary-face closure produced by the BC layer: condition type per face and
/// ghost values (ρ, e, p) used for upstream states and the pressure gradient.
struct BoundaryClosure {
  std::vector<BcType> type;
  std::vector<double> rho, e, p;
  std::vector<Vec3> u;  // imposed velocity on Dirichlet faces
};

struct FluxField {
  std::vector<double> primal;  // F_σ oriented out of the owner (kg/s)
  std::vector<double> dual;    // F_{σ,ε}, kMaxDualEdges per cell, table edge order
};

/// Face values by scheme; `upwind_owner` selects the owner side as upstream.
double interpolate(FaceScheme scheme, double qk, double ql, bool upwind_owner) noexcept;
double minmod(double a, double b) noexcept;

/// Least-squares cell gradients of a cell field; boundary faces use the ghost
/// value at the mirrored centroid (or the cell value without closure).
void cell_gradients(const Discretization& d, std::span<const double> q,
                    std::span<const double> ghost, std::vector<Vec3>& grad);

/// Scalar face value on face f for a flux of the given sign.
double face_value(const Discretization& d, FaceScheme scheme, Index f, bool outflow_owner,
                  std::span<const double> q, std::span<const double> ghost,
                  std::span<const Vec3> grad);

void primal_mass_fluxes(const Discretization& d, const State& s, FaceScheme scheme,
                        const BoundaryClosure* bc, std::vector<double>& flux);
FluxField primal_mass_fluxes(const Discretization& d, const State& s, FaceScheme scheme,
                             const BoundaryClosure* bc = nullptr);

/// Fills flux.dual from flux.primal with the per-kind coefficient tables.
void reconstruct_dual_fluxes(const Discretization& d, FluxField& flux);

/// (1/|K|) Σ_σ F_{K,σ}.
std::vector<double> mass_divergence(const Discretization& d, std::span<const double> primal);

/// (1/|K|) Σ_σ F_{K,σ} e_σ with e_σ upstream of F (or by scheme).
void energy_divergence(const Discretization& d, std::span<const double> primal,
                       const State& s, FaceScheme scheme, const BoundaryClosure* bc,
                       std::vector<double>& out);
std::vector<double> energy_divergence(const Discretization& d, std::span<const double> primal,
                                      const State& s, FaceScheme scheme,
                                      const BoundaryClosure* bc = nullptr);

/// (1/|K|) Σ_σ |σ| u_σ·n_{K,σ}.
void velocity_divergence(const Discretization& d, std::span<const Vec3> u,
                         std::vector<double>& out);
std::vector<double> velocity_divergence(const Discretization& d, std::span<const Vec3> u);

/// (|σ|/|D_σ|)(p_L - p_K) n_{K,σ}; boundary faces use the ghost pressure
/// (zero gradient without closure).
void pressure_gradient(const Discretization& d, std::span<const double> p,
                       const BoundaryClosure* bc, std::vector<Vec3>& out);
std::vector<Vec3> pressure_gradient(const Discretization& d, std::span<const double> p,
                                    const BoundaryClosure* bc = nullptr);

/// |D_σ| ρ_D = |D_{K,σ}| ρ_K + |D_{L,σ}| ρ_L; ρ_K on boundary faces.
void dual_density(const Discretization& d, std::span<const double> rho, std::vector<double>& out);
std::vector<double> dual_density(const Discretization& d, std::span<const double> rho);

/// (1/|D_σ|) [Σ_ε F_{σ,ε} u_ε + F_{K,σ} u_σ on boundary faces], with
/// u_ε = u_σ if F_{σ,ε} >= 0 else u_σ' (Upwind, MusclMinmod) or their mean
/// (Centered). Also returns the dual mass-flux sum per face when requested.
void momentum_convection(const Discretization& d, const FluxField& flux, std::span<const Vec3> u,
                         FaceScheme scheme, std::vector<Vec3>& out,
                         std::vector<double>* dual_mass_sum = nullptr,
                         std::vector<double>* kinetic_flux = nullptr);
std::vector<Vec3> momentum_convection(const Discretization& d, const FluxField& flux,
                                      std::span<const Vec3> u, FaceScheme scheme);

/// Everything the momentum update needs in one sweep over the faces:
/// convection (as momentum_convection), ðp, stabilization (left empty when
/// nu = 0), and the unscaled dual mass-flux and kinetic-energy-flux sums.
struct MomentumTerms {
  std::vector<Vec3> convection;
  std::vector<Vec3> pressure;
  std::vector<Vec3> stabilization;
  std::vector<double> dual_mass_sum;
  std::vector<double> kinetic_flux;
};

void momentum_terms(const Discretization& d, const FluxField& flux, std::span<const Vec3> u,
                    FaceScheme scheme, std::span<const double> p, const BoundaryClosure* bc,
                    double nu, MomentumTerms& out);

/// Σ_ε F_{σ,ε} (+ F_{K,σ} on boundary faces), unscaled.
std::vector<double> dual_mass_flux_sum(const Discretization& d, const FluxField& flux);

/// (|D_σ|/δt)(ρ_D^{n+1} - ρ_D^n) + Σ_ε F_{σ,ε} (+ F_{K,σ} on boundary faces).
std::vector<double> dual_mass_residual(const Discretization& d, std::span<const double> rho_n,
                                       std::span<const double> rho_np1, const FluxField& flux,
                                       double dt);

/// (1/|D_σ|) Σ_ε ν |ε| (u_σ - u_σ') over the dual edges touching σ.
void stabilization(const Discretization& d, std::span<const Vec3> u, double nu,
                   std::vector<Vec3>& out);

}  // namespace stagfv
