#include "stagfv/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "stagfv/errors.hpp"

namespace stagfv {

namespace {

// Hexahedron corners in template order as (di, dj, dk) offsets.
constexpr int kHexCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                  {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

int hex_slot(int di, int dj, int dk) {
  for (int s = 0; s < 8; ++s) {
    if (kHexCorner[s][0] == di && kHexCorner[s][1] == dj && kHexCorner[s][2] == dk) return s;
  }
  return -1;
}

int split_factor(CellKind kind) {
  switch (kind) {
    case CellKind::Triangle:
    case CellKind::Prism: return 2;
    case CellKind::Tetrahedron:
    case CellKind::Pyramid: return 6;
    default: return 1;
  }
}

struct Builder {
  std::vector<Vec3> vertices;
  std::vector<CellRecord> cells;

  Index add_vertex(const Vec3& p) {
    vertices.push_back(p);
    return static_cast<Index>(vertices.size() - 1);
  }

  // c: hexahedron corners in template order. Prism triangles lie in planes
  // normal to `axis`.
  void add_hex_split(CellKind kind, const Index c[8], Axis axis) {
    switch (kind) {
      case CellKind::Hexahedron:
        cells.push_back({kind, {c, c + 8}});
        return;
      case CellKind::Prism: {
        const int a = static_cast<int>(axis);
        const int b = (a + 1) % 3;
        const int cc = (a + 2) % 3;
        auto corner = [&](int da, int db, int dc) {
          int d[3];
          d[a] = da;
          d[b] = db;
          d[cc] = dc;
          return c[hex_slot(d[0], d[1], d[2])];
        };
        const int q[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        const int tris[2][3] = {{0, 1, 2}, {0, 2, 3}};
        for (const auto& t : tris) {
          std::vector<Index> v(6);
          for (int i = 0; i < 3; ++i) {
            v[i] = corner(0, q[t[i]][0], q[t[i]][1]);
            v[i + 3] = corner(1, q[t[i]][0], q[t[i]][1]);
          }
          cells.push_back({CellKind::Prism, std::move(v)});
        }
        return;
      }
      case CellKind::Pyramid: {
        Vec3 centre{};
        for (int i = 0; i < 8; ++i) centre += vertices[static_cast<std::size_t>(c[i])];
        Index apex = add_vertex((1.0 / 8.0) * centre);
        for (const FaceTemplate& t : face_templates(CellKind::Hexahedron)) {
          // Outward hex face (a,b,c,d) becomes the base (a,d,c,b) seen from the apex.
          cells.push_back({CellKind::Pyramid,
                           {c[t.vertices[0]], c[t.vertices[3]], c[t.vertices[2]],
                            c[t.vertices[1]], apex}});
        }
        return;
      }
      case CellKind::Tetrahedron: {
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) {
          int d[4][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, 1, 1}};
          d[1][p[0]] = 1;
          d[2][p[0]] = 1;
          d[2][p[1]] = 1;
          // Signed volume in index space fixes the orientation.
          int e1[3], e2[3], e3[3];
          for (int i = 0; i < 3; ++i) {
            e1[i] = d[1][i] - d[0][i];
            e2[i] = d[2][i] - d[0][i];
            e3[i] = d[3][i] - d[0][i];
          }
          int det = e1[0] * (e2[1] * e3[2] - e2[2] * e3[1]) -
                    e1[1] * (e2[0] * e3[2] - e2[2] * e3[0]) +
                    e1[2] * (e2[0] * e3[1] - e2[1] * e3[0]);
          std::vector<Index> v(4);
          for (int i = 0; i < 4; ++i) v[i] = c[hex_slot(d[i][0], d[i][1], d[i][2])];
          if (det < 0) std::swap(v[1], v[2]);
          cells.push_back({CellKind::Tetrahedron, std::move(v)});
        }
        return;
      }
      default:
        throw MeshStructureError(fmt::format("cannot split a hexahedron into {}", to_string(kind)));
    }
  }
};

std::string box_tag(const Face& f) {
  int a = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(f.normal[i]) > std::abs(f.normal[a])) a = i;
  }
  static const char* names[3][2] = {{"xmin", "xmax"}, {"ymin", "ymax"}, {"zmin", "zmax"}};
  return names[a][f.normal[a] > 0.0 ? 1 : 0];
}

void check_capacity(std::size_t cells, std::size_t max_cells) {
  if (cells > max_cells) {
    throw CapacityError(
        fmt::format("mesh would have {} cells, above the budget of {}", cells, max_cells));
  }
}

// Structured n_x x n_y x n_z hexahedral grid; `kind_of(i,j,k)` picks how each
// hexahedron is split.
template <class KindOf>
Mesh structured_3d(std::span<const double> xs, std::span<const double> ys,
                   std::span<const double> zs, KindOf kind_of, Axis prism_axis,
                   const VertexMap& map, const BoundaryClassifier& classifier) {
  const auto nx = static_cast<Index>(xs.size());
  const auto ny = static_cast<Index>(ys.size());
  const auto nz = static_cast<Index>(zs.size());
  Builder b;
  b.vertices.reserve(static_cast<std::size_t>(nx) * ny * nz);
  for (Index k = 0; k < nz; ++k) {
    for (Index j = 0; j < ny; ++j) {
      for (Index i = 0; i < nx; ++i) b.add_vertex({xs[i], ys[j], zs[k]});
    }
  }
  auto id = [&](Index i, Index j, Index k) { return i + nx * (j + ny * k); };
  for (Index k = 0; k + 1 < nz; ++k) {
    for (Index j = 0; j + 1 < ny; ++j) {
      for (Index i = 0; i + 1 < nx; ++i) {
        Index c[8];
        for (int s = 0; s < 8; ++s) {
          c[s] = id(i + kHexCorner[s][0], j + kHexCorner[s][1], k + kHexCorner[s][2]);
        }
        b.add_hex_split(kind_of(i, j, k), c, prism_axis);
      }
    }
  }
  if (map) {
    for (Vec3& v : b.vertices) v = map(v);
  }
  return build_mesh(3, std::move(b.vertices), b.cells, {}, classifier);
}

std::string shock_tube_tag(const Face& f) {
  std::string t = box_tag(f);
  if (t == "xmin") return "left";
  if (t == "xmax") return "right";
  return "lateral";
}

}  // namespace

std::vector<double> uniform_nodes(double a, double b, int n) {
  if (n < 1) throw InputError("uniform_nodes: need at least one cell");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  x.back() = b;
  return x;
}

Mesh box_mesh(CellKind kind, std::span<const double> xs, std::span<const double> ys,
              std::span<const double> zs, Axis prism_axis, const VertexMap& map,
              std::size_t max_cells) {
  if (xs.size() < 2 || ys.size() < 2) throw InputError("box_mesh: need two nodes per direction");
  const std::size_t base = (xs.size() - 1) * (ys.size() - 1);
  if (dimension(kind) == 2) {
    if (!zs.empty()) throw InputError("box_mesh: 2D kind with z nodes");
    check_capacity(base * split_factor(kind), max_cells);
    const auto nx = static_cast<Index>(xs.size());
    Builder b;
    for (double y : ys) {
      for (double x : xs) b.add_vertex({x, y, 0.0});
    }
    for (Index j = 0; j + 1 < static_cast<Index>(ys.size()); ++j) {
      for (Index i = 0; i + 1 < nx; ++i) {
        Index q[4] = {i + nx * j, i + 1 + nx * j, i + 1 + nx * (j + 1), i + nx * (j + 1)};
        if (kind == CellKind::Quadrangle) {
          b.cells.push_back({kind, {q, q + 4}});
        } else if (kind == CellKind::Triangle) {
          b.cells.push_back({kind, {q[0], q[1], q[2]}});
          b.cells.push_back({kind, {q[0], q[2], q[3]}});
        }
      }
    }
    if (map) {
      for (Vec3& v : b.vertices) v = map(v);
    }
    return build_mesh(2, std::move(b.vertices), b.cells, {}, box_tag);
  }
  if (zs.size() < 2) throw InputError("box_mesh: 3D kind needs z nodes");
  check_capacity(base * (zs.size() - 1) * split_factor(kind), max_cells);
  return structured_3d(
      xs, ys, zs, [kind](Index, Index, Index) { return kind; }, prism_axis, map, box_tag);
}

Mesh unit_box_mesh(CellKind kind, int n) {
  auto x = uniform_nodes(0.0, 1.0, n);
  if (dimension(kind) == 2) return box_mesh(kind, x, x);
  return box_mesh(kind, x, x, x);
}

double shock_tube_h(int n) { return 5.0 / std::ldexp(1.0, n); }

Vec3 shock_tube_distortion(const Vec3& p, double height) {
  using std::numbers::pi;
  return {p[0] * (1.0 + 0.2 * std::sin(pi * p[0] / 5.0) * std::sin(2.0 * pi * p[2] / height)),
          p[1], p[2]};
}

Mesh gen_shock_tube_mesh(int n, CellKind kind, bool distort, std::size_t max_cells) {
  if (n < 1) throw InputError("shock tube mesh: n must be >= 1");
  if (kind != CellKind::Prism && kind != CellKind::Pyramid && kind != CellKind::Hexahedron) {
    throw InputError("shock tube mesh: kind must be Prism, Pyramid or Hexahedron");
  }
  if (n > 24) throw CapacityError("shock tube mesh: n too large");
  const std::size_t layers = std::size_t{1} << n;
  check_capacity(layers * 100 * static_cast<std::size_t>(split_factor(kind)), max_cells);
  const double h = shock_tube_h(n);
  auto xs = uniform_nodes(0.0, 5.0, static_cast<int>(layers));
  auto yz = uniform_nodes(0.0, 10.0 * h, 10);
  VertexMap map;
  if (distort) map = [H = 10.0 * h](const Vec3& p) { return shock_tube_distortion(p, H); };
  return structured_3d(
      xs, yz, yz, [kind](Index, Index, Index) { return kind; }, Axis::X, map, shock_tube_tag);
}

Mesh gen_hybrid_shock_tube_mesh(int n, bool distort, std::size_t max_cells) {
  if (n < 1) throw InputError("hybrid shock tube mesh: n must be >= 1");
  if (n > 24) throw CapacityError("hybrid shock tube mesh: n too large");
  const std::size_t layers = std::size_t{1} << n;
  // 27 hexahedra, 27x6 pyramids and 27x2 prisms per layer.
  check_capacity(layers * 27 * 9, max_cells);
  const double h = shock_tube_h(n);
  auto xs = uniform_nodes(0.0, 5.0, static_cast<int>(layers));
  auto yz = uniform_nodes(0.0, 9.0 * h, 9);
  VertexMap map;
  if (distort) map = [H = 9.0 * h](const Vec3& p) { return shock_tube_distortion(p, H); };
  auto kind_of = [](Index, Index, Index k) {
    if (k < 3) return CellKind::Hexahedron;
    if (k < 6) return CellKind::Pyramid;
    return CellKind::Prism;
  };
  return structured_3d(xs, yz, yz, kind_of, Axis::X, map, shock_tube_tag);
}

namespace {

struct PointIndex {
  std::map<std::pair<long long, long long>, Index> ids;
  std::vector<Vec3> points;

  Index get(double x, double y) {
    auto key = std::make_pair(std::llround(x * 1e10), std::llround(y * 1e10));
    auto [it, inserted] = ids.try_emplace(key, static_cast<Index>(points.size()));
    if (inserted) points.push_back({x, y, 0.0});
    return it->second;
  }
};

struct BaseQuad {
  Index v[4];
  bool solid;
};

void push_quad(std::vector<BaseQuad>& quads, const std::vector<Vec3>& pts, Index a, Index b,
               Index c, Index d, bool solid) {
  auto area2 = [&](Index p, Index q) {
    return pts[p][0] * pts[q][1] - pts[q][0] * pts[p][1];
  };
  double s = area2(a, b) + area2(b, c) + area2(c, d) + area2(d, a);
  if (s > 0.0) {
    quads.push_back({{a, b, c, d}, solid});
  } else {
    quads.push_back({{d, c, b, a}, solid});
  }
}

}  // namespace

Mesh gen_column_mesh(const ColumnMeshParams& params, ColumnMeshInfo* info,
                     std::size_t max_cells) {
  const int m = params.m;
  if (m < 4) throw InputError("column mesh: m must be >= 4");
  if (params.kind != CellKind::Prism && params.kind != CellKind::Pyramid &&
      params.kind != CellKind::Hexahedron) {
    throw InputError("column mesh: kind must be Prism, Pyramid or Hexahedron");
  }
  constexpr double cx = 0.2, cy = 0.2, radius = 0.1, w_out = 0.15, w_in = 0.06;
  const double h = 2.0 * w_out / m;
  auto cells_for = [h](double len) { return std::max(1, static_cast<int>(std::lround(len / h))); };

  PointIndex pts;
  std::vector<BaseQuad> quads;

  // Cartesian frame around the square block [0.05,0.35]^2.
  std::vector<double> xs;
  std::vector<double> ys;
  auto append = [](std::vector<double>& v, double a, double b, int n) {
    auto seg = uniform_nodes(a, b, n);
    v.insert(v.end(), seg.begin() + (v.empty() ? 0 : 1), seg.end());
  };
  append(xs, 0.0, cx - w_out, cells_for(0.05));
  const std::size_t xb0 = xs.size() - 1;
  append(xs, cx - w_out, cx + w_out, m);
  const std::size_t xb1 = xs.size() - 1;
  append(xs, cx + w_out, 0.4, cells_for(0.05));
  append(ys, 0.0, cy - w_out, cells_for(0.05));
  const std::size_t yb0 = ys.size() - 1;
  append(ys, cy - w_out, cy + w_out, m);
  const std::size_t yb1 = ys.size() - 1;
  append(ys, cy + w_out, 0.41, cells_for(0.06));
  for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (i >= xb0 && i < xb1 && j >= yb0 && j < yb1) continue;
      push_quad(quads, pts.points, pts.get(xs[i], ys[j]), pts.get(xs[i + 1], ys[j]),
                pts.get(xs[i + 1], ys[j + 1]), pts.get(xs[i], ys[j + 1]), false);
    }
  }

  // Perimeter point k of the square of half-width w, counterclockwise from
  // the lower-left corner; m points per side.
  auto square_pt = [m](double w, int k) -> std::array<double, 2> {
    k %= 4 * m;
    const int side = k / m;
    const double t = 2.0 * w * (k % m) / m;
    switch (side) {
      case 0: return {-w + t, -w};
      case 1: return {w, -w + t};
      case 2: return {w - t, w};
      default: return {-w, w - t};
    }
  };
  auto ring = [&](double w, bool outward_square, int layers, bool solid) {
    for (int k = 0; k < 4 * m; ++k) {
      Index prev[2];
      for (int l = 0; l <= layers; ++l) {
        const double s = static_cast<double>(l) / layers;
        Index cur[2];
        for (int e = 0; e < 2; ++e) {
          auto q = square_pt(w, k + e);
          const double r = std::hypot(q[0], q[1]);
          const double circ[2] = {radius * q[0] / r, radius * q[1] / r};
          // s = 0 on the circle, s = 1 on the square.
          double px, py;
          if (outward_square) {
            px = (1.0 - s) * circ[0] + s * q[0];
            py = (1.0 - s) * circ[1] + s * q[1];
          } else {
            px = (1.0 - s) * q[0] + s * circ[0];
            py = (1.0 - s) * q[1] + s * circ[1];
          }
          if (l == layers && outward_square) {
            px = q[0];
            py = q[1];
          }
          if (l == 0 && !outward_square) {
            px = q[0];
            py = q[1];
          }
          cur[e] = pts.get(cx + px, cy + py);
        }
        if (l > 0) push_quad(quads, pts.points, prev[0], prev[1], cur[1], cur[0], solid);
        prev[0] = cur[0];
        prev[1] = cur[1];
      }
    }
  };
  ring(w_out, true, cells_for(0.08), false);
  ring(w_in, false, std::max(2, cells_for(0.03)), true);
  {
    auto inner = uniform_nodes(-w_in, w_in, m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        push_quad(quads, pts.points, pts.get(cx + inner[i], cy + inner[j]),
                  pts.get(cx + inner[i + 1], cy + inner[j]),
                  pts.get(cx + inner[i + 1], cy + inner[j + 1]),
                  pts.get(cx + inner[i], cy + inner[j + 1]), true);
      }
    }
  }

  const int nz_below = cells_for(0.3);
  const int nz_above = cells_for(0.1);
  std::vector<double> zs;
  append(zs, 0.0, 0.3, nz_below);
  append(zs, 0.3, 0.4, nz_above);

  const std::size_t solid = static_cast<std::size_t>(
      std::count_if(quads.begin(), quads.end(), [](const BaseQuad& q) { return q.solid; }));
  const int factor = split_factor(params.kind);
  const std::size_t expected =
      ((quads.size() - solid) * nz_below + quads.size() * nz_above) * factor;
  check_capacity(expected, max_cells);
  if (info) {
    info->base_quads = quads.size();
    info->solid_quads = solid;
    info->layers_below = nz_below;
    info->layers_above = nz_above;
    info->split_factor = factor;
  }

  // Extrude, keeping only vertices that some cell uses.
  const auto np = static_cast<Index>(pts.points.size());
  std::vector<Index> remap(pts.points.size() * zs.size(), -1);
  Builder b;
  auto vid = [&](Index p, std::size_t layer) {
    Index& r = remap[static_cast<std::size_t>(p) + static_cast<std::size_t>(np) * layer];
    if (r < 0) {
      const Vec3& q = pts.points[static_cast<std::size_t>(p)];
      r = b.add_vertex({q[0], q[1], zs[layer]});
    }
    return r;
  };
  for (std::size_t l = 0; l + 1 < zs.size(); ++l) {
    const bool below = static_cast<int>(l) < nz_below;
    for (const BaseQuad& q : quads) {
      if (q.solid && below) continue;
      Index c[8];
      for (int i = 0; i < 4; ++i) {
        c[i] = vid(q.v[i], l);
        c[i + 4] = vid(q.v[i], l + 1);
      }
      b.add_hex_split(params.kind, c, Axis::Z);
    }
  }
  auto classify = [](const Face& f) -> std::string {
    if (f.centroid[0] < 1e-9 && f.normal[0] < -0.5) return "inflow";
    if (f.centroid[0] > 0.4 - 1e-9 && f.normal[0] > 0.5) return "outlet";
    return "wall";
  };
  return build_mesh(3, std::move(b.vertices), b.cells, {}, classify);
}

}  // namespace stagfv
