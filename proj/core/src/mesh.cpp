#include "stagfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "stagfv/errors.hpp"

namespace stagfv {

namespace {

using FaceKey = std::array<Index, kMaxFaceVertices>;

struct FaceKeyHash {
  std::size_t operator()(const FaceKey& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index v : k) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

FaceKey make_key(const Index* v, int n) {
  FaceKey key{-1, -1, -1, -1};
  std::copy(v, v + n, key.begin());
  std::sort(key.begin(), key.begin() + n);
  return key;
}

struct FaceGeometry {
  Vec3 area_vector{};
  Vec3 centroid{};
};

// Planar or not, a face is split into triangles about its vertex mean; the
// area vector is the sum of the triangle area vectors.
FaceGeometry face_geometry_3d(const std::vector<Vec3>& x, const Index* v, int n) {
  FaceGeometry g;
  if (n == 3) {
    g.area_vector = 0.5 * cross(x[v[1]] - x[v[0]], x[v[2]] - x[v[0]]);
    g.centroid = (1.0 / 3.0) * (x[v[0]] + x[v[1]] + x[v[2]]);
    return g;
  }
  Vec3 c{};
  for (int i = 0; i < n; ++i) c += x[v[i]];
  c = (1.0 / n) * c;
  double wsum = 0.0;
  Vec3 csum{};
  for (int i = 0; i < n; ++i) {
    const Vec3& a = x[v[i]];
    const Vec3& b = x[v[(i + 1) % n]];
    Vec3 av = 0.5 * cross(a - c, b - c);
    g.area_vector += av;
    double w = norm(av);
    wsum += w;
    csum += w * ((1.0 / 3.0) * (a + b + c));
  }
  g.centroid = wsum > 0.0 ? (1.0 / wsum) * csum : c;
  return g;
}

FaceGeometry face_geometry_2d(const std::vector<Vec3>& x, const Index* v) {
  const Vec3& a = x[v[0]];
  const Vec3& b = x[v[1]];
  Vec3 d = b - a;
  return {{d[1], -d[0], 0.0}, 0.5 * (a + b)};
}

void cell_measure(const std::vector<Vec3>& x, const Cell& cell, int dim, double& volume,
                  Vec3& centroid) {
  const int nv = vertex_count(cell.kind);
  if (dim == 2) {
    double area = 0.0;
    Vec3 c{};
    for (int i = 0; i < nv; ++i) {
      const Vec3& a = x[cell.vertices[i]];
      const Vec3& b = x[cell.vertices[(i + 1) % nv]];
      double cr = a[0] * b[1] - b[0] * a[1];
      area += cr;
      c[0] += (a[0] + b[0]) * cr;
      c[1] += (a[1] + b[1]) * cr;
    }
    area *= 0.5;
    volume = area;
    centroid = area != 0.0 ? Vec3{c[0] / (6.0 * area), c[1] / (6.0 * area), 0.0} : Vec3{};
    return;
  }
  Vec3 p{};
  for (int i = 0; i < nv; ++i) p += x[cell.vertices[i]];
  p = (1.0 / nv) * p;
  volume = 0.0;
  Vec3 csum{};
  for (const FaceTemplate& t : face_templates(cell.kind)) {
    Index fv[4];
    for (int i = 0; i < t.vertex_count; ++i) fv[i] = cell.vertices[t.vertices[i]];
    auto add_tet = [&](const Vec3& a, const Vec3& b, const Vec3& c) {
      double v = dot(a - p, cross(b - p, c - p)) / 6.0;
      volume += v;
      csum += (0.25 * v) * (p + a + b + c);
    };
    if (t.vertex_count == 3) {
      add_tet(x[fv[0]], x[fv[1]], x[fv[2]]);
    } else {
      Vec3 c{};
      for (int i = 0; i < t.vertex_count; ++i) c += x[fv[i]];
      c = (1.0 / t.vertex_count) * c;
      for (int i = 0; i < t.vertex_count; ++i) {
        add_tet(x[fv[i]], x[fv[(i + 1) % t.vertex_count]], c);
      }
    }
  }
  centroid = volume != 0.0 ? (1.0 / volume) * csum : p;
}

double cell_diameter(const std::vector<Vec3>& x, const Cell& cell) {
  const int nv = vertex_count(cell.kind);
  double d2 = 0.0;
  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) {
      d2 = std::max(d2, norm2(x[cell.vertices[i]] - x[cell.vertices[j]]));
    }
  }
  return std::sqrt(d2);
}

}  // namespace

int Mesh::tag_id(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i] == name) return static_cast<int>(i);
  }
  return kNoTag;
}

std::string_view Mesh::tag_name(int id) const noexcept {
  if (id < 0 || id >= static_cast<int>(tags_.size())) return {};
  return tags_[static_cast<std::size_t>(id)];
}

double Mesh::total_volume() const noexcept {
  double s = 0.0;
  for (const Cell& c : cells_) s += c.volume;
  return s;
}

double Mesh::total_dual_volume() const noexcept {
  double s = 0.0;
  for (const Face& f : faces_) s += f.dual_volume;
  return s;
}

std::size_t Mesh::count_cells(CellKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [kind](const Cell& c) { return c.kind == kind; }));
}

std::size_t Mesh::num_boundary_faces() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return f.is_boundary(); }));
}

Mesh build_mesh(int dimension, std::vector<Vec3> vertices, std::span<const CellRecord> records,
                std::span<const BoundaryTagRecord> tags, const BoundaryClassifier& classifier) {
  if (dimension != 2 && dimension != 3) throw MeshStructureError("mesh dimension must be 2 or 3");
  Mesh mesh;
  mesh.dim_ = dimension;
  mesh.vertices_ = std::move(vertices);
  const auto nverts = static_cast<Index>(mesh.vertices_.size());
  const std::vector<Vec3>& x = mesh.vertices_;

  mesh.cells_.reserve(records.size());
  std::unordered_map<FaceKey, Index, FaceKeyHash> face_of_key;
  face_of_key.reserve(records.size() * 3);

  for (std::size_t k = 0; k < records.size(); ++k) {
    const CellRecord& rec = records[k];
    if (stagfv::dimension(rec.kind) != dimension) {
      std::ostringstream os;
      os << "cell " << k << ": " << to_string(rec.kind) << " in a " << dimension << "D mesh";
      throw MeshStructureError(os.str());
    }
    if (static_cast<int>(rec.vertices.size()) != vertex_count(rec.kind)) {
      std::ostringstream os;
      os << "cell " << k << ": " << to_string(rec.kind) << " needs " << vertex_count(rec.kind)
         << " vertices, got " << rec.vertices.size();
      throw MeshStructureError(os.str());
    }
    Cell cell;
    cell.kind = rec.kind;
    for (std::size_t i = 0; i < rec.vertices.size(); ++i) {
      Index v = rec.vertices[i];
      if (v < 0 || v >= nverts) {
        std::ostringstream os;
        os << "cell " << k << ": vertex id " << v << " out of range";
        throw MeshStructureError(os.str());
      }
      cell.vertices[i] = v;
    }
    cell_measure(x, cell, dimension, cell.volume, cell.centroid);
    if (!(cell.volume > 0.0)) {
      std::ostringstream os;
      os << "cell " << k << " (" << to_string(rec.kind) << ") has non-positive measure "
         << cell.volume << "; vertex order does not follow the template orientation";
      throw MeshOrientationError(os.str());
    }
    cell.diameter = cell_diameter(x, cell);

    const auto templates = face_templates(rec.kind);
    const auto kidx = static_cast<Index>(k);
    for (int slot = 0; slot < static_cast<int>(templates.size()); ++slot) {
      const FaceTemplate& t = templates[slot];
      Index fv[kMaxFaceVertices];
      for (int i = 0; i < t.vertex_count; ++i) fv[i] = cell.vertices[t.vertices[i]];
      FaceKey key = make_key(fv, t.vertex_count);
      auto [it, inserted] = face_of_key.try_emplace(key, static_cast<Index>(mesh.faces_.size()));
      if (inserted) {
        Face face;
        face.vertex_count = t.vertex_count;
        std::copy(fv, fv + t.vertex_count, face.vertices.begin());
        face.owner = kidx;
        face.owner_slot = slot;
        FaceGeometry g = dimension == 2 ? face_geometry_2d(x, fv)
                                        : face_geometry_3d(x, fv, t.vertex_count);
        face.area = norm(g.area_vector);
        if (!(face.area > 0.0)) {
          std::ostringstream os;
          os << "cell " << k << ": degenerate face in slot " << slot;
          throw MeshStructureError(os.str());
        }
        face.normal = (1.0 / face.area) * g.area_vector;
        face.centroid = g.centroid;
        cell.faces[slot] = it->second;
        cell.orientation[slot] = 1;
        mesh.faces_.push_back(face);
      } else {
        Face& face = mesh.faces_[static_cast<std::size_t>(it->second)];
        if (face.neighbor != kNoCell) {
          std::ostringstream os;
          os << "non-conforming face shared by cells " << face.owner << ", " << face.neighbor
             << " and " << k;
          throw MeshStructureError(os.str());
        }
        face.neighbor = kidx;
        face.neighbor_slot = slot;
        cell.faces[slot] = it->second;
        cell.orientation[slot] = -1;
      }
    }
    mesh.cells_.push_back(cell);
  }

  // Mixed-kind interfaces in 3D: a boundary triangle whose vertices all lie on
  // one boundary quad means a triangle-vs-quad mismatch between two cells.
  if (dimension == 3) {
    std::unordered_map<FaceKey, Index, FaceKeyHash> quad_triples;
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
      const Face& face = mesh.faces_[f];
      if (!face.is_boundary() || face.vertex_count != 4) continue;
      for (int skip = 0; skip < 4; ++skip) {
        Index tri[3];
        int n = 0;
        for (int i = 0; i < 4; ++i) {
          if (i != skip) tri[n++] = face.vertices[i];
        }
        quad_triples.emplace(make_key(tri, 3), static_cast<Index>(f));
      }
    }
    for (const Face& face : mesh.faces_) {
      if (!face.is_boundary() || face.vertex_count != 3) continue;
      auto it = quad_triples.find(make_key(face.vertices.data(), 3));
      if (it != quad_triples.end()) {
        const Face& quad = mesh.faces_[static_cast<std::size_t>(it->second)];
        std::ostringstream os;
        os << "non-conforming face between cells " << face.owner << " and " << quad.owner
           << ": triangle/quadrangle vertex-set mismatch";
        throw MeshStructureError(os.str());
      }
    }
  }

  for (Face& face : mesh.faces_) {
    const Cell& k = mesh.cells_[static_cast<std::size_t>(face.owner)];
    face.half_owner = k.volume / k.face_count();
    if (!face.is_boundary()) {
      const Cell& l = mesh.cells_[static_cast<std::size_t>(face.neighbor)];
      face.half_neighbor = l.volume / l.face_count();
    }
    face.dual_volume = face.half_owner + face.half_neighbor;
  }

  auto intern_tag = [&mesh](const std::string& name) {
    int id = mesh.tag_id(name);
    if (id == kNoTag) {
      mesh.tags_.push_back(name);
      id = static_cast<int>(mesh.tags_.size()) - 1;
    }
    return id;
  };
  for (const BoundaryTagRecord& rec : tags) {
    if (rec.vertices.empty() || rec.vertices.size() > kMaxFaceVertices) {
      throw MeshStructureError("boundary tag '" + rec.tag + "': bad face vertex count");
    }
    FaceKey key = make_key(rec.vertices.data(), static_cast<int>(rec.vertices.size()));
    auto it = face_of_key.find(key);
    if (it == face_of_key.end()) {
      throw MeshStructureError("boundary tag '" + rec.tag + "' names a face that does not exist");
    }
    Face& face = mesh.faces_[static_cast<std::size_t>(it->second)];
    if (!face.is_boundary()) {
      throw MeshStructureError("boundary tag '" + rec.tag + "' names an internal face");
    }
    face.tag = intern_tag(rec.tag);
  }
  if (classifier) {
    for (Face& face : mesh.faces_) {
      if (!face.is_boundary() || face.tag != kNoTag) continue;
      std::string name = classifier(face);
      if (!name.empty()) face.tag = intern_tag(name);
    }
  }
  return mesh;
}

MeshQuality regularity(const Mesh& mesh) {
  MeshQuality q;
  const int d = mesh.dimension();
  for (const Cell& c : mesh.cells()) {
    q.theta1 = std::max(q.theta1, std::pow(c.diameter, d) / c.volume);
    q.max_face_count = std::max(q.max_face_count, c.face_count());
  }
  q.theta2 = mesh.num_cells() > 0 ? 1.0 : 0.0;
  for (const Face& f : mesh.faces()) {
    if (f.is_boundary()) continue;
    double a = mesh.cell(f.owner).volume;
    double b = mesh.cell(f.neighbor).volume;
    q.theta2 = std::max(q.theta2, std::max(a / b, b / a));
  }
  return q;
}

double gauss_defect(const Mesh& mesh, Index k) {
  const Cell& c = mesh.cell(k);
  Vec3 sum{};
  double total = 0.0;
  for (int s = 0; s < c.face_count(); ++s) {
    const Face& f = mesh.face(c.faces[s]);
    sum += (c.orientation[s] * f.area) * f.normal;
    total += f.area;
  }
  return norm(sum) / total;
}

}  // namespace stagfv
