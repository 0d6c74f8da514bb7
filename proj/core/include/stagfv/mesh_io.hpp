#pragma once

#include <iosfwd>
#include <string>

#include "stagfv/mesh.hpp"

namespace stagfv {

/// ASCII mesh format:
///   dim nv nc
///   x y [z]            (nv lines)
///   KIND v0 v1 ...     (nc lines)
///   tag v0 v1 ...      (one line per tagged boundary face, until EOF)
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace stagfv
