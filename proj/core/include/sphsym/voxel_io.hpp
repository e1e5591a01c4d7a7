#pragma once

#include "sets.hpp"

#include <iosfwd>
#include <string>

namespace sphsym
{
/// n = 2: plain PGM (P2, maxval 1) with a "# h=<spacing>" comment line.
/// n = 3: slice-stacked CSV, header "# n=3 h=<h> nx=<nx> ny=<ny> nz=<nz>", one
/// row per line, slices separated by a blank line.
void write_voxels(std::ostream& out, const VoxelSet& v);
VoxelSet read_voxels(std::istream& in);

void save_voxels(const std::string& path, const VoxelSet& v);
VoxelSet load_voxels(const std::string& path);
}
