#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "confsurf/metric.hpp"

namespace confsurf {

// Plain-text description of a decorated surface. Line-oriented records after
// a fixed header:
//
//   decorated-surface v1
//   genus <g>   |   disk
//   vertices N
//   faces F
//   vertex <id> <radius> [<target angle>]
//   face <id> <v0> <v1> <v2>
//   glue <f1> <s1> <f2> <s2>
//   boundary <f> <s>              (disk only)
//   length <f> <s> <value>
//
// Side s of a face is the side opposite corner s. Every (face, side) must
// appear in exactly one glue (or boundary) record; lengths are per edge class,
// keyed by any one of its sides (duplicates must agree). '#' starts a comment.
struct SurfaceFile {
    bool is_disk = false;
    int genus = 0;  // declared genus; checked against the gluing for closed surfaces
    int num_vertices = 0;
    std::vector<double> radius;
    std::vector<std::optional<double>> target;
    std::vector<std::array<int, 3>> faces;
    std::vector<Gluing> gluings;
    std::vector<SideRef> boundary;
    std::vector<std::tuple<int, int, double>> lengths;  // (face, side, value)
};

// Throws ParseError with a 1-based line number on malformed or inconsistent
// input.
SurfaceFile parse_surface_file(std::istream& in);
SurfaceFile read_surface_file(const std::string& path);

// Canonical form: records sorted, one length per edge class on its smallest
// (face, side), numbers at 17 significant digits. write(parse(x)) is
// byte-identical for canonical files.
void write_surface_file(std::ostream& out, const SurfaceFile& file);
void write_surface_file(const std::string& path, const SurfaceFile& file);

struct ClosedSurfaceData {
    Triangulation T;
    DecoratedMetric m;
    std::vector<std::optional<double>> target;
};

struct DiskSurfaceData {
    DiskTriangulation disk;
    DecoratedMetric m;
    std::vector<std::optional<double>> target;
};

// Build the mesh + metric (validating combinatorics and that every edge class
// has exactly one length). Throw ParseError or MeshError accordingly.
ClosedSurfaceData to_closed(const SurfaceFile& file);
DiskSurfaceData to_disk(const SurfaceFile& file);

SurfaceFile from_closed(const Triangulation& T, const DecoratedMetric& m,
                        const std::vector<std::optional<double>>& target = {});
SurfaceFile from_disk(const DiskTriangulation& D, const DecoratedMetric& m,
                      const std::vector<std::optional<double>>& target = {});

// Shortest decimal form (at most 17 significant digits) that parses back to
// exactly the same double.
std::string format_number(double x);

}  // namespace confsurf
