#include "confsurf/surface_file.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace confsurf {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    std::string t;
    while (ss >> t) tokens.push_back(t);
    return tokens;
}

int parse_int(const std::string& t, int line) {
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || t.empty())
        throw ParseError("expected an integer, got '" + t + "'", line);
    return static_cast<int>(v);
}

double parse_double(const std::string& t, int line) {
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || t.empty() || !std::isfinite(v))
        throw ParseError("expected a number, got '" + t + "'", line);
    return v;
}

void need(bool ok, const std::string& what, int line) {
    if (!ok) throw ParseError(what, line);
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

SurfaceFile parse_surface_file(std::istream& in) {
    SurfaceFile file;
    bool saw_header = false, saw_kind = false, saw_vertices = false, saw_faces = false;
    int expected_faces = 0;
    std::vector<char> vertex_seen, face_seen;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        if (!saw_header) {
            need(tok.size() == 2 && tok[0] == "decorated-surface" && tok[1] == "v1",
                 "file must start with 'decorated-surface v1'", lineno);
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (kw == "genus" || kw == "disk") {
            need(!saw_kind, "duplicate surface kind", lineno);
            saw_kind = true;
            if (kw == "disk") {
                need(tok.size() == 1, "'disk' takes no arguments", lineno);
                file.is_disk = true;
            } else {
                need(tok.size() == 2, "'genus' takes one integer", lineno);
                file.genus = parse_int(tok[1], lineno);
                need(file.genus >= 0, "genus must be nonnegative", lineno);
            }
        } else if (kw == "vertices") {
            need(!saw_vertices, "duplicate vertex count", lineno);
            need(tok.size() == 2, "'vertices' takes one integer", lineno);
            file.num_vertices = parse_int(tok[1], lineno);
            need(file.num_vertices > 0, "vertex count must be positive", lineno);
            saw_vertices = true;
            file.radius.assign(file.num_vertices, 0.0);
            file.target.assign(file.num_vertices, std::nullopt);
            vertex_seen.assign(file.num_vertices, 0);
        } else if (kw == "faces") {
            need(!saw_faces, "duplicate face count", lineno);
            need(tok.size() == 2, "'faces' takes one integer", lineno);
            expected_faces = parse_int(tok[1], lineno);
            need(expected_faces > 0, "face count must be positive", lineno);
            saw_faces = true;
            file.faces.assign(expected_faces, {0, 0, 0});
            face_seen.assign(expected_faces, 0);
        } else if (kw == "vertex") {
            need(saw_vertices, "vertex record before 'vertices' count", lineno);
            need(tok.size() == 3 || tok.size() == 4, "vertex record needs id and radius",
                 lineno);
            int id = parse_int(tok[1], lineno);
            need(id >= 0 && id < file.num_vertices, "vertex id out of range", lineno);
            need(!vertex_seen[id], "duplicate vertex record", lineno);
            vertex_seen[id] = 1;
            file.radius[id] = parse_double(tok[2], lineno);
            need(file.radius[id] >= 0, "vertex radius must be nonnegative", lineno);
            if (tok.size() == 4) file.target[id] = parse_double(tok[3], lineno);
        } else if (kw == "face") {
            need(saw_faces && saw_vertices, "face record before counts", lineno);
            need(tok.size() == 5, "face record needs id and three vertex ids", lineno);
            int id = parse_int(tok[1], lineno);
            need(id >= 0 && id < expected_faces, "face id out of range", lineno);
            need(!face_seen[id], "duplicate face record", lineno);
            face_seen[id] = 1;
            for (int c = 0; c < 3; ++c) {
                int v = parse_int(tok[2 + c], lineno);
                need(v >= 0 && v < file.num_vertices, "face corner out of range", lineno);
                file.faces[id][c] = v;
            }
        } else if (kw == "glue") {
            need(saw_faces, "glue record before 'faces' count", lineno);
            need(tok.size() == 5, "glue record needs two (face, side) pairs", lineno);
            SideRef a{parse_int(tok[1], lineno), parse_int(tok[2], lineno)};
            SideRef b{parse_int(tok[3], lineno), parse_int(tok[4], lineno)};
            for (const SideRef& s : {a, b})
                need(s.face >= 0 && s.face < expected_faces && s.side >= 0 && s.side < 3,
                     "glued side out of range", lineno);
            file.gluings.push_back({a, b});
        } else if (kw == "boundary") {
            need(saw_kind && file.is_disk, "boundary record in a closed surface", lineno);
            need(tok.size() == 3, "boundary record needs (face, side)", lineno);
            SideRef s{parse_int(tok[1], lineno), parse_int(tok[2], lineno)};
            need(s.face >= 0 && s.face < expected_faces && s.side >= 0 && s.side < 3,
                 "boundary side out of range", lineno);
            file.boundary.push_back(s);
        } else if (kw == "length") {
            need(saw_faces, "length record before 'faces' count", lineno);
            need(tok.size() == 4, "length record needs (face, side, value)", lineno);
            int f = parse_int(tok[1], lineno);
            int s = parse_int(tok[2], lineno);
            need(f >= 0 && f < expected_faces && s >= 0 && s < 3,
                 "length side out of range", lineno);
            double value = parse_double(tok[3], lineno);
            need(value > 0, "edge length must be positive", lineno);
            file.lengths.emplace_back(f, s, value);
        } else {
            throw ParseError("unknown record '" + kw + "'", lineno);
        }
    }
    need(saw_header, "empty file", lineno);
    need(saw_kind, "missing 'genus' or 'disk' line", 0);
    need(saw_vertices && saw_faces, "missing 'vertices' or 'faces' count", 0);
    for (int v = 0; v < file.num_vertices; ++v)
        need(vertex_seen[v], "vertex " + std::to_string(v) + " has no record", 0);
    for (int f = 0; f < expected_faces; ++f)
        need(face_seen[f], "face " + std::to_string(f) + " has no record", 0);
    return file;
}

SurfaceFile read_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return parse_surface_file(in);
}

void write_surface_file(std::ostream& out, const SurfaceFile& file) {
    out << "decorated-surface v1\n";
    if (file.is_disk)
        out << "disk\n";
    else
        out << "genus " << file.genus << "\n";
    out << "vertices " << file.num_vertices << "\n";
    out << "faces " << file.faces.size() << "\n";
    for (int v = 0; v < file.num_vertices; ++v) {
        out << "vertex " << v << " " << format_number(file.radius[v]);
        if (file.target[v]) out << " " << format_number(*file.target[v]);
        out << "\n";
    }
    for (size_t f = 0; f < file.faces.size(); ++f)
        out << "face " << f << " " << file.faces[f][0] << " " << file.faces[f][1] << " "
            << file.faces[f][2] << "\n";

    std::vector<Gluing> glue = file.gluings;
    for (Gluing& g : glue)
        if (g.second < g.first) std::swap(g.first, g.second);
    std::sort(glue.begin(), glue.end());
    for (const Gluing& g : glue)
        out << "glue " << g.first.face << " " << g.first.side << " " << g.second.face << " "
            << g.second.side << "\n";

    std::vector<SideRef> boundary = file.boundary;
    std::sort(boundary.begin(), boundary.end());
    for (const SideRef& s : boundary) out << "boundary " << s.face << " " << s.side << "\n";

    // One length per edge class, keyed by its smallest side.
    std::map<SideRef, SideRef> rep;  // side -> smallest side of its class
    for (const Gluing& g : glue) {
        SideRef small = std::min(g.first, g.second);
        rep[g.first] = small;
        rep[g.second] = small;
    }
    for (const SideRef& s : boundary) rep[s] = s;
    std::map<SideRef, double> length;
    for (const auto& [f, s, value] : file.lengths) {
        auto it = rep.find(SideRef{f, s});
        SideRef key = it != rep.end() ? it->second : SideRef{f, s};
        length[key] = value;
    }
    for (const auto& [s, value] : length)
        out << "length " << s.face << " " << s.side << " " << format_number(value) << "\n";
}

void write_surface_file(const std::string& path, const SurfaceFile& file) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    write_surface_file(out, file);
}

namespace {

// Resolve length records against an edge map: sides of one class must carry
// a single value (duplicates within 1e-12 relative are tolerated).
std::vector<double> resolve_lengths(const SurfaceFile& file, int num_edges,
                                    const std::vector<std::array<int, 3>>& side_edge) {
    std::vector<double> length(num_edges, -1.0);
    for (const auto& [f, s, value] : file.lengths) {
        int e = side_edge[f][s];
        if (e < 0) throw ParseError("length given for an unused side", 0);
        if (length[e] >= 0) {
            double scale = std::max(std::abs(length[e]), std::abs(value));
            if (std::abs(length[e] - value) > 1e-12 * scale)
                throw ParseError("conflicting lengths for one edge class", 0);
        } else {
            length[e] = value;
        }
    }
    for (int e = 0; e < num_edges; ++e)
        if (length[e] < 0)
            throw ParseError("edge " + std::to_string(e) + " has no length record", 0);
    return length;
}

}  // namespace

ClosedSurfaceData to_closed(const SurfaceFile& file) {
    if (file.is_disk) throw MeshError("expected a closed surface, file says disk");
    ClosedSurfaceData out{Triangulation::build(file.num_vertices, file.faces, file.gluings),
                          {}, file.target};
    if (out.T.genus() != file.genus)
        throw ParseError("declared genus " + std::to_string(file.genus) +
                             " does not match the gluing (genus " +
                             std::to_string(out.T.genus()) + ")",
                         0);
    std::vector<std::array<int, 3>> side_edge(out.T.face_count());
    for (int f = 0; f < out.T.face_count(); ++f)
        for (int s = 0; s < 3; ++s) side_edge[f][s] = out.T.edge_of(out.T.half_edge(f, s));
    out.m.length = resolve_lengths(file, out.T.edge_count(), side_edge);
    out.m.radius = file.radius;
    return out;
}

DiskSurfaceData to_disk(const SurfaceFile& file) {
    if (!file.is_disk) throw MeshError("expected a disk, file says closed");
    DiskSurfaceData out{
        DiskTriangulation::build(file.num_vertices, file.faces, file.gluings, file.boundary),
        {}, file.target};
    out.m.length = resolve_lengths(file, out.disk.num_edges, out.disk.side_edge);
    out.m.radius = file.radius;
    return out;
}

SurfaceFile from_closed(const Triangulation& T, const DecoratedMetric& m,
                        const std::vector<std::optional<double>>& target) {
    SurfaceFile file;
    file.is_disk = false;
    file.genus = T.genus();
    file.num_vertices = T.vertex_count();
    file.radius = m.radius;
    file.target = target;
    file.target.resize(T.vertex_count(), std::nullopt);
    file.faces.resize(T.face_count());
    for (int f = 0; f < T.face_count(); ++f) file.faces[f] = T.corners(f);
    for (int e : T.edges()) {
        int h = T.edge_half_edge(e);
        int h2 = T.twin(h);
        SideRef a{T.face_of(h), T.side_of(h)};
        SideRef b{T.face_of(h2), T.side_of(h2)};
        if (b < a) std::swap(a, b);
        file.gluings.push_back({a, b});
        file.lengths.emplace_back(a.face, a.side, m.length[e]);
    }
    return file;
}

SurfaceFile from_disk(const DiskTriangulation& D, const DecoratedMetric& m,
                      const std::vector<std::optional<double>>& target) {
    SurfaceFile file;
    file.is_disk = true;
    file.num_vertices = D.num_vertices;
    file.radius = m.radius;
    file.target = target;
    file.target.resize(D.num_vertices, std::nullopt);
    file.faces = D.faces;
    file.gluings = D.gluings;
    file.boundary = D.boundary;
    for (const auto& [sa, sb] : D.gluings) {
        SideRef key = std::min(sa, sb);
        file.lengths.emplace_back(key.face, key.side, m.length[D.side_edge_id(sa)]);
    }
    for (const SideRef& s : D.boundary)
        file.lengths.emplace_back(s.face, s.side, m.length[D.side_edge_id(s)]);
    return file;
}

}  // namespace confsurf
