#include "confsurf/mesh.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace confsurf {

namespace {

std::string side_name(int f, int s) {
    return "(" + std::to_string(f) + "," + std::to_string(s) + ")";
}

}  // namespace

Triangulation Triangulation::build(int num_vertices,
                                   const std::vector<std::array<int, 3>>& face_corners,
                                   const std::vector<Gluing>& gluings) {
    const int F = static_cast<int>(face_corners.size());
    if (num_vertices <= 0) throw MeshError("surface needs at least one vertex");
    if (F == 0) throw MeshError("surface needs at least one face");
    for (int f = 0; f < F; ++f)
        for (int c = 0; c < 3; ++c)
            if (face_corners[f][c] < 0 || face_corners[f][c] >= num_vertices)
                throw MeshError("face " + std::to_string(f) + " references vertex " +
                                std::to_string(face_corners[f][c]) + " out of range");

    Triangulation T;
    T.num_vertices_ = num_vertices;
    const int H = 3 * F;
    T.next_.resize(H);
    T.twin_.assign(H, -1);
    T.origin_.resize(H);
    T.face_.resize(H);
    T.side_.resize(H);
    T.edge_.assign(H, -1);
    T.face_side_.resize(F);
    // Half-edge 3f+s sits at side s of face f, running from corner (s+1)%3 to
    // corner (s+2)%3, so next() walks the face counterclockwise.
    for (int f = 0; f < F; ++f) {
        for (int s = 0; s < 3; ++s) {
            int h = 3 * f + s;
            T.next_[h] = 3 * f + (s + 1) % 3;
            T.origin_[h] = face_corners[f][(s + 1) % 3];
            T.face_[h] = f;
            T.side_[h] = s;
            T.face_side_[f][s] = h;
        }
    }

    if (2 * gluings.size() != static_cast<size_t>(H))
        throw MeshError("closed surface needs exactly 3F/2 gluings, got " +
                        std::to_string(gluings.size()));
    T.edge_half_edge_.reserve(gluings.size());
    for (const auto& [sa, sb] : gluings) {
        for (const SideRef& s : {sa, sb})
            if (s.face < 0 || s.face >= F || s.side < 0 || s.side >= 3)
                throw MeshError("gluing references side " + side_name(s.face, s.side) +
                                " out of range");
        int ha = 3 * sa.face + sa.side;
        int hb = 3 * sb.face + sb.side;
        if (ha == hb)
            throw MeshError("side " + side_name(sa.face, sa.side) + " glued to itself");
        if (T.twin_[ha] != -1 || T.twin_[hb] != -1)
            throw MeshError("side " + side_name(sa.face, sa.side) + " or " +
                            side_name(sb.face, sb.side) + " glued twice");
        if (T.origin_[ha] != T.origin_[T.next_[hb]] || T.origin_[hb] != T.origin_[T.next_[ha]])
            throw MeshError("gluing " + side_name(sa.face, sa.side) + " <-> " +
                            side_name(sb.face, sb.side) +
                            " does not traverse the edge oppositely");
        int e = static_cast<int>(T.edge_half_edge_.size());
        T.twin_[ha] = hb;
        T.twin_[hb] = ha;
        T.edge_[ha] = e;
        T.edge_[hb] = e;
        T.edge_half_edge_.push_back(ha);
    }
    T.live_edges_ = static_cast<int>(T.edge_half_edge_.size());

    T.vertex_half_edge_.assign(num_vertices, -1);
    for (int h = 0; h < H; ++h)
        if (T.vertex_half_edge_[T.origin_[h]] == -1) T.vertex_half_edge_[T.origin_[h]] = h;
    for (int v = 0; v < num_vertices; ++v)
        if (T.vertex_half_edge_[v] == -1)
            throw MeshError("vertex " + std::to_string(v) + " is not a corner of any face");

    // Connectivity, so that the genus below describes the whole surface.
    {
        std::vector<char> seen(F, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int g = T.face_[T.twin_[T.face_side_[f][s]]];
                if (!seen[g]) {
                    seen[g] = 1;
                    ++reached;
                    stack.push_back(g);
                }
            }
        }
        if (reached != F) throw MeshError("surface is not connected");
    }

    int chi = T.euler_characteristic();
    if ((2 - chi) % 2 != 0 || chi > 2)
        throw MeshError("Euler characteristic " + std::to_string(chi) +
                        " is not that of a closed oriented surface");
    T.genus_ = (2 - chi) / 2;

    T.check_valid();
    return T;
}

std::vector<int> Triangulation::edges() const {
    std::vector<int> out;
    out.reserve(live_edges_);
    for (int e = 0; e < edge_id_bound(); ++e)
        if (edge_half_edge_[e] >= 0) out.push_back(e);
    return out;
}

std::pair<int, int> Triangulation::edge_endpoints(int e) const {
    int h = edge_half_edge_[e];
    return {origin_[h], dest(h)};
}

int Triangulation::degree(int v) const {
    int h0 = vertex_half_edge_[v];
    int h = h0, n = 0;
    do {
        ++n;
        h = next_[twin_[h]];
    } while (h != h0 && n <= half_edge_count());
    return n;
}

int Triangulation::flip(int e) {
    if (!edge_alive(e)) throw NotFlippableError("edge " + std::to_string(e) + " is not live");
    int h = edge_half_edge_[e];
    int h2 = twin_[h];
    int A = face_[h], B = face_[h2];
    if (A == B)
        throw NotFlippableError("edge " + std::to_string(e) +
                                " has both sides on one face");
    // Before: h: i->j with a: j->k, b: k->i in face A; h2: j->i with
    // c: i->l, d: l->j in face B. After: diagonal h: k->l, h2: l->k;
    // A = (l,j,k) keeps a, gains d; B = (k,i,l) keeps c, gains b.
    int a = next_[h], b = next_[a];
    int c = next_[h2], d = next_[c];
    int i = origin_[h], j = origin_[h2];
    int k = origin_[b], l = origin_[d];

    next_[d] = a;
    next_[a] = h;
    next_[h] = d;
    next_[b] = c;
    next_[c] = h2;
    next_[h2] = b;
    origin_[h] = k;
    origin_[h2] = l;
    face_[d] = A;
    face_[b] = B;
    face_side_[A] = {a, h, d};
    face_side_[B] = {c, h2, b};
    for (int s = 0; s < 3; ++s) {
        side_[face_side_[A][s]] = s;
        side_[face_side_[B][s]] = s;
    }
    if (vertex_half_edge_[i] == h) vertex_half_edge_[i] = c;
    if (vertex_half_edge_[j] == h2) vertex_half_edge_[j] = a;

    edge_half_edge_[e] = -1;
    int e_new = static_cast<int>(edge_half_edge_.size());
    edge_half_edge_.push_back(h);
    edge_[h] = e_new;
    edge_[h2] = e_new;
    return e_new;
}

void Triangulation::check_valid() const {
    const int H = half_edge_count();
    const int F = face_count();
    if (H != 3 * F) throw MeshError("half-edge count is not 3F");
    for (int h = 0; h < H; ++h) {
        if (next_[next_[next_[h]]] != h) throw MeshError("next is not a 3-cycle");
        if (twin_[h] == h || twin_[twin_[h]] != h)
            throw MeshError("twin is not a fixed-point-free involution");
        if (origin_[twin_[h]] != dest(h)) throw MeshError("twin origin mismatch");
        int e = edge_[h];
        if (e < 0 || e >= edge_id_bound() || edge_[twin_[h]] != e)
            throw MeshError("edge ids inconsistent across a twin pair");
        int rep = edge_half_edge_[e];
        if (rep != h && rep != twin_[h]) throw MeshError("edge representative mismatch");
    }
    for (int f = 0; f < F; ++f) {
        for (int s = 0; s < 3; ++s) {
            int h = face_side_[f][s];
            if (face_[h] != f || side_[h] != s) throw MeshError("face/side table mismatch");
            if (next_[h] != face_side_[f][(s + 1) % 3])
                throw MeshError("face cycle does not follow side order");
        }
    }
    int live = 0;
    for (int e = 0; e < edge_id_bound(); ++e)
        if (edge_half_edge_[e] >= 0) ++live;
    if (live != live_edges_) throw MeshError("live edge count out of date");

    std::vector<int> out_count(num_vertices_, 0);
    for (int h = 0; h < H; ++h) ++out_count[origin_[h]];
    for (int v = 0; v < num_vertices_; ++v) {
        int h0 = vertex_half_edge_[v];
        if (h0 < 0 || origin_[h0] != v) throw MeshError("vertex half-edge mismatch");
        int h = h0, n = 0;
        do {
            if (origin_[h] != v || ++n > out_count[v])
                throw MeshError("vertex " + std::to_string(v) + " link is not a single cycle");
            h = next_[twin_[h]];
        } while (h != h0);
        if (n != out_count[v])
            throw MeshError("vertex " + std::to_string(v) + " link is not a single cycle");
    }
    if (euler_characteristic() != 2 - 2 * genus_)
        throw MeshError("Euler characteristic does not match genus");
}

DiskTriangulation DiskTriangulation::build(int num_vertices,
                                           std::vector<std::array<int, 3>> faces,
                                           std::vector<Gluing> gluings,
                                           std::vector<SideRef> boundary) {
    const int F = static_cast<int>(faces.size());
    if (num_vertices <= 0) throw MeshError("surface needs at least one vertex");
    if (F == 0) throw MeshError("surface needs at least one face");
    if (boundary.empty()) throw MeshError("bordered surface needs boundary sides");
    for (int f = 0; f < F; ++f)
        for (int c = 0; c < 3; ++c)
            if (faces[f][c] < 0 || faces[f][c] >= num_vertices)
                throw MeshError("face " + std::to_string(f) + " references vertex " +
                                std::to_string(faces[f][c]) + " out of range");

    DiskTriangulation D;
    D.num_vertices = num_vertices;
    D.faces = std::move(faces);
    D.gluings = std::move(gluings);
    D.boundary = std::move(boundary);
    D.side_edge.assign(F, {-1, -1, -1});
    D.on_boundary.assign(num_vertices, 0);

    auto check_side = [&](const SideRef& s) {
        if (s.face < 0 || s.face >= F || s.side < 0 || s.side >= 3)
            throw MeshError("side " + side_name(s.face, s.side) + " out of range");
        if (D.side_edge[s.face][s.side] != -1)
            throw MeshError("side " + side_name(s.face, s.side) + " used twice");
    };
    auto side_origin = [&](const SideRef& s) { return D.faces[s.face][(s.side + 1) % 3]; };
    auto side_dest = [&](const SideRef& s) { return D.faces[s.face][(s.side + 2) % 3]; };

    for (const auto& [sa, sb] : D.gluings) {
        check_side(sa);
        int e = D.num_edges++;
        D.side_edge[sa.face][sa.side] = e;
        check_side(sb);
        D.side_edge[sb.face][sb.side] = e;
        if (side_origin(sa) != side_dest(sb) || side_dest(sa) != side_origin(sb))
            throw MeshError("gluing " + side_name(sa.face, sa.side) + " <-> " +
                            side_name(sb.face, sb.side) +
                            " does not traverse the edge oppositely");
        D.edge_vertices.emplace_back(side_origin(sa), side_dest(sa));
    }
    for (const SideRef& s : D.boundary) {
        check_side(s);
        D.side_edge[s.face][s.side] = D.num_edges++;
        D.edge_vertices.emplace_back(side_origin(s), side_dest(s));
        D.on_boundary[side_origin(s)] = 1;
        D.on_boundary[side_dest(s)] = 1;
    }
    for (int f = 0; f < F; ++f)
        for (int s = 0; s < 3; ++s)
            if (D.side_edge[f][s] == -1)
                throw MeshError("side " + side_name(f, s) +
                                " is neither glued nor on the boundary");

    // Vertex links. At corner c of a face, the outgoing side is (c+2)%3 and
    // the incoming side is (c+1)%3; rotating across a glued incoming side
    // lands on the next corner around the vertex. Interior links must close
    // into one cycle, boundary links must form one open chain.
    std::vector<char> is_boundary_side(3 * F, 0);
    std::vector<int> glued_to(3 * F, -1);
    for (const auto& [sa, sb] : D.gluings) {
        glued_to[3 * sa.face + sa.side] = 3 * sb.face + sb.side;
        glued_to[3 * sb.face + sb.side] = 3 * sa.face + sa.side;
    }
    for (const SideRef& s : D.boundary) is_boundary_side[3 * s.face + s.side] = 1;

    std::vector<int> corner_count(num_vertices, 0);
    std::vector<int> chain_start(num_vertices, -1);
    std::vector<int> some_corner(num_vertices, -1);
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < 3; ++c) {
            int v = D.faces[f][c];
            ++corner_count[v];
            some_corner[v] = 3 * f + c;
            if (is_boundary_side[3 * f + (c + 1) % 3]) {
                if (chain_start[v] != -1)
                    throw MeshError("vertex " + std::to_string(v) +
                                    " touches the boundary more than once");
                chain_start[v] = 3 * f + c;
            }
        }
    }
    auto rotate = [&](int corner) {  // corner id 3f+c -> next corner around vertex, -1 at boundary
        int f = corner / 3, c = corner % 3;
        int out = 3 * f + (c + 2) % 3;
        if (is_boundary_side[out]) return -1;
        int g = glued_to[out];
        return 3 * (g / 3) + ((g % 3) + 2) % 3;  // corner whose incoming side is g
    };
    for (int v = 0; v < num_vertices; ++v) {
        if (corner_count[v] == 0)
            throw MeshError("vertex " + std::to_string(v) + " is not a corner of any face");
        if (D.on_boundary[v] != (chain_start[v] != -1))
            throw MeshError("vertex " + std::to_string(v) + " has a pinched link");
        int corner = D.on_boundary[v] ? chain_start[v] : some_corner[v];
        int n = 0;
        while (true) {
            if (D.faces[corner / 3][corner % 3] != v || ++n > corner_count[v])
                throw MeshError("vertex " + std::to_string(v) + " has a pinched link");
            int nxt = rotate(corner);
            if (nxt == -1) {
                if (!D.on_boundary[v])
                    throw MeshError("vertex " + std::to_string(v) + " has a pinched link");
                break;
            }
            corner = nxt;
            if (!D.on_boundary[v] && corner == some_corner[v]) break;
        }
        if (n != corner_count[v])
            throw MeshError("vertex " + std::to_string(v) + " has a pinched link");
    }

    // Face connectivity across interior gluings.
    {
        std::vector<char> seen(F, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int g = glued_to[3 * f + s];
                if (g >= 0 && !seen[g / 3]) {
                    seen[g / 3] = 1;
                    ++reached;
                    stack.push_back(g / 3);
                }
            }
        }
        if (reached != F) throw MeshError("surface is not connected");
    }
    return D;
}

DoubledSurface double_surface(const DiskTriangulation& disk) {
    const int F = static_cast<int>(disk.faces.size());
    const int V = disk.num_vertices;

    DoubledSurface out;
    out.original_vertices = V;
    out.original_faces = F;

    // Boundary vertices are shared by both halves, interior vertices get a
    // fresh mirror copy.
    std::vector<int> mirror_vertex(V);
    int next_vertex = V;
    for (int v = 0; v < V; ++v)
        mirror_vertex[v] = disk.on_boundary[v] ? v : next_vertex++;
    out.vertex_mirror.resize(next_vertex);
    for (int v = 0; v < V; ++v) {
        out.vertex_mirror[v] = mirror_vertex[v];
        out.vertex_mirror[mirror_vertex[v]] = v;
    }

    // Mirror face of (v0,v1,v2) is (m v0, m v2, m v1): swapping two corners
    // restores counterclockwise orientation. Side s maps to sigma(s) with
    // sigma = (0)(1 2).
    auto sigma = [](int s) { return s == 0 ? 0 : 3 - s; };
    std::vector<std::array<int, 3>> faces(2 * F);
    out.face_mirror.resize(2 * F);
    for (int f = 0; f < F; ++f) {
        const auto& fc = disk.faces[f];
        faces[f] = fc;
        faces[F + f] = {mirror_vertex[fc[0]], mirror_vertex[fc[2]], mirror_vertex[fc[1]]};
        out.face_mirror[f] = F + f;
        out.face_mirror[F + f] = f;
    }

    std::vector<Gluing> gluings;
    gluings.reserve(2 * disk.gluings.size() + disk.boundary.size());
    out.disk_edge_to_double.assign(disk.num_edges, -1);
    for (const auto& [sa, sb] : disk.gluings) {
        out.disk_edge_to_double[disk.side_edge_id(sa)] = static_cast<int>(gluings.size());
        out.double_edge_to_disk.push_back(disk.side_edge_id(sa));
        gluings.push_back({sa, sb});
    }
    for (const auto& [sa, sb] : disk.gluings) {
        out.double_edge_to_disk.push_back(disk.side_edge_id(sa));
        gluings.push_back({{F + sa.face, sigma(sa.side)}, {F + sb.face, sigma(sb.side)}});
    }
    for (const SideRef& s : disk.boundary) {
        out.disk_edge_to_double[disk.side_edge_id(s)] = static_cast<int>(gluings.size());
        out.double_edge_to_disk.push_back(disk.side_edge_id(s));
        gluings.push_back({s, {F + s.face, sigma(s.side)}});
    }

    out.surface = Triangulation::build(next_vertex, faces, gluings);
    return out;
}

}  // namespace confsurf
