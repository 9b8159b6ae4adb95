// Command line frontend: validate, retriangulate, solve, lay out, rescale and
// import decorated surfaces stored in the plain-text surface format. Reports
// are printed as JSON on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 invalid input (combinatorics, geometry, usage),
// 2 solver failure or non-convergence, 3 file syntax errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confsurf/delaunay.hpp"
#include "confsurf/layout.hpp"
#include "confsurf/metric.hpp"
#include "confsurf/solver.hpp"
#include "confsurf/surface_file.hpp"

using json = nlohmann::ordered_json;
using namespace confsurf;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

void maybe_write_report(const std::string& path, const json& report) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open report file '" + path + "'");
    out << report.dump(2) << "\n";
}

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> ids;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::istringstream item(token);
        int v;
        if (!(item >> v) || !(item >> std::ws).eof())
            throw UsageError("cannot parse edge id '" + token + "'");
        ids.push_back(v);
    }
    return ids;
}

json history_json(const std::vector<IterationRecord>& history) {
    json rows = json::array();
    for (const IterationRecord& r : history)
        rows.push_back({{"iteration", r.iteration},
                        {"residual", r.residual},
                        {"step", r.step},
                        {"halvings", r.halvings},
                        {"energy", r.energy},
                        {"flips", r.flips}});
    return rows;
}

json solver_json(const SolverReport& report) {
    return {{"converged", report.converged},
            {"admissible", report.admissible},
            {"iterations", report.iterations},
            {"residual", report.residual},
            {"flips", report.flips.size()},
            {"u", report.u},
            {"achieved", report.achieved},
            {"history", history_json(report.history)}};
}

// Validation summary shared by closed surfaces and disks. Disk geometry is
// checked on its reflection double, which has exactly the same triangles.
int run_check(const std::string& in_path) {
    SurfaceFile file = read_surface_file(in_path);
    json report;
    std::vector<int> violations;
    bool triangles_ok = true;
    std::string triangle_message;
    json delaunay = nullptr;

    if (file.is_disk) {
        DiskSurfaceData data = to_disk(file);
        DoubledSurface dbl = double_surface(data.disk);
        DecoratedMetric md;
        md.radius.resize(dbl.surface.vertex_count());
        for (int v = 0; v < dbl.surface.vertex_count(); ++v)
            md.radius[v] =
                data.m.radius[v < data.disk.num_vertices ? v : dbl.vertex_mirror[v]];
        md.length.resize(dbl.surface.edge_count());
        for (int e = 0; e < dbl.surface.edge_count(); ++e)
            md.length[e] = data.m.length[dbl.double_edge_to_disk[e]];

        try {
            check_triangle_inequalities(dbl.surface, md);
        } catch (const GeometryError& e) {
            triangles_ok = false;
            triangle_message = e.what();
        }
        std::vector<char> seen(data.disk.num_edges, 0);
        for (int e : hyperideality_violations(dbl.surface, md)) {
            int de = dbl.double_edge_to_disk[e];
            if (!seen[de]) violations.push_back(de);
            seen[de] = 1;
        }

        int boundary_vertices = 0;
        for (char b : data.disk.on_boundary) boundary_vertices += b;
        report["kind"] = "disk";
        report["vertices"] = data.disk.num_vertices;
        report["boundary_vertices"] = boundary_vertices;
        report["faces"] = data.disk.faces.size();
        report["edges"] = data.disk.num_edges;
        if (triangles_ok) report["cone_angles"] = cone_angles(data.disk, data.m).vertex_sum;
    } else {
        ClosedSurfaceData data = to_closed(file);
        try {
            check_triangle_inequalities(data.T, data.m);
        } catch (const GeometryError& e) {
            triangles_ok = false;
            triangle_message = e.what();
        }
        violations = hyperideality_violations(data.T, data.m);
        report["kind"] = "closed";
        report["genus"] = data.T.genus();
        report["vertices"] = data.T.vertex_count();
        report["faces"] = data.T.face_count();
        report["edges"] = data.T.edge_count();
        if (triangles_ok) report["cone_angles"] = cone_angles(data.T, data.m).vertex_sum;
        if (triangles_ok && violations.empty())
            delaunay = is_weighted_delaunay(data.T, data.m);
    }

    report["triangle_inequalities"] = triangles_ok;
    if (!triangles_ok) report["triangle_error"] = triangle_message;
    report["hyperideality_violations"] = violations;
    if (!file.is_disk) report["delaunay"] = delaunay;
    bool valid = triangles_ok && violations.empty();
    report["valid"] = valid;
    emit(report);
    return valid ? 0 : 1;
}

int run_delaunay(const std::string& in_path, const std::string& out_path,
                 const std::string& report_path) {
    SurfaceFile file = read_surface_file(in_path);
    if (file.is_disk)
        throw UsageError("the flip algorithm operates on closed surfaces");
    ClosedSurfaceData data = to_closed(file);
    FlipResult result = flip_algorithm(data.T, data.m);

    write_surface_file(out_path, from_closed(result.T, result.m, data.target));

    json log = json::array();
    for (const FlipRecord& r : result.log)
        log.push_back({{"old_edge", r.old_edge},
                       {"new_edge", r.new_edge},
                       {"new_length", r.new_length}});
    json report = {{"flips", result.log.size()},
                   {"delaunay", is_weighted_delaunay(result.T, result.m)},
                   {"log", log}};
    maybe_write_report(report_path, report);
    emit(report);
    return 0;
}

int run_solve(const std::string& in_path, const std::string& mode,
              const std::string& out_path, const std::string& report_path,
              const SolverConfig& cfg) {
    SurfaceFile file = read_surface_file(in_path);
    json report;
    bool converged = false;

    if (mode == "boundary") {
        if (!file.is_disk) throw UsageError("mode 'boundary' needs a disk surface file");
        DiskSurfaceData data = to_disk(file);
        std::vector<double> theta(data.disk.num_vertices, 0.0);
        for (int v = 0; v < data.disk.num_vertices; ++v) {
            if (!data.disk.on_boundary[v]) continue;
            if (!data.target[v])
                throw UsageError("boundary vertex " + std::to_string(v) +
                                 " has no target angle");
            theta[v] = *data.target[v];
        }
        BoundaryReport out = solve_boundary(data.disk, data.m, theta, cfg);
        converged = out.double_report.converged;
        report = {{"mode", mode},
                  {"converged", converged},
                  {"admissible", out.double_report.admissible},
                  {"iterations", out.double_report.iterations},
                  {"residual", out.double_report.residual},
                  {"flips", out.double_report.flips.size()},
                  {"u", out.u},
                  {"achieved", out.achieved},
                  {"history", history_json(out.double_report.history)}};
        if (!out_path.empty())
            write_surface_file(out_path, from_disk(data.disk, out.metric, data.target));
    } else {
        if (file.is_disk)
            throw UsageError("mode '" + mode + "' needs a closed surface file");
        ClosedSurfaceData data = to_closed(file);
        SolverReport out;
        if (mode == "uniformize") {
            out = uniformize(data.T, data.m, cfg);
        } else {
            std::vector<double> Theta(data.T.vertex_count());
            for (int v = 0; v < data.T.vertex_count(); ++v) {
                if (!data.target[v])
                    throw UsageError("vertex " + std::to_string(v) +
                                     " has no target angle");
                Theta[v] = *data.target[v];
            }
            out = solve_prescribed_angles(data.T, data.m, Theta, cfg);
        }
        converged = out.converged;
        report = solver_json(out);
        report["mode"] = mode;
        if (!out_path.empty())
            write_surface_file(out_path, from_closed(out.T, out.metric, data.target));
    }

    maybe_write_report(report_path, report);
    emit(report);
    return converged ? 0 : 2;
}

int run_layout(const std::string& in_path, const std::string& cut_text,
               const std::string& out_path, const std::string& report_path) {
    SurfaceFile file = read_surface_file(in_path);
    LayoutResult plan;
    if (file.is_disk) {
        if (!cut_text.empty()) throw UsageError("disks take no --cut list");
        DiskSurfaceData data = to_disk(file);
        plan = plan_layout(layout_input(data.disk, data.m));
    } else {
        ClosedSurfaceData data = to_closed(file);
        plan = plan_layout(layout_input(data.T, data.m, parse_id_list(cut_text)));
    }

    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot open layout file '" + out_path + "'");
    for (const auto& tri : plan.corner) {
        for (int c = 0; c < 3; ++c)
            out << (c ? " " : "") << format_number(tri[c].x()) << " "
                << format_number(tri[c].y());
        out << "\n";
    }

    json report = {{"faces", plan.corner.size()},
                   {"max_length_error", plan.max_length_error},
                   {"max_seam_gap", plan.max_seam_gap}};
    maybe_write_report(report_path, report);
    emit(report);
    return 0;
}

std::vector<double> read_factors(const std::string& path, int expected) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::vector<double> u;
    double x;
    while (in >> x) u.push_back(x);
    if (!in.eof()) throw ParseError("malformed number in factors file", 0);
    if (static_cast<int>(u.size()) != expected)
        throw ParseError("factors file lists " + std::to_string(u.size()) +
                             " numbers for " + std::to_string(expected) + " vertices",
                         0);
    return u;
}

int run_interpolate(const std::string& in_path, const std::string& factors_path, double t,
                    const std::string& out_path) {
    SurfaceFile file = read_surface_file(in_path);
    if (file.is_disk) {
        DiskSurfaceData data = to_disk(file);
        std::vector<double> u = read_factors(factors_path, data.disk.num_vertices);
        for (double& x : u) x *= t;
        write_surface_file(out_path,
                           from_disk(data.disk, conformal_apply(data.disk, data.m, u),
                                     data.target));
        emit({{"kind", "disk"}, {"t", t}, {"vertices", data.disk.num_vertices}});
    } else {
        ClosedSurfaceData data = to_closed(file);
        std::vector<double> u = read_factors(factors_path, data.T.vertex_count());
        for (double& x : u) x *= t;
        write_surface_file(out_path,
                           from_closed(data.T, conformal_apply(data.T, data.m, u),
                                       data.target));
        emit({{"kind", "closed"}, {"t", t}, {"vertices", data.T.vertex_count()}});
    }
    return 0;
}

// Plain embedded-mesh reader: `v x y z [radius]` and 1-based `f i j k` records.
// Side lengths come from vertex positions; sides sharing an unordered vertex
// pair are glued, unmatched sides become boundary.
SurfaceFile import_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);

    std::vector<std::array<double, 3>> pos;
    std::vector<double> radius;
    std::vector<std::array<int, 3>> faces;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line.substr(0, line.find('#')));
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        auto number = [&](const std::string& s) {
            char* end = nullptr;
            double v = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size() || !std::isfinite(v))
                throw ParseError("expected a number, got '" + s + "'", lineno);
            return v;
        };
        if (tok[0] == "v") {
            if (tok.size() != 4 && tok.size() != 5)
                throw ParseError("vertex record needs 3 coordinates and an optional radius",
                                 lineno);
            pos.push_back({number(tok[1]), number(tok[2]), number(tok[3])});
            double r = tok.size() == 5 ? number(tok[4]) : 0.0;
            if (r < 0) throw ParseError("vertex radius must be nonnegative", lineno);
            radius.push_back(r);
        } else if (tok[0] == "f") {
            if (tok.size() != 4)
                throw ParseError("face record needs three vertex indices", lineno);
            std::array<int, 3> corner;
            for (int c = 0; c < 3; ++c) {
                double v = number(tok[1 + c]);
                int id = static_cast<int>(v);
                if (v != id || id < 1 || id > static_cast<int>(pos.size()))
                    throw ParseError("face index out of range", lineno);
                corner[c] = id - 1;
            }
            if (corner[0] == corner[1] || corner[1] == corner[2] || corner[0] == corner[2])
                throw ParseError("face with a repeated vertex", lineno);
            faces.push_back(corner);
        } else {
            throw ParseError("unknown record '" + tok[0] + "'", lineno);
        }
    }
    if (pos.empty() || faces.empty()) throw ParseError("no mesh in file", 0);

    SurfaceFile file;
    file.num_vertices = static_cast<int>(pos.size());
    file.radius = radius;
    file.target.assign(pos.size(), std::nullopt);
    file.faces = faces;

    std::map<std::pair<int, int>, std::vector<SideRef>> classes;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (int s = 0; s < 3; ++s) {
            int a = faces[f][(s + 1) % 3], b = faces[f][(s + 2) % 3];
            classes[{std::min(a, b), std::max(a, b)}].push_back({f, s});
            double dx = pos[a][0] - pos[b][0];
            double dy = pos[a][1] - pos[b][1];
            double dz = pos[a][2] - pos[b][2];
            double l = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (!(l > 0))
                throw GeometryError("coincident vertex positions on a face side");
            file.lengths.emplace_back(f, s, l);
        }
    for (const auto& [key, sides] : classes) {
        if (sides.size() == 1)
            file.boundary.push_back(sides[0]);
        else if (sides.size() == 2)
            file.gluings.push_back({sides[0], sides[1]});
        else
            throw MeshError("edge " + std::to_string(key.first) + "-" +
                            std::to_string(key.second) + " is shared by " +
                            std::to_string(sides.size()) + " faces");
    }
    file.is_disk = !file.boundary.empty();
    return file;
}

int run_import(const std::string& in_path, const std::string& out_path) {
    SurfaceFile file = import_mesh(in_path);
    json report;
    if (file.is_disk) {
        DiskSurfaceData data = to_disk(file);  // validates the combinatorics
        report = {{"kind", "disk"},
                  {"vertices", data.disk.num_vertices},
                  {"faces", data.disk.faces.size()},
                  {"edges", data.disk.num_edges}};
    } else {
        file.genus =
            Triangulation::build(file.num_vertices, file.faces, file.gluings).genus();
        ClosedSurfaceData data = to_closed(file);
        report = {{"kind", "closed"},
                  {"genus", data.T.genus()},
                  {"vertices", data.T.vertex_count()},
                  {"faces", data.T.face_count()},
                  {"edges", data.T.edge_count()}};
    }
    write_surface_file(out_path, file);
    emit(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated piecewise-flat surface toolkit"};
    app.require_subcommand(1);

    std::string input, output, report_path, mode, cut_text, factors_path;
    double t = 1.0;
    SolverConfig cfg;

    CLI::App* check = app.add_subcommand("check", "validate a surface file");
    check->add_option("input", input, "surface file")->required();

    CLI::App* delaunay =
        app.add_subcommand("delaunay", "flip a closed surface to weighted Delaunay form");
    delaunay->add_option("input", input, "surface file")->required();
    delaunay->add_option("-o,--output", output, "output surface file")->required();
    delaunay->add_option("--report", report_path, "also write the JSON report here");

    CLI::App* solve = app.add_subcommand("solve", "solve a conformal mapping problem");
    solve->add_option("input", input, "surface file")->required();
    solve->add_option("--mode", mode, "problem kind")
        ->required()
        ->check(CLI::IsMember({"angles", "uniformize", "boundary"}));
    solve->add_option("-o,--output", output, "output surface file");
    solve->add_option("--report", report_path, "also write the JSON report here");
    solve->add_option("--max-iterations", cfg.max_iterations, "iteration cap");
    solve->add_option("--tol", cfg.residual_tol, "residual tolerance");

    CLI::App* layout = app.add_subcommand("layout", "develop the surface into the plane");
    layout->add_option("input", input, "surface file")->required();
    layout->add_option("-o,--output", output, "coordinate file (6 numbers per face)")
        ->required();
    layout->add_option("--cut", cut_text, "comma-separated edge ids to cut (closed only)");
    layout->add_option("--report", report_path, "also write the JSON report here");

    CLI::App* interpolate =
        app.add_subcommand("interpolate", "apply a fraction of given scale factors");
    interpolate->add_option("input", input, "surface file")->required();
    interpolate->add_option("--factors", factors_path, "file with one factor per vertex")
        ->required();
    interpolate->add_option("--t", t, "interpolation parameter (default 1)");
    interpolate->add_option("-o,--output", output, "output surface file")->required();

    CLI::App* import_cmd =
        app.add_subcommand("import", "build a surface file from an embedded mesh");
    import_cmd->add_option("input", input, "mesh file with v/f records")->required();
    import_cmd->add_option("-o,--output", output, "output surface file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(input);
        if (delaunay->parsed()) return run_delaunay(input, output, report_path);
        if (solve->parsed()) return run_solve(input, mode, output, report_path, cfg);
        if (layout->parsed()) return run_layout(input, cut_text, output, report_path);
        if (interpolate->parsed()) return run_interpolate(input, factors_path, t, output);
        if (import_cmd->parsed()) return run_import(input, output);
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        std::cerr << ": " << e.what() << "\n";
        return 3;
    } catch (const SolveError& e) {
        std::cerr << "solve error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
