#include "confsurf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace confsurf {

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sup_norm(const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>(); }

// Reduced Newton direction: solve (-H + s 11^T) delta = g - mean(g). Since
// the Hessian kills constants, the rank-one term pins the mean of delta to
// zero without disturbing the solution on the complement. Falls back to the
// projected gradient when the system is numerically singular or the result
// is not an ascent direction.
Eigen::VectorXd ascent_direction(const EnergyEvaluation& E) {
    const int V = static_cast<int>(E.gradient.size());
    Eigen::VectorXd ghat = E.gradient.array() - E.gradient.mean();
    Eigen::MatrixXd A = -Eigen::MatrixXd(E.hessian);
    double s = A.trace() / V;
    if (!(s > 0)) s = 1.0;
    Eigen::MatrixXd reg = A + s * Eigen::MatrixXd::Ones(V, V);
    Eigen::VectorXd delta = reg.ldlt().solve(ghat);
    if (delta.allFinite()) {
        delta.array() -= delta.mean();
        if (E.gradient.dot(delta) > 0) return delta;
    }
    return ghat;
}

// Root-finding polish on one fixed triangulation: damped Newton on
// theta(u) = Theta without any flips. The mapping problems ask for scale
// factors relative to the combinatorics the caller handed in, but the
// ascent's accepted steps can overshoot a Delaunay wall before the repair
// flips run, and every overshoot slightly decouples the accumulated u from
// the input combinatorics. The angle map itself stays analytic on the whole
// feasible set (signed margins are fine; only the energy value requires
// Delaunay states), so a Newton iteration seeded with the ascent's u lands
// on the exact fixed-combinatorics root whenever the seed is close. Returns
// true when the residual tolerance was reached; u holds the best iterate
// either way.
bool fixed_combinatorics_polish(const Triangulation& T, const DecoratedMetric& m0,
                                const std::vector<double>& Theta,
                                std::vector<double>& u, double tol) {
    const int V = T.vertex_count();
    auto evaluate = [&](const std::vector<double>& cand, EnergyEvaluation& out) {
        DecoratedMetric mt = conformal_apply(T, m0, cand);  // may throw
        AngleData angles = cone_angles(T, mt);
        out = EnergyEvaluation{};
        out.gradient.resize(V);
        for (int v = 0; v < V; ++v) out.gradient[v] = angles.vertex_sum[v] - Theta[v];
        EdgeWeightReport rep = edge_weight_report(T, mt);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(4 * static_cast<size_t>(T.edge_count()));
        for (int e : T.edges()) {
            if (T.is_loop(e)) continue;
            auto [i, j] = T.edge_endpoints(e);
            double c = rep.edge[e].margin / mt.length[e];
            trip.emplace_back(i, j, c);
            trip.emplace_back(j, i, c);
            trip.emplace_back(i, i, -c);
            trip.emplace_back(j, j, -c);
        }
        out.hessian.resize(V, V);
        out.hessian.setFromTriplets(trip.begin(), trip.end());
    };

    EnergyEvaluation E;
    try {
        evaluate(u, E);
    } catch (const InfeasibleScaleError&) {
        return false;
    }
    double best_res = sup_norm(E.gradient);
    for (int it = 0; it < 30 && best_res > tol; ++it) {
        Eigen::VectorXd delta = ascent_direction(E);
        double t = 1.0;
        bool moved = false;
        for (int h = 0; h < 12 && !moved; ++h, t *= 0.5) {
            std::vector<double> cand(V);
            for (int v = 0; v < V; ++v) cand[v] = u[v] + t * delta[v];
            try {
                EnergyEvaluation E2;
                evaluate(cand, E2);
                double res2 = sup_norm(E2.gradient);
                if (res2 < best_res) {
                    u = std::move(cand);
                    best_res = res2;
                    E = std::move(E2);
                    moved = true;
                }
            } catch (const InfeasibleScaleError&) {
            }
        }
        if (!moved) break;
    }
    return best_res <= tol;
}

SolverReport newton_solve(const Triangulation& T0, const DecoratedMetric& m0,
                          const std::vector<double>& Theta, const SolverConfig& cfg) {
    const int V = T0.vertex_count();
    if (static_cast<int>(Theta.size()) != V)
        throw GeometryError("target vector has wrong size");

    SolverReport report;
    report.admissible =
        std::abs(gauss_bonnet_defect(Theta, T0.genus(), V)) <= 1e-12;

    FlipResult fr = flip_algorithm(T0, m0, cfg.flip_trigger, cfg.flat_tol);
    Triangulation T = std::move(fr.T);
    DecoratedMetric m = std::move(fr.m);
    report.flips = std::move(fr.log);

    std::vector<double> u_cum(V, 0.0);
    std::vector<double> zero(V, 0.0);
    EnergyEvaluation E = evaluate_energy(T, m, zero, Theta, {}, &u_cum);
    double residual = sup_norm(E.gradient);
    report.history.push_back({0, residual, 0.0, 0, E.value,
                              static_cast<int>(report.flips.size())});

    int iter = 0;
    while (residual > cfg.residual_tol && iter < cfg.max_iterations) {
        ++iter;
        Eigen::VectorXd delta = ascent_direction(E);
        double slope = E.gradient.dot(delta);

        double t = 1.0;
        int halvings = 0;
        while (true) {
            std::vector<double> u_try(V), ref(V);
            for (int v = 0; v < V; ++v) {
                u_try[v] = t * delta[v];
                ref[v] = u_cum[v] + u_try[v];
            }
            bool accepted = false;
            try {
                DecoratedMetric mt = conformal_apply(T, m, u_try);
                FlipResult step = flip_algorithm(T, mt, cfg.flip_trigger, cfg.flat_tol);
                EnergyEvaluation E2 =
                    evaluate_energy(step.T, step.m, zero, Theta, {}, &ref);
                // Near the maximum the predicted gain drops below the
                // rounding noise of the value, and insisting on a measured
                // increase would reject perfectly good Newton steps. Accept
                // on the Armijo bound, or within noise when the bound itself
                // is unmeasurable.
                double gain = cfg.armijo_slope * t * slope;
                double noise = 1e-13 * (1.0 + std::abs(E.value));
                if (E2.value >= E.value + gain ||
                    (gain <= noise && E2.value >= E.value - noise)) {
                    u_cum = ref;
                    T = std::move(step.T);
                    m = std::move(step.m);
                    E = std::move(E2);
                    report.flips.insert(report.flips.end(), step.log.begin(),
                                        step.log.end());
                    residual = sup_norm(E.gradient);
                    report.history.push_back({iter, residual, t, halvings, E.value,
                                              static_cast<int>(step.log.size())});
                    accepted = true;
                }
            } catch (const InfeasibleScaleError&) {
            } catch (const NonDelaunayError&) {
            }
            if (accepted) break;
            t *= cfg.backtrack;
            if (++halvings > cfg.max_halvings)
                throw SolveError("line search stalled at iteration " +
                                 std::to_string(iter));
        }

        double umax = 0.0;
        for (double x : u_cum) umax = std::max(umax, std::abs(x));
        if (umax > cfg.divergence_guard)
            throw SolveError("scale factors diverged; the target angles admit no solution");
    }

    // Mean-zero gauge: shifting u by a constant rescales the metric globally.
    double c = mean(u_cum);
    for (double& x : u_cum) x -= c;
    m = conformal_apply(T, m, std::vector<double>(V, -c));

    report.converged = residual <= cfg.residual_tol;
    report.iterations = iter;
    report.residual = residual;
    report.u = std::move(u_cum);
    report.achieved = cone_angles(T, m).vertex_sum;
    report.T = std::move(T);
    report.metric = std::move(m);
    return report;
}

}  // namespace

SolverReport solve_prescribed_angles(const Triangulation& T, const DecoratedMetric& m,
                                     const std::vector<double>& Theta,
                                     const SolverConfig& cfg) {
    return newton_solve(T, m, Theta, cfg);
}

SolverReport uniformize(const Triangulation& T, const DecoratedMetric& m,
                        const SolverConfig& cfg) {
    double target = 2.0 * M_PI * (2.0 * T.genus() - 2.0 + T.vertex_count()) /
                    static_cast<double>(T.vertex_count());
    return newton_solve(T, m, std::vector<double>(T.vertex_count(), target), cfg);
}

BoundaryReport solve_boundary(const DiskTriangulation& disk, const DecoratedMetric& m,
                              const std::vector<double>& theta_boundary,
                              const SolverConfig& cfg) {
    const int V = disk.num_vertices;
    if (static_cast<int>(theta_boundary.size()) != V)
        throw GeometryError("boundary target vector has wrong size");

    DoubledSurface dbl = double_surface(disk);
    const Triangulation& Td = dbl.surface;

    DecoratedMetric md;
    md.radius.resize(Td.vertex_count());
    for (int v = 0; v < Td.vertex_count(); ++v)
        md.radius[v] = m.radius[v < V ? v : dbl.vertex_mirror[v]];
    md.length.resize(Td.edge_count());
    for (int e = 0; e < Td.edge_count(); ++e)
        md.length[e] = m.length[dbl.double_edge_to_disk[e]];

    // Interior vertices (and their mirrors) become flat cone points; a
    // boundary vertex of angle sum theta appears once in the double with the
    // full angle 2 theta.
    std::vector<double> Theta(Td.vertex_count(), 2.0 * M_PI);
    for (int v = 0; v < V; ++v)
        if (disk.on_boundary[v]) Theta[v] = 2.0 * theta_boundary[v];
    if (std::abs(gauss_bonnet_defect(Theta, Td.genus(), Td.vertex_count())) > 1e-12)
        throw SolveError("boundary targets violate the total-angle condition");

    BoundaryReport out;
    out.double_report = solve_prescribed_angles(Td, md, Theta, cfg);

    // The ascent reports u against whatever Delaunay combinatorics its flips
    // produced; re-anchor it to the doubled input triangulation so that the
    // disk restriction below solves the problem on the caller's
    // combinatorics. A no-op whenever the ascent never left the input's
    // Delaunay cell.
    std::vector<double> ud = out.double_report.u;
    if (out.double_report.converged)
        fixed_combinatorics_polish(Td, md, Theta, ud, cfg.residual_tol);

    for (int v = 0; v < Td.vertex_count(); ++v) {
        double gap = std::abs(ud[v] - ud[dbl.vertex_mirror[v]]);
        if (gap > 1e-9)
            throw SolveError("solution on the double is not mirror symmetric");
    }

    out.u.assign(ud.begin(), ud.begin() + V);
    out.metric = conformal_apply(disk, m, out.u);
    out.achieved = cone_angles(disk, out.metric).vertex_sum;
    return out;
}

FlowReport theta_flow(const Triangulation& T0, const DecoratedMetric& m0,
                      const std::vector<double>& Theta, double dt, int steps,
                      const SolverConfig& cfg) {
    const int V = T0.vertex_count();
    if (static_cast<int>(Theta.size()) != V)
        throw GeometryError("target vector has wrong size");
    if (!(dt > 0)) throw GeometryError("flow step must be positive");

    FlipResult fr = flip_algorithm(T0, m0, cfg.flip_trigger, cfg.flat_tol);
    Triangulation T = std::move(fr.T);
    DecoratedMetric m = std::move(fr.m);

    std::vector<double> u_cum(V, 0.0);
    std::vector<double> zero(V, 0.0);
    EnergyRequest want;
    want.hessian = false;
    EnergyEvaluation E = evaluate_energy(T, m, zero, Theta, want, &u_cum);
    double residual = sup_norm(E.gradient);

    FlowReport report;
    double dt_cur = dt;
    int accepted = 0, streak = 0;
    while (accepted < steps && residual > cfg.residual_tol) {
        int halvings = 0;
        while (true) {
            std::vector<double> u_step(V), ref(V);
            for (int v = 0; v < V; ++v) {
                u_step[v] = dt_cur * E.gradient[v];
                ref[v] = u_cum[v] + u_step[v];
            }
            bool ok = false;
            try {
                DecoratedMetric mt = conformal_apply(T, m, u_step);
                FlipResult step = flip_algorithm(T, mt, cfg.flip_trigger, cfg.flat_tol);
                EnergyEvaluation E2 = evaluate_energy(step.T, step.m, zero, Theta, want, &ref);
                double res2 = sup_norm(E2.gradient);
                // Same rounding-noise allowance as the Newton line search:
                // close to the stationary point one flow step improves the
                // value and the residual by less than the evaluation noise.
                double noise = 1e-13 * (1.0 + std::abs(E.value));
                if (E2.value >= E.value - noise &&
                    res2 <= residual + 1e-13 * (1.0 + residual)) {
                    u_cum = ref;
                    T = std::move(step.T);
                    m = std::move(step.m);
                    E = std::move(E2);
                    residual = res2;
                    ok = true;
                }
            } catch (const InfeasibleScaleError&) {
            } catch (const NonDelaunayError&) {
            }
            if (ok) break;
            dt_cur *= 0.5;
            streak = 0;
            if (++halvings > cfg.max_halvings)
                throw SolveError("flow step collapsed at step " + std::to_string(accepted));
        }
        ++accepted;
        report.history.push_back({accepted, dt_cur, residual, E.value});
        if (++streak >= 2 && dt_cur < dt) {
            dt_cur = std::min(dt, 2.0 * dt_cur);
            streak = 0;
        }
    }

    double c = mean(u_cum);
    for (double& x : u_cum) x -= c;
    m = conformal_apply(T, m, std::vector<double>(V, -c));

    report.u = std::move(u_cum);
    report.T = std::move(T);
    report.metric = std::move(m);
    report.residual = residual;
    report.reached_tolerance = residual <= cfg.residual_tol;
    return report;
}

std::vector<EdgeInvariant> conformal_invariant_record(
    const Triangulation& T, const DecoratedMetric& m,
    const std::vector<double>* ideal_reference, double flat_tol) {
    FlipResult fr = flip_algorithm(T, m, 1e-10, flat_tol);
    HeightVector hv = heights(fr.m, std::vector<double>(T.vertex_count(), 0.0));
    if (ideal_reference) {
        if (ideal_reference->size() != hv.h.size())
            throw GeometryError("reference vector has wrong size");
        for (size_t v = 0; v < hv.h.size(); ++v)
            if (hv.eps[v] == 0) hv.h[v] -= (*ideal_reference)[v];
    }
    std::vector<EdgeInvariant> out;
    for (int e : non_flat_edges(fr.report)) {
        auto [i, j] = fr.T.edge_endpoints(e);
        double lam = lambda_length(fr.m.length[e], hv.h[i], hv.h[j], hv.eps[i], hv.eps[j]);
        out.push_back({std::min(i, j), std::max(i, j), lam});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace confsurf
