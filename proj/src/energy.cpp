#include "confsurf/energy.hpp"

#include <cmath>
#include <string>

namespace confsurf {

EnergyEvaluation evaluate_energy(const Triangulation& T, const DecoratedMetric& m,
                                 const std::vector<double>& u,
                                 const std::vector<double>& Theta,
                                 const EnergyRequest& want,
                                 const std::vector<double>* ideal_reference) {
    const int V = T.vertex_count();
    if (static_cast<int>(u.size()) != V || static_cast<int>(Theta.size()) != V)
        throw GeometryError("scale or target vector has wrong size");

    DecoratedMetric mt = conformal_apply(T, m, u);

    EnergyEvaluation out;
    out.triangulation = T;
    out.report = edge_weight_report(T, mt);
    for (int e : T.edges()) {
        const EdgeWeightEntry& entry = out.report.edge[e];
        if (entry.margin < -1e-9 * entry.scale)
            throw NonDelaunayError("edge " + std::to_string(e) +
                                   " is not weighted Delaunay at the requested scale");
    }
    out.angles = cone_angles(T, mt);

    if (want.gradient) {
        out.gradient.resize(V);
        for (int v = 0; v < V; ++v) out.gradient[v] = out.angles.vertex_sum[v] - Theta[v];
        out.has_gradient = true;
    }

    if (want.hessian) {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(4 * static_cast<size_t>(T.edge_count()));
        for (int e : T.edges()) {
            if (T.is_loop(e)) continue;  // du_i - du_j vanishes on a loop
            auto [i, j] = T.edge_endpoints(e);
            double c = out.report.edge[e].margin / mt.length[e];
            trip.emplace_back(i, j, c);
            trip.emplace_back(j, i, c);
            trip.emplace_back(i, i, -c);
            trip.emplace_back(j, j, -c);
        }
        out.hessian.resize(V, V);
        out.hessian.setFromTriplets(trip.begin(), trip.end());
        out.has_hessian = true;
    }

    if (want.value) {
        HeightVector hv = heights(m, u);
        if (ideal_reference) {
            if (ideal_reference->size() != static_cast<size_t>(V))
                throw GeometryError("reference vector has wrong size");
            for (int v = 0; v < V; ++v)
                if (hv.eps[v] == 0) hv.h[v] -= (*ideal_reference)[v];
        }

        double value = 0.0;
        for (int f = 0; f < T.face_count(); ++f) {
            TrianglePowerData pd = triangle_power(face_lengths(T, mt, f), face_radii(T, mt, f));
            value -= 2.0 * horoprism_volume(out.angles.corner[f], pd.alpha);
        }
        for (int v = 0; v < V; ++v)
            value += (Theta[v] - out.angles.vertex_sum[v]) * hv.h[v];
        for (int e : T.edges()) {
            auto [i, j] = T.edge_endpoints(e);
            double lambda = lambda_length(mt.length[e], hv.h[i], hv.h[j], hv.eps[i], hv.eps[j]);
            value += (M_PI - out.report.edge[e].alpha_sum) * lambda;
        }
        out.value = value;
        out.has_value = true;
    }
    return out;
}

double shift_prediction(const std::vector<double>& Theta, int genus, int num_vertices,
                        double c) {
    double sum = 0.0;
    for (double t : Theta) sum += t;
    return -c * (2.0 * M_PI * (2.0 * genus - 2.0 + num_vertices) - sum);
}

}  // namespace confsurf
