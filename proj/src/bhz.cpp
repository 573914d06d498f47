#include "floqlab/bhz.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "floqlab/error.hpp"

namespace floqlab {

void BhzParams::validate() const {
    if (!std::isfinite(M) || !std::isfinite(B)) throw InvalidArgument("BhzParams: non-finite");
}

FieldVector h_of_k(const BhzParams& p, const KPoint& k) {
    return {std::sin(k.kx), std::sin(k.ky), p.B * (p.M - std::cos(k.kx) - std::cos(k.ky))};
}

std::pair<double, double> bands(const BhzParams& p, const KPoint& k) {
    const double h = h_of_k(p, k).norm();
    return {-h, h};
}

Spinor eigenstate_lower(const BhzParams& p, const KPoint& k) {
    return eigenstate_lower(h_of_k(p, k));
}

double berry_curvature(const BhzParams& p, const KPoint& k) {
    const FieldVector h = h_of_k(p, k);
    const double hn = h.norm();
    if (hn < 1e-12) throw DegenerateField("berry_curvature: gap closed");
    const FieldVector dx{std::cos(k.kx), 0.0, p.B * std::sin(k.kx)};
    const FieldVector dy{0.0, std::cos(k.ky), p.B * std::sin(k.ky)};
    return dot(h, cross(dx, dy)) / (2.0 * hn * hn * hn);
}

int chern_number(const BhzParams& p, int grid_n) {
    p.validate();
    if (grid_n < 4) throw InvalidArgument("chern_number: grid_n must be >= 4");

    const double step = 2.0 * M_PI / grid_n;
    std::vector<Spinor> u(static_cast<std::size_t>(grid_n) * grid_n);
    for (int ix = 0; ix < grid_n; ++ix) {
        for (int iy = 0; iy < grid_n; ++iy) {
            const KPoint k{ix * step, iy * step};
            const FieldVector h = h_of_k(p, k);
            if (h.norm() < 1e-9)
                throw DegenerateField("chern_number: gap closes on the grid");
            u[ix * grid_n + iy] = eigenstate_lower(h);
        }
    }

    auto link = [&](int ax, int ay, int bx, int by) {
        const complexd ov = inner(u[((ax % grid_n + grid_n) % grid_n) * grid_n +
                                    ((ay % grid_n + grid_n) % grid_n)],
                                  u[((bx % grid_n + grid_n) % grid_n) * grid_n +
                                    ((by % grid_n + grid_n) % grid_n)]);
        const double m = std::abs(ov);
        if (m < 1e-12) throw NumericalError("chern_number: vanishing link overlap");
        return ov / m;
    };

    // plaquette flux oriented to match F_xy = h.(d_kx h x d_ky h)/(2h^3): the
    // loop runs k -> k+y -> k+x+y -> k+x -> k
    double total = 0.0;
    for (int ix = 0; ix < grid_n; ++ix) {
        for (int iy = 0; iy < grid_n; ++iy) {
            const complexd plaq = link(ix, iy, ix, iy + 1) * link(ix, iy + 1, ix + 1, iy + 1) *
                                  link(ix + 1, iy + 1, ix + 1, iy) * link(ix + 1, iy, ix, iy);
            total += std::arg(plaq);
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

WindingDiagnostic winding_diagnostic(const BhzParams& p, int grid_n) {
    p.validate();
    if (grid_n < 4) throw InvalidArgument("winding_diagnostic: grid_n must be >= 4");
    WindingDiagnostic d;
    const double step = 2.0 * M_PI / grid_n;
    double zmin = std::numeric_limits<double>::infinity();
    double zmax = -zmin;
    for (int ix = 0; ix < grid_n; ++ix) {
        for (int iy = 0; iy < grid_n; ++iy) {
            const double hz = h_of_k(p, {ix * step, iy * step}).hz;
            zmin = std::min(zmin, hz);
            zmax = std::max(zmax, hz);
        }
    }
    d.zmin = zmin;
    d.zmax = zmax;

    // z-axis crossings of the image surface (where h_x = h_y = 0)
    const double a = p.B * (p.M - 2.0);
    const double b = p.B * p.M;
    const double c = p.B * (p.M + 2.0);
    if ((a < 0.0 && 0.0 < b) || (b < 0.0 && 0.0 < a))
        d.origin = OriginEnclosure::lobe_lower;
    else if ((b < 0.0 && 0.0 < c) || (c < 0.0 && 0.0 < b))
        d.origin = OriginEnclosure::lobe_upper;
    else
        d.origin = OriginEnclosure::outside;
    return d;
}

}  // namespace floqlab
