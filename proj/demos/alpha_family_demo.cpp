// Scans the alpha-family of connections on the 3x3 SPD cone: sectional
// curvature on a basis plane, curvature residual at random points, and the
// four distinguished flat connections with their single moduli orbit.

#include <cstdio>

#include "statgeo/statgeo.hpp"

using namespace statgeo;

int main() {
    const int n = 3;
    const MetricParam fisher = MetricParam::fisher();

    std::printf("alpha-family on the %dx%d SPD cone (Fisher metric)\n", n, n);
    std::printf("%8s  %14s  %14s\n", "alpha", "Sect(plane 0,3)", "max |R| (5 pts)");
    for (double alpha = -1.5; alpha <= 1.5001; alpha += 0.25) {
        StatConn conn(fisher, InvCubic(n, alpha, 0.0, 0.0));
        double sect = sectional_basis(conn.cubic, 0, n);
        double residual = flatness_residual(conn, n, 5, 42);
        std::printf("%8.2f  %14.6f  %14.3e\n", alpha, sect, residual);
    }

    std::printf("\ndually flat connections for n = %d:\n", n);
    for (const auto& sol : solve_flat(n).solutions)
        std::printf("  (%s, %s, %s)\n", sol.a1.str().c_str(), sol.a2.str().c_str(),
                    sol.a3.str().c_str());
    auto m = df_moduli(n);
    std::printf("moduli: %s (%d orbit)\n", m.moduli.c_str(), m.orbit_count);
    return 0;
}
