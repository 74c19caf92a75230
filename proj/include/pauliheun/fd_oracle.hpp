#ifndef PAULIHEUN_FD_ORACLE_HPP
#define PAULIHEUN_FD_ORACLE_HPP

// Independent finite-difference adjudicator for the radial problem
// -f'' + W f = (2 m eps) f on a uniform grid, Dirichlet ends, lowest
// eigenvalues by Sturm-sequence bisection, Richardson extrapolation
// across grid halvings.  This solver never touches the reduction
// pipeline, which is what makes its levels usable as a cross-check.

#include <vector>

#include "pauliheun/enu_core.hpp"
#include "pauliheun/geometry.hpp"

namespace pauliheun {

struct GridSpec {
    double h = 0.04;    // target spacing (in the same length unit as a_B)
    double r_max = 0.0; // right Dirichlet end; <= 0 picks the default policy
};

// Unknowns live at r_i = (i+1) h, i = 0..n_points-1; the wave function is
// pinned to zero at r = 0 and at r = r_right = (n_points+1) h.  The first
// unknown sits at r = h, so the potential is never evaluated at the
// Coulomb pole.
struct RadialProblem {
    PhysParams params;
    Channel channel;
    double h;
    int n_points;
    double r_right;
    std::vector<double> w;  // W(r_i)

    double r_node(int i) const { return (i + 1) * h; }
    double r_first() const { return h; }
    double r_last() const { return n_points * h; }
};

// Default domain: max(60, 30 n_principal_target) Bohr radii for flat and
// hyperbolic space, the chart length pi/sqrt(kappa) on the sphere.
double default_r_max(const PhysParams& p, int n_principal_target);

RadialProblem discretize(const PhysParams& p, const Channel& ch, const GridSpec& grid);

struct EigenReport {
    double grid_h;                    // finest grid spacing used
    std::vector<double> eig_2me;      // operator eigenvalues 2 m eps, ascending
    std::vector<double> eps_over_ry;  // same levels in Rydberg units
    std::vector<double> richardson_ry;   // extrapolated levels (empty for single-grid solves)
    std::vector<double> err_est;         // per-level extrapolation error estimate
    std::vector<double> observed_order;  // grid-doubling convergence order per level
};

// k lowest eigenvalues on one grid.
EigenReport solve_levels(const RadialProblem& problem, int k);

// Solves on grid, grid/2, ..., grid/2^refinements and extrapolates;
// refinements >= 2 so second-level Richardson is available.
EigenReport converge_levels(const PhysParams& p, const Channel& ch, GridSpec grid, int k,
                            int refinements = 2);

struct ComparisonRow {
    int n_principal;
    bool has_oracle;
    double oracle_ry;  // extrapolated
    bool has_candidate;
    double candidate_ry;
    double schrodinger_ry;
    double oracle_minus_candidate;
    double oracle_minus_schrodinger;
    double geometric_shift;  // candidate minus baseline, kappa/(2m) in Ry
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    bool has_threshold;
    double threshold_ry;  // hyperbolic continuum edge -2 sqrt(|kappa| a_B^2)
};

// Joins extrapolated oracle levels (n_bar = l+1+k) with the accepted
// candidate lines and the spinless baseline.  No verdict is imposed; the
// deviations are the output.
ComparisonTable compare(const EigenReport& report, const std::vector<SpectrumLine>& lines,
                        const PhysParams& p, const Channel& ch);

}  // namespace pauliheun

#endif
