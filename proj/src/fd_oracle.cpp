#include "pauliheun/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pauliheun/errors.hpp"

namespace pauliheun {

double default_r_max(const PhysParams& p, int n_principal_target) {
    if (p.kappa > 0.0) return chart_limit(p.kappa);
    return std::max(60.0, 30.0 * n_principal_target) * p.a_b;
}

RadialProblem discretize(const PhysParams& p, const Channel& ch, const GridSpec& grid) {
    if (!(grid.h > 0.0)) throw std::domain_error("discretize: grid spacing must be positive");
    double r_right = grid.r_max;
    if (r_right <= 0.0) r_right = default_r_max(p, 4);
    if (p.kappa > 0.0 && r_right > chart_limit(p.kappa) * (1.0 + 1e-12))
        throw std::domain_error("discretize: r_max beyond the spherical chart pi/sqrt(kappa)");

    const int m_total = static_cast<int>(std::llround(r_right / grid.h));
    if (m_total < 10) throw std::domain_error("discretize: grid too coarse (need >= 10 intervals)");

    RadialProblem prob;
    prob.params = p;
    prob.channel = ch;
    prob.n_points = m_total - 1;
    prob.h = r_right / m_total;
    prob.r_right = r_right;
    prob.w.resize(prob.n_points);
    for (int i = 0; i < prob.n_points; ++i) {
        const double wi = effective_potential(p, ch, prob.r_node(i));
        if (!std::isfinite(wi))
            throw std::domain_error("discretize: potential pole inside the grid");
        prob.w[i] = wi;
    }
    return prob;
}

namespace {

// Eigenvalue count below x for the symmetric tridiagonal operator with
// diagonal d and constant off-diagonal e (Sturm sequence via LDL^T).
int sturm_count(const std::vector<double>& d, double e2, double x, double pivmin) {
    int count = 0;
    double q = 1.0;
    for (size_t i = 0; i < d.size(); ++i) {
        q = (i == 0) ? d[0] - x : d[i] - x - e2 / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const std::vector<double>& d, double e, int k) {
    const int n = static_cast<int>(d.size());
    if (k < 1) throw std::invalid_argument("solve_levels: need k >= 1");
    if (k > n)
        throw SolverError("solve_levels: requested " + std::to_string(k) +
                          " levels from a grid with only " + std::to_string(n) + " points");

    double lo = d[0], hi = d[0];
    for (double v : d) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    lo -= 2.0 * std::abs(e);
    hi += 2.0 * std::abs(e);
    const double e2 = e * e;
    const double pivmin = std::max(1e-300, e2 * 1e-14);

    std::vector<double> eig(k);
    double left_floor = lo;
    for (int j = 0; j < k; ++j) {
        double a = left_floor, b = hi;
        int it = 0;
        while (b - a > 1e-14 * std::max({1.0, std::abs(a), std::abs(b)})) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(d, e2, mid, pivmin) >= j + 1)
                b = mid;
            else
                a = mid;
            if (++it > 200)
                throw SolverError("solve_levels: bisection failed to converge after 200 steps at level " +
                                  std::to_string(j));
        }
        eig[j] = 0.5 * (a + b);
        left_floor = a;  // levels are ordered; never look below again
    }
    return eig;
}

}  // namespace

EigenReport solve_levels(const RadialProblem& problem, int k) {
    const double h2 = problem.h * problem.h;
    std::vector<double> diag(problem.n_points);
    for (int i = 0; i < problem.n_points; ++i) diag[i] = 2.0 / h2 + problem.w[i];
    const double e = -1.0 / h2;

    EigenReport rep;
    rep.grid_h = problem.h;
    rep.eig_2me = lowest_eigenvalues(diag, e, k);
    rep.eps_over_ry.resize(k);
    const double to_ry = 1.0 / (2.0 * problem.params.mass * problem.params.ry);
    for (int j = 0; j < k; ++j) rep.eps_over_ry[j] = rep.eig_2me[j] * to_ry;
    return rep;
}

EigenReport converge_levels(const PhysParams& p, const Channel& ch, GridSpec grid, int k,
                            int refinements) {
    if (refinements < 2)
        throw std::invalid_argument("converge_levels: at least two halvings are required");
    if (grid.r_max <= 0.0) grid.r_max = default_r_max(p, ch.l_eff() + k);

    std::vector<EigenReport> solves;
    double h = grid.h;
    for (int r = 0; r <= refinements; ++r) {
        RadialProblem prob = discretize(p, ch, GridSpec{h, grid.r_max});
        solves.push_back(solve_levels(prob, k));
        h *= 0.5;
    }

    EigenReport rep = solves.back();
    rep.richardson_ry.resize(k);
    rep.err_est.resize(k);
    rep.observed_order.resize(k);
    const auto& e1 = solves[refinements - 2].eps_over_ry;
    const auto& e2 = solves[refinements - 1].eps_over_ry;
    const auto& e3 = solves[refinements].eps_over_ry;
    for (int j = 0; j < k; ++j) {
        // Second-order scheme: one level of h^2 elimination per pair, then
        // the h^4 term across the pair of extrapolants.
        const double a1 = (4.0 * e2[j] - e1[j]) / 3.0;
        const double a2 = (4.0 * e3[j] - e2[j]) / 3.0;
        rep.richardson_ry[j] = (16.0 * a2 - a1) / 15.0;
        rep.err_est[j] = std::abs(rep.richardson_ry[j] - a2);
        const double d1 = e1[j] - e2[j];
        const double d2 = e2[j] - e3[j];
        rep.observed_order[j] = (d2 != 0.0 && d1 / d2 > 0.0) ? std::log2(d1 / d2) : 0.0;
    }
    return rep;
}

ComparisonTable compare(const EigenReport& report, const std::vector<SpectrumLine>& lines,
                        const PhysParams& p, const Channel& ch) {
    if (report.richardson_ry.empty())
        throw std::invalid_argument("compare: report must carry Richardson-extrapolated levels");

    std::map<int, double> oracle;  // n_bar -> extrapolated level
    const int l = ch.l_eff();
    for (size_t j = 0; j < report.richardson_ry.size(); ++j)
        oracle[l + 1 + static_cast<int>(j)] = report.richardson_ry[j];

    std::map<int, double> candidate;  // n_bar -> eps/Ry
    for (const SpectrumLine& line : lines)
        if (line.status == LineStatus::accepted) candidate[line.big_n / 2] = line.eps_over_ry;

    const double shift_ry = p.kappa / (2.0 * p.mass * p.ry);

    ComparisonTable table;
    table.has_threshold = p.kappa < 0.0;
    table.threshold_ry = p.kappa < 0.0 ? -2.0 * std::sqrt(-p.kappa) * p.a_b : 0.0;

    std::map<int, ComparisonRow> rows;
    auto row_for = [&](int nb) -> ComparisonRow& {
        auto it = rows.find(nb);
        if (it == rows.end()) {
            ComparisonRow r{};
            r.n_principal = nb;
            r.schrodinger_ry = schrodinger_energy(p, nb) / p.ry;
            r.geometric_shift = shift_ry;
            it = rows.emplace(nb, r).first;
        }
        return it->second;
    };
    for (const auto& [nb, v] : oracle) {
        ComparisonRow& r = row_for(nb);
        r.has_oracle = true;
        r.oracle_ry = v;
    }
    for (const auto& [nb, v] : candidate) {
        ComparisonRow& r = row_for(nb);
        r.has_candidate = true;
        r.candidate_ry = v;
    }
    for (auto& [nb, r] : rows) {
        if (r.has_oracle && r.has_candidate) r.oracle_minus_candidate = r.oracle_ry - r.candidate_ry;
        if (r.has_oracle) r.oracle_minus_schrodinger = r.oracle_ry - r.schrodinger_ry;
        table.rows.push_back(r);
    }
    return table;
}

}  // namespace pauliheun
