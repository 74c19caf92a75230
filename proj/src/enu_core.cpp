#include "pauliheun/enu_core.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "pauliheun/errors.hpp"

namespace pauliheun {

namespace {

constexpr double kRelTol = 1e-10;

double rel_scale(std::initializer_list<Complex> vals) {
    double m = 1.0;
    for (const auto& v : vals) m = std::max(m, std::abs(v));
    return m;
}

std::pair<Complex, Complex> label_targets(SquareLabel label, double nu) {
    // (a+c, b) per label.
    switch (label) {
        case SquareLabel::l1: return {Complex{nu, 0.0}, Complex{1.0, 0.0}};
        case SquareLabel::l2: return {Complex{-nu, 0.0}, Complex{-1.0, 0.0}};
        case SquareLabel::l3: return {Complex{1.0, 0.0}, Complex{nu, 0.0}};
        case SquareLabel::l4: return {Complex{-1.0, 0.0}, Complex{-nu, 0.0}};
    }
    throw std::logic_error("label_targets: bad label");
}

// sigma3 coefficients in terms of (eps, lam, nu, g0, g1).
ComplexPoly sigma3_poly(const Dimensionless& d, Complex g0, Complex g1) {
    const Complex eb = d.eps_bar, lb = d.lam_bar;
    const double nb = static_cast<double>(d.nu_bar);
    return ComplexPoly{eb - lb, nb + g0, nb * nb - 2.0 * eb + g1, nb - g0, 1.0 + lb + eb - g1};
}

std::string fmt_complex(Complex v) {
    std::ostringstream os;
    os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    return os.str();
}

}  // namespace

SquareBranch complete_square_with_c(const Dimensionless& d, SquareLabel label, Complex c) {
    if (std::abs(d.nu_bar) < 2)
        throw std::domain_error("complete_square: |nu_bar| must be at least 2");
    const Complex em_lam = d.eps_bar - d.lam_bar;
    if (em_lam == Complex{0.0, 0.0})
        throw std::domain_error("complete_square: eps_bar == lam_bar degenerates the branch (c = 0)");

    const double nb = static_cast<double>(d.nu_bar);
    const auto [apc, b] = label_targets(label, nb);
    const Complex a = apc - c;
    const Complex g0 = nb - 2.0 * a * b;
    const Complex g1 = 1.0 + d.lam_bar + d.eps_bar - a * a;

    // All five coefficient relations, scale-aware.
    const double scale =
        rel_scale({a * a, b * b, c * c, d.eps_bar, d.lam_bar, Complex{nb * nb, 0.0}});
    const Complex r1 = a * a - (1.0 + d.lam_bar + d.eps_bar - g1);
    const Complex r2 = b * b + 2.0 * a * c - (nb * nb - 2.0 * d.eps_bar + g1);
    const Complex r3 = 2.0 * a * b - (nb - g0);
    const Complex r4 = 2.0 * b * c - (nb + g0);
    const Complex r5 = c * c - em_lam;
    for (const Complex* r : {&r1, &r2, &r3, &r4, &r5}) {
        if (std::abs(*r) > kRelTol * scale)
            throw InconsistentBranch("complete_square: coefficient relations do not close, residual " +
                                     fmt_complex(*r));
    }

    // The reconstructed sigma3 must be (a z^2 + b z + c)^2 coefficient-wise.
    const ComplexPoly s3 = sigma3_poly(d, g0, g1);
    const ComplexPoly sq = ComplexPoly{c, b, a} * ComplexPoly{c, b, a};
    const ComplexPoly diff = s3 - sq;
    const double s3scale = std::max({s3.max_abs_coeff(), sq.max_abs_coeff(), 1.0});
    if (diff.max_abs_coeff() > kRelTol * s3scale)
        throw InconsistentBranch("complete_square: sigma3 is not the square of (a z^2 + b z + c)");

    const RootSign root =
        std::abs(c - std::sqrt(em_lam)) <= std::abs(c + std::sqrt(em_lam)) ? RootSign::plus
                                                                           : RootSign::minus;
    return SquareBranch{label, root, a, b, c, g0, g1};
}

SquareBranch complete_square(const Dimensionless& d, SquareLabel label, RootSign root) {
    const Complex em_lam = d.eps_bar - d.lam_bar;
    if (em_lam == Complex{0.0, 0.0})
        throw std::domain_error("complete_square: eps_bar == lam_bar degenerates the branch (c = 0)");
    Complex c = std::sqrt(em_lam);
    if (root == RootSign::minus) c = -c;
    return complete_square_with_c(d, label, c);
}

namespace {

EnuReduction build_reduction(const Dimensionless& d, SquareLabel label, GaugeSign gauge, Complex c,
                             bool enforce) {
    SquareBranch br = complete_square_with_c(d, label, c);
    const Complex a = br.a, b = br.b;

    EnuReduction red;
    red.branch = br;
    red.gauge = gauge;
    if (gauge == GaugeSign::lower) {
        red.A = -c;
        red.B = 0.5 * (1.0 + (a + b + c));
        red.C = 0.5 * (1.0 + (a + c - b));
        red.pi = ComplexPoly{-c, -b, -(1.0 + a)};
    } else {
        red.A = c;
        red.B = 0.5 * (1.0 - (a + b + c));
        red.C = 0.5 * (1.0 - (a + c - b));
        red.pi = ComplexPoly{c, b, a - 1.0};
    }
    const ComplexPoly pi1{1.0, 0.0, -1.0};
    red.tau = pi1 + 2.0 * red.pi;
    red.h = ComplexPoly{br.g0, br.g1} + red.pi.derivative();

    if (enforce) {
        if (!(red.B.real() > 0.0) || !(red.C.real() > 0.0))
            throw NoAdmissibleBranch("reduce: regularity needs Re(B) > 0 and Re(C) > 0; got B = " +
                                     fmt_complex(red.B) + ", C = " + fmt_complex(red.C));
        if (d.hyperbolic() && !(red.A.real() > 0.0))
            throw NoAdmissibleBranch(
                "reduce: hyperbolic chart needs Re(A) > 0 for a normalizable solution; got A = " +
                fmt_complex(red.A));
    }
    return red;
}

Complex root_value(const Dimensionless& d, RootSign root) {
    Complex c = std::sqrt(d.eps_bar - d.lam_bar);
    return root == RootSign::minus ? -c : c;
}

}  // namespace

BranchChoice default_branch_choice(int nu_bar_ode, bool alternate) {
    if (nu_bar_ode >= 0) {
        if (!alternate) return {SquareLabel::l1, GaugeSign::lower, RootSign::minus};
        return {SquareLabel::l2, GaugeSign::upper, RootSign::plus};
    }
    if (!alternate) return {SquareLabel::l2, GaugeSign::lower, RootSign::minus};
    return {SquareLabel::l1, GaugeSign::upper, RootSign::plus};
}

EnuReduction reduce(const Dimensionless& d, const BranchChoice& choice) {
    return build_reduction(d, choice.label, choice.gauge, root_value(d, choice.root), true);
}

EnuReduction reduce_with_c(const Dimensionless& d, SquareLabel label, GaugeSign gauge, Complex c) {
    return build_reduction(d, label, gauge, c, true);
}

EnuReduction reduce(const Dimensionless& d) {
    // Reference choice first, then the root flip, then the mirrored gauge.
    const BranchChoice primary = default_branch_choice(d.nu_bar, false);
    const BranchChoice mirror = default_branch_choice(d.nu_bar, true);
    const BranchChoice order[] = {
        primary,
        {primary.label, primary.gauge, RootSign::plus},
        mirror,
        {mirror.label, mirror.gauge, RootSign::minus},
    };
    std::string last;
    for (const auto& ch : order) {
        try {
            return reduce(d, ch);
        } catch (const NoAdmissibleBranch& e) {
            last = e.what();
        }
    }
    throw NoAdmissibleBranch("reduce: no admissible branch for these parameters; last failure: " +
                             last);
}

HeunParams heun_params(const EnuReduction& red, const Dimensionless& d) {
    HeunParams hp;
    hp.gamma = 2.0 * red.A + 1.0;
    hp.delta = 2.0 * red.B;
    hp.epsH = 2.0 * red.C;
    hp.q = red.h.coeff(0);
    const Complex alpha_beta = -red.h.coeff(1);
    const Complex sum = 2.0 * (red.A + red.B + red.C);
    const Complex disc = 0.25 * sum * sum - alpha_beta;
    const Complex r = std::sqrt(disc);
    hp.alpha = 0.5 * sum - r;
    hp.beta = 0.5 * sum + r;

    const double scale = rel_scale({hp.alpha, hp.beta, hp.gamma, hp.delta, hp.epsH, hp.q});
    // Fuchsian condition: must hold for every reduction the engine emits.
    if (std::abs(hp.epsH - (hp.alpha + hp.beta - hp.gamma - hp.delta + 1.0)) > kRelTol * scale)
        throw std::logic_error("heun_params: Fuchsian condition violated (internal bug)");
    // alpha*beta reconstruction against the gauge-resolved closed form
    // (1 +- a)^2 - (eps + lam).
    const Complex one_pm_a =
        red.gauge == GaugeSign::lower ? 1.0 + red.branch.a : 1.0 - red.branch.a;
    const Complex ab_expected = one_pm_a * one_pm_a - (d.eps_bar + d.lam_bar);
    if (std::abs(alpha_beta - ab_expected) > kRelTol * std::max(scale * scale, 1.0))
        throw std::logic_error("heun_params: alpha*beta reconstruction mismatch (internal bug)");
    return hp;
}

ComplexPoly h_n_poly(const EnuReduction& red, int n) {
    if (n < 0) throw std::invalid_argument("h_n_poly: n must be non-negative");
    const ComplexPoly sigma{0.0, 1.0, 0.0, -1.0};
    const double dn = static_cast<double>(n);

    // Direct form.
    const ComplexPoly hp = red.h.derivative();
    const ComplexPoly tau2 = red.tau.derivative().derivative();
    const ComplexPoly sigma3 = sigma.derivative().derivative().derivative();
    ComplexPoly direct = (dn + 1.0) * hp + (0.5 * dn * (dn + 1.0)) * tau2 +
                         (dn * (dn + 1.0) * (dn - 1.0) / 6.0) * sigma3;

    // Derivative recurrence, starting from the once-differentiated equation.
    ComplexPoly mu_k = red.tau + sigma.derivative();
    ComplexPoly tau_k = red.tau.derivative() + red.h;
    ComplexPoly h_k = red.h.derivative();
    for (int k = 0; k < n; ++k) {
        const ComplexPoly h_next = h_k + tau_k.derivative();
        const ComplexPoly tau_next = tau_k + mu_k.derivative();
        mu_k += sigma.derivative();
        tau_k = tau_next;
        h_k = h_next;
    }

    const ComplexPoly diff = direct - h_k;
    const double scale = std::max({direct.max_abs_coeff(), h_k.max_abs_coeff(), 1.0});
    if (diff.max_abs_coeff() > kRelTol * scale)
        throw std::logic_error("h_n_poly: direct and recurrence forms disagree (internal bug)");
    return direct;
}

QuantizedLevel quantize(Complex lam_bar, int nu_bar_ode, int n) {
    if (n < 0) throw std::invalid_argument("quantize: n must be non-negative");
    if (std::abs(nu_bar_ode) < 2) throw std::domain_error("quantize: |nu_bar| must be at least 2");

    QuantizedLevel lev;
    lev.n = n;
    lev.big_n = 1 + n + std::abs(nu_bar_ode);
    const double N = static_cast<double>(lev.big_n);
    lev.eps_bar = lam_bar * lam_bar / (N * N) + Complex{N * N / 4.0, 0.0};
    lev.sqrt_em_lam = (2.0 * lam_bar - N * N) / (2.0 * N);
    const Complex principal = std::sqrt(lev.eps_bar - lam_bar);
    lev.root_sign =
        std::abs(lev.sqrt_em_lam - principal) <= std::abs(lev.sqrt_em_lam + principal) ? +1 : -1;

    // Back-substitution: h_n must vanish identically at this eps_bar for
    // the branch carrying the selected root.
    const EnuReduction red = quantized_reduction(lam_bar, nu_bar_ode, lev, false, false);
    const ComplexPoly hn = h_n_poly(red, n);
    const double scale = std::max(1.0, red.h.max_abs_coeff() * (n + 1.0));
    if (hn.max_abs_coeff() > 1e-9 * scale)
        throw std::logic_error(
            "quantize: back-substitution failed; the square-root branch does not satisfy the "
            "quantization condition");
    return lev;
}

EnuReduction quantized_reduction(Complex lam_bar, int nu_bar_ode, const QuantizedLevel& level,
                                 bool alternate, bool enforce_admissibility) {
    const Dimensionless d{level.eps_bar, lam_bar, nu_bar_ode};
    const BranchChoice choice = default_branch_choice(nu_bar_ode, alternate);
    // Lower-gauge branches pair with c = -s, the mirrored upper-gauge ones
    // with c = +s, keeping A = s in every case.
    const Complex c = choice.gauge == GaugeSign::lower ? -level.sqrt_em_lam : level.sqrt_em_lam;
    return build_reduction(d, choice.label, choice.gauge, c, enforce_admissibility);
}

double candidate_energy(const PhysParams& p, int n_principal) {
    if (n_principal < 1) throw std::domain_error("candidate_energy: n_principal must be >= 1");
    const double nb = static_cast<double>(n_principal);
    return p.ry * (-1.0 / (nb * nb) + nb * nb * p.kappa_ab2());
}

double schrodinger_energy(const PhysParams& p, int n_principal) {
    return candidate_energy(p, n_principal) - p.kappa / (2.0 * p.mass);
}

const char* status_reason(LineStatus s) {
    switch (s) {
        case LineStatus::accepted: return "";
        case LineStatus::not_single_valued: return "not-single-valued";
        case LineStatus::no_admissible_branch: return "no-admissible-branch";
    }
    return "";
}

std::vector<SpectrumLine> spectrum(const PhysParams& p, const Channel& ch, int n_max,
                                   bool alternate_branch) {
    if (p.kappa == 0.0)
        throw FlatSpaceError("spectrum: kappa = 0 has no z-chart; use the oracle");
    if (n_max < 1) throw std::invalid_argument("spectrum: n_max must be >= 1");

    const Dimensionless d0 = make_dimensionless(p, ch, 0.0);
    const Complex lam = d0.lam_bar;
    const int nu_ode = d0.nu_bar;

    std::vector<SpectrumLine> lines;
    lines.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        SpectrumLine line{};
        line.n = n;
        line.big_n = ch.nu_bar() + 1 + n;  // 2(j+1) + n
        line.single_valued = line.big_n % 2 == 0;
        line.eps_over_ry =
            -4.0 / (line.big_n * static_cast<double>(line.big_n)) +
            0.25 * line.big_n * static_cast<double>(line.big_n) * p.kappa_ab2();
        line.has_pipeline = false;
        line.has_existence = false;
        line.root_sign = 0;
        try {
            const QuantizedLevel lev = quantize(lam, nu_ode, n);
            const EnuReduction red = quantized_reduction(lam, nu_ode, lev, alternate_branch, true);
            line.has_pipeline = true;
            line.exponent_a = red.A;
            line.root_sign = lev.root_sign;
        } catch (const NoAdmissibleBranch&) {
            line.has_pipeline = false;
        }
        line.status = !line.single_valued ? LineStatus::not_single_valued
                      : (line.has_pipeline ? LineStatus::accepted
                                           : LineStatus::no_admissible_branch);
        lines.push_back(line);
    }
    return lines;
}

std::vector<SpectrumLine> spectrum_flat_limit(const PhysParams& p, const Channel& ch, int n_max) {
    if (n_max < 1) throw std::invalid_argument("spectrum_flat_limit: n_max must be >= 1");
    std::vector<SpectrumLine> lines;
    lines.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        SpectrumLine line{};
        line.n = n;
        line.big_n = ch.nu_bar() + 1 + n;
        line.single_valued = line.big_n % 2 == 0;
        line.eps_over_ry = -4.0 / (line.big_n * static_cast<double>(line.big_n)) +
                           0.25 * line.big_n * static_cast<double>(line.big_n) * p.kappa_ab2();
        line.status =
            line.single_valued ? LineStatus::accepted : LineStatus::not_single_valued;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace pauliheun
