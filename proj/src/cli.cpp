#include "pauliheun/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pauliheun/enu_core.hpp"
#include "pauliheun/errors.hpp"
#include "pauliheun/fd_oracle.hpp"
#include "pauliheun/geometry.hpp"
#include "pauliheun/heun_poly.hpp"
#include "pauliheun/verify.hpp"

namespace pauliheun::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string fmt_num(double v) {
    if (v == 0.0) return "0";  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json jc(Complex v) {
    const double re = v.real() == 0.0 ? 0.0 : v.real();  // canonicalize -0
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    return json::array({re, im});
}

// Half-integer j from the literal "p/2" form; no float parsing.
int parse_two_j(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash + 1) != "2")
        throw UsageError("--j expects the literal form \"1/2\", \"3/2\", ... (or use --two-j)");
    int num = 0;
    try {
        size_t used = 0;
        num = std::stoi(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("tail");
    } catch (const std::exception&) {
        throw UsageError("--j: cannot parse numerator in '" + s + "'");
    }
    if (num < 1 || num % 2 == 0)
        throw UsageError("--j: numerator must be a positive odd integer");
    return num;
}

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("cannot parse complex value '" + s + "' (expected re or re,im)");
    }
}

int parse_parity(const std::string& s) {
    if (s == "+1" || s == "1") return +1;
    if (s == "-1") return -1;
    throw UsageError("--parity must be +1 or -1");
}

// Options shared by the physical-input commands.
struct PhysicalOpts {
    std::optional<double> kappa_ab2;
    std::string j_str;
    int two_j = 0;
    std::string parity_str = "+1";
    bool alternate = false;
};

void add_physical_opts(CLI::App* cmd, PhysicalOpts& o, bool with_alternate = true) {
    cmd->add_option("--kappa-ab2", o.kappa_ab2, "curvature in units of 1/a_B^2");
    cmd->add_option("--j", o.j_str, "total angular momentum as a literal half-integer, e.g. 1/2");
    cmd->add_option("--two-j", o.two_j, "2j as an integer (alternative to --j)");
    cmd->add_option("--parity", o.parity_str, "parity quantum number, +1 or -1");
    if (with_alternate)
        cmd->add_flag("--alternate-branch", o.alternate,
                      "use the mirrored gauge branch (must reproduce the same spectrum)");
}

Channel channel_from(const PhysicalOpts& o) {
    int two_j = o.two_j;
    if (!o.j_str.empty()) {
        if (two_j != 0) throw UsageError("give either --j or --two-j, not both");
        two_j = parse_two_j(o.j_str);
    }
    if (two_j == 0) throw UsageError("missing --j (or --two-j)");
    try {
        return Channel::make(two_j, parse_parity(o.parity_str));
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

PhysParams params_from(const PhysicalOpts& o) {
    if (!o.kappa_ab2) throw UsageError("missing --kappa-ab2");
    return PhysParams::from_kappa_ab2(*o.kappa_ab2);
}

void warn_if_strained(std::ostream& err, const PhysParams& p, int n, double eps_over_ry) {
    const double eps = eps_over_ry * p.ry;
    if (std::abs(eps) > 0.1 * p.mass)
        err << "warning: n=" << n << ": |eps| = " << fmt_num(std::abs(eps) / p.mass)
            << " m exceeds 0.1 m; non-relativistic assumption strained\n";
}

void deliver(const std::string& payload, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << payload;
        return;
    }
    std::string path = output_path;
    const char* dir = std::getenv("PAULIHEUN_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << payload;
}

// ---------------------------------------------------------------- reduce

json reduction_to_json(const EnuReduction& red, const HeunParams& hp, const Dimensionless& d) {
    json j;
    j["a"] = jc(red.branch.a);
    j["b"] = jc(red.branch.b);
    j["c"] = jc(red.branch.c);
    j["g0"] = jc(red.branch.g0);
    j["g1"] = jc(red.branch.g1);
    j["A"] = jc(red.A);
    j["B"] = jc(red.B);
    j["C"] = jc(red.C);
    j["gamma"] = jc(hp.gamma);
    j["delta"] = jc(hp.delta);
    j["epsH"] = jc(hp.epsH);
    j["alpha"] = jc(hp.alpha);
    j["beta"] = jc(hp.beta);
    j["q"] = jc(hp.q);
    j["inputs"] = {{"eps_bar", jc(d.eps_bar)}, {"lam_bar", jc(d.lam_bar)}, {"nu_bar", d.nu_bar}};
    j["branch"] = {{"label", static_cast<int>(red.branch.label)},
                   {"gauge", red.gauge == GaugeSign::lower ? "lower" : "upper"},
                   {"root", red.branch.root == RootSign::minus ? "minus" : "plus"}};
    return j;
}

int cmd_reduce(const PhysicalOpts& phys, const std::string& eps_bar_str,
               const std::string& lam_bar_str, std::optional<int> nu_bar,
               std::optional<double> eps_over_ry, std::optional<int> n_level,
               const std::string& output, std::ostream& out, std::ostream& err) {
    Dimensionless d;
    EnuReduction red;
    const bool dimensionless_mode = !eps_bar_str.empty() || !lam_bar_str.empty() || nu_bar;
    if (dimensionless_mode) {
        if (eps_bar_str.empty() || lam_bar_str.empty() || !nu_bar)
            throw UsageError("dimensionless mode needs --eps-bar, --lam-bar and --nu-bar together");
        d = Dimensionless{parse_complex(eps_bar_str), parse_complex(lam_bar_str), *nu_bar};
        red = reduce(d, default_branch_choice(d.nu_bar, phys.alternate));
    } else {
        const PhysParams p = params_from(phys);
        const Channel ch = channel_from(phys);
        if (eps_over_ry && n_level) throw UsageError("give either --eps-over-ry or --n, not both");
        if (eps_over_ry) {
            warn_if_strained(err, p, 0, *eps_over_ry);
            d = make_dimensionless(p, ch, *eps_over_ry * p.ry);
            red = reduce(d, default_branch_choice(d.nu_bar, phys.alternate));
        } else if (n_level) {
            const Dimensionless d0 = make_dimensionless(p, ch, 0.0);
            const QuantizedLevel lev = quantize(d0.lam_bar, d0.nu_bar, *n_level);
            d = Dimensionless{lev.eps_bar, d0.lam_bar, d0.nu_bar};
            red = quantized_reduction(d0.lam_bar, d0.nu_bar, lev, phys.alternate, true);
            warn_if_strained(err, p, *n_level, (lev.eps_bar * Complex{p.kappa_ab2(), 0.0}).real());
        } else {
            throw UsageError("physical mode needs --eps-over-ry or --n");
        }
    }
    const HeunParams hp = heun_params(red, d);
    deliver(reduction_to_json(red, hp, d).dump(2) + "\n", output, out);
    return 0;
}

// --------------------------------------------------------------- spectrum

std::string spectrum_csv(const std::vector<SpectrumLine>& lines) {
    // The determinant belongs to candidate (single-valued) rows in the
    // table; the JSON form carries it for every row.  An imaginary column
    // appears only if some candidate determinant actually has one.
    auto tabulated = [](const SpectrumLine& l) { return l.has_existence && l.single_valued; };
    bool det_has_imag = false;
    for (const auto& l : lines)
        if (tabulated(l) &&
            std::abs(l.determinant.imag()) > 1e-9 * std::max(1.0, std::abs(l.determinant.real())))
            det_has_imag = true;

    std::ostringstream os;
    os << "n,N,n_principal,accepted,eps_over_ry,det_n" << (det_has_imag ? ",det_n_im" : "")
       << ",poly_exists\n";
    for (const auto& l : lines) {
        os << l.n << "," << l.big_n << ",";
        if (l.single_valued) os << l.big_n / 2;
        os << ",";
        os << (l.status == LineStatus::accepted ? "true" : status_reason(l.status));
        os << "," << fmt_num(l.eps_over_ry) << ",";
        if (tabulated(l)) os << fmt_num(l.determinant.real());
        if (det_has_imag) {
            os << ",";
            if (tabulated(l)) os << fmt_num(l.determinant.imag());
        }
        os << ",";
        if (tabulated(l)) os << (l.polynomial_exists ? "true" : "false");
        os << "\n";
    }
    return os.str();
}

json spectrum_json(const PhysParams& p, const Channel& ch, bool alternate,
                   const std::vector<SpectrumLine>& lines) {
    json j;
    j["kappa_ab2"] = p.kappa_ab2();
    j["two_j"] = ch.two_j;
    j["parity"] = ch.parity;
    j["alternate_branch"] = alternate;
    json rows = json::array();
    for (const auto& l : lines) {
        json row;
        row["n"] = l.n;
        row["N"] = l.big_n;
        if (l.single_valued)
            row["n_principal"] = l.big_n / 2;
        else
            row["n_principal"] = nullptr;
        row["accepted"] = l.status == LineStatus::accepted;
        row["reason"] = status_reason(l.status);
        row["eps_over_ry"] = l.eps_over_ry;
        if (l.has_existence) {
            row["det"] = jc(l.determinant);
            row["poly_exists"] = l.polynomial_exists;
        } else {
            row["det"] = nullptr;
            row["poly_exists"] = nullptr;
        }
        if (l.has_pipeline) {
            row["exponent_A"] = jc(l.exponent_a);
            row["root_sign"] = l.root_sign;
        }
        rows.push_back(row);
    }
    j["lines"] = rows;
    return j;
}

int cmd_spectrum(const PhysicalOpts& phys, int n_max, const std::string& format,
                 const std::string& output, std::ostream& out, std::ostream& err) {
    const PhysParams p = params_from(phys);
    if (p.kappa == 0.0)
        throw FlatSpaceError("spectrum: kappa = 0 is flat space; use the `oracle` command");
    const Channel ch = channel_from(phys);
    const auto lines = spectrum_with_existence(p, ch, n_max, phys.alternate);
    for (const auto& l : lines)
        if (l.status == LineStatus::accepted) warn_if_strained(err, p, l.n, l.eps_over_ry);
    if (format == "json")
        deliver(spectrum_json(p, ch, phys.alternate, lines).dump(2) + "\n", output, out);
    else
        deliver(spectrum_csv(lines), output, out);
    return 0;
}

// -------------------------------------------------------------- check-poly

json record_to_json(const DiagonalRecord& rec) {
    json j;
    j["derived_diagonal"] = rec.derived_diagonal;
    j["alternative_diagonal"] = rec.alternative_diagonal;
    j["alternative_matches_derivation"] = rec.alternative_matches;
    j["off_diagonals_match"] = rec.off_diagonals_match;
    j["two_by_two"] = {{"consistent_with", rec.two_by_two_consistent},
                       {"nu_bar", rec.nu_bar},
                       {"det_derived", rec.det_derived},
                       {"det_alternative", rec.det_alternative},
                       {"det_closed_form", rec.det_closed_form}};
    return j;
}

int cmd_check_poly(const PhysicalOpts& phys, std::optional<int> n_single, std::optional<int> n_max,
                   const std::string& output, std::ostream& out, std::ostream&) {
    const PhysParams p = params_from(phys);
    if (p.kappa == 0.0)
        throw FlatSpaceError("check-poly: kappa = 0 is flat space; use the `oracle` command");
    const Channel ch = channel_from(phys);
    if (!n_single && !n_max) throw UsageError("check-poly needs --n or --n-max");

    json j;
    j["kappa_ab2"] = p.kappa_ab2();
    j["two_j"] = ch.two_j;
    j["parity"] = ch.parity;
    j["record"] = record_to_json(derive_diagonal_record(ch.nu_bar()));
    json checks = json::array();
    const int lo = n_single ? *n_single : 1;
    const int hi = n_single ? *n_single : *n_max;
    for (int n = lo; n <= hi; ++n) {
        json c;
        c["n"] = n;
        try {
            const ExistenceResult res = existence_check(p, ch, n, phys.alternate);
            c["N"] = res.big_n;
            c["det"] = jc(res.determinant);
            c["exists"] = res.exists;
            c["residual"] = res.residual;
            if (n == 1) c["closed_form"] = delta1_closed_form(ch.nu_bar());
            if (res.null_vector) {
                json nv = json::array();
                for (const auto& v : *res.null_vector) nv.push_back(jc(v));
                c["null_vector"] = nv;
            }
        } catch (const NoAdmissibleBranch&) {
            c["error"] = "no-admissible-branch";
        }
        checks.push_back(c);
    }
    j["checks"] = checks;
    deliver(j.dump(2) + "\n", output, out);
    return 0;
}

// ----------------------------------------------------------------- oracle

int cmd_oracle(const PhysicalOpts& phys, double h, double r_max, int levels,
               const std::string& format, const std::string& output, std::ostream& out,
               std::ostream&) {
    const PhysParams p = params_from(phys);
    const Channel ch = channel_from(phys);
    const EigenReport rep = converge_levels(p, ch, GridSpec{h, r_max}, levels, 2);
    if (format == "json") {
        json j;
        j["kappa_ab2"] = p.kappa_ab2();
        j["two_j"] = ch.two_j;
        j["parity"] = ch.parity;
        json rows = json::array();
        for (size_t k = 0; k < rep.eps_over_ry.size(); ++k)
            rows.push_back({{"level", k},
                            {"eps_over_ry", rep.eps_over_ry[k]},
                            {"h", rep.grid_h},
                            {"richardson", rep.richardson_ry[k]},
                            {"err_est", rep.err_est[k]},
                            {"observed_order", rep.observed_order[k]}});
        j["levels"] = rows;
        deliver(j.dump(2) + "\n", output, out);
        return 0;
    }
    std::ostringstream os;
    os << "level,eps_over_ry,h,richardson,err_est\n";
    for (size_t k = 0; k < rep.eps_over_ry.size(); ++k)
        os << k << "," << fmt_num(rep.eps_over_ry[k]) << "," << fmt_num(rep.grid_h) << ","
           << fmt_num(rep.richardson_ry[k]) << "," << fmt_num(rep.err_est[k]) << "\n";
    deliver(os.str(), output, out);
    return 0;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const PhysicalOpts& phys, double h, double r_max, int levels,
                std::optional<int> n_max_opt, const std::string& format,
                const std::string& output, std::ostream& out, std::ostream&) {
    const PhysParams p = params_from(phys);
    const Channel ch = channel_from(phys);
    const int n_max = n_max_opt ? *n_max_opt : std::max(1, 2 * levels - 1);
    const auto lines = p.kappa == 0.0 ? spectrum_flat_limit(p, ch, n_max)
                                      : spectrum_with_existence(p, ch, n_max, phys.alternate);
    const EigenReport rep = converge_levels(p, ch, GridSpec{h, r_max}, levels, 2);
    const ComparisonTable table = compare(rep, lines, p, ch);

    if (format == "json") {
        json j;
        j["kappa_ab2"] = p.kappa_ab2();
        j["two_j"] = ch.two_j;
        j["parity"] = ch.parity;
        if (table.has_threshold) j["continuum_threshold_ry"] = table.threshold_ry;
        json rows = json::array();
        for (const auto& r : table.rows) {
            json row;
            row["n_bar"] = r.n_principal;
            row["oracle_eps_over_ry"] = r.has_oracle ? json(r.oracle_ry) : json(nullptr);
            row["candidate_eps_over_ry"] = r.has_candidate ? json(r.candidate_ry) : json(nullptr);
            row["schrodinger_eps_over_ry"] = r.schrodinger_ry;
            row["oracle_minus_candidate"] =
                r.has_oracle && r.has_candidate ? json(r.oracle_minus_candidate) : json(nullptr);
            row["oracle_minus_schrodinger"] =
                r.has_oracle ? json(r.oracle_minus_schrodinger) : json(nullptr);
            row["geometric_shift"] = r.geometric_shift;
            rows.push_back(row);
        }
        j["rows"] = rows;
        deliver(j.dump(2) + "\n", output, out);
        return 0;
    }

    std::ostringstream os;
    os << "n_bar,oracle_eps_over_ry,candidate_eps_over_ry,schrodinger_eps_over_ry,"
          "oracle_minus_candidate,oracle_minus_schrodinger,geometric_shift\n";
    for (const auto& r : table.rows) {
        os << r.n_principal << ",";
        if (r.has_oracle) os << fmt_num(r.oracle_ry);
        os << ",";
        if (r.has_candidate) os << fmt_num(r.candidate_ry);
        os << "," << fmt_num(r.schrodinger_ry) << ",";
        if (r.has_oracle && r.has_candidate) os << fmt_num(r.oracle_minus_candidate);
        os << ",";
        if (r.has_oracle) os << fmt_num(r.oracle_minus_schrodinger);
        os << "," << fmt_num(r.geometric_shift) << "\n";
    }
    deliver(os.str(), output, out);
    return 0;
}

// ----------------------------------------------------------------- verify

int cmd_verify(std::ostream& out) {
    const auto results = verify::run_all_checks();
    int failures = 0;
    for (const auto& r : results) {
        out << (r.pass ? "ok   " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << "\n";
        if (!r.pass) ++failures;
    }
    out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
        << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"curved-space Pauli-Coulomb reduction, candidate spectrum, polynomial "
                 "obstruction, and finite-difference adjudication"};
    app.require_subcommand(1);

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "gauge data and Heun parameters as JSON");
    PhysicalOpts reduce_phys;
    std::string eps_bar_str, lam_bar_str;
    std::optional<int> nu_bar;
    std::optional<double> eps_over_ry;
    std::optional<int> reduce_n;
    std::string reduce_output;
    add_physical_opts(reduce_cmd, reduce_phys);
    reduce_cmd->add_option("--eps-bar", eps_bar_str, "dimensionless energy, re or re,im");
    reduce_cmd->add_option("--lam-bar", lam_bar_str, "dimensionless coupling, re or re,im");
    reduce_cmd->add_option("--nu-bar", nu_bar, "signed nu (parity * (2j+1))");
    reduce_cmd->add_option("--eps-over-ry", eps_over_ry, "energy in Rydberg units");
    reduce_cmd->add_option("--n", reduce_n, "quantized level degree n");
    reduce_cmd->add_option("--output", reduce_output, "write to file instead of stdout");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "candidate levels as CSV/JSON");
    PhysicalOpts spec_phys;
    int spec_n_max = 5;
    std::string spec_format = "csv", spec_output;
    add_physical_opts(spectrum_cmd, spec_phys);
    spectrum_cmd->add_option("--n-max", spec_n_max, "largest polynomial degree to list");
    spectrum_cmd->add_option("--format", spec_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    spectrum_cmd->add_option("--output", spec_output, "write to file instead of stdout");

    // check-poly
    auto* check_cmd = app.add_subcommand("check-poly", "obstruction determinants as JSON");
    PhysicalOpts check_phys;
    std::optional<int> check_n, check_n_max;
    std::string check_output;
    add_physical_opts(check_cmd, check_phys);
    check_cmd->add_option("--n", check_n, "single degree to check");
    check_cmd->add_option("--n-max", check_n_max, "sweep degrees 1..n-max");
    check_cmd->add_option("--output", check_output, "write to file instead of stdout");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference levels as CSV/JSON");
    PhysicalOpts oracle_phys;
    double oracle_h = 0.04, oracle_rmax = 0.0;
    int oracle_levels = 3;
    std::string oracle_format = "csv", oracle_output;
    add_physical_opts(oracle_cmd, oracle_phys, /*with_alternate=*/false);
    oracle_cmd->add_option("--grid-h", oracle_h, "base grid spacing in a_B (two halvings follow)");
    oracle_cmd->add_option("--r-max", oracle_rmax, "right Dirichlet end in a_B (0 = default)");
    oracle_cmd->add_option("--levels", oracle_levels, "number of levels");
    oracle_cmd->add_option("--format", oracle_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    oracle_cmd->add_option("--output", oracle_output, "write to file instead of stdout");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "oracle vs candidate vs baseline");
    PhysicalOpts compare_phys;
    double compare_h = 0.04, compare_rmax = 0.0;
    int compare_levels = 3;
    std::optional<int> compare_n_max;
    std::string compare_format = "csv", compare_output;
    add_physical_opts(compare_cmd, compare_phys);
    compare_cmd->add_option("--grid-h", compare_h, "base grid spacing in a_B");
    compare_cmd->add_option("--r-max", compare_rmax, "right Dirichlet end in a_B (0 = default)");
    compare_cmd->add_option("--levels", compare_levels, "number of oracle levels");
    compare_cmd->add_option("--n-max", compare_n_max, "largest candidate degree");
    compare_cmd->add_option("--format", compare_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    compare_cmd->add_option("--output", compare_output, "write to file instead of stdout");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run all property suites");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    try {
        if (reduce_cmd->parsed())
            return cmd_reduce(reduce_phys, eps_bar_str, lam_bar_str, nu_bar, eps_over_ry, reduce_n,
                              reduce_output, out, err);
        if (spectrum_cmd->parsed())
            return cmd_spectrum(spec_phys, spec_n_max, spec_format, spec_output, out, err);
        if (check_cmd->parsed())
            return cmd_check_poly(check_phys, check_n, check_n_max, check_output, out, err);
        if (oracle_cmd->parsed())
            return cmd_oracle(oracle_phys, oracle_h, oracle_rmax, oracle_levels, oracle_format,
                              oracle_output, out, err);
        if (compare_cmd->parsed())
            return cmd_compare(compare_phys, compare_h, compare_rmax, compare_levels,
                               compare_n_max, compare_format, compare_output, out, err);
        if (verify_cmd->parsed()) return cmd_verify(out);
        err << "usage error: no command\n";
        return 64;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace pauliheun::cli
