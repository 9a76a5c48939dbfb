#include "tetra/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tetra/counterexample.hpp"

namespace tetra::cli {

using nlohmann::ordered_json;

namespace {

Complex parse_complex(std::string s) {
    std::erase(s, ' ');
    if (s.empty()) throw InvalidInputError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return {std::stod(s), 0.0};
    s.pop_back();
    // Split off the real part at the last +/- that is not a leading sign or
    // an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
            split = pos;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (split == std::string::npos) return {0.0, imag_of(s)};
    return {std::stod(s.substr(0, split)), imag_of(s.substr(split))};
}

std::string format_complex(Complex c) {
    std::ostringstream os;
    os << c.real();
    if (c.imag() >= 0) os << "+";
    os << c.imag() << "i";
    return os.str();
}

Poly3 parse_poly(const std::string& spec) {
    Poly3 f;
    std::istringstream is(spec);
    std::string term;
    bool any = false;
    while (std::getline(is, term, ';')) {
        if (term.find_first_not_of(" \t") == std::string::npos) continue;
        const std::size_t eq = term.find('=');
        if (eq == std::string::npos)
            throw InvalidInputError("poly term '" + term + "' lacks '='");
        int i, j, k;
        char c1, c2;
        std::istringstream idx(term.substr(0, eq));
        if (!(idx >> i >> c1 >> j >> c2 >> k) || c1 != ',' || c2 != ',')
            throw InvalidInputError("poly term '" + term + "' has a malformed index");
        f.add(i, j, k, parse_complex(term.substr(eq + 1)));
        any = true;
    }
    if (!any) throw InvalidInputError("empty polynomial spec");
    return f;
}

ordered_json complex_json(Complex c) { return {c.real(), c.imag()}; }

ordered_json matrix_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInputError("matrix JSON must be a non-empty array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw InvalidInputError("matrix JSON rows have unequal length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(i, c) = Complex(j[i][c][0].get<double>(), j[i][c][1].get<double>());
    }
    return m;
}

std::string membership_name(Membership m) {
    switch (m) {
        case Membership::Interior: return "interior";
        case Membership::ClosureBoundary: return "closure-boundary";
        case Membership::Outside: return "outside";
    }
    return "?";
}

ordered_json residual_json(const ResidualReport& r) {
    return {{"coinvariance", r.coinvariance},
            {"compression_maxdeg", r.compression_maxdeg},
            {"isometry_interior", r.isometry_interior},
            {"commutation_interior", r.commutation_interior},
            {"v1_eq_v2star_v3_interior", r.v1_eq_v2star_v3_interior},
            {"v2_norm", r.v2_norm}};
}

ordered_json certification_json(const CertificationReport& r) {
    ordered_json d = ordered_json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    return {{"verdict", to_string(r.verdict)},
            {"method", to_string(r.method)},
            {"seed", r.seed},
            {"details", d}};
}

struct Emitter {
    std::string command;
    ordered_json config = ordered_json::object();
    bool timestamp = true;
    std::string out_path;

    int emit(std::ostream& fallback, ordered_json result, int code) const {
        ordered_json j;
        j["schema"] = "tetra/1";
        j["command"] = command;
        j["config"] = config;
        j["result"] = std::move(result);
        if (timestamp) {
            const auto now = std::chrono::system_clock::now();
            j["timestamp"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw InvalidInputError("cannot open output path " + out_path);
            f << j.dump(2) << "\n";
        } else {
            fallback << j.dump(2) << "\n";
        }
        return code;
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TETRA_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// Triple from either explicit family lambdas or a JSON file with t1/t2/t3.
CommutingTriple load_triple(const std::string& file, const std::string& l1, const std::string& l2,
                            const std::string& l3) {
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) throw InvalidInputError("cannot open triple file " + file);
        nlohmann::json j;
        f >> j;
        return CommutingTriple::make(matrix_from_json(j.at("t1")), matrix_from_json(j.at("t2")),
                                     matrix_from_json(j.at("t3")));
    }
    if (l1.empty() || l2.empty() || l3.empty())
        throw InvalidInputError("provide either --file or all of --l1 --l2 --l3");
    return CommutingTriple::nilpotent_family(parse_complex(l1), parse_complex(l2),
                                             parse_complex(l3));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tetrablock contraction toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    bool no_timestamp = false;
    std::string out_path;
    app.add_option("--seed", seed, "seed for all randomized subroutines");
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field from reports");
    app.add_option("--out", out_path, "write the JSON report to this path instead of stdout");

    // member
    auto* member_cmd = app.add_subcommand("member", "classify a point against the tetrablock");
    std::string mx1, mx2, mx3;
    double member_tol = 1e-9;
    member_cmd->add_option("--x1", mx1)->required();
    member_cmd->add_option("--x2", mx2)->required();
    member_cmd->add_option("--x3", mx3)->required();
    member_cmd->add_option("--tol", member_tol);

    // boundary-sample
    auto* bs_cmd = app.add_subcommand("boundary-sample", "sample the distinguished boundary");
    int bs_n = 100;
    bs_cmd->add_option("--n", bs_n);

    // radius
    auto* radius_cmd = app.add_subcommand("radius", "inscribed polydisk radius");
    double radius_tol = 1e-6;
    radius_cmd->add_option("--tol", radius_tol);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a polynomial at a point");
    std::string ep, ex1 = "0", ex2 = "0", ex3 = "0";
    eval_cmd->add_option("--poly", ep, "terms 'i,j,k=c' separated by ';'")->required();
    eval_cmd->add_option("--x1", ex1);
    eval_cmd->add_option("--x2", ex2);
    eval_cmd->add_option("--x3", ex3);

    // supnorm
    auto* sup_cmd = app.add_subcommand("supnorm", "sampled sup of |f| on the distinguished boundary");
    std::string sp;
    int sup_n = 2000;
    sup_cmd->add_option("--poly", sp)->required();
    sup_cmd->add_option("--nsamples", sup_n);

    // knese
    auto* knese_cmd = app.add_subcommand("knese", "polydisk derivative-bound check");
    std::string kp;
    double kbound = 1.0;
    int kn = 10000;
    knese_cmd->add_option("--poly", kp)->required();
    knese_cmd->add_option("--bound", kbound);
    knese_cmd->add_option("--nsamples", kn);

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "certify a nilpotent-family triple");
    std::string cl1, cl2, cl3;
    double cert_r = 0.0, cert_slack = 5e-2;
    bool cert_sampling = false;
    int cert_npolys = 200, cert_degree = 4, cert_nsamples = 400;
    cert_cmd->add_option("--l1", cl1)->required();
    cert_cmd->add_option("--l2", cl2)->required();
    cert_cmd->add_option("--l3", cl3)->required();
    cert_cmd->add_option("--r", cert_r, "polydisk radius; default: computed");
    cert_cmd->add_flag("--sampling", cert_sampling, "also run the statistical spot-check");
    cert_cmd->add_option("--npolys", cert_npolys);
    cert_cmd->add_option("--degree", cert_degree);
    cert_cmd->add_option("--nsamples", cert_nsamples);
    cert_cmd->add_option("--slack", cert_slack);

    // fundamental / commutator share triple inputs
    std::string fl1, fl2, fl3, ffile;
    auto* fund_cmd = app.add_subcommand("fundamental", "fundamental operators of a triple");
    fund_cmd->add_option("--l1", fl1);
    fund_cmd->add_option("--l2", fl2);
    fund_cmd->add_option("--l3", fl3);
    fund_cmd->add_option("--file", ffile, "JSON file with t1/t2/t3 matrices");

    std::string col1, col2, col3, cofile;
    auto* comm_cmd = app.add_subcommand("commutator", "commutator of the fundamental operators");
    comm_cmd->add_option("--l1", col1);
    comm_cmd->add_option("--l2", col2);
    comm_cmd->add_option("--l3", col3);
    comm_cmd->add_option("--file", cofile);

    // dilate
    auto* dil_cmd = app.add_subcommand("dilate", "build a truncated dilation tuple");
    std::string dl1, dl2, dl3, dfile, dxi;
    int d_depth = 8, d_slot = 1, d_n = 2;
    bool d_extended = false;
    dil_cmd->add_option("--l1", dl1);
    dil_cmd->add_option("--l2", dl2);
    dil_cmd->add_option("--l3", dl3);
    dil_cmd->add_option("--file", dfile);
    dil_cmd->add_option("--depth", d_depth);
    dil_cmd->add_option("--slot", d_slot);
    dil_cmd->add_flag("--extended", d_extended, "use the z^n third symbol");
    dil_cmd->add_option("--n", d_n, "degree of the extended third symbol");
    dil_cmd->add_option("--xi", dxi, "middle coefficient Xi as a scalar multiple of I");

    // verify-dilation
    auto* vd_cmd = app.add_subcommand("verify-dilation", "residual report for a truncated dilation");
    std::string vl1, vl2, vl3, vfile;
    int v_depth = 8, v_slot = 1, v_interior = 5, v_maxdeg = 3;
    vd_cmd->add_option("--l1", vl1);
    vd_cmd->add_option("--l2", vl2);
    vd_cmd->add_option("--l3", vl3);
    vd_cmd->add_option("--file", vfile);
    vd_cmd->add_option("--depth", v_depth);
    vd_cmd->add_option("--slot", v_slot);
    vd_cmd->add_option("--interior-depth", v_interior);
    vd_cmd->add_option("--maxdeg", v_maxdeg);

    // counterexample
    auto* ce_cmd = app.add_subcommand("counterexample", "full non-commuting-family pipeline");
    std::string cel1, cel2, cel3;
    double ce_margin = 1e-3;
    bool ce_seeded = false;
    ce_cmd->add_option("--l1", cel1);
    ce_cmd->add_option("--l2", cel2);
    ce_cmd->add_option("--l3", cel3);
    ce_cmd->add_flag("--seeded", ce_seeded, "draw lambda from the admissible region");
    ce_cmd->add_option("--margin", ce_margin);

    // batch
    auto* batch_cmd = app.add_subcommand("batch", "seeded batch of counterexample records");
    int batch_count = 10;
    double batch_margin = 1e-3;
    batch_cmd->add_option("--count", batch_count);
    batch_cmd->add_option("--margin", batch_margin);

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n" << app.help();
        return 2;
    }

    Emitter em;
    em.timestamp = !no_timestamp;
    em.out_path = out_path;
    em.config["seed"] = seed;

    try {
        if (member_cmd->parsed()) {
            em.command = "member";
            em.config["x1"] = mx1;
            em.config["x2"] = mx2;
            em.config["x3"] = mx3;
            em.config["tol"] = member_tol;
            const TetraPoint p{parse_complex(mx1), parse_complex(mx2), parse_complex(mx3)};
            const MembershipVerdict v = member(p, member_tol);
            ordered_json res{{"status", membership_name(v.status)}, {"margin", v.margin}};
            res["on_distinguished_boundary"] = on_distinguished_boundary(p, std::max(member_tol, 1e-10));
            if (v.witness) res["witness"] = matrix_json(*v.witness);
            return em.emit(out, res, 0);
        }
        if (bs_cmd->parsed()) {
            em.command = "boundary-sample";
            em.config["n"] = bs_n;
            ordered_json pts = ordered_json::array();
            for (const TetraPoint& p : sample_distinguished_boundary(bs_n, seed))
                pts.push_back({complex_json(p.x1), complex_json(p.x2), complex_json(p.x3)});
            return em.emit(out, {{"points", pts}}, 0);
        }
        if (radius_cmd->parsed()) {
            em.command = "radius";
            em.config["tol"] = radius_tol;
            return em.emit(out, {{"radius", inscribed_polydisk_radius(radius_tol)}}, 0);
        }
        if (eval_cmd->parsed()) {
            em.command = "eval";
            em.config["poly"] = ep;
            em.config["x1"] = ex1;
            em.config["x2"] = ex2;
            em.config["x3"] = ex3;
            const Poly3 f = parse_poly(ep);
            const TetraPoint p{parse_complex(ex1), parse_complex(ex2), parse_complex(ex3)};
            const auto g = gradient(f, p);
            return em.emit(out,
                           {{"value", complex_json(eval_point(f, p))},
                            {"gradient", {complex_json(g[0]), complex_json(g[1]), complex_json(g[2])}}},
                           0);
        }
        if (sup_cmd->parsed()) {
            em.command = "supnorm";
            em.config["poly"] = sp;
            em.config["nsamples"] = sup_n;
            return em.emit(out, {{"sup_lower_estimate", sup_norm_bE(parse_poly(sp), sup_n, seed)}}, 0);
        }
        if (knese_cmd->parsed()) {
            em.command = "knese";
            em.config["poly"] = kp;
            em.config["bound"] = kbound;
            em.config["nsamples"] = kn;
            const KneseReport rep = knese_check(parse_poly(kp), kbound, kn, seed);
            ordered_json res{{"max_violation", rep.max_violation},
                             {"worst_point",
                              {complex_json(rep.worst_point[0]), complex_json(rep.worst_point[1]),
                               complex_json(rep.worst_point[2])}},
                             {"violation", rep.violation}};
            return em.emit(out, res, rep.violation ? 1 : 0);
        }
        if (cert_cmd->parsed()) {
            em.command = "certify";
            em.config["l1"] = cl1;
            em.config["l2"] = cl2;
            em.config["l3"] = cl3;
            em.config["sampling"] = cert_sampling;
            em.config["npolys"] = cert_npolys;
            em.config["degree"] = cert_degree;
            em.config["nsamples"] = cert_nsamples;
            em.config["slack"] = cert_slack;
            const double r = cert_r > 0.0 ? cert_r : inscribed_polydisk_radius_cached();
            em.config["r"] = r;
            const Complex l1 = parse_complex(cl1), l2 = parse_complex(cl2), l3 = parse_complex(cl3);
            const CertificationReport rep = certify_nilpotent_family(l1, l2, l3, r);
            ordered_json res{{"schwarz_path", certification_json(rep)}};
            bool ok = rep.verdict == Verdict::Certified;
            if (cert_sampling) {
                const CertificationReport srep =
                    certify_sampling(CommutingTriple::nilpotent_family(l1, l2, l3), cert_npolys,
                                     cert_degree, cert_nsamples, seed, cert_slack);
                res["sampling"] = certification_json(srep);
                ok = ok && srep.verdict == Verdict::StatisticalPass;
            }
            return em.emit(out, res, ok ? 0 : 1);
        }
        if (fund_cmd->parsed()) {
            em.command = "fundamental";
            em.config["l1"] = fl1;
            em.config["l2"] = fl2;
            em.config["l3"] = fl3;
            em.config["file"] = ffile;
            const FundamentalPair p = fundamental_operators(load_triple(ffile, fl1, fl2, fl3));
            return em.emit(out,
                           {{"f1", matrix_json(p.f1)},
                            {"f2", matrix_json(p.f2)},
                            {"defect_projector", matrix_json(p.defect_projector)},
                            {"solve_residual", p.solve_residual}},
                           0);
        }
        if (comm_cmd->parsed()) {
            em.command = "commutator";
            em.config["l1"] = col1;
            em.config["l2"] = col2;
            em.config["l3"] = col3;
            em.config["file"] = cofile;
            const CommutingTriple t = load_triple(cofile, col1, col2, col3);
            const CommutatorResult c = commutator(fundamental_operators(t));
            ordered_json res{{"matrix", matrix_json(c.matrix)}, {"commutator_norm", c.norm}};
            if (cofile.empty())
                res["closed_form_norm"] = family_commutator_norm(
                    parse_complex(col1), parse_complex(col2), parse_complex(col3));
            return em.emit(out, res, 0);
        }
        if (dil_cmd->parsed()) {
            em.command = "dilate";
            em.config["l1"] = dl1;
            em.config["l2"] = dl2;
            em.config["l3"] = dl3;
            em.config["file"] = dfile;
            em.config["depth"] = d_depth;
            em.config["slot"] = d_slot;
            em.config["extended"] = d_extended;
            em.config["n"] = d_n;
            em.config["xi"] = dxi;
            const CommutingTriple t = load_triple(dfile, dl1, dl2, dl3);
            const FundamentalPair p = fundamental_operators(t);
            TruncatedDilation d;
            if (d_extended) {
                ComplexMatrix xi = ComplexMatrix::Zero(t.dim(), t.dim());
                if (!dxi.empty())
                    xi = parse_complex(dxi) * p.defect_projector;
                d = build_extended(t, p, xi, d_depth,
                                   d_n == 2 ? ExtendedForm::Square : ExtendedForm::GeneralN, d_n,
                                   d_slot);
            } else {
                d = build_theoremB(t, p, d_depth, d_slot);
            }
            ordered_json res{{"depth", d.depth},
                             {"h_dim", d.h_dim},
                             {"defect_dim", d.defect_dim},
                             {"slot", d.slot},
                             {"v1", matrix_json(d.v1)},
                             {"v2", matrix_json(d.v2)},
                             {"v3", matrix_json(d.v3)}};
            if (d_extended) res["xi_side_conditions_checked"] = false;
            return em.emit(out, res, 0);
        }
        if (vd_cmd->parsed()) {
            em.command = "verify-dilation";
            em.config["l1"] = vl1;
            em.config["l2"] = vl2;
            em.config["l3"] = vl3;
            em.config["file"] = vfile;
            em.config["depth"] = v_depth;
            em.config["slot"] = v_slot;
            em.config["interior_depth"] = v_interior;
            em.config["maxdeg"] = v_maxdeg;
            const CommutingTriple t = load_triple(vfile, vl1, vl2, vl3);
            const FundamentalPair p = fundamental_operators(t);
            const TruncatedDilation d = build_theoremB(t, p, v_depth, v_slot);
            return em.emit(out, residual_json(full_residual_report(d, t, v_maxdeg, v_interior)), 0);
        }
        if (ce_cmd->parsed()) {
            em.command = "counterexample";
            em.config["l1"] = cel1;
            em.config["l2"] = cel2;
            em.config["l3"] = cel3;
            em.config["seeded"] = ce_seeded;
            em.config["margin"] = ce_margin;
            const CounterexampleRecord rec =
                ce_seeded ? generate_seeded(seed, ce_margin)
                          : generate(parse_complex(cel1), parse_complex(cel2), parse_complex(cel3),
                                     ce_margin);
            const CounterexampleSummary sum = certify_report(rec);
            err << sum.text;
            return em.emit(out, ordered_json::parse(sum.json), 0);
        }
        if (batch_cmd->parsed()) {
            em.command = "batch";
            em.config["count"] = batch_count;
            em.config["margin"] = batch_margin;
            ordered_json recs = ordered_json::array();
            for (int i = 0; i < batch_count; ++i) {
                const CounterexampleRecord rec =
                    generate_seeded(derive_seed(seed, static_cast<std::uint64_t>(i)), batch_margin);
                recs.push_back({{"lambda",
                                 {complex_json(rec.lambda[0]), complex_json(rec.lambda[1]),
                                  complex_json(rec.lambda[2])}},
                                {"commutator_norm", rec.commutator_norm},
                                {"theoremB_commutation_interior", rec.theoremB_commutation_interior},
                                {"verdict", to_string(rec.certification.verdict)}});
            }
            return em.emit(out, {{"records", recs}}, 0);
        }
    } catch (const InternalInconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace tetra::cli
