// File-driven front-end over the bkit C API: metric construction, dual
// metrics, reciprocal bases, the 2D angle solver, cell volumes, and the
// randomized verification harness.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "bkit.h"

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
    std::string code;
    InputError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

void require_status(bkit_status st, const std::string& context) {
    if (st != BKIT_OK)
        throw InputError(bkit_status_name(st), context + " failed");
}

struct Geometry {
    int n = 0;
    std::vector<double> lengths;
    std::vector<double> angles;  // radians, order 12, 13, 23
};

struct Options {
    bool json = false;
    bool radians = false;  // file angles already in radians
    double tol = 1e-9;
};

double to_radians(double a, const Options& opt) { return opt.radians ? a : a * kPi / 180.0; }
double from_radians(double a, const Options& opt) { return opt.radians ? a : a * 180.0 / kPi; }

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("FileNotFound", "cannot open input file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError("ParseError", std::string("invalid JSON: ") + e.what());
    }
    return doc;
}

int get_dimension(const json& doc) {
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw InputError("MissingField", "input needs an integer \"dimension\"");
    const int n = doc["dimension"].get<int>();
    if (n != 2 && n != 3) throw InputError("BadDimension", "dimension must be 2 or 3");
    return n;
}

// angle keys follow the subscript convention: "12", "13", "23"
std::vector<double> parse_angles(int n, const json& angles, const Options& opt) {
    const std::vector<std::string> keys =
        n == 2 ? std::vector<std::string>{"12"} : std::vector<std::string>{"12", "13", "23"};
    std::vector<double> out;
    for (const auto& k : keys) {
        if (!angles.contains(k))
            throw InputError("MissingField", "geometry angles need key \"" + k + "\"");
        out.push_back(to_radians(angles[k].get<double>(), opt));
    }
    return out;
}

Geometry parse_geometry(int n, const json& g, const Options& opt) {
    if (!g.contains("lengths") || !g.contains("angles"))
        throw InputError("MissingField", "geometry needs \"lengths\" and \"angles\"");
    Geometry out;
    out.n = n;
    out.lengths = g["lengths"].get<std::vector<double>>();
    if (static_cast<int>(out.lengths.size()) != n)
        throw InputError("BadShape", "geometry lengths must have " + std::to_string(n) +
                                         " entries");
    out.angles = parse_angles(n, g["angles"], opt);
    return out;
}

std::vector<double> parse_matrix(int n, const json& m, const std::string& name) {
    if (!m.is_array() || static_cast<int>(m.size()) != n)
        throw InputError("BadShape", name + " must be a " + std::to_string(n) + "x" +
                                         std::to_string(n) + " matrix");
    std::vector<double> flat;
    for (const auto& row : m) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("BadShape", name + " row has wrong length");
        for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return flat;
}

json matrix_to_json(int n, const std::vector<double>& flat) {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(flat[i * n + j]);
        rows.push_back(row);
    }
    return rows;
}

json angles_to_json(int n, const std::vector<double>& angles, const Options& opt) {
    json out = json::object();
    const std::vector<std::string> keys =
        n == 2 ? std::vector<std::string>{"12"} : std::vector<std::string>{"12", "13", "23"};
    for (std::size_t k = 0; k < keys.size(); ++k)
        out[keys[k]] = from_radians(angles[k], opt);
    return out;
}

void print_matrix(const std::string& label, int n, const std::vector<double>& flat) {
    std::printf("%s:\n", label.c_str());
    for (int i = 0; i < n; ++i) {
        std::printf(" ");
        for (int j = 0; j < n; ++j) std::printf(" % .12g", flat[i * n + j]);
        std::printf("\n");
    }
}

void print_geometry(const std::string& label, const Geometry& g, const Options& opt) {
    std::printf("%s lengths:", label.c_str());
    for (int i = 0; i < g.n; ++i) std::printf(" %.12g", g.lengths[i]);
    std::printf("\n%s angles (%s):", label.c_str(), opt.radians ? "rad" : "deg");
    for (double a : g.angles) std::printf(" %.12g", from_radians(a, opt));
    std::printf("\n");
}

void emit(const json& doc, const Options& opt) {
    if (opt.json) std::printf("%s\n", doc.dump(2).c_str());
}

// metric + (optional) basis factor
int cmd_metric(const std::string& path, const Options& opt, bool factor) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    if (!doc.contains("geometry"))
        throw InputError("MissingField", "metric command needs a \"geometry\"");
    const Geometry g = parse_geometry(n, doc["geometry"], opt);
    std::vector<double> metric(n * n);
    require_status(bkit_build_metric(n, g.lengths.data(), g.angles.data(), metric.data()),
                   "metric construction");
    json out;
    out["dimension"] = n;
    out["metric"] = matrix_to_json(n, metric);
    std::vector<double> basis(n * n);
    if (factor) {
        require_status(bkit_cholesky(n, metric.data(), basis.data()), "factorization");
        out["basis"] = matrix_to_json(n, basis);
    }
    if (opt.json) {
        emit(out, opt);
    } else {
        print_matrix("metric", n, metric);
        if (factor) print_matrix("basis (B^T B = G)", n, basis);
    }
    return kExitOk;
}

std::vector<double> metric_from_doc(int n, const json& doc, const Options& opt) {
    if (doc.contains("metric")) return parse_matrix(n, doc["metric"], "metric");
    if (doc.contains("geometry")) {
        const Geometry g = parse_geometry(n, doc["geometry"], opt);
        std::vector<double> metric(n * n);
        require_status(
            bkit_build_metric(n, g.lengths.data(), g.angles.data(), metric.data()),
            "metric construction");
        return metric;
    }
    throw InputError("MissingField", "need \"metric\" or \"geometry\"");
}

std::vector<double> mixed_from_doc(int n, const json& doc,
                                   const std::vector<double>& metric) {
    if (doc.contains("mixed")) return parse_matrix(n, doc["mixed"], "mixed");
    if (doc.contains("gammas")) {
        // Q_ij = |a_i| |a*_j| cos(gamma_ij)
        std::vector<double> dual_lengths;
        if (doc.contains("dual_lengths"))
            dual_lengths = doc["dual_lengths"].get<std::vector<double>>();
        else if (doc.contains("dual_geometry") && doc["dual_geometry"].contains("lengths"))
            dual_lengths = doc["dual_geometry"]["lengths"].get<std::vector<double>>();
        else
            throw InputError("MissingField",
                             "gammas input needs \"dual_lengths\" or \"dual_geometry\"");
        if (static_cast<int>(dual_lengths.size()) != n)
            throw InputError("BadShape", "dual_lengths must have " + std::to_string(n) +
                                             " entries");
        const std::vector<double> gammas = parse_matrix(n, doc["gammas"], "gammas");
        std::vector<double> q(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q[i * n + j] = std::sqrt(metric[i * n + i]) * dual_lengths[j] *
                               gammas[i * n + j];
        return q;
    }
    throw InputError("MissingField", "need \"mixed\" or \"gammas\"");
}

int cmd_dual_metric(const std::string& path, const Options& opt) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    const std::vector<double> metric = metric_from_doc(n, doc, opt);
    const std::vector<double> mixed = mixed_from_doc(n, doc, metric);
    std::vector<double> dual(n * n);
    require_status(bkit_dual_metric(n, metric.data(), mixed.data(), dual.data()),
                   "dual metric");
    Geometry dg;
    dg.n = n;
    dg.lengths.resize(n);
    dg.angles.resize(n == 2 ? 1 : 3);
    require_status(
        bkit_geometry_from_metric(n, dual.data(), dg.lengths.data(), dg.angles.data()),
        "dual geometry extraction");
    if (opt.json) {
        json out;
        out["dimension"] = n;
        out["dual_metric"] = matrix_to_json(n, dual);
        out["dual_geometry"] = {{"lengths", dg.lengths},
                                {"angles", angles_to_json(n, dg.angles, opt)}};
        emit(out, opt);
    } else {
        print_matrix("dual metric", n, dual);
        print_geometry("dual", dg, opt);
    }
    return kExitOk;
}

int cmd_reciprocal(const std::string& path, const Options& opt) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    json out;
    out["dimension"] = n;
    if (doc.contains("basis")) {
        const std::vector<double> basis = parse_matrix(n, doc["basis"], "basis");
        std::vector<double> dual(n * n);
        require_status(bkit_reciprocal_basis(n, basis.data(), dual.data()),
                       "reciprocal basis");
        out["dual_basis"] = matrix_to_json(n, dual);
        if (opt.json)
            emit(out, opt);
        else
            print_matrix("reciprocal basis", n, dual);
        return kExitOk;
    }
    if (!doc.contains("geometry"))
        throw InputError("MissingField", "reciprocal command needs \"basis\" or \"geometry\"");
    const Geometry g = parse_geometry(n, doc["geometry"], opt);
    Geometry dual;
    dual.n = n;
    dual.lengths.resize(n);
    dual.angles.resize(n == 2 ? 1 : 3);
    std::vector<double> gamma_diag(n);
    require_status(
        bkit_reciprocal_geometry(n, g.lengths.data(), g.angles.data(), dual.lengths.data(),
                                 dual.angles.data(), gamma_diag.data()),
        "reciprocal geometry");
    if (opt.json) {
        out["dual_geometry"] = {{"lengths", dual.lengths},
                                {"angles", angles_to_json(n, dual.angles, opt)}};
        out["cos_gamma_diag"] = gamma_diag;
        emit(out, opt);
    } else {
        print_geometry("reciprocal", dual, opt);
        std::printf("cos(gamma_ii):");
        for (double c : gamma_diag) std::printf(" %.12g", c);
        std::printf("\n");
    }
    return kExitOk;
}

int cmd_solve_angles(const std::string& path, const Options& opt) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    if (n != 2) throw InputError("BadDimension", "solve-angles is 2D only");
    if (!doc.contains("gammas"))
        throw InputError("MissingField", "solve-angles needs \"gammas\" cosines");
    const std::vector<double> gammas = parse_matrix(2, doc["gammas"], "gammas");
    double cos_alpha = 0.0, denominator = 0.0;
    int branch = 0;
    double candidates[2] = {0, 0}, cand_res[2] = {0, 0};
    require_status(bkit_solve_alpha_2d(gammas.data(), opt.tol >= 1e-8 ? opt.tol : 1e-8,
                                       &cos_alpha, &branch, &denominator, candidates,
                                       cand_res),
                   "alpha solver");
    const double alpha = std::acos(std::min(1.0, std::max(-1.0, cos_alpha)));
    double cos_beta = 0.0;
    require_status(bkit_beta12_2d(alpha, gammas.data(), &cos_beta), "beta evaluation");
    json out;
    out["cos_alpha_12"] = cos_alpha;
    out["alpha_12"] = from_radians(alpha, opt);
    out["cos_beta_12"] = cos_beta;
    out["beta_12"] = from_radians(std::acos(std::min(1.0, std::max(-1.0, cos_beta))), opt);
    out["branch"] = branch ? "degenerate" : "generic";
    out["denominator"] = denominator;
    if (branch) {
        out["candidates"] = {candidates[0], candidates[1]};
        out["candidate_residuals"] = {cand_res[0], cand_res[1]};
    }
    if (opt.json) {
        emit(out, opt);
    } else {
        std::printf("cos(alpha_12) = %.12g   alpha_12 = %.12g %s  [%s branch]\n", cos_alpha,
                    out["alpha_12"].get<double>(), opt.radians ? "rad" : "deg",
                    branch ? "degenerate" : "generic");
        if (branch)
            std::printf("candidates: %.12g (res %.3g), %.12g (res %.3g)\n", candidates[0],
                        cand_res[0], candidates[1], cand_res[1]);
        std::printf("cos(beta_12)  = %.12g   beta_12  = %.12g %s\n", cos_beta,
                    out["beta_12"].get<double>(), opt.radians ? "rad" : "deg");
    }
    return kExitOk;
}

int cmd_volume(const std::string& path, const Options& opt) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    if (!doc.contains("geometry"))
        throw InputError("MissingField", "volume command needs a \"geometry\"");
    const Geometry g = parse_geometry(n, doc["geometry"], opt);
    double volume = 0.0;
    require_status(bkit_cell_volume(n, g.lengths.data(), g.angles.data(), &volume),
                   "volume");
    json out;
    out["dimension"] = n;
    out["volume"] = volume;
    if (n == 3) {
        double delta = 0.0, omega[3] = {0, 0, 0};
        require_status(bkit_delta_omega(g.angles.data(), &delta, omega), "delta");
        out["delta"] = delta;
        out["omega"] = {omega[0], omega[1], omega[2]};
    }
    if (opt.json) {
        emit(out, opt);
    } else {
        std::printf("volume = %.12g\n", volume);
        if (n == 3)
            std::printf("delta  = %.12g   omega = (%.12g, %.12g, %.12g)\n",
                        out["delta"].get<double>(), out["omega"][0].get<double>(),
                        out["omega"][1].get<double>(), out["omega"][2].get<double>());
    }
    return kExitOk;
}

int report_result(bkit_report* rep, const Options& opt) {
    char* s = nullptr;
    require_status(bkit_report_to_json(rep, &s), "report serialization");
    const std::string body(s);
    bkit_string_free(s);
    const bool pass = bkit_report_pass(rep) != 0;
    bkit_report_free(rep);
    if (opt.json) {
        std::printf("%s\n", body.c_str());
    } else {
        const json j = json::parse(body);
        for (const auto& [name, rec] : j["identities"].items())
            std::printf("%-34s max residual %.3e  (trial %llu)  %s\n", name.c_str(),
                        rec["max_residual"].get<double>(),
                        static_cast<unsigned long long>(rec["trial_index"].get<std::uint64_t>()),
                        rec["pass"].get<bool>() ? "pass" : "FAIL");
        std::printf("overall: %s\n", pass ? "pass" : "FAIL");
    }
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_check(const std::string& path, const Options& opt) {
    const json doc = load_input(path);
    const int n = get_dimension(doc);
    if (!doc.contains("metric") || !doc.contains("dual_metric") || !doc.contains("mixed"))
        throw InputError("MissingField",
                         "check needs \"metric\", \"dual_metric\" and \"mixed\"");
    const std::vector<double> g = parse_matrix(n, doc["metric"], "metric");
    const std::vector<double> gs = parse_matrix(n, doc["dual_metric"], "dual_metric");
    const std::vector<double> q = parse_matrix(n, doc["mixed"], "mixed");
    bkit_report* rep = nullptr;
    require_status(bkit_check(n, g.data(), gs.data(), q.data(), opt.tol, &rep), "check");
    return report_result(rep, opt);
}

int cmd_verify(int dim, std::uint64_t trials, std::uint64_t seed, double tol, double cond,
               const Options& opt) {
    bkit_report* rep = nullptr;
    require_status(bkit_verify(dim, trials, seed, tol, cond, &rep), "verify");
    return report_result(rep, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric / mixed matrix toolkit for two sets of basis vectors"};
    app.require_subcommand(1);

    Options opt;
    bool degrees = false;
    app.add_flag("--json", opt.json, "emit JSON on stdout");
    app.add_flag("--radians", opt.radians, "angles in files and output are radians");
    app.add_flag("--degrees", degrees, "angles in files and output are degrees (default)");
    app.add_option("--tol", opt.tol, "tolerance for checks and the angle solver");

    bool factor = false;
    std::string in_metric, in_dual, in_recip, in_solve, in_volume, in_check;
    auto* metric = app.add_subcommand("metric", "geometry -> metric matrix");
    metric->add_option("input", in_metric, "input JSON file")->required();
    metric->add_flag("--factor", factor, "also emit a basis B with B^T B = G");

    auto* dualm = app.add_subcommand("dual-metric", "(G or geometry) + Q -> dual metric");
    dualm->add_option("input", in_dual, "input JSON file")->required();

    auto* recip = app.add_subcommand("reciprocal", "basis or geometry -> reciprocal");
    recip->add_option("input", in_recip, "input JSON file")->required();

    auto* solve = app.add_subcommand("solve-angles", "2D gammas -> alpha and beta");
    solve->add_option("input", in_solve, "input JSON file")->required();

    auto* volume = app.add_subcommand("volume", "geometry -> cell volume and Delta");
    volume->add_option("input", in_volume, "input JSON file")->required();

    auto* check = app.add_subcommand("check", "G, G*, Q triple consistency");
    check->add_option("input", in_check, "input JSON file")->required();

    int dim = 3;
    std::uint64_t trials = 1000, seed = 0;
    double vtol = 1e-8, cond = 100.0;
    auto* verify = app.add_subcommand("verify", "randomized identity verification");
    verify->add_option("--dim", dim, "dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--seed", seed, "generator seed");
    verify->add_option("--tol", vtol, "per-identity residual tolerance");
    verify->add_option("--cond", cond, "condition number limit for generated bases");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*metric) return cmd_metric(in_metric, opt, factor);
        if (*dualm) return cmd_dual_metric(in_dual, opt);
        if (*recip) return cmd_reciprocal(in_recip, opt);
        if (*solve) return cmd_solve_angles(in_solve, opt);
        if (*volume) return cmd_volume(in_volume, opt);
        if (*check) return cmd_check(in_check, opt);
        if (*verify) return cmd_verify(dim, trials, seed, vtol, cond, opt);
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.code.c_str(), e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: Internal: %s\n", e.what());
        return kExitInputError;
    }
    return kExitInputError;
}
