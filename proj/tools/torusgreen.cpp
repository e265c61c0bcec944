// torusgreen command-line front end.
#include "torusgreen/acceptance.hpp"
#include "torusgreen/disks.hpp"
#include "torusgreen/elliptic.hpp"
#include "torusgreen/errors.hpp"
#include "torusgreen/gle.hpp"
#include "torusgreen/green.hpp"
#include "torusgreen/hitchin.hpp"
#include "torusgreen/lattice.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace torusgreen;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { text, json, csv };

std::string num(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) x = 0.0; // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string text_num(double x, int digits = 15) {
    char buf[40];
    if (x == 0.0) x = 0.0;
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// nlohmann prints shortest round-trip floats; the output contract wants %.17g and null for non-finite.
void write_json(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(indent, ' '), pad2(indent + 2, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad2 << Json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent + 2);
        }
        os << "\n" << pad << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // short arrays of scalars stay on one line
        bool flat = j.size() <= 8;
        for (const auto& v : j) flat = flat && !v.is_structured();
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                write_json(os, j[i], indent);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ",\n";
            os << pad2;
            write_json(os, j[i], indent + 2);
        }
        os << "\n" << pad << "]";
        return;
    }
    case Json::value_t::number_float: os << num(j.get<double>()); return;
    default: os << j.dump(); return;
    }
}

std::string csv_cell(const Json& v) {
    if (v.is_number_float()) {
        const double x = v.get<double>();
        return std::isfinite(x) ? num(x) : "";
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_null()) return "";
    return v.dump();
}

// Array of flat objects -> header row plus one row per record.
void write_csv(std::ostream& os, const Json& rows) {
    if (rows.empty()) return;
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        os << (first ? "" : ",") << it.key();
        first = false;
    }
    os << "\n";
    for (const auto& r : rows) {
        first = true;
        for (auto it = r.begin(); it != r.end(); ++it) {
            os << (first ? "" : ",") << csv_cell(it.value());
            first = false;
        }
        os << "\n";
    }
}

void emit(const Json& j, Format f, std::ostream& os = std::cout) {
    if (f == Format::csv) {
        write_csv(os, j.is_array() ? j : Json::array({j}));
    } else {
        write_json(os, j);
        os << "\n";
    }
}

cplx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    std::istringstream is(comma == std::string::npos ? s : s.substr(0, comma));
    is.imbue(std::locale::classic());
    double re = 0.0, im = 0.0;
    if (!(is >> re) || !is.eof()) throw CLI::ValidationError("complex", "expected re,im but got '" + s + "'");
    if (comma != std::string::npos) {
        std::istringstream js(s.substr(comma + 1));
        js.imbue(std::locale::classic());
        if (!(js >> im) || !js.eof()) throw CLI::ValidationError("complex", "expected re,im but got '" + s + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw CLI::ValidationError("complex", "non-finite value '" + s + "'");
    return {re, im};
}

struct Common {
    double b = 1.0;
    bool json = false;
    bool csv = false;
    std::optional<double> tol;
    Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
};

void add_common(CLI::App* sc, Common& c, bool with_csv = true) {
    // range checks on b belong to the library, which reports them as domain errors
    sc->add_option("--b", c.b, "modulus b of the torus C/(Z + ib Z)")->required();
    auto* j = sc->add_flag("--json", c.json, "JSON output");
    if (with_csv) sc->add_flag("--csv", c.csv, "CSV output")->excludes(j);
    sc->add_option("--tol", c.tol, "override the default tolerance of the operation")->check(CLI::PositiveNumber);
}

Json pair_json(cplx z) { return Json::array({z.real(), z.imag()}); }

TorusPoint point_of(const std::string& p, const LatticeData& L) {
    return TorusPoint::from_complex(parse_complex(p), L);
}

std::string region_str(Region r) { return region_name(r); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green functions, critical points and Lame discriminants on rectangular tori"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common c;
    int rc = 0;

    // invariants
    auto* s_inv = app.add_subcommand("invariants", "e_k, g2, g3, eta1, eta2 and the Legendre residual");
    add_common(s_inv, c);
    s_inv->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        Json j;
        j["b"] = L.b;
        j["e1"] = L.e1;
        j["e2"] = L.e2;
        j["e3"] = L.e3;
        j["g2"] = L.g2;
        j["g3"] = L.g3;
        j["eta1"] = L.eta1;
        j["eta2_im"] = L.eta2.imag();
        j["legendre_residual"] = legendre_residual(L);
        if (c.format() != Format::text) return emit(j, c.format());
        for (auto it = j.begin(); it != j.end(); ++it)
            std::cout << it.key() << " " << text_num(it.value().get<double>()) << "\n";
    });

    // eval
    std::string fn = "wp";
    std::vector<std::string> zs;
    auto* s_eval = app.add_subcommand("eval", "wp, wp' or zeta at one or more points");
    add_common(s_eval, c);
    s_eval->add_option("--fn", fn, "function")->check(CLI::IsMember({"wp", "wpp", "zeta"}));
    s_eval->add_option("--z", zs, "point re,im (repeatable)")->required();
    s_eval->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        Json rows = Json::array();
        for (const auto& s : zs) {
            const cplx z = parse_complex(s);
            const cplx v = fn == "wp" ? wp(z, L) : fn == "wpp" ? wp_prime(z, L) : zeta(z, L);
            if (c.format() == Format::text) std::cout << num(v.real()) << " " << num(v.imag()) << "\n";
            rows.push_back(Json{{"z_re", z.real()}, {"z_im", z.imag()}, {"re", v.real()}, {"im", v.imag()}});
        }
        if (c.format() != Format::text) emit(rows, c.format());
    });

    // census
    std::string p_str;
    int grid = 48;
    auto* s_census = app.add_subcommand("census", "all critical points of G_p");
    add_common(s_census, c);
    s_census->add_option("--p", p_str, "p as re,im")->required();
    s_census->add_option("--grid", grid, "seed grid size")->check(CLI::Range(4, 4096));
    s_census->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        CensusOptions opt;
        opt.grid_n = grid;
        if (c.tol) opt.residual_tol = *c.tol;
        const Census cs = census(point_of(p_str, L), L, opt);
        Json rows = Json::array();
        for (const auto& cp : cs.points)
            rows.push_back(Json{{"r", cp.a.r()}, {"s", cp.a.s()}, {"trivial", cp.trivial},
                                {"hessian_det", cp.hessian_det}, {"kind", kind_name(cp.kind)},
                                {"degree", cp.degree}, {"residual", cp.residual}});
        if (c.format() != Format::text) return emit(rows, c.format());
        std::printf("%-22s %-22s %-8s %-24s %-10s %s\n", "r", "s", "trivial", "hessian_det", "kind", "degree");
        for (const auto& cp : cs.points)
            std::printf("%-22s %-22s %-8s %-24s %-10s %d\n", text_num(cp.a.r()).c_str(), text_num(cp.a.s()).c_str(),
                        cp.trivial ? "yes" : "no", text_num(cp.hessian_det).c_str(), kind_name(cp.kind), cp.degree);
        std::printf("%d points, degree sum %d%s\n", cs.size(), cs.degree_sum,
                    cs.status == CensusStatus::degenerate ? " (degenerate)" : "");
    });

    // thresholds
    auto* s_thr = app.add_subcommand("thresholds", "the eight thresholds d_1..d_8 and the landmark values");
    add_common(s_thr, c);
    s_thr->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const RegionThresholds t = thresholds(L);
        Json j;
        j["b"] = L.b;
        j["d"] = t.d;
        j["landmarks"] = t.landmarks;
        j["chain_margin"] = t.chain_margin();
        if (c.format() == Format::json) return emit(j, Format::json);
        if (c.format() == Format::csv) {
            Json rows = Json::array();
            for (int i = 0; i < 8; ++i) rows.push_back(Json{{"name", "d" + std::to_string(i + 1)}, {"value", t.d[i]}});
            for (int i = 0; i < 7; ++i)
                rows.push_back(Json{{"name", "landmark" + std::to_string(i + 1)}, {"value", t.landmarks[i]}});
            return emit(rows, Format::csv);
        }
        for (int i = 0; i < 8; ++i) std::cout << "d" << i + 1 << " " << text_num(t.d[i]) << "\n";
        for (int i = 0; i < 7; ++i) std::cout << "landmark" << i + 1 << " " << text_num(t.landmarks[i]) << "\n";
        std::cout << "chain_margin " << text_num(t.chain_margin()) << "\n";
    });

    // figure1
    std::string out_path;
    auto* s_fig = app.add_subcommand("figure1", "disks, thresholds and landmarks as JSON for plotting");
    s_fig->add_option("--b", c.b, "modulus b")->required();
    s_fig->add_option("-o,--output", out_path, "output file (stdout when omitted)");
    s_fig->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const RegionThresholds t = thresholds(L);
        Json j;
        j["b"] = L.b;
        j["disks"] = Json::array();
        for (const auto& d : disks(L))
            j["disks"].push_back(Json{{"k", d.k}, {"center", pair_json(d.center)}, {"radius", d.radius}});
        j["d"] = t.d;
        j["landmarks"] = t.landmarks;
        if (out_path.empty()) return emit(j, Format::json);
        std::ofstream f(out_path);
        if (!f) throw CLI::FileError("cannot write " + out_path);
        emit(j, Format::json, f);
    });

    // stability
    std::string axis = "real";
    double amin = 0.0, amax = 0.0;
    int n = 201;
    auto* s_stab = app.add_subcommand("stability", "discriminants and sigma membership along an axis of A");
    add_common(s_stab, c);
    s_stab->add_option("--p", p_str, "p as re,im")->required();
    s_stab->add_option("--axis", axis, "real or imag")->check(CLI::IsMember({"real", "imag"}));
    s_stab->add_option("--amin", amin, "start of the window")->required();
    s_stab->add_option("--amax", amax, "end of the window")->required();
    s_stab->add_option("--n", n, "number of samples")->check(CLI::Range(2, 1000000));
    s_stab->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const TorusPoint p = point_of(p_str, L);
        if (!(amin < amax)) throw DomainError("need amin < amax");
        const Axis ax = axis == "real" ? Axis::real : Axis::imag;
        const auto sweep = sweep_axis(p, ax, amin, amax, n, L);
        const double tol = c.tol.value_or(sigma_tol);
        Json rows = Json::array();
        for (const auto& sm : sweep) {
            const SigmaFlags f = sigma_flags(sm.tri, tol);
            Json r{{"t", sm.t}, {"A_re", sm.A.real()}, {"A_im", sm.A.imag()}};
            for (int j = 0; j < 3; ++j) {
                r["tri" + std::to_string(j + 1) + "_re"] = sm.tri[j].real();
                r["tri" + std::to_string(j + 1) + "_im"] = sm.tri[j].imag();
            }
            for (int j = 0; j < 3; ++j) r["sigma" + std::to_string(j + 1)] = f.in_s[j];
            for (int j = 0; j < 3; ++j) r["sigma" + std::to_string(j + 1) + "_star"] = f.in_star[j];
            rows.push_back(r);
        }
        if (c.format() != Format::text) return emit(rows, c.format());
        for (const auto& r : rows) {
            std::cout << text_num(r["t"].get<double>(), 10);
            for (int j = 1; j <= 3; ++j) {
                const std::string k = "tri" + std::to_string(j);
                std::cout << "  " << text_num(r[k + "_re"].get<double>(), 10) << " "
                          << text_num(r[k + "_im"].get<double>(), 10);
            }
            for (int j = 1; j <= 3; ++j) {
                const std::string k = "sigma" + std::to_string(j);
                std::cout << "  " << (r[k].get<bool>() ? "S" : "-") << (r[k + "_star"].get<bool>() ? "*" : "-");
            }
            std::cout << "\n";
        }
    });

    // corners
    auto* s_corn = app.add_subcommand("corners", "the four corner values A_0..A_3");
    add_common(s_corn, c);
    s_corn->add_option("--p", p_str, "p as re,im")->required();
    s_corn->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const auto A = accessory_corners(point_of(p_str, L), L);
        Json rows = Json::array();
        for (int k = 0; k < 4; ++k) rows.push_back(Json{{"k", k}, {"re", A[k].real()}, {"im", A[k].imag()}});
        if (c.format() != Format::text) return emit(rows, c.format());
        for (int k = 0; k < 4; ++k) std::cout << "A" << k << " " << num(A[k].real()) << " " << num(A[k].imag()) << "\n";
    });

    // hitchin
    double hr = 0.0, hs = 0.0;
    auto* s_hit = app.add_subcommand("hitchin", "wp(p) from a critical point a = r + s tau");
    add_common(s_hit, c);
    s_hit->add_option("--r", hr, "r")->required();
    s_hit->add_option("--s", hs, "s")->required();
    s_hit->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const cplx w = hitchin_wp(hr, hs, L);
        if (c.format() != Format::text)
            return emit(Json{{"r", hr}, {"s", hs}, {"wp_re", w.real()}, {"wp_im", w.imag()}}, c.format());
        std::cout << num(w.real()) << " " << num(w.imag()) << "\n";
    });

    // signsurvey
    int survey_n = 9;
    auto* s_sign = app.add_subcommand("signsurvey", "sign of Im wp(p) over the two half squares of (r, s)");
    add_common(s_sign, c);
    s_sign->add_option("--n", survey_n, "samples per side")->check(CLI::Range(2, 10000));
    s_sign->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        const auto v = sign_survey(L, survey_n);
        Json rows = Json::array();
        int counts[3][3] = {}; // region x {Im > 0, Im < 0, |Im| small}
        const double tol = c.tol.value_or(1e-9);
        for (const auto& h : v) {
            Json r{{"r", h.r}, {"s", h.s}, {"region", survey_region_name(h.region)}, {"ok", h.ok}};
            r["wp_re"] = h.ok ? h.wp.real() : NAN;
            r["wp_im"] = h.ok ? h.wp.imag() : NAN;
            rows.push_back(r);
            if (h.ok) {
                const int sgn = std::abs(h.wp.imag()) < tol * std::max(1.0, std::abs(h.wp)) ? 2 : h.wp.imag() > 0 ? 0 : 1;
                ++counts[static_cast<int>(h.region)][sgn];
            }
        }
        if (c.format() != Format::text) return emit(rows, c.format());
        std::printf("%-14s %8s %8s %8s\n", "region", "Im>0", "Im<0", "Im=0");
        for (int k = 0; k < 3; ++k)
            std::printf("%-14s %8d %8d %8d\n", survey_region_name(static_cast<SurveyRegion>(k)), counts[k][0],
                        counts[k][1], counts[k][2]);
    });

    // degscan
    int scan_grid = 16;
    auto* s_deg = app.add_subcommand("degscan", "candidates for degenerate critical points, most degenerate first");
    add_common(s_deg, c);
    s_deg->add_option("--grid", scan_grid, "grid size (at least 8)")->check(CLI::Range(8, 4096));
    s_deg->callback([&] {
        const LatticeData L = compute_invariants(c.b);
        CensusOptions opt;
        if (c.tol) opt.residual_tol = *c.tol;
        const auto v = degenerate_scan(L, scan_grid, opt);
        Json rows = Json::array();
        for (const auto& d : v) {
            Json r{{"wp_re", d.wp_p.real()}, {"wp_im", d.wp_p.imag()}, {"region", region_str(d.region)}};
            r["census_size"] = d.ok ? Json(d.census_size) : Json(nullptr);
            r["min_abs_hessian"] = d.ok ? d.min_abs_hessian : NAN;
            r["source"] = d.source;
            r["r"] = d.r;
            r["s"] = d.s;
            r["ok"] = d.ok;
            rows.push_back(r);
        }
        if (c.format() != Format::text) return emit(rows, c.format());
        std::printf("%-13s %-10s %-24s %-24s %-7s %s\n", "source", "region", "wp_re", "wp_im", "census", "min|det|");
        for (const auto& d : v) {
            if (!d.ok) continue;
            std::printf("%-13s %-10s %-24s %-24s %-7d %s\n", d.source.c_str(), region_name(d.region),
                        text_num(d.wp_p.real()).c_str(), text_num(d.wp_p.imag()).c_str(), d.census_size,
                        text_num(d.min_abs_hessian, 6).c_str());
        }
    });

    // verify
    std::vector<int> only;
    bool verify_json = false;
    auto* s_ver = app.add_subcommand("verify", "run the acceptance suite and print a pass/fail table");
    s_ver->add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, acceptance_count));
    s_ver->add_flag("--json", verify_json, "JSON output");
    s_ver->callback([&] {
        Json rows = Json::array();
        int failed = 0;
        const auto res = run_acceptance(only, [&](const CriterionResult& r) {
            if (!verify_json) std::cout << format_result(r) << std::endl;
        });
        for (const auto& r : res) {
            failed += !r.pass;
            rows.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds},
                                {"detail", r.detail}});
        }
        if (verify_json) emit(rows, Format::json);
        else std::cout << res.size() - failed << "/" << res.size() << " criteria passed\n";
        if (failed) rc = 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
