// Batch driver: load a system definition, run a shadowing / certificate /
// conjugacy / coding computation, emit machine-readable results.
// Exit codes: 0 success, 1 input error, 2 stage budget exhausted,
// 3 certificate failure.

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shadowing/associated.hpp"
#include "shadowing/errors.hpp"
#include "shadowing/expanding.hpp"
#include "shadowing/hyperbolic.hpp"
#include "shadowing/serialize.hpp"
#include "shadowing/symbolic.hpp"

namespace sh = shadowing;
using nlohmann::json;

namespace {

std::string fmt15(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.15g", v);
    return b;
}

sh::cplx cplx_field(const json& j) {
    if (j.is_number()) return sh::cplx{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw sh::input_error("complex values are [re, im] pairs");
    return sh::cplx{j.at(0).get<double>(), j.at(1).get<double>()};
}

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

const sh::mv_system& as_mv(const sh::system_handle& sys) {
    return sys.crossed ? *sys.crossed->system : *sys.expanding;
}

sh::orbit_seg load_orbit(const std::string& file) {
    std::string text = sh::read_text_file(file);
    if (has_suffix(file, ".csv")) return sh::orbit_from_csv_text(text);
    return sh::orbit_from_json_text(text);
}

sh::homotopy_pseudo_orbit load_input(const sh::system_handle& sys, const std::string& file) {
    std::string text = sh::read_text_file(file);
    if (has_suffix(file, ".csv"))
        return sh::as_pseudo_orbit(as_mv(sys), sh::orbit_from_csv_text(text), 1e-6);
    if (text.find("\"paths\"") != std::string::npos) return sh::hpo_from_json_text(text);
    return sh::as_pseudo_orbit(as_mv(sys), sh::orbit_from_json_text(text), 1e-6);
}

void truncate_window(sh::homotopy_pseudo_orbit& h, long n) {
    if (n < 1) throw sh::input_error("window must be >= 1");
    if (n >= h.window.size()) return;
    h.window.hi = h.window.lo + n - 1;
    h.points.resize(static_cast<std::size_t>(n));
    h.paths.resize(static_cast<std::size_t>(n - 1));
}

void truncate_window(sh::orbit_seg& o, long n) {
    if (n < 1) throw sh::input_error("window must be >= 1");
    if (n >= o.window.size()) return;
    o.window.hi = o.window.lo + n - 1;
    o.points.resize(static_cast<std::size_t>(n));
}

void emit(const std::string& out_file, const std::string& body) {
    if (out_file.empty())
        std::cout << body << "\n";
    else
        sh::write_text_file(out_file, body);
}

struct shadow_opts {
    std::string system_file, input_file, out_file, trace_file;
    std::string format = "json";
    double tol = 1e-9;
    long window = 0;
};

int run_shadow(const shadow_opts& o) {
    sh::system_handle sys = sh::system_from_json_text(sh::read_text_file(o.system_file));
    sh::homotopy_pseudo_orbit hpo = load_input(sys, o.input_file);
    if (o.window > 0) truncate_window(hpo, o.window);

    sh::shadow_result r = sys.crossed ? sh::shadow_hyperbolic(*sys.crossed, hpo, o.tol)
                                      : sh::shadow_expanding(*sys.expanding, hpo, o.tol);

    std::string body =
        o.format == "csv" ? sh::orbit_to_csv(r.orbit) : sh::orbit_to_json(r.orbit);
    sh::write_text_file(o.out_file, body);
    std::string trace_file = o.trace_file.empty() ? o.out_file + ".trace.csv" : o.trace_file;
    sh::write_text_file(trace_file, sh::trace_to_csv(r.trace));

    double defect = sh::max_defect(as_mv(sys), r.orbit);
    long stages = r.trace.stages.empty() ? 0 : r.trace.stages.back().stage;
    std::cout << "orbit window [" << r.orbit.window.lo << ", " << r.orbit.window.hi
              << "], max defect " << fmt15(defect) << ", stages " << stages << ", wrote "
              << o.out_file << " and " << trace_file << "\n";
    return 0;
}

int run_check(const std::string& system_file, const std::string& out_file) {
    std::string text = sh::read_text_file(system_file);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw sh::input_error("malformed JSON input");
    std::string family = j.value("family", std::string{});

    if (family == "henon") {
        sh::henon_params hp;
        hp.c = cplx_field(j.at("c"));
        hp.b = cplx_field(j.at("b"));
        hp.Rx = j.at("Rx").get<double>();
        hp.Ry = j.at("Ry").get<double>();
        hp.rx = j.value("rx", 0.0);
        sh::box_certificates m = sh::henon_margins(hp);
        bool certified = m.bcc_image > 0.0 && m.bcc_preimage > 0.0 && m.occ > 0.0 &&
                         m.lambda_h > 1.0 && m.lambda_v > 1.0;
        json out{{"family", "henon"},
                 {"bcc", {m.bcc_image, m.bcc_preimage}},
                 {"occ", m.occ},
                 {"lambda", m.lambda_h},
                 {"lambda_vertical", m.lambda_v},
                 {"classification", sh::to_string(sh::classify_henon(hp.c, hp.b))},
                 {"certified", certified},
                 {"degree", nullptr}};
        if (certified) {
            auto cs = sh::make_henon_system(hp);
            double x0 = hp.rx > 0.0 ? std::sqrt(hp.rx * hp.Rx) : hp.Rx / 2.0;
            sh::cplx w = x0 * x0 + hp.c; // a regular value hit by the x-boundary sweep
            out["degree"] = sh::crossed_degree(*cs, sh::cplx{0.0, 0.0}, w);
        }
        emit(out_file, out.dump(2));
        return certified ? 0 : 3;
    }

    // expanding families: construction certifies (or throws)
    sh::system_handle sys = sh::system_from_json_text(text);
    json out{{"family", family}, {"certified", true}};
    if (sys.expanding->certificate) {
        const auto& c = *sys.expanding->certificate;
        out["lambda"] = c.lambda;
        out["margin"] = c.margin;
        out["grid"] = c.grid;
        out["closed_form"] = c.closed_form;
    }
    if (sys.expanding->family == sh::system_family::graph) {
        out["vertices"] = sys.expanding->graph->vertices;
        out["edges"] = sys.expanding->graph->edges.size();
    }
    emit(out_file, out.dump(2));
    return 0;
}

struct conjugate_opts {
    std::string system_file, system2_file, homotopy, input_file, out_file;
    double tol = 1e-9;
    long window = 0;
};

int run_conjugate(const conjugate_opts& o) {
    sh::system_handle A = sh::system_from_json_text(sh::read_text_file(o.system_file));
    sh::system_handle B;
    if (!o.system2_file.empty())
        B = sh::system_from_json_text(sh::read_text_file(o.system2_file));

    sh::orbit_seg w = load_orbit(o.input_file);
    if (o.window > 0) truncate_window(w, o.window);

    std::function<sh::shadow_result(const sh::orbit_seg&)> induced;
    sh::space dst_space = as_mv(A).X1;
    double tol = o.tol;

    if (o.homotopy == "identity") {
        if (A.crossed) {
            auto cs = A.crossed;
            induced = [cs, tol](const sh::orbit_seg& x) {
                return sh::shadow_hyperbolic(*cs,
                                             sh::as_pseudo_orbit(*cs->system, x, 1e-6), tol);
            };
        } else {
            auto ex = A.expanding;
            induced = [ex, tol](const sh::orbit_seg& x) {
                return sh::induced_map_expanding(sh::identity_hsc(ex),
                                                 sh::as_pseudo_orbit(*ex, x, 1e-6), tol);
            };
        }
    } else if (o.homotopy == "half-rotation") {
        if (!A.expanding || A.expanding->family != sh::system_family::circle_linear)
            throw sh::input_error("half-rotation needs an unperturbed circle cover system");
        auto ex = A.expanding;
        int d = ex->degree;
        sh::hsc h;
        h.src = ex;
        h.dst = ex;
        h.name = "half-rotation";
        h.h0 = [](const sh::pt& p) { return sh::make_pt(p.x.real() + 0.5); };
        h.h1 = h.h0;
        // h0(sigma(x)) = dx + 1/2 and sigma(h1(x)) = dx + d/2 agree mod 1 for
        // odd d (constant homotopy); even d needs a minimal half slide.
        double slide = d % 2 == 0 ? 0.5 : 0.0;
        h.G = [d, slide](const sh::pt& p, double t) {
            return sh::make_pt(d * p.x.real() + 0.5 + t * slide);
        };
        h.H = [](const sh::pt& p, double) { return sh::make_pt(p.x.real() + 0.5); };
        induced = [ex, h, tol](const sh::orbit_seg& x) {
            return sh::induced_map_expanding(h, sh::as_pseudo_orbit(*ex, x, 1e-6), tol);
        };
    } else if (o.homotopy == "associated-k") {
        if (!B.crossed)
            throw sh::input_error("associated-k needs --system2 pointing at the product-box system");
        if (!A.expanding || A.expanding->family != sh::system_family::polynomial)
            throw sh::input_error("associated-k needs a quadratic one-variable source system");
        sh::associated_system as = sh::associated_expanding(B.crossed, sh::cplx{0.0, 0.0});
        if (std::abs(A.expanding->c - as.one_d->c) > 1e-12)
            throw sh::input_error("source system parameter does not match the slice system");
        dst_space = B.crossed->system->X1;
        induced = [as, tol](const sh::orbit_seg& x) { return sh::to_henon(as, x, tol); };
    } else if (o.homotopy == "associated-h") {
        if (!A.crossed)
            throw sh::input_error("associated-h needs --system pointing at the product-box system");
        sh::associated_system as = sh::associated_expanding(A.crossed, sh::cplx{0.0, 0.0});
        if (B.expanding && std::abs(B.expanding->c - as.one_d->c) > 1e-12)
            throw sh::input_error("target system parameter does not match the slice system");
        dst_space = as.one_d->X1;
        induced = [as, tol](const sh::orbit_seg& x) { return sh::from_henon(as, x, tol); };
    } else {
        throw sh::input_error("unknown homotopy name '" + o.homotopy +
                              "' (known: identity, half-rotation, associated-h, associated-k)");
    }

    sh::shadow_result r1 = induced(w);
    sh::shadow_result r2 = induced(sh::shift_orbit(w));
    const sh::orbit_seg& o1 = r1.orbit;
    const sh::orbit_seg& o2 = r2.orbit;

    // Paired CSV over the indices where source and image are both defined;
    // the residual column holds the conjugacy-equation mismatch
    // d(induced(shift w)_i, shift(induced w)_i) where both runs cover i.
    std::string csv =
        "index,src_re_x,src_im_x,src_re_y,src_im_y,img_re_x,img_im_x,img_re_y,img_im_y,"
        "residual\n";
    double max_res = 0.0;
    long n_res = 0;
    long lo = std::max(o1.window.lo, w.window.lo);
    long hi = std::min(o1.window.hi, w.window.hi);
    for (long i = lo; i <= hi; ++i) {
        const sh::pt& s = w.at(i);
        const sh::pt& m = o1.at(i);
        std::string res_cell;
        if (i >= o2.window.lo && i <= o2.window.hi && i + 1 >= o1.window.lo &&
            i + 1 <= o1.window.hi) {
            double res = dst_space.dist(o2.at(i), o1.at(i + 1));
            max_res = std::max(max_res, res);
            ++n_res;
            res_cell = fmt15(res);
        }
        csv += std::to_string(i) + "," + fmt15(s.x.real()) + "," + fmt15(s.x.imag()) + "," +
               fmt15(s.y.real()) + "," + fmt15(s.y.imag()) + "," + fmt15(m.x.real()) + "," +
               fmt15(m.x.imag()) + "," + fmt15(m.y.real()) + "," + fmt15(m.y.imag()) + "," +
               res_cell + "\n";
    }
    sh::write_text_file(o.out_file, csv);

    if (n_res == 0)
        throw sh::input_error(
            "windows too short to evaluate the conjugacy equation on any index");
    std::cout << "image window [" << o1.window.lo << ", " << o1.window.hi
              << "], conjugacy residual max " << fmt15(max_res) << " over " << n_res
              << " indices, wrote " << o.out_file << "\n";
    if (max_res > 2.0 * o.tol)
        throw sh::certificate_error("conjugacy equation residual " + fmt15(max_res) +
                                    " exceeds 2 tol = " + fmt15(2.0 * o.tol));
    return 0;
}

struct code_opts {
    std::string system_file, input_file, out_file, preperiod, period;
    double guard = 1e-8;
};

std::vector<int> parse_digits(const std::string& s, int d) {
    std::vector<int> out;
    for (char ch : s) {
        if (ch == ',' || ch == ' ') continue;
        if (ch < '0' || ch > '9') throw sh::input_error("symbol strings use digits 0-9");
        int v = ch - '0';
        if (v >= d)
            throw sh::input_error("symbol " + std::string(1, ch) +
                                  " is outside the alphabet of size " + std::to_string(d));
        out.push_back(v);
    }
    return out;
}

int run_code(const code_opts& o) {
    sh::system_handle sys = sh::system_from_json_text(sh::read_text_file(o.system_file));
    if (!sys.expanding || (sys.expanding->family != sh::system_family::circle_linear &&
                           sys.expanding->family != sh::system_family::circle_perturbed))
        throw sh::input_error("coding works on circle cover systems");
    int d = sys.expanding->degree;
    if (d > 10) throw sh::input_error("symbol strings support degree <= 10");

    if (!o.period.empty()) {
        double value =
            sh::decode_symbols(d, parse_digits(o.preperiod, d), parse_digits(o.period, d));
        json out{{"degree", d},
                 {"preperiod", o.preperiod},
                 {"period", o.period},
                 {"value", value}};
        emit(o.out_file, out.dump(2));
        return 0;
    }

    if (o.input_file.empty())
        throw sh::input_error("code needs --input (an orbit) or --period (digits to decode)");
    sh::orbit_seg orb = load_orbit(o.input_file);
    std::vector<int> syms = sh::code_orbit(*sys.expanding, orb, o.guard);
    std::string s;
    for (int v : syms) s += static_cast<char>('0' + v);
    json out{{"degree", d},
             {"window", {{"lo", orb.window.lo}, {"hi", orb.window.hi}, {"bi", orb.window.bi}}},
             {"symbols", s}};
    emit(o.out_file, out.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homotopy shadowing driver"};
    app.require_subcommand(1);

    shadow_opts so;
    CLI::App* cmd_shadow =
        app.add_subcommand("shadow", "shadow a (pseudo-)orbit to a genuine orbit");
    cmd_shadow->add_option("--system", so.system_file, "system JSON file")->required();
    cmd_shadow->add_option("--input", so.input_file, "pseudo-orbit or orbit file (.json/.csv)")
        ->required();
    cmd_shadow->add_option("--tol", so.tol, "output defect tolerance");
    cmd_shadow->add_option("--out", so.out_file, "output orbit file")->required();
    cmd_shadow->add_option("--format", so.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_shadow->add_option("--trace", so.trace_file, "stage trace CSV (default <out>.trace.csv)");
    cmd_shadow->add_option("--window", so.window, "truncate the input to its first N indices");

    std::string check_system, check_out;
    CLI::App* cmd_check =
        app.add_subcommand("check", "print expansion / box certificates and classification");
    cmd_check->add_option("--system", check_system, "system JSON file")->required();
    cmd_check->add_option("--out", check_out, "write the certificate JSON here (default stdout)");

    conjugate_opts co;
    CLI::App* cmd_conj = app.add_subcommand(
        "conjugate", "push an orbit through a named semi-conjugacy and check the equation");
    cmd_conj->add_option("--system", co.system_file, "source system JSON file")->required();
    cmd_conj->add_option("--system2", co.system2_file, "target system JSON file");
    cmd_conj->add_option("--homotopy", co.homotopy,
                         "identity | half-rotation | associated-h | associated-k")
        ->required();
    cmd_conj->add_option("--input", co.input_file, "genuine source orbit (.json/.csv)")
        ->required();
    cmd_conj->add_option("--tol", co.tol, "per-leg shadowing tolerance");
    cmd_conj->add_option("--out", co.out_file, "paired-orbit CSV output")->required();
    cmd_conj->add_option("--window", co.window, "truncate the input to its first N indices");

    code_opts ko;
    CLI::App* cmd_code =
        app.add_subcommand("code", "itinerary of a circle orbit / decode a symbol word");
    cmd_code->add_option("--system", ko.system_file, "system JSON file")->required();
    cmd_code->add_option("--input", ko.input_file, "genuine orbit file (.json/.csv)");
    cmd_code->add_option("--guard", ko.guard, "partition boundary guard");
    cmd_code->add_option("--preperiod", ko.preperiod, "decode: preperiodic digits");
    cmd_code->add_option("--period", ko.period, "decode: repeating digits");
    cmd_code->add_option("--out", ko.out_file, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 1;
    }

    try {
        if (cmd_shadow->parsed()) return run_shadow(so);
        if (cmd_check->parsed()) return run_check(check_system, check_out);
        if (cmd_conj->parsed()) return run_conjugate(co);
        if (cmd_code->parsed()) return run_code(ko);
    } catch (const sh::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const sh::certificate_error& e) {
        std::cerr << "certificate: " << e.what() << "\n";
        return 3;
    } catch (const sh::input_error& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
