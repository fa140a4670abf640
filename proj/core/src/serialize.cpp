#include "shadowing/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shadowing/errors.hpp"
#include "shadowing/expanding.hpp"
#include "shadowing/symbolic.hpp"

namespace shadowing {

namespace {

using nlohmann::json;

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw input_error("complex values are [re, im] pairs");
    return cplx{j.at(0).get<double>(), j.at(1).get<double>()};
}

json pt_to_json(const pt& p) {
    return json::array({p.x.real(), p.x.imag(), p.y.real(), p.y.imag()});
}

pt pt_from_json(const json& j) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 4))
        throw input_error("points are [re_x, im_x] or [re_x, im_x, re_y, im_y]");
    pt p;
    p.x = cplx{j.at(0).get<double>(), j.at(1).get<double>()};
    if (j.size() == 4) p.y = cplx{j.at(2).get<double>(), j.at(3).get<double>()};
    return p;
}

json window_to_json(const index_window& w) {
    return json{{"lo", w.lo}, {"hi", w.hi}, {"bi", w.bi}};
}

index_window window_from_json(const json& j) {
    index_window w;
    w.lo = j.at("lo").get<long>();
    w.hi = j.at("hi").get<long>();
    w.bi = j.value("bi", false);
    if (w.lo > w.hi) throw input_error("window lo exceeds hi");
    return w;
}

json space_to_json(const space& s) {
    switch (s.kind()) {
        case space_kind::circle:
            return json{{"kind", "circle"}};
        case space_kind::discrete:
            return json{{"kind", "discrete"}, {"elements", s.elements()}};
        case space_kind::disk:
            return json{{"kind", "disk"},
                        {"center", cplx_to_json(s.center())},
                        {"radius", s.radius()},
                        {"inner", s.inner()},
                        {"metric", s.metric() == metric_kind::poincare ? "poincare"
                                                                       : "euclidean"}};
        case space_kind::product:
            return json{{"kind", "product"},
                        {"fx", space_to_json(s.factor_x())},
                        {"fy", space_to_json(s.factor_y())}};
    }
    throw input_error("unknown space kind");
}

space space_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle") return space::circle();
    if (kind == "discrete") return space::discrete(j.at("elements").get<long>());
    if (kind == "disk") {
        metric_kind m = j.value("metric", std::string("euclidean")) == "poincare"
                            ? metric_kind::poincare
                            : metric_kind::euclidean;
        return space::disk(cplx_from_json(j.at("center")), j.at("radius").get<double>(),
                           j.value("inner", 0.0), m);
    }
    if (kind == "product")
        return space::product(space_from_json(j.at("fx")), space_from_json(j.at("fy")));
    throw input_error("unknown space kind '" + kind + "'");
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON input");
    return j;
}

// Missing keys and wrong value types surface as library exceptions; the
// loaders promise input_error for every malformed document.
template <typename F>
auto translated(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed document: ") + e.what());
    }
}

} // namespace

std::string system_to_json(const system_handle& sys) {
    json j;
    if (sys.crossed) {
        const henon_params& hp = sys.crossed->hp;
        j = json{{"family", "henon"},       {"c", cplx_to_json(hp.c)},
                 {"b", cplx_to_json(hp.b)}, {"Rx", hp.Rx},
                 {"Ry", hp.Ry},             {"rx", hp.rx}};
    } else if (sys.expanding) {
        const mv_system& s = *sys.expanding;
        switch (s.family) {
            case system_family::circle_linear:
                j = json{{"family", "circle-linear"}, {"degree", s.degree}};
                break;
            case system_family::circle_perturbed:
                j = json{{"family", "circle-perturbed"}, {"degree", s.degree}, {"eps", s.eps}};
                break;
            case system_family::polynomial:
                j = json{{"family", "polynomial"},
                         {"c", cplx_to_json(s.c)},
                         {"R", s.R},
                         {"inner", s.inner_r}};
                if (s.certificate && s.certificate->grid > 0) j["grid"] = s.certificate->grid;
                break;
            case system_family::graph: {
                json edges = json::array();
                for (const auto& [t, h] : s.graph->edges) edges.push_back({t, h});
                j = json{{"family", "graph"}, {"vertices", s.graph->vertices}, {"edges", edges}};
                break;
            }
            default:
                throw input_error("this system family has no serialized form");
        }
    } else {
        throw input_error("empty system handle");
    }
    return j.dump(2);
}

system_handle system_from_json_text(const std::string& text) {
    return translated([&] {
    json j = parse(text);
    std::string family = j.value("family", std::string{});
    if (family.empty()) throw input_error("system JSON needs a \"family\" field");
    system_handle out;
    if (family == "circle-linear") {
        out.expanding = make_circle_system(j.at("degree").get<int>(), 0.0);
    } else if (family == "circle-perturbed") {
        out.expanding =
            make_circle_system(j.at("degree").get<int>(), j.at("eps").get<double>());
    } else if (family == "polynomial") {
        double R = j.at("R").get<double>();
        long grid = j.value("grid", 512L);
        if (j.contains("inner"))
            out.expanding =
                make_quadratic_system(cplx_from_json(j.at("c")), j.at("inner").get<double>(),
                                      R, grid);
        else
            out.expanding = make_polynomial_system(cplx_from_json(j.at("c")), R, grid);
    } else if (family == "graph") {
        graph_data g;
        g.vertices = j.at("vertices").get<long>();
        for (const auto& e : j.at("edges"))
            g.edges.emplace_back(e.at(0).get<long>(), e.at(1).get<long>());
        out.expanding = make_graph_system(std::move(g));
    } else if (family == "henon") {
        henon_params hp;
        hp.c = cplx_from_json(j.at("c"));
        hp.b = cplx_from_json(j.at("b"));
        hp.Rx = j.at("Rx").get<double>();
        hp.Ry = j.at("Ry").get<double>();
        hp.rx = j.value("rx", 0.0);
        out.crossed = make_henon_system(hp);
    } else {
        throw input_error("unknown system family '" + family + "'");
    }
    return out;
    });
}

std::string orbit_to_json(const orbit_seg& o) {
    json pts = json::array();
    for (const auto& p : o.points) pts.push_back(pt_to_json(p));
    json j{{"window", window_to_json(o.window)}, {"points", pts}};
    return j.dump(2);
}

orbit_seg orbit_from_json_text(const std::string& text) {
    return translated([&] {
    json j = parse(text);
    orbit_seg o;
    o.window = window_from_json(j.at("window"));
    for (const auto& p : j.at("points")) o.points.push_back(pt_from_json(p));
    if (o.points.size() != static_cast<std::size_t>(o.window.size()))
        throw input_error("orbit point count does not match its window");
    return o;
    });
}

std::string hpo_to_json(const homotopy_pseudo_orbit& h) {
    json pts = json::array();
    for (const auto& p : h.points) pts.push_back(pt_to_json(p));
    json paths = json::array();
    for (const auto& a : h.paths) {
        json verts = json::array();
        for (const auto& v : a.vertices()) verts.push_back(pt_to_json(v));
        paths.push_back(verts);
    }
    json j{{"window", window_to_json(h.window)}, {"C", h.C}, {"points", pts},
           {"paths", paths}};
    if (!h.paths.empty()) j["space"] = space_to_json(h.paths.front().domain_space());
    return j.dump(2);
}

homotopy_pseudo_orbit hpo_from_json_text(const std::string& text) {
    return translated([&] {
    json j = parse(text);
    homotopy_pseudo_orbit h;
    h.window = window_from_json(j.at("window"));
    h.C = j.value("C", 0.0);
    for (const auto& p : j.at("points")) h.points.push_back(pt_from_json(p));
    if (h.points.size() != static_cast<std::size_t>(h.window.size()))
        throw input_error("pseudo-orbit point count does not match its window");
    const json& paths = j.at("paths");
    if (!paths.empty()) {
        if (!j.contains("space"))
            throw input_error("pseudo-orbit with paths needs its \"space\"");
        space sp = space_from_json(j.at("space"));
        for (const auto& a : paths) {
            std::vector<pt> verts;
            for (const auto& v : a) verts.push_back(pt_from_json(v));
            h.paths.emplace_back(sp, std::move(verts));
        }
    }
    if (h.paths.size() + 1 != h.points.size())
        throw input_error("pseudo-orbit needs one connecting path per adjacent pair");
    return h;
    });
}

std::string orbit_to_csv(const orbit_seg& o) {
    std::string out = "index,re_x,im_x,re_y,im_y\n";
    char buf[160];
    for (long i = o.window.lo; i <= o.window.hi; ++i) {
        const pt& p = o.at(i);
        std::snprintf(buf, sizeof buf, "%ld,%.15g,%.15g,%.15g,%.15g\n", i, p.x.real(),
                      p.x.imag(), p.y.real(), p.y.imag());
        out += buf;
    }
    return out;
}

orbit_seg orbit_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,", 0) != 0)
        throw input_error("orbit CSV needs the header row");
    orbit_seg o;
    bool first = true;
    long prev = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long idx;
        double rx, ix, ry, iy;
        if (std::sscanf(line.c_str(), "%ld,%lg,%lg,%lg,%lg", &idx, &rx, &ix, &ry, &iy) != 5)
            throw input_error("malformed orbit CSV row: " + line);
        if (first) {
            o.window.lo = idx;
            first = false;
        } else if (idx != prev + 1) {
            throw input_error("orbit CSV indices must be consecutive");
        }
        prev = idx;
        o.points.push_back(pt{cplx{rx, ix}, cplx{ry, iy}});
    }
    if (first) throw input_error("orbit CSV has no rows");
    o.window.hi = prev;
    return o;
}

std::string trace_to_csv(const shadow_trace& t) {
    std::string out = "stage,max_length,max_defect\n";
    char buf[120];
    for (const auto& s : t.stages) {
        std::snprintf(buf, sizeof buf, "%ld,%.15g,%.15g\n", s.stage, s.max_length,
                      s.max_defect);
        out += buf;
    }
    return out;
}

std::string read_text_file(const std::string& file_path) {
    std::ifstream in(file_path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + file_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& file_path, const std::string& content) {
    std::ofstream out(file_path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + file_path);
    out << content;
}

} // namespace shadowing
