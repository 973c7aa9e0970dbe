#include "galspec/io.hpp"

#include "galspec/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace galspec::io {

std::string format_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void Json::emit(std::string& out) const {
    struct V {
        std::string& out;
        void operator()(std::nullptr_t) const { out += "null"; }
        void operator()(bool b) const { out += b ? "true" : "false"; }
        void operator()(std::int64_t i) const { out += std::to_string(i); }
        void operator()(double d) const { out += format_double(d); }
        void operator()(const std::string& s) const { escape_into(out, s); }
        void operator()(const Array& a) const {
            out += '[';
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) out += ',';
                a[i].emit(out);
            }
            out += ']';
        }
        void operator()(const Object& o) const {
            out += '{';
            bool first = true;
            for (const auto& [k, v] : o) {
                if (!first) out += ',';
                first = false;
                escape_into(out, k);
                out += ':';
                v.emit(out);
            }
            out += '}';
        }
    };
    std::visit(V{out}, v_);
}

std::string Json::dump() const {
    std::string out;
    emit(out);
    out += '\n';
    return out;
}

void resolve(RunConfig& cfg) {
    (void)thermo::model_from_name(cfg.model); // validates the name
    if (cfg.a > 0.0 && cfg.a_tilde > 0.0) {
        const double derived = hyl::coupling_from_scattering(cfg.a);
        if (std::abs(derived - cfg.a_tilde) > 1e-9 * std::abs(cfg.a_tilde))
            throw config_error("a and a-tilde are inconsistent (a_tilde = 8*pi*a required)");
    } else if (cfg.a > 0.0) {
        cfg.a_tilde = hyl::coupling_from_scattering(cfg.a);
    } else if (cfg.a_tilde <= 0.0) {
        cfg.a_tilde = 1.0;
    }
    if (cfg.rho <= 0.0) throw config_error("rho must be positive");
    if (cfg.dim != 1 && cfg.dim != 3) throw config_error("dim must be 1 or 3");
    if (cfg.jobs < 1) throw config_error("jobs must be >= 1");
    if (cfg.r_cap < 1) throw config_error("r must be >= 1");
}

Json to_json(const Rational& r) { return Json(r.str()); }

Json to_json(const EigenPoint& pt) {
    Json j = Json::object();
    j["E"] = pt.energy_value;
    j["E_rest"] = pt.energy_rest_value;
    j["P"] = pt.momentum_value;
    j["label"] = pt.label;
    j["exact"] = pt.exact;
    if (pt.has_exact) {
        Json rat = Json::object();
        rat["kin"] = to_json(pt.energy.kin);
        rat["pot"] = to_json(pt.energy.pot);
        j["E_rat"] = std::move(rat);
        Json coords = Json::array();
        for (int d = 0; d < pt.momentum.dim; ++d) coords.push_back(pt.momentum.coords[d]);
        j["P_coords"] = std::move(coords);
    }
    return j;
}

Json to_json(const RunConfig& cfg) {
    Json j = Json::object();
    j["model"] = cfg.model;
    j["rho"] = cfg.rho;
    j["a"] = cfg.a > 0.0 ? Json(cfg.a) : Json(nullptr);
    j["a_tilde"] = cfg.a_tilde;
    j["v"] = cfg.v_lim;
    j["L0"] = cfg.L_base;
    j["nmax"] = cfg.n_max;
    j["dim"] = cfg.dim;
    j["N"] = cfg.N_override > 0 ? Json(cfg.N_override) : Json(nullptr);
    j["L"] = cfg.L_override > 0.0 ? Json(cfg.L_override) : Json(nullptr);
    j["c"] = cfg.c_cap > 0.0 ? Json(cfg.c_cap) : Json(nullptr);
    j["d"] = cfg.d_cap > 0.0 ? Json(cfg.d_cap) : Json(nullptr);
    j["r"] = cfg.r_cap;
    j["rho_max"] = cfg.rho_max >= 0.0 ? Json(cfg.rho_max) : Json(nullptr);
    j["energy_cap"] = cfg.energy_cap;
    j["window"] = cfg.window;
    j["cascade_max"] = cfg.cascade_max;
    j["jobs"] = cfg.jobs;
    j["strict"] = cfg.strict;
    j["vc_scan"] = cfg.vc_scan;
    j["vc_step"] = cfg.vc_step > 0.0 ? Json(cfg.vc_step) : Json(nullptr);
    j["seed"] = static_cast<std::int64_t>(cfg.seed);
    j["budget"] = cfg.budget;
    j["cloud_cap"] = cfg.cloud_cap;
    j["tol_rel"] = cfg.tol_rel;
    j["tol_abs"] = cfg.tol_abs;
    j["min_exponent"] = cfg.min_exponent;
    j["out"] = cfg.out;
    return j;
}

Json to_json(const meta::Verdict& v, const RunConfig& cfg) {
    Json j = Json::object();
    j["meta"] = to_json(cfg);
    j["model"] = v.model;
    j["v_lim"] = v.v_lim;
    j["is_ness"] = v.is_ness;
    j["is_superfluid"] = v.is_superfluid;
    j["empirical_vc"] = v.empirical_vc;
    j["empirical_vc_extrapolated"] = v.empirical_vc_extrapolated;
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    j["witness_label"] = v.witness_label;
    j["witness_eps"] = v.witness_eps;
    j["r"] = v.r_used;
    j["tolerance"] = v.tolerance;
    return j;
}

Json to_json(const thermo::SweepReport& report, const RunConfig& cfg) {
    Json j = Json::object();
    j["meta"] = to_json(cfg);
    Json sizes = Json::array();
    for (const auto& s : report.sizes) {
        Json e = Json::object();
        e["n"] = s.n_index;
        e["L"] = s.side;
        e["N"] = s.N;
        Json vc = Json::array();
        for (int d = 0; d < report.config.dim; ++d) vc.push_back(s.v_coords[d]);
        e["v_coords"] = std::move(vc);
        e["v"] = s.v_value;
        sizes.push_back(std::move(e));
    }
    j["sizes"] = std::move(sizes);

    Json trajectories = Json::array();
    for (const auto& tr : report.summary.trajectories) {
        Json t = Json::object();
        t["label"] = tr.label;
        t["filtered"] = tr.in_filtered_set;
        Json samples = Json::array();
        for (std::size_t i = 0; i < tr.sides.size(); ++i) {
            Json s = Json::object();
            s["L"] = tr.sides[i];
            s["N"] = tr.Ns[i];
            s["E"] = tr.energies[i];
            s["P"] = tr.momenta[i];
            samples.push_back(std::move(s));
        }
        t["samples"] = std::move(samples);
        trajectories.push_back(std::move(t));
    }
    j["trajectories"] = std::move(trajectories);

    Json limits = Json::array();
    for (const auto& lp : report.limits) {
        Json e = Json::object();
        e["label"] = lp.label;
        e["eps"] = lp.eps;
        e["P"] = lp.momentum;
        e["q"] = lp.exponent;
        e["rms"] = lp.rms;
        e["converged"] = lp.converged;
        e["P_converged"] = lp.momentum_converged;
        e["constant"] = lp.constant;
        limits.push_back(std::move(e));
    }
    j["limits"] = std::move(limits);

    Json clouds = Json::array();
    for (std::size_t si = 0; si < report.clouds.size(); ++si) {
        Json c = Json::object();
        c["n"] = report.sizes[si].n_index;
        c["truncated"] = static_cast<bool>(report.cloud_truncated[si]);
        Json pts = Json::array();
        for (const auto& pt : report.clouds[si]) pts.push_back(to_json(pt));
        c["points"] = std::move(pts);
        clouds.push_back(std::move(c));
    }
    j["clouds"] = std::move(clouds);
    return j;
}

std::string points_csv(const std::vector<EigenPoint>& points) {
    std::string out = "E,P,label,exact\n";
    for (const auto& pt : points) {
        out += format_double(pt.energy_value);
        out += ',';
        out += format_double(pt.momentum_value);
        out += ',';
        out += pt.label;
        out += ',';
        out += pt.exact ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string trajectories_csv(const thermo::SweepReport& report) {
    std::string out = "label,L,N,E,P\n";
    for (const auto& tr : report.summary.trajectories) {
        for (std::size_t i = 0; i < tr.sides.size(); ++i) {
            out += tr.label;
            out += ',';
            out += format_double(tr.sides[i]);
            out += ',';
            out += std::to_string(tr.Ns[i]);
            out += ',';
            out += format_double(tr.energies[i]);
            out += ',';
            out += format_double(tr.momenta[i]);
            out += '\n';
        }
    }
    return out;
}

} // namespace galspec::io
