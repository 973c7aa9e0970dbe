#pragma once

#include "galspec/metastability.hpp"
#include "galspec/point.hpp"
#include "galspec/thermolimit.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace galspec::io {

// Minimal JSON document builder with deterministic output: object keys are
// emitted sorted, doubles with fixed 17-significant-digit formatting, exact
// rationals as "num/den" strings. Identical inputs give identical bytes.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::map<std::string, Json>;

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v_(i) {}
    Json(std::size_t i) : v_(static_cast<std::int64_t>(i)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(Array a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }

    Json& operator[](const std::string& key) { return std::get<Object>(v_)[key]; }
    void push_back(Json j) { std::get<Array>(v_).push_back(std::move(j)); }

    std::string dump() const;

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> v_;
    void emit(std::string& out) const;
};

std::string format_double(double d); // %.17g
std::uint64_t fnv1a(std::string_view data);
void write_file(const std::string& path, const std::string& content);

// Resolved run configuration; echoed verbatim into every output document.
struct RunConfig {
    std::string model = "girardeau";
    double rho = 1.0;
    double a = 0.0;       // scattering length; 0 means unset
    double a_tilde = 0.0; // coupling; derived from a when unset
    double v_lim = 0.0;
    double L_base = 1.0;
    int n_max = 3;
    int dim = 1;
    std::int64_t N_override = 0;
    double L_override = 0.0;
    double c_cap = 0.0;        // 0 means unset
    double d_cap = 0.0;        // 0 means unset
    int r_cap = 1;
    double rho_max = -1.0;     // negative means unset
    double energy_cap = 30.0;
    int window = 8;
    int cascade_max = 3;
    int jobs = 1;
    bool strict = false;
    bool vc_scan = true;
    double vc_step = 0.0; // 0 derives a model default
    unsigned seed = 12345;
    std::size_t budget = 10000000;
    std::size_t cloud_cap = 100000;
    double tol_rel = 1e-3;
    double tol_abs = 1e-9;
    double min_exponent = 0.9;
    std::string out; // output path prefix; empty writes JSON to stdout
};

// Fills derived fields and validates cross-constraints (a vs a_tilde).
void resolve(RunConfig& cfg);

Json to_json(const Rational& r);
Json to_json(const EigenPoint& pt);
Json to_json(const RunConfig& cfg);
Json to_json(const meta::Verdict& v, const RunConfig& cfg);
Json to_json(const thermo::SweepReport& report, const RunConfig& cfg);

std::string points_csv(const std::vector<EigenPoint>& points);
std::string trajectories_csv(const thermo::SweepReport& report);

} // namespace galspec::io
