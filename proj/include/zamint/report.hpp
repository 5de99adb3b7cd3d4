#pragma once

// The machine-readable verification record shared by every verify_*
// operation and the CLI. JSON keys are emitted in a fixed order so that
// reports are byte-diffable.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zamint/complex_io.hpp"
#include "zamint/params.hpp"

namespace zamint {

struct Report {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;  // ordered echo
    Estimate lhs;
    Complex rhs{};
    double rel_error = 0.0;
    double sigmas = 0.0;    // deviation / reported error; 0 when error == 0 and exact
    bool stochastic = false;
    bool pass = false;
    std::int64_t runtime_ms = 0;
    std::uint64_t seed = 0;

    /// Fill rel_error / sigmas / pass from lhs vs rhs.
    /// Stochastic estimates pass on sigmas <= threshold, deterministic
    /// ones on rel_error <= tolerance.
    void score(double tolerance, double sigmas_threshold) {
        const double dev = std::abs(lhs.value - rhs);
        const double scale = std::max(std::abs(rhs), 1e-300);
        rel_error = dev / scale;
        stochastic = lhs.method == Method::mc || lhs.method == Method::qmc;
        if (lhs.error > 0.0)
            sigmas = dev / lhs.error;
        else
            sigmas = (dev == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
        pass = stochastic ? sigmas <= sigmas_threshold : rel_error <= tolerance;
    }
};

inline nlohmann::ordered_json report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    nlohmann::ordered_json p;
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = std::move(p);
    j["lhs"] = {{"value", {r.lhs.value.real(), r.lhs.value.imag()}},
                {"error", r.lhs.error},
                {"count", r.lhs.count},
                {"method", method_name(r.lhs.method)}};
    j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    j["rel_error"] = r.rel_error;
    if (r.stochastic)
        j["sigmas"] = r.sigmas;
    else
        j["sigmas"] = nullptr;
    j["pass"] = r.pass;
    j["runtime_ms"] = r.runtime_ms;
    j["seed"] = r.seed;
    return j;
}

inline std::string report_csv_header() {
    return "check,params,lhs_re,lhs_im,lhs_error,count,method,rhs_re,rhs_im,"
           "rel_error,sigmas,pass,runtime_ms,seed";
}

inline std::string report_csv_row(const Report& r) {
    std::string params;
    for (const auto& [k, v] : r.params) {
        if (!params.empty()) params += ';';
        params += k + "=" + v;
    }
    std::string row = r.check;
    row += ",\"" + params + "\"";
    row += "," + format_double(r.lhs.value.real());
    row += "," + format_double(r.lhs.value.imag());
    row += "," + format_double(r.lhs.error);
    row += "," + std::to_string(r.lhs.count);
    row += ",";
    row += method_name(r.lhs.method);
    row += "," + format_double(r.rhs.real());
    row += "," + format_double(r.rhs.imag());
    row += "," + format_double(r.rel_error);
    row += ",";
    row += r.stochastic ? format_double(r.sigmas) : std::string("");
    row += ",";
    row += r.pass ? "true" : "false";
    row += "," + std::to_string(r.runtime_ms);
    row += "," + std::to_string(r.seed);
    return row;
}

}  // namespace zamint
