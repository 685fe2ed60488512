#pragma once
// Data-file emitters. Floats are serialized with 12 significant digits
// so golden-file comparisons survive round-tripping, and every file is
// written atomically (temp file + rename). Identical inputs produce
// byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lambdacav/dynamics.hpp"
#include "lambdacav/eigenstructure.hpp"
#include "lambdacav/sweep.hpp"

namespace lambdacav {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline const char* sweep_csv_header() {
    return "delta_p,omega_L,delta_L,n_cav,g2_zero,log10_g2_zero,pop_g,pop_e,pop_m,converged";
}

inline std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out(sweep_csv_header());
    out += '\n';
    for (const auto& r : records) {
        out += format_double(r.delta_p);
        out += ',';
        out += format_double(r.omega_L);
        out += ',';
        out += format_double(r.delta_L);
        out += ',';
        out += format_optional(r.n_cav);
        out += ',';
        out += format_optional(r.g2_zero);
        out += ',';
        out += format_optional(r.log10_g2_zero);
        out += ',';
        out += format_optional(r.pop_g);
        out += ',';
        out += format_optional(r.pop_e);
        out += ',';
        out += format_optional(r.pop_m);
        out += ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline std::string to_jsonl(const std::vector<SweepRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["delta_p"] = r.delta_p;
        j["omega_L"] = r.omega_L;
        j["delta_L"] = r.delta_L;
        const auto put = [&j](const char* key, const std::optional<double>& v) {
            if (v)
                j[key] = *v;
            else
                j[key] = nullptr;
        };
        put("n_cav", r.n_cav);
        put("g2_zero", r.g2_zero);
        put("log10_g2_zero", r.log10_g2_zero);
        put("pop_g", r.pop_g);
        put("pop_e", r.pop_e);
        put("pop_m", r.pop_m);
        j["converged"] = r.converged;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<LadderRow>& rows) {
    std::string out = "omega_L,n,lambda_minus,lambda_zero,lambda_plus\n";
    for (const auto& r : rows) {
        out += format_double(r.omega_L);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.lambda_minus);
        out += ',';
        out += format_double(r.lambda_zero);
        out += ',';
        out += format_double(r.lambda_plus);
        out += '\n';
    }
    return out;
}

inline std::string to_jsonl(const std::vector<LadderRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["omega_L"] = r.omega_L;
        j["n"] = r.n;
        j["lambda_minus"] = r.lambda_minus;
        j["lambda_zero"] = r.lambda_zero;
        j["lambda_plus"] = r.lambda_plus;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<G2Point>& points) {
    std::string out = "tau,g2_tau\n";
    for (const auto& p : points) {
        out += format_double(p.tau);
        out += ',';
        out += format_double(p.g2);
        out += '\n';
    }
    return out;
}

inline std::string to_jsonl(const std::vector<G2Point>& points) {
    std::string out;
    for (const auto& p : points) {
        nlohmann::ordered_json j;
        j["tau"] = p.tau;
        j["g2_tau"] = p.g2;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string to_json(const MagicResult& m) {
    nlohmann::ordered_json j;
    j["omega_L_star"] = m.omega_L_star;
    j["delta_p_star"] = m.delta_p_star;
    j["g2_min"] = m.g2_min;
    j["n_cav_at_min"] = m.n_cav_at_min;
    j["photon_floor"] = m.photon_floor;
    return j.dump(2) + "\n";
}

}  // namespace lambdacav
