// SPDX-License-Identifier: Apache-2.0
//
// Certificate assembly and the command-line front end.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lt4/family_checker.hpp"

namespace lt4 {

inline constexpr const char* kToolName = "lt4cert";
inline constexpr const char* kToolVersion = "0.1.0";

/// margin >= 0 means the audited inequality holds with that much room.
struct AuditEntry {
    std::string name;
    std::string grid;
    bool verdict = false;
    double worst_margin = 0.0;
};

struct BoundsCertificate {
    double sphere_lower_asymptotic = 0.0;
    double sphere_lower_best_finite = 0.0;
    std::int64_t sphere_lower_best_finite_m = 0;
    double sphere_upper = 0.0;
    double torus_lower_asymptotic = 0.0;
    double torus_lower_best_finite = 0.0;  // mean-zero box family
    std::int64_t torus_lower_best_finite_m = 0;
    double torus_upper = 0.0;
    double dual_l_sphere_lower = 0.0;
    double dual_l_sphere_upper = 0.0;
    double dual_l_torus_lower = 0.0;
    double dual_l_torus_upper = 0.0;
    double delta_crossover_e_star = 0.0;
    double em_linear_intercept = 0.0;
    double em_linear_claimed = 0.0;
    double em_linear_boundary_terms = 0.0;
    std::vector<AuditEntry> audits;

    bool verdict() const;
};

struct CertifyOptions {
    double series_tol = 1e-10;
    double nu_max = 20.0;
    double nu_step = 0.1;
    std::int64_t shells_max = 100;
    std::int64_t box_max = 20;
};

BoundsCertificate certify(const CertifyOptions& options = {});

nlohmann::json to_json(const BoundsCertificate& certificate);

/// Rounds every floating-point number to 12 significant digits and dumps
/// with sorted keys, so parse-then-dump reproduces the text exactly.
std::string canonical_dump(const nlohmann::json& document);

/// One "path,value" line per leaf, paths in JSON-pointer form.
std::string csv_dump(const nlohmann::json& document);

/// {"frequencies": [[k1,k2,k3,k4], ...], "coefficients": [[[re, im], ...], ...]}.
/// Throws std::invalid_argument on malformed input or a non-orthonormal family.
TrigFamily trig_family_from_json(const std::string& text);

/// Exit status: 0 all audits pass, 1 an audit failed, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lt4
