#pragma once

#include <string>

#include <json.hpp>

#include "sqckit/certificate.hpp"
#include "sqckit/certify.hpp"

namespace sqckit {

inline constexpr const char* kToolName = "sqckit";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kNonProofDisclaimer =
    "no violation found within the stated budget; absence of a witness is evidence, not a proof";

/// Bit-exact hexadecimal float rendering ("%a"), locale-independent.
std::string hex_float(double v);

nlohmann::json vec_to_json(const Vec& v);
/// Vector with a parallel hex-float rendering for exact reproduction.
nlohmann::json point_report(const Vec& v);
nlohmann::json triple_report(const Triple& t);
nlohmann::json witness_report(const ViolationWitness& w);
nlohmann::json certificate_report(const SigmaCertificate& c);

/// Shared report skeleton: tool block and config echo.
nlohmann::json report_header(const nlohmann::json& config_echo, bool with_timestamp);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sqckit
