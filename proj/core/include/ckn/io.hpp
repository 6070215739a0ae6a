#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckn/eigmin.hpp"
#include "ckn/experiments.hpp"

namespace ckn::io {

/// Fixed 9-significant-digit rendering; byte-identical across runs.
std::string format_double(double v);

/// CSV with header `a,b,region,c_A,c_B,c_sharp,verified,gap`; absent
/// verification fields are left empty.
std::string scan_csv(const std::vector<ScanRow>& rows);

nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const RateFit& fit);
nlohmann::json to_json(const VerifyReport& report);
nlohmann::json to_json(const std::vector<ScanRow>& rows);
nlohmann::json to_json(const HardyRateReport& report);
nlohmann::json to_json(const DensityReport& report);
nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const EigenResult& result); // grid spec + diagnostics
nlohmann::json to_json(const ConvergeStudy& study);

/// Grid-profile CSV: a JSON header line (grid spec, optional params), then a
/// `s,value` header and one row per node.
void write_grid_profile_csv(std::ostream& os, const Profile& grid_profile,
                            const std::optional<Params>& params = std::nullopt);
Profile read_grid_profile_csv(std::istream& is);

} // namespace ckn::io
