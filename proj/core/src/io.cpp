#include "ckn/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace ckn::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "a,b,region,c_A,c_B,c_sharp,verified,gap\n";
    for (const auto& row : rows) {
        out += format_double(row.a);
        out += ',';
        out += format_double(row.b);
        out += ',';
        out += to_string(row.region);
        out += ',';
        out += format_double(row.c_A);
        out += ',';
        out += format_double(row.c_B);
        out += ',';
        out += format_double(row.c_sharp);
        out += ',';
        if (row.verified) out += format_double(*row.verified);
        out += ',';
        if (row.gap) out += format_double(*row.gap);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Params& p) {
    return {{"N", p.N}, {"a", p.a}, {"b", p.b}};
}

nlohmann::json to_json(const RateFit& fit) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [eps, value] : fit.points) pts.push_back({{"eps", eps}, {"value", value}});
    return {{"exponent", fit.exponent},
            {"amplitude", fit.amplitude},
            {"r_squared", fit.r_squared},
            {"points", pts}};
}

nlohmann::json to_json(const VerifyReport& report) {
    return {{"schema_version", 1},
            {"params", to_json(report.params)},
            {"region", to_string(report.region)},
            {"E_tilde", report.E_tilde},
            {"c_sharp", report.c_sharp},
            {"gap", report.gap},
            {"err", report.err},
            {"tol", report.tol},
            {"pass", report.pass}};
}

nlohmann::json to_json(const std::vector<ScanRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j = {{"a", row.a},       {"b", row.b},
                            {"region", to_string(row.region)},
                            {"c_A", row.c_A},   {"c_B", row.c_B},
                            {"c_sharp", row.c_sharp}};
        if (row.verified) j["verified"] = *row.verified;
        if (row.gap) j["gap"] = *row.gap;
        if (!row.error.empty()) j["error"] = row.error;
        arr.push_back(std::move(j));
    }
    return {{"schema_version", 1}, {"rows", arr}};
}

nlohmann::json to_json(const HardyRateReport& report) {
    return {{"schema_version", 1},
            {"params", to_json(report.params)},
            {"c_sharp", report.c_sharp},
            {"fit_remainder", to_json(report.fit_remainder)},
            {"fit_denominator", to_json(report.fit_denominator)},
            {"fit_gap", to_json(report.fit_gap)},
            {"quotients", report.quotients}};
}

nlohmann::json to_json(const DensityReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows)
        rows.push_back({{"eps", row.eps},
                        {"diff_norm", row.diff_norm},
                        {"cross_term", row.cross_term}});
    return {{"schema_version", 1},
            {"params", to_json(report.params)},
            {"family", report.family == Family::A ? "A" : "B"},
            {"case", report.paper_case},
            {"cross_fit", to_json(report.cross_fit)},
            {"rows", rows},
            {"cross_decays", report.cross_decays},
            {"monotone_tail", report.monotone_tail}};
}

nlohmann::json to_json(const AuditReport& report) {
    nlohmann::json j = {{"schema_version", 1},
                        {"params", to_json(report.params)},
                        {"c_A", report.c_A},
                        {"c_B", report.c_B},
                        {"c_sharp", report.c_sharp},
                        {"trials", report.trials},
                        {"seed", report.seed},
                        {"min_quotient", report.min_quotient},
                        {"violations_A", report.violations_A},
                        {"violations_B", report.violations_B}};
    if (std::isfinite(report.extremizer_quotient))
        j["extremizer_quotient"] = report.extremizer_quotient;
    return j;
}

nlohmann::json to_json(const EigenResult& result) {
    return {{"schema_version", 1},
            {"lambda", result.lambda_min},
            {"residual", result.residual},
            {"iterations", result.iterations},
            {"quotient_check", result.quotient_check},
            {"line_c", result.line_c},
            {"grid",
             {{"s_min", result.grid.s_min}, {"s_max", result.grid.s_max}, {"n", result.grid.n}}}};
}

nlohmann::json to_json(const ConvergeStudy& study) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : study.rows)
        rows.push_back({{"h", row.h},
                        {"s_min", row.s_min},
                        {"s_max", row.s_max},
                        {"n", row.n},
                        {"lambda", row.lambda}});
    return {{"schema_version", 1},
            {"rows", rows},
            {"richardson", study.richardson},
            {"order", study.order}};
}

void write_grid_profile_csv(std::ostream& os, const Profile& grid_profile,
                            const std::optional<Params>& params) {
    const Profile::Grid* grid = grid_profile.as_grid();
    if (!grid)
        throw InvalidSpecError("write_grid_profile_csv: profile is not grid-backed");
    nlohmann::json header = {{"schema_version", 1},
                             {"kind", "grid_profile"},
                             {"s_min", grid->s_min},
                             {"s_max", grid->s_max},
                             {"n", grid->values.size()}};
    if (params) header["params"] = to_json(*params);
    os << header.dump() << "\n";
    os << "s,value\n";
    const double h = (grid->s_max - grid->s_min) / static_cast<double>(grid->values.size() - 1);
    for (std::size_t i = 0; i < grid->values.size(); ++i)
        os << format_double(grid->s_min + static_cast<double>(i) * h) << ','
           << format_double(grid->values[i]) << "\n";
}

Profile read_grid_profile_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw InvalidSpecError("read_grid_profile_csv: missing JSON header line");
    const nlohmann::json header = nlohmann::json::parse(line);
    if (header.value("kind", "") != "grid_profile")
        throw InvalidSpecError("read_grid_profile_csv: not a grid_profile file");
    const double s_min = header.at("s_min").get<double>();
    const double s_max = header.at("s_max").get<double>();
    const std::size_t n = header.at("n").get<std::size_t>();

    if (!std::getline(is, line) || line.rfind("s,value", 0) != 0)
        throw InvalidSpecError("read_grid_profile_csv: missing column header");
    std::vector<double> values;
    values.reserve(n);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidSpecError("read_grid_profile_csv: malformed row");
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (values.size() != n)
        throw InvalidSpecError("read_grid_profile_csv: row count disagrees with header");
    return Profile::grid(s_min, s_max, std::move(values));
}

} // namespace ckn::io
