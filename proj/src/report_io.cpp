#include "walkmem/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "walkmem/error.hpp"

namespace walkmem {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

double number_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

Method method_from(const std::string& s) {
    if (s == "exact") return Method::Exact;
    if (s == "simulated") return Method::Simulated;
    throw InvalidArgument("unknown method tag '" + s + "'");
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

json to_json(const MfptReport& report, bool include_pairs) {
    json j{{"network", report.network},
           {"strategy", report.strategy},
           {"method", to_string(report.method)},
           {"nodes", report.nodes},
           {"grmfpt", number_or_null(report.grmfpt)},
           {"normalization", report.normalization}};
    json targets = json::array();
    for (Eigen::Index z = 0; z < report.target_gmfpt.size(); ++z) targets.push_back(number_or_null(report.target_gmfpt(z)));
    j["target_gmfpt"] = std::move(targets);
    if (report.method == Method::Simulated) {
        j["pairs"] = report.pairs;
        j["trajectories"] = report.trajectories;
        j["censored"] = report.censored;
        j["standard_error"] = number_or_null(report.standard_error);
    }
    if (include_pairs && report.pair_mfpt.size() > 0) {
        json rows = json::array();
        for (Eigen::Index a = 0; a < report.pair_mfpt.rows(); ++a) {
            json row = json::array();
            for (Eigen::Index z = 0; z < report.pair_mfpt.cols(); ++z) row.push_back(number_or_null(report.pair_mfpt(a, z)));
            rows.push_back(std::move(row));
        }
        j["pair_mfpt"] = std::move(rows);
    }
    return j;
}

MfptReport report_from_json(const json& j) {
    MfptReport r;
    r.network = j.at("network").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.method = method_from(j.at("method").get<std::string>());
    r.nodes = j.at("nodes").get<NodeId>();
    r.grmfpt = number_from(j.at("grmfpt"));
    r.normalization = j.at("normalization").get<std::string>();
    const auto& targets = j.at("target_gmfpt");
    r.target_gmfpt.resize(static_cast<Eigen::Index>(targets.size()));
    for (std::size_t z = 0; z < targets.size(); ++z) r.target_gmfpt(static_cast<Eigen::Index>(z)) = number_from(targets[z]);
    if (r.method == Method::Simulated) {
        r.pairs = j.at("pairs").get<std::int64_t>();
        r.trajectories = j.at("trajectories").get<std::int64_t>();
        r.censored = j.at("censored").get<std::int64_t>();
        r.standard_error = number_from(j.at("standard_error"));
    }
    if (j.contains("pair_mfpt")) {
        const auto& rows = j["pair_mfpt"];
        const auto n = static_cast<Eigen::Index>(rows.size());
        r.pair_mfpt.resize(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index z = 0; z < n; ++z) r.pair_mfpt(a, z) = number_from(rows[a][z]);
    }
    return r;
}

std::string to_csv(const MfptReport& report) {
    std::ostringstream out;
    out << "target,gmfpt\n";
    for (Eigen::Index z = 0; z < report.target_gmfpt.size(); ++z) out << z << ',' << format_double(report.target_gmfpt(z)) << '\n';
    out << "all," << format_double(report.grmfpt) << '\n';
    return out.str();
}

json to_json(const NetworkStats& s, const std::string& name) {
    return json{{"name", name},
                {"nodes", s.nodes},
                {"links", s.links},
                {"density", s.density},
                {"mean_degree", s.mean_degree},
                {"clustering", s.clustering},
                {"mean_path_length", s.mean_path_length},
                {"diameter", s.diameter}};
}

}  // namespace walkmem
