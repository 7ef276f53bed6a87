#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "io.hpp"
#include <morrey/errors.hpp>

namespace morrey::io
{

namespace
{

double read_number(const json &j, const char *key, bool allow_null_as_inf)
{
    if (!j.contains(key)) {
        throw invalid_argument(std::string("profile segment is missing \"") + key + "\"");
    }
    const auto &v = j.at(key);
    if (v.is_null() && allow_null_as_inf) {
        return infinity;
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (allow_null_as_inf && (s == "inf" || s == "Infinity")) {
            return infinity;
        }
    }
    if (!v.is_number()) {
        throw invalid_argument(std::string("profile field \"") + key + "\" must be a number");
    }
    return v.get<double>();
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

} // namespace

json number(double v)
{
    if (std::isnan(v)) {
        return nullptr;
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

RadialProfile profile_from_json(const json &j)
{
    const json *segments = &j;
    double faithful = infinity;
    if (j.is_object()) {
        if (!j.contains("segments")) {
            throw invalid_argument("profile object needs a \"segments\" array");
        }
        segments = &j.at("segments");
        if (j.contains("faithful_radius") && !j.at("faithful_radius").is_null()) {
            faithful = read_number(j, "faithful_radius", true);
        }
    }
    if (!segments->is_array()) {
        throw invalid_argument("profile must be an array of segments");
    }
    std::vector<PowerSegment> out;
    out.reserve(segments->size());
    for (const auto &s : *segments) {
        if (!s.is_object()) {
            throw invalid_argument("profile segment must be an object");
        }
        out.push_back({read_number(s, "lo", false), read_number(s, "hi", true), read_number(s, "coeff", false),
                       read_number(s, "exponent", false)});
    }
    return RadialProfile(std::move(out), faithful);
}

json profile_to_json(const RadialProfile &profile)
{
    json segs = json::array();
    for (const auto &s : profile.segments()) {
        segs.push_back({{"lo", s.lo},
                        {"hi", std::isinf(s.hi) ? json(nullptr) : json(s.hi)},
                        {"coeff", s.coeff},
                        {"exponent", s.exponent}});
    }
    if (!profile.truncated()) {
        return segs;
    }
    return {{"segments", std::move(segs)}, {"faithful_radius", profile.faithful_radius()}};
}

json verdict_to_json(const NormVerdict &v)
{
    json out{{"kind", std::string(to_string(v.kind))}};
    if (v.is_finite()) {
        out["value"] = number(v.value);
        json w{{"radius", number(v.witness.radius)}, {"center", number(v.witness.center)}};
        if (!std::isnan(v.witness.level)) {
            w["level"] = number(v.witness.level);
        }
        out["witness"] = std::move(w);
    } else {
        out["regime"] = std::string(to_string(v.regime));
        out["growth"] = number(v.growth);
        out["log_growth"] = v.log_growth;
    }
    return out;
}

json audit_to_json(const AuditResult &a)
{
    return {{"max_offcenter", number(a.max_local)},
            {"center", number(a.center)},
            {"radius", number(a.radius)},
            {"centered_value", number(a.centered_value)},
            {"samples", a.samples},
            {"slack", audit_slack},
            {"flag", a.flag}};
}

json report_to_json(const ExperimentReport &r)
{
    json params = json::object();
    for (const auto &[k, v] : r.parameters) {
        params[k] = number(v);
    }
    json labels = json::object();
    for (const auto &[k, v] : r.labels) {
        labels[k] = v;
    }
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"kind", c.kind},
                          {"value", c.kind == "time" ? json(nullptr) : number(c.value)},
                          {"expected", number(c.expected)},
                          {"tolerance", number(c.tolerance)},
                          {"pass", c.pass}});
    }
    json out{{"id", r.id},
             {"title", r.title},
             {"tool_version", tool_version},
             {"parameters", std::move(params)},
             {"labels", std::move(labels)},
             {"checks", std::move(checks)},
             {"pass", r.passed()}};
    if (!r.notes.empty()) {
        out["notes"] = r.notes;
    }
    return out;
}

std::string checks_csv(const ExperimentReport &r)
{
    std::ostringstream os;
    os << "experiment,check,kind,value,expected,tolerance,pass\n";
    for (const auto &c : r.checks) {
        const std::string value = c.kind == "time" ? "" : format_double(c.value);
        os << csv_field(r.id) << ',' << csv_field(c.name) << ',' << c.kind << ',' << value << ','
           << format_double(c.expected) << ',' << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false")
           << '\n';
    }
    return os.str();
}

std::vector<std::filesystem::path> write_report_csv(const std::filesystem::path &dir, const ExperimentReport &r)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    auto path = dir / (r.id + "_checks.csv");
    write_file(path, checks_csv(r));
    written.push_back(path);

    std::ostringstream params;
    params << "experiment,parameter,value\n";
    for (const auto &[k, v] : r.parameters) {
        params << csv_field(r.id) << ',' << csv_field(k) << ',' << format_double(v) << '\n';
    }
    for (const auto &[k, v] : r.labels) {
        params << csv_field(r.id) << ',' << csv_field(k) << ',' << csv_field(v) << '\n';
    }
    path = dir / (r.id + "_parameters.csv");
    write_file(path, params.str());
    written.push_back(path);

    for (const auto &t : r.tables) {
        std::string name = t.name;
        for (char &c : name) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
                c = '_';
            }
        }
        std::ostringstream os;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << csv_field(t.columns[i]);
        }
        os << '\n';
        for (const auto &row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << format_double(row[i]);
            }
            os << '\n';
        }
        path = dir / (r.id + "_" + name + ".csv");
        write_file(path, os.str());
        written.push_back(path);
    }
    return written;
}

} // namespace morrey::io
