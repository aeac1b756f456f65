#include "nelab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nelab {

namespace {

nlohmann::ordered_json coords_to_json(const std::vector<Scalar>& coords, Field field) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Scalar& z : coords) {
        if (field == Field::real)
            arr.push_back(z.real());
        else
            arr.push_back(nlohmann::ordered_json::array({z.real(), z.imag()}));
    }
    return arr;
}

std::vector<Scalar> coords_from_json(const nlohmann::ordered_json& arr) {
    std::vector<Scalar> out;
    for (const auto& item : arr) {
        if (item.is_array())
            out.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
        else
            out.emplace_back(item.get<double>(), 0.0);
    }
    return out;
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "holds") return Verdict::holds;
    if (s == "fails") return Verdict::fails;
    if (s == "undecided") return Verdict::undecided;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

}  // namespace

nlohmann::ordered_json report_to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["space"] = r.space_dsl;
    j["field"] = to_string(r.field);
    j["params"] = r.params;
    j["verdict"] = to_string(r.verdict);
    j["max_violation"] = r.max_violation;
    nlohmann::ordered_json ws = nlohmann::ordered_json::array();
    for (const Witness& w : r.witnesses) {
        nlohmann::ordered_json jw;
        jw["functional"] = coords_to_json(w.f.coords, r.field);
        jw["vector"] = coords_to_json(w.x.coords, r.field);
        nlohmann::ordered_json vals;
        for (const auto& [k, v] : w.values) vals[k] = v;
        jw["values"] = vals;
        ws.push_back(std::move(jw));
    }
    j["witnesses"] = ws;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["elapsed_ms"] = r.elapsed_ms;
    j["version"] = kVersion;
    return j;
}

CheckReport report_from_json(const nlohmann::ordered_json& j) {
    CheckReport r;
    r.check = j.at("check").get<std::string>();
    r.space_dsl = j.at("space").get<std::string>();
    r.field = parse_field(j.at("field").get<std::string>());
    r.params = j.at("params");
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.max_violation = j.at("max_violation").get<double>();
    for (const auto& jw : j.at("witnesses")) {
        Witness w;
        w.f = Functional(coords_from_json(jw.at("functional")));
        w.x = Vector(coords_from_json(jw.at("vector")));
        for (const auto& [k, v] : jw.at("values").items())
            w.values.emplace_back(k, v.get<double>());
        r.witnesses.push_back(std::move(w));
    }
    r.samples = j.at("samples").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tolerance = j.at("tolerance").get<double>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

std::string csv_header() {
    return "check,space,field,verdict,max_violation,samples,seed,tolerance,witness_index,"
           "functional,vector,values";
}

namespace {

std::string join_coords(const std::vector<Scalar>& coords, Field field) {
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ";";
        out += field == Field::real ? format_scalar(Scalar(coords[i].real(), 0.0))
                                    : format_scalar(coords[i]);
    }
    return out;
}

}  // namespace

std::string report_to_csv(const CheckReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << csv_header() << "\n";
    auto prefix = [&]() {
        os << r.check << "," << r.space_dsl << "," << to_string(r.field) << ","
           << to_string(r.verdict) << "," << r.max_violation << "," << r.samples << "," << r.seed
           << "," << r.tolerance << ",";
    };
    if (r.witnesses.empty()) {
        prefix();
        os << ",,,\n";
        return os.str();
    }
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        const Witness& w = r.witnesses[i];
        prefix();
        os << i << "," << join_coords(w.f.coords, r.field) << ","
           << join_coords(w.x.coords, r.field) << ",";
        for (std::size_t k = 0; k < w.values.size(); ++k) {
            if (k) os << ";";
            os << w.values[k].first << "=" << w.values[k].second;
        }
        os << "\n";
    }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out.good()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

nlohmann::ordered_json strip_timing(nlohmann::ordered_json j) {
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [k, v] : j.items()) v = strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timing(v);
    }
    return j;
}

}  // namespace nelab
