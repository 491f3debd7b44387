#include "kp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kp/experiments.hpp"

namespace kp {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

json config_to_json_obj(const Configuration& c) {
    c.validate();
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(p);
    return json{{"dim", c.dim}, {"points", pts}};
}

Configuration config_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw std::invalid_argument("configuration JSON: expected {\"dim\":d,\"points\":[...]}");
    Configuration c;
    c.dim = j.at("dim").get<int>();
    for (const auto& p : j.at("points")) {
        Point pt = p.get<Point>();
        for (double v : pt) require_finite(v, "configuration JSON");
        c.points.push_back(std::move(pt));
    }
    c.validate();
    return c;
}

json body_to_json_obj(const UncondBody& b) {
    b.validate();
    switch (b.family) {
        case UncondBody::Family::AxisBox:
            return json{{"family", "axis_box"}, {"half_extents", b.half_extents}};
        case UncondBody::Family::ScaledLpBall:
            return json{{"family", "scaled_lp_ball"}, {"half_extents", b.half_extents}, {"p", b.p}};
        case UncondBody::Family::CrossPolytope:
            return json{{"family", "cross_polytope"}, {"half_extents", b.half_extents}};
        case UncondBody::Family::Intersection: {
            json members = json::array();
            for (const auto& m : b.members) members.push_back(body_to_json_obj(m));
            return json{{"family", "intersection"}, {"members", members}};
        }
    }
    throw std::logic_error("body_to_json: unknown family");
}

UncondBody body_from_json_obj(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    UncondBody b;
    if (family == "axis_box") {
        b = UncondBody::axis_box(j.at("half_extents").get<std::vector<double>>());
    } else if (family == "scaled_lp_ball") {
        b = UncondBody::scaled_lp_ball(j.at("half_extents").get<std::vector<double>>(),
                                       j.at("p").get<double>());
    } else if (family == "cross_polytope") {
        b = UncondBody::cross_polytope(j.at("half_extents").get<std::vector<double>>());
    } else if (family == "intersection") {
        std::vector<UncondBody> members;
        for (const auto& m : j.at("members")) members.push_back(body_from_json_obj(m));
        b = UncondBody::intersection(std::move(members));
    } else {
        throw std::invalid_argument("body JSON: unknown family '" + family + "'");
    }
    for (double h : b.half_extents) require_finite(h, "body JSON");
    b.validate();
    return b;
}

} // namespace

std::string configuration_to_json(const Configuration& c) { return config_to_json_obj(c).dump(); }

Configuration configuration_from_json(const std::string& text) {
    return config_from_json_obj(json::parse(text));
}

std::string body_to_json(const UncondBody& b) { return body_to_json_obj(b).dump(); }

UncondBody body_from_json(const std::string& text) { return body_from_json_obj(json::parse(text)); }

std::string placed_bodies_to_json(const PlacedBodies& pb) {
    pb.validate();
    json bodies = json::array();
    for (const auto& b : pb.bodies) bodies.push_back(body_to_json_obj(b));
    return json{{"bodies", bodies}, {"translations", config_to_json_obj(pb.translations)}}.dump();
}

PlacedBodies placed_bodies_from_json(const std::string& text) {
    const json j = json::parse(text);
    PlacedBodies pb;
    for (const auto& b : j.at("bodies")) pb.bodies.push_back(body_from_json_obj(b));
    pb.translations = config_from_json_obj(j.at("translations"));
    pb.validate();
    return pb;
}

std::string records_to_csv(const std::vector<VerificationRecord>& records) {
    std::ostringstream out;
    out << "# schema=" << kResultsCsvSchema << "\n";
    out << "theorem,d,k,N,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,method,verdict,seed\n";
    for (const auto& r : records) {
        out << r.theorem << ',' << r.d << ',' << r.k << ',' << r.n << ',' << fmt17(r.lambda) << ','
            << r.trial << ',' << fmt17(r.lhs) << ',' << fmt17(r.lhs_err) << ',' << fmt17(r.rhs)
            << ',' << fmt17(r.rhs_err) << ',' << fmt17(r.margin) << ',' << to_string(r.method)
            << ',' << to_string(r.verdict) << ',' << r.seed << "\n";
    }
    return out.str();
}

std::vector<VerificationRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != std::string("# schema=") + kResultsCsvSchema)
        throw std::invalid_argument("results CSV: unknown or missing schema line");
    std::getline(in, line); // column header
    std::vector<VerificationRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 14) throw std::invalid_argument("results CSV: malformed row");
        VerificationRecord r;
        r.theorem = fields[0];
        r.d = std::stoi(fields[1]);
        r.k = std::stoi(fields[2]);
        r.n = std::stoi(fields[3]);
        r.lambda = std::stod(fields[4]);
        r.trial = std::stol(fields[5]);
        r.lhs = std::stod(fields[6]);
        r.lhs_err = std::stod(fields[7]);
        r.rhs = std::stod(fields[8]);
        r.rhs_err = std::stod(fields[9]);
        r.margin = std::stod(fields[10]);
        r.method = method_from_string(fields[11]);
        r.verdict = verdict_from_string(fields[12]);
        r.seed = std::stoull(fields[13]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string manifest_to_json(const RunManifest& m) {
    json params = json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    json j{{"command", m.command},
           {"params", params},
           {"seed", m.seed},
           {"artifact_version", m.artifact_version},
           {"created_utc", m.created_utc},
           {"outputs", m.outputs}};
    return j.dump(2);
}

} // namespace kp
