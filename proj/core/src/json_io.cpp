#include "vpent/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "vpent/errors.hpp"

namespace vpent {

namespace {

using nlohmann::json;

json parse_checked(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("JSON parse error: ") + e.what());
    }
}

double mass_value(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw input_error(where + ": cannot parse mass '" + s + "'");
        return v;
    }
    throw input_error(where + ": mass must be a number or decimal string");
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string("missing field '") + key + "'");
    return *it;
}

// Emit with sorted keys, no insignificant whitespace and 12-significant-digit
// reals. Infinities become the string "infinity".
void emit(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                emit(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                emit(v, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            if (std::isinf(j.get<double>()))
                out += j.get<double>() > 0 ? "\"infinity\"" : "\"-infinity\"";
            else
                out += format_real(j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

std::string emit_doc(const json& j) {
    std::string out;
    emit(j, out);
    out += '\n';
    return out;
}

}  // namespace

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

SetSystem parse_system(const std::string& text) {
    json j = parse_checked(text);
    std::vector<Atom> atoms;
    int i = 0;
    for (const auto& entry : field(j, "universe")) {
        std::string where = "universe[" + std::to_string(i++) + "]";
        if (!entry.contains("id") || !entry["id"].is_string())
            throw input_error(where + ": missing string 'id'");
        atoms.push_back({entry["id"].get<std::string>(), mass_value(field(entry, "mass"), where)});
    }
    Distribution universe(std::move(atoms));
    std::vector<std::vector<std::string>> sets;
    for (const auto& s : field(j, "sets")) {
        std::vector<std::string> ids;
        for (const auto& v : s) {
            if (!v.is_string()) throw input_error("sets: members must be symbol ids");
            ids.push_back(v.get<std::string>());
        }
        sets.push_back(std::move(ids));
    }
    return SetSystem::from_ids(std::move(universe), sets, SystemOrigin::explicit_family);
}

FiniteGraph parse_graph(const std::string& text) {
    json j = parse_checked(text);
    std::vector<std::string> vertices;
    for (const auto& v : field(j, "vertices")) {
        if (!v.is_string()) throw input_error("vertices must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw input_error("edges must be pairs");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    const json& pj = field(j, "pi");
    std::vector<Atom> atoms;
    for (const auto& v : vertices) {
        if (!pj.contains(v)) throw input_error("pi is missing vertex '" + v + "'");
        atoms.push_back({v, mass_value(pj.at(v), "pi." + v)});
    }
    return FiniteGraph(std::move(vertices), std::move(edges), Distribution(std::move(atoms)));
}

StepGraphon parse_step_graphon(const std::string& text) {
    json j = parse_checked(text);
    std::vector<double> masses;
    int i = 0;
    for (const auto& m : field(j, "masses"))
        masses.push_back(mass_value(m, "masses[" + std::to_string(i++) + "]"));
    std::vector<std::vector<bool>> support;
    for (const auto& row : field(j, "support")) {
        std::vector<bool> r;
        for (const auto& v : row) {
            if (v.is_boolean())
                r.push_back(v.get<bool>());
            else if (v.is_number())
                r.push_back(v.get<double>() != 0.0);
            else
                throw input_error("support entries must be 0/1 or booleans");
        }
        support.push_back(std::move(r));
    }
    return StepGraphon(std::move(masses), std::move(support));
}

std::vector<double> parse_mass_array(const std::string& text) {
    json j = parse_checked(text);
    if (!j.is_array()) throw input_error("expected a JSON array of masses");
    std::vector<double> out;
    int i = 0;
    for (const auto& v : j) out.push_back(mass_value(v, "[" + std::to_string(i++) + "]"));
    return out;
}

std::string serialize_system(const SetSystem& system) {
    json universe = json::array();
    for (const Atom& a : system.universe().atoms())
        universe.push_back({{"id", a.id}, {"mass", a.mass}});
    json sets = json::array();
    for (const auto& s : system.family()) {
        json ids = json::array();
        for (int x : s) ids.push_back(system.universe().id(x));
        sets.push_back(std::move(ids));
    }
    return emit_doc({{"universe", std::move(universe)}, {"sets", std::move(sets)}});
}

std::string serialize_graph(const FiniteGraph& graph) {
    json vertices = json::array();
    for (const auto& v : graph.vertices()) vertices.push_back(v);
    json edges = json::array();
    for (const auto& [u, v] : graph.edges())
        edges.push_back({graph.vertices()[u], graph.vertices()[v]});
    json pi = json::object();
    for (const Atom& a : graph.pi().atoms()) pi[a.id] = a.mass;
    return emit_doc(
        {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"pi", std::move(pi)}});
}

std::string certificate_to_json(const EntropyCertificate& cert, const SetSystem& system,
                                bool log2) {
    const double unit = log2 ? std::log(2.0) : 1.0;
    json weights = json::array();
    for (const auto& [k, q] : cert.point.weights) weights.push_back({k, q});
    json a = json::object();
    for (int x = 0; x < system.universe().size(); ++x)
        a[system.universe().id(x)] = cert.point.a[x];
    json doc = {
        {"value", cert.value / unit},
        {"entropy", cert.value / unit},
        {"gap", cert.gap},
        {"bracket", {cert.bracket_lo / unit, cert.bracket_hi / unit}},
        {"weights", std::move(weights)},
        {"a", std::move(a)},
        {"converged", cert.converged},
        {"iterations", cert.iterations},
        {"log_base", log2 ? "bit" : "nat"},
    };
    return emit_doc(doc);
}

std::string frac_to_json(const LpResult& chi, const LpResult& omega,
                         const Distribution& pi_star) {
    json pi = json::object();
    for (const Atom& a : pi_star.atoms()) pi[a.id] = a.mass;
    return emit_doc({{"chi_frac", chi.objective},
                     {"omega_frac", omega.objective},
                     {"pi_star", std::move(pi)}});
}

std::string canonical_json(const std::string& text) {
    return emit_doc(parse_checked(text));
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

}  // namespace vpent
