#include "toric/serialize.hpp"

#include <charconv>

#include <sstream>

#include <json.hpp>

#include "toric/errors.hpp"

namespace toric {

using nlohmann::json;

EdgeId parse_edge(const std::string& text) {
    std::istringstream is(text);
    std::string o;
    EdgeId e;
    if (!(is >> o >> e.row >> e.col) || (o != "H" && o != "V"))
        throw InvalidParameter("cannot parse edge '" + text + "' (expected \"H r c\" or \"V r c\")");
    e.orientation = o == "H" ? Orientation::H : Orientation::V;
    return e;
}

std::string error_to_json(const ToricLattice& lat, const ErrorVector& e) {
    json j;
    j["d"] = lat.distance();
    j["error"] = json::array();
    for (int q : e.support()) j["error"].push_back(to_string(lat.edge(q)));
    return j.dump();
}

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& ex) {
        throw InvalidParameter(std::string("malformed JSON: ") + ex.what());
    }
}

int read_d(const json& j) {
    if (!j.contains("d") || !j["d"].is_number_integer()) throw InvalidParameter("JSON needs an integer \"d\"");
    return j["d"].get<int>();
}

}  // namespace

ErrorVector error_from_json(const std::string& text, int* d_out) {
    const json j = parse(text);
    const ToricLattice lat(read_d(j));
    if (d_out) *d_out = lat.distance();
    if (!j.contains("error") || !j["error"].is_array()) throw InvalidParameter("JSON needs an \"error\" array");
    ErrorVector e(lat.n_qubits());
    for (const auto& item : j["error"]) {
        if (!item.is_string()) throw InvalidParameter("error entries must be strings like \"H 0 1\"");
        e.set(lat.qubit_index(parse_edge(item.get<std::string>())));
    }
    return e;
}

std::string syndrome_to_json(const ToricLattice& lat, const SyndromeVector& s) {
    json j;
    j["d"] = lat.distance();
    j["syndrome"] = json::array();
    for (int c : s.support()) {
        const VertexId v = lat.vertex(c);
        j["syndrome"].push_back({v.row, v.col});
    }
    j["fake"] = s.fake();
    return j.dump();
}

SyndromeVector syndrome_from_json(const std::string& text, int* d_out) {
    const json j = parse(text);
    const ToricLattice lat(read_d(j));
    if (d_out) *d_out = lat.distance();
    if (!j.contains("syndrome") || !j["syndrome"].is_array())
        throw InvalidParameter("JSON needs a \"syndrome\" array");
    SyndromeVector s(lat.n_checks());
    for (const auto& item : j["syndrome"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
            throw InvalidParameter("syndrome entries must be [row, col]");
        s.set(lat.check_index({item[0].get<int>(), item[1].get<int>()}));
    }
    s.set_fake(s.weight() % 2 != 0);
    return s;
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace toric
