#include "randbound/family_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace randbound {

namespace {

using nlohmann::json;

double exponent_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfExponent;
        throw DomainError("space exponent string must be \"inf\"");
    }
    if (!j.is_number()) throw DomainError("space exponent must be a number or \"inf\"");
    return j.get<double>();
}

SeqSpace space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("p"))
        throw DomainError("space object needs {dim, p}");
    return make_space(j.at("dim").get<int>(), exponent_from_json(j.at("p")));
}

json space_to_json(const SeqSpace& s) {
    json j;
    j["dim"] = s.dim;
    if (is_inf_exponent(s.p))
        j["p"] = "inf";
    else
        j["p"] = s.p;
    return j;
}

} // namespace

NamedFamily parse_family_json(const std::string& text) {
    const json j = json::parse(text); // parse_error propagates with byte position
    NamedFamily nf;
    nf.name = j.value("name", std::string("family"));
    nf.family.domain = space_from_json(j.at("domain"));
    nf.family.codomain = space_from_json(j.at("codomain"));
    if (!j.contains("members") || !j.at("members").is_array() || j.at("members").empty())
        throw DomainError("family needs a nonempty members array");
    for (const json& jm : j.at("members")) {
        Matrix m(nf.family.codomain.dim, nf.family.domain.dim);
        if (static_cast<int>(jm.size()) != m.rows)
            throw ShapeError("member row count disagrees with the codomain dimension");
        for (int r = 0; r < m.rows; ++r) {
            const json& row = jm.at(static_cast<size_t>(r));
            if (static_cast<int>(row.size()) != m.cols)
                throw ShapeError("member column count disagrees with the domain dimension");
            for (int c = 0; c < m.cols; ++c) m.at(r, c) = row.at(static_cast<size_t>(c)).get<double>();
        }
        nf.family.members.push_back(std::move(m));
    }
    nf.family.validate();
    return nf;
}

NamedFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open family file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family_json(buf.str());
}

std::string family_to_json(const NamedFamily& nf, int indent) {
    json j;
    j["name"] = nf.name;
    j["domain"] = space_to_json(nf.family.domain);
    j["codomain"] = space_to_json(nf.family.codomain);
    json members = json::array();
    for (const Matrix& m : nf.family.members) {
        json jm = json::array();
        for (int r = 0; r < m.rows; ++r) {
            json row = json::array();
            for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
            jm.push_back(std::move(row));
        }
        members.push_back(std::move(jm));
    }
    j["members"] = std::move(members);
    return j.dump(indent);
}

} // namespace randbound
