#include "macsense/serialization.hpp"

#include <charconv>
#include <cstdlib>

#include "json.hpp"
#include "macsense/errors.hpp"

namespace macsense {

namespace {
using nlohmann::json;

double parse_prob(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            char* end = nullptr;
            double num = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + slash)
                throw ParseError(where + ": malformed rational '" + s + "'");
            double den = std::strtod(s.c_str() + slash + 1, &end);
            if (*end != '\0' || den == 0.0)
                throw ParseError(where + ": malformed rational '" + s + "'");
            return num / den;
        }
        char* end = nullptr;
        double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ParseError(where + ": malformed probability '" + s + "'");
        return x;
    }
    throw ParseError(where + ": probabilities must be numbers or strings");
}

std::vector<double> parse_prob_list(const json& doc, const std::string& key) {
    if (!doc.contains(key)) throw ParseError("missing key '" + key + "'");
    const json& arr = doc.at(key);
    if (!arr.is_array()) throw ParseError("key '" + key + "' must be a flat list");
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(parse_prob(arr[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

Alphabet parse_alphabet(const json& alphabets, const std::string& name) {
    if (!alphabets.contains(name))
        throw NameError("alphabets does not define '" + name + "'");
    const json& syms = alphabets.at(name);
    if (!syms.is_array() || syms.empty())
        throw ParseError("alphabet '" + name + "' must be a non-empty symbol list");
    std::vector<std::string> symbols;
    for (const auto& s : syms) {
        if (!s.is_string()) throw ParseError("alphabet '" + name + "' has a non-string symbol");
        symbols.push_back(s.get<std::string>());
    }
    return Alphabet(name, std::move(symbols));
}

std::string double_to_string(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

json prob_list_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(double_to_string(x));
    return arr;
}

json alphabet_json(const Alphabet& a) {
    json arr = json::array();
    for (const auto& s : a.symbols) arr.push_back(s);
    return arr;
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());  // nlohmann reports line/byte position
    }
}
}  // namespace

ChannelSpec load_channel(const std::string& text) {
    json doc = parse_document(text);
    if (!doc.contains("alphabets")) throw ParseError("missing key 'alphabets'");
    const json& alphabets = doc.at("alphabets");
    static const char* kRequired[] = {"S1", "S2", "X1", "X2", "Y", "Z1", "Z2"};
    for (const auto& item : alphabets.items()) {
        bool known = false;
        for (const char* r : kRequired) known = known || item.key() == r;
        if (!known) throw NameError("unknown alphabet '" + item.key() + "'");
    }
    Alphabet s1 = parse_alphabet(alphabets, "S1");
    Alphabet s2 = parse_alphabet(alphabets, "S2");
    Alphabet x1 = parse_alphabet(alphabets, "X1");
    Alphabet x2 = parse_alphabet(alphabets, "X2");
    Alphabet y = parse_alphabet(alphabets, "Y");
    Alphabet z1 = parse_alphabet(alphabets, "Z1");
    Alphabet z2 = parse_alphabet(alphabets, "Z2");

    std::optional<DistortionTable> d1, d2;
    if (doc.contains("distortion")) {
        const json& dist = doc.at("distortion");
        auto parse_table = [&](const std::string& key, const Alphabet& state) {
            const json& tbl = dist.at(key);
            if (!tbl.contains("reconstruction"))
                throw ParseError("distortion." + key + " lacks 'reconstruction'");
            Alphabet recon = Alphabet(state.name + "_hat", [&] {
                std::vector<std::string> syms;
                for (const auto& s : tbl.at("reconstruction")) syms.push_back(s.get<std::string>());
                return syms;
            }());
            std::vector<double> values = parse_prob_list(tbl, "matrix");
            return DistortionTable(state, std::move(recon), std::move(values));
        };
        if (dist.contains("user1")) d1 = parse_table("user1", s1);
        if (dist.contains("user2")) d2 = parse_table("user2", s2);
    }

    return ChannelSpec(std::move(s1), std::move(s2), std::move(x1), std::move(x2), std::move(y),
                       std::move(z1), std::move(z2), parse_prob_list(doc, "state_pmf"),
                       parse_prob_list(doc, "kernel"), std::move(d1), std::move(d2));
}

std::string save_channel(const ChannelSpec& c) {
    json doc;
    doc["alphabets"] = {{"S1", alphabet_json(c.s1)}, {"S2", alphabet_json(c.s2)},
                        {"X1", alphabet_json(c.x1)}, {"X2", alphabet_json(c.x2)},
                        {"Y", alphabet_json(c.y)},   {"Z1", alphabet_json(c.z1)},
                        {"Z2", alphabet_json(c.z2)}};
    doc["state_pmf"] = prob_list_json(c.state_pmf);
    doc["kernel"] = prob_list_json(c.kernel);
    auto table_json = [](const DistortionTable& t) {
        json out;
        out["reconstruction"] = alphabet_json(t.reconstruction);
        out["matrix"] = prob_list_json(t.d);
        return out;
    };
    if (c.distortion1 || c.distortion2) {
        json dist;
        if (c.distortion1) dist["user1"] = table_json(*c.distortion1);
        if (c.distortion2) dist["user2"] = table_json(*c.distortion2);
        doc["distortion"] = dist;
    }
    return doc.dump(2) + "\n";
}

SchemeSpec load_scheme(const std::string& text, const ChannelSpec& channel) {
    json doc = parse_document(text);
    if (!doc.contains("aux_alphabets")) throw ParseError("missing key 'aux_alphabets'");
    const json& alphabets = doc.at("aux_alphabets");
    static const char* kRequired[] = {"U0", "U1", "U2", "V1", "V2"};
    for (const auto& item : alphabets.items()) {
        bool known = false;
        for (const char* r : kRequired) known = known || item.key() == r;
        if (!known) throw NameError("unknown alphabet '" + item.key() + "'");
    }
    SchemeSpec s;
    s.u0 = parse_alphabet(alphabets, "U0");
    s.u1 = parse_alphabet(alphabets, "U1");
    s.u2 = parse_alphabet(alphabets, "U2");
    s.v1 = parse_alphabet(alphabets, "V1");
    s.v2 = parse_alphabet(alphabets, "V2");

    const std::size_t nu0 = s.u0.size(), nu1 = s.u1.size(), nu2 = s.u2.size();
    const std::size_t nx1 = channel.x1.size(), nx2 = channel.x2.size();
    const std::size_t nz1 = channel.z1.size(), nz2 = channel.z2.size();
    s.p_u0 = Kernel({}, nu0, parse_prob_list(doc, "p_u0"), "p_u0");
    s.p_u1_u0 = Kernel({nu0}, nu1, parse_prob_list(doc, "p_u1_given_u0"), "p_u1_given_u0");
    s.p_u2_u0 = Kernel({nu0}, nu2, parse_prob_list(doc, "p_u2_given_u0"), "p_u2_given_u0");
    s.p_x1 = Kernel({nu0, nu1}, nx1, parse_prob_list(doc, "p_x1_given_u0_u1"), "p_x1_given_u0_u1");
    s.p_x2 = Kernel({nu0, nu2}, nx2, parse_prob_list(doc, "p_x2_given_u0_u2"), "p_x2_given_u0_u2");
    s.p_v1 = Kernel({nu0, nu2, nx1, nz1}, s.v1.size(),
                    parse_prob_list(doc, "p_v1_given_u0_u2_x1_z1"), "p_v1_given_u0_u2_x1_z1");
    s.p_v2 = Kernel({nu0, nu1, nx2, nz2}, s.v2.size(),
                    parse_prob_list(doc, "p_v2_given_u0_u1_x2_z2"), "p_v2_given_u0_u1_x2_z2");
    s.check_internal();
    return s;
}

std::string save_scheme(const SchemeSpec& s) {
    json doc;
    doc["aux_alphabets"] = {{"U0", alphabet_json(s.u0)}, {"U1", alphabet_json(s.u1)},
                            {"U2", alphabet_json(s.u2)}, {"V1", alphabet_json(s.v1)},
                            {"V2", alphabet_json(s.v2)}};
    doc["p_u0"] = prob_list_json(s.p_u0.p);
    doc["p_u1_given_u0"] = prob_list_json(s.p_u1_u0.p);
    doc["p_u2_given_u0"] = prob_list_json(s.p_u2_u0.p);
    doc["p_x1_given_u0_u1"] = prob_list_json(s.p_x1.p);
    doc["p_x2_given_u0_u2"] = prob_list_json(s.p_x2.p);
    doc["p_v1_given_u0_u2_x1_z1"] = prob_list_json(s.p_v1.p);
    doc["p_v2_given_u0_u1_x2_z2"] = prob_list_json(s.p_v2.p);
    return doc.dump(2) + "\n";
}

}  // namespace macsense
