#pragma once

// Shared textual format. One JSON record per form:
//   {"n": 1, "terms": [{"gens": ["z1","zb1"], "re": "1/2", "im": "0"}]}
// Exact mode writes/reads re,im as rational strings "p/q" and round-trips
// bit-exactly; float mode uses JSON numbers. Generator lists may arrive in any
// order and are sign-normalized; a repeated generator in one term is an error.

#include "form.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf {

using json = nlohmann::json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::pair<uint32_t, int> mask_from_gens(int n, const json& gens, std::size_t term_idx) {
    std::vector<int> idx;
    for (auto& g : gens) {
        if (!g.is_string())
            throw InputError("term " + std::to_string(term_idx) + ": generator names must be strings");
        idx.push_back(gen_index(n, g.get<std::string>()));
    }
    uint32_t mask = 0;
    for (int g : idx) {
        uint32_t bit = uint32_t(1) << g;
        if (mask & bit)
            throw InputError("term " + std::to_string(term_idx) + ": repeated generator");
        mask |= bit;
    }
    return {mask, sort_sign(idx)};
}
}  // namespace detail

inline json to_json(const Form<ExactComplex>& f) {
    json terms = json::array();
    for (auto& [m, c] : f.terms) {
        json gens = json::array();
        for (int g = 0; g < 4 * f.n; ++g)
            if (m & (uint32_t(1) << g)) gens.push_back(gen_name(f.n, g));
        terms.push_back({{"gens", gens}, {"re", rat_to_string(c.re)}, {"im", rat_to_string(c.im)}});
    }
    return json{{"n", f.n}, {"terms", terms}};
}

inline json to_json(const Form<std::complex<double>>& f) {
    json terms = json::array();
    for (auto& [m, c] : f.terms) {
        json gens = json::array();
        for (int g = 0; g < 4 * f.n; ++g)
            if (m & (uint32_t(1) << g)) gens.push_back(gen_name(f.n, g));
        terms.push_back({{"gens", gens}, {"re", c.real()}, {"im", c.imag()}});
    }
    return json{{"n", f.n}, {"terms", terms}};
}

inline Form<ExactComplex> exact_form_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
            throw InputError("form record needs fields 'n' and 'terms'");
        int n = j.at("n").get<int>();
        check_n(n);
        Form<ExactComplex> f(n);
        std::size_t ti = 0;
        for (auto& t : j.at("terms")) {
            auto [mask, sgn] = detail::mask_from_gens(n, t.at("gens"), ti);
            auto coord = [&](const char* key) -> Rat {
                if (!t.contains(key)) return Rat(0);
                const json& v = t.at(key);
                if (v.is_string()) return rat_from_string(v.get<std::string>());
                if (v.is_number_integer()) return Rat(v.get<long>());
                throw InputError("term " + std::to_string(ti) +
                                 ": exact mode needs rational strings for re/im");
            };
            ExactComplex c(coord("re"), coord("im"));
            if (sgn < 0) c = -c;
            f.add_term(mask, c);
            ++ti;
        }
        return f;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed form record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline Form<std::complex<double>> float_form_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
            throw InputError("form record needs fields 'n' and 'terms'");
        int n = j.at("n").get<int>();
        check_n(n);
        Form<std::complex<double>> f(n);
        std::size_t ti = 0;
        for (auto& t : j.at("terms")) {
            auto [mask, sgn] = detail::mask_from_gens(n, t.at("gens"), ti);
            auto coord = [&](const char* key) -> double {
                if (!t.contains(key)) return 0.0;
                const json& v = t.at(key);
                if (v.is_number()) return v.get<double>();
                if (v.is_string()) return rat_from_string(v.get<std::string>()).get_d();
                throw InputError("term " + std::to_string(ti) + ": re/im must be numeric");
            };
            std::complex<double> c(coord("re"), coord("im"));
            if (sgn < 0) c = -c;
            f.add_term(mask, c);
            ++ti;
        }
        return f;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed form record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; forward it as the position diagnostic.
        throw InputError("parse error in " + path + ": " + e.what());
    }
}

}  // namespace qf
