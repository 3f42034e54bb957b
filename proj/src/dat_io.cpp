#include "qpt/dat_io.hpp"

#include <sstream>

#include "json.hpp"

namespace qpt {

std::vector<Complex> load_dat(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Mask> current;
    auto flush = [&] {
        if (!current.empty()) {
            out.push_back(Complex::from_facets(n, current));
            current.clear();
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (line.rfind("n=", 0) == 0) {
            try {
                n = std::stoi(line.substr(2));
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno) + ": bad header \"" + line +
                                 "\"");
            }
            if (n < 1 || n > kMaxVertices)
                throw ParseError("line " + std::to_string(lineno) + ": n out of range 1..32");
            continue;
        }
        if (n < 0) n = static_cast<int>(line.size());
        if (static_cast<int>(line.size()) != n)
            throw ParseError("line " + std::to_string(lineno) + ": row length " +
                             std::to_string(line.size()) + " differs from n=" +
                             std::to_string(n));
        Mask m = 0;
        for (int i = 0; i < n; ++i) {
            char c = line[static_cast<std::size_t>(i)];
            if (c == '1')
                m |= Mask{1} << i;
            else if (c != '0')
                throw ParseError("line " + std::to_string(lineno) + ": bad digit '" +
                                 std::string(1, c) + "'");
        }
        current.push_back(m);
    }
    flush();
    return out;
}

std::string save_dat(const std::vector<Complex>& complexes) {
    std::ostringstream out;
    bool first = true;
    for (const Complex& K : complexes) {
        if (!first) out << '\n';
        first = false;
        const int n = K.slot_count();
        if (n != 15) out << "n=" << n << '\n';
        for (Mask f : K.facets()) {
            for (int i = 0; i < n; ++i) out << (((f >> i) & 1) ? '1' : '0');
            out << '\n';
        }
    }
    return out.str();
}

std::vector<Complex> load_json_complexes(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<Complex> out;
    for (const auto& complex : j.at("complexes")) {
        std::vector<Mask> facets;
        for (const auto& facet : complex)
            facets.push_back(mask_from_vertices(facet.get<std::vector<int>>(), n));
        out.push_back(Complex::from_facets(n, std::move(facets)));
    }
    return out;
}

std::string save_json_complexes(const std::vector<Complex>& complexes) {
    nlohmann::json j;
    j["n"] = complexes.empty() ? 0 : complexes.front().slot_count();
    j["complexes"] = nlohmann::json::array();
    for (const Complex& K : complexes) {
        nlohmann::json facets = nlohmann::json::array();
        for (Mask f : K.facets()) facets.push_back(mask_vertices(f));
        j["complexes"].push_back(std::move(facets));
    }
    return j.dump(1);
}

}  // namespace qpt
