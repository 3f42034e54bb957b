#include "qpt/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qpt {

Permutation Permutation::identity(int n) {
    std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), std::uint8_t{0});
    return Permutation(std::move(image));
}

Permutation::Permutation(std::vector<std::uint8_t> image) : image_(std::move(image)) {
    if (image_.size() > kMaxVertices)
        throw InvalidVertex("permutation degree exceeds 32 slots");
    std::vector<bool> seen(image_.size(), false);
    for (std::uint8_t v : image_) {
        if (v >= image_.size() || seen[v])
            throw ParseError("permutation image is not a bijection");
        seen[v] = true;
    }
}

Mask Permutation::apply_mask(Mask m) const {
    Mask out = 0;
    while (m != 0) {
        int i = std::countr_zero(m);
        out |= Mask{1} << image_[static_cast<std::size_t>(i)];
        m &= m - 1;
    }
    return out;
}

Permutation Permutation::compose(const Permutation& other) const {
    std::vector<std::uint8_t> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) image[i] = image_[other.image_[i]];
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint8_t> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        image[image_[i]] = static_cast<std::uint8_t>(i);
    return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

int Permutation::order() const {
    Permutation p = *this;
    int ord = 1;
    while (!p.is_identity()) {
        p = p.compose(*this);
        ++ord;
    }
    return ord;
}

Permutation Permutation::parse_cycles(const std::string& text, int n) {
    if (n < 0 || n > kMaxVertices) throw InvalidVertex("degree out of range 0..32");
    std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), std::uint8_t{0});

    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == ','))
            ++pos;
    };
    skip_ws();
    bool saw_cycle = false;
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw ParseError("expected '(' at position " + std::to_string(pos) + " in \"" +
                             text + "\"");
        ++pos;
        std::vector<int> cycle;
        skip_ws();
        while (pos < text.size() && text[pos] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw ParseError("expected point at position " + std::to_string(pos) +
                                 " in \"" + text + "\"");
            int v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                ++pos;
            }
            if (v < 1 || v > n)
                throw ParseError("point " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(n));
            cycle.push_back(v - 1);
            skip_ws();
        }
        if (pos >= text.size()) throw ParseError("unterminated cycle in \"" + text + "\"");
        ++pos;  // ')'
        saw_cycle = true;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            int from = cycle[i];
            int to = cycle[(i + 1) % cycle.size()];
            if (image[static_cast<std::size_t>(from)] != from)
                throw ParseError("point " + std::to_string(from + 1) +
                                 " appears in two cycles");
            image[static_cast<std::size_t>(from)] = static_cast<std::uint8_t>(to);
        }
        skip_ws();
    }
    if (!saw_cycle && !text.empty()) {
        // allow "id" / "()" style inputs only when they reduce to whitespace
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                throw ParseError("no cycles found in \"" + text + "\"");
    }
    return Permutation(std::move(image));
}

std::string Permutation::to_cycles() const {
    std::ostringstream os;
    std::vector<bool> done(image_.size(), false);
    bool any = false;
    for (std::size_t start = 0; start < image_.size(); ++start) {
        if (done[start] || image_[start] == start) continue;
        os << '(';
        std::size_t v = start;
        bool first = true;
        while (!done[v]) {
            done[v] = true;
            if (!first) os << ' ';
            os << (v + 1);
            first = false;
            v = image_[v];
        }
        os << ')';
        any = true;
    }
    if (!any) return "()";
    return os.str();
}

}  // namespace qpt
