#include "qpt/simplex.hpp"

#include <sstream>

#include "qpt/errors.hpp"

namespace qpt {

Mask mask_from_vertices(const std::vector<int>& verts_1based, int n) {
    Mask m = 0;
    for (int v : verts_1based) {
        if (v < 1 || v > n)
            throw InvalidVertex("vertex " + std::to_string(v) + " out of range 1.." +
                                std::to_string(n));
        m |= Mask{1} << (v - 1);
    }
    return m;
}

std::vector<int> mask_vertices(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(mask_card(m)));
    while (m != 0) {
        int i = std::countr_zero(m);
        out.push_back(i + 1);
        m &= m - 1;
    }
    return out;
}

std::string mask_to_string(Mask m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int v : mask_vertices(m)) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace qpt
