#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/errors.hpp"
#include "qpt/simplex.hpp"

namespace qpt {

// A permutation of the vertex slots {0..n-1} (printed 1-based in cycle
// notation, matching the text formats used everywhere in this toolkit).
class Permutation {
public:
    Permutation() = default;
    static Permutation identity(int n);

    // image[i] = image of slot i. Must be a bijection.
    explicit Permutation(std::vector<std::uint8_t> image);

    int degree() const { return static_cast<int>(image_.size()); }
    int apply(int i) const { return image_[static_cast<std::size_t>(i)]; }
    Mask apply_mask(Mask m) const;

    Permutation compose(const Permutation& other) const;  // this after other
    Permutation inverse() const;
    bool is_identity() const;
    int order() const;

    // Cycle notation with 1-based points, e.g. "(1 2 3)(4 5 6)". Points may
    // be separated by spaces or commas; fixed points may be omitted.
    static Permutation parse_cycles(const std::string& text, int n);
    std::string to_cycles() const;

    const std::vector<std::uint8_t>& image() const { return image_; }

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& other) const { return image_ < other.image_; }

private:
    std::vector<std::uint8_t> image_;
};

}  // namespace qpt
