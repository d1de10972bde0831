#include "rakelab/binstr.hpp"

namespace rakelab {

std::vector<BinStr> all_strings_of_length(unsigned n) {
    std::vector<BinStr> out;
    out.reserve(std::size_t{1} << n);
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < count; ++v) {
        BinStr s;
        for (unsigned i = 0; i < n; ++i) s.push_back(((v >> (n - 1 - i)) & 1U) != 0);
        out.push_back(s);
    }
    return out;
}

std::vector<BinStr> all_strings_up_to(unsigned n) {
    std::vector<BinStr> out;
    out.reserve((std::size_t{1} << (n + 1)) - 1);
    for (unsigned len = 0; len <= n; ++len) {
        auto level = all_strings_of_length(len);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace rakelab
