#include "bandvar/rng.hpp"

namespace bandvar {

Rng Rng::substream(std::string_view name, std::uint64_t index) const {
    // FNV-1a over the name, folded with the parent key and index.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    Rng child(0);
    child.key_ = mix(key_ ^ mix(h + kGolden * (index + 1)));
    return child;
}

}  // namespace bandvar
