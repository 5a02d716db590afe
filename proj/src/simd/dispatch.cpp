#include "smc/simd.hpp"

#include <cstdlib>
#include <string_view>

namespace smc::simd {

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

const Kernels* kernels_for(Isa isa) {
    switch (isa) {
    case Isa::scalar: return detail::scalar_table();
    case Isa::avx2: return detail::avx2_table();
    case Isa::neon: return detail::neon_table();
    }
    return nullptr;
}

std::vector<const Kernels*> available_kernels() {
    std::vector<const Kernels*> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (const Kernels* k = kernels_for(isa)) out.push_back(k);
    return out;
}

namespace {

const Kernels& select() {
    if (const char* forced = std::getenv("SMC_SIMD")) {
        const std::string_view want(forced);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
            if (want == isa_name(isa))
                if (const Kernels* k = kernels_for(isa)) return *k;
    }
    if (const Kernels* k = kernels_for(Isa::avx2)) return *k;
    if (const Kernels* k = kernels_for(Isa::neon)) return *k;
    return *kernels_for(Isa::scalar);
}

} // namespace

const Kernels& active() {
    static const Kernels& table = select();
    return table;
}

} // namespace smc::simd
