#include <cstdlib>
#include <string_view>

#include "sphoc/simd/kernels.hpp"

namespace sphoc::simd {

#ifdef SPHOC_HAVE_AVX2
namespace detail {
const Kernels& avx2_table() noexcept;
}
#endif

const Kernels* avx2_kernels() noexcept {
#ifdef SPHOC_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const Kernels& active() noexcept {
    static const Kernels& chosen = [] () -> const Kernels& {
        const char* env = std::getenv("SPHOC_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
        if (const Kernels* k = avx2_kernels()) return *k;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace sphoc::simd
