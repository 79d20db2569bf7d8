#include <cstdlib>
#include <string_view>

#include "apchar/kernels.hpp"

namespace apchar::kernels {

const RowKernels* avx2_kernels_unchecked() noexcept;

const RowKernels* avx2_kernels() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? avx2_kernels_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const RowKernels& active_kernels() noexcept {
    static const RowKernels* chosen = [] {
        const char* force = std::getenv("APCHAR_KERNELS");
        if (force != nullptr && std::string_view(force) == "scalar") return &scalar_kernels();
        const RowKernels* simd = avx2_kernels();
        return simd != nullptr ? simd : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace apchar::kernels
