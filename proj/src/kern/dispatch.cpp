#include "pdwm/kern/kernels.hpp"

namespace pdwm::kern {
namespace {

bool cpu_has_avx2() {
#if defined(PDWM_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Backend* pick_default() {
#ifdef PDWM_HAVE_AVX2
    if (cpu_has_avx2()) return &avx2_backend();
#endif
    return &scalar_backend();
}

const Backend*& current() {
    static const Backend* b = pick_default();
    return b;
}

}  // namespace

const Backend& backend() { return *current(); }

bool select_backend(std::string_view name) {
    if (name == "scalar") {
        current() = &scalar_backend();
        return true;
    }
#ifdef PDWM_HAVE_AVX2
    if (name == "avx2" && cpu_has_avx2()) {
        current() = &avx2_backend();
        return true;
    }
#endif
    return false;
}

std::vector<std::string> available_backends() {
    std::vector<std::string> v = {"scalar"};
#ifdef PDWM_HAVE_AVX2
    if (cpu_has_avx2()) v.emplace_back("avx2");
#endif
    return v;
}

}  // namespace pdwm::kern
