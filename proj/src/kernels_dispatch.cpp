#include "levylp/kernels.hpp"

#include <cstdlib>
#include <string_view>

// Built without any -m flags so it is safe to run before dispatch decides.

namespace levylp::kernels {

const Ops& active() {
    static const Ops* chosen = [] {
        const Ops* pick = avx2_ops();
        if (const char* env = std::getenv("LEVYLP_KERNELS")) {
            std::string_view want(env);
            if (want == "scalar") pick = nullptr;
            // "avx2" keeps the CPU-detected choice (still null on non-AVX2 hosts).
        }
        return pick ? pick : &scalar_ops();
    }();
    return *chosen;
}

}  // namespace levylp::kernels
