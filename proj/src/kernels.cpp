#include "qsc/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace qsc::kernels {
namespace {

const KernelSet* best_supported() {
#ifdef QSC_HAVE_AVX2_KERNELS
    if (avx2_supported()) return &avx2_kernels();
#endif
    return &scalar_kernels();
}

const KernelSet* resolve(std::string_view name) {
    if (name == "auto") return best_supported();
    if (name == "scalar") return &scalar_kernels();
#ifdef QSC_HAVE_AVX2_KERNELS
    if (name == "avx2" && avx2_supported()) return &avx2_kernels();
#endif
    return nullptr;
}

std::atomic<const KernelSet*>& active_slot() {
    static std::atomic<const KernelSet*> slot{[] {
        if (const char* env = std::getenv("QSC_KERNEL")) {
            if (const KernelSet* set = resolve(env)) return set;
        }
        return best_supported();
    }()};
    return slot;
}

} // namespace

const KernelSet& active() { return *active_slot().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
    const KernelSet* set = resolve(name);
    if (!set) return false;
    active_slot().store(set, std::memory_order_relaxed);
    return true;
}

std::string_view active_name() { return active().name; }

} // namespace qsc::kernels
