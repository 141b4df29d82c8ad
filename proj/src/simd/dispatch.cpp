#include "ksc/error.hpp"
#include "ksc/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ksc::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("KSC_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return Isa::Scalar;
    if (value == "avx2" && supported(Isa::Avx2)) return Isa::Avx2;
  }
  return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{detect()};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(KSC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
#if defined(KSC_HAVE_AVX2_TU)
  if (isa == Isa::Avx2) return detail::avx2_table;
#endif
  (void)isa;
  return detail::scalar_table;
}

Isa active() { return active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!supported(isa))
    fail(ErrorKind::InvalidArgument,
         "SIMD variant not supported on this CPU: " + std::string(to_string(isa)));
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels() { return table(active()); }

}  // namespace ksc::simd
