#include <cstdlib>
#include <string>
#include <string_view>

#include "aidw/error.hpp"
#include "aidw/simd/kernels.hpp"

namespace aidw::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(AIDW_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() noexcept {
  if (const char* env = std::getenv("AIDW_ISA")) {
    const std::string_view want{env};
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

template <typename T>
const KernelTable<T>& kernels(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(ErrorCode::UnsupportedIsa, std::string(to_string(isa)) + " is not supported on this CPU");
  }
#if defined(AIDW_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return avx2::table<T>();
#endif
  return scalar::table<T>();
}

template const KernelTable<float>& kernels<float>(Isa);
template const KernelTable<double>& kernels<double>(Isa);

}  // namespace aidw::simd
