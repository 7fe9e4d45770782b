#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ppr/kernels.hpp"

namespace ppr::kernels {

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(PPR_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  require(supported(isa), std::string("kernel ISA not available: ") + name(isa));
#if defined(PPR_BUILD_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

const char* name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

namespace {

Isa detect() {
  const char* env = std::getenv("PPR_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const Table& active() { return table(current().load(std::memory_order_relaxed)); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  require(supported(isa), std::string("kernel ISA not available: ") + name(isa));
  current().store(isa, std::memory_order_relaxed);
}

}  // namespace ppr::kernels
