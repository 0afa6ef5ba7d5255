#include "lifo/kernels.hpp"

#include <cstdlib>
#include <string>

#include "lifo/error.hpp"

namespace lifo::kernels {

std::string_view name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(LIFO_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  if (!available(isa)) throw Error("kernel set '" + std::string(name(isa)) + "' is not available on this CPU");
#if defined(LIFO_HAVE_AVX2_TU)
  if (isa == Isa::Avx2) return detail::kAvx2;
#endif
  return detail::kScalar;
}

namespace {

const Table& resolve() {
  if (const char* env = std::getenv("LIFO_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return table(Isa::Scalar);
    if (want == "avx2") return table(Isa::Avx2);
  }
  return available(Isa::Avx2) ? table(Isa::Avx2) : table(Isa::Scalar);
}

}  // namespace

const Table& active() {
  static const Table& t = resolve();
  return t;
}

}  // namespace lifo::kernels
