#include <atomic>
#include <cstdlib>
#include <string_view>

#include "backends.hpp"
#include "markovsig/error.hpp"

namespace markovsig::kernels {

namespace {

Backend default_backend() noexcept {
  if (const char* env = std::getenv("MARKOVSIG_KERNELS")) {
    const std::string_view v{env};
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && supported(Backend::avx2)) return Backend::avx2;
    if (v == "neon" && supported(Backend::neon)) return Backend::neon;
  }
  if (supported(Backend::avx2)) return Backend::avx2;
  if (supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<int>& current() {
  static std::atomic<int> value{static_cast<int>(default_backend())};
  return value;
}

}  // namespace

const char* to_string(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool supported(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(MARKOVSIG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(MARKOVSIG_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active() noexcept { return static_cast<Backend>(current().load(std::memory_order_relaxed)); }

void select(Backend b) {
  if (!supported(b))
    throw Error(Errc::invalid_argument, std::string("kernel backend not supported: ") + to_string(b));
  current().store(static_cast<int>(b), std::memory_order_relaxed);
}

const KernelTable& table(Backend b) {
  switch (b) {
    case Backend::scalar: return scalar::kTable;
    case Backend::avx2:
#if defined(MARKOVSIG_HAVE_AVX2)
      if (supported(b)) return avx2::kTable;
#endif
      break;
    case Backend::neon:
#if defined(MARKOVSIG_HAVE_NEON)
      return neon::kTable;
#endif
      break;
  }
  throw Error(Errc::invalid_argument, std::string("kernel backend not supported: ") + to_string(b));
}

const KernelTable& table() { return table(active()); }

}  // namespace markovsig::kernels
