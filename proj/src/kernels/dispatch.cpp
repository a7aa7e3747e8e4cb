#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lparity/kernels/ryser.hpp"

namespace lparity::kernels {

namespace {

std::atomic<int> forced{-1};

Isa detect() {
  if (const char* env = std::getenv("LPARITY_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

bool is_prime(std::uint32_t x) {
  if (x < 2) return false;
  for (std::uint32_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(LPARITY_HAVE_AVX2_KERNEL)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa detected = detect();
  return detected;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) throw std::invalid_argument("requested kernel ISA not available");
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

#if !defined(LPARITY_HAVE_AVX2_KERNEL)
void ryser_sweep_avx2(const RyserProblem&, std::uint64_t, std::uint64_t, std::span<std::uint32_t>) {
  throw std::logic_error("AVX2 kernel not compiled for this target");
}
#endif

void ryser_sweep(const RyserProblem& p, std::uint64_t begin, std::uint64_t end, std::span<std::uint32_t> out,
                 Isa isa) {
  if (isa == Isa::avx2)
    ryser_sweep_avx2(p, begin, end, out);
  else
    ryser_sweep_scalar(p, begin, end, out);
}

std::span<const std::uint32_t> ryser_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> v;
    for (std::uint32_t x = kMaxModulus - 1; v.size() < 64; --x)
      if (is_prime(x)) v.push_back(x);
    return v;
  }();
  return primes;
}

}  // namespace lparity::kernels
