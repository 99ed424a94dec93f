#include "cmorder/config.hpp"

#include <atomic>

namespace cmorder {

namespace {
std::atomic<bool> g_verify{false};
std::atomic<std::size_t> g_limit{200000};
std::atomic<unsigned long> g_fb_cap{5000};
std::atomic<unsigned long> g_sat{50};
std::atomic<unsigned> g_prec{128};
}

bool verification_mode() { return g_verify.load(std::memory_order_relaxed); }
void set_verification_mode(bool on) { g_verify.store(on, std::memory_order_relaxed); }

std::size_t search_vector_limit() { return g_limit.load(std::memory_order_relaxed); }
void set_search_vector_limit(std::size_t n) { g_limit.store(n, std::memory_order_relaxed); }

unsigned long factor_base_cap() { return g_fb_cap.load(std::memory_order_relaxed); }
void set_factor_base_cap(unsigned long b) { g_fb_cap.store(b, std::memory_order_relaxed); }

unsigned long saturation_bound() { return g_sat.load(std::memory_order_relaxed); }
void set_saturation_bound(unsigned long b) { g_sat.store(b, std::memory_order_relaxed); }

unsigned root_precision() { return g_prec.load(std::memory_order_relaxed); }
void set_root_precision(unsigned bits) { g_prec.store(bits, std::memory_order_relaxed); }

}  // namespace cmorder
