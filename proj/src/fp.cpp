#include "tps/field.hpp"

namespace tps {

uint64_t Fp::mod_ = Fp::default_modulus;

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

void Fp::set_modulus(uint64_t p) {
  if (p >= (1ull << 62))
    throw input_error("prime modulus must be below 2^62");
  if (!is_prime_u64(p))
    throw input_error("modulus " + std::to_string(p) + " is not prime");
  mod_ = p;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw internal_error("division by zero in F_p");
  // Extended Euclid on signed 128-bit intermediates.
  __int128 t = 0, nt = 1;
  __int128 r = static_cast<__int128>(mod_), nr = static_cast<__int128>(v_);
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<__int128>(mod_);
  return from_raw(static_cast<uint64_t>(t));
}

}  // namespace tps
