#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace tps {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked internal invariant failed; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when a computed form disagrees with the interpolation oracle.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rationals. GMP keeps values canonical (reduced, positive denominator).
using Rat = mpq_class;

// Prime field with a session-wide modulus p < 2^62. The modulus is process
// global: fix it once before constructing any Fp value and never mix residues
// taken under different moduli. a+b stays below 2^63, a*b fits in __int128.
class Fp {
 public:
  // Largest prime below 2^62.
  static constexpr uint64_t default_modulus = 4611686018427387847ull;

  Fp() : v_(0) {}
  Fp(long long x) {
    long long r = x % static_cast<long long>(mod_);
    v_ = r < 0 ? static_cast<uint64_t>(r + static_cast<long long>(mod_))
               : static_cast<uint64_t>(r);
  }

  static Fp from_raw(uint64_t v) {
    Fp x;
    x.v_ = v;
    return x;
  }

  // Validates primality (deterministic Miller-Rabin) and the 2^62 bound.
  static void set_modulus(uint64_t p);
  static uint64_t modulus() { return mod_; }

  uint64_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) {
    uint64_t s = a.v_ + b.v_;
    if (s >= mod_) s -= mod_;
    return from_raw(s);
  }
  friend Fp operator-(Fp a, Fp b) {
    return from_raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + mod_ - b.v_);
  }
  friend Fp operator-(Fp a) { return from_raw(a.v_ == 0 ? 0 : mod_ - a.v_); }
  friend Fp operator*(Fp a, Fp b) {
    return from_raw(static_cast<uint64_t>(
        static_cast<unsigned __int128>(a.v_) * b.v_ % mod_));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const;

 private:
  uint64_t v_;
  static uint64_t mod_;
};

inline bool kis_zero(const Rat& a) { return sgn(a) == 0; }
inline bool kis_zero(Fp a) { return a.value() == 0; }

inline Rat kinv(const Rat& a) {
  if (kis_zero(a)) throw internal_error("division by zero in Q");
  return Rat(1) / a;
}
inline Fp kinv(Fp a) { return a.inverse(); }

inline std::string kstr(const Rat& a) { return a.get_str(); }

// Symmetric representative: residues above p/2 print as negative integers.
inline std::string kstr(Fp a) {
  uint64_t p = Fp::modulus();
  if (a.value() > p / 2) return "-" + std::to_string(p - a.value());
  return std::to_string(a.value());
}

template <class K>
K kfrom_mpz(const mpz_class& z);

template <>
inline Rat kfrom_mpz<Rat>(const mpz_class& z) {
  return Rat(z);
}

template <>
inline Fp kfrom_mpz<Fp>(const mpz_class& z) {
  mpz_class m(Fp::modulus());
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
  return Fp::from_raw(r.get_ui());
}

template <class K>
K kfrom_fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw input_error("zero denominator in coefficient");
  if constexpr (std::is_same_v<K, Rat>) {
    Rat q(num, den);
    q.canonicalize();
    return q;
  } else {
    K d = kfrom_mpz<K>(den);
    if (kis_zero(d))
      throw input_error("coefficient denominator vanishes modulo p");
    return kfrom_mpz<K>(num) * kinv(d);
  }
}

// Deterministic integer draws. std::uniform_int_distribution is
// implementation-defined, so outputs are derived from raw engine words.
inline int64_t rand_range(std::mt19937_64& g, int64_t lo, int64_t hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo + 1);
  return lo + static_cast<int64_t>(g() % span);
}

inline int64_t rand_nonzero(std::mt19937_64& g, int64_t bound) {
  // Uniform over {-bound..bound} \ {0}.
  uint64_t v = g() % (2 * static_cast<uint64_t>(bound));
  int64_t x = static_cast<int64_t>(v) - bound;
  return x >= 0 ? x + 1 : x;
}

// Random element for evaluation-style checks.
template <class K>
K krand_eval(std::mt19937_64& g) {
  if constexpr (std::is_same_v<K, Rat>) {
    return Rat(rand_range(g, -1000, 1000));
  } else {
    return Fp::from_raw(g() % Fp::modulus());
  }
}

template <class K>
const char* field_name() {
  if constexpr (std::is_same_v<K, Rat>)
    return "rational";
  else
    return "fp";
}

}  // namespace tps
