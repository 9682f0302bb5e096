#include "itergcd/integer.hpp"

#include <algorithm>

#include "itergcd/errors.hpp"

namespace itergcd {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NoPeriodFound: return "NoPeriodFound";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ValidationMismatch: return "ValidationMismatch";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::NonpositiveExponentGap: return "NonpositiveExponentGap";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotFree: return "NotFree";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::RootWitnessInvalid: return "RootWitnessInvalid";
  }
  return "Unknown";
}

long valuation(const Int& x, const Int& p) {
  if (sgn(x) == 0) return kInfVal;
  if (p == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  Int t;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Int& x, u64 p) { return valuation(x, from_u64(p)); }

long valuation_u64(u64 x, u64 p) {
  if (x == 0) return kInfVal;
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Int ipow(const Int& base, u64 e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int ipow_si(long base, u64 e) {
  Int b = base;
  return ipow(b, e);
}

Rat rpow(const Rat& base, long e) {
  if (e < 0) {
    if (sgn(base) == 0) fail(ErrorCode::InvalidArgument, "zero to a negative power");
    Rat inv = 1 / base;
    return rpow(inv, -e);
  }
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  u64 g = gcd_u64(a, b);
  unsigned __int128 r = static_cast<unsigned __int128>(a / g) * b;
  if (r > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
    fail(ErrorCode::BudgetExceeded, "period lcm overflows 63 bits");
  return static_cast<u64>(r);
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit integers
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> divisors_u64(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, e] : factor_u64(n)) {
    size_t m = ds.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<std::pair<u64, int>> factor_smooth(const Int& n0, u64 bound) {
  Int n = abs(n0);
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  for (u64 p = 2; p <= bound && n > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    if (fits_u64(n) && is_prime_u64(to_u64(n))) {
      out.emplace_back(to_u64(n), 1);
    } else {
      fail(ErrorCode::BudgetExceeded, "integer has a large composite cofactor");
    }
  }
  return out;
}

u64 prev_prime(u64 below) {
  u64 n = below - 1;
  while (!is_prime_u64(n)) --n;
  return n;
}

bool fits_u64(const Int& x) {
  return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

bool fits_i64(const Int& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62; }

u64 to_u64(const Int& x) {
  if (!fits_u64(x)) fail(ErrorCode::BudgetExceeded, "integer exceeds 64 bits");
  u64 r = 0;
  mpz_export(&r, nullptr, -1, sizeof(u64), 0, 0, x.get_mpz_t());
  return r;
}

i64 to_i64(const Int& x) {
  if (!fits_i64(x)) fail(ErrorCode::BudgetExceeded, "integer exceeds 62 bits");
  return x.get_si();
}

Int from_u64(u64 x) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &x);
  return r;
}

Int from_i64(i64 x) {
  if (x >= 0) return from_u64(static_cast<u64>(x));
  return -from_u64(static_cast<u64>(-(x + 1)) + 1);
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

u64 mod_u64(const Int& a, u64 m) {
  Int r = mod_floor(a, from_u64(m));
  return to_u64(r);
}

bool rational_reconstruct(const Int& a, const Int& m, Rat& out) {
  Int r0 = m, r1 = mod_floor(a, m);
  Int s0 = 0, s1 = 1;
  Int bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  while (r1 > bound) {
    Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (sgn(s1) == 0 || abs(s1) > bound) return false;
  Int g = gcd(r1, s1);
  if (g != 1) return false;
  out = Rat(r1, s1);
  out.canonicalize();
  return true;
}

std::vector<Int> coprime_base(const std::vector<Int>& xs) {
  std::vector<Int> base;
  for (const Int& x0 : xs) {
    Int x = abs(x0);
    if (x <= 1) continue;
    std::vector<Int> work{x};
    while (!work.empty()) {
      Int y = work.back();
      work.pop_back();
      if (y <= 1) continue;
      bool split = false;
      for (size_t i = 0; i < base.size(); ++i) {
        Int g = gcd(base[i], y);
        if (g == 1) continue;
        Int b = base[i];
        base.erase(base.begin() + static_cast<long>(i));
        work.push_back(g);
        work.push_back(b / g);
        work.push_back(y / g);
        split = true;
        break;
      }
      if (!split) base.push_back(y);
    }
    // collapse duplicates that re-entered through splitting
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
  }
  std::sort(base.begin(), base.end());
  return base;
}

std::string rat_to_string(const Rat& r) { return r.get_str(10); }

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
    fail(ErrorCode::InvalidArgument, "not a rational number: '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace itergcd
