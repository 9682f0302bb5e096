#include "itergcd/eps.hpp"

#include <algorithm>
#include <sstream>

#include "itergcd/errors.hpp"

namespace itergcd {

namespace {

void check_window(u64 threshold, u64 period) {
  if (period == 0) fail(ErrorCode::InvalidArgument, "period must be positive");
  if (threshold > kEpsWindowCap || period > kEpsWindowCap - threshold)
    fail(ErrorCode::BudgetExceeded, "eventually periodic window exceeds cap");
}

// membership over [0, len)
std::vector<bool> window_bits(const EPS& s, u64 len) {
  std::vector<bool> bits(len, false);
  for (u64 e : s.exceptional)
    if (e < len) bits[e] = true;
  std::vector<bool> res(s.period, false);
  for (u64 r : s.residues) res[r] = true;
  for (u64 n = s.threshold; n < len; ++n) bits[n] = res[n % s.period];
  return bits;
}

// bits covers [0, threshold + period) and the set is period-periodic from threshold on
EPS from_bits(u64 threshold, u64 period, const std::vector<bool>& bits, bool certified) {
  u64 p = period;
  auto periodic_with = [&](u64 d) {
    for (u64 i = 0; i < period; ++i)
      if (bits[threshold + i] != bits[threshold + (i + d) % period]) return false;
    return true;
  };
  for (auto [r, e] : factor_u64(period)) {
    for (int i = 0; i < e && p % r == 0; ++i) {
      if (!periodic_with(p / r)) break;
      p /= r;
    }
  }
  u64 n0 = threshold;
  while (n0 > 0 && bits[n0 - 1] == bits[n0 - 1 + p]) --n0;
  EPS out;
  out.threshold = n0;
  out.period = p;
  out.certified = certified;
  for (u64 n = n0; n < n0 + p; ++n)
    if (bits[n]) out.residues.push_back(n % p);
  std::sort(out.residues.begin(), out.residues.end());
  for (u64 n = 0; n < n0; ++n)
    if (bits[n]) out.exceptional.push_back(n);
  return out;
}

EPS combine(const EPS& a, const EPS& b, bool (*op)(bool, bool)) {
  u64 n0 = std::max(a.threshold, b.threshold);
  u64 p = lcm_u64(a.period, b.period);
  check_window(n0, p);
  auto wa = window_bits(a, n0 + p);
  auto wb = window_bits(b, n0 + p);
  std::vector<bool> bits(n0 + p);
  for (u64 n = 0; n < n0 + p; ++n) bits[n] = op(wa[n], wb[n]);
  return from_bits(n0, p, bits, a.certified && b.certified);
}

}  // namespace

bool EPS::contains(u64 n) const {
  if (n < threshold) return std::binary_search(exceptional.begin(), exceptional.end(), n);
  return std::binary_search(residues.begin(), residues.end(), n % period);
}

std::string EPS::to_string() const {
  std::ostringstream os;
  os << "{N0=" << threshold << ", P=" << period << ", residues=[";
  for (size_t i = 0; i < residues.size(); ++i) os << (i ? "," : "") << residues[i];
  os << "], exceptional=[";
  for (size_t i = 0; i < exceptional.size(); ++i) os << (i ? "," : "") << exceptional[i];
  os << "], certified=" << (certified ? "true" : "false") << "}";
  return os.str();
}

EPS EPS::empty() { return EPS{0, 1, {}, {}, true}; }
EPS EPS::all() { return EPS{0, 1, {0}, {}, true}; }

EPS EPS::residue_class(u64 r, u64 m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  return canonical(EPS{0, m, {r % m}, {}, true});
}

EPS EPS::at_least(u64 n0) {
  EPS s{n0, 1, {0}, {}, true};
  return s;
}

EPS EPS::finite(std::vector<u64> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  u64 n0 = elems.empty() ? 0 : elems.back() + 1;
  return EPS{n0, 1, {}, std::move(elems), true};
}

EPS EPS::from_predicate(u64 threshold, u64 period, const std::function<bool(u64)>& pred,
                        bool certified) {
  check_window(threshold, period);
  std::vector<bool> bits(threshold + period);
  for (u64 n = 0; n < threshold + period; ++n) bits[n] = pred(n);
  return from_bits(threshold, period, bits, certified);
}

EPS canonical(const EPS& s) {
  check_window(s.threshold, s.period);
  for (u64 r : s.residues)
    if (r >= s.period) fail(ErrorCode::InvalidArgument, "residue out of range");
  for (u64 e : s.exceptional)
    if (e >= s.threshold) fail(ErrorCode::InvalidArgument, "exceptional element beyond threshold");
  auto bits = window_bits(s, s.threshold + s.period);
  return from_bits(s.threshold, s.period, bits, s.certified);
}

EPS eps_union(const EPS& a, const EPS& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

EPS eps_intersect(const EPS& a, const EPS& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

EPS eps_difference(const EPS& a, const EPS& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

EPS eps_complement(const EPS& a) {
  check_window(a.threshold, a.period);
  auto bits = window_bits(a, a.threshold + a.period);
  bits.flip();
  return from_bits(a.threshold, a.period, bits, a.certified);
}

bool eps_equal(const EPS& a, const EPS& b) {
  EPS ca = canonical(a), cb = canonical(b);
  return ca.threshold == cb.threshold && ca.period == cb.period && ca.residues == cb.residues &&
         ca.exceptional == cb.exceptional;
}

bool eps_subset(const EPS& a, const EPS& b) { return eps_difference(a, b).is_empty(); }

EPS detect_period(const std::vector<bool>& samples) {
  const u64 h = samples.size();
  for (u64 p = 1; 4 * p <= h; ++p) {
    // smallest n0 with samples p-periodic on [n0, h)
    u64 n0 = 0;
    for (u64 n = h - p; n-- > 0;) {
      if (samples[n] != samples[n + p]) {
        n0 = n + 1;
        break;
      }
    }
    if (h - n0 < 4 * p) continue;
    std::vector<bool> bits(samples.begin(), samples.begin() + static_cast<long>(n0 + p));
    return from_bits(n0, p, bits, false);
  }
  fail(ErrorCode::NoPeriodFound, "no period P <= H/4 fits the window");
}

}  // namespace itergcd
