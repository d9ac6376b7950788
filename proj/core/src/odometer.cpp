#include "speeduplab/odometer.hpp"

#include <algorithm>
#include <numeric>

#include "speeduplab/error.hpp"
#include "speeduplab/kr_labeling.hpp"

namespace speeduplab {

namespace {

constexpr std::uint64_t kMaxFloors = std::uint64_t{1} << 26;

/// α_from, α_{from+1}, ... as an odometer of its own.
OdometerSpec tail(const OdometerSpec& alpha, std::size_t from) {
  OdometerSpec out;
  const std::size_t pre = alpha.preperiod.size();
  for (std::size_t k = from; k <= pre; ++k) out.preperiod.push_back(alpha.preperiod[k - 1]);
  const std::size_t start = from > pre ? (from - pre - 1) % alpha.cycle.size() : 0;
  for (std::size_t j = 0; j < alpha.cycle.size(); ++j) {
    out.cycle.push_back(alpha.cycle[(start + j) % alpha.cycle.size()]);
  }
  return out;
}

OdometerSpec with_prefix(std::vector<std::uint64_t> prefix, const OdometerSpec& rest) {
  OdometerSpec out;
  out.preperiod = std::move(prefix);
  out.preperiod.insert(out.preperiod.end(), rest.preperiod.begin(), rest.preperiod.end());
  out.cycle = rest.cycle;
  return out;
}

/// Largest index that can carry a gcd value not seen before it.
std::size_t last_distinct_index(const OdometerSpec& alpha, std::size_t after) {
  return std::max(after, alpha.preperiod.size()) + alpha.cycle.size();
}

/// First k > level with gcd(c, α_k) > 1.
std::optional<std::size_t> gcd_failure_after(const OdometerSpec& alpha, std::uint64_t c,
                                             std::size_t level) {
  for (std::size_t k = level + 1; k <= last_distinct_index(alpha, level); ++k) {
    if (std::gcd(c, alpha.alpha(k)) > 1) return k;
  }
  return std::nullopt;
}

std::uint64_t floors_at(const OdometerSpec& alpha, std::size_t k) {
  const std::uint64_t m = alpha.m(k);
  if (m > kMaxFloors) {
    throw DomainError("P(" + std::to_string(k) + ") has " + std::to_string(m) +
                      " floors, above the supported maximum");
  }
  return m;
}

void check_jump_shape(const OdometerSpec& alpha, const OdometerJumpSpec& jump) {
  if (jump.level == 0) throw DomainError("jump level must be at least 1");
  const std::uint64_t m = floors_at(alpha, jump.level);
  if (jump.q.size() != m) {
    throw DomainError("jump vector has " + std::to_string(jump.q.size()) + " entries, level " +
                      std::to_string(jump.level) + " has " + std::to_string(m) + " floors");
  }
  for (std::size_t j = 0; j < jump.q.size(); ++j) {
    if (jump.q[j] == 0) throw DomainError("q_" + std::to_string(j) + " is 0");
  }
}

FloorCycleResult cycle_of_map(std::vector<std::uint64_t> image) {
  FloorCycleResult out;
  const std::size_t m = image.size();
  std::vector<bool> hit(m, false);
  for (std::uint64_t target : image) {
    if (hit[target] && !out.collision) out.collision = target;
    hit[target] = true;
  }
  std::uint64_t j = 0;
  do {
    out.cycle.push_back(j);
    j = image[j];
  } while (j != 0 && out.cycle.size() <= m);
  out.single_cycle = !out.collision && out.cycle.size() == m && j == 0;
  out.image = std::move(image);
  return out;
}

}  // namespace

void OdometerSpec::validate() const {
  if (cycle.empty()) throw DomainError("odometer cycle must be nonempty");
  for (auto v : preperiod) {
    if (v < 2) throw DomainError("odometer multiplier " + std::to_string(v) + " is below 2");
  }
  for (auto v : cycle) {
    if (v < 2) throw DomainError("odometer multiplier " + std::to_string(v) + " is below 2");
  }
}

std::uint64_t OdometerSpec::alpha(std::size_t k) const {
  if (k == 0) throw DomainError("multiplier indices start at 1");
  if (k <= preperiod.size()) return preperiod[k - 1];
  return cycle.at((k - 1 - preperiod.size()) % cycle.size());
}

std::uint64_t OdometerSpec::m(std::size_t k) const {
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t a = alpha(i);
    if (out > std::numeric_limits<std::uint64_t>::max() / a) {
      throw DomainError("m_" + std::to_string(k) + " overflows 64 bits");
    }
    out *= a;
  }
  return out;
}

std::size_t OdometerSpec::depth_reaching(std::uint64_t bound) const {
  std::size_t d = 0;
  std::uint64_t m = 1;
  while (m < bound) m *= alpha(++d);
  return d;
}

std::string OdometerSpec::to_string() const {
  std::string out = "<";
  bool first = true;
  const auto put = [&](std::uint64_t v) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  };
  for (auto v : preperiod) put(v);
  for (int rep = 0; rep < 2; ++rep) {
    for (auto v : cycle) put(v);
  }
  return out + ",...>";
}

AdicIncrement adic_add_one(const AdicInteger& x, const OdometerSpec& alpha) {
  AdicIncrement out{x, false};
  for (std::size_t i = 0; i < out.value.digits.size(); ++i) {
    const std::uint64_t base = alpha.alpha(i + 1);
    if (out.value.digits[i] >= base) {
      throw DomainError("digit " + std::to_string(i + 1) + " is " +
                        std::to_string(out.value.digits[i]) + ", must be below " +
                        std::to_string(base));
    }
  }
  for (std::size_t i = 0; i < out.value.digits.size(); ++i) {
    if (++out.value.digits[i] < alpha.alpha(i + 1)) return out;
    out.value.digits[i] = 0;
  }
  out.carry_out = true;
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

unsigned Supernatural::exponent(std::uint64_t prime) const {
  auto it = exponents.find(prime);
  return it == exponents.end() ? 0 : it->second;
}

std::string Supernatural::to_string() const {
  if (exponents.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : exponents) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p) + "^" + (e == kInfinite ? std::string("inf") : std::to_string(e));
  }
  return out;
}

Supernatural supernatural(const OdometerSpec& alpha) {
  alpha.validate();
  Supernatural out;
  for (auto v : alpha.preperiod) {
    for (const auto& [p, e] : factorize(v)) {
      unsigned& slot = out.exponents[p];
      if (slot != Supernatural::kInfinite) slot += e;
    }
  }
  for (auto v : alpha.cycle) {
    for (const auto& [p, e] : factorize(v)) out.exponents[p] = Supernatural::kInfinite;
  }
  return out;
}

bool conjugate_odometers(const OdometerSpec& a, const OdometerSpec& b) {
  return supernatural(a) == supernatural(b);
}

FloorCycleResult floor_cycle_check(const OdometerSpec& alpha, const OdometerJumpSpec& jump) {
  return level_cycle_check(alpha, jump, jump.level);
}

FloorCycleResult level_cycle_check(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                   std::size_t k) {
  alpha.validate();
  check_jump_shape(alpha, jump);
  if (k < jump.level) {
    throw DomainError("level " + std::to_string(k) + " is below the jump level " +
                      std::to_string(jump.level));
  }
  const std::uint64_t m = floors_at(alpha, k);
  const std::uint64_t mi = jump.q.size();
  std::vector<std::uint64_t> image(m);
  for (std::uint64_t j = 0; j < m; ++j) image[j] = (j + jump.q[j % mi]) % m;
  return cycle_of_map(std::move(image));
}

JumpVerdict check_jump_function(const OdometerSpec& alpha, const OdometerJumpSpec& jump) {
  alpha.validate();
  JumpVerdict out;
  try {
    check_jump_shape(alpha, jump);
  } catch (const DomainError& e) {
    out.failed = {1};
    out.witness = e.what();
    return out;
  }
  out.cycle = floor_cycle_check(alpha, jump);
  if (!out.cycle.single_cycle) {
    out.failed.push_back(2);
    if (out.cycle.collision) {
      out.witness = "floor " + std::to_string(*out.cycle.collision) + " is hit twice";
    } else {
      out.witness = "floor 0 lies on a cycle of length " + std::to_string(out.cycle.cycle.size());
    }
  }
  const std::uint64_t mi = jump.q.size();
  const std::uint64_t sum = std::accumulate(jump.q.begin(), jump.q.end(), std::uint64_t{0});
  std::string witness3;
  if (sum % mi != 0) {
    witness3 = "sum of q is " + std::to_string(sum) + ", not a multiple of m_I = " +
               std::to_string(mi);
  } else {
    out.c = sum / mi;
    out.gcd_index = gcd_failure_after(alpha, out.c, jump.level);
    if (out.gcd_index) {
      witness3 = "gcd(c = " + std::to_string(out.c) + ", alpha_" + std::to_string(*out.gcd_index) +
                 " = " + std::to_string(alpha.alpha(*out.gcd_index)) + ") = " +
                 std::to_string(std::gcd(out.c, alpha.alpha(*out.gcd_index)));
    }
  }
  if (!witness3.empty()) {
    out.failed.push_back(3);
    if (out.witness.empty()) out.witness = witness3;
  }
  out.minimal = out.failed.empty();
  return out;
}

SpeedupConstruction construct_speedup(const OdometerSpec& alpha, std::uint64_t c) {
  alpha.validate();
  if (c == 0) throw DomainError("orbit number must be at least 1");
  SpeedupConstruction out;

  std::optional<std::uint64_t> prime;
  for (const auto& [p, e] : factorize(c)) {
    for (auto v : alpha.cycle) {
      if (v % p == 0) prime = prime ? std::min(*prime, p) : p;
    }
  }
  if (prime) {
    ImpossibilityCertificate cert;
    cert.prime = *prime;
    for (std::size_t j = 0; j < alpha.cycle.size(); ++j) {
      if (alpha.cycle[j] % *prime == 0) cert.cycle_positions.push_back(j);
    }
    for (std::size_t k = 1; cert.indices.size() < 6; ++k) {
      if (alpha.alpha(k) % *prime == 0) cert.indices.push_back(k);
    }
    out.impossible = std::move(cert);
    return out;
  }

  std::size_t n = 1;
  for (std::size_t k = 1; k <= alpha.preperiod.size(); ++k) {
    if (std::gcd(c, alpha.alpha(k)) > 1) n = std::max(n, k);
  }
  while (alpha.m(n) <= c) ++n;
  const std::uint64_t m = alpha.m(n);
  const std::uint64_t g = std::gcd(c, m);
  const std::uint64_t next = alpha.alpha(n + 1);
  const std::uint64_t big_m = m * next;
  if (big_m > kMaxFloors) throw DomainError("construction needs too many floors");

  OdometerSpec beta = g > 1 ? with_prefix({g, (m / g) * next}, tail(alpha, n + 2))
                            : with_prefix({big_m}, tail(alpha, n + 2));
  OdometerJumpSpec jump;
  jump.level = g > 1 ? 2 : 1;
  jump.q.assign(big_m, static_cast<std::uint32_t>(c));
  for (std::uint64_t i = big_m - c; i + 1 < big_m - c + g; ++i) {
    jump.q[i] = static_cast<std::uint32_t>(c + 1);
  }
  jump.q[big_m - c + g - 1] = static_cast<std::uint32_t>(c - g + 1);

  JumpVerdict verdict = check_jump_function(beta, jump);
  if (!verdict.minimal || verdict.c != c) {
    throw InconsistencyError("constructed jump vector failed validation: " + verdict.witness);
  }
  out.n = n;
  out.m = m;
  out.g = g;
  out.beta = std::move(beta);
  out.jump = std::move(jump);
  out.verdict = std::move(verdict);
  return out;
}

ImpossibilityCertificate universal_odometer_obstruction(std::uint64_t c, std::size_t count) {
  if (c < 2) throw PreconditionError("orbit number 1 is the trivial speedup p = 1");
  ImpossibilityCertificate cert;
  cert.prime = factorize(c).front().first;
  for (std::size_t k = 1; cert.indices.size() < count; ++k) {
    if ((k + 1) % cert.prime == 0) cert.indices.push_back(k);
  }
  return cert;
}

Permutation odometer_level_permutation(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                       std::size_t k) {
  check_jump_shape(alpha, jump);
  const std::uint64_t m = floors_at(alpha, k);
  const std::uint32_t max_q = *std::max_element(jump.q.begin(), jump.q.end());
  if (m <= max_q) {
    throw PreconditionError("P(" + std::to_string(k) + ") has height " + std::to_string(m) +
                            ", not above max q = " + std::to_string(max_q));
  }
  std::vector<std::uint32_t> column(m);
  for (std::uint64_t j = 0; j < m; ++j) column[j] = jump.q[j % jump.q.size()];
  const ColumnLabeling lab = label_column(column);
  std::vector<Label> image(lab.count);
  for (std::size_t l = 0; l < lab.count; ++l) image[l] = lab.labels[lab.landing[l]];
  try {
    return Permutation(std::move(image));
  } catch (const DomainError& e) {
    throw InconsistencyError(std::string("exit map of P(") + std::to_string(k) +
                             ") is not a permutation: " + e.what());
  }
}

PermutationTower odometer_permutation_tower(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                            std::size_t depth) {
  const JumpVerdict verdict = check_jump_function(alpha, jump);
  if (!verdict.cycle.single_cycle || verdict.c == 0) {
    throw PreconditionError("permutation tower needs a cyclic floor map and integral c: " +
                            verdict.witness);
  }
  PermutationTower out;
  out.c = verdict.c;
  const std::uint32_t max_q = *std::max_element(jump.q.begin(), jump.q.end());
  out.first_level = jump.level;
  while (alpha.m(out.first_level) <= max_q) ++out.first_level;
  Permutation pi = odometer_level_permutation(alpha, jump, out.first_level);
  if (pi.size() != out.c) {
    throw InconsistencyError("labeling uses " + std::to_string(pi.size()) +
                             " labels, orbit number is " + std::to_string(out.c));
  }
  for (std::size_t t = 0; t < depth; ++t) {
    out.levels.push_back(pi);
    out.cyclic.push_back(pi.is_cyclic());
    pi = pi.pow(alpha.alpha(out.first_level + t + 1));
  }
  out.cyclic_forever = odometer_level_permutation(alpha, jump, out.first_level).is_cyclic() &&
                       !gcd_failure_after(alpha, out.c, out.first_level);
  return out;
}

SameOdometerReport verify_sameodom(const OdometerSpec& alpha, const OdometerJumpSpec& jump,
                                   std::size_t levels, std::size_t horizon) {
  const JumpVerdict verdict = check_jump_function(alpha, jump);
  if (!verdict.minimal) {
    throw PreconditionError("jump function is not minimal: " + verdict.witness);
  }
  SameOdometerReport out;
  out.cycles_ok = true;
  for (std::size_t k = jump.level; k < jump.level + levels; ++k) {
    out.levels_checked.push_back(k);
    if (!level_cycle_check(alpha, jump, k).single_cycle) out.cycles_ok = false;
  }

  out.s_odometer = with_prefix({alpha.m(jump.level)}, tail(alpha, jump.level + 1));
  out.conjugate = conjugate_odometers(out.s_odometer, alpha);

  const auto c = static_cast<std::int64_t>(verdict.c);
  const std::uint64_t mi = jump.q.size();
  const std::uint32_t max_q = *std::max_element(jump.q.begin(), jump.q.end());
  out.horizon = horizon;
  out.bound = c * max_q;
  std::uint64_t t = 0;
  std::int64_t sum = 0;
  for (std::size_t n = 0; n < horizon; ++n) {
    const std::uint32_t q = jump.q[t % mi];
    sum += static_cast<std::int64_t>(q) - c;
    t = (t + q) % mi;
    out.min_sum = std::min(out.min_sum, sum);
    out.max_sum = std::max(out.max_sum, sum);
  }
  out.bounded = std::max(-out.min_sum, out.max_sum) <= out.bound;
  return out;
}

}  // namespace speeduplab
