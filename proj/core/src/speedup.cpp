#include "speeduplab/speedup.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "speeduplab/error.hpp"

namespace speeduplab {

namespace {

constexpr std::uint64_t kMaxColumnHeight = std::uint64_t{1} << 24;

std::vector<Word> level_images(const Substitution& theta, unsigned k) {
  const auto lengths = theta.image_lengths(k);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] > kMaxColumnHeight) {
      throw HorizonError("column " + std::to_string(i) + " at level " + std::to_string(k) +
                             " has height " + std::to_string(lengths[i]) +
                             ", above the supported maximum",
                         0);
    }
  }
  return theta.power(k).images();
}

bool boundaries_agree(const std::vector<Word>& images, unsigned left, unsigned right) {
  for (const Word& w : images) {
    if (w.size() < left || w.size() < right) return false;
  }
  const Word& first = images.front();
  for (const Word& w : images) {
    if (!std::equal(first.begin(), first.begin() + right, w.begin())) return false;
    if (!std::equal(first.end() - left, first.end(), w.end() - left)) return false;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> jumps_from_images(const std::vector<Word>& images,
                                                          const JumpFunction& p) {
  const unsigned left = p.left();
  const unsigned right = p.right();
  const Word& first = images.front();
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(images.size());
  for (const Word& w : images) {
    Word context(first.end() - left, first.end());
    context.insert(context.end(), w.begin(), w.end());
    context.insert(context.end(), first.begin(), first.begin() + right);
    std::vector<std::uint32_t> column(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      column[j] = p(std::span<const Symbol>(context).subspan(j, p.window_length()));
    }
    out.push_back(std::move(column));
  }
  return out;
}

std::size_t round_up_to_multiple(std::size_t value, std::size_t step) {
  return (value + step - 1) / step * step;
}

}  // namespace

KRPartition kr_partition(const Substitution& theta, unsigned k) {
  return KRPartition{k, theta.image_lengths(k)};
}

LevelConditions check_level(const Substitution& theta, const JumpFunction& p, unsigned k) {
  LevelConditions out;
  out.level = k;
  const auto images = level_images(theta, k);
  const std::uint32_t big_m = p.max_jump();
  std::size_t min_height = images.front().size();
  for (const Word& w : images) min_height = std::min(min_height, w.size());
  out.tall_enough = min_height > big_m;
  out.boundary_agrees = boundaries_agree(images, p.left(), p.right());
  if (!out.boundary_agrees) return out;
  const auto jumps = jumps_from_images(images, p);
  const std::size_t top = std::min<std::size_t>(big_m + 1, min_height);
  out.low_floors_agree = true;
  for (const auto& column : jumps) {
    if (!std::equal(column.begin(), column.begin() + static_cast<long>(top), jumps.front().begin())) {
      out.low_floors_agree = false;
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> floor_jumps(const Substitution& theta, const JumpFunction& p,
                                                    unsigned k) {
  const auto images = level_images(theta, k);
  if (!boundaries_agree(images, p.left(), p.right())) {
    throw PreconditionError("level " + std::to_string(k) +
                            ": column words do not share their first " +
                            std::to_string(p.right()) + " and last " + std::to_string(p.left()) +
                            " symbols, so floors do not determine the jump window");
  }
  return jumps_from_images(images, p);
}

NormalizedLevel normalize_level(const Substitution& theta, const JumpFunction& p,
                                const Limits& limits) {
  std::vector<LevelConditions> checked;
  for (unsigned k = 1; k <= limits.max_level; ++k) {
    checked.push_back(check_level(theta, p, k));
    if (checked.back().ok()) {
      return NormalizedLevel{k, theta.power(k), std::move(checked)};
    }
  }
  throw PreconditionError("no level k <= " + std::to_string(limits.max_level) +
                          " makes the jump function constant on KR floors");
}

Labeling build_labeling(std::vector<std::vector<std::uint32_t>> jumps, unsigned level) {
  Labeling out;
  out.level = level;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    ColumnLabeling col = label_column(jumps[i]);
    if (i == 0) {
      out.c = col.count;
    } else if (col.count != out.c) {
      throw InconsistencyError("level " + std::to_string(level) + ": column " + std::to_string(i) +
                               " uses " + std::to_string(col.count) + " labels, column 0 uses " +
                               std::to_string(out.c));
    }
    out.labels.push_back(col.labels);
    out.columns.push_back(std::move(col));
  }
  out.jumps = std::move(jumps);
  return out;
}

Labeling build_labeling(const Substitution& theta, const JumpFunction& p, unsigned k) {
  return build_labeling(floor_jumps(theta, p, k), k);
}

PermutationTuple column_permutations(const Labeling& labeling) {
  PermutationTuple out;
  const std::size_t n = labeling.columns.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ColumnLabeling& col = labeling.columns[i];
    std::vector<Label> image(labeling.c);
    for (std::size_t l = 0; l < labeling.c; ++l) {
      const std::uint64_t h = col.landing[l];
      std::optional<Label> landed;
      for (std::size_t next = 0; next < n; ++next) {
        const auto& labels = labeling.labels[next];
        if (h >= labels.size()) {
          throw InconsistencyError("exit of label " + std::to_string(l) + " from column " +
                                   std::to_string(i) + " lands above column " +
                                   std::to_string(next));
        }
        if (landed && *landed != labels[h]) {
          throw InconsistencyError("exit of label " + std::to_string(l) + " from column " +
                                   std::to_string(i) + " lands on height " + std::to_string(h) +
                                   ", whose label depends on the next column");
        }
        landed = labels[h];
      }
      image[l] = *landed;
    }
    try {
      out.perms.emplace_back(std::move(image));
    } catch (const DomainError& e) {
      throw InconsistencyError("column " + std::to_string(i) +
                               " exit map is not a permutation: " + e.what());
    }
  }
  return out;
}

PermutationTuple compose_along(const PermutationTuple& pi, const Substitution& theta) {
  PermutationTuple out;
  for (const Word& img : theta.images()) {
    Permutation acc = Permutation::identity(pi.labels());
    for (Symbol s : img) acc = pi.perms.at(s).after(acc);
    out.perms.push_back(std::move(acc));
  }
  return out;
}

PermutationIteration iterate_permutations(const PermutationTuple& pi, const Substitution& theta) {
  PermutationIteration out;
  std::map<PermutationTuple, std::size_t> seen;
  PermutationTuple cur = pi;
  for (std::size_t n = 0;; ++n) {
    out.sequence.push_back(cur);
    if (auto it = seen.find(cur); it != seen.end()) {
      out.preperiod = it->second;
      out.period = n - it->second;
      break;
    }
    seen.emplace(cur, n);
    cur = compose_along(cur, theta);
  }
  out.stable = round_up_to_multiple(std::max<std::size_t>(out.preperiod, 1), out.period);
  const std::size_t idx = out.stable < out.sequence.size()
                              ? out.stable
                              : out.preperiod + (out.stable - out.preperiod) % out.period;
  out.stabilized = out.sequence[idx];
  return out;
}

std::vector<std::string> SigmaSubstitution::render() const {
  std::vector<std::string> lines;
  const auto pair = [this](Symbol s) {
    const auto [i, l] = pair_of(s);
    return "(" + std::to_string(i) + "," + std::to_string(l) + ")";
  };
  for (Symbol s = 0; s < sigma.alphabet_size(); ++s) {
    std::string line = "σ:" + pair(s) + " ↦ ";
    for (Symbol t : sigma.image(s)) line += pair(t);
    lines.push_back(std::move(line));
  }
  return lines;
}

SigmaSubstitution build_sigma(const Substitution& theta, const PermutationTuple& pi) {
  const std::size_t c = pi.labels();
  const std::size_t n = theta.alphabet_size();
  if (pi.perms.size() != n) {
    throw DomainError("permutation tuple has " + std::to_string(pi.perms.size()) +
                      " entries for an alphabet of size " + std::to_string(n));
  }
  std::vector<Word> images;
  images.reserve(n * c);
  for (Symbol i = 0; i < n; ++i) {
    for (Label l = 0; l < c; ++l) {
      Word img;
      Label cur = l;
      for (Symbol s : theta.image(i)) {
        img.push_back(static_cast<Symbol>(s * c + cur));
        cur = pi.perms[s](cur);
      }
      images.push_back(std::move(img));
    }
  }
  return SigmaSubstitution{Substitution(std::move(images)), n, c};
}

SpeedupAnalysis analyze_speedup(const Substitution& theta, const JumpFunction& p,
                                const Limits& limits, std::size_t aperiodicity_horizon) {
  const PrimitivityResult prim = is_primitive(theta);
  if (!prim.primitive) throw PreconditionError("substitution is not primitive");
  const ProperResult proper = is_proper(theta);
  if (!proper.proper) {
    throw PreconditionError("substitution is not proper up to power " +
                            std::to_string(proper.searched));
  }
  const AperiodicityVerdict aperiodic = is_aperiodic_up_to(theta, aperiodicity_horizon);
  if (aperiodic.kind == AperiodicityVerdict::Kind::Periodic) {
    throw PreconditionError("substitution subshift is periodic: |W_" +
                            std::to_string(aperiodic.collapse_at) + "| >= |W_" +
                            std::to_string(aperiodic.collapse_at + 1) + "|");
  }

  Substitution step = theta.power(proper.power);
  NormalizedLevel normalized = normalize_level(step, p, limits);
  Labeling labeling = build_labeling(step, p, normalized.level);
  PermutationTuple pi = column_permutations(labeling);
  PermutationIteration iteration = iterate_permutations(pi, step);

  const std::size_t offset = round_up_to_multiple(iteration.preperiod, iteration.period);
  const auto sigma_level = static_cast<unsigned>(normalized.level + offset);
  const auto sigma_power = static_cast<unsigned>(iteration.period);
  PermutationTuple sigma_pi = iteration.sequence.at(offset);
  SigmaSubstitution sigma = build_sigma(step.power(sigma_power), sigma_pi);
  PrimitivityResult sigma_prim = is_primitive(sigma.sigma);
  const std::size_t c = labeling.c;

  return SpeedupAnalysis{
      .step = std::move(step),
      .proper_power = proper.power,
      .seed = proper.left,
      .jump = p,
      .aperiodicity_horizon = aperiodicity_horizon,
      .normalized = std::move(normalized),
      .labeling = std::move(labeling),
      .pi = std::move(pi),
      .iteration = std::move(iteration),
      .sigma_level = sigma_level,
      .sigma_power = sigma_power,
      .sigma_pi = std::move(sigma_pi),
      .sigma = std::move(sigma),
      .sigma_primitivity = sigma_prim,
      .minimal = sigma_prim.primitive,
      .c = c,
  };
}

bool is_minimal_speedup(const Substitution& theta, const JumpFunction& p, const Limits& limits) {
  return analyze_speedup(theta, p, limits).minimal;
}

std::vector<Symbol> simulated_symbol_labels(const SpeedupAnalysis& a, std::size_t blocks,
                                            const Limits& limits) {
  const Labeling lab = build_labeling(a.step, a.jump, a.sigma_level);
  const Word z = fixed_point_prefix(a.step, a.seed, blocks);
  const auto cuts = block_cuts(a.step, z, a.sigma_level);
  const std::uint64_t total = cuts.back();
  const std::size_t need = static_cast<std::size_t>(total) + a.jump.right() + a.jump.max_jump() + 1;
  return with_fixed_point(a.step, a.seed, a.jump.left(), need, limits, [&](const OrbitPrefix& x) {
    const WalkTrace walk = speedup_walk_to(x, a.jump, 0, static_cast<std::int64_t>(total));
    std::vector<Symbol> out;
    out.reserve(blocks);
    std::size_t b = 0;
    for (std::int64_t t : walk.positions) {
      const auto u = static_cast<std::uint64_t>(t);
      if (u >= total) break;
      while (u >= cuts[b + 1]) ++b;
      if (out.size() < b) {
        throw InconsistencyError("S-walk skipped the level-" + std::to_string(a.sigma_level) +
                                 " block " + std::to_string(out.size()));
      }
      if (out.size() == b) {
        const Label l = lab.labels[z[b]][u - cuts[b]];
        out.push_back(a.sigma.pair_index(z[b], l));
      }
    }
    return out;
  });
}

std::vector<Symbol> sigma_symbol_labels(const SpeedupAnalysis& a, std::size_t blocks) {
  return fixed_point_prefix(a.sigma.sigma, a.sigma.pair_index(a.seed, 0), blocks);
}

SpeedupAlphabet speedup_alphabet(const Substitution& theta, const JumpFunction& p) {
  BlockRecoding rec = block_recode(theta, p);
  const std::size_t big_m = rec.jump.max_jump();
  std::set<Word, WordLess> blocks;
  for (const Word& w : language(rec.recoded, big_m)) {
    const std::uint32_t v = rec.jump(std::span<const Symbol>(w).first(1));
    blocks.emplace(w.begin(), w.begin() + v);
  }
  return SpeedupAlphabet{std::move(rec), {blocks.begin(), blocks.end()}};
}

NonconjugacyReport nonconjugacy_evidence(const Substitution& theta, const JumpFunction& p,
                                         std::size_t horizon, unsigned max_m) {
  NonconjugacyReport out;
  out.horizon = horizon;
  out.counts = word_complexity(theta, horizon);
  out.strictly_increasing = true;
  for (std::size_t n = 1; n < out.counts.size(); ++n) {
    if (out.counts[n] <= out.counts[n - 1]) out.strictly_increasing = false;
  }

  const std::size_t m = p.window_length();
  const std::size_t margin = m - 1;
  const auto value_at = [&](const Word& w, std::size_t j) {
    return p(std::span<const Symbol>(w).subspan(j, m));
  };
  for (const Word& w : language(theta, m)) {
    if (value_at(w, 0) != 1) out.hypothesis_holds = true;
  }
  if (!out.hypothesis_holds) return out;

  // Least r such that every r consecutive positions contain one with p >= 2.
  constexpr std::size_t kMaxReturn = 4096;
  for (std::size_t r = 1; r <= kMaxReturn && out.return_time == 0; ++r) {
    bool all_hit = true;
    for (const Word& w : language(theta, r + margin)) {
      bool hit = false;
      for (std::size_t j = 0; j < r && !hit; ++j) hit = value_at(w, j) >= 2;
      if (!hit) {
        all_hit = false;
        break;
      }
    }
    if (all_hit) out.return_time = r;
  }
  if (out.return_time == 0) {
    throw InconclusiveError("return time to {p >= 2} exceeds " + std::to_string(kMaxReturn));
  }

  const std::size_t last_bound = (std::size_t{max_m} + 1) * out.return_time + 1;
  for (unsigned mm = 1; mm <= max_m; ++mm) {
    out.surplus.push_back(SurplusWitness{mm, 0, 0, (std::size_t{mm} + 1) * out.return_time + 1});
  }
  for (std::size_t n = 1; n <= last_bound; ++n) {
    std::int64_t min_surplus = std::numeric_limits<std::int64_t>::max();
    for (const Word& w : language(theta, n + margin)) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<std::int64_t>(value_at(w, j)) - 1;
      min_surplus = std::min(min_surplus, s);
    }
    for (SurplusWitness& sw : out.surplus) {
      if (sw.least_n == 0 && min_surplus > static_cast<std::int64_t>(sw.m)) {
        sw.least_n = n;
        sw.min_surplus = min_surplus;
      }
    }
  }
  for (const SurplusWitness& sw : out.surplus) {
    if (sw.least_n == 0) {
      throw InconsistencyError("jump-sum surplus " + std::to_string(sw.m) +
                               " not reached by N = " + std::to_string(sw.bound_n));
    }
  }
  return out;
}

SelfInduceResult self_induce_map(const SpeedupAnalysis& a, std::size_t steps, const Limits& limits) {
  const std::size_t first = std::max<std::size_t>(
      round_up_to_multiple(a.normalized.level + a.iteration.preperiod, a.sigma_power), 1);
  const auto k1 = static_cast<unsigned>(first);
  SelfInduceResult out;
  out.steps_requested = steps;
  FloorMap& map = out.map;
  map.theta_power = k1;
  map.level1 = build_labeling(a.step, a.jump, k1);
  map.level2 = build_labeling(a.step, a.jump, 2 * k1);
  if (map.level1.c != map.level2.c) {
    throw InconsistencyError("label counts differ between levels " + std::to_string(k1) + " and " +
                             std::to_string(2 * k1));
  }

  const Substitution theta_star = a.step.power(k1);
  const auto heights1 = a.step.image_lengths(k1);
  const std::size_t n = a.step.alphabet_size();
  map.target.resize(n);
  map.sub_block_starts.resize(n);
  map.in_u.resize(n);
  for (Symbol i = 0; i < n; ++i) {
    const Word& img = theta_star.image(i);
    const auto& l1 = map.level1.labels[i];
    const auto& l2 = map.level2.labels[i];
    map.in_u[i].assign(l2.size(), false);
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < img.size(); ++j) {
      const std::uint64_t end = r + heights1[img[j]];
      std::optional<std::uint64_t> hit;
      for (std::uint64_t h = r; h < end && !hit; ++h) {
        if (l2[h] == l1[j]) hit = h;
      }
      if (!hit) {
        throw InconsistencyError("no floor labeled " + std::to_string(l1[j]) + " in sub-block " +
                                 std::to_string(j) + " of level-2 column " + std::to_string(i));
      }
      map.sub_block_starts[i].push_back(r);
      map.target[i].push_back(*hit);
      map.in_u[i][*hit] = true;
      r = end;
    }
  }

  // Blocks of θ* needed to contain the walk and the images of its points.
  const std::uint64_t reach = std::uint64_t{steps + 1} * a.jump.max_jump() + 1;
  std::size_t blocks = 2;
  Word z = fixed_point_prefix(a.step, a.seed, blocks);
  while (block_cuts(a.step, z, k1).back() <= reach) {
    blocks *= 2;
    z = fixed_point_prefix(a.step, a.seed, blocks);
  }
  ++blocks;
  z = fixed_point_prefix(a.step, a.seed, blocks);
  const auto cuts1 = block_cuts(a.step, z, k1);
  const auto cuts2 = block_cuts(a.step, z, 2 * k1);
  const std::size_t need = static_cast<std::size_t>(cuts2.back()) + a.jump.right() + 1;

  const auto phi = [&](std::int64_t t) {
    const auto u = static_cast<std::uint64_t>(t);
    const auto b = static_cast<std::size_t>(std::upper_bound(cuts1.begin(), cuts1.end(), u) -
                                            cuts1.begin() - 1);
    return static_cast<std::int64_t>(cuts2[b] + map.target[z[b]][u - cuts1[b]]);
  };
  const auto in_u = [&](std::int64_t t) {
    const auto u = static_cast<std::uint64_t>(t);
    if (u >= cuts2.back()) throw HorizonError("S_U walk left the decomposed prefix", 0);
    const auto b = static_cast<std::size_t>(std::upper_bound(cuts2.begin(), cuts2.end(), u) -
                                            cuts2.begin() - 1);
    return static_cast<bool>(map.in_u[z[b]][u - cuts2[b]]);
  };

  with_fixed_point(a.step, a.seed, a.jump.left(), need, limits, [&](const OrbitPrefix& x) {
    out.prefix_used = x.symbols.size();
    out.steps_passed = 0;
    out.first_failure.reset();
    const WalkTrace walk = speedup_walk(x, a.jump, 0, steps);
    for (std::size_t s = 0; s < steps; ++s) {
      std::int64_t u = phi(walk.positions[s]);
      do {
        u += evaluate_jump(a.jump, x, u);
      } while (!in_u(u));
      if (u != phi(walk.positions[s + 1])) {
        out.first_failure = s;
        break;
      }
      ++out.steps_passed;
    }
    return 0;
  });
  return out;
}

}  // namespace speeduplab
