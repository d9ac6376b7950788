#include "speeduplab/io.hpp"

#include <sstream>

#include "speeduplab/error.hpp"

namespace speeduplab {

namespace {

const Json& field(const Json& doc, const char* name, const std::string& where) {
  if (!doc.is_object()) throw FormatError(where + ": expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) throw FormatError(where + ": missing field '" + name + "'");
  return *it;
}

std::uint64_t as_uint(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw FormatError(where + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

Word as_word(const Json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array of symbols");
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.push_back(static_cast<Symbol>(as_uint(v[i], where + "[" + std::to_string(i) + "]")));
  }
  return w;
}

std::vector<std::uint64_t> as_uint_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_uint(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Substitution substitution_from_json(const Json& doc) {
  const std::uint64_t n = as_uint(field(doc, "alphabet", "substitution"), "substitution.alphabet");
  const Json& images = field(doc, "images", "substitution");
  if (!images.is_object()) throw FormatError("substitution.images: expected an object");
  if (images.size() != n) {
    throw FormatError("substitution.images: " + std::to_string(images.size()) +
                      " images for alphabet size " + std::to_string(n));
  }
  std::vector<Word> out(n);
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : images.items()) {
    std::size_t a = 0;
    try {
      std::size_t used = 0;
      a = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw FormatError("substitution.images: key '" + key + "' is not a symbol");
    }
    if (a >= n) {
      throw FormatError("substitution.images: key '" + key + "' outside alphabet 0.." +
                        std::to_string(n - 1));
    }
    out[a] = as_word(value, "substitution.images." + key);
    seen[a] = true;
  }
  try {
    return Substitution(std::move(out));
  } catch (const DomainError& e) {
    throw FormatError(std::string("substitution.images: ") + e.what());
  }
}

Json to_json(const Substitution& theta) {
  Json images = Json::object();
  for (Symbol a = 0; a < theta.alphabet_size(); ++a) images[std::to_string(a)] = theta.image(a);
  return Json{{"alphabet", theta.alphabet_size()}, {"images", std::move(images)}};
}

JumpFunction jump_from_json(const Json& doc, const Substitution* theta) {
  if (!doc.is_object()) throw FormatError("jump: expected an object");
  std::optional<std::int64_t> fallback;
  if (auto it = doc.find("default"); it != doc.end() && !it->is_null()) {
    fallback = as_int(*it, "jump.default");
  }
  try {
    if (auto it = doc.find("cylinders"); it != doc.end()) {
      if (theta == nullptr) throw FormatError("jump.cylinders: needs a substitution");
      if (!fallback) throw FormatError("jump.default: required with cylinders");
      if (!it->is_array()) throw FormatError("jump.cylinders: expected an array");
      std::vector<CylinderRule> rules;
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string where = "jump.cylinders[" + std::to_string(i) + "]";
        const Json& r = (*it)[i];
        rules.push_back(CylinderRule{static_cast<int>(as_int(field(r, "offset", where), where + ".offset")),
                                     as_word(field(r, "word", where), where + ".word"),
                                     as_int(field(r, "value", where), where + ".value")});
      }
      return JumpFunction(compile_rules(*theta, rules, *fallback));
    }
    const auto left = static_cast<unsigned>(as_uint(field(doc, "left", "jump"), "jump.left"));
    const auto right = static_cast<unsigned>(as_uint(field(doc, "right", "jump"), "jump.right"));
    CylinderTable table;
    if (auto it = doc.find("table"); it != doc.end()) {
      if (!it->is_array()) throw FormatError("jump.table: expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string where = "jump.table[" + std::to_string(i) + "]";
        const Json& r = (*it)[i];
        Word w = as_word(field(r, "word", where), where + ".word");
        if (theta != nullptr) theta->check_word(w);
        if (!table.emplace(std::move(w), as_int(field(r, "value", where), where + ".value")).second) {
          throw FormatError(where + ": duplicate word");
        }
      }
    }
    return JumpFunction(CylinderFunction(left, right, std::move(table), fallback));
  } catch (const DomainError& e) {
    throw FormatError(std::string("jump: ") + e.what());
  }
}

Json to_json(const JumpFunction& p) {
  Json table = Json::array();
  for (const auto& [word, value] : p.function().table()) {
    table.push_back(Json{{"word", word}, {"value", value}});
  }
  Json out{{"left", p.left()}, {"right", p.right()}, {"table", std::move(table)}};
  if (p.function().fallback()) {
    out["default"] = *p.function().fallback();
  } else {
    out["default"] = nullptr;
  }
  return out;
}

OdometerSpec odometer_from_json(const Json& doc) {
  OdometerSpec out;
  if (auto it = doc.find("preperiod"); doc.is_object() && it != doc.end()) {
    out.preperiod = as_uint_list(*it, "odometer.preperiod");
  }
  out.cycle = as_uint_list(field(doc, "cycle", "odometer"), "odometer.cycle");
  try {
    out.validate();
  } catch (const DomainError& e) {
    throw FormatError(std::string("odometer: ") + e.what());
  }
  return out;
}

Json to_json(const OdometerSpec& alpha) {
  return Json{{"preperiod", alpha.preperiod}, {"cycle", alpha.cycle}};
}

OdometerJumpSpec odometer_jump_from_json(const Json& doc) {
  OdometerJumpSpec out;
  out.level = as_uint(field(doc, "level", "odometer_jump"), "odometer_jump.level");
  for (auto v : as_uint_list(field(doc, "q", "odometer_jump"), "odometer_jump.q")) {
    if (v == 0) throw FormatError("odometer_jump.q: entries must be positive");
    out.q.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

Json to_json(const OdometerJumpSpec& jump) {
  return Json{{"level", jump.level}, {"q", jump.q}};
}

Json to_json(const Permutation& pi) {
  return Json{{"image", pi.image()}, {"cycles", pi.to_string()}};
}

Json to_json(const PermutationTuple& pi) {
  Json out = Json::array();
  for (const auto& p : pi.perms) out.push_back(p.to_string());
  return out;
}

Json to_json(const SigmaSubstitution& sigma) {
  Json out = to_json(sigma.sigma);
  Json pairs = Json::array();
  for (Symbol s = 0; s < sigma.sigma.alphabet_size(); ++s) {
    const auto [i, l] = sigma.pair_of(s);
    pairs.push_back(Json::array({i, l}));
  }
  out["pairs"] = std::move(pairs);
  out["rendered"] = sigma.render();
  return out;
}

Json labeling_table(const Labeling& labeling) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    for (std::size_t j = 0; j < labeling.labels[i].size(); ++j) {
      rows.push_back(Json::array({i, j, labeling.labels[i][j], labeling.jumps[i][j]}));
    }
  }
  return Json{{"level", labeling.level},
              {"c", labeling.c},
              {"columns", Json::array({"column", "height", "label", "jump"})},
              {"rows", std::move(rows)}};
}

std::string walk_records(const WalkTrace& walk) {
  std::ostringstream out;
  out << "step,position,jump\n";
  for (std::size_t n = 0; n < walk.jumps.size(); ++n) {
    out << n << ',' << walk.positions[n] << ',' << walk.jumps[n] << '\n';
  }
  return out.str();
}

std::string trace_csv(const PartialSumTrace& trace) {
  std::ostringstream out;
  out << "n,sum\n";
  for (std::size_t n = 0; n < trace.sums.size(); ++n) out << n << ',' << trace.sums[n] << '\n';
  return out.str();
}

Json to_json(const PartialSumTrace& trace) {
  return Json{{"horizon", trace.horizon},
              {"max_abs", trace.max_abs},
              {"checkpoints", trace.checkpoints},
              {"checkpoint_sums", trace.checkpoint_sums}};
}

}  // namespace speeduplab
