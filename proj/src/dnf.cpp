#include "partsep/dnf.hpp"

#include <algorithm>
#include <unordered_set>

namespace partsep::dnf {

namespace {

void sort_unique(std::vector<VarIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_intersect(const std::vector<VarIndex>& a, const std::vector<VarIndex>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

void check_index(VarIndex v, std::size_t n) {
  if (v >= n) {
    throw Error(Errc::index_out_of_range,
                "term variable " + std::to_string(v) + " outside a universe of " + std::to_string(n));
  }
}

}  // namespace

Term Term::make(std::vector<VarIndex> pos, std::vector<VarIndex> neg) {
  sort_unique(pos);
  sort_unique(neg);
  if (sorted_intersect(pos, neg)) throw Error(Errc::invalid_params, "term has a variable both positive and negated");
  return Term{std::move(pos), std::move(neg)};
}

bool Term::satisfied_by(const Assignment& x) const {
  for (auto v : pos) {
    check_index(v, x.size());
    if (!x[v]) return false;
  }
  for (auto v : neg) {
    check_index(v, x.size());
    if (x[v]) return false;
  }
  return true;
}

bool Term::compatible_with(const Term& other) const {
  return !sorted_intersect(pos, other.neg) && !sorted_intersect(neg, other.pos);
}

bool operator<(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.pos != b.pos) return a.pos < b.pos;
  return a.neg < b.neg;
}

Form::Form(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

bool eval(const Form& theta, const Assignment& x) {
  bool value = false;
  // Evaluate every term so out-of-range indices are always reported.
  for (const auto& t : theta.terms()) value = t.satisfied_by(x) || value;
  return value;
}

std::size_t length(const Form& theta) {
  std::size_t total = 0;
  for (const auto& t : theta.terms()) total += t.size();
  return total;
}

std::size_t depth(const Form& theta) {
  std::size_t d = 0;
  for (const auto& t : theta.terms()) d = std::max(d, t.size());
  return d;
}

bool pair_noncontradictory(const Form& theta, const Form& theta_prime) {
  for (const auto& t : theta.terms()) {
    for (const auto& u : theta_prime.terms()) {
      if (t.compatible_with(u)) return false;
    }
  }
  return true;
}

BitVec satisfying_set(const Term& t, std::size_t n) {
  if (n > 24) throw Error(Errc::invalid_params, "truth tables are limited to 24 variables");
  std::uint64_t care = 0, value = 0;
  for (auto v : t.pos) {
    check_index(v, n);
    care |= std::uint64_t{1} << v;
    value |= std::uint64_t{1} << v;
  }
  for (auto v : t.neg) {
    check_index(v, n);
    care |= std::uint64_t{1} << v;
  }
  const std::uint64_t points = std::uint64_t{1} << n;
  const std::uint64_t free = (points - 1) & ~care;
  BitVec s(points);
  // Enumerate all submasks of the free variables.
  std::uint64_t sub = 0;
  do {
    s.set(value | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
  return s;
}

BitVec truth_table(const Form& theta, std::size_t n) {
  BitVec table(std::size_t{1} << n);
  for (const auto& t : theta.terms()) table |= satisfying_set(t, n);
  return table;
}

namespace {

struct Cube {
  std::uint64_t care;
  std::uint64_t value;
  friend bool operator==(const Cube&, const Cube&) = default;
};

struct CubeHash {
  std::size_t operator()(const Cube& c) const {
    return std::hash<std::uint64_t>{}(c.care * 0x9e3779b97f4a7c15ULL ^ c.value);
  }
};

std::uint64_t low_word(const Assignment& x) { return x.bits().words().empty() ? 0 : x.bits().words()[0]; }

}  // namespace

std::vector<Term> prime_implicants(const VarUniverse& universe, const std::vector<Assignment>& on_set) {
  const std::size_t n = universe.size();
  if (on_set.empty()) throw Error(Errc::invalid_params, "prime implicants need a non-empty on-set");
  if (n > 64) throw Error(Errc::invalid_params, "prime implicant enumeration is limited to 64 variables");
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  std::unordered_set<Cube, CubeHash> level;
  for (const auto& x : on_set) {
    if (x.size() != n) throw Error(Errc::length_mismatch, "on-set point has the wrong length");
    level.insert(Cube{all, low_word(x)});
  }

  // Quine-McCluskey: merge cubes that differ in exactly one cared-for bit.
  // A cube is prime when it never merges.
  std::vector<Cube> primes;
  while (!level.empty()) {
    std::unordered_set<Cube, CubeHash> next;
    std::unordered_set<Cube, CubeHash> merged;
    for (const auto& c : level) {
      std::uint64_t bits = c.care & ~c.value;
      while (bits != 0) {
        const std::uint64_t b = bits & (~bits + 1);
        bits &= bits - 1;
        const Cube partner{c.care, c.value | b};
        if (level.count(partner) != 0) {
          next.insert(Cube{c.care & ~b, c.value});
          merged.insert(c);
          merged.insert(partner);
        }
      }
    }
    for (const auto& c : level) {
      if (merged.count(c) == 0) primes.push_back(c);
    }
    level = std::move(next);
  }

  std::vector<Term> out;
  out.reserve(primes.size());
  for (const auto& c : primes) {
    Term t;
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t b = std::uint64_t{1} << j;
      if ((c.care & b) == 0) continue;
      ((c.value & b) ? t.pos : t.neg).push_back(static_cast<VarIndex>(j));
    }
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json to_json(const Form& theta, const VarUniverse& universe) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : theta.terms()) {
    nlohmann::json pos = nlohmann::json::array(), neg = nlohmann::json::array();
    for (auto v : t.pos) pos.push_back(universe.name(v));
    for (auto v : t.neg) neg.push_back(universe.name(v));
    terms.push_back({{"pos", pos}, {"neg", neg}});
  }
  return {{"family", "dnf"}, {"terms", terms}};
}

Form from_json(const nlohmann::json& j, const VarUniverse& universe) {
  require_known_fields(j, {"family", "terms"}, "dnf");
  if (j.value("family", std::string{}) != "dnf") throw Error(Errc::parse_error, "dnf: family must be \"dnf\"");
  auto it = j.find("terms");
  if (it == j.end() || !it->is_array()) throw Error(Errc::parse_error, "dnf: 'terms' must be an array");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& tj = (*it)[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    require_known_fields(tj, {"pos", "neg"}, where);
    std::vector<VarIndex> pos, neg;
    for (const auto* key : {"pos", "neg"}) {
      auto& dst = std::string_view(key) == "pos" ? pos : neg;
      auto lit = tj.find(key);
      if (lit == tj.end()) continue;
      if (!lit->is_array()) throw Error(Errc::parse_error, where + "." + key + ": expected an array");
      for (const auto& name : *lit) {
        if (!name.is_string()) throw Error(Errc::parse_error, where + "." + key + ": expected variable names");
        if (!universe.contains(name.get<std::string>())) {
          throw Error(Errc::parse_error, where + ": unknown variable '" + name.get<std::string>() + "'");
        }
        dst.push_back(universe.index_of(name.get<std::string>()));
      }
    }
    try {
      terms.push_back(Term::make(std::move(pos), std::move(neg)));
    } catch (const Error& e) {
      throw Error(Errc::parse_error, where + ": " + e.what());
    }
  }
  return Form(std::move(terms));
}

std::string to_string(const Form& theta, const VarUniverse& universe) {
  if (theta.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < theta.terms().size(); ++i) {
    const auto& t = theta.terms()[i];
    if (i) s += " | ";
    if (t.size() == 0) {
      s += "1";
      continue;
    }
    bool first = true;
    auto lit = [&](VarIndex v, bool negated) {
      if (!first) s += " & ";
      first = false;
      if (negated) s += "!";
      s += universe.name(v);
    };
    // Print literals in variable order.
    std::size_t p = 0, q = 0;
    while (p < t.pos.size() || q < t.neg.size()) {
      if (q == t.neg.size() || (p < t.pos.size() && t.pos[p] < t.neg[q])) {
        lit(t.pos[p++], false);
      } else {
        lit(t.neg[q++], true);
      }
    }
  }
  return s;
}

}  // namespace partsep::dnf
