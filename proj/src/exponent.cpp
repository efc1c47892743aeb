#include "qdcr/exponent.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "qdcr/error.hpp"

namespace qdcr {

namespace {

thread_local std::uint64_t g_exponent_ops = 0;

std::string at(const std::string& where) { return where.empty() ? std::string("/") : where; }

}  // namespace

Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent overflow in addition");
  return r;
}

Exponent checked_sub(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("exponent overflow in subtraction");
  return r;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exponent overflow in multiplication");
  return r;
}

std::uint64_t exponent_op_count() { return g_exponent_ops; }
void reset_exponent_op_count() { g_exponent_ops = 0; }
void count_exponent_ops(std::uint64_t n) { g_exponent_ops += n; }

ExponentVector::ExponentVector(std::initializer_list<std::pair<Index, Exponent>> init) {
  std::vector<ExponentEntry> entries;
  entries.reserve(init.size());
  for (const auto& [d, e] : init) entries.push_back({d, e});
  *this = from_entries(std::move(entries));
}

ExponentVector ExponentVector::from_entries(std::vector<ExponentEntry> entries) {
  for (const auto& en : entries) {
    if (en.index < 2) throw Error("cyclotomic index must be >= 2, got " + std::to_string(en.index));
  }
  std::sort(entries.begin(), entries.end(),
            [](const ExponentEntry& x, const ExponentEntry& y) { return x.index < y.index; });
  ExponentVector out;
  out.entries_.reserve(entries.size());
  for (const auto& en : entries) {
    if (!out.entries_.empty() && out.entries_.back().index == en.index) {
      out.entries_.back().exp = checked_add(out.entries_.back().exp, en.exp);
    } else {
      out.entries_.push_back(en);
    }
  }
  std::erase_if(out.entries_, [](const ExponentEntry& x) { return x.exp == 0; });
  return out;
}

Exponent ExponentVector::operator[](Index d) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                             [](const ExponentEntry& x, Index v) { return x.index < v; });
  return (it != entries_.end() && it->index == d) ? it->exp : 0;
}

ExponentVector axpy(const ExponentVector& a, const ExponentVector& b, Exponent s) {
  ExponentVector out;
  auto& r = out.entries_;
  r.reserve(a.entries_.size() + b.entries_.size());
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    ++g_exponent_ops;
    if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->index < ib->index)) {
      r.push_back(*ia++);
    } else if (ia == a.entries_.end() || ib->index < ia->index) {
      Exponent e = checked_mul(ib->exp, s);
      if (e != 0) r.push_back({ib->index, e});
      ++ib;
    } else {
      Exponent e = checked_add(ia->exp, checked_mul(ib->exp, s));
      if (e != 0) r.push_back({ia->index, e});
      ++ia;
      ++ib;
    }
  }
  return out;
}

ExponentVector scale(const ExponentVector& a, Exponent n) {
  ExponentVector out;
  if (n == 0) return out;
  out.entries_.reserve(a.entries_.size());
  for (const auto& en : a.entries_) {
    ++g_exponent_ops;
    out.entries_.push_back({en.index, checked_mul(en.exp, n)});
  }
  return out;
}

ExponentVector normalize(const ExponentVector& e) { return ExponentVector::from_entries(e.entries()); }

std::size_t support_size(const ExponentVector& e) { return e.support_size(); }

CycloMonomial mul(const CycloMonomial& a, const CycloMonomial& b) {
  return {a.sigma * b.sigma, checked_add(a.P, b.P), axpy(a.exps, b.exps, 1)};
}

CycloMonomial div(const CycloMonomial& a, const CycloMonomial& b) {
  return {a.sigma * b.sigma, checked_sub(a.P, b.P), axpy(a.exps, b.exps, -1)};
}

CycloMonomial pow(const CycloMonomial& a, Exponent n) {
  int sigma = (a.sigma == -1 && (n % 2 != 0)) ? -1 : 1;
  return {sigma, checked_mul(a.P, n), scale(a.exps, n)};
}

namespace {

// e = 2*floor(e/2) + r with r in {0,1}, also for negative e.
std::pair<Exponent, Exponent> floor_halve(Exponent e) {
  Exponent half = e >= 0 ? e / 2 : -((-e + 1) / 2);
  return {half, e - 2 * half};
}

}  // namespace

SquareSplit sqrt_split(const CycloMonomial& g) {
  std::vector<ExponentEntry> root;
  std::vector<ExponentEntry> rad;
  for (const auto& en : g.exps) {
    auto [half, rem] = floor_halve(en.exp);
    if (half != 0) root.push_back({en.index, half});
    if (rem != 0) rad.push_back({en.index, rem});
  }
  auto [p_half, p_rem] = floor_halve(g.P);
  SquareSplit out;
  out.root = {1, p_half, ExponentVector::from_entries(std::move(root))};
  out.rad = {g.sigma, p_rem, ExponentVector::from_entries(std::move(rad))};
  return out;
}

nlohmann::ordered_json to_json(const CycloMonomial& m) {
  nlohmann::ordered_json e = nlohmann::ordered_json::object();
  for (const auto& en : m.exps) e[std::to_string(en.index)] = en.exp;
  nlohmann::ordered_json j;
  j["sigma"] = m.sigma;
  j["P"] = m.P;
  j["e"] = std::move(e);
  return j;
}

CycloMonomial monomial_from_json(const nlohmann::ordered_json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected monomial object at " + at(where));
  for (const auto& [key, _] : j.items()) {
    if (key != "sigma" && key != "P" && key != "e") {
      throw ParseError("unexpected key \"" + key + "\" at " + at(where));
    }
  }
  for (const char* key : {"sigma", "P", "e"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\" at " + at(where));
  }
  const auto& sigma = j.at("sigma");
  if (!sigma.is_number_integer() || (sigma.get<int>() != 1 && sigma.get<int>() != -1)) {
    throw ParseError("sigma must be +1 or -1 at " + where + "/sigma");
  }
  if (!j.at("P").is_number_integer()) throw ParseError("P must be an integer at " + where + "/P");
  const auto& e = j.at("e");
  if (!e.is_object()) throw ParseError("e must be an object at " + where + "/e");
  std::vector<ExponentEntry> entries;
  for (const auto& [key, val] : e.items()) {
    std::size_t used = 0;
    Index d = 0;
    try {
      d = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || d < 2) {
      throw ParseError("bad cyclotomic index \"" + key + "\" at " + where + "/e");
    }
    if (!val.is_number_integer()) throw ParseError("exponent must be an integer at " + where + "/e/" + key);
    entries.push_back({d, val.get<Exponent>()});
  }
  return {sigma.get<int>(), j.at("P").get<Exponent>(), ExponentVector::from_entries(std::move(entries))};
}

std::ostream& operator<<(std::ostream& os, const ExponentVector& e) {
  os << '{';
  bool first = true;
  for (const auto& en : e) {
    if (!first) os << ',';
    os << en.index << ':' << en.exp;
    first = false;
  }
  return os << '}';
}

std::ostream& operator<<(std::ostream& os, const CycloMonomial& m) {
  return os << '(' << (m.sigma > 0 ? "+1" : "-1") << ", P=" << m.P << ", " << m.exps << ')';
}

}  // namespace qdcr
