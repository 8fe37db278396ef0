#include "crossmetric/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

std::size_t arity(GroupSignature sig) {
  switch (sig.family) {
    case GroupFamily::FreeAbelian:
      return static_cast<std::size_t>(sig.parameter);
    case GroupFamily::Heisenberg3:
      return 3;
    case GroupFamily::FiniteCyclic:
      return 1;
  }
  return 0;
}

std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string coords_string(const Coordinates& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out + ")";
}

}  // namespace

bool GroupElement::is_identity() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(g.signature().parameter);
  for (std::int64_t c : g.coords()) {
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

std::optional<std::size_t> Ball::find(const GroupElement& g) const {
  const auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GroupModel::GroupModel(GroupSignature signature, std::size_t ball_cap)
    : signature_(signature), ball_cap_(ball_cap) {}

std::shared_ptr<const GroupModel> GroupModel::free_abelian(
    int rank, std::optional<std::vector<Coordinates>> generators, std::size_t ball_cap) {
  if (rank < 1) throw ValidationError("z^d: rank must be at least 1");
  std::shared_ptr<GroupModel> model(
      new GroupModel({GroupFamily::FreeAbelian, rank}, ball_cap));
  model->set_generators(std::move(generators));
  return model;
}

std::shared_ptr<const GroupModel> GroupModel::heisenberg3(
    std::optional<std::vector<Coordinates>> generators, std::size_t ball_cap) {
  std::shared_ptr<GroupModel> model(new GroupModel({GroupFamily::Heisenberg3, 3}, ball_cap));
  model->set_generators(std::move(generators));
  return model;
}

std::shared_ptr<const GroupModel> GroupModel::cyclic(
    int order, std::optional<std::vector<Coordinates>> generators, std::size_t ball_cap) {
  if (order < 1) throw ValidationError("cyclic: order must be at least 1");
  std::shared_ptr<GroupModel> model(
      new GroupModel({GroupFamily::FiniteCyclic, order}, ball_cap));
  model->set_generators(std::move(generators));
  return model;
}

void GroupModel::set_generators(std::optional<std::vector<Coordinates>> generators) {
  std::vector<GroupElement> gens;
  std::vector<GroupElement> required;  // elements that must be reachable
  const std::size_t d = arity(signature_);

  auto unit = [&](std::size_t i, std::int64_t sign) {
    Coordinates c(d, 0);
    c[i] = sign;
    return element(std::move(c));
  };

  switch (signature_.family) {
    case GroupFamily::FreeAbelian:
      for (std::size_t i = 0; i < d; ++i) required.push_back(unit(i, 1));
      break;
    case GroupFamily::Heisenberg3:
      required = {unit(0, 1), unit(1, 1)};
      break;
    case GroupFamily::FiniteCyclic:
      if (signature_.parameter > 1) required = {element({1})};
      break;
  }

  if (!generators) {
    for (const auto& r : required) {
      gens.push_back(r);
      gens.push_back(invert(r));
    }
  } else {
    for (const auto& c : *generators) gens.push_back(element(c));
  }

  // Deduplicate (e.g. 1 = -1 in Z/2) and validate.
  std::vector<GroupElement> unique;
  for (const auto& g : gens) {
    if (g.is_identity()) throw ValidationError("generators: identity is not allowed");
    if (std::find(unique.begin(), unique.end(), g) == unique.end()) unique.push_back(g);
  }
  for (const auto& g : unique) {
    if (std::find(unique.begin(), unique.end(), invert(g)) == unique.end()) {
      throw ValidationError("generators: list is not closed under inverses; missing inverse of " +
                            coords_string(g.coords()));
    }
  }
  generators_ = std::move(unique);

  if (generators) {
    for (const auto& r : required) {
      try {
        (void)word_length(r);
      } catch (const Error&) {
        throw ValidationError("generators: " + coords_string(r.coords()) +
                              " is not reachable; the list does not generate the group");
      }
    }
  }
}

std::string GroupModel::name() const {
  switch (signature_.family) {
    case GroupFamily::FreeAbelian:
      return "z^" + std::to_string(signature_.parameter);
    case GroupFamily::Heisenberg3:
      return "heisenberg3";
    case GroupFamily::FiniteCyclic:
      return "cyclic" + std::to_string(signature_.parameter);
  }
  return "unknown";
}

GroupElement GroupModel::element(Coordinates coords) const {
  if (coords.size() != arity(signature_)) {
    throw ValidationError(name() + ": expected " + std::to_string(arity(signature_)) +
                          " coordinates, got " + std::to_string(coords.size()));
  }
  if (signature_.family == GroupFamily::FiniteCyclic) {
    coords[0] = mod_positive(coords[0], signature_.parameter);
  }
  return GroupElement(signature_, std::move(coords));
}

GroupElement GroupModel::identity() const {
  return GroupElement(signature_, Coordinates(arity(signature_), 0));
}

void GroupModel::check_same_model(const GroupElement& g) const {
  if (!(g.signature() == signature_) || g.coords().size() != arity(signature_)) {
    throw ModelMismatchError("element " + coords_string(g.coords()) +
                             " does not belong to group " + name());
  }
}

GroupElement GroupModel::multiply(const GroupElement& g, const GroupElement& h) const {
  check_same_model(g);
  check_same_model(h);
  const Coordinates& a = g.coords();
  const Coordinates& b = h.coords();
  Coordinates out(a.size());
  switch (signature_.family) {
    case GroupFamily::FreeAbelian:
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
      break;
    case GroupFamily::Heisenberg3:
      out = {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
      break;
    case GroupFamily::FiniteCyclic:
      out[0] = mod_positive(a[0] + b[0], signature_.parameter);
      break;
  }
  return GroupElement(signature_, std::move(out));
}

GroupElement GroupModel::invert(const GroupElement& g) const {
  check_same_model(g);
  const Coordinates& a = g.coords();
  Coordinates out(a.size());
  switch (signature_.family) {
    case GroupFamily::FreeAbelian:
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
      break;
    case GroupFamily::Heisenberg3:
      out = {-a[0], -a[1], -a[2] + a[0] * a[1]};
      break;
    case GroupFamily::FiniteCyclic:
      out[0] = mod_positive(-a[0], signature_.parameter);
      break;
  }
  return GroupElement(signature_, std::move(out));
}

void GroupModel::extend_layers(std::size_t radius) const {
  if (layers_.empty()) {
    const GroupElement e = identity();
    layers_.push_back({e});
    lengths_.emplace(e, 0);
    enumerated_ = 1;
  }
  while (layers_.size() <= radius) {
    const auto& last = layers_.back();
    if (last.empty()) {
      layers_.emplace_back();  // finite group exhausted
      continue;
    }
    std::set<GroupElement> next;
    for (const auto& g : last) {
      for (const auto& s : generators_) {
        GroupElement h = multiply(g, s);
        if (!lengths_.contains(h)) next.insert(std::move(h));
      }
    }
    if (enumerated_ + next.size() > ball_cap_) {
      throw ResourceError(name() + ": ball of radius " + std::to_string(layers_.size()) +
                          " exceeds the cap of " + std::to_string(ball_cap_) + " elements");
    }
    const std::size_t layer = layers_.size();
    std::vector<GroupElement> sorted(next.begin(), next.end());
    for (const auto& h : sorted) lengths_.emplace(h, layer);
    enumerated_ += sorted.size();
    layers_.push_back(std::move(sorted));
  }
}

std::optional<std::size_t> GroupModel::cached_length(const GroupElement& g) const {
  const auto it = lengths_.find(g);
  if (it == lengths_.end()) return std::nullopt;
  return it->second;
}

std::size_t GroupModel::word_length(const GroupElement& g) const {
  check_same_model(g);
  std::lock_guard lock(mutex_);
  std::size_t radius = layers_.empty() ? 0 : layers_.size() - 1;
  extend_layers(radius);
  while (true) {
    if (auto len = cached_length(g)) return *len;
    if (layers_.back().empty()) {
      throw PreconditionError(name() + ": element " + coords_string(g.coords()) +
                              " is unreachable from the generators");
    }
    extend_layers(++radius);
  }
}

Ball GroupModel::ball(std::size_t radius) const {
  Ball out;
  out.radius = radius;
  std::lock_guard lock(mutex_);
  extend_layers(radius);
  for (std::size_t r = 0; r <= radius; ++r) {
    for (const auto& g : layers_[r]) {
      out.index.emplace(g, out.elements.size());
      out.elements.push_back(g);
    }
  }
  return out;
}

std::vector<GroupElement> GroupModel::sphere(std::size_t radius) const {
  std::lock_guard lock(mutex_);
  extend_layers(radius);
  return layers_[radius];
}

Rational GroupModel::folner_overlap(const Ball& f, const GroupElement& g) const {
  if (f.elements.empty()) throw PreconditionError("folner_overlap: F must be nonempty");
  check_same_model(g);
  std::int64_t count = 0;
  for (const auto& s : f.elements) {
    if (f.contains(multiply(g, s))) ++count;
  }
  return make_rational(count, static_cast<std::int64_t>(f.size()));
}

std::vector<GroupElement> GroupModel::difference_set(const Ball& f) const {
  std::set<GroupElement> seen;
  for (const auto& s : f.elements) {
    for (const auto& t : f.elements) seen.insert(multiply(s, invert(t)));
  }
  std::vector<std::pair<std::size_t, GroupElement>> keyed;
  keyed.reserve(seen.size());
  for (const auto& g : seen) keyed.emplace_back(word_length(g), g);
  std::sort(keyed.begin(), keyed.end());
  std::vector<GroupElement> out;
  out.reserve(keyed.size());
  for (auto& [len, g] : keyed) out.push_back(std::move(g));
  return out;
}

Coordinates GroupModel::abelianize(const GroupElement& g) const {
  check_same_model(g);
  if (signature_.family == GroupFamily::Heisenberg3) return {g.coords()[0], g.coords()[1]};
  return g.coords();
}

std::size_t GroupModel::abelianization_rank() const noexcept {
  return signature_.family == GroupFamily::Heisenberg3 ? 2 : arity(signature_);
}

std::optional<std::int64_t> GroupModel::abelianization_order() const noexcept {
  if (signature_.family == GroupFamily::FiniteCyclic) return signature_.parameter;
  return std::nullopt;
}

}  // namespace crossmetric
