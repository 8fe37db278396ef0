#pragma once

// Finitely generated groups of polynomial growth with word metrics.
//
// Three families are supported: free abelian groups Z^d, the discrete
// Heisenberg group in upper-triangular coordinates
//   (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'),
// and finite cyclic groups Z/m. Word lengths are computed by breadth-first
// search over the Cayley graph; the layers are memoized per model.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace crossmetric {

enum class GroupFamily { FreeAbelian, Heisenberg3, FiniteCyclic };

using Coordinates = std::vector<std::int64_t>;

/// Identifies the abstract group an element lives in: Z^rank, H3 or Z/order.
struct GroupSignature {
  GroupFamily family = GroupFamily::FreeAbelian;
  std::int64_t parameter = 0;

  friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupSignature signature, Coordinates coords)
      : signature_(signature), coords_(std::move(coords)) {}

  const Coordinates& coords() const noexcept { return coords_; }
  GroupSignature signature() const noexcept { return signature_; }
  bool is_identity() const noexcept;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.signature_ == b.signature_ && a.coords_ == b.coords_;
  }
  /// Lexicographic on coordinates; only meaningful within one signature.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  GroupSignature signature_;
  Coordinates coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Exact non-negative rational number.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

/// Word-metric ball, ordered by (word length, lexicographic coordinates).
struct Ball {
  std::size_t radius = 0;
  std::vector<GroupElement> elements;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index.contains(g); }
};

class GroupModel : public std::enable_shared_from_this<GroupModel> {
 public:
  static constexpr std::size_t kDefaultBallCap = 200000;

  static std::shared_ptr<const GroupModel> free_abelian(
      int rank, std::optional<std::vector<Coordinates>> generators = std::nullopt,
      std::size_t ball_cap = kDefaultBallCap);
  static std::shared_ptr<const GroupModel> heisenberg3(
      std::optional<std::vector<Coordinates>> generators = std::nullopt,
      std::size_t ball_cap = kDefaultBallCap);
  static std::shared_ptr<const GroupModel> cyclic(
      int order, std::optional<std::vector<Coordinates>> generators = std::nullopt,
      std::size_t ball_cap = kDefaultBallCap);

  GroupFamily family() const noexcept { return signature_.family; }
  GroupSignature signature() const noexcept { return signature_; }
  /// Short identifier: "z^2", "heisenberg3", "cyclic5".
  std::string name() const;
  std::size_t ball_cap() const noexcept { return ball_cap_; }

  /// Builds an element in normal form; throws ValidationError on arity mismatch.
  GroupElement element(Coordinates coords) const;
  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement invert(const GroupElement& g) const;
  std::span<const GroupElement> generators() const noexcept { return generators_; }

  std::size_t word_length(const GroupElement& g) const;
  Ball ball(std::size_t radius) const;
  /// Elements of word length exactly `radius`, lexicographically ordered.
  std::vector<GroupElement> sphere(std::size_t radius) const;

  /// |F ∩ gF| / |F| as an exact fraction.
  Rational folner_overlap(const Ball& f, const GroupElement& g) const;
  /// The set F·F⁻¹, ordered like a ball.
  std::vector<GroupElement> difference_set(const Ball& f) const;

  /// Coordinates of the image in the abelianization (Z^d, Z^2 or Z/m).
  Coordinates abelianize(const GroupElement& g) const;
  std::size_t abelianization_rank() const noexcept;
  /// Order of the abelianization for finite cyclic groups, nullopt otherwise.
  std::optional<std::int64_t> abelianization_order() const noexcept;

  void check_same_model(const GroupElement& g) const;

 private:
  GroupModel(GroupSignature signature, std::size_t ball_cap);
  void set_generators(std::optional<std::vector<Coordinates>> generators);
  void extend_layers(std::size_t radius) const;
  std::optional<std::size_t> cached_length(const GroupElement& g) const;

  GroupSignature signature_;
  std::size_t ball_cap_;
  std::vector<GroupElement> generators_;

  // BFS memo, guarded so the const interface is re-entrant.
  mutable std::mutex mutex_;
  mutable std::vector<std::vector<GroupElement>> layers_;
  mutable std::unordered_map<GroupElement, std::size_t, GroupElementHash> lengths_;
  mutable std::size_t enumerated_ = 0;
};

}  // namespace crossmetric
