#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zdim/count.hpp"

namespace zdim {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Budget in elements per streaming call; ZDIM_BUDGET overrides the default.
std::uint64_t default_budget();

enum class NormKind { value, euclidean, l1, binary_length };

std::string to_string(NormKind kind);
NormKind parse_norm_kind(const std::string& text);

// A set of positive integers held as an ascending stream. Elements beyond
// 2^64 are only reachable through level_count.
class IntegerSet {
 public:
  using Visitor = std::function<bool(std::uint64_t)>;  // false stops the walk
  using Enumerator = std::function<void(std::uint64_t lo, std::uint64_t hi, const Visitor&)>;
  using Membership = std::function<bool(std::uint64_t)>;
  using ExactCount = std::function<Count(std::uint64_t a, std::uint64_t b)>;
  // |A_=k|: elements whose binary representation has length k.
  using LevelCount = std::function<Count(std::uint64_t k)>;

  IntegerSet() = default;
  IntegerSet(std::string name, Enumerator enumerator);

  IntegerSet& with_membership(Membership m);
  IntegerSet& with_exact_count(ExactCount c);
  IntegerSet& with_level_count(LevelCount c);

  static IntegerSet from_sorted(std::string name, std::vector<std::uint64_t> elements);
  static IntegerSet empty();

  const std::string& name() const noexcept { return name_; }
  bool has_membership() const noexcept { return static_cast<bool>(membership_); }
  bool has_exact_count() const noexcept { return static_cast<bool>(exact_count_); }
  bool has_level_count() const noexcept { return static_cast<bool>(level_count_); }

  // Visits elements of [lo, hi] in ascending order.
  void enumerate(std::uint64_t lo, std::uint64_t hi, const Visitor& visit) const;
  // Membership predicate, or a stream lookup when none was supplied.
  bool contains(std::uint64_t n) const;
  const ExactCount& exact_count() const noexcept { return exact_count_; }
  const LevelCount& level_count() const noexcept { return level_count_; }

  std::vector<std::uint64_t> elements(std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t budget = default_budget()) const;

 private:
  std::string name_;
  Enumerator enumerator_;
  Membership membership_;
  ExactCount exact_count_;
  LevelCount level_count_;
};

using Coords = std::span<const std::int64_t>;

// Radii within which a generated lattice set is complete.
struct Coverage {
  Wide euclidean_sq = 0;  // every point with |p|^2 <= this is present
  Wide l1 = 0;            // every point with |p|_1 <= this is present
};

class LatticePointSet {
 public:
  using PointVisitor = std::function<bool(Coords)>;
  using Enumerator = std::function<void(const PointVisitor&)>;
  // Number of nonzero points with norm strictly below `bound`; for the
  // Euclidean kind `bound` is a squared norm.
  using NormCounter = std::function<Count(NormKind, Wide bound)>;

  LatticePointSet() = default;
  LatticePointSet(std::string name, unsigned dimension, Enumerator enumerator, Coverage coverage);

  LatticePointSet& with_norm_counter(NormCounter c);
  LatticePointSet& with_cardinality(Count c);

  static LatticePointSet from_points(std::string name, unsigned dimension,
                                     std::vector<std::int64_t> flat_coords);

  const std::string& name() const noexcept { return name_; }
  unsigned dimension() const noexcept { return dimension_; }
  const Coverage& coverage() const noexcept { return coverage_; }
  bool has_norm_counter() const noexcept { return static_cast<bool>(norm_counter_); }
  const NormCounter& norm_counter() const noexcept { return norm_counter_; }
  const std::optional<Count>& cardinality() const noexcept { return cardinality_; }

  void enumerate(const PointVisitor& visit) const;
  // Flattened coordinates of every point (zero vector included if present).
  std::vector<std::int64_t> points(std::uint64_t budget = default_budget()) const;

 private:
  std::string name_;
  unsigned dimension_ = 1;
  Enumerator enumerator_;
  Coverage coverage_;
  NormCounter norm_counter_;
  std::optional<Count> cardinality_;
};

Wide norm_sq(Coords p);
Wide norm_l1(Coords p);

struct CountProfile {
  NormKind norm_kind = NormKind::value;
  unsigned ambient_dimension = 1;
  std::vector<Count> blocks;      // blocks[n] = |A ∩ block(n)|
  std::vector<Count> cumulative;  // cumulative[n] = |A_[1,2^n]|
  // the last block reaches past the generated region of a lattice set
  bool last_block_truncated = false;

  unsigned n_max() const { return blocks.empty() ? 0u : static_cast<unsigned>(blocks.size() - 1); }
  bool all_zero() const;
};

struct ProfileOptions {
  std::uint64_t budget = default_budget();
};

Count count_range(const IntegerSet& set, std::uint64_t a, std::uint64_t b,
                  std::uint64_t budget = default_budget());

using AnySet = std::variant<IntegerSet, LatticePointSet>;

CountProfile block_profile(const IntegerSet& set, NormKind kind, unsigned n_max,
                           const ProfileOptions& options = {});
CountProfile block_profile(const LatticePointSet& set, NormKind kind, unsigned n_max,
                           const ProfileOptions& options = {});
CountProfile block_profile(const AnySet& set, NormKind kind, unsigned n_max,
                           const ProfileOptions& options = {});

struct ZetaSum {
  double value = 0.0;
  bool truncated = false;  // budget hit; value is the partial sum so far
  std::uint64_t terms = 0;
};

ZetaSum zeta_partial(const IntegerSet& set, double s, std::uint64_t N,
                     std::uint64_t budget = default_budget());
ZetaSum zeta_partial(const LatticePointSet& set, double s, std::uint64_t N, NormKind kind,
                     std::uint64_t budget = default_budget());

AnySet parse_set_stream(std::istream& in, const std::string& name = "file");

void write_integer_set(std::ostream& out, const IntegerSet& set, std::uint64_t lo, std::uint64_t hi,
                       std::uint64_t budget = default_budget());
void write_lattice_set(std::ostream& out, const LatticePointSet& set,
                       std::uint64_t budget = default_budget());
void write_profile_csv(std::ostream& out, const CountProfile& profile);

}  // namespace zdim
