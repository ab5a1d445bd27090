#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adwords/rational.hpp"

namespace adwords {

enum class Mode { Laminar, General };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Caps the revenue earned over `dims` at `budget`. Dims are kept sorted and
/// unique.
struct BudgetConstraint {
  std::string id;
  std::vector<int> dims;
  Rational budget;
};

struct Bidder {
  std::string id;
  std::vector<BudgetConstraint> constraints;
};

struct Bid {
  int dim = 0;
  Rational value;

  friend bool operator==(const Bid&, const Bid&) = default;
};

/// One online impression. `bids[u]` holds the nonzero bids of bidder u,
/// sorted by dimension.
struct Impression {
  std::string id;
  std::vector<std::vector<Bid>> bids;

  std::span<const Bid> bids_of(std::size_t bidder) const {
    if (bidder >= bids.size()) return {};
    return bids[bidder];
  }
  Rational bid(std::size_t bidder, int dim) const;
};

/// Immutable problem instance. Construction never throws on malformed data;
/// `validate` reports problems instead. Lookup tables skip out-of-range
/// dimensions.
class Instance {
 public:
  Instance() = default;
  Instance(Mode mode, int num_dimensions, std::vector<Bidder> bidders,
           std::vector<Impression> impressions);

  Mode mode() const { return mode_; }
  int num_dimensions() const { return num_dimensions_; }
  const std::vector<Bidder>& bidders() const { return bidders_; }
  const std::vector<Impression>& impressions() const { return impressions_; }
  std::size_t num_bidders() const { return bidders_.size(); }
  std::size_t num_impressions() const { return impressions_.size(); }

  const Bidder& bidder(std::size_t u) const { return bidders_.at(u); }
  const Impression& impression(std::size_t v) const { return impressions_.at(v); }

  std::optional<std::size_t> bidder_index(std::string_view id) const;
  std::optional<std::size_t> constraint_index(std::size_t bidder, std::string_view id) const;

  /// Indices of the constraints of `bidder` whose dims contain `dim`.
  std::span<const int> constraints_containing(std::size_t bidder, int dim) const;

  /// Free-form string metadata carried through serialization; generated
  /// lower-bound transcripts record their analytic optimum here.
  const std::map<std::string, std::string>& meta() const { return meta_; }
  void set_meta(std::map<std::string, std::string> meta) { meta_ = std::move(meta); }

 private:
  Mode mode_ = Mode::General;
  int num_dimensions_ = 0;
  std::vector<Bidder> bidders_;
  std::vector<Impression> impressions_;
  // containing_[u][k] -> constraint indices
  std::vector<std::vector<std::vector<int>>> containing_;
  std::map<std::string, std::string> meta_;
};

/// p: maximum over bidders and dimensions of the number of constraints
/// containing that dimension. eps: maximum bid-to-budget ratio
/// sum_{k in s} r / B over bidders, impressions and constraints.
struct InstanceStats {
  int p = 0;
  Rational eps;
  bool small_bids_ok = true;
};

InstanceStats instance_stats(const Instance& instance);

/// Conservative double evaluation of 1 / lg(2p + 2): exact when 2p + 2 is a
/// power of two, otherwise rounded one ulp toward zero.
double small_bids_threshold(int p);

/// Structural problems, empty when the instance is well formed.
std::vector<std::string> validate(const Instance& instance);

/// Adds a singleton budget {k} for every dimension a bidder bids on or
/// constrains but has no singleton for. The budget is the tightest enclosing
/// budget, or the bidder's total bid on k when nothing encloses it.
Instance synthesize_singletons(const Instance& instance);

/// Same bidders and constraints, different impression sequence.
Instance with_impressions(const Instance& instance, std::vector<Impression> impressions);

/// Multiplies every bid and budget by `factor` (> 0).
Instance scaled(const Instance& instance, const Rational& factor);

}  // namespace adwords
