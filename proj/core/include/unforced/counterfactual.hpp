#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "unforced/random.hpp"
#include "unforced/records.hpp"

namespace unforced {

/// Probability that A wins a point had A not committed the unforced error on
/// touch t. Defined for t = 2..max_touch(); larger t reuse the last entry.
class TouchWinTable {
public:
  /// Entries must cover touches 2, 3, ..., n with no gaps and probabilities
  /// in [0, 1]; otherwise DataError. Softer problems become warnings().
  explicit TouchWinTable(std::vector<std::pair<int, double>> entries);

  /// Throws UsageError for t < 2: an unforced error cannot happen on the serve.
  double prob(int t) const;
  int max_touch() const noexcept { return static_cast<int>(probs_.size()) + 1; }
  std::vector<std::pair<int, double>> entries() const;

  /// Probabilities at 0 or 1, rising odd touches or falling even touches.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend bool operator==(const TouchWinTable& a, const TouchWinTable& b) noexcept { return a.probs_ == b.probs_; }

private:
  std::vector<double> probs_;  // probs_[t - 2]
  std::vector<std::string> warnings_;
};

/// The published ATP estimates for t = 2..10.
TouchWinTable default_table();

double prob_win_if_no_ufe(const TouchWinTable& table, int t);

/// A with probability prob_win_if_no_ufe(t), else B. One uniform draw.
Player resolve_removed_ufe(const TouchWinTable& table, int t, RandomStream& rng);

/// Fraction x of A's unforced errors that are removed. 0 keeps every error as
/// charted; 1 removes them all.
class ReductionPolicy {
public:
  /// Throws UsageError unless 0 <= x <= 1.
  explicit ReductionPolicy(double x);
  double x() const noexcept { return x_; }

private:
  double x_;
};

/// True with probability x; one uniform draw per call, whatever x is.
bool should_remove_ufe(const ReductionPolicy& policy, RandomStream& rng);

/// Two columns per line, touch then probability, separated by whitespace or a
/// comma. `#` starts a comment; blank lines are ignored.
TouchWinTable parse_table(std::istream& in, const std::string& source_name);
TouchWinTable load_table_file(const std::filesystem::path& path);

}  // namespace unforced
