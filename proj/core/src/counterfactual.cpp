#include "unforced/counterfactual.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "unforced/error.hpp"

namespace unforced {

TouchWinTable::TouchWinTable(std::vector<std::pair<int, double>> entries) {
  if (entries.empty()) throw DataError("touch table is empty");
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [t, p] = entries[i];
    const int expected = static_cast<int>(i) + 2;
    if (t != expected) {
      if (i > 0 && t == entries[i - 1].first) throw DataError("touch table repeats touch " + std::to_string(t));
      throw DataError("touch table must list touches 2, 3, ... without gaps; missing touch " +
                      std::to_string(expected));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DataError("touch table probability for t=" + std::to_string(t) + " is outside [0, 1]");
    }
    probs_.push_back(p);
  }

  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const int t = static_cast<int>(i) + 2;
    if (probs_[i] <= 0.0 || probs_[i] >= 1.0) {
      warnings_.push_back("probability at t=" + std::to_string(t) + " is not strictly inside (0, 1)");
    }
    if (i >= 2 && t % 2 == 0 && probs_[i] < probs_[i - 2]) {
      warnings_.push_back("even-touch probabilities decrease at t=" + std::to_string(t));
    }
    if (i >= 2 && t % 2 == 1 && probs_[i] > probs_[i - 2]) {
      warnings_.push_back("odd-touch probabilities increase at t=" + std::to_string(t));
    }
  }
}

double TouchWinTable::prob(int t) const {
  if (t < 2) throw UsageError("touch " + std::to_string(t) + " is below two; serves cannot be unforced errors");
  const auto idx = std::min(static_cast<std::size_t>(t - 2), probs_.size() - 1);
  return probs_[idx];
}

std::vector<std::pair<int, double>> TouchWinTable::entries() const {
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < probs_.size(); ++i) out.emplace_back(static_cast<int>(i) + 2, probs_[i]);
  return out;
}

TouchWinTable default_table() {
  return TouchWinTable({
      {2, 0.535},
      {3, 0.599},
      {4, 0.558},
      {5, 0.586},
      {6, 0.569},
      {7, 0.575},
      {8, 0.571},
      {9, 0.573},
      {10, 0.573},
  });
}

double prob_win_if_no_ufe(const TouchWinTable& table, int t) { return table.prob(t); }

Player resolve_removed_ufe(const TouchWinTable& table, int t, RandomStream& rng) {
  const double p = table.prob(t);
  return rng.bernoulli(p) ? Player::A : Player::B;
}

ReductionPolicy::ReductionPolicy(double x) : x_(x) {
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError("reduction probability must lie in [0, 1]");
}

bool should_remove_ufe(const ReductionPolicy& policy, RandomStream& rng) { return rng.bernoulli(policy.x()); }

TouchWinTable parse_table(std::istream& in, const std::string& source) {
  std::vector<std::pair<int, double>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string touch_text;
    std::string prob_text;
    if (!(fields >> touch_text)) continue;
    std::string extra;
    if (!(fields >> prob_text) || (fields >> extra)) {
      throw DataError(source + ":" + std::to_string(line_no) + ": expected two columns: touch probability");
    }
    int t = 0;
    const auto [tp, tec] = std::from_chars(touch_text.data(), touch_text.data() + touch_text.size(), t);
    if (tec != std::errc() || tp != touch_text.data() + touch_text.size()) {
      throw DataError(source + ":" + std::to_string(line_no) + ": touch is not an integer");
    }
    double p = 0.0;
    try {
      std::size_t used = 0;
      p = std::stod(prob_text, &used);
      if (used != prob_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(source + ":" + std::to_string(line_no) + ": probability is not a number");
    }
    entries.emplace_back(t, p);
  }
  try {
    return TouchWinTable(std::move(entries));
  } catch (const DataError& e) {
    throw DataError(source + ": " + e.what());
  }
}

TouchWinTable load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": file not found or unreadable");
  return parse_table(in, path.string());
}

}  // namespace unforced
