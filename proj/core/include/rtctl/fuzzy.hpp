#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "rtctl/controllers.hpp"

namespace rtctl::control {

enum class FuzzyLabel : int { NegLarge = 0, NegSmall, Zero, PosSmall, PosLarge };

inline constexpr std::size_t kFuzzySets = 5;

std::string_view to_string(FuzzyLabel label) noexcept;

/// Triangular membership function on the normalized universe [-1, 1].
/// Degree is 1 at center and falls linearly to 0 at each foot. A shoulder
/// side stays at 1 beyond the center instead of falling.
struct MembershipFunction {
  FuzzyLabel label = FuzzyLabel::Zero;
  double center = 0.0;
  double left_foot = -0.5;
  double right_foot = 0.5;
  bool left_shoulder = false;
  bool right_shoulder = false;

  [[nodiscard]] double degree(double x) const noexcept;
};

using MembershipSet = std::array<MembershipFunction, kFuzzySets>;
using Degrees = std::array<double, kFuzzySets>;

/// Centers at -1, -0.5, 0, 0.5, 1; each foot on the neighbouring center; the
/// outer sets saturate. Degrees sum to 1 everywhere.
MembershipSet default_membership_functions() noexcept;

Degrees fuzzify(std::span<const MembershipFunction, kFuzzySets> mfs, double x_norm) noexcept;

struct FuzzyRule {
  FuzzyLabel antecedent;  // IF error is ...
  FuzzyLabel consequent;  // THEN change-in-max-requests is ...

  friend constexpr bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

using RuleBase = std::array<FuzzyRule, kFuzzySets>;

/// The inverse pairing: a negative error (too slow) commands more workers.
inline constexpr RuleBase kDefaultRules{{
    {FuzzyLabel::NegLarge, FuzzyLabel::PosLarge},
    {FuzzyLabel::NegSmall, FuzzyLabel::PosSmall},
    {FuzzyLabel::Zero, FuzzyLabel::Zero},
    {FuzzyLabel::PosSmall, FuzzyLabel::NegSmall},
    {FuzzyLabel::PosLarge, FuzzyLabel::NegLarge},
}};

enum class Defuzzifier {
  CenterAverage,  // firing-strength weighted mean of consequent centers
  Centroid,       // centroid of the max-union of clipped consequent sets
};

struct FuzzyConfig {
  std::optional<double> ge;  // input gain, 1/seconds; defaults to 1/reference
  double gu = 0.05;          // output gain; delta_u = normalized output / gu
  RuleBase rules = kDefaultRules;
  double reference = 20.0;
  Clamp clamp;
  Defuzzifier defuzzifier = Defuzzifier::CenterAverage;

  [[nodiscard]] double input_gain() const;
  void validate() const;
};

struct IntegratorState {
  int current_u = 300;
};

/// Normalized change-in-max-requests for an already-normalized error.
double normalized_output(const FuzzyConfig& config, double e_norm);

/// Fuzzifies e_norm, fires the rule base, defuzzifies, denormalizes by gu and
/// integrates into state.current_u. Returns the new max_requests.
int fuzzy_update(const FuzzyConfig& config, IntegratorState& state, const plant::IntervalSample& sample);

class FuzzyController final : public Controller {
 public:
  FuzzyController(const FuzzyConfig& config, int initial_u);

  int update(const plant::IntervalSample& sample) override;
  [[nodiscard]] std::string_view name() const noexcept override { return "fuzzy"; }
  [[nodiscard]] const IntegratorState& state() const noexcept { return state_; }
  [[nodiscard]] const FuzzyConfig& config() const noexcept { return config_; }

 private:
  FuzzyConfig config_;
  IntegratorState state_;
};

}  // namespace rtctl::control
