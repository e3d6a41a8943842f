#include "rtctl/fuzzy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "rtctl/errors.hpp"

namespace rtctl::control {

namespace {

std::size_t index_of(FuzzyLabel label) noexcept { return static_cast<std::size_t>(label); }

// Centroid defuzzification resolution over [-1, 1].
constexpr int kCentroidSteps = 2000;

}  // namespace

std::string_view to_string(FuzzyLabel label) noexcept {
  switch (label) {
    case FuzzyLabel::NegLarge: return "neglarge";
    case FuzzyLabel::NegSmall: return "negsmall";
    case FuzzyLabel::Zero: return "zero";
    case FuzzyLabel::PosSmall: return "possmall";
    case FuzzyLabel::PosLarge: return "poslarge";
  }
  return "unknown";
}

double MembershipFunction::degree(double x) const noexcept {
  if (x <= center) {
    if (left_shoulder) return 1.0;
    if (x <= left_foot) return 0.0;
    return (x - left_foot) / (center - left_foot);
  }
  if (right_shoulder) return 1.0;
  if (x >= right_foot) return 0.0;
  return (right_foot - x) / (right_foot - center);
}

MembershipSet default_membership_functions() noexcept {
  return {{
      {FuzzyLabel::NegLarge, -1.0, -1.5, -0.5, true, false},
      {FuzzyLabel::NegSmall, -0.5, -1.0, 0.0, false, false},
      {FuzzyLabel::Zero, 0.0, -0.5, 0.5, false, false},
      {FuzzyLabel::PosSmall, 0.5, 0.0, 1.0, false, false},
      {FuzzyLabel::PosLarge, 1.0, 0.5, 1.5, false, true},
  }};
}

Degrees fuzzify(std::span<const MembershipFunction, kFuzzySets> mfs, double x_norm) noexcept {
  Degrees degrees{};
  for (const auto& mf : mfs) degrees[index_of(mf.label)] = mf.degree(x_norm);
  return degrees;
}

double FuzzyConfig::input_gain() const {
  if (ge) return *ge;
  if (!(reference > 0.0)) throw ConfigError("default input gain 1/reference needs a positive reference");
  return 1.0 / reference;
}

void FuzzyConfig::validate() const {
  clamp.validate();
  if (!(input_gain() > 0.0) || !std::isfinite(input_gain())) throw ConfigError("ge must be positive");
  if (!(gu > 0.0) || !std::isfinite(gu)) throw ConfigError("gu must be positive");
  if (!(reference >= 0.0)) throw ConfigError("reference must be non-negative");
  if (rules != kDefaultRules) {
    throw ConfigError("rule base must pair each error set with its mirror image (neglarge->poslarge, ...)");
  }
}

double normalized_output(const FuzzyConfig& config, double e_norm) {
  static const MembershipSet mfs = default_membership_functions();
  const double x = std::clamp(e_norm, -1.0, 1.0);
  const Degrees input = fuzzify(mfs, x);

  // Firing strength of each rule is the degree of its antecedent.
  Degrees strength{};
  for (const auto& rule : config.rules) strength[index_of(rule.consequent)] += input[index_of(rule.antecedent)];

  double total = 0.0;
  for (double s : strength) total += s;
  assert(total > 0.0 && "membership functions must cover the universe");

  if (config.defuzzifier == Defuzzifier::CenterAverage) {
    double weighted = 0.0;
    for (const auto& mf : mfs) weighted += strength[index_of(mf.label)] * mf.center;
    return weighted / total;
  }

  // Centroid over the output universe [-1, 1], midpoint rule.
  double area = 0.0, moment = 0.0;
  const double h = 2.0 / kCentroidSteps;
  for (int i = 0; i < kCentroidSteps; ++i) {
    const double z = -1.0 + (i + 0.5) * h;
    double mu = 0.0;
    for (const auto& mf : mfs) mu = std::max(mu, std::min(strength[index_of(mf.label)], mf.degree(z)));
    area += mu;
    moment += mu * z;
  }
  return area > 0.0 ? moment / area : 0.0;
}

int fuzzy_update(const FuzzyConfig& config, IntegratorState& state, const plant::IntervalSample& sample) {
  const double e_norm = std::clamp(config.input_gain() * sample.error, -1.0, 1.0);
  const double delta_u = normalized_output(config, e_norm) / config.gu;
  state.current_u = round_and_clamp(static_cast<double>(state.current_u) + delta_u, config.clamp);
  return state.current_u;
}

FuzzyController::FuzzyController(const FuzzyConfig& config, int initial_u) : config_(config) {
  config_.validate();
  state_.current_u = round_and_clamp(static_cast<double>(initial_u), config_.clamp);
}

int FuzzyController::update(const plant::IntervalSample& sample) { return fuzzy_update(config_, state_, sample); }

}  // namespace rtctl::control
