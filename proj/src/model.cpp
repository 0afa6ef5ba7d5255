#include "lifo/model.hpp"

#include <cmath>
#include <string>

#include "lifo/error.hpp"
#include "lifo/kernels.hpp"

namespace lifo {

void ModelParams::validate() const {
  if (k < 2 || k > kMaxTypes) throw ConfigError("k", "must be an integer in 2.." + std::to_string(kMaxTypes));
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "must lie in [0, 1]");
}

double ModelParams::probability(Symbol s) const {
  switch (s.kind) {
    case SymbolKind::Burger: return 1.0 / (2.0 * k);
    case SymbolKind::TypedOrder: return (1.0 - p) / (2.0 * k);
    case SymbolKind::FlexOrder: break;
  }
  return p / 2.0;
}

SymbolThresholds SymbolThresholds::from(const ModelParams& params) {
  params.validate();
  constexpr std::uint64_t half = 1ULL << 31;
  SymbolThresholds th;
  th.burger_limit = half;
  th.flex_limit = half + static_cast<std::uint64_t>(std::llround(params.p * static_cast<double>(half)));
  th.k = static_cast<std::uint32_t>(params.k);
  return th;
}

Symbol sample_symbol(const ModelParams& params, CounterRng& rng) {
  return decode(classify(SymbolThresholds::from(params), rng.next()), params.k);
}

SymbolFeed::SymbolFeed(const ModelParams& params, std::uint64_t key)
    : k_(params.k), thresholds_(SymbolThresholds::from(params)), rng_(key) {}

SymbolFeed::SymbolFeed(int k, Word injected) : k_(k), injected_(std::move(injected)) {
  for (Symbol s : *injected_) validate(s, k);
}

Symbol SymbolFeed::next_injected() {
  if (drawn_ >= injected_->size()) throw StreamExhausted("injected symbol stream exhausted");
  return (*injected_)[drawn_++];
}

void SymbolFeed::refill() {
  kernels::active().fill_symbol_codes(thresholds_, rng_.key(), rng_.counter(), buffer_);
  rng_.skip(kBlock);
  pos_ = 0;
}

}  // namespace lifo
