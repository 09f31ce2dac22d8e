#pragma once

#include <stdexcept>
#include <string>

namespace cscw {

enum class errc {
  malformed_table,
  inconsistent_table,
  point_outside_carrier,
  point_not_in_intersection,
  empty_intersection_within_window,
  t2_pair_found,
  witness_contract_violated,
  oracle_not_tame,
  not_found_within_range,
  window_too_small,
  decoder_window_insufficient,
  validation_failed,
  not_stable_on_window,
  bad_instance,
  tag_violated_on_window,
  not_t1_on_window,
  not_hausdorff_on_window,
  budget_exhausted,
  invalid_order,
  invariant_violated,
  invariant_error,
  hypothesis_violated,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_table: return "MalformedTable";
    case errc::inconsistent_table: return "InconsistentTable";
    case errc::point_outside_carrier: return "PointOutsideCarrier";
    case errc::point_not_in_intersection: return "PointNotInIntersection";
    case errc::empty_intersection_within_window: return "EmptyIntersectionWithinWindow";
    case errc::t2_pair_found: return "T2PairFound";
    case errc::witness_contract_violated: return "WitnessContractViolated";
    case errc::oracle_not_tame: return "OracleNotTame";
    case errc::not_found_within_range: return "NotFoundWithinRange";
    case errc::window_too_small: return "WindowTooSmall";
    case errc::decoder_window_insufficient: return "DecoderWindowInsufficient";
    case errc::validation_failed: return "ValidationFailed";
    case errc::not_stable_on_window: return "NotStableOnWindow";
    case errc::bad_instance: return "BadInstance";
    case errc::tag_violated_on_window: return "TagViolatedOnWindow";
    case errc::not_t1_on_window: return "NotT1OnWindow";
    case errc::not_hausdorff_on_window: return "NotHausdorffOnWindow";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::invalid_order: return "InvalidOrder";
    case errc::invariant_violated: return "InvariantViolated";
    case errc::invariant_error: return "InvariantError";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace cscw
