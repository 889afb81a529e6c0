#pragma once
#include <stdexcept>
#include <string>

namespace gmalab {

// Every validation failure carries one of these codes so tests and the CLI
// can react to the *kind* of failure, not a message string.
enum class errc {
  not_associative,
  not_commutative,
  no_unit,
  not_local,
  mismatched_parent,
  not_a_group,
  closure_too_large,
  relation_violated,
  non_invertible_image,
  not_a_field,
  invalid_order_two_element,
  not_a_cocycle,
  no_convergence,
  not_residual_idempotent,
  not_self_dual,
  corners_not_cyclic,
  too_large_for_exhaustion,
  budget_exceeded,
  not_surjective,
  not_algebra_hom,
  diagram_not_commuting,
  unknown_demo,
  bad_scenario,
  internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline void require(bool ok, errc c, const std::string& what) {
  if (!ok) fail(c, what);
}

} // namespace gmalab
