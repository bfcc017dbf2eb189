#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "autotamp/diagnostics.hpp"

namespace autotamp {

struct Environment;

// Time window of a temporal operator, in seconds. The upper bound may be
// +infinity (serialized as the token "infinite").
struct TimeInterval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  static TimeInterval all() { return TimeInterval{}; }
  static TimeInterval of(double lo, double hi) { return TimeInterval{lo, hi}; }
  bool upper_unbounded() const { return std::isinf(upper); }
  bool operator==(const TimeInterval& o) const { return lower == o.lower && upper == o.upper; }
};

enum class StlKind {
  Predicate,
  Not,
  And,
  Or,
  Imply,
  Equiv,
  Finally,
  Globally,
  Until,
};

enum class Action { Enter, NotEnter };

struct StlFormula;
using StlPtr = std::shared_ptr<const StlFormula>;

// Immutable formula tree node. Predicate uses action/region; unary nodes use
// left; binary nodes use left/right; temporal nodes also carry an interval.
struct StlFormula {
  StlKind kind;
  Action action = Action::Enter;  // Predicate only
  std::string region;             // Predicate only
  TimeInterval interval;          // Finally/Globally/Until only
  StlPtr left;
  StlPtr right;

  bool is_temporal() const {
    return kind == StlKind::Finally || kind == StlKind::Globally || kind == StlKind::Until;
  }
};

StlPtr make_enter(std::string region);
StlPtr make_not_enter(std::string region);
StlPtr make_not(StlPtr child);
StlPtr make_and(StlPtr left, StlPtr right);
StlPtr make_or(StlPtr left, StlPtr right);
StlPtr make_imply(StlPtr left, StlPtr right);
StlPtr make_equiv(StlPtr left, StlPtr right);
StlPtr make_finally(TimeInterval window, StlPtr child);
StlPtr make_globally(TimeInterval window, StlPtr child);
StlPtr make_until(TimeInterval window, StlPtr left, StlPtr right);

// Right-fold of clauses into an And-chain; size must be >= 1.
StlPtr make_and_chain(const std::vector<StlPtr>& clauses);

bool equal(const StlFormula& a, const StlFormula& b);
inline bool equal(const StlPtr& a, const StlPtr& b) { return equal(*a, *b); }

// Lowercases and replaces spaces/hyphens with underscores ("blue restroom2"
// -> "blue_restroom2").
std::string normalize_region_name(std::string_view name);

// Shortest round-trip decimal rendering of a double ("10", "0.5").
std::string format_number(double value);

struct ParseResult {
  StlPtr formula;  // null on failure
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return formula != nullptr; }
};

// Root-first token stream, intervals as "[a, b]" right after the temporal
// keyword; a missing interval defaults to [0, infinite].
ParseResult parse_preorder(std::string_view text);

// Parenthesized infix form; same keywords and interval syntax.
ParseResult parse_inorder(std::string_view text);

// Canonical pre-order rendering; temporal intervals are always emitted and an
// unbounded upper end prints as "infinite".
std::string serialize_preorder(const StlFormula& f);
inline std::string serialize_preorder(const StlPtr& f) { return serialize_preorder(*f); }

// Infix rendering with explicit parentheses around binary nodes.
std::string serialize_inorder(const StlFormula& f);

// Region existence and interval sanity against an environment. Empty result
// means the formula is plannable as far as static checks go.
std::vector<Diagnostic> validate(const StlFormula& f, const Environment& env);

// Negation normal form: Imply/Equiv rewritten, negations pushed down through
// And/Or/Finally/Globally and into predicates. A negation directly above an
// Until is kept in place (its children are still normalized): the exact dual
// of a bounded Until is not expressible with this operator set, and both the
// monitor and the planner evaluate Not(Until) natively.
StlPtr to_nnf(const StlFormula& f);
inline StlPtr to_nnf(const StlPtr& f) { return to_nnf(*f); }

}  // namespace autotamp
