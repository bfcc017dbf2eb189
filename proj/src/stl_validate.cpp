#include "autotamp/environment.hpp"
#include "autotamp/stl.hpp"

namespace autotamp {

namespace {

void walk(const StlFormula& f, const Environment& env, std::vector<Diagnostic>& diags) {
  if (f.kind == StlKind::Predicate) {
    if (env.resolve_region(f.region).empty()) {
      diags.push_back(make_error(DiagCode::UnknownRegion,
                                 "region '" + f.region + "' does not exist in the environment"));
    }
    return;
  }
  if (f.is_temporal()) {
    const TimeInterval& w = f.interval;
    if (!(w.lower <= w.upper) || std::isinf(w.lower) || w.lower < 0 || std::isnan(w.lower) ||
        std::isnan(w.upper)) {
      diags.push_back(make_error(DiagCode::MalformedInterval,
                                 "interval [" + format_number(w.lower) + ", " +
                                     (w.upper_unbounded() ? std::string("infinite") : format_number(w.upper)) +
                                     "] must have finite lower <= upper and lower >= 0"));
    }
  }
  if (f.left) walk(*f.left, env, diags);
  if (f.right) walk(*f.right, env, diags);
}

}  // namespace

std::vector<Diagnostic> validate(const StlFormula& f, const Environment& env) {
  std::vector<Diagnostic> diags;
  walk(f, env, diags);
  return diags;
}

}  // namespace autotamp
