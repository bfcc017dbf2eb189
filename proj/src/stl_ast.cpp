#include "autotamp/stl.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace autotamp {

std::string to_string(DiagCode code) {
  switch (code) {
    case DiagCode::UnknownToken: return "unknown-token";
    case DiagCode::ArityMismatch: return "arity-mismatch";
    case DiagCode::UnknownRegion: return "unknown-region";
    case DiagCode::MalformedInterval: return "malformed-interval";
    case DiagCode::UnbalancedStructure: return "unbalanced-structure";
    case DiagCode::SchemaError: return "schema-error";
    case DiagCode::InvariantViolation: return "invariant-violation";
    case DiagCode::SpeedViolation: return "speed-violation";
    case DiagCode::TimeLimitViolation: return "time-limit-violation";
    case DiagCode::EmptyWindow: return "empty-window";
    case DiagCode::Infeasible: return "infeasible";
  }
  return "unknown";
}

std::string render(const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  for (const auto& d : diags) {
    out << (d.severity == Severity::Error ? "error" : "warning") << "[" << to_string(d.code) << "]";
    if (d.token_index >= 0) out << " @" << d.token_index;
    out << ": " << d.message << "\n";
  }
  return out.str();
}

namespace {

StlPtr pred(Action action, std::string region) {
  auto f = std::make_shared<StlFormula>();
  f->kind = StlKind::Predicate;
  f->action = action;
  f->region = normalize_region_name(region);
  return f;
}

StlPtr unary(StlKind kind, StlPtr child, TimeInterval window = TimeInterval::all()) {
  auto f = std::make_shared<StlFormula>();
  f->kind = kind;
  f->interval = window;
  f->left = std::move(child);
  return f;
}

StlPtr binary(StlKind kind, StlPtr left, StlPtr right, TimeInterval window = TimeInterval::all()) {
  auto f = std::make_shared<StlFormula>();
  f->kind = kind;
  f->interval = window;
  f->left = std::move(left);
  f->right = std::move(right);
  return f;
}

}  // namespace

StlPtr make_enter(std::string region) { return pred(Action::Enter, std::move(region)); }
StlPtr make_not_enter(std::string region) { return pred(Action::NotEnter, std::move(region)); }
StlPtr make_not(StlPtr child) { return unary(StlKind::Not, std::move(child)); }
StlPtr make_and(StlPtr l, StlPtr r) { return binary(StlKind::And, std::move(l), std::move(r)); }
StlPtr make_or(StlPtr l, StlPtr r) { return binary(StlKind::Or, std::move(l), std::move(r)); }
StlPtr make_imply(StlPtr l, StlPtr r) { return binary(StlKind::Imply, std::move(l), std::move(r)); }
StlPtr make_equiv(StlPtr l, StlPtr r) { return binary(StlKind::Equiv, std::move(l), std::move(r)); }

StlPtr make_finally(TimeInterval window, StlPtr child) {
  return unary(StlKind::Finally, std::move(child), window);
}

StlPtr make_globally(TimeInterval window, StlPtr child) {
  return unary(StlKind::Globally, std::move(child), window);
}

StlPtr make_until(TimeInterval window, StlPtr left, StlPtr right) {
  return binary(StlKind::Until, std::move(left), std::move(right), window);
}

StlPtr make_and_chain(const std::vector<StlPtr>& clauses) {
  if (clauses.empty()) throw std::invalid_argument("make_and_chain: empty clause list");
  StlPtr acc = clauses.back();
  for (auto it = clauses.rbegin() + 1; it != clauses.rend(); ++it) acc = make_and(*it, acc);
  return acc;
}

bool equal(const StlFormula& a, const StlFormula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StlKind::Predicate:
      return a.action == b.action && a.region == b.region;
    case StlKind::Not:
      return equal(*a.left, *b.left);
    case StlKind::And:
    case StlKind::Or:
    case StlKind::Imply:
    case StlKind::Equiv:
      return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    case StlKind::Finally:
    case StlKind::Globally:
      return a.interval == b.interval && equal(*a.left, *b.left);
    case StlKind::Until:
      return a.interval == b.interval && equal(*a.left, *b.left) && equal(*a.right, *b.right);
  }
  return false;
}

std::string normalize_region_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '-') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string interval_text(const TimeInterval& w) {
  std::string out = "[" + format_number(w.lower) + ", ";
  out += w.upper_unbounded() ? "infinite" : format_number(w.upper);
  out += "]";
  return out;
}

void write_preorder(const StlFormula& f, std::string& out) {
  auto app = [&out](std::string_view s) {
    if (!out.empty()) out.push_back(' ');
    out.append(s);
  };
  switch (f.kind) {
    case StlKind::Predicate:
      app((f.action == Action::Enter ? "enter(" : "not_enter(") + f.region + ")");
      return;
    case StlKind::Not:
      app("not");
      write_preorder(*f.left, out);
      return;
    case StlKind::And:
    case StlKind::Or:
    case StlKind::Imply:
    case StlKind::Equiv:
      app(f.kind == StlKind::And     ? "and"
          : f.kind == StlKind::Or    ? "or"
          : f.kind == StlKind::Imply ? "imply"
                                     : "equal");
      write_preorder(*f.left, out);
      write_preorder(*f.right, out);
      return;
    case StlKind::Finally:
    case StlKind::Globally:
      app(f.kind == StlKind::Finally ? "finally" : "globally");
      app(interval_text(f.interval));
      write_preorder(*f.left, out);
      return;
    case StlKind::Until:
      app("until");
      app(interval_text(f.interval));
      write_preorder(*f.left, out);
      write_preorder(*f.right, out);
      return;
  }
}

void write_inorder(const StlFormula& f, std::string& out) {
  switch (f.kind) {
    case StlKind::Predicate:
      out += (f.action == Action::Enter ? "enter(" : "not_enter(") + f.region + ")";
      return;
    case StlKind::Not:
      out += "not ";
      write_inorder(*f.left, out);
      return;
    case StlKind::Finally:
    case StlKind::Globally:
      out += (f.kind == StlKind::Finally ? "finally" : "globally");
      out += interval_text(f.interval) + " ";
      write_inorder(*f.left, out);
      return;
    case StlKind::Until:
      out += "(";
      write_inorder(*f.left, out);
      out += " until" + interval_text(f.interval) + " ";
      write_inorder(*f.right, out);
      out += ")";
      return;
    case StlKind::And:
    case StlKind::Or:
    case StlKind::Imply:
    case StlKind::Equiv: {
      out += "(";
      write_inorder(*f.left, out);
      out += f.kind == StlKind::And     ? " and "
             : f.kind == StlKind::Or    ? " or "
             : f.kind == StlKind::Imply ? " imply "
                                        : " equal ";
      write_inorder(*f.right, out);
      out += ")";
      return;
    }
  }
}

// pos=false builds the negation of f, pushing the negation inward.
StlPtr nnf(const StlFormula& f, bool pos) {
  switch (f.kind) {
    case StlKind::Predicate: {
      Action a = f.action;
      if (!pos) a = (a == Action::Enter) ? Action::NotEnter : Action::Enter;
      return pred(a, f.region);
    }
    case StlKind::Not:
      return nnf(*f.left, !pos);
    case StlKind::And:
      return binary(pos ? StlKind::And : StlKind::Or, nnf(*f.left, pos), nnf(*f.right, pos));
    case StlKind::Or:
      return binary(pos ? StlKind::Or : StlKind::And, nnf(*f.left, pos), nnf(*f.right, pos));
    case StlKind::Imply:
      // A => B  ==  !A or B
      return binary(pos ? StlKind::Or : StlKind::And, nnf(*f.left, !pos), nnf(*f.right, pos));
    case StlKind::Equiv: {
      // A <=> B  ==  (A => B) and (B => A)
      auto fwd = make_imply(f.left, f.right);
      auto bwd = make_imply(f.right, f.left);
      return nnf(*make_and(fwd, bwd), pos);
    }
    case StlKind::Finally:
      return pos ? make_finally(f.interval, nnf(*f.left, true))
                 : make_globally(f.interval, nnf(*f.left, false));
    case StlKind::Globally:
      return pos ? make_globally(f.interval, nnf(*f.left, true))
                 : make_finally(f.interval, nnf(*f.left, false));
    case StlKind::Until: {
      auto u = make_until(f.interval, nnf(*f.left, true), nnf(*f.right, true));
      return pos ? u : make_not(u);
    }
  }
  throw std::logic_error("nnf: unreachable");
}

}  // namespace

std::string serialize_preorder(const StlFormula& f) {
  std::string out;
  write_preorder(f, out);
  return out;
}

std::string serialize_inorder(const StlFormula& f) {
  std::string out;
  write_inorder(f, out);
  return out;
}

StlPtr to_nnf(const StlFormula& f) { return nnf(f, true); }

}  // namespace autotamp
