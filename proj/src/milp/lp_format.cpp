#include "autotamp/milp/lp_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace autotamp::milp {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sanitize(const std::string& raw, int id) {
  std::string out;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') out.push_back(c);
    else out.push_back('_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "v" + std::to_string(id) + "_" + out;
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<Term>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const Term& t : terms) {
    double c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "- ";
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    }
    os << fmt(c) << " " << names[t.var];
  }
  if (first) os << "0 " << (names.empty() ? "x0" : names[0]);
}

}  // namespace

std::vector<std::string> lp_export_names(const MilpModel& model) {
  std::vector<std::string> names(model.num_variables());
  std::map<std::string, int> used;
  for (int i = 0; i < model.num_variables(); ++i) {
    std::string n = sanitize(model.variable_name(i), i);
    if (used.count(n)) n += "_" + std::to_string(i);
    used[n] = i;
    names[i] = n;
  }
  return names;
}

std::string export_lp_text(const MilpModel& model) {
  const std::vector<std::string> names = lp_export_names(model);
  std::ostringstream os;
  os << (model.objective().sense == ObjSense::Maximize ? "Maximize" : "Minimize") << "\n obj: ";
  write_terms(os, model.objective().terms, names);
  os << "\nSubject To\n";
  int ci = 0;
  for (const auto& row : model.constraints()) {
    std::string cname = row.name.empty() ? "c" + std::to_string(ci) : sanitize(row.name, ci);
    os << " " << cname << ": ";
    write_terms(os, row.terms, names);
    switch (row.sense) {
      case Sense::LessEqual: os << " <= "; break;
      case Sense::GreaterEqual: os << " >= "; break;
      case Sense::Equal: os << " = "; break;
    }
    os << fmt(row.rhs) << "\n";
    ++ci;
  }
  os << "Bounds\n";
  for (const auto& v : model.variables()) {
    const std::string& n = names[v.id];
    if (v.lower == v.upper) {
      os << " " << n << " = " << fmt(v.lower) << "\n";
    } else if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
      os << " " << n << " free\n";
    } else if (!std::isfinite(v.lower)) {
      os << " -inf <= " << n << " <= " << fmt(v.upper) << "\n";
    } else if (!std::isfinite(v.upper)) {
      os << " " << n << " >= " << fmt(v.lower) << "\n";
    } else {
      os << " " << fmt(v.lower) << " <= " << n << " <= " << fmt(v.upper) << "\n";
    }
  }
  bool any_bin = false;
  for (const auto& v : model.variables()) any_bin |= v.kind == VarKind::Binary;
  if (any_bin) {
    os << "Binaries\n";
    for (const auto& v : model.variables())
      if (v.kind == VarKind::Binary) os << " " << names[v.id] << "\n";
  }
  os << "End\n";
  return os.str();
}

namespace {

struct LpToken {
  enum Kind { Name, Number, Plus, Minus, Le, Ge, Eq, Colon } kind;
  std::string text;
  double value = 0;
};

std::vector<LpToken> lp_tokens(const std::string& text) {
  std::vector<LpToken> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\\') {  // comment to end of line
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '+') {
      out.push_back({LpToken::Plus, "+"});
      ++i;
      continue;
    }
    if (c == '-') {
      out.push_back({LpToken::Minus, "-"});
      ++i;
      continue;
    }
    if (c == ':') {
      out.push_back({LpToken::Colon, ":"});
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      size_t j = i + 1;
      if (j < n && text[j] == '=') ++j;
      out.push_back({c == '<' ? LpToken::Le : (c == '>' ? LpToken::Ge : LpToken::Eq),
                     std::string(text.substr(i, j - i))});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      auto res = std::from_chars(text.data() + i, text.data() + n, v);
      if (res.ec != std::errc{}) throw std::invalid_argument("lp: bad number near '" + text.substr(i, 10) + "'");
      out.push_back({LpToken::Number, std::string(text.data() + i, res.ptr), v});
      i = static_cast<size_t>(res.ptr - text.data());
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '.'))
        ++j;
      out.push_back({LpToken::Name, text.substr(i, j - i)});
      i = j;
      continue;
    }
    throw std::invalid_argument(std::string("lp: unexpected character '") + c + "'");
  }
  return out;
}

std::string lowered(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

MilpModel import_lp_text(const std::string& text) {
  auto toks = lp_tokens(text);
  size_t i = 0;
  const size_t n = toks.size();

  auto is_section = [&](size_t k, std::string* which) -> bool {
    if (k >= n || toks[k].kind != LpToken::Name) return false;
    std::string w = lowered(toks[k].text);
    if (w == "maximize" || w == "maximise" || w == "max") *which = "max";
    else if (w == "minimize" || w == "minimise" || w == "min") *which = "min";
    else if (w == "subject" && k + 1 < n && lowered(toks[k + 1].text) == "to") *which = "st";
    else if (w == "st") *which = "st";
    else if (w == "bounds" || w == "bound") *which = "bounds";
    else if (w == "binaries" || w == "binary" || w == "bin") *which = "bin";
    else if (w == "generals" || w == "general" || w == "integers") *which = "gen";
    else if (w == "end") *which = "end";
    else return false;
    return true;
  };

  struct PendingVar {
    double lower = 0;
    double upper = std::numeric_limits<double>::infinity();
    bool binary = false;
    bool bounds_set = false;
  };
  std::map<std::string, PendingVar> vars;
  std::vector<std::string> order;
  auto touch = [&](const std::string& name) -> PendingVar& {
    auto it = vars.find(name);
    if (it == vars.end()) {
      order.push_back(name);
      it = vars.emplace(name, PendingVar{}).first;
    }
    return it->second;
  };

  // name -> coeff accumulation for one linear expression
  auto parse_expr = [&](std::map<std::string, double>& terms) {
    int sign = +1;
    bool expect_term = true;
    while (i < n) {
      std::string sect;
      if (is_section(i, &sect) && !expect_term) return;
      if (toks[i].kind == LpToken::Plus) {
        sign = +1;
        ++i;
        expect_term = true;
        continue;
      }
      if (toks[i].kind == LpToken::Minus) {
        sign = -sign;
        ++i;
        expect_term = true;
        continue;
      }
      if (toks[i].kind == LpToken::Number) {
        double coeff = toks[i].value;
        ++i;
        if (i < n && toks[i].kind == LpToken::Name) {
          std::string sec2;
          if (!is_section(i, &sec2)) {
            terms[toks[i].text] += sign * coeff;
            touch(toks[i].text);
            ++i;
            sign = +1;
            expect_term = false;
            continue;
          }
        }
        // bare constant in an expression: ignored (objective offset)
        sign = +1;
        expect_term = false;
        continue;
      }
      if (toks[i].kind == LpToken::Name) {
        std::string sect2;
        if (is_section(i, &sect2)) return;
        terms[toks[i].text] += sign;
        touch(toks[i].text);
        ++i;
        sign = +1;
        expect_term = false;
        continue;
      }
      return;  // sense token etc.
    }
  };

  std::string section;
  if (!is_section(0, &section) || (section != "max" && section != "min"))
    throw std::invalid_argument("lp: file must start with Maximize or Minimize");
  i = (lowered(toks[0].text) == "subject") ? 2 : 1;
  const bool maximize = section == "max";

  // optional "obj:" label
  if (i + 1 < n && toks[i].kind == LpToken::Name && toks[i + 1].kind == LpToken::Colon) i += 2;
  std::map<std::string, double> obj_terms;
  parse_expr(obj_terms);

  std::string sect;
  if (!is_section(i, &sect) || sect != "st") throw std::invalid_argument("lp: expected Subject To");
  i += (lowered(toks[i].text) == "subject") ? 2 : 1;

  struct RawRow {
    std::map<std::string, double> terms;
    Sense sense;
    double rhs;
    std::string name;
  };
  std::vector<RawRow> rows;
  while (i < n) {
    if (is_section(i, &sect)) break;
    RawRow row;
    if (i + 1 < n && toks[i].kind == LpToken::Name && toks[i + 1].kind == LpToken::Colon) {
      row.name = toks[i].text;
      i += 2;
    }
    parse_expr(row.terms);
    if (i >= n || (toks[i].kind != LpToken::Le && toks[i].kind != LpToken::Ge && toks[i].kind != LpToken::Eq))
      throw std::invalid_argument("lp: constraint without relational operator");
    row.sense = toks[i].kind == LpToken::Le   ? Sense::LessEqual
                : toks[i].kind == LpToken::Ge ? Sense::GreaterEqual
                                              : Sense::Equal;
    ++i;
    int sign = +1;
    if (i < n && toks[i].kind == LpToken::Minus) {
      sign = -1;
      ++i;
    }
    if (i >= n || toks[i].kind != LpToken::Number)
      throw std::invalid_argument("lp: constraint without numeric right-hand side");
    row.rhs = sign * toks[i].value;
    ++i;
    rows.push_back(std::move(row));
  }

  while (i < n && is_section(i, &sect) && sect != "end") {
    if (sect == "gen") throw std::invalid_argument("lp: general integer variables are not supported");
    if (sect == "bounds") {
      ++i;
      while (i < n && !is_section(i, &sect)) {
        // forms: "a <= x <= b" | "x <= b" | "x >= a" | "x = a" | "x free" | "-inf <= x ..."
        double lo = -std::numeric_limits<double>::infinity();
        bool has_leading = false;
        int sign = +1;
        size_t save = i;
        if (toks[i].kind == LpToken::Minus) {
          sign = -1;
          ++i;
        }
        if (i < n && toks[i].kind == LpToken::Number) {
          lo = sign * toks[i].value;
          ++i;
          has_leading = true;
        } else if (i < n && toks[i].kind == LpToken::Name && lowered(toks[i].text) == "inf") {
          lo = sign * std::numeric_limits<double>::infinity();
          ++i;
          has_leading = true;
        } else {
          i = save;
        }
        if (has_leading) {
          if (i >= n || toks[i].kind != LpToken::Le) throw std::invalid_argument("lp: bad bounds line");
          ++i;
        }
        if (i >= n || toks[i].kind != LpToken::Name) throw std::invalid_argument("lp: bad bounds line");
        PendingVar& pv = touch(toks[i].text);
        ++i;
        if (has_leading) {
          pv.lower = lo;
          pv.bounds_set = true;
          if (i < n && toks[i].kind == LpToken::Le) {
            ++i;
            int s2 = +1;
            if (i < n && toks[i].kind == LpToken::Minus) {
              s2 = -1;
              ++i;
            }
            if (i >= n || toks[i].kind != LpToken::Number) throw std::invalid_argument("lp: bad bounds line");
            pv.upper = s2 * toks[i].value;
            ++i;
          }
          continue;
        }
        if (i < n && toks[i].kind == LpToken::Name && lowered(toks[i].text) == "free") {
          pv.lower = -std::numeric_limits<double>::infinity();
          pv.upper = std::numeric_limits<double>::infinity();
          pv.bounds_set = true;
          ++i;
          continue;
        }
        if (i >= n || (toks[i].kind != LpToken::Le && toks[i].kind != LpToken::Ge && toks[i].kind != LpToken::Eq))
          throw std::invalid_argument("lp: bad bounds line");
        const auto op = toks[i].kind;
        ++i;
        int s2 = +1;
        if (i < n && toks[i].kind == LpToken::Minus) {
          s2 = -1;
          ++i;
        }
        double val;
        if (i < n && toks[i].kind == LpToken::Number) {
          val = s2 * toks[i].value;
          ++i;
        } else if (i < n && toks[i].kind == LpToken::Name && lowered(toks[i].text) == "inf") {
          val = s2 * std::numeric_limits<double>::infinity();
          ++i;
        } else {
          throw std::invalid_argument("lp: bad bounds line");
        }
        pv.bounds_set = true;
        if (op == LpToken::Le) pv.upper = val;
        else if (op == LpToken::Ge) pv.lower = val;
        else pv.lower = pv.upper = val;
      }
      continue;
    }
    if (sect == "bin") {
      ++i;
      while (i < n && !is_section(i, &sect)) {
        if (toks[i].kind != LpToken::Name) throw std::invalid_argument("lp: bad Binaries entry");
        PendingVar& pv = touch(toks[i].text);
        pv.binary = true;
        if (!pv.bounds_set) {
          pv.lower = 0;
          pv.upper = 1;
        }
        ++i;
      }
      continue;
    }
    break;
  }

  MilpModel model;
  std::map<std::string, int> ids;
  for (const auto& name : order) {
    const PendingVar& pv = vars[name];
    double lo = pv.lower, hi = pv.upper;
    if (pv.binary) {
      lo = std::max(lo, 0.0);
      hi = std::min(hi, 1.0);
    }
    ids[name] = model.add_variable(lo, hi, pv.binary ? VarKind::Binary : VarKind::Continuous, name);
  }
  for (const auto& row : rows) {
    std::vector<Term> terms;
    for (const auto& [name, coeff] : row.terms) terms.push_back(Term{ids[name], coeff});
    model.add_constraint(std::move(terms), row.sense, row.rhs, row.name);
  }
  std::vector<Term> obj;
  for (const auto& [name, coeff] : obj_terms) obj.push_back(Term{ids[name], coeff});
  model.set_objective(maximize ? ObjSense::Maximize : ObjSense::Minimize, std::move(obj));
  return model;
}

}  // namespace autotamp::milp
