#pragma once

// Linear PV programs over mutexes and their geometric semantics.
//
//   file   := stmt*                      ('#' comments, blank lines ignored)
//   stmt   := IDENT "=" body | "main" "=" IDENT ("|" IDENT)*
//   body   := action ("." action)*
//   action := ("P"|"V") ( "(" IDENT ")" | IDENT-SUFFIX )
//
// Instruction k (1-based) of a process sits at coordinate k; the ambient
// state space of a process of length L is [0, L+1].

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "area.hpp"

namespace cubical::pv {

enum class Op { P, V };

struct Action {
  Op op;
  std::string resource;
  friend bool operator==(const Action&, const Action&) = default;
};

struct Process {
  std::string name;
  std::vector<Action> body;
  friend bool operator==(const Process&, const Process&) = default;
};

/// Declared processes plus the ordered list run in parallel. The i-th entry
/// of `main` is the i-th coordinate of the geometric model.
struct PvProgram {
  std::vector<Process> processes;
  std::vector<std::string> main;

  const Process& process(std::string_view name) const {
    for (const Process& p : processes)
      if (p.name == name) return p;
    throw std::out_of_range("unknown process '" + std::string(name) + "'");
  }
  std::size_t dim() const { return main.size(); }
};

/// Span of positions during which a process holds a resource.
struct HoldInterval {
  std::size_t process = 0;  // coordinate index (position in main)
  std::string resource;
  std::size_t p_pos = 0;
  std::size_t v_pos = 0;
  friend bool operator==(const HoldInterval&, const HoldInterval&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

enum class ValidationKind { v_without_p, p_while_held, p_unreleased_at_end };

inline const char* to_string(ValidationKind k) {
  switch (k) {
    case ValidationKind::v_without_p: return "V without matching P";
    case ValidationKind::p_while_held: return "P while already held";
    case ValidationKind::p_unreleased_at_end: return "P never released";
  }
  return "?";
}

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationKind kind, std::string process, std::string resource, std::size_t position)
      : std::runtime_error("process " + process + ", resource " + resource + ", position " +
                           std::to_string(position) + ": " + cubical::pv::to_string(kind)),
        kind_(kind),
        process_(std::move(process)),
        resource_(std::move(resource)),
        position_(position) {}
  ValidationKind kind() const { return kind_; }
  const std::string& process() const { return process_; }
  const std::string& resource() const { return resource_; }
  std::size_t position() const { return position_; }

 private:
  ValidationKind kind_;
  std::string process_;
  std::string resource_;
  std::size_t position_;
};

namespace detail {

struct Token {
  enum Kind { ident, equals, bar, dot, lparen, rparen, end } kind;
  std::string text;
  std::size_t column;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '=': k = Token::equals; break;
      case '|': k = Token::bar; break;
      case '.': k = Token::dot; break;
      case '(': k = Token::lparen; break;
      case ')': k = Token::rparen; break;
      default: throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Token::end, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t line_no) : toks_(std::move(toks)), line_(line_no) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Token::Kind k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Token::end ? "end of line" : "'" + t.text + "'";
    throw ParseError(line_, t.column, msg + ", found " + found);
  }

  Action action() {
    const Token& t = peek();
    if (t.kind != Token::ident || (t.text[0] != 'P' && t.text[0] != 'V'))
      fail("expected an action P<resource> or V<resource>");
    next();
    Op op = t.text[0] == 'P' ? Op::P : Op::V;
    if (t.text.size() > 1) return {op, t.text.substr(1)};
    expect(Token::lparen, "'(' or a resource name after P/V");
    std::string res = expect(Token::ident, "resource name").text;
    expect(Token::rparen, "')'");
    return {op, res};
  }

  std::size_t line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace detail

inline PvProgram parse(std::string_view source) {
  PvProgram prog;
  bool have_main = false;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> main_refs;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t nl = source.find('\n', start);
    std::string_view line = source.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? source.size() + 1 : nl + 1;

    detail::LineParser p(detail::tokenize_line(line, line_no), line_no);
    if (p.peek().kind == detail::Token::end) continue;

    const detail::Token name = p.expect(detail::Token::ident, "process name or 'main'");
    p.expect(detail::Token::equals, "'='");
    if (name.text == "main") {
      if (have_main) throw ParseError(line_no, name.column, "duplicate main declaration");
      have_main = true;
      do {
        const detail::Token ref = p.expect(detail::Token::ident, "process name");
        main_refs.push_back({ref.text, {line_no, ref.column}});
      } while (p.peek().kind == detail::Token::bar && (p.next(), true));
    } else {
      for (const Process& existing : prog.processes)
        if (existing.name == name.text)
          throw ParseError(line_no, name.column, "duplicate process name '" + name.text + "'");
      if (p.peek().kind == detail::Token::end) throw ParseError(line_no, p.peek().column, "empty body");
      Process proc{name.text, {}};
      proc.body.push_back(p.action());
      while (p.peek().kind == detail::Token::dot) {
        p.next();
        proc.body.push_back(p.action());
      }
      prog.processes.push_back(std::move(proc));
    }
    if (p.peek().kind != detail::Token::end) p.fail("expected end of statement");
  }

  if (have_main) {
    std::set<std::string> used;
    for (const auto& [ref, where] : main_refs) {
      bool known = std::any_of(prog.processes.begin(), prog.processes.end(),
                               [&](const Process& q) { return q.name == ref; });
      if (!known) throw ParseError(where.first, where.second, "unknown process '" + ref + "' in main");
      if (!used.insert(ref).second)
        throw ParseError(where.first, where.second, "process '" + ref + "' listed twice in main");
      prog.main.push_back(ref);
    }
  } else {
    for (const Process& q : prog.processes) prog.main.push_back(q.name);
  }
  return prog;
}

/// Checks P/V bracketing per process and resource and returns every hold
/// interval, indexed by coordinate (position in main).
inline std::vector<HoldInterval> validate(const PvProgram& prog) {
  std::vector<HoldInterval> holds;
  for (std::size_t i = 0; i < prog.main.size(); ++i) {
    const Process& proc = prog.process(prog.main[i]);
    std::map<std::string, std::size_t> open_at;
    for (std::size_t k = 0; k < proc.body.size(); ++k) {
      const Action& a = proc.body[k];
      const std::size_t pos = k + 1;
      auto it = open_at.find(a.resource);
      if (a.op == Op::P) {
        if (it != open_at.end()) throw ValidationError(ValidationKind::p_while_held, proc.name, a.resource, pos);
        open_at.emplace(a.resource, pos);
      } else {
        if (it == open_at.end()) throw ValidationError(ValidationKind::v_without_p, proc.name, a.resource, pos);
        holds.push_back({i, a.resource, it->second, pos});
        open_at.erase(it);
      }
    }
    if (!open_at.empty()) {
      auto first = std::min_element(open_at.begin(), open_at.end(),
                                    [](const auto& x, const auto& y) { return x.second < y.second; });
      throw ValidationError(ValidationKind::p_unreleased_at_end, proc.name, first->first, first->second);
    }
  }
  std::sort(holds.begin(), holds.end(), [](const HoldInterval& x, const HoldInterval& y) {
    return std::tie(x.process, x.p_pos) < std::tie(y.process, y.p_pos);
  });
  return holds;
}

/// [0, L_i + 1] on each axis.
inline Cube ambient(const PvProgram& prog) {
  if (prog.main.empty()) throw std::invalid_argument("program has no processes");
  std::vector<Interval> f;
  for (const std::string& name : prog.main)
    f.push_back(closed(Rational(0), Rational(static_cast<std::int64_t>(prog.process(name).body.size()) + 1)));
  return Cube(std::move(f));
}

/// Union over shared resources and process pairs of the open hold rectangles,
/// extended by the ambient interval on every other axis.
inline CubicalArea forbidden_region(const PvProgram& prog) {
  const Cube amb = ambient(prog);
  const auto holds = validate(prog);
  std::vector<Cube> cubes;
  for (std::size_t x = 0; x < holds.size(); ++x) {
    for (std::size_t y = 0; y < holds.size(); ++y) {
      const HoldInterval& a = holds[x];
      const HoldInterval& b = holds[y];
      if (a.process >= b.process || a.resource != b.resource) continue;
      auto to_q = [](std::size_t v) { return Rational(static_cast<std::int64_t>(v)); };
      cubes.push_back(amb.with_factor(a.process, open(to_q(a.p_pos), to_q(a.v_pos)))
                          .with_factor(b.process, open(to_q(b.p_pos), to_q(b.v_pos))));
    }
  }
  return normalize(CubeFamily(amb.dim(), std::move(cubes)));
}

inline CubicalArea model(const PvProgram& prog) {
  return area_difference(CubicalArea::from_cube(ambient(prog)), forbidden_region(prog));
}

/// Connected components of the process/resource incidence graph, as sorted
/// coordinate lists ordered by their smallest member.
inline std::vector<std::vector<std::size_t>> resource_groups(const PvProgram& prog) {
  const std::size_t n = prog.main.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Action& a : prog.process(prog.main[i]).body) {
      auto [it, fresh] = owner.emplace(a.resource, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : comps) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

/// The program restricted to the listed coordinates, in that order.
inline PvProgram restrict_to(const PvProgram& prog, std::span<const std::size_t> coords) {
  PvProgram out;
  for (std::size_t c : coords) {
    out.processes.push_back(prog.process(prog.main.at(c)));
    out.main.push_back(prog.main.at(c));
  }
  return out;
}

inline std::string to_string(const Action& a) { return (a.op == Op::P ? "P(" : "V(") + a.resource + ")"; }

}  // namespace cubical::pv
