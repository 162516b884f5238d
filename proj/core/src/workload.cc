#include "vixsel/workload.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "vixsel/errors.h"

namespace vixsel {

std::string Aggregate::str() const { return "sum(" + measure.str() + ")"; }

bool Query::has_predicate_on(const AttributeRef& attr) const {
  return std::any_of(predicates.begin(), predicates.end(),
                     [&](const Predicate& p) { return p.attribute == attr; });
}

bool Query::references(const AttributeRef& attr) const {
  return has_predicate_on(attr) ||
         std::find(group_by.begin(), group_by.end(), attr) != group_by.end();
}

const Query* Workload::find(std::string_view id) const {
  auto it = std::find_if(queries.begin(), queries.end(),
                         [&](const Query& q) { return q.id == id; });
  return it == queries.end() ? nullptr : &*it;
}

namespace {

enum class Tok { kIdent, kNumber, kString, kComma, kDot, kLParen, kRParen, kEq,
                 kSemicolon, kColon, kEnd };

struct Token {
  Tok kind;
  std::string text;  // identifiers lower-cased; strings unescaped
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::kIdent, to_lower(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) {
        ++j;
      }
      out.push_back({Tok::kNumber, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '\'') {
      std::string text;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < src.size()) {
        if (src[j] == '\'') {
          if (j + 1 < src.size() && src[j + 1] == '\'') {
            text += '\'';
            j += 2;
            continue;
          }
          closed = true;
          ++j;
          break;
        }
        text += src[j++];
      }
      if (!closed) throw SyntaxError("unterminated string literal", tl, tc);
      out.push_back({Tok::kString, std::move(text), tl, tc});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case ',': kind = Tok::kComma; break;
      case '.': kind = Tok::kDot; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case '=': kind = Tok::kEq; break;
      case ';': kind = Tok::kSemicolon; break;
      case ':': kind = Tok::kColon; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", tl, tc);
    }
    out.push_back({kind, std::string(1, c), tl, tc});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd: return "end of input";
    case Tok::kString: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool is_keyword(std::string_view word) {
  return word == "select" || word == "from" || word == "where" ||
         word == "and" || word == "group" || word == "by";
}

// Unresolved syntax tree for one statement.
struct RawAttr {
  std::optional<std::string> table;
  std::string attribute;
  std::size_t line, column;
};

struct RawCond {
  RawAttr lhs;
  std::optional<RawAttr> rhs_attr;
  std::string literal;
  bool quoted = false;
};

struct RawQuery {
  std::optional<std::string> id;
  std::vector<RawAttr> select_attrs;
  std::vector<RawAttr> sums;
  std::vector<std::pair<std::string, Token>> tables;
  std::vector<RawCond> conditions;
  std::vector<RawAttr> group_by;
};

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t pos)
      : tokens_(tokens), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_statement_end() const {
    return peek().kind == Tok::kSemicolon || peek().kind == Tok::kEnd;
  }

  RawQuery parse_statement() {
    RawQuery q;
    if (peek().kind == Tok::kIdent && peek(1).kind == Tok::kColon) {
      q.id = next().text;
      next();
    }
    expect_keyword("select");
    do {
      if (peek().kind == Tok::kIdent && peek().text == "sum" &&
          peek(1).kind == Tok::kLParen) {
        next();
        next();
        q.sums.push_back(parse_name_or_qattr());
        expect(Tok::kRParen, "')'");
      } else {
        q.select_attrs.push_back(parse_qattr());
      }
    } while (accept(Tok::kComma));

    expect_keyword("from");
    do {
      const Token& t = expect_name("table name");
      q.tables.emplace_back(t.text, t);
    } while (accept(Tok::kComma));

    if (accept_keyword("where")) {
      do {
        RawCond cond;
        cond.lhs = parse_qattr();
        expect(Tok::kEq, "'='");
        const Token& t = peek();
        if (t.kind == Tok::kNumber) {
          cond.literal = next().text;
        } else if (t.kind == Tok::kString) {
          cond.literal = next().text;
          cond.quoted = true;
        } else {
          cond.rhs_attr = parse_qattr();
        }
        q.conditions.push_back(std::move(cond));
      } while (accept_keyword("and"));
    }

    if (accept_keyword("group")) {
      expect_keyword("by");
      do {
        q.group_by.push_back(parse_qattr());
      } while (accept(Tok::kComma));
    }
    if (!at_statement_end()) fail("expected end of statement");
    return q;
  }

 private:
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SyntaxError(what + ", found " + describe(t), t.line, t.column);
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view word) {
    if (peek().kind != Tok::kIdent || peek().text != word) return false;
    next();
    return true;
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }
  void expect_keyword(std::string_view word) {
    if (!accept_keyword(word)) fail("expected '" + std::string(word) + "'");
  }
  const Token& expect_name(const char* what) {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) {
      fail(std::string("expected ") + what);
    }
    return next();
  }

  RawAttr parse_qattr() {
    const Token& table = expect_name("qualified attribute");
    expect(Tok::kDot, "'.'");
    const Token& attr = expect_name("attribute name");
    return RawAttr{table.text, attr.text, table.line, table.column};
  }

  RawAttr parse_name_or_qattr() {
    const Token& first = expect_name("measure name");
    if (accept(Tok::kDot)) {
      const Token& attr = expect_name("attribute name");
      return RawAttr{first.text, attr.text, first.line, first.column};
    }
    return RawAttr{std::nullopt, first.text, first.line, first.column};
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_;
};

std::string at(std::size_t line, std::size_t column) {
  return " at " + std::to_string(line) + ":" + std::to_string(column);
}

class Resolver {
 public:
  Resolver(const SchemaCatalog& catalog, const RawQuery& raw)
      : catalog_(catalog), raw_(raw) {}

  Query resolve(std::string default_id) {
    Query q;
    q.id = raw_.id ? *raw_.id : std::move(default_id);
    for (const auto& [name, token] : raw_.tables) {
      if (catalog_.find_table(name) == nullptr) {
        throw UnknownNameError("unknown table '" + name + "'" +
                               at(token.line, token.column));
      }
      if (!q.joined_tables.insert(name).second) {
        throw ValidationError("table '" + name + "' listed twice in from" +
                              at(token.line, token.column));
      }
    }
    if (!q.joined_tables.contains(catalog_.fact_table().name)) {
      throw ValidationError("query " + q.id + " does not reference fact table '" +
                            catalog_.fact_table().name + "'");
    }
    joined_ = &q.joined_tables;

    for (const RawAttr& a : raw_.select_attrs) q.select_attrs.push_back(attr(a));
    for (const RawAttr& a : raw_.sums) {
      Aggregate agg{AggregateFunction::kSum, measure(a)};
      if (std::find(q.aggregates.begin(), q.aggregates.end(), agg) ==
          q.aggregates.end()) {
        q.aggregates.push_back(std::move(agg));
      }
    }
    for (const RawCond& c : raw_.conditions) {
      AttributeRef lhs = attr(c.lhs);
      if (!c.rhs_attr) {
        q.predicates.push_back(Predicate{std::move(lhs), c.literal, c.quoted});
        continue;
      }
      AttributeRef rhs = attr(*c.rhs_attr);
      const bool lf = catalog_.is_fact(lhs.table), rf = catalog_.is_fact(rhs.table);
      if (lf == rf) {
        throw ValidationError("join " + lhs.str() + " = " + rhs.str() +
                              " must link the fact table to a dimension" +
                              at(c.lhs.line, c.lhs.column));
      }
      JoinPair jp = lf ? JoinPair{lhs, rhs} : JoinPair{rhs, lhs};
      if (std::find(q.join_pairs.begin(), q.join_pairs.end(), jp) ==
          q.join_pairs.end()) {
        q.join_pairs.push_back(std::move(jp));
      }
    }
    for (const RawAttr& a : raw_.group_by) q.group_by.push_back(attr(a));
    return q;
  }

 private:
  AttributeRef attr(const RawAttr& a) const {
    const TableStats* t = catalog_.find_table(*a.table);
    if (t == nullptr) {
      throw UnknownNameError("unknown table '" + *a.table + "'" + at(a.line, a.column));
    }
    if (t->find_attribute(a.attribute) == nullptr) {
      throw UnknownNameError("unknown attribute '" + *a.table + "." + a.attribute +
                             "'" + at(a.line, a.column));
    }
    if (!joined_->contains(*a.table)) {
      throw ValidationError("table '" + *a.table + "' is not in the from list" +
                            at(a.line, a.column));
    }
    return AttributeRef{*a.table, a.attribute};
  }

  AttributeRef measure(const RawAttr& a) const {
    if (a.table) return attr(a);
    std::vector<std::string> owners;
    for (const std::string& t : *joined_) {
      if (catalog_.table(t).find_attribute(a.attribute) != nullptr) owners.push_back(t);
    }
    if (owners.empty()) {
      throw UnknownNameError("unknown measure '" + a.attribute + "'" +
                             at(a.line, a.column));
    }
    if (owners.size() > 1) {
      // Measures live on the fact table; prefer it when the name is shared.
      if (std::find(owners.begin(), owners.end(), catalog_.fact_table().name) !=
          owners.end()) {
        return AttributeRef{catalog_.fact_table().name, a.attribute};
      }
      throw ValidationError("ambiguous measure '" + a.attribute + "'" +
                            at(a.line, a.column));
    }
    return AttributeRef{owners.front(), a.attribute};
  }

  const SchemaCatalog& catalog_;
  const RawQuery& raw_;
  const std::set<std::string>* joined_ = nullptr;
};

double parse_ratio(const Token& t) {
  double value = 0.0;
  const char* begin = t.text.data();
  const char* end = begin + t.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw SyntaxError("refresh_ratio must be a real number", t.line, t.column);
  }
  return value;
}

}  // namespace

Query parse_query(std::string_view text, const SchemaCatalog& catalog,
                  std::string default_id) {
  const std::vector<Token> tokens = tokenize(text);
  Parser parser(tokens, 0);
  const RawQuery raw = parser.parse_statement();
  if (parser.peek().kind == Tok::kSemicolon) {
    Parser rest(tokens, parser.pos() + 1);
    if (rest.peek().kind != Tok::kEnd) {
      const Token& t = rest.peek();
      throw SyntaxError("expected a single statement", t.line, t.column);
    }
  }
  return Resolver(catalog, raw).resolve(std::move(default_id));
}

Workload load_workload(std::string_view source, const SchemaCatalog& catalog) {
  const std::vector<Token> tokens = tokenize(source);
  Workload workload;
  std::size_t pos = 0;

  auto kind_at = [&](std::size_t p) {
    return tokens[std::min(p, tokens.size() - 1)].kind;
  };
  if (kind_at(0) == Tok::kIdent && tokens[0].text == "refresh_ratio" &&
      kind_at(1) == Tok::kEq) {
    if (kind_at(2) != Tok::kNumber) {
      throw SyntaxError("refresh_ratio must be a real number", tokens[2].line,
                        tokens[2].column);
    }
    workload.refresh_ratio = parse_ratio(tokens[2]);
    if (workload.refresh_ratio < 0) {
      throw ValidationError("refresh_ratio must be >= 0");
    }
    pos = 3;
  }

  std::set<std::string> ids;
  std::size_t statement = 0;
  while (kind_at(pos) != Tok::kEnd) {
    if (kind_at(pos) == Tok::kSemicolon) {
      ++pos;
      continue;
    }
    ++statement;
    try {
      Parser parser(tokens, pos);
      const RawQuery raw = parser.parse_statement();
      pos = parser.pos();
      Query q = Resolver(catalog, raw).resolve("q" + std::to_string(statement));
      if (!ids.insert(q.id).second) {
        throw ValidationError("duplicate query id '" + q.id + "'");
      }
      workload.queries.push_back(std::move(q));
    } catch (Error& e) {
      e.set_statement(statement);
      throw;
    }
  }
  return workload;
}

Workload load_workload_file(const std::filesystem::path& path,
                            const SchemaCatalog& catalog) {
  return load_workload(read_file(path), catalog);
}

namespace {

std::string quote(const std::string& text) {
  std::string out = "'";
  for (char c : text) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

template <typename Range, typename Fn>
void join(std::ostringstream& out, const Range& items, std::string_view sep, Fn fn) {
  bool first = true;
  for (const auto& item : items) {
    if (!first) out << sep;
    first = false;
    fn(item);
  }
}

}  // namespace

std::string to_sql(const Query& q) {
  std::ostringstream out;
  if (!q.id.empty()) out << q.id << ": ";
  out << "select ";
  std::vector<std::string> sel;
  for (const AttributeRef& a : q.select_attrs) sel.push_back(a.str());
  for (const Aggregate& a : q.aggregates) sel.push_back(a.str());
  join(out, sel, ", ", [&](const std::string& s) { out << s; });
  out << " from ";
  join(out, q.joined_tables, ", ", [&](const std::string& t) { out << t; });
  if (!q.join_pairs.empty() || !q.predicates.empty()) {
    out << " where ";
    std::vector<std::string> conds;
    for (const JoinPair& j : q.join_pairs) {
      conds.push_back(j.fact.str() + " = " + j.dimension.str());
    }
    for (const Predicate& p : q.predicates) {
      conds.push_back(p.attribute.str() + " = " +
                      (p.quoted ? quote(p.constant) : p.constant));
    }
    join(out, conds, " and ", [&](const std::string& s) { out << s; });
  }
  if (!q.group_by.empty()) {
    out << " group by ";
    join(out, q.group_by, ", ", [&](const AttributeRef& a) { out << a.str(); });
  }
  return out.str();
}

}  // namespace vixsel
