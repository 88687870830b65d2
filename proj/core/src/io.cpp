#include "tricolor/io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tricolor::io {

namespace {

using json = nlohmann::ordered_json;

std::string at_line(int line, int column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string position_of(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return at_line(line, column);
}

std::string color_name(const json& c, const std::string& where) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  throw ParseError(where, "color must be a string or an integer");
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

json color_json(const std::string& name) { return name; }

}  // namespace

namespace {

struct ParsedCsp {
  CspDocument doc;  // instance holds the variables only
  std::vector<std::vector<PairRef>> constraints;
};

// Shared reader for binary and general constraints; arity limits are checked per entry.
ParsedCsp parse_csp_text(std::string_view text, std::size_t min_arity, std::size_t max_arity) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(position_of(text, e.byte), "malformed JSON");
  }
  ParsedCsp out;
  std::map<std::string, int> label_of;
  std::map<long long, int> var_of;
  std::vector<std::map<std::string, int>> slot_of;

  const json& vars = member(doc, "variables", "");
  if (!vars.is_array()) throw ParseError("/variables", "expected an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "/variables/" + std::to_string(i);
    const json& id = member(vars[i], "id", where);
    if (!id.is_number_integer()) throw ParseError(where + "/id", "expected an integer");
    const json& colors = member(vars[i], "colors", where);
    if (!colors.is_array() || colors.empty() || colors.size() > static_cast<std::size_t>(kMaxColors)) {
      throw ParseError(where + "/colors", "expected 1 to " + std::to_string(kMaxColors) + " colors");
    }
    if (!var_of.emplace(id.get<long long>(), static_cast<int>(out.doc.ids.size())).second) {
      throw ParseError(where + "/id", "duplicate variable id");
    }
    std::vector<int> labels;
    std::map<std::string, int> slots;
    for (std::size_t j = 0; j < colors.size(); ++j) {
      const std::string name = color_name(colors[j], where + "/colors/" + std::to_string(j));
      if (!slots.emplace(name, static_cast<int>(j)).second) {
        throw ParseError(where + "/colors/" + std::to_string(j), "duplicate color");
      }
      auto [it, fresh] = label_of.emplace(name, static_cast<int>(out.doc.color_names.size()));
      if (fresh) out.doc.color_names.push_back(name);
      labels.push_back(it->second);
    }
    out.doc.instance.add_variable(std::move(labels));
    out.doc.ids.push_back(id.get<long long>());
    slot_of.push_back(std::move(slots));
  }

  const json& cons = doc.contains("constraints") ? doc.at("constraints") : json::array();
  if (!cons.is_array()) throw ParseError("/constraints", "expected an array");
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string where = "/constraints/" + std::to_string(i);
    if (!cons[i].is_array() || cons[i].size() < min_arity || cons[i].size() > max_arity) {
      throw ParseError(where, min_arity == max_arity ? "expected two [variable, color] pairs"
                                                     : "expected a non-empty list of [variable, color] pairs");
    }
    std::vector<PairRef> pairs;
    for (std::size_t k = 0; k < cons[i].size(); ++k) {
      const std::string pw = where + "/" + std::to_string(k);
      const json& p = cons[i][k];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer()) {
        throw ParseError(pw, "expected [variable id, color]");
      }
      const auto v = var_of.find(p[0].get<long long>());
      if (v == var_of.end()) throw ParseError(pw + "/0", "unknown variable id");
      const std::string name = color_name(p[1], pw + "/1");
      const auto s = slot_of[v->second].find(name);
      if (s == slot_of[v->second].end()) throw ParseError(pw + "/1", "color not available to this variable");
      for (const PairRef& q : pairs) {
        if (q.var == v->second) throw ParseError(pw, "variable repeated within a constraint");
      }
      pairs.push_back({v->second, s->second});
    }
    out.constraints.push_back(std::move(pairs));
  }
  return out;
}

}  // namespace

CspDocument parse_csp_json(std::string_view text) {
  ParsedCsp parsed = parse_csp_text(text, 2, 2);
  for (const auto& c : parsed.constraints) parsed.doc.instance.add_constraint(c[0], c[1]);
  return std::move(parsed.doc);
}

GeneralCsp parse_general_csp_json(std::string_view text) {
  const ParsedCsp parsed = parse_csp_text(text, 1, std::numeric_limits<std::size_t>::max());
  GeneralCsp csp;
  for (int v = 0; v < parsed.doc.instance.num_variables(); ++v) {
    csp.domain.push_back(parsed.doc.instance.slot_count(v));
  }
  csp.constraints = parsed.constraints;
  return csp;
}

std::string write_csp_json(const CspDocument& doc) {
  const Instance& inst = doc.instance;
  json vars = json::array();
  for (int v = 0; v < inst.num_variables(); ++v) {
    json colors = json::array();
    for (int label : inst.labels(v)) colors.push_back(color_json(doc.color_names.at(label)));
    vars.push_back({{"id", doc.ids.at(v)}, {"colors", colors}});
  }
  json cons = json::array();
  for (const Constraint& c : inst.constraints()) {
    json pair = json::array();
    for (const PairRef& p : {c.a, c.b}) pair.push_back({doc.ids.at(p.var), doc.color_names.at(inst.label(p))});
    cons.push_back(pair);
  }
  return json{{"variables", vars}, {"constraints", cons}}.dump(2) + "\n";
}

CspDocument document_for(const Instance& inst) {
  CspDocument doc;
  doc.instance = inst;
  int max_label = -1;
  for (int v = 0; v < inst.num_variables(); ++v) {
    doc.ids.push_back(v);
    for (int label : inst.labels(v)) max_label = std::max(max_label, label);
  }
  for (int l = 0; l <= max_label; ++l) doc.color_names.push_back(std::to_string(l));
  return doc;
}

std::string write_general_csp_json(const GeneralCsp& csp) {
  json vars = json::array();
  for (std::size_t v = 0; v < csp.domain.size(); ++v) {
    json colors = json::array();
    for (int c = 0; c < csp.domain[v]; ++c) colors.push_back(c);
    vars.push_back({{"id", v}, {"colors", colors}});
  }
  json cons = json::array();
  for (const auto& c : csp.constraints) {
    json pairs = json::array();
    for (const PairRef& p : c) pairs.push_back({p.var, p.color});
    cons.push_back(pairs);
  }
  return json{{"variables", vars}, {"constraints", cons}}.dump(2) + "\n";
}

namespace {

// Splits text into lines and whitespace-separated tokens with their columns.
struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

long long to_int(const Token& t, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size()) throw ParseError(at_line(line, t.column), "expected an integer, got \"" + t.text + "\"");
  return value;
}

template <class Visit>
void for_each_line(std::string_view text, Visit visit) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!visit(number, line)) return;
  }
}

}  // namespace

Graph parse_dimacs_col(std::string_view text) {
  Graph g;
  bool header = false;
  long long declared = 0;
  int last_line = 0;
  for_each_line(text, [&](int ln, const std::string& line) {
    last_line = ln;
    const auto tok = tokenize(line);
    if (tok.empty() || tok[0].text == "c") return true;
    if (tok[0].text == "p") {
      if (header) throw ParseError(at_line(ln, 1), "second problem line");
      if (tok.size() != 4 || (tok[1].text != "edge" && tok[1].text != "col")) {
        throw ParseError(at_line(ln, 1), "expected \"p edge N M\"");
      }
      const long long n = to_int(tok[2], ln);
      declared = to_int(tok[3], ln);
      if (n < 0 || declared < 0) throw ParseError(at_line(ln, tok[2].column), "negative size");
      g.n = static_cast<int>(n);
      header = true;
      return true;
    }
    if (tok[0].text == "e") {
      if (!header) throw ParseError(at_line(ln, 1), "edge before the problem line");
      if (tok.size() != 3) throw ParseError(at_line(ln, 1), "expected \"e U V\"");
      int ends[2];
      for (int k = 0; k < 2; ++k) {
        const long long v = to_int(tok[1 + k], ln);
        if (v < 1 || v > g.n) throw ParseError(at_line(ln, tok[1 + k].column), "vertex out of range");
        ends[k] = static_cast<int>(v - 1);
      }
      g.edges.emplace_back(ends[0], ends[1]);
      return true;
    }
    throw ParseError(at_line(ln, tok[0].column), "unknown line type \"" + tok[0].text + "\"");
  });
  if (!header) throw ParseError(at_line(last_line + 1, 1), "missing problem line");
  if (static_cast<long long>(g.edges.size()) != declared) {
    throw ParseError(at_line(last_line + 1, 1), "expected " + std::to_string(declared) + " edges, found " +
                                                    std::to_string(g.edges.size()));
  }
  return g;
}

std::string write_dimacs_col(const Graph& g, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << "\n";
  out << "p edge " << g.n << " " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) out << "e " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

Cnf parse_dimacs_cnf(std::string_view text) {
  Cnf f;
  bool header = false;
  long long declared = 0;
  std::vector<int> clause;
  int last_line = 0;
  for_each_line(text, [&](int ln, const std::string& line) {
    last_line = ln;
    const auto tok = tokenize(line);
    if (tok.empty() || tok[0].text == "c") return true;
    if (tok[0].text == "%") return false;
    if (tok[0].text == "p") {
      if (header) throw ParseError(at_line(ln, 1), "second problem line");
      if (tok.size() != 4 || tok[1].text != "cnf") throw ParseError(at_line(ln, 1), "expected \"p cnf V C\"");
      const long long v = to_int(tok[2], ln);
      declared = to_int(tok[3], ln);
      if (v < 0 || declared < 0) throw ParseError(at_line(ln, tok[2].column), "negative size");
      f.num_vars = static_cast<int>(v);
      header = true;
      return true;
    }
    if (!header) throw ParseError(at_line(ln, tok[0].column), "clause before the problem line");
    for (const Token& t : tok) {
      const long long lit = to_int(t, ln);
      if (lit == 0) {
        f.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (lit < -f.num_vars || lit > f.num_vars) throw ParseError(at_line(ln, t.column), "literal out of range");
      clause.push_back(static_cast<int>(lit));
    }
    return true;
  });
  if (!header) throw ParseError(at_line(last_line + 1, 1), "missing problem line");
  if (!clause.empty()) throw ParseError(at_line(last_line + 1, 1), "last clause is not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared) {
    throw ParseError(at_line(last_line + 1, 1), "expected " + std::to_string(declared) + " clauses, found " +
                                                    std::to_string(f.clauses.size()));
  }
  return f;
}

std::string write_dimacs_cnf(const Cnf& f, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << "\n";
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tricolor::io
