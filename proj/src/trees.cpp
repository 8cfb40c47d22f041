#include "opchris/trees.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace opchris {

namespace {

char edge_char(EdgeKind e) { return e == EdgeKind::Thick ? 'k' : 't'; }

std::string head_code(VertexKind k, int color) {
  switch (k) {
    case VertexKind::Noise:
      return fmt::format("N{}", color);
    case VertexKind::Gamma:
      return "G";
    case VertexKind::Delta:
      return "D";
    case VertexKind::Alpha:
      return "A";
  }
  throw std::logic_error("bad vertex kind");
}

}  // namespace

TreePtr node(VertexKind k, int color, std::vector<Child> ch) {
  auto n = std::make_shared<TreeNode>();
  n->kind = k;
  n->color = (k == VertexKind::Noise) ? color : 0;
  if (k == VertexKind::Noise && color < 1)
    throw std::invalid_argument("noise color must be >= 1");

  int thick = 0;
  for (const auto& c : ch) {
    if (!c.sub) throw std::invalid_argument("null child");
    if (c.edge == EdgeKind::Thick) ++thick;
  }
  if (k == VertexKind::Gamma) {
    if (thick != 2) throw std::invalid_argument("Gamma needs exactly 2 thick children");
  } else if (thick != 0) {
    throw std::invalid_argument("thick edges only below Gamma");
  }

  std::sort(ch.begin(), ch.end(), [](const Child& a, const Child& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.sub->code < b.sub->code;
  });
  n->children = std::move(ch);

  n->ndelta = (k == VertexKind::Delta) ? 1 : 0;
  n->nalpha = (k == VertexKind::Alpha) ? 1 : 0;
  for (const auto& c : n->children) {
    n->nvertices += c.sub->nvertices;
    n->nalpha += c.sub->nalpha;
    n->ndelta += c.sub->ndelta;
  }
  if (n->ndelta > 1) throw std::invalid_argument("at most one Delta per tree");

  std::string code = head_code(k, n->color);
  if (!n->children.empty()) {
    code += '(';
    bool first = true;
    for (const auto& c : n->children) {
      if (!first) code += ',';
      first = false;
      code += edge_char(c.edge);
      code += c.sub->code;
    }
    code += ')';
  }
  n->code = std::move(code);
  return n;
}

TreePtr noise(int color, std::vector<TreePtr> thin) {
  std::vector<Child> ch;
  ch.reserve(thin.size());
  for (auto& t : thin) ch.push_back({EdgeKind::Thin, std::move(t)});
  return node(VertexKind::Noise, color, std::move(ch));
}

TreePtr gammav(TreePtr thick1, TreePtr thick2, std::vector<TreePtr> thin) {
  std::vector<Child> ch;
  ch.reserve(thin.size() + 2);
  ch.push_back({EdgeKind::Thick, std::move(thick1)});
  ch.push_back({EdgeKind::Thick, std::move(thick2)});
  for (auto& t : thin) ch.push_back({EdgeKind::Thin, std::move(t)});
  return node(VertexKind::Gamma, 0, std::move(ch));
}

TreePtr deltav(std::vector<TreePtr> thin) {
  std::vector<Child> ch;
  ch.reserve(thin.size());
  for (auto& t : thin) ch.push_back({EdgeKind::Thin, std::move(t)});
  return node(VertexKind::Delta, 0, std::move(ch));
}

TreePtr alphav(std::vector<TreePtr> thin) {
  std::vector<Child> ch;
  ch.reserve(thin.size());
  for (auto& t : thin) ch.push_back({EdgeKind::Thin, std::move(t)});
  return node(VertexKind::Alpha, 0, std::move(ch));
}

// ---- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument(
        fmt::format("tree code parse error at {}: {} in \"{}\"", pos, why, s));
  }

  char peek() const { return pos < s.size() ? s[pos] : '\0'; }

  TreePtr tree() {
    VertexKind k;
    int color = 0;
    switch (peek()) {
      case 'N': {
        k = VertexKind::Noise;
        ++pos;
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("noise color expected");
        color = std::stoi(s.substr(start, pos - start));
        break;
      }
      case 'G': k = VertexKind::Gamma; ++pos; break;
      case 'D': k = VertexKind::Delta; ++pos; break;
      case 'A': k = VertexKind::Alpha; ++pos; break;
      default: fail("vertex kind expected");
    }
    std::vector<Child> ch;
    if (peek() == '(') {
      ++pos;
      while (true) {
        EdgeKind e;
        if (peek() == 'k') e = EdgeKind::Thick;
        else if (peek() == 't') e = EdgeKind::Thin;
        else fail("edge kind expected");
        ++pos;
        ch.push_back({e, tree()});
        if (peek() == ',') { ++pos; continue; }
        if (peek() == ')') { ++pos; break; }
        fail("',' or ')' expected");
      }
    }
    return node(k, color, std::move(ch));
  }
};

}  // namespace

TreePtr tree_parse(const std::string& code) {
  Parser p{code};
  TreePtr t = p.tree();
  if (p.pos != code.size()) p.fail("trailing input");
  return t;
}

// ---- JSON codec ------------------------------------------------------------

namespace {

const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Noise: return "noise";
    case VertexKind::Gamma: return "gamma";
    case VertexKind::Delta: return "delta";
    case VertexKind::Alpha: return "alpha";
  }
  throw std::logic_error("bad vertex kind");
}

nlohmann::json to_json_rec(const TreePtr& t) {
  nlohmann::json j;
  j["kind"] = kind_name(t->kind);
  if (t->kind == VertexKind::Noise) j["color"] = t->color;
  if (!t->children.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : t->children) {
      arr.push_back({{"edge", c.edge == EdgeKind::Thick ? "thick" : "thin"},
                     {"tree", to_json_rec(c.sub)}});
    }
    j["children"] = std::move(arr);
  }
  return j;
}

TreePtr from_json_rec(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  VertexKind k;
  int color = 0;
  if (kind == "noise") { k = VertexKind::Noise; color = j.at("color").get<int>(); }
  else if (kind == "gamma") k = VertexKind::Gamma;
  else if (kind == "delta") k = VertexKind::Delta;
  else if (kind == "alpha") k = VertexKind::Alpha;
  else throw std::invalid_argument("unknown vertex kind: " + kind);
  std::vector<Child> ch;
  if (j.contains("children")) {
    for (const auto& cj : j.at("children")) {
      const std::string e = cj.at("edge").get<std::string>();
      if (e != "thick" && e != "thin")
        throw std::invalid_argument("unknown edge kind: " + e);
      ch.push_back({e == "thick" ? EdgeKind::Thick : EdgeKind::Thin,
                    from_json_rec(cj.at("tree"))});
    }
  }
  return node(k, color, std::move(ch));
}

}  // namespace

std::string tree_json(const TreePtr& t) { return to_json_rec(t).dump(); }

TreePtr tree_from_json(const std::string& json_text) {
  return from_json_rec(nlohmann::json::parse(json_text));
}

TreePtr canonicalize(const TreePtr& t) {
  std::vector<Child> ch;
  ch.reserve(t->children.size());
  for (const auto& c : t->children) ch.push_back({c.edge, canonicalize(c.sub)});
  return node(t->kind, t->color, std::move(ch));
}

// ---- vertex addressing -----------------------------------------------------

namespace {

// Walks to preorder position `pre` (counting down); returns the node there.
const TreeNode* find_pre(const TreeNode* n, int& pre) {
  if (pre == 0) return n;
  --pre;
  for (const auto& c : n->children) {
    if (const TreeNode* hit = find_pre(c.sub.get(), pre)) return hit;
  }
  return nullptr;
}

TreePtr rebuild_graft(const TreePtr& n, int& pre, const Child& extra) {
  std::vector<Child> ch(n->children.begin(), n->children.end());
  if (pre == 0) {
    --pre;
    ch.push_back(extra);
    return node(n->kind, n->color, std::move(ch));
  }
  --pre;
  for (auto& c : ch) {
    if (pre < c.sub->nvertices) {
      c.sub = rebuild_graft(c.sub, pre, extra);
      return node(n->kind, n->color, std::move(ch));
    }
    pre -= c.sub->nvertices;
  }
  throw std::out_of_range("graft_at: preorder index out of range");
}

TreePtr rebuild_replace(const TreePtr& n, int& pre, const TreePtr& sub) {
  if (pre == 0) return sub;
  --pre;
  std::vector<Child> ch(n->children.begin(), n->children.end());
  for (auto& c : ch) {
    if (pre < c.sub->nvertices) {
      c.sub = rebuild_replace(c.sub, pre, sub);
      return node(n->kind, n->color, std::move(ch));
    }
    pre -= c.sub->nvertices;
  }
  throw std::out_of_range("replace_at: preorder index out of range");
}

}  // namespace

const TreeNode* vertex_at(const TreePtr& t, int pre) {
  if (pre < 0 || pre >= t->nvertices)
    throw std::out_of_range("vertex_at: preorder index out of range");
  int k = pre;
  return find_pre(t.get(), k);
}

TreePtr graft_at(const TreePtr& t, int pre, const Child& extra) {
  if (pre < 0 || pre >= t->nvertices)
    throw std::out_of_range("graft_at: preorder index out of range");
  int k = pre;
  return rebuild_graft(t, k, extra);
}

TreePtr replace_at(const TreePtr& t, int pre, const TreePtr& sub) {
  if (pre < 0 || pre >= t->nvertices)
    throw std::out_of_range("replace_at: preorder index out of range");
  int k = pre;
  return rebuild_replace(t, k, sub);
}

TreePtr map_colors(const TreePtr& t, const std::map<int, int>& perm) {
  std::vector<Child> ch;
  ch.reserve(t->children.size());
  for (const auto& c : t->children) ch.push_back({c.edge, map_colors(c.sub, perm)});
  int color = t->color;
  if (t->kind == VertexKind::Noise) {
    auto it = perm.find(color);
    if (it != perm.end()) color = it->second;
  }
  return node(t->kind, color, std::move(ch));
}

// ---- invariants ------------------------------------------------------------

Int symmetry_factor(const TreePtr& t) {
  Int s = 1;
  for (const auto& c : t->children) s *= symmetry_factor(c.sub);
  // Children are sorted, so equal (edge, code) pairs are adjacent.
  size_t i = 0;
  while (i < t->children.size()) {
    size_t j = i + 1;
    while (j < t->children.size() &&
           t->children[j].edge == t->children[i].edge &&
           t->children[j].sub->code == t->children[i].sub->code)
      ++j;
    for (size_t k = 2; k <= j - i; ++k) s *= Int(k);
    i = j;
  }
  return s;
}

std::pair<Rational, Rational> degree(const TreePtr& t,
                                     const std::pair<Rational, Rational>& noise_deg) {
  std::pair<Rational, Rational> d{0, 0};
  if (t->kind == VertexKind::Noise) {
    d.first += noise_deg.first;
    d.second += noise_deg.second;
  }
  for (const auto& c : t->children) {
    auto sub = degree(c.sub, noise_deg);
    d.first += sub.first + (c.edge == EdgeKind::Thin ? 2 : 1);
    d.second += sub.second;
  }
  return d;
}

bool degree_is_negative(const std::pair<Rational, Rational>& d) {
  return d.first < 0 || (d.first == 0 && d.second < 0);
}

MultiDegree multidegree(const TreePtr& t) {
  MultiDegree md;
  if (t->kind == VertexKind::Noise) ++md[t->color];
  if (t->kind == VertexKind::Delta) ++md[0];
  if (t->kind == VertexKind::Alpha) ++md[-1];
  for (const auto& c : t->children) {
    for (const auto& [k, v] : multidegree(c.sub)) md[k] += v;
  }
  return md;
}

std::string md_str(const MultiDegree& md) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : md) {
    if (!first) out += ',';
    first = false;
    if (k == 0) out += fmt::format("D:{}", v);
    else if (k == -1) out += fmt::format("A:{}", v);
    else out += fmt::format("{}:{}", k, v);
  }
  out += '}';
  return out;
}

}  // namespace opchris
