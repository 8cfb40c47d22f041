#include "opchris/operad.hpp"

#include <fmt/format.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "opchris/exactla.hpp"

namespace opchris {

void LinComb::add(const TreePtr& t, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [t, c] : o.terms) add(t, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
  for (const auto& [t, c] : o.terms) add(t, -c);
  return *this;
}

LinComb& LinComb::operator*=(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [t, v] : terms) v *= c;
  return *this;
}

Rational LinComb::coeff(const TreePtr& t) const {
  auto it = terms.find(t);
  return it == terms.end() ? Rational(0) : it->second;
}

bool LinComb::operator==(const LinComb& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto a = terms.begin();
  auto b = o.terms.begin();
  for (; a != terms.end(); ++a, ++b)
    if (a->first->code != b->first->code || a->second != b->second) return false;
  return true;
}

std::string LinComb::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : terms) {
    if (out.empty()) {
      if (c == -1) out += "-";
      else if (c != 1) out += rat_str(c) + "*";
    } else {
      if (c == 1) out += " + ";
      else if (c == -1) out += " - ";
      else if (c > 0) out += " + " + rat_str(c) + "*";
      else out += " - " + rat_str(-c) + "*";
    }
    out += t->code;
  }
  return out;
}

std::string LinComb::json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [t, c] : terms)
    arr.push_back({{"coeff", rat_str(c)}, {"tree", t->code}});
  return arr.dump();
}

LinComb operator+(LinComb a, const LinComb& b) { a += b; return a; }
LinComb operator-(LinComb a, const LinComb& b) { a -= b; return a; }
LinComb operator*(const Rational& c, LinComb a) { a *= c; return a; }

LinComb map_trees(const LinComb& x,
                  const std::function<TreePtr(const TreePtr&)>& f) {
  LinComb out;
  for (const auto& [t, c] : x.terms) out.add(f(t), c);
  return out;
}

namespace {

// Rebuild t with extra children attached at given original-preorder positions.
TreePtr graft_many_rec(const TreePtr& t, int& pre,
                       const std::map<int, std::vector<Child>>& additions) {
  const int here = pre++;
  std::vector<Child> ch;
  ch.reserve(t->children.size());
  for (const auto& c : t->children)
    ch.push_back({c.edge, graft_many_rec(c.sub, pre, additions)});
  auto it = additions.find(here);
  if (it != additions.end())
    ch.insert(ch.end(), it->second.begin(), it->second.end());
  return node(t->kind, t->color, std::move(ch));
}

TreePtr graft_many(const TreePtr& t,
                   const std::map<int, std::vector<Child>>& additions) {
  int pre = 0;
  return graft_many_rec(t, pre, additions);
}

// Preorder index of the unique noise vertex labeled `label`; -1 if absent.
int find_label(const TreePtr& t, int label) {
  int pre = 0;
  int found = -1;
  std::function<void(const TreePtr&)> walk = [&](const TreePtr& n) {
    const int here = pre++;
    if (n->kind == VertexKind::Noise && n->color == label) {
      if (found >= 0) throw std::invalid_argument("label not unique");
      found = here;
    }
    for (const auto& c : n->children) walk(c.sub);
  };
  walk(t);
  return found;
}

int count_noise(const TreePtr& t) {
  int n = (t->kind == VertexKind::Noise) ? 1 : 0;
  for (const auto& c : t->children) n += count_noise(c.sub);
  return n;
}

}  // namespace

LinComb insert(const TreePtr& t1, int v, const TreePtr& t2) {
  const TreeNode* vert = vertex_at(t1, v);
  if (vert->kind != VertexKind::Noise)
    throw std::invalid_argument("insert: target vertex must be white");
  const int k = static_cast<int>(vert->children.size());
  const int n2 = t2->nvertices;

  LinComb out;
  std::vector<int> a(k, 0);
  while (true) {
    std::map<int, std::vector<Child>> additions;
    for (int i = 0; i < k; ++i) additions[a[i]].push_back(vert->children[i]);
    out.add(replace_at(t1, v, graft_many(t2, additions)), 1);

    int i = k - 1;
    while (i >= 0 && a[i] == n2 - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return out;
}

LinComb compose_labeled(const TreePtr& x, int label, const TreePtr& y) {
  const int m = count_noise(y);
  // y's labels shift to start at `label`; x's labels above `label` step over
  // the inserted block.
  std::map<int, int> ymap, xmap;
  std::function<void(const TreePtr&)> collect = [&](const TreePtr& n) {
    if (n->kind == VertexKind::Noise) ymap[n->color] = n->color + label - 1;
    for (const auto& c : n->children) collect(c.sub);
  };
  collect(y);
  std::function<void(const TreePtr&)> collectx = [&](const TreePtr& n) {
    if (n->kind == VertexKind::Noise && n->color > label)
      xmap[n->color] = n->color + m - 1;
    for (const auto& c : n->children) collectx(c.sub);
  };
  collectx(x);

  TreePtr xr = map_colors(x, xmap);
  TreePtr yr = map_colors(y, ymap);
  const int pos = find_label(xr, label);
  if (pos < 0) throw std::invalid_argument("compose_labeled: label not in x");
  return insert(xr, pos, yr);
}

LinComb compose_lin(const LinComb& x, int label, const LinComb& y) {
  LinComb out;
  for (const auto& [tx, cx] : x.terms)
    for (const auto& [ty, cy] : y.terms) {
      LinComb part = compose_labeled(tx, label, ty);
      part *= cx * cy;
      out += part;
    }
  return out;
}

LinComb evaluate_on_colors(const LinComb& x, const std::map<int, int>& assignment) {
  return map_trees(x, [&](const TreePtr& t) { return map_colors(t, assignment); });
}

CorollaCertificate corolla_from_binaries(int k) {
  if (k < 1) throw std::invalid_argument("corolla_from_binaries: k >= 1");
  // S: thin two-vertex tree, root labeled 1, leaf labeled k+2.
  // T_{k-1}: black corolla on white inputs 1..k+1.
  std::vector<TreePtr> thin;
  for (int j = 3; j <= k + 1; ++j) thin.push_back(noise(j));
  TreePtr t_prev = gammav(noise(1), noise(2), thin);

  CorollaCertificate cert;
  TreePtr s_top = noise(1, {noise(k + 2)});
  cert.lhs = insert(s_top, 0, t_prev);
  for (int i = 1; i <= k + 1; ++i) {
    TreePtr s_i = noise(i, {noise(k + 2)});
    cert.lhs -= insert(t_prev, find_label(t_prev, i), s_i);
  }

  thin.push_back(noise(k + 2));
  cert.rhs = LinComb(gammav(noise(1), noise(2), thin));
  cert.equal = (cert.lhs == cert.rhs);
  return cert;
}

}  // namespace opchris
