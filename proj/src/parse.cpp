#include "folkcat/parse.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace folkcat {

const FinCat& Document::category(const std::string& name) const {
  auto it = categories.find(name);
  if (it == categories.end()) throw ShapeError("unknown category: " + name);
  return it->second;
}

const FinFunctor& Document::functor(const std::string& name) const {
  auto it = functors.find(name);
  if (it == functors.end()) throw ShapeError("unknown functor: " + name);
  return it->second;
}

const Weight& Document::weight(const std::string& name) const {
  auto it = weights.find(name);
  if (it == weights.end()) throw ShapeError("unknown weight: " + name);
  return it->second;
}

const Diagram& Document::diagram(const std::string& name) const {
  auto it = diagrams.find(name);
  if (it == diagrams.end()) throw ShapeError("unknown diagram: " + name);
  return it->second;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!trim(part).empty()) out.push_back(trim(part));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::stringstream ss(s);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

struct Line {
  int number;
  std::string text;
};

struct Parser {
  Document doc;
  std::vector<Line> lines;
  size_t pos = 0;

  explicit Parser(const std::string& text) {
    std::stringstream ss(text);
    std::string raw;
    int n = 0;
    while (std::getline(ss, raw)) {
      ++n;
      if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
      std::string t = trim(raw);
      if (!t.empty()) lines.push_back({n, t});
    }
  }

  static bool is_header(const std::string& t) {
    return t.rfind("category ", 0) == 0 || t.rfind("functor ", 0) == 0 ||
           t.rfind("weight ", 0) == 0 || t.rfind("diagram ", 0) == 0;
  }

  void run() {
    while (pos < lines.size()) {
      const Line& l = lines[pos];
      if (l.text.rfind("category ", 0) == 0)
        parse_category();
      else if (l.text.rfind("functor ", 0) == 0)
        parse_functor();
      else if (l.text.rfind("weight ", 0) == 0)
        parse_weight(false);
      else if (l.text.rfind("diagram ", 0) == 0)
        parse_weight(true);
      else
        throw ParseError(l.number,
                         "expected a category, functor, weight or diagram header");
    }
  }

  // clause lines until the next header
  std::vector<Line> block_body() {
    std::vector<Line> body;
    ++pos;
    while (pos < lines.size() && !is_header(lines[pos].text)) body.push_back(lines[pos++]);
    return body;
  }

  void parse_category() {
    const Line header = lines[pos];
    auto hw = words(header.text);
    if (hw.size() != 2) throw ParseError(header.number, "expected: category <name>");
    std::string name = hw[1];
    if (doc.categories.count(name))
      throw ParseError(header.number, "duplicate category name: " + name);

    FinCat c;
    std::map<std::string, ObjId> objs;
    std::map<std::string, MorId> mors;
    struct ComposeEntry {
      int line;
      std::string g, f, h;
    };
    std::vector<ComposeEntry> composes;

    for (const Line& l : block_body()) {
      if (l.text.rfind("objects:", 0) == 0) {
        for (const std::string& o : words(l.text.substr(8))) {
          if (objs.count(o)) throw ParseError(l.number, "duplicate object: " + o);
          ObjId id = c.add_object(o);
          objs[o] = id;
          mors["1_" + o] = c.identity(id);
        }
      } else if (l.text.rfind("arrows:", 0) == 0) {
        for (const std::string& entry : split(l.text.substr(7), ';')) {
          // f: a -> b
          auto colon = entry.find(':');
          auto arrow = entry.find("->");
          if (colon == std::string::npos || arrow == std::string::npos)
            throw ParseError(l.number, "expected `name: src -> tgt` in " + entry);
          std::string f = trim(entry.substr(0, colon));
          std::string a = trim(entry.substr(colon + 1, arrow - colon - 1));
          std::string b = trim(entry.substr(arrow + 2));
          if (mors.count(f)) throw ParseError(l.number, "duplicate arrow: " + f);
          if (!objs.count(a)) throw ParseError(l.number, "unknown object: " + a);
          if (!objs.count(b)) throw ParseError(l.number, "unknown object: " + b);
          if (f.rfind("1_", 0) == 0)
            throw ParseError(l.number, "identities are implicit, do not declare " + f);
          mors[f] = c.add_morphism(objs[a], objs[b], f);
        }
      } else if (l.text.rfind("compose:", 0) == 0) {
        for (const std::string& entry : split(l.text.substr(8), ';')) {
          auto dot = entry.find('.');
          auto eq = entry.find('=');
          if (dot == std::string::npos || eq == std::string::npos || eq < dot)
            throw ParseError(l.number, "expected `g.f = h` in " + entry);
          composes.push_back({l.number, trim(entry.substr(0, dot)),
                              trim(entry.substr(dot + 1, eq - dot - 1)),
                              trim(entry.substr(eq + 1))});
        }
      } else {
        throw ParseError(l.number, "unexpected clause in category block");
      }
    }
    for (const ComposeEntry& e : composes) {
      for (const std::string* nm : {&e.g, &e.f, &e.h})
        if (!mors.count(*nm)) throw ParseError(e.line, "unknown arrow: " + *nm);
      MorId g = mors[e.g], f = mors[e.f], h = mors[e.h];
      if (!c.composable(g, f))
        throw ParseError(e.line, e.g + "." + e.f + " is not composable");
      c.set_composite(g, f, h);
    }
    c.close_identities();
    if (auto v = validate(c); !v.ok)
      throw ParseError(header.number,
                       "category " + name + " is not valid: " + v.violation->detail);
    doc.categories.emplace(name, std::move(c));
  }

  void parse_functor() {
    const Line header = lines[pos];
    // functor <name> : <A> -> <B>
    auto colon = header.text.find(':');
    auto arrow = header.text.find("->");
    if (colon == std::string::npos || arrow == std::string::npos)
      throw ParseError(header.number, "expected: functor <name> : <A> -> <B>");
    auto hw = words(header.text.substr(0, colon));
    if (hw.size() != 2) throw ParseError(header.number, "expected a functor name");
    std::string name = hw[1];
    std::string aname = trim(header.text.substr(colon + 1, arrow - colon - 1));
    std::string bname = trim(header.text.substr(arrow + 2));
    if (doc.functors.count(name))
      throw ParseError(header.number, "duplicate functor name: " + name);
    if (!doc.categories.count(aname))
      throw ParseError(header.number, "unknown category: " + aname);
    if (!doc.categories.count(bname))
      throw ParseError(header.number, "unknown category: " + bname);
    const FinCat& A = doc.categories[aname];
    const FinCat& B = doc.categories[bname];

    auto index_by_name = [](const auto& count, auto name_of) {
      std::map<std::string, int> idx;
      for (int i = 0; i < count; ++i) idx[name_of(i)] = i;
      return idx;
    };
    auto a_objs = index_by_name(A.object_count(), [&](int i) { return A.object_name(i); });
    auto b_objs = index_by_name(B.object_count(), [&](int i) { return B.object_name(i); });
    auto a_mors = index_by_name(A.morphism_count(), [&](int i) { return A.morphism_name(i); });
    auto b_mors = index_by_name(B.morphism_count(), [&](int i) { return B.morphism_name(i); });

    FinFunctor fun;
    fun.dom = A;
    fun.cod = B;
    fun.omap.assign(A.object_count(), -1);
    fun.mmap.assign(A.morphism_count(), -1);

    for (const Line& l : block_body()) {
      bool is_obj = l.text.rfind("objects:", 0) == 0;
      if (!is_obj && l.text.rfind("arrows:", 0) != 0)
        throw ParseError(l.number, "unexpected clause in functor block");
      for (const std::string& entry : split(l.text.substr(is_obj ? 8 : 7), ';')) {
        auto bar = entry.find("|->");
        if (bar == std::string::npos)
          throw ParseError(l.number, "expected `x |-> y` in " + entry);
        std::string from = trim(entry.substr(0, bar));
        std::string to = trim(entry.substr(bar + 3));
        if (is_obj) {
          if (!a_objs.count(from)) throw ParseError(l.number, "unknown object: " + from);
          if (!b_objs.count(to)) throw ParseError(l.number, "unknown object: " + to);
          fun.omap[a_objs[from]] = b_objs[to];
        } else {
          if (!a_mors.count(from)) throw ParseError(l.number, "unknown arrow: " + from);
          if (!b_mors.count(to)) throw ParseError(l.number, "unknown arrow: " + to);
          fun.mmap[a_mors[from]] = b_mors[to];
        }
      }
    }
    for (ObjId a = 0; a < A.object_count(); ++a) {
      if (fun.omap[a] < 0)
        throw ParseError(header.number, "object " + A.object_name(a) + " is unmapped");
      fun.mmap[A.identity(a)] = B.identity(fun.omap[a]);
    }
    for (MorId m = 0; m < A.morphism_count(); ++m)
      if (fun.mmap[m] < 0)
        throw ParseError(header.number, "arrow " + A.morphism_name(m) + " is unmapped");
    if (auto v = validate(fun); !v.ok)
      throw ParseError(header.number,
                       "functor " + name + " is not valid: " + v.violation->detail);
    doc.functors.emplace(name, std::move(fun));
  }

  // weight blocks are contravariant, diagram blocks covariant; everything
  // else about the two is identical
  void parse_weight(bool covariant) {
    const Line header = lines[pos];
    const char* what = covariant ? "diagram" : "weight";
    auto hw = words(header.text);
    if (hw.size() != 4 || hw[2] != "over")
      throw ParseError(header.number,
                       std::string("expected: ") + what + " <name> over <base>");
    std::string name = hw[1];
    if (doc.weights.count(name) || doc.diagrams.count(name))
      throw ParseError(header.number,
                       std::string("duplicate ") + what + " name: " + name);
    if (!doc.categories.count(hw[3]))
      throw ParseError(header.number, "unknown category: " + hw[3]);
    const FinCat& base = doc.categories[hw[3]];

    Weight w;
    w.base = base;
    w.at.resize(base.object_count());
    w.on.resize(base.morphism_count());
    std::vector<bool> at_set(base.object_count(), false);
    std::vector<bool> on_set(base.morphism_count(), false);
    std::map<std::string, ObjId> objs;
    std::map<std::string, MorId> mors;
    for (ObjId c = 0; c < base.object_count(); ++c) objs[base.object_name(c)] = c;
    for (MorId m = 0; m < base.morphism_count(); ++m) mors[base.morphism_name(m)] = m;

    for (const Line& l : block_body()) {
      auto colon = l.text.find(':');
      if (colon == std::string::npos)
        throw ParseError(l.number, "expected `at <object>: <category>` or `on <arrow>: <functor>`");
      auto head = words(l.text.substr(0, colon));
      std::string value = trim(l.text.substr(colon + 1));
      if (head.size() != 2 || (head[0] != "at" && head[0] != "on"))
        throw ParseError(l.number, "unexpected clause in weight block");
      if (head[0] == "at") {
        if (!objs.count(head[1])) throw ParseError(l.number, "unknown object: " + head[1]);
        if (!doc.categories.count(value))
          throw ParseError(l.number, "unknown category: " + value);
        w.at[objs[head[1]]] = doc.categories[value];
        at_set[objs[head[1]]] = true;
      } else {
        if (!mors.count(head[1])) throw ParseError(l.number, "unknown arrow: " + head[1]);
        if (base.is_identity(mors[head[1]]))
          throw ParseError(l.number, "restriction along an identity is implicit");
        if (!doc.functors.count(value))
          throw ParseError(l.number, "unknown functor: " + value);
        w.on[mors[head[1]]] = doc.functors[value];
        on_set[mors[head[1]]] = true;
      }
    }
    for (ObjId c = 0; c < base.object_count(); ++c)
      if (!at_set[c])
        throw ParseError(header.number, "no category at " + base.object_name(c));
    for (MorId m = 0; m < base.morphism_count(); ++m) {
      if (base.is_identity(m))
        w.on[m] = identity_functor(w.at[base.src(m)]);
      else if (!on_set[m])
        throw ParseError(header.number, "no functor on " + base.morphism_name(m));
    }
    if (covariant) {
      Diagram d{std::move(w.base), std::move(w.at), std::move(w.on)};
      if (auto v = validate(d); !v.ok)
        throw ParseError(header.number, "diagram " + name +
                                            " is not valid: " + v.violation->detail);
      doc.diagrams.emplace(name, std::move(d));
      return;
    }
    if (auto v = validate(w); !v.ok)
      throw ParseError(header.number,
                       "weight " + name + " is not valid: " + v.violation->detail);
    doc.weights.emplace(name, std::move(w));
  }
};

}  // namespace

Document parse_document(const std::string& text) {
  Parser p(text);
  p.run();
  return std::move(p.doc);
}

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

}  // namespace folkcat
