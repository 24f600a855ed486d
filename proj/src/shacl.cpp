#include "schemaforge/shacl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "schemaforge/io.hpp"
#include "schemaforge/pattern_eval.hpp"

namespace schemaforge {

namespace {

Term sh(const char* local) { return Term::iri(std::string(ns::sh) + local); }
Term rdf(const char* local) { return Term::iri(std::string(ns::rdf) + local); }

const std::set<std::string>& supported_sh_terms() {
  static const std::set<std::string> terms = {
      "NodeShape", "PropertyShape", "targetClass", "targetNode", "targetSubjectsOf",
      "targetObjectsOf", "nodeKind", "in", "property", "path", "inversePath", "minCount",
      "class", "hasValue", "node", "or", "not", "closed", "IRI", "IRIOrLiteral", "Literal"};
  return terms;
}

struct Path {
  Term predicate;
  bool inverse = false;
};

/// Read-only view of a shapes graph.
class ShapesView {
 public:
  explicit ShapesView(const Graph& doc) {
    for (const auto& t : doc) {
      by_subject_[t.s].emplace_back(t.p, t.o);
      for (const Term& x : {t.s, t.p, t.o}) {
        if (!x.is_iri()) continue;
        const std::string& lex = x.lexical();
        if (lex.rfind(ns::sh, 0) != 0) continue;
        const std::string local = lex.substr(ns::sh.size());
        if (!supported_sh_terms().count(local))
          throw UnsupportedShape("unsupported SHACL term sh:" + local);
      }
    }
  }

  std::vector<Term> objects(const Term& s, const Term& p) const {
    std::vector<Term> out;
    auto it = by_subject_.find(s);
    if (it == by_subject_.end()) return out;
    for (const auto& [pred, obj] : it->second)
      if (pred == p) out.push_back(obj);
    return out;
  }

  std::optional<Term> object(const Term& s, const Term& p) const {
    auto all = objects(s, p);
    if (all.empty()) return std::nullopt;
    if (all.size() > 1)
      throw UnsupportedShape("several values for " + to_string(p) + " on " + to_string(s));
    return all.front();
  }

  bool has(const Term& s, const Term& p) const { return !objects(s, p).empty(); }

  std::vector<Term> list(Term head) const {
    std::vector<Term> out;
    std::set<Term> visited;
    const Term nil = rdf("nil");
    while (head != nil) {
      if (!visited.insert(head).second) throw UnsupportedShape("cyclic RDF list");
      auto first = object(head, rdf("first"));
      auto rest = object(head, rdf("rest"));
      if (!first || !rest) throw UnsupportedShape("malformed RDF list at " + to_string(head));
      out.push_back(*first);
      head = *rest;
    }
    return out;
  }

  std::optional<Path> path(const Term& shape) const {
    auto p = object(shape, sh("path"));
    if (!p) return std::nullopt;
    if (auto inv = object(*p, sh("inversePath"))) return Path{*inv, true};
    if (!p->is_iri()) throw UnsupportedShape("unsupported path on " + to_string(shape));
    return Path{*p, false};
  }

  std::vector<Term> subjects() const {
    std::vector<Term> out;
    for (const auto& [s, _] : by_subject_) out.push_back(s);
    return out;
  }

 private:
  std::map<Term, std::vector<std::pair<Term, Term>>> by_subject_;
};

bool targeted(const ShapesView& v, const Term& shape) {
  for (const char* t : {"targetClass", "targetNode", "targetSubjectsOf", "targetObjectsOf"})
    if (v.has(shape, sh(t))) return true;
  return false;
}

bool is_true(const Term& t) { return t.is_literal() && t.lexical() == "true"; }

std::vector<Term> closed_declarations(const ShapesView& v) {
  std::vector<Term> out;
  for (const auto& s : v.subjects()) {
    auto c = v.object(s, sh("closed"));
    if (!c || !is_true(*c)) continue;
    if (targeted(v, s))
      throw UnsupportedShape("closed shape " + to_string(s) + " must not have targets");
    out.push_back(s);
  }
  return out;
}

std::set<Term> vocabulary(const ShapesView& v, const Graph& doc) {
  std::set<Term> listed;
  bool explicit_list = false;
  for (const auto& c : closed_declarations(v)) {
    for (const auto& p : v.objects(c, sh("property"))) {
      explicit_list = true;
      auto path = v.path(p);
      if (!path) throw UnsupportedShape("closed declaration property without sh:path");
      for (const char* k : {"minCount", "hasValue", "nodeKind", "in", "class", "node", "or", "not"})
        if (v.has(p, sh(k)))
          throw UnsupportedShape("closed declaration properties may only carry sh:path");
      listed.insert(path->predicate);
    }
  }
  if (explicit_list) return listed;
  // Bare declaration: every predicate the document talks about.
  std::set<Term> out;
  for (const auto& t : doc) {
    if (t.p == sh("targetSubjectsOf") || t.p == sh("targetObjectsOf") ||
        t.p == sh("inversePath") || (t.p == sh("path") && t.o.is_iri() && !v.has(t.o, sh("inversePath"))))
      out.insert(t.o);
    if (t.p == sh("targetClass") || t.p == sh("class")) out.insert(rdf_type());
  }
  return out;
}

/// Evaluation of shapes on a single triple: the only value nodes are the ones
/// that triple provides.
class TripleEvaluator {
 public:
  TripleEvaluator(const ShapesView& v) : v_(v) {}

  bool allowed(const Triple& tau, const std::vector<Term>& shapes) const {
    for (const auto& shape : shapes) {
      std::vector<Term> focus;
      for (const auto& q : v_.objects(shape, sh("targetSubjectsOf")))
        if (q == tau.p) focus.push_back(tau.s);
      for (const auto& q : v_.objects(shape, sh("targetObjectsOf")))
        if (q == tau.p) focus.push_back(tau.o);
      for (const auto& n : v_.objects(shape, sh("targetNode")))
        if (n == tau.s || n == tau.o) focus.push_back(n);
      const auto path = v_.path(shape);
      for (const auto& f : focus) {
        if (path) {
          for (const auto& value : values(*path, f, tau))
            if (!conforms(shape, value, tau, true, 0)) return false;
        } else if (!conforms(shape, f, tau, true, 0)) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  static std::vector<Term> values(const Path& path, const Term& focus, const Triple& tau) {
    if (tau.p != path.predicate) return {};
    if (!path.inverse && tau.s == focus) return {tau.o};
    if (path.inverse && tau.o == focus) return {tau.s};
    return {};
  }

  // top: hasValue on a property shape directly under a targeted shape is an
  // existential requirement, not a per-triple one.
  bool conforms(const Term& shape, const Term& value, const Triple& tau, bool top,
                int depth) const {
    if (depth > 32) throw UnsupportedShape("recursive shape " + to_string(shape));
    for (const auto& kind : v_.objects(shape, sh("nodeKind"))) {
      if (kind == sh("IRI") && !value.is_iri()) return false;
      if (kind == sh("Literal") && !value.is_literal()) return false;
      if (kind != sh("IRI") && kind != sh("Literal") && kind != sh("IRIOrLiteral"))
        throw UnsupportedShape("unsupported node kind " + to_string(kind));
    }
    for (const auto& list : v_.objects(shape, sh("in"))) {
      auto items = v_.list(list);
      if (std::find(items.begin(), items.end(), value) == items.end()) return false;
    }
    if (!(top && v_.has(shape, sh("path"))))
      for (const auto& k : v_.objects(shape, sh("hasValue")))
        if (value != k) return false;
    for (const auto& list : v_.objects(shape, sh("or"))) {
      bool any = false;
      for (const auto& member : v_.list(list))
        if (conforms(member, value, tau, false, depth + 1)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    for (const auto& n : v_.objects(shape, sh("not")))
      if (conforms(n, value, tau, false, depth + 1)) return false;
    for (const auto& n : v_.objects(shape, sh("node")))
      if (!conforms(n, value, tau, false, depth + 1)) return false;
    for (const auto& p : v_.objects(shape, sh("property"))) {
      auto path = v_.path(p);
      if (!path) throw UnsupportedShape("property shape without sh:path");
      for (const auto& x : values(*path, value, tau))
        if (!conforms(p, x, tau, top, depth + 1)) return false;
    }
    return true;
  }

  const ShapesView& v_;
};

/// Existential rules from shape-level minCount 1, hasValue and sh:class.
std::set<ExistentialRule> existential_rules(const ShapesView& v, const Term& shape) {
  const Term x = Term::variable("x");
  const Term y = Term::variable("y");
  const Term z = Term::variable("z");
  std::vector<TriplePattern> consequents;
  auto from_property = [&](const Term& p, const Path& path) {
    for (const auto& mc : v.objects(p, sh("minCount"))) {
      if (mc.lexical() == "0") continue;
      if (mc.lexical() != "1") throw UnsupportedShape("only sh:minCount 1 is supported");
      consequents.push_back(path.inverse ? TriplePattern{z, path.predicate, x}
                                         : TriplePattern{x, path.predicate, z});
    }
    for (const auto& k : v.objects(p, sh("hasValue")))
      consequents.push_back(path.inverse ? TriplePattern{k, path.predicate, x}
                                         : TriplePattern{x, path.predicate, k});
  };
  if (auto path = v.path(shape)) from_property(shape, *path);
  for (const auto& p : v.objects(shape, sh("property"))) {
    auto path = v.path(p);
    if (!path) throw UnsupportedShape("property shape without sh:path");
    from_property(p, *path);
  }
  for (const auto& c : v.objects(shape, sh("class"))) consequents.push_back({x, rdf_type(), c});

  if (v.has(shape, sh("targetClass"))) {
    // Class membership is not visible per triple, so nothing else is allowed.
    for (const char* k : {"nodeKind", "in", "hasValue", "or", "not", "node"})
      if (v.has(shape, sh(k)))
        throw UnsupportedShape("sh:targetClass shape " + to_string(shape) +
                               " may only carry minCount/hasValue properties");
    for (const auto& p : v.objects(shape, sh("property")))
      for (const char* k : {"nodeKind", "in", "or", "not", "node", "class"})
        if (v.has(p, sh(k)))
          throw UnsupportedShape("sh:targetClass shape " + to_string(shape) +
                                 " may only carry minCount/hasValue properties");
  }
  if (consequents.empty()) return {};

  std::vector<TriplePattern> antecedents;
  for (const auto& c : v.objects(shape, sh("targetClass"))) antecedents.push_back({x, rdf_type(), c});
  for (const auto& q : v.objects(shape, sh("targetSubjectsOf"))) antecedents.push_back({x, q, y});
  for (const auto& q : v.objects(shape, sh("targetObjectsOf"))) antecedents.push_back({y, q, x});
  if (v.has(shape, sh("targetNode")))
    throw UnsupportedShape("existential constraints on sh:targetNode shapes are not supported");

  std::set<ExistentialRule> out;
  for (const auto& a : antecedents)
    for (const auto& c : consequents) {
      ExistentialRule e{a, c};
      if (!is_well_formed(e.antecedent) || !is_well_formed(e.consequent))
        throw UnsupportedShape("shape " + to_string(shape) + " yields an ill-formed rule");
      out.insert(canonical_existential(e));
    }
  return out;
}

Term unused(const std::set<Term>& taken, bool literal) {
  for (int i = 0;; ++i) {
    const std::string lex = "urn:schemaforge:representative:" + std::to_string(i);
    Term t = literal ? Term::literal(lex) : Term::iri(lex);
    if (!taken.count(t)) return t;
  }
}

}  // namespace

bool subsumes(const Term& e, const Term& e_prime, const NoLiteralSet& no_literal) {
  if (e == e_prime) return true;
  if (e_prime.is_variable() && !no_literal.count(e_prime.lexical())) return true;
  return e.is_iri() && e_prime.is_variable();
}

TriplestoreSchema shacl_to_schema(const ShapeDocument& doc) {
  const ShapesView v(doc);
  std::vector<Term> shapes;
  TriplestoreSchema out;
  for (const auto& s : v.subjects()) {
    if (!targeted(v, s)) continue;
    shapes.push_back(s);
    auto rules = existential_rules(v, s);
    out.existentials.insert(rules.begin(), rules.end());
  }

  // Constants a shape can single out.
  std::set<Term> consts;
  for (const auto& t : doc) {
    if (t.p == sh("hasValue") || t.p == sh("targetNode")) consts.insert(t.o);
    if (t.p == sh("in"))
      for (const auto& c : v.list(t.o)) consts.insert(c);
  }
  const Term other_iri = unused(consts, false);
  const Term other_literal = unused(consts, true);

  // Subject cells: IRI constants plus "any other IRI"; object cells add
  // literal constants and "any other literal".
  std::vector<Term> subject_cells, object_cells;
  for (const auto& c : consts) {
    if (c.is_iri()) subject_cells.push_back(c);
    object_cells.push_back(c);
  }
  subject_cells.push_back(other_iri);
  object_cells.push_back(other_iri);
  object_cells.push_back(other_literal);

  const TripleEvaluator eval(v);
  int next = 0;
  auto fresh = [&](bool no_literal) {
    const std::string name = "s" + std::to_string(++next);
    if (no_literal) out.no_literal.insert(name);
    return Term::variable(name);
  };
  // Object slot kinds besides constants.
  enum Slot { constant, iri_var, any_var };

  for (const auto& p : vocabulary(v, doc)) {
    std::map<std::pair<Term, Term>, bool> cell;
    for (const auto& s : subject_cells)
      for (const auto& o : object_cells) cell[{s, o}] = eval.allowed({s, p, o}, shapes);

    auto covered = [&](const std::optional<Term>& s, const std::optional<Term>& o, Slot slot) {
      std::vector<std::pair<Term, Term>> cells;
      for (const auto& sc : subject_cells) {
        if (s && sc != *s) continue;
        for (const auto& oc : object_cells) {
          if (slot == constant && oc != *o) continue;
          if (slot == iri_var && !oc.is_iri()) continue;
          cells.emplace_back(sc, oc);
        }
      }
      return cells;
    };

    std::set<std::pair<Term, Term>> done;
    auto emit = [&](const std::optional<Term>& s, const std::optional<Term>& o, Slot slot) {
      const Term subject = s ? *s : fresh(true);
      const Term object = slot == constant ? *o : fresh(slot == iri_var);
      out.graph.insert({subject, p, object});
    };

    std::vector<std::optional<Term>> subjects{std::nullopt};
    for (const auto& c : subject_cells)
      if (c != other_iri) subjects.push_back(c);
    for (const auto& s : subjects) {
      std::vector<std::pair<std::optional<Term>, Slot>> objects{{std::nullopt, any_var},
                                                                {std::nullopt, iri_var}};
      for (const auto& c : object_cells)
        if (c != other_iri && c != other_literal) objects.push_back({c, constant});
      for (const auto& [o, slot] : objects) {
        auto cells = covered(s, o, slot);
        if (!std::all_of(cells.begin(), cells.end(), [&](const auto& c) { return cell[c]; }))
          continue;
        emit(s, o, slot);
        done.insert(cells.begin(), cells.end());
      }
    }
    // Cells no exact pattern covers (an "other" value that is allowed only
    // in some rows or columns) get the smallest pattern containing them.
    for (const auto& [c, ok] : cell) {
      if (!ok || done.count(c)) continue;
      const auto& [s, o] = c;
      const std::optional<Term> subject = s == other_iri ? std::nullopt : std::optional<Term>(s);
      if (o == other_iri)
        emit(subject, std::nullopt, iri_var);
      else if (o == other_literal)
        emit(subject, std::nullopt, any_var);
      else
        emit(subject, o, constant);
      for (const auto& cc : covered(subject, o == other_iri || o == other_literal
                                                 ? std::nullopt
                                                 : std::optional<Term>(o),
                                    o == other_iri ? iri_var
                                                   : (o == other_literal ? any_var : constant)))
        done.insert(cc);
    }
  }
  return normalize_schema(out);
}

namespace {

class ShaclWriter {
 public:
  Graph out;

  Term shape() { return Term::iri("urn:schemaforge:shape:" + std::to_string(++shapes_)); }
  Term node() { return Term::iri("_:b" + std::to_string(++nodes_)); }

  void add(const Term& s, const Term& p, const Term& o) { out.insert({s, p, o}); }

  Term list(const std::vector<Term>& items) {
    Term head = rdf("nil");
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      const Term cell = node();
      add(cell, rdf("first"), *it);
      add(cell, rdf("rest"), head);
      head = cell;
    }
    return head;
  }

  std::vector<Triple> compute_constraints(const std::vector<Term>& e, const NoLiteralSet& delta) {
    std::vector<Triple> r;
    const bool open = std::any_of(e.begin(), e.end(), [&](const Term& t) {
      return t.is_variable() && !delta.count(t.lexical());
    });
    if (open) {
      r.push_back({node(), sh("nodeKind"), sh("IRIOrLiteral")});
      return r;
    }
    std::vector<Term> constants;
    for (const auto& t : e)
      if (t.is_constant() && std::find(constants.begin(), constants.end(), t) == constants.end())
        constants.push_back(t);
    if (std::any_of(e.begin(), e.end(), [](const Term& t) { return t.is_variable(); }))
      r.push_back({node(), sh("nodeKind"), sh("IRI")});
    if (!constants.empty()) r.push_back({node(), sh("in"), list(constants)});
    return r;
  }

  void add_constraints(const Term& i, const std::vector<Triple>& constraints) {
    std::vector<Term> members;
    for (const auto& t : constraints) {
      out.insert(t);
      if (std::find(members.begin(), members.end(), t.s) == members.end()) members.push_back(t.s);
    }
    add(i, sh("or"), list(members));
  }

  Triple single(const std::vector<Triple>& c) {
    if (c.size() != 1) throw std::logic_error("expected a single constraint");
    return c.front();
  }

  void property_shape(const Term& owner, const Term& predicate, bool inverse,
                      const std::vector<Triple>& constraints) {
    const Term b = node();
    const Term b1 = node();
    add(b, rdf("type"), sh("NodeShape"));
    add(b, sh("property"), b1);
    if (inverse) {
      const Term b2 = node();
      add(b1, sh("path"), b2);
      add(b2, sh("inversePath"), predicate);
    } else {
      add(b1, sh("path"), predicate);
    }
    add_constraints(b1, constraints);
    add(owner, sh("node"), b);
  }

  void compute_shape(const Term& p, const std::vector<TriplePattern>& g, const NoLiteralSet& delta) {
    auto is_const = [](const Term& t) { return t.is_constant(); };

    for (const auto& t : g) {
      if (!is_const(t.s)) continue;
      const Term i = shape();
      add(i, rdf("type"), sh("NodeShape"));
      add(i, sh("targetNode"), t.s);
      add(i, sh("path"), p);
      std::vector<Term> e;
      for (const auto& t2 : g)
        if (subsumes(t.s, t2.s, delta)) e.push_back(t2.o);
      add_constraints(i, compute_constraints(e, delta));
    }

    const bool variable_subject =
        std::any_of(g.begin(), g.end(), [](const TriplePattern& t) { return t.s.is_variable(); });
    if (!variable_subject) {
      const Term i = shape();
      add(i, rdf("type"), sh("NodeShape"));
      add(i, sh("targetSubjectsOf"), p);
      std::vector<Term> e;
      for (const auto& t : g) e.push_back(t.s);
      add_constraints(i, compute_constraints(e, delta));
      return;
    }

    // Objects: allowed for every subject, or only for particular subjects.
    const Term i = shape();
    add(i, rdf("type"), sh("NodeShape"));
    add(i, sh("targetObjectsOf"), p);
    std::vector<Term> c;
    for (const auto& t : g)
      if (t.s.is_variable()) c.push_back(t.o);
    std::vector<Triple> e = compute_constraints(c, delta);
    for (const auto& t : g) {
      if (!is_const(t.s)) continue;
      for (const auto& t1 : g) {
        if (!subsumes(t1.o, t.o, delta)) continue;
        std::vector<Term> d;
        for (const auto& t2 : g)
          if (subsumes(t1.o, t2.o, delta)) d.push_back(t2.s);
        const Triple n = single(compute_constraints({t1.o}, delta));
        e.push_back(n);
        property_shape(n.s, p, true, compute_constraints(d, delta));
      }
    }
    add_constraints(i, e);

    // Subjects: each pattern pairs a subject condition with a value condition.
    const Term i2 = shape();
    add(i2, rdf("type"), sh("NodeShape"));
    add(i2, sh("targetSubjectsOf"), p);
    std::vector<Triple> e2;
    for (const auto& t : g) {
      const Triple n = single(compute_constraints({t.s}, delta));
      e2.push_back(n);
      const bool open_object = t.o.is_variable() && !delta.count(t.o.lexical());
      if (open_object) continue;
      std::vector<Triple> h;
      if (t.o.is_variable())
        h = compute_constraints({t.o}, delta);
      else
        h = {{node(), sh("hasValue"), t.o}};
      property_shape(n.s, p, false, h);
    }
    add_constraints(i2, e2);
  }

 private:
  int shapes_ = 0;
  int nodes_ = 0;
};

}  // namespace

ShapeDocument schema_to_shacl(const TriplestoreSchema& schema) {
  for (const auto& t : schema.graph)
    if (t.p.is_variable())
      throw UnsupportedShape("schemas with variable predicates have no SHACL counterpart");

  ShaclWriter w;
  std::set<Term> predicates;
  for (const auto& t : schema.graph) predicates.insert(t.p);

  std::set<Term> rule_predicates;
  for (const auto& raw : schema.existentials) {
    const ExistentialRule e = canonical_existential(raw);
    const auto& a = e.antecedent;
    const auto& c = e.consequent;
    rule_predicates.insert(a.p);
    rule_predicates.insert(c.p);
    const Term i = w.shape();
    w.add(i, rdf("type"), sh("NodeShape"));
    Term focus;
    if (a.p.is_iri() && a.p == rdf_type() && a.s.is_variable() && a.o.is_iri()) {
      w.add(i, sh("targetClass"), a.o);
      focus = a.s;
    } else if (a.p.is_iri() && a.s.is_variable() && a.o.is_variable() && a.s != a.o) {
      const bool subject_focus = a.s == c.s || a.s == c.o;
      focus = subject_focus ? a.s : a.o;
      w.add(i, sh(subject_focus ? "targetSubjectsOf" : "targetObjectsOf"), a.p);
    } else {
      throw UnsupportedShape("existential rule " + to_string(e) + " has no SHACL template");
    }
    const bool forward = c.s == focus;
    const Term& other = forward ? c.o : c.s;
    const Term& antecedent_other = a.s == focus ? a.o : a.s;
    if (!c.p.is_iri() || (!forward && c.o != focus) || other == focus ||
        (other.is_variable() && other == antecedent_other))
      throw UnsupportedShape("existential rule " + to_string(e) + " has no SHACL template");
    if (forward && c.p == rdf_type() && other.is_iri()) {
      w.add(i, sh("class"), other);
      continue;
    }
    const Term b = w.node();
    w.add(i, sh("property"), b);
    if (forward) {
      w.add(b, sh("path"), c.p);
    } else {
      const Term inv = w.node();
      w.add(b, sh("path"), inv);
      w.add(inv, sh("inversePath"), c.p);
    }
    if (other.is_variable())
      w.add(b, sh("minCount"), Term::literal("1"));
    else
      w.add(b, sh("hasValue"), other);
  }

  for (const auto& p : predicates) {
    std::vector<TriplePattern> g;
    for (const auto& t : schema.graph)
      if (t.p == p) g.push_back(t);
    w.compute_shape(p, g, schema.no_literal);
  }

  // Rule-only predicates must stay uninstantiable.
  for (const auto& q : rule_predicates) {
    if (predicates.count(q)) continue;
    const Term u = w.shape();
    w.add(u, rdf("type"), sh("NodeShape"));
    w.add(u, sh("targetSubjectsOf"), q);
    w.add(u, sh("in"), rdf("nil"));
  }

  const Term closed = w.shape();
  w.add(closed, rdf("type"), sh("NodeShape"));
  w.add(closed, sh("closed"), Term::literal("true"));
  for (const auto& p : predicates) {
    const Term b = w.node();
    w.add(closed, sh("property"), b);
    w.add(b, sh("path"), p);
  }
  return w.out;
}

TriplestoreSchema schema_intersection(const TriplestoreSchema& a, const TriplestoreSchema& b) {
  TriplestoreSchema out;
  int next = 0;
  auto fresh = [&](bool no_literal) {
    const std::string name = "m" + std::to_string(++next);
    if (no_literal) out.no_literal.insert(name);
    return Term::variable(name);
  };
  for (const auto& x : a.graph) {
    for (const auto& y : b.graph) {
      TriplePattern meet;
      bool empty = false;
      for (std::size_t i = 0; i < 3 && !empty; ++i) {
        const Term& l = x[i];
        const Term& r = y[i];
        const bool l_closed = l.is_variable() && (i < 2 || a.no_literal.count(l.lexical()));
        const bool r_closed = r.is_variable() && (i < 2 || b.no_literal.count(r.lexical()));
        if (l.is_constant() && r.is_constant()) {
          empty = l != r;
          meet[i] = l;
        } else if (l.is_constant() || r.is_constant()) {
          const Term& c = l.is_constant() ? l : r;
          empty = c.is_literal() && (l_closed || r_closed);
          meet[i] = c;
        } else {
          meet[i] = fresh(l_closed || r_closed);
        }
      }
      if (!empty) out.graph.insert(meet);
    }
  }
  return normalize_schema(out);
}

bool shacl_conforms(const Graph& data, const ShapeDocument& doc) {
  const ShapesView v(doc);
  const std::set<Term> vocab = vocabulary(v, doc);
  for (const auto& t : data)
    if (!vocab.count(t.p)) return false;

  std::map<Term, std::vector<const Triple*>> out_edges, in_edges;
  for (const auto& t : data) {
    out_edges[t.s].push_back(&t);
    in_edges[t.o].push_back(&t);
  }
  auto values = [&](const Path& path, const Term& focus) {
    std::vector<Term> r;
    const auto& edges = path.inverse ? in_edges : out_edges;
    auto it = edges.find(focus);
    if (it == edges.end()) return r;
    for (const Triple* t : it->second)
      if (t->p == path.predicate) r.push_back(path.inverse ? t->s : t->o);
    return r;
  };

  // Property shapes take the value nodes of their path; node shapes take
  // the focus node itself.
  std::function<bool(const Term&, const Term&, int)> node_ok;
  std::function<bool(const Term&, const Term&, int)> shape_ok = [&](const Term& shape,
                                                                    const Term& focus, int depth) {
    if (auto path = v.path(shape)) {
      const auto vals = values(*path, focus);
      for (const auto& mc : v.objects(shape, sh("minCount")))
        if (vals.size() < std::stoul(mc.lexical())) return false;
      for (const auto& k : v.objects(shape, sh("hasValue")))
        if (std::find(vals.begin(), vals.end(), k) == vals.end()) return false;
      for (const auto& x : vals)
        if (!node_ok(shape, x, depth)) return false;
      return true;
    }
    for (const auto& k : v.objects(shape, sh("hasValue")))
      if (focus != k) return false;
    return node_ok(shape, focus, depth);
  };
  node_ok = [&](const Term& shape, const Term& value, int depth) {
    if (depth > 32) throw UnsupportedShape("recursive shape " + to_string(shape));
    for (const auto& kind : v.objects(shape, sh("nodeKind"))) {
      if (kind == sh("IRI") && !value.is_iri()) return false;
      if (kind == sh("Literal") && !value.is_literal()) return false;
    }
    for (const auto& list : v.objects(shape, sh("in"))) {
      auto items = v.list(list);
      if (std::find(items.begin(), items.end(), value) == items.end()) return false;
    }
    for (const auto& c : v.objects(shape, sh("class")))
      if (!data.count({value, rdf_type(), c})) return false;
    for (const auto& list : v.objects(shape, sh("or"))) {
      bool any = false;
      for (const auto& m : v.list(list)) any = any || shape_ok(m, value, depth + 1);
      if (!any) return false;
    }
    for (const auto& n : v.objects(shape, sh("not")))
      if (shape_ok(n, value, depth + 1)) return false;
    for (const auto& n : v.objects(shape, sh("node")))
      if (!shape_ok(n, value, depth + 1)) return false;
    for (const auto& p : v.objects(shape, sh("property")))
      if (!shape_ok(p, value, depth + 1)) return false;
    return true;
  };

  for (const auto& shape : v.subjects()) {
    if (!targeted(v, shape)) continue;
    std::set<Term> focus;
    for (const auto& n : v.objects(shape, sh("targetNode"))) focus.insert(n);
    for (const auto& c : v.objects(shape, sh("targetClass")))
      for (const auto& t : data)
        if (t.p == rdf_type() && t.o == c) focus.insert(t.s);
    for (const auto& q : v.objects(shape, sh("targetSubjectsOf")))
      for (const auto& t : data)
        if (t.p == q) focus.insert(t.s);
    for (const auto& q : v.objects(shape, sh("targetObjectsOf")))
      for (const auto& t : data)
        if (t.p == q) focus.insert(t.o);
    for (const auto& f : focus)
      if (!shape_ok(shape, f, 0)) return false;
  }
  return true;
}

}  // namespace schemaforge
