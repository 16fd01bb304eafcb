// Deterministic verification suites shared by the command line tool and
// the acceptance tests.
#include "spancalc/checks.hpp"

#include <map>
#include <sstream>
#include <utility>

#include "spancalc/fibration.hpp"
#include "spancalc/monoid.hpp"
#include "spancalc/simplex.hpp"
#include "spancalc/spanqc.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {
namespace {

void add_line(SuiteReport& r, std::string name, bool passed,
              std::string detail) {
  r.passed = r.passed && passed;
  r.lines.push_back({std::move(name), passed, std::move(detail)});
}

std::string horn_detail(const HornCount& hc) {
  std::ostringstream os;
  os << "compatible=" << hc.compatible << " zero=" << hc.zero
     << " one=" << hc.one << " many=" << hc.many;
  return os.str();
}

bool all_one(const HornCount& hc) {
  return hc.zero == 0 && hc.many == 0 && hc.one == hc.compatible;
}

std::vector<int> obj_key(const ArrObj& o) {
  std::vector<int> k{o.top.size, o.bottom.size};
  k.insert(k.end(), o.arrow.values.begin(), o.arrow.values.end());
  return k;
}

// Folds n copies of a monoid element onto an accumulator.
int mon_scale(const CommMonoid& m, int acc, long n, int elem) {
  for (long i = 0; i < n; ++i) acc = m.add(acc, elem);
  return acc;
}

bool next_elem_vector(std::vector<int>& a, int carrier) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (++a[i] < carrier) return true;
    a[i] = 0;
  }
  return false;
}

}  // namespace

void validate_config(const Config& cfg) {
  if (cfg.size_bound < 0 || cfg.apex_bound < 0)
    fail(errc::invalid, "bounds must be nonnegative");
  if (cfg.dim_cap < 0 || cfg.dim_cap > 6)
    fail(errc::invalid, "dimension cap must be between 0 and 6");
}

SuiteReport check_quasicat(int size_bound, int dim_cap) {
  SuiteReport r;
  r.suite = "quasicat";
  {
    BoundedComplex bc = bounded_span_complex(size_bound, dim_cap);
    std::ostringstream os;
    os << "nondegenerate cells per dimension:";
    for (int d = 0; d <= dim_cap; ++d)
      os << " " << bc.sset.counts[static_cast<size_t>(d)];
    add_line(r, "complex build", true, os.str());
    for (int n = 3; n <= dim_cap; ++n)
      for (int k = 1; k <= n - 1; ++k) {
        HornCount hc = count_horn_fillers(bc.sset, n, k);
        std::ostringstream name;
        name << "inner horn (" << n << "," << k << ") fillers are unique";
        add_line(r, name.str(), all_one(hc), horn_detail(hc));
      }
    if (dim_cap >= 3) {
      std::vector<FinSet> objects;
      for (int s = 0; s <= size_bound; ++s) objects.push_back(make_set(s));
      TwoCatAmbient amb = ambient_spans(objects, size_bound);
      long checked = 0, mismatches = 0;
      for (const CellRef& ref : bc.sset.all_cells(3)) {
        SpanCell c = bc.cell_of(ref);
        ++checked;
        try {
          Nerve2Data nd = nerve_from_cell(amb, objects, c);
          Nerve2Data out =
              filler_formula_21(amb, nerve2_face(nd, 0), nerve2_face(nd, 2),
                                nerve2_face(nd, 3));
          if (!(out == nd)) ++mismatches;
        } catch (const error&) {
          ++mismatches;
        }
      }
      std::ostringstream os2;
      os2 << "checked=" << checked << " mismatches=" << mismatches;
      add_line(r, "(3,1) fillers match the composite formula",
               mismatches == 0 && checked > 0, os2.str());
    }
  }
  {
    TruncatedSSet z2 = nerve_category(group_z2_category(), 4);
    for (int k : {0, 4}) {
      HornCount hc = count_horn_fillers(z2, 4, k);
      std::ostringstream name;
      name << "group nerve outer horn (4," << k << ") fillers are unique";
      add_line(r, name.str(), all_one(hc), horn_detail(hc));
    }
    TruncatedSSet chain = nerve_category(chain_poset_category(3), 4);
    for (int k : {0, 4}) {
      HornCount hc = count_horn_fillers(chain, 4, k);
      std::ostringstream name;
      name << "chain nerve outer horn (4," << k << ") fillers are unique";
      add_line(r, name.str(), all_one(hc), horn_detail(hc));
    }
    TruncatedSSet fork = nerve_category(fork_category(), 3);
    HornCount hc = count_horn_fillers(fork, 3, 0);
    add_line(r, "fork nerve outer horn (3,0) is not always unique",
             hc.zero + hc.many > 0, horn_detail(hc));
  }
  return r;
}

SuiteReport check_cartesian(int size_bound) {
  SuiteReport r;
  r.suite = "cartesian";
  {
    ClassificationReport rep =
        classify_cartesian_edges(size_bound, size_bound + 1);
    add_line(r, "structural test matches the probe battery", rep.passed,
             rep.detail);
  }
  {
    long lifts = 0, bad = 0;
    for (int a = 0; a <= size_bound; ++a)
      for (int b = 0; b <= size_bound; ++b)
        for (const Span1& base :
             enumerate_spans(make_set(a), make_set(b), size_bound))
          for (int t = 0; t <= size_bound; ++t)
            for (const SetMap& arrow : all_maps(t, b)) {
              ArrObj fiber{make_set(t), make_set(b), arrow};
              ArrSpanCell lift = cartesian_lift(base, fiber);
              ++lifts;
              if (!is_cartesian_structural(lift) ||
                  project(lift) != cell_from_span(base) ||
                  arr_vertex(lift, 1) != fiber)
                ++bad;
            }
    std::ostringstream os;
    os << "lifts=" << lifts << " failures=" << bad;
    add_line(r, "lifts are cartesian over their base", bad == 0 && lifts > 0,
             os.str());
  }
  {
    std::vector<ArrSpanCell> edges = enumerate_arr_edges(size_bound);
    std::map<std::vector<int>, std::vector<size_t>> by_source;
    for (size_t i = 0; i < edges.size(); ++i)
      by_source[obj_key(arr_vertex(edges[i], 0))].push_back(i);
    long pairs = 0, bad = 0;
    for (const ArrSpanCell& e01 : edges) {
      auto it = by_source.find(obj_key(arr_vertex(e01, 1)));
      if (it == by_source.end()) continue;
      for (size_t j : it->second) {
        const ArrSpanCell& e12 = edges[j];
        ArrSpanCell f = inner_horn_fill_spantimes(e01, e12);
        ++pairs;
        if (!validate_arr_cell(f) || arr_face(f, 0) != e12 ||
            arr_face(f, 2) != e01)
          ++bad;
      }
    }
    std::ostringstream os;
    os << "pairs=" << pairs << " failures=" << bad;
    add_line(r, "composable pairs fill their inner horn", bad == 0 && pairs > 0,
             os.str());
  }
  return r;
}

SuiteReport check_products(int size_bound, int n_max) {
  SuiteReport r;
  r.suite = "products";
  {
    long cones = 0, bad = 0;
    for (int a = 0; a <= size_bound; ++a)
      for (int b = 0; b <= size_bound; ++b) {
        ProductCone cone = product_cone(make_set(a), make_set(b));
        ++cones;
        if (cone.object.size != a + b) ++bad;
      }
    std::ostringstream os;
    os << "cones=" << cones << " failures=" << bad;
    add_line(r, "product objects are disjoint unions", bad == 0, os.str());
  }
  for (int a = 0; a <= size_bound; ++a)
    for (int b = 0; b <= size_bound; ++b)
      for (int n = 0; n <= n_max; ++n) {
        FinalityReport fr =
            check_product_finality(make_set(a), make_set(b), n, size_bound);
        std::ostringstream name, os;
        name << "finality a=" << a << " b=" << b << " n=" << n;
        os << "diagrams=" << fr.diagrams_checked
           << " failures=" << fr.failures;
        if (!fr.detail.empty()) os << " (" << fr.detail << ")";
        add_line(r, name.str(), fr.passed, os.str());
      }
  return r;
}

SuiteReport check_monoids(int size_bound) {
  SuiteReport r;
  r.suite = "monoids";
  std::vector<NamedMonoid> catalog = monoid_catalog(3);
  {
    Span1 copy = make_span(make_set(3), make_set(8), make_set(8),
                           make_map(8, 3, {1, 0, 2, 0, 0, 0, 1, 2}),
                           identity_map(8));
    Span1 add = make_span(make_set(8), make_set(8), make_set(4),
                          identity_map(8),
                          make_map(8, 4, {0, 0, 1, 3, 3, 3, 3, 3}));
    Span1 comp = compose_spans(copy, add);
    NatMatrix m = span_matrix(comp);
    std::vector<std::int64_t> want{1, 0, 0, 3, 1, 0, 0, 1, 0, 1, 0, 1};
    std::vector<int> vals = eval_span(comp, nat_trunc_monoid(15), {1, 2, 3});
    bool ok = m.rows == 3 && m.cols == 4 && m.entries == want &&
              vals == std::vector<int>{3, 3, 0, 8};
    std::ostringstream os;
    os << "matrix rows [1,0,0,3] [1,0,0,1] [0,1,0,1], eval (3,3,0,8)";
    add_line(r, "copy then add example", ok, os.str());
  }
  {
    long pairs = 0, bad = 0;
    for (int x = 0; x <= size_bound; ++x)
      for (int y = 0; y <= size_bound; ++y)
        for (int z = 0; z <= size_bound; ++z)
          for (const Span1& s :
               enumerate_spans(make_set(x), make_set(y), size_bound))
            for (const Span1& t :
                 enumerate_spans(make_set(y), make_set(z), size_bound)) {
              ++pairs;
              if (ho_matrix(compose_spans(s, t)) !=
                  ho_compose(ho_matrix(s), ho_matrix(t)))
                ++bad;
            }
    std::ostringstream os;
    os << "pairs=" << pairs << " failures=" << bad;
    add_line(r, "matrix of a composite is the matrix product",
             bad == 0 && pairs > 0, os.str());
  }
  for (const NamedMonoid& nm : catalog) {
    ModelCheckReport rep = model_functoriality_check(nm.monoid, size_bound);
    std::ostringstream os;
    os << "composites=" << rep.composites_checked
       << " representatives=" << rep.representative_pairs_checked;
    if (!rep.detail.empty()) os << " (" << rep.detail << ")";
    add_line(r, "functoriality over " + nm.name, rep.passed, os.str());
  }
  {
    long checks = 0, bad = 0;
    for (const NamedMonoid& nm : catalog) {
      const CommMonoid& m = nm.monoid;
      for (int x = 0; x <= size_bound; ++x)
        for (int y = 0; y <= size_bound; ++y)
          for (const Span1& s :
               enumerate_spans(make_set(x), make_set(y), size_bound)) {
            NatMatrix mat = ho_matrix(s);
            std::vector<int> a(static_cast<size_t>(x), 0);
            do {
              std::vector<int> direct = eval_span(s, m, a);
              std::vector<int> via(static_cast<size_t>(y), m.unit);
              for (int yy = 0; yy < y; ++yy)
                for (int xx = 0; xx < x; ++xx)
                  via[static_cast<size_t>(yy)] =
                      mon_scale(m, via[static_cast<size_t>(yy)],
                                mat.at(xx, yy), a[static_cast<size_t>(xx)]);
              ++checks;
              if (direct != via) ++bad;
            } while (next_elem_vector(a, m.carrier.size));
          }
    }
    std::ostringstream os;
    os << "checks=" << checks << " failures=" << bad;
    add_line(r, "evaluation factors through the matrix", bad == 0 && checks > 0,
             os.str());
  }
  {
    long maps = 0, bad = 0;
    for (int d = 0; d <= size_bound; ++d)
      for (int c = 0; c <= size_bound; ++c)
        for (const PointedMap& f : all_pointed_maps(d, c)) {
          ++maps;
          if (is_collapsing_pointed(f) !=
              is_collapsing_span(pointed_to_span(f)))
            ++bad;
        }
    std::ostringstream os;
    os << "maps=" << maps << " failures=" << bad;
    add_line(r, "collapsing maps match collapsing spans", bad == 0, os.str());
  }
  for (const NamedMonoid& nm : catalog) {
    FreeModelReport rep = free_property_check(make_set(1), nm.monoid, 3);
    std::ostringstream os;
    os << "homs=" << rep.homs_found << " expected=" << rep.vectors_expected;
    if (!rep.detail.empty()) os << " (" << rep.detail << ")";
    add_line(r, "free model over " + nm.name, rep.passed, os.str());
  }
  return r;
}

SuiteReport check_homspaces(int apex_bound, int size_bound) {
  SuiteReport r;
  r.suite = "homspaces";
  {
    GroupoidPresentation gp = homspace(make_set(1), make_set(1), apex_bound);
    bool ok =
        static_cast<int>(gp.aut_orders.size()) == apex_bound + 1;
    std::uint64_t f = 1;
    std::ostringstream os;
    os << "orders=";
    for (int i = 0; i <= apex_bound && ok; ++i) {
      if (i > 0) f *= static_cast<std::uint64_t>(i);
      ok = ok && gp.aut_orders[static_cast<size_t>(i)] == f;
    }
    for (size_t i = 0; i < gp.aut_orders.size(); ++i)
      os << (i ? "," : "") << gp.aut_orders[i];
    add_line(r, "point homspace automorphisms are factorials", ok, os.str());
  }
  for (int x = 0; x <= size_bound; ++x)
    for (int y = 0; y <= size_bound; ++y) {
      CompareReport rep =
          barratt_eccles_compare(make_set(x), make_set(y), size_bound);
      std::ostringstream name, os;
      name << "symmetric comparison x=" << x << " y=" << y;
      os << "components=" << rep.components
         << " objects=" << rep.objects_seen;
      if (!rep.detail.empty()) os << " (" << rep.detail << ")";
      add_line(r, name.str(), rep.passed, os.str());
    }
  return r;
}

std::vector<std::string> suite_names() {
  return {"quasicat", "cartesian", "products", "monoids", "homspaces"};
}

SuiteReport run_suite(const std::string& name, const Config& cfg) {
  validate_config(cfg);
  if (name == "quasicat") return check_quasicat(cfg.size_bound, cfg.dim_cap);
  if (name == "cartesian") return check_cartesian(cfg.size_bound);
  if (name == "products") return check_products(cfg.size_bound, 1);
  if (name == "monoids") return check_monoids(cfg.size_bound);
  if (name == "homspaces")
    return check_homspaces(cfg.apex_bound, cfg.size_bound);
  fail(errc::invalid, "unknown suite " + name);
}

std::string render_report(const SuiteReport& r) {
  std::ostringstream os;
  os << "[suite " << r.suite << "]\n";
  for (const CheckLine& l : r.lines) {
    os << l.name << ": " << (l.passed ? "PASS" : "FAIL");
    if (!l.detail.empty()) os << " (" << l.detail << ")";
    os << "\n";
  }
  os << "[result] " << (r.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace spancalc
